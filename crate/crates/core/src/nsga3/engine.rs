//! The NSGA-III generational loop.

use rustc_hash::FxHashSet as HashSet;

use serde::{Deserialize, Serialize};

use super::associate::{AssociationMode, Associator, Backend};
use super::lattice::{protective_divisions, LatticePoint, ReferenceLattice};
use super::niching::{niching_select, Candidate};
use super::normalize::NormalizationState;
use super::sort::sort_unchecked;
use crate::benchmarks::{f_max, ProblemSpec};
use crate::error::{Error, Result};
use crate::fitness::FitnessVector;
use crate::individual::{random_bits, FrontTracker, Individual};
use crate::record::{Algorithm, RunRecord};
use crate::rng::RandomSource;
use crate::variation::{crossover, BitMutation, CrossoverKind};

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Nsga3Config {
    pub spec: ProblemSpec,
    pub mu: usize,
    pub p_c: f64,
    pub crossover: CrossoverKind,
    /// Lattice divisions; defaults to the smallest protective value.
    pub p: u64,
    pub eps_nad: u64,
    pub seed: u64,
    pub budget: u64,
    #[serde(default)]
    pub protection_check: bool,
    /// Stop as soon as the population covers the Pareto front.
    #[serde(default = "default_true")]
    pub stop_on_cover: bool,
    #[serde(default)]
    pub max_generations: Option<u64>,
    #[serde(default)]
    pub association: AssociationMode,
}

impl Nsga3Config {
    /// Config with `p = protective_divisions(spec)` and `eps_nad = f_max(spec)`.
    pub fn new(spec: ProblemSpec, mu: usize, p_c: f64, crossover: CrossoverKind, seed: u64, budget: u64) -> Self {
        Nsga3Config {
            p: protective_divisions(&spec),
            eps_nad: f_max(&spec),
            spec,
            mu,
            p_c,
            crossover,
            seed,
            budget,
            protection_check: false,
            stop_on_cover: true,
            max_generations: None,
            association: AssociationMode::Auto,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu < 2 || !self.mu.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!("mu must be even and >= 2 (got {})", self.mu)));
        }
        if !(0.0..=1.0).contains(&self.p_c) {
            return Err(Error::InvalidConfig(format!("p_c must lie in [0, 1] (got {})", self.p_c)));
        }
        if self.eps_nad == 0 {
            return Err(Error::InvalidConfig("eps_nad must be positive".into()));
        }
        ReferenceLattice::new(self.spec.m(), self.p)?;
        self.association.resolve(&ReferenceLattice::new(self.spec.m(), self.p)?)?;
        Ok(())
    }
}

/// Counts returned by one generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepOutcome {
    pub evaluations: u64,
    /// Evaluation index of the first Pareto-optimal offspring in this generation.
    pub first_pareto: Option<u64>,
}

/// A running NSGA-III instance.
pub struct Nsga3 {
    config: Nsga3Config,
    population: Vec<Individual>,
    state: NormalizationState,
    associator: Associator,
    mutation: BitMutation,
    tracker: FrontTracker,
    rng: RandomSource,
    evaluations: u64,
    generation: u64,
}

impl Nsga3 {
    /// Draws and evaluates the initial population (`mu` evaluations).
    pub fn new(config: Nsga3Config) -> Result<Self> {
        let mut rng = RandomSource::new(config.seed);
        let population = (0..config.mu)
            .map(|_| Individual::evaluate(random_bits(config.spec.n(), &mut rng), &config.spec))
            .collect();
        Self::with_population(config, population, rng)
    }

    /// Starts from a given population; initialization is counted as `mu` evaluations.
    pub fn with_population(config: Nsga3Config, population: Vec<Individual>, rng: RandomSource) -> Result<Self> {
        config.validate()?;
        if population.len() != config.mu {
            return Err(Error::LengthMismatch {
                expected: config.mu,
                actual: population.len(),
            });
        }
        let lattice = ReferenceLattice::new(config.spec.m(), config.p)?;
        Ok(Nsga3 {
            state: NormalizationState::new(config.spec.m(), config.eps_nad),
            associator: Associator::new(lattice, config.association)?,
            mutation: BitMutation::new(config.spec.n()),
            tracker: FrontTracker::new(&config.spec)?,
            evaluations: config.mu as u64,
            generation: 0,
            population,
            config,
            rng,
        })
    }

    pub fn population(&self) -> &[Individual] {
        &self.population
    }

    pub fn normalization(&self) -> &NormalizationState {
        &self.state
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn backend(&self) -> Backend {
        self.associator.backend()
    }

    pub fn tracker(&self) -> &FrontTracker {
        &self.tracker
    }

    pub fn covers_front(&self) -> bool {
        self.tracker.covers(self.population.iter().map(|i| &i.f))
    }

    /// `mu` offspring from `mu/2` trials.
    fn offspring(&mut self) -> Result<Vec<Individual>> {
        let mu = self.config.mu;
        let spec = self.config.spec;
        let mut out = Vec::with_capacity(mu);
        for _ in 0..mu / 2 {
            let p1 = &self.population[self.rng.index(mu)].x;
            let p2 = &self.population[self.rng.index(mu)].x;
            let (c1, c2) = if self.rng.chance(self.config.p_c) {
                (
                    crossover(self.config.crossover, p1, p2, &mut self.rng)?,
                    crossover(self.config.crossover, p1, p2, &mut self.rng)?,
                )
            } else {
                (p1.clone(), p2.clone())
            };
            for c in [c1, c2] {
                let s = self.mutation.mutate(&c, &mut self.rng);
                out.push(Individual::evaluate(s, &spec));
            }
        }
        Ok(out)
    }

    /// One generation: variation, merge, sorting and niching survival selection.
    pub fn step(&mut self) -> Result<StepOutcome> {
        let mu = self.config.mu;
        let offspring = self.offspring()?;
        let first_pareto = offspring
            .iter()
            .position(|o| self.tracker.is_optimal(&o.f))
            .map(|i| self.evaluations + i as u64 + 1);
        self.evaluations += mu as u64;

        let mut merged = std::mem::take(&mut self.population);
        merged.extend(offspring);
        self.survive(merged)?;
        self.generation += 1;
        Ok(StepOutcome {
            evaluations: mu as u64,
            first_pareto,
        })
    }

    /// Survival selection of `mu` members from the merged parents (first `mu`
    /// entries) and offspring.
    pub fn survive(&mut self, merged: Vec<Individual>) -> Result<()> {
        let mu = self.config.mu;
        let fitnesses: Vec<FitnessVector> = merged.iter().map(|i| i.f.clone()).collect();
        self.state.update(&fitnesses);
        let layers = sort_unchecked(&fitnesses);

        let mut taken = 0;
        let mut critical = 0;
        while taken + layers[critical].len() < mu {
            taken += layers[critical].len();
            critical += 1;
        }
        let y: Vec<usize> = layers[..critical].iter().flatten().copied().collect();
        let f_star = &layers[critical];
        let chosen: Vec<usize> = if y.len() + f_star.len() == mu {
            f_star.clone()
        } else {
            self.associator.set_normalization(&self.state);
            let y_points: Vec<LatticePoint> = y
                .iter()
                .map(|&i| self.associator.associate(&merged[i].f, &mut self.rng).0)
                .collect();
            let candidates: Vec<Candidate> = f_star
                .iter()
                .map(|&i| {
                    let (point, key) = self.associator.associate(&merged[i].f, &mut self.rng);
                    Candidate::new(point, key)
                })
                .collect();
            niching_select(&y_points, &candidates, mu, &mut self.rng)?
                .into_iter()
                .map(|k| f_star[k])
                .collect()
        };

        let mut keep = vec![false; merged.len()];
        for &i in y.iter().chain(&chosen) {
            keep[i] = true;
        }
        let before: HashSet<FitnessVector> = if self.config.protection_check {
            self.tracker.present(merged[..mu].iter().map(|i| &i.f))
        } else {
            HashSet::default()
        };
        let first_layer: Vec<FitnessVector> = if self.config.protection_check {
            layers[0].iter().map(|&i| fitnesses[i].clone()).collect()
        } else {
            Vec::new()
        };
        self.population = merged
            .into_iter()
            .zip(keep)
            .filter_map(|(ind, k)| k.then_some(ind))
            .collect();
        debug_assert_eq!(self.population.len(), mu);

        if self.config.protection_check {
            let next: HashSet<&FitnessVector> = self.population.iter().map(|i| &i.f).collect();
            if let Some(missing) = first_layer.into_iter().find(|v| !next.contains(v)) {
                return Err(Error::ProtectionViolation {
                    generation: self.generation,
                    missing,
                });
            }
            if let Some(lost) = before.into_iter().find(|v| !next.contains(v)) {
                return Err(Error::CoverageLost {
                    generation: self.generation,
                    lost,
                });
            }
        }
        Ok(())
    }
}

/// Runs until the front is covered (if `stop_on_cover`), the budget cannot
/// fund another generation, or `max_generations` is reached.
pub fn nsga3_run(config: &Nsga3Config) -> Result<RunRecord> {
    config.validate()?;
    let lattice = ReferenceLattice::new(config.spec.m(), config.p)?;
    let mut record = RunRecord {
        seed: config.seed,
        algo: Algorithm::Nsga3,
        spec: config.spec,
        mu: config.mu,
        pc: config.p_c,
        crossover: config.crossover,
        generations: 0,
        evals: 0,
        first_pareto_eval: None,
        full_cover_eval: None,
        covered: false,
        backend: config.association.resolve(&lattice)?.name(),
        wallclock_ms: None,
    };
    let mu = config.mu as u64;
    if config.budget < mu {
        return Ok(record);
    }
    let mut run = Nsga3::new(config.clone())?;
    record.first_pareto_eval = run
        .population
        .iter()
        .position(|i| run.tracker.is_optimal(&i.f))
        .map(|i| i as u64 + 1);
    if run.covers_front() {
        record.full_cover_eval = Some(run.evaluations);
    }
    loop {
        if config.stop_on_cover && record.full_cover_eval.is_some() {
            break;
        }
        if config.max_generations.is_some_and(|g| run.generation >= g) {
            break;
        }
        if run.evaluations + mu > config.budget {
            break;
        }
        let outcome = run.step()?;
        if record.first_pareto_eval.is_none() {
            record.first_pareto_eval = outcome.first_pareto;
        }
        if record.full_cover_eval.is_none() && run.covers_front() {
            record.full_cover_eval = Some(run.evaluations);
        }
    }
    record.generations = run.generation;
    record.evals = run.evaluations;
    record.covered = record.full_cover_eval.is_some();
    Ok(record)
}
