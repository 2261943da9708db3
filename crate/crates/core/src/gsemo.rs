//! GSEMO: one offspring per iteration against an archive of mutually
//! incomparable solutions.

use serde::{Deserialize, Serialize};

use crate::benchmarks::ProblemSpec;
use crate::error::{Error, Result};
use crate::fitness::{Dominance, FitnessVector};
use crate::individual::{random_bits, FrontTracker, Individual};
use crate::record::{Algorithm, RunRecord};
use crate::rng::RandomSource;
use crate::variation::{crossover, BitMutation, CrossoverKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GsemoConfig {
    pub spec: ProblemSpec,
    pub p_c: f64,
    pub crossover: CrossoverKind,
    pub seed: u64,
    pub budget: u64,
}

impl GsemoConfig {
    pub fn new(spec: ProblemSpec, p_c: f64, crossover: CrossoverKind, seed: u64, budget: u64) -> Self {
        GsemoConfig {
            spec,
            p_c,
            crossover,
            seed,
            budget,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p_c) {
            return Err(Error::InvalidConfig(format!("p_c must lie in [0, 1] (got {})", self.p_c)));
        }
        Ok(())
    }
}

/// Mutually incomparable members with pairwise distinct fitness vectors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Archive {
    members: Vec<Individual>,
}

impl Archive {
    pub fn new(first: Individual) -> Self {
        Archive { members: vec![first] }
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Inserts `s` unless a member strictly dominates it; members weakly
    /// dominated by `s` are removed. Returns whether `s` was inserted.
    pub fn offer(&mut self, s: Individual) -> bool {
        if self.members.iter().any(|x| x.f.strictly_dominates(&s.f)) {
            return false;
        }
        self.members.retain(|x| !s.f.weakly_dominates(&x.f));
        self.members.push(s);
        true
    }

    pub fn fitnesses(&self) -> impl Iterator<Item = &FitnessVector> {
        self.members.iter().map(|x| &x.f)
    }

    pub fn is_valid(&self) -> bool {
        self.members.iter().enumerate().all(|(i, a)| {
            self.members[i + 1..]
                .iter()
                .all(|b| a.f.compare_unchecked(&b.f) == Dominance::Incomparable)
        })
    }
}

/// Builds one offspring from the archive and offers it. One evaluation.
pub fn gsemo_step(
    archive: &mut Archive,
    config: &GsemoConfig,
    mutation: &BitMutation,
    rng: &mut RandomSource,
) -> Result<Individual> {
    if archive.is_empty() {
        return Err(Error::Empty("archive"));
    }
    let len = archive.len();
    let i1 = rng.index(len);
    let p1 = &archive.members[i1].x;
    let s = if rng.chance(config.p_c) {
        let i2 = if len >= 2 {
            let j = rng.index(len - 1);
            if j >= i1 {
                j + 1
            } else {
                j
            }
        } else {
            i1
        };
        crossover(config.crossover, p1, &archive.members[i2].x, rng)?
    } else {
        p1.clone()
    };
    let child = Individual::evaluate(mutation.mutate(&s, rng), &config.spec);
    archive.offer(child.clone());
    Ok(child)
}

/// Runs until the archive covers the Pareto front or `budget` evaluations
/// (including the initial one) are spent. `mu` in the record is the peak
/// archive size.
pub fn gsemo_run(config: &GsemoConfig) -> Result<RunRecord> {
    config.validate()?;
    let mut record = RunRecord {
        seed: config.seed,
        algo: Algorithm::Gsemo,
        spec: config.spec,
        mu: 0,
        pc: config.p_c,
        crossover: config.crossover,
        generations: 0,
        evals: 0,
        first_pareto_eval: None,
        full_cover_eval: None,
        covered: false,
        backend: "none".into(),
        wallclock_ms: None,
    };
    if config.budget == 0 {
        return Ok(record);
    }
    let tracker = FrontTracker::new(&config.spec)?;
    let mutation = BitMutation::new(config.spec.n());
    let mut rng = RandomSource::new(config.seed);
    let first = Individual::evaluate(random_bits(config.spec.n(), &mut rng), &config.spec);
    let mut evals = 1;
    if tracker.is_optimal(&first.f) {
        record.first_pareto_eval = Some(1);
    }
    let mut archive = Archive::new(first);
    let mut peak = 1;
    let mut covered = tracker.covers(archive.fitnesses());
    if covered {
        record.full_cover_eval = Some(1);
    }
    while !covered && evals < config.budget {
        let child = gsemo_step(&mut archive, config, &mutation, &mut rng)?;
        evals += 1;
        record.generations += 1;
        peak = peak.max(archive.len());
        if record.first_pareto_eval.is_none() && tracker.is_optimal(&child.f) {
            record.first_pareto_eval = Some(evals);
        }
        if tracker.is_optimal(&child.f) && tracker.covers(archive.fitnesses()) {
            covered = true;
            record.full_cover_eval = Some(evals);
        }
    }
    record.evals = evals;
    record.mu = peak;
    record.covered = covered;
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::antichain_bound;

    fn ind(s: &str, spec: &ProblemSpec) -> Individual {
        Individual::evaluate(s.parse().unwrap(), spec)
    }

    #[test]
    fn archive_examples() {
        let spec = ProblemSpec::rrmo(10, 2).unwrap();
        let x = ind("1111110000", &spec);
        assert_eq!(x.f, FitnessVector::from([6u64, 10]));
        let mut a = Archive::new(x.clone());
        let y = ind("0111111000", &spec);
        assert_eq!(y.f, FitnessVector::from([7u64, 9]));
        assert!(a.offer(y.clone()));
        assert_eq!(a.len(), 2);

        // Same fitness as x: x is replaced.
        let twin = Individual {
            x: "1111110001".parse().unwrap(),
            f: x.f.clone(),
        };
        assert!(a.offer(twin.clone()));
        assert_eq!(a.len(), 2);
        assert!(a.members().contains(&twin) && !a.members().contains(&x));

        // Strictly dominated offspring is rejected.
        let weak = Individual {
            x: "0000000000".parse().unwrap(),
            f: FitnessVector::from([1u64, 1]),
        };
        let snapshot = a.clone();
        assert!(!a.offer(weak));
        assert_eq!(a, snapshot);
    }

    #[test]
    fn zero_budget() {
        let c = GsemoConfig::new(ProblemSpec::rrmo(10, 2).unwrap(), 0.5, CrossoverKind::OnePoint, 0, 0);
        let r = gsemo_run(&c).unwrap();
        assert!(!r.covered);
        assert_eq!(r.evals, 0);
    }

    #[test]
    fn small_instance_is_covered_within_bound() {
        let spec = ProblemSpec::rrmo(10, 2).unwrap();
        let bound = antichain_bound(&spec).unwrap() as usize;
        for seed in 0..30 {
            let r = gsemo_run(&GsemoConfig::new(spec, 0.5, CrossoverKind::OnePoint, seed, 1_000_000)).unwrap();
            assert!(r.covered, "seed {seed}: {r}");
            assert!(r.mu <= bound);
            assert!(r.is_consistent());
            assert_eq!(r.evals, r.full_cover_eval.unwrap());
        }
    }

    #[test]
    fn stops_exactly_at_budget() {
        let spec = ProblemSpec::rrmo(35, 2).unwrap();
        for budget in [1, 2, 17, 500] {
            let r = gsemo_run(&GsemoConfig::new(spec, 0.0, CrossoverKind::OnePoint, 3, budget)).unwrap();
            assert_eq!(r.evals, budget);
            assert_eq!(r.generations, budget - 1);
        }
    }

    #[test]
    fn no_crossover_never_draws_a_second_parent() {
        let spec = ProblemSpec::rrmo(20, 2).unwrap();
        let config = GsemoConfig::new(spec, 0.0, CrossoverKind::OnePoint, 0, 0);
        let mutation = BitMutation::new(20);
        let mut rng = RandomSource::new(9);
        let mut archive = Archive::new(ind("11111111110000000000", &spec));
        archive.offer(ind("00000000001111111111", &spec));
        for _ in 0..500 {
            // Replay the draws a mutation-only step is allowed to make.
            let mut replay = rng.clone();
            replay.index(archive.len());
            replay.chance(0.0);
            mutation.sample_flips(&mut replay);
            gsemo_step(&mut archive, &config, &mutation, &mut rng).unwrap();
            assert_eq!(rng.draws(), replay.draws());
        }
    }

    #[test]
    fn archive_stays_an_antichain() {
        let spec = ProblemSpec::rrmo_uni(16, 2).unwrap();
        let bound = antichain_bound(&spec).unwrap() as usize;
        let config = GsemoConfig::new(spec, 0.9, CrossoverKind::Uniform, 0, 0);
        let mutation = BitMutation::new(16);
        let mut rng = RandomSource::new(10);
        let mut archive = Archive::new(Individual::evaluate(random_bits(16, &mut rng), &spec));
        for _ in 0..5000 {
            gsemo_step(&mut archive, &config, &mutation, &mut rng).unwrap();
            assert!(archive.is_valid());
            assert!(archive.len() <= bound);
        }
    }

    proptest::proptest! {
        #[test]
        fn offers_keep_the_archive_valid(raw in proptest::collection::vec(proptest::collection::vec(0u64..5, 3), 1..40)) {
            let dummy: crate::bits::BitString = "0".parse().unwrap();
            let mut it = raw.into_iter().map(|v| Individual { x: dummy.clone(), f: FitnessVector::from(v) });
            let mut archive = Archive::new(it.next().unwrap());
            let mut offered: Vec<FitnessVector> = Vec::new();
            for s in it {
                offered.push(s.f.clone());
                archive.offer(s);
                proptest::prop_assert!(archive.is_valid());
            }
            // Everything offered is weakly dominated by some member.
            for f in &offered {
                proptest::prop_assert!(archive.fitnesses().any(|a| a.weakly_dominates(f)));
            }
        }
    }
}
