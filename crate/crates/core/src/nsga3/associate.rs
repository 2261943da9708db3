//! Association of normalized fitness vectors with reference points.
//!
//! Distances are compared exactly. With `f_j = num_j / den_j` and `L` the
//! least common multiple of the denominators, `g = L·f` is an integer vector,
//! and a lattice point `a` is nearer to the ray through `g` than `b` iff
//! `(g·a)^2 · |b|^2 > (g·b)^2 · |a|^2`. When the products could overflow 128
//! bits the comparison falls back to `f64` arithmetic.

use std::cmp::Ordering;
use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::lattice::{LatticePoint, ReferenceLattice, ENUMERATION_CAP};
use super::normalize::{normalize, Normalized, NormalizationState};
use crate::error::{Error, Result};
use crate::fitness::FitnessVector;
use crate::rng::RandomSource;

/// Perpendicular distance from `f` to the line through the origin and `r`.
pub fn perpendicular_distance(f: &[f64], r: &[f64]) -> f64 {
    let fr: f64 = f.iter().zip(r).map(|(a, b)| a * b).sum();
    let rr: f64 = r.iter().map(|b| b * b).sum();
    let t = fr / rr;
    f.iter()
        .zip(r)
        .map(|(a, b)| (a - t * b) * (a - t * b))
        .sum::<f64>()
        .sqrt()
}

#[derive(Debug, Clone)]
enum Kind {
    Exact { g: SmallVec<[u128; 4]>, gg: u128 },
    Float { f: SmallVec<[f64; 4]>, ff: f64 },
}

#[derive(Debug, Clone, Copy)]
enum Score {
    Exact { dot: u128, aa: u128 },
    Float(f64),
}

/// Distance oracle for one normalized vector against lattice points.
#[derive(Debug, Clone)]
pub struct Scorer {
    kind: Kind,
    zero: bool,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Scorer {
    pub fn new(f: &Normalized, p: u64) -> Scorer {
        let zero = f.is_zero();
        let exact = Self::exact_kind(f, p);
        let kind = exact.unwrap_or_else(|| {
            let v: SmallVec<[f64; 4]> = f.to_f64().into_iter().collect();
            let ff = v.iter().map(|a| a * a).sum();
            Kind::Float { f: v, ff }
        });
        Scorer { kind, zero }
    }

    fn exact_kind(f: &Normalized, p: u64) -> Option<Kind> {
        let mut l: u64 = 1;
        for &d in &f.den {
            l = (l / gcd(l, d)).checked_mul(d)?;
        }
        let g: SmallVec<[u128; 4]> = f
            .num
            .iter()
            .zip(&f.den)
            .map(|(&a, &d)| a as u128 * (l / d) as u128)
            .collect();
        let m = g.len() as u128;
        let gmax = g.iter().copied().max().unwrap_or(0).max(1);
        let p = p as u128;
        // dot <= m·gmax·p and |a|^2 <= p^2; the largest product formed is dot^2·|a|^2.
        let dot_bound = m.checked_mul(gmax)?.checked_mul(p)?;
        dot_bound
            .checked_mul(dot_bound)?
            .checked_mul(p.checked_mul(p)?)?;
        m.checked_mul(gmax.checked_mul(gmax)?)?
            .checked_mul(p * p)?;
        let gg = g.iter().map(|&x| x * x).sum();
        Some(Kind::Exact { g, gg })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, Kind::Exact { .. })
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    fn score(&self, a: &[u32]) -> Score {
        match &self.kind {
            Kind::Exact { g, .. } => {
                let dot = g.iter().zip(a).map(|(&x, &y)| x * y as u128).sum();
                let aa = a.iter().map(|&y| y as u128 * y as u128).sum();
                Score::Exact { dot, aa }
            }
            Kind::Float { f, ff } => {
                let dot: f64 = f.iter().zip(a).map(|(&x, &y)| x * y as f64).sum();
                let aa: f64 = a.iter().map(|&y| y as f64 * y as f64).sum();
                Score::Float((ff - dot * dot / aa).max(0.0))
            }
        }
    }

    /// `Less` when `s` is nearer than `t`.
    fn compare(s: &Score, t: &Score) -> Ordering {
        match (s, t) {
            (Score::Exact { dot: d1, aa: a1 }, Score::Exact { dot: d2, aa: a2 }) => {
                (d2 * d2 * a1).cmp(&(d1 * d1 * a2))
            }
            (Score::Float(x), Score::Float(y)) => x.total_cmp(y),
            _ => unreachable!("scores from one scorer share a kind"),
        }
    }

    /// Monotone key of the distance to the ray through `a`, comparable between
    /// vectors associated with the same point under the same normalization.
    pub fn distance_key(&self, a: &[u32]) -> u128 {
        if self.zero {
            return 0;
        }
        match (&self.kind, self.score(a)) {
            (Kind::Exact { gg, .. }, Score::Exact { dot, aa }) => gg * aa - dot * dot,
            (_, Score::Float(d2)) => d2.to_bits() as u128,
            _ => unreachable!(),
        }
    }

    /// Lattice points among `candidates` at minimal distance, in input order.
    fn minimizers<'a>(&self, candidates: impl IntoIterator<Item = &'a LatticePoint>) -> Vec<LatticePoint> {
        let mut best: Option<Score> = None;
        let mut ties: Vec<LatticePoint> = Vec::new();
        for point in candidates {
            let s = self.score(point.coords());
            match best.as_ref().map(|b| Self::compare(&s, b)) {
                None | Some(Ordering::Less) => {
                    best = Some(s);
                    ties.clear();
                    ties.push(point.clone());
                }
                Some(Ordering::Equal) => ties.push(point.clone()),
                Some(Ordering::Greater) => {}
            }
        }
        ties
    }

    /// The lattice point nearest to `p·f / sum(f)` by largest-remainder rounding.
    fn center(&self, p: u64) -> Vec<u32> {
        let m = match &self.kind {
            Kind::Exact { g, .. } => g.len(),
            Kind::Float { f, .. } => f.len(),
        };
        let (floors, mut order): (Vec<u64>, Vec<usize>) = match &self.kind {
            Kind::Exact { g, .. } => {
                let total: u128 = g.iter().sum();
                let floors: Vec<u64> = g.iter().map(|&x| (x * p as u128 / total) as u64).collect();
                let rems: Vec<u128> = g.iter().map(|&x| x * p as u128 % total).collect();
                let mut order: Vec<usize> = (0..m).collect();
                order.sort_by(|&i, &j| rems[j].cmp(&rems[i]));
                (floors, order)
            }
            Kind::Float { f, .. } => {
                let total: f64 = f.iter().sum();
                let scaled: Vec<f64> = f.iter().map(|&x| x * p as f64 / total).collect();
                let floors: Vec<u64> = scaled.iter().map(|&x| x.floor() as u64).collect();
                let rems: Vec<f64> = scaled.iter().map(|&x| x - x.floor()).collect();
                let mut order: Vec<usize> = (0..m).collect();
                order.sort_by(|&i, &j| rems[j].total_cmp(&rems[i]));
                (floors, order)
            }
        };
        let mut coords: Vec<u64> = floors;
        let assigned: u64 = coords.iter().sum();
        let mut left = p.saturating_sub(assigned);
        order.truncate(m);
        for &i in order.iter().cycle() {
            if left == 0 {
                break;
            }
            coords[i] += 1;
            left -= 1;
        }
        // Float rounding may overshoot by a unit; trim from the largest coordinate.
        while coords.iter().sum::<u64>() > p {
            let i = (0..m).max_by_key(|&i| coords[i]).unwrap();
            coords[i] -= 1;
        }
        coords.into_iter().map(|c| c as u32).collect()
    }
}

/// All lattice points reachable from `center` by at most `radius` unit moves.
pub fn neighborhood(center: &LatticePoint, radius: usize) -> Vec<LatticePoint> {
    let mut out = vec![center.clone()];
    let mut seen: HashSet<LatticePoint> = out.iter().cloned().collect();
    let mut frontier = 0..1;
    for _ in 0..radius {
        let start = out.len();
        for k in frontier.clone() {
            let base = out[k].clone();
            let m = base.coords().len();
            for i in 0..m {
                if base.coords()[i] == 0 {
                    continue;
                }
                for j in 0..m {
                    if i == j {
                        continue;
                    }
                    let mut next = base.clone();
                    next.coords_mut()[i] -= 1;
                    next.coords_mut()[j] += 1;
                    if seen.insert(next.clone()) {
                        out.push(next);
                    }
                }
            }
        }
        frontier = start..out.len();
    }
    out
}

fn pick(ties: &[LatticePoint], rng: &mut RandomSource) -> LatticePoint {
    match ties.len() {
        1 => ties[0].clone(),
        k => ties[rng.index(k)].clone(),
    }
}

/// Exhaustive association over the enumerated lattice; ties uniform.
pub fn associate(f_n: &Normalized, lattice: &ReferenceLattice, rng: &mut RandomSource) -> Result<LatticePoint> {
    check_dim(f_n, lattice)?;
    let scorer = Scorer::new(f_n, lattice.p());
    if scorer.is_zero() {
        return Ok(lattice.random_point(rng));
    }
    let points = lattice.points(ENUMERATION_CAP)?;
    Ok(pick(&scorer.minimizers(&points), rng))
}

/// Association restricted to the unit-move neighborhood of the rounded point.
pub fn associate_fast(
    f_n: &Normalized,
    lattice: &ReferenceLattice,
    radius: usize,
    rng: &mut RandomSource,
) -> Result<LatticePoint> {
    check_dim(f_n, lattice)?;
    if radius == 0 {
        return Err(Error::InvalidConfig("association radius must be at least 1".into()));
    }
    let scorer = Scorer::new(f_n, lattice.p());
    if scorer.is_zero() {
        return Ok(lattice.random_point(rng));
    }
    let center = LatticePoint::new(scorer.center(lattice.p()));
    Ok(pick(&scorer.minimizers(&neighborhood(&center, radius)), rng))
}

fn check_dim(f_n: &Normalized, lattice: &ReferenceLattice) -> Result<()> {
    if f_n.len() != lattice.m() {
        return Err(Error::LengthMismatch {
            expected: lattice.m(),
            actual: f_n.len(),
        });
    }
    Ok(())
}

/// Which association routine a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Exhaustive,
    Fast { radius: usize },
}

impl Backend {
    pub fn name(&self) -> String {
        match self {
            Backend::Exhaustive => "exhaustive".into(),
            Backend::Fast { radius } => format!("fast-r{radius}"),
        }
    }
}

/// Requested backend; `Auto` is exhaustive when the lattice has at most
/// `ENUMERATION_CAP` points and radius-1 fast association otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssociationMode {
    #[default]
    Auto,
    Exhaustive,
    Fast { radius: usize },
}

impl AssociationMode {
    pub fn resolve(self, lattice: &ReferenceLattice) -> Result<Backend> {
        match self {
            AssociationMode::Auto => match lattice.size() {
                Some(s) if s <= ENUMERATION_CAP => Ok(Backend::Exhaustive),
                _ => Ok(Backend::Fast { radius: 1 }),
            },
            AssociationMode::Exhaustive => Ok(Backend::Exhaustive),
            AssociationMode::Fast { radius: 0 } => {
                Err(Error::InvalidConfig("association radius must be at least 1".into()))
            }
            AssociationMode::Fast { radius } => Ok(Backend::Fast { radius }),
        }
    }
}

#[derive(Debug, Clone)]
enum Ties {
    Points(Vec<LatticePoint>),
    Anywhere,
}

#[derive(Debug, Clone)]
struct Entry {
    scorer: Scorer,
    ties: Ties,
}

/// Association with a per-fitness cache of minimizer sets, valid for one
/// normalization. Each call still draws its own tie-break.
#[derive(Debug, Clone)]
pub struct Associator {
    lattice: ReferenceLattice,
    backend: Backend,
    points: Vec<LatticePoint>,
    cache: HashMap<FitnessVector, Entry>,
    y_min: Vec<u64>,
    den: SmallVec<[u64; 4]>,
}

impl Associator {
    pub fn new(lattice: ReferenceLattice, mode: AssociationMode) -> Result<Self> {
        let backend = mode.resolve(&lattice)?;
        let points = match backend {
            Backend::Exhaustive => lattice.points(ENUMERATION_CAP)?,
            Backend::Fast { .. } => Vec::new(),
        };
        Ok(Associator {
            lattice,
            backend,
            points,
            cache: HashMap::default(),
            y_min: Vec::new(),
            den: SmallVec::new(),
        })
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn lattice(&self) -> &ReferenceLattice {
        &self.lattice
    }

    /// Drops cached results if the normalization moved.
    pub fn set_normalization(&mut self, state: &NormalizationState) {
        let den = state.denominators();
        if state.y_min() != self.y_min.as_slice() || den != self.den {
            self.cache.clear();
            self.y_min = state.y_min().to_vec();
            self.den = den;
        }
    }

    /// Reference point of `f` and its distance key under the current normalization.
    pub fn associate(&mut self, f: &FitnessVector, rng: &mut RandomSource) -> (LatticePoint, u128) {
        if !self.cache.contains_key(f) {
            let entry = self.compute(f);
            self.cache.insert(f.clone(), entry);
        }
        let entry = self.cache.get(f).expect("just inserted");
        match &entry.ties {
            Ties::Anywhere => (self.lattice.random_point(rng), 0),
            Ties::Points(ties) => {
                let point = pick(ties, rng);
                let key = entry.scorer.distance_key(point.coords());
                (point, key)
            }
        }
    }

    fn compute(&self, f: &FitnessVector) -> Entry {
        let num: SmallVec<[u64; 4]> = f
            .values()
            .iter()
            .zip(&self.y_min)
            .map(|(&v, &lo)| v.saturating_sub(lo))
            .collect();
        let normalized = Normalized {
            num,
            den: self.den.clone(),
        };
        let scorer = Scorer::new(&normalized, self.lattice.p());
        let ties = if scorer.is_zero() {
            Ties::Anywhere
        } else {
            match self.backend {
                Backend::Exhaustive => Ties::Points(scorer.minimizers(&self.points)),
                Backend::Fast { radius } => {
                    let center = LatticePoint::new(scorer.center(self.lattice.p()));
                    Ties::Points(scorer.minimizers(&neighborhood(&center, radius)))
                }
            }
        };
        Entry { scorer, ties }
    }
}

/// One-shot association of a raw fitness vector.
pub fn associate_fitness(
    f: &FitnessVector,
    state: &NormalizationState,
    lattice: &ReferenceLattice,
    rng: &mut RandomSource,
) -> Result<LatticePoint> {
    associate(&normalize(f, state), lattice, rng)
}
