//! Exhaustive enumeration of `{0,1}^n`, grouped into fitness classes.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::benchmarks::{classify_rrmo, classify_uni, evaluate_unchecked, Family, ProblemSpec, Region};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fitness::FitnessVector;
use crate::nsga3::sort::sort_unchecked;

/// Largest `n` accepted for full enumeration.
pub const MAX_ENUMERATION_BITS: usize = 22;

const CHUNK: u64 = 1 << 14;

/// All strings sharing region, level and fitness vector. The level is
/// `|K(x)|` (rrmo) or `|U(x)|` (rrmo-uni) in region `N`, and 0 elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageClass {
    pub region: Region,
    pub level: usize,
    pub f: FitnessVector,
    pub count: u64,
    /// Smallest member, as the integer whose binary digits (index 1 first) spell it.
    pub first: u64,
}

pub(crate) fn check_enumerable(spec: &ProblemSpec) -> Result<()> {
    if spec.n() > MAX_ENUMERATION_BITS {
        return Err(Error::TooLarge {
            what: "genotype space",
            size: 1u128 << spec.n(),
            cap: 1u128 << MAX_ENUMERATION_BITS,
        });
    }
    Ok(())
}

/// Region and level of `x`.
pub fn region_level(x: &BitString, spec: &ProblemSpec) -> (Region, usize) {
    match spec.family() {
        Family::Rrmo => {
            let r = classify_rrmo(x, spec).expect("length checked by caller");
            (r.region, if r.region == Region::N { r.k_set.len() } else { 0 })
        }
        Family::RrmoUni => {
            let r = classify_uni(x, spec).expect("length checked by caller");
            (r.region, if r.region == Region::N { r.u_set.len() } else { 0 })
        }
    }
}

/// Maps `f` over every string in parallel chunks; results come back in code order.
pub(crate) fn for_all_strings<T: Send>(
    spec: &ProblemSpec,
    f: impl Fn(u64, &BitString) -> Option<T> + Sync,
) -> Result<Vec<T>> {
    check_enumerable(spec)?;
    let n = spec.n();
    let total = 1u64 << n;
    let chunks: Vec<Vec<T>> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            (c * CHUNK..((c + 1) * CHUNK).min(total))
                .filter_map(|code| f(code, &BitString::from_u64(code, n)))
                .collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Fitness classes of the whole search space, ordered by (region, level, f).
pub fn fitness_image(spec: &ProblemSpec) -> Result<Vec<ImageClass>> {
    check_enumerable(spec)?;
    let n = spec.n();
    let total = 1u64 << n;
    type Key = (Region, usize, FitnessVector);
    let partials: Vec<BTreeMap<Key, (u64, u64)>> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut local: BTreeMap<Key, (u64, u64)> = BTreeMap::new();
            for code in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let x = BitString::from_u64(code, n);
                let (region, level) = region_level(&x, spec);
                let f = evaluate_unchecked(&x, spec);
                let e = local.entry((region, level, f)).or_insert((0, code));
                e.0 += 1;
            }
            local
        })
        .collect();
    let mut merged: BTreeMap<Key, (u64, u64)> = BTreeMap::new();
    for part in partials {
        for (k, (count, first)) in part {
            let e = merged.entry(k).or_insert((0, first));
            e.0 += count;
            e.1 = e.1.min(first);
        }
    }
    Ok(merged
        .into_iter()
        .map(|((region, level, f), (count, first))| ImageClass {
            region,
            level,
            f,
            count,
            first,
        })
        .collect())
}

/// Distinct fitness vectors of an image.
pub fn distinct_vectors(image: &[ImageClass]) -> Vec<FitnessVector> {
    let mut v: Vec<FitnessVector> = image.iter().map(|c| c.f.clone()).collect();
    v.sort();
    v.dedup();
    v
}

/// Every string not strictly dominated by any other, grouped by fitness vector.
pub fn brute_force_pareto(spec: &ProblemSpec) -> Result<Vec<(FitnessVector, Vec<BitString>)>> {
    let vectors = distinct_vectors(&fitness_image(spec)?);
    let layers = sort_unchecked(&vectors);
    let front: HashSet<FitnessVector> = layers[0].iter().map(|&i| vectors[i].clone()).collect();
    let members = for_all_strings(spec, |_, x| {
        let f = evaluate_unchecked(x, spec);
        front.contains(&f).then(|| (f, x.clone()))
    })?;
    let mut grouped: BTreeMap<FitnessVector, Vec<BitString>> = BTreeMap::new();
    for (f, x) in members {
        grouped.entry(f).or_default().push(x);
    }
    Ok(grouped.into_iter().collect())
}
