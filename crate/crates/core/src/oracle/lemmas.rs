//! Exhaustive checks of the dominance structure of both benchmark families.
//!
//! Dominance depends on fitness alone, so pairwise claims are checked once
//! per pair of fitness classes; `checked` counts the genotype pairs covered.

use std::collections::{BTreeMap, BTreeSet};

use super::antichain::{max_antichain, verify_incomparable_bound, IncomparableBound, MAX_ANTICHAIN_VECTORS};
use super::hamming::{min_hamming, HalfSets};
use super::image::{distinct_vectors, fitness_image, for_all_strings, ImageClass};
use super::report::LemmaReport;
use crate::benchmarks::{
    antichain_bound, classify_rrmo, evaluate_unchecked, pareto_set, pareto_set_size, Family, ProblemSpec, Region,
};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fitness::FitnessVector;
use crate::nsga3::sort::sort_unchecked;

fn require(spec: &ProblemSpec, family: Family) -> Result<()> {
    if spec.family() != family {
        return Err(Error::WrongFamily {
            expected: family.name(),
            actual: spec.family().name(),
        });
    }
    Ok(())
}

fn classes<'a>(image: &'a [ImageClass], pred: impl Fn(&ImageClass) -> bool + 'a) -> Vec<&'a ImageClass> {
    image.iter().filter(|c| pred(c)).collect()
}

/// Every class in `upper` strictly dominates every class in `lower`.
fn all_dominate(report: &mut LemmaReport, upper: &[&ImageClass], lower: &[&ImageClass]) {
    for y in upper {
        for x in lower {
            report.count(y.count as u128 * x.count as u128);
            if !y.f.strictly_dominates(&x.f) {
                report.violation(|| {
                    format!("{:?} ({}) does not dominate {:?} ({})", y.f, y.region, x.f, x.region)
                });
            }
        }
    }
}

fn level_order(report: &mut LemmaReport, n_classes: &[&ImageClass]) {
    for y in n_classes {
        for x in n_classes {
            if x.level < y.level {
                report.count(y.count as u128 * x.count as u128);
                if !y.f.strictly_dominates(&x.f) {
                    report.violation(|| {
                        format!("level {} {:?} does not dominate level {} {:?}", y.level, y.f, x.level, x.f)
                    });
                }
            }
        }
    }
}

/// Brute-force front of the image compared against the constructive Pareto set.
fn pareto_reports(spec: &ProblemSpec, image: &[ImageClass], name: &str) -> Result<Vec<LemmaReport>> {
    let instance = spec.to_string();
    let vectors = distinct_vectors(image);
    let layers = sort_unchecked(&vectors);
    let front: BTreeSet<FitnessVector> = layers[0].iter().map(|&i| vectors[i].clone()).collect();
    let brute: BTreeSet<String> = for_all_strings(spec, |_, x| {
        front.contains(&evaluate_unchecked(x, spec)).then(|| x.to_string())
    })?
    .into_iter()
    .collect();
    let constructive: BTreeSet<String> = pareto_set(spec)?.iter().map(|x| x.to_string()).collect();

    let mut equal = LemmaReport::new(name, &instance);
    for s in brute.symmetric_difference(&constructive) {
        equal.violation(|| {
            let side = if brute.contains(s) { "only brute force" } else { "only constructive" };
            format!("{s}: {side}")
        });
    }
    equal.count(brute.len().max(constructive.len()) as u128);

    let mut size = LemmaReport::new("pareto-set-cardinality", &instance);
    let expected = pareto_set_size(spec)?;
    size.expect(brute.len() as u64 == expected, || {
        format!("brute-force Pareto set has {} strings, formula gives {expected}", brute.len())
    });
    Ok(vec![equal, size])
}

/// Groups within which incomparable sets must lie: for the one-point family
/// `L ∪ Zero`, `M ∪ N_0` and each `N_l` with `l > 0`; for the uniform family
/// the zero vector, `L`, `M` and each `N_l`.
fn antichain_group(spec: &ProblemSpec, c: &ImageClass) -> usize {
    match (spec.family(), c.region) {
        (Family::Rrmo, Region::L | Region::Zero) => 0,
        (Family::Rrmo, Region::M) => 1,
        (Family::Rrmo, Region::N) => 1 + c.level,
        (Family::RrmoUni, _) if c.f.is_zero() => 0,
        (Family::RrmoUni, Region::L) => 1,
        (Family::RrmoUni, Region::M) => 2,
        (Family::RrmoUni, _) => 3 + c.level,
    }
}

/// First-layer size against the antichain bound, the exact maximum antichain
/// of the fitness image when it is small enough, and the generic bounds.
fn antichain_reports(spec: &ProblemSpec, image: &[ImageClass]) -> Result<Vec<LemmaReport>> {
    let instance = spec.to_string();
    let bound = antichain_bound(spec)? as u128;
    let vectors = distinct_vectors(image);
    let layers = sort_unchecked(&vectors);

    let mut first = LemmaReport::new("antichain-first-layer", &instance);
    first.expect(layers[0].len() as u128 <= bound, || {
        format!("first layer has {} distinct vectors, bound {bound}", layers[0].len())
    });
    let mut out = vec![first];

    // The dominance checks confine every incomparable set to one group.
    let mut groups: BTreeMap<usize, Vec<FitnessVector>> = BTreeMap::new();
    for c in image {
        groups.entry(antichain_group(spec, c)).or_default().push(c.f.clone());
    }
    let mut full = LemmaReport::new("antichain-max-per-group", &instance);
    for g in groups.values() {
        let mut g = g.clone();
        g.sort();
        g.dedup();
        if g.len() > MAX_ANTICHAIN_VECTORS {
            continue;
        }
        let size = max_antichain(&g)? as u128;
        full.expect(size <= bound, || format!("group antichain of size {size} exceeds {bound}"));
    }
    if vectors.len() <= MAX_ANTICHAIN_VECTORS {
        let size = max_antichain(&vectors)? as u128;
        full.expect(size <= bound, || format!("image antichain of size {size} exceeds {bound}"));
    }
    out.push(full);

    if vectors.len() <= MAX_ANTICHAIN_VECTORS {
        out.push(verify_incomparable_bound(
            &vectors,
            IncomparableBound::values_per_objective(&vectors),
            &instance,
        )?);
        if spec.m() == 2 {
            out.push(verify_incomparable_bound(&vectors, IncomparableBound::band(&vectors), &instance)?);
        }
    }
    Ok(out)
}

/// Moves the leftmost one of each block onto the first zero inside the
/// block's span of ones until the ones are contiguous.
pub fn pack_blocks(x: &BitString, spec: &ProblemSpec) -> BitString {
    let mut y = x.clone();
    for j in 1..=spec.blocks() {
        let r = spec.block_range(j);
        loop {
            let ones: Vec<usize> = (r.start + 1..=r.end).filter(|&i| y.get(i)).collect();
            let (Some(&lo), Some(&hi)) = (ones.first(), ones.last()) else {
                break;
            };
            match (lo..hi).find(|&i| !y.get(i)) {
                Some(z) => {
                    y.set(lo, false);
                    y.set(z, true);
                }
                None => break,
            }
        }
    }
    y
}

/// Dominance structure and Pareto set of the one-point family.
pub fn verify_rrmo_lemmas(spec: &ProblemSpec) -> Result<Vec<LemmaReport>> {
    require(spec, Family::Rrmo)?;
    let instance = spec.to_string();
    let image = fitness_image(spec)?;
    let l = classes(&image, |c| c.region == Region::L);
    let mn = classes(&image, |c| matches!(c.region, Region::M | Region::N));
    let n_classes = classes(&image, |c| c.region == Region::N);

    let mut r1 = LemmaReport::new("rrmo:L-dominated-by-M-and-N", &instance);
    all_dominate(&mut r1, &mn, &l);

    let mut r2 = LemmaReport::new("rrmo:M-dominated-by-packed-blocks", &instance);
    let failures = for_all_strings(spec, |_, x| {
        let region = classify_rrmo(x, spec).ok()?;
        if region.region != Region::M {
            return None;
        }
        let y = pack_blocks(x, spec);
        let ry = classify_rrmo(&y, spec).ok()?;
        let all_b = ry.region == Region::N && ry.k_set.is_empty();
        let fx = evaluate_unchecked(x, spec);
        let fy = evaluate_unchecked(&y, spec);
        Some((all_b && fy.strictly_dominates(&fx), x.to_string(), y.to_string()))
    })?;
    for (ok, x, y) in failures {
        r2.expect(ok, || format!("{x} -> {y} is not an all-B dominating witness"));
    }

    let mut r3 = LemmaReport::new("rrmo:N-higher-level-dominates", &instance);
    level_order(&mut r3, &n_classes);

    let mut r4 = LemmaReport::new("rrmo:N-same-level-incomparable", &instance);
    for (i, x) in n_classes.iter().enumerate() {
        r4.expect(x.count == 1, || format!("{} strings share fitness {:?} in N", x.count, x.f));
        for y in &n_classes[i + 1..] {
            if x.level == y.level {
                r4.expect(!x.f.weakly_dominates(&y.f) && !y.f.weakly_dominates(&x.f), || {
                    format!("{:?} and {:?} are comparable", x.f, y.f)
                });
            }
        }
    }

    let mut out = vec![r1, r2, r3, r4];
    out.extend(pareto_reports(spec, &image, "rrmo:pareto-set-constructive")?);
    out.extend(antichain_reports(spec, &image)?);
    Ok(out)
}

/// Dominance structure and Pareto set of the uniform family.
pub fn verify_uni_lemmas(spec: &ProblemSpec) -> Result<Vec<LemmaReport>> {
    require(spec, Family::RrmoUni)?;
    let instance = spec.to_string();
    let image = fitness_image(spec)?;
    let l = classes(&image, |c| c.region == Region::L);
    let m = classes(&image, |c| c.region == Region::M);
    let n0 = classes(&image, |c| c.region == Region::N && c.level == 0);
    let n_classes = classes(&image, |c| c.region == Region::N);

    let mut r1 = LemmaReport::new("uni:L-dominated-by-M", &instance);
    all_dominate(&mut r1, &m, &l);
    let mut r2 = LemmaReport::new("uni:M-dominated-by-N-level-0", &instance);
    all_dominate(&mut r2, &n0, &m);
    let mut r3 = LemmaReport::new("uni:N-higher-level-dominates", &instance);
    level_order(&mut r3, &n_classes);

    let mut out = vec![r1, r2, r3];
    out.extend(pareto_reports(spec, &image, "uni:pareto-set-constructive")?);
    out.extend(antichain_reports(spec, &image)?);
    let half = spec.n() / spec.m();
    if half <= super::hamming::MAX_HAMMING_BITS {
        out.extend(verify_hamming_separation(half)?);
    }
    Ok(out)
}

/// Minimum distances between `U` and `P` (at least `len/4`) and between `C`
/// and `T` (at least `3·len/8`) at half length `len`.
pub fn verify_hamming_separation(len: usize) -> Result<Vec<LemmaReport>> {
    let sets = HalfSets::new(len)?;
    let instance = format!("half-length={len}");
    let up = min_hamming(|x| sets.u(x), |x| sets.p(x), len)?;
    let ct = min_hamming(|x| sets.c(x), |x| sets.t(x), len)?;
    let mut a = LemmaReport::new("hamming:U-to-P", &instance);
    a.expect(4 * up >= len, || format!("min distance {up} below {len}/4"));
    let mut b = LemmaReport::new("hamming:C-to-T", &instance);
    b.expect(8 * ct >= 3 * len, || format!("min distance {ct} below 3*{len}/8"));
    Ok(vec![a, b])
}

/// Instances checked when no spec is given.
pub fn default_instances() -> Vec<ProblemSpec> {
    vec![
        ProblemSpec::rrmo(10, 2).expect("valid"),
        ProblemSpec::rrmo(15, 2).expect("valid"),
        ProblemSpec::rrmo(20, 4).expect("valid"),
        ProblemSpec::rrmo_uni(16, 2).expect("valid"),
    ]
}

/// All structural checks for one instance.
pub fn verify_spec(spec: &ProblemSpec) -> Result<Vec<LemmaReport>> {
    match spec.family() {
        Family::Rrmo => verify_rrmo_lemmas(spec),
        Family::RrmoUni => verify_uni_lemmas(spec),
    }
}

/// Structural checks over `specs` (the default instances when empty).
pub fn verify_suite(specs: &[ProblemSpec]) -> Result<Vec<LemmaReport>> {
    let specs = if specs.is_empty() { default_instances() } else { specs.to_vec() };
    let mut out = Vec::new();
    for spec in &specs {
        out.extend(verify_spec(spec)?);
    }
    Ok(out)
}
