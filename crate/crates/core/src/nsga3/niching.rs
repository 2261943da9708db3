//! Niching survival selection over the critical layer.
//!
//! Only reference points associated with at least one member of `Y` or of
//! the critical layer take part. Points are kept in buckets by niche count;
//! the minimum bucket never decreases, so each pick costs O(1).

use rustc_hash::FxHashMap as HashMap;

use super::lattice::LatticePoint;
use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// A critical-layer member: its reference point and distance key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub point: LatticePoint,
    pub key: u128,
}

impl Candidate {
    pub fn new(point: LatticePoint, key: u128) -> Self {
        Candidate { point, key }
    }
}

/// Indices into `f_star` of the members chosen to fill the population to `mu`.
pub fn niching_select(
    y: &[LatticePoint],
    f_star: &[Candidate],
    mu: usize,
    rng: &mut RandomSource,
) -> Result<Vec<usize>> {
    if y.len() >= mu || mu > y.len() + f_star.len() {
        return Err(Error::Precondition(format!(
            "niching needs |Y| < mu <= |Y| + |F*| (|Y|={}, |F*|={}, mu={mu})",
            y.len(),
            f_star.len()
        )));
    }
    let wanted = mu - y.len();
    if wanted == f_star.len() {
        return Ok((0..f_star.len()).collect());
    }

    let mut ids: HashMap<&LatticePoint, usize> = HashMap::default();
    let mut rho: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for point in y.iter().chain(f_star.iter().map(|c| &c.point)) {
        ids.entry(point).or_insert_with(|| {
            rho.push(0);
            members.push(Vec::new());
            rho.len() - 1
        });
    }
    for point in y {
        rho[ids[point]] += 1;
    }
    for (i, c) in f_star.iter().enumerate() {
        members[ids[&c.point]].push(i);
    }
    // Nearest first, equal distances in uniformly random order.
    for list in &mut members {
        if list.len() > 1 {
            rng.shuffle(list);
            list.sort_by_key(|&i| f_star[i].key);
        }
    }

    let top = rho.iter().copied().max().unwrap_or(0) + wanted + 1;
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); top];
    for (id, &r) in rho.iter().enumerate() {
        buckets[r].push(id);
    }
    let mut next = vec![0usize; rho.len()];
    let mut chosen = Vec::with_capacity(wanted);
    let mut level = 0;
    while chosen.len() < wanted {
        while buckets[level].is_empty() {
            level += 1;
        }
        let pick = rng.index(buckets[level].len());
        let id = buckets[level].swap_remove(pick);
        if let Some(&i) = members[id].get(next[id]) {
            next[id] += 1;
            chosen.push(i);
            buckets[level + 1].push(id);
        }
    }
    Ok(chosen)
}
