//! Largest mutually incomparable subsets via Dilworth's theorem: in the
//! strict-dominance order on distinct vectors, the maximum antichain size
//! equals the number of vectors minus a maximum matching between "upper" and
//! "lower" copies (a minimum chain cover).

use std::collections::VecDeque;

use super::report::LemmaReport;
use crate::error::{Error, Result};
use crate::fitness::FitnessVector;

/// Most distinct vectors accepted by [`max_antichain`].
pub const MAX_ANTICHAIN_VECTORS: usize = 2000;

/// Maximum bipartite matching (Hopcroft–Karp). `adj[u]` lists right vertices of `u`.
pub fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    const FREE: usize = usize::MAX;
    let left = adj.len();
    let mut match_l = vec![FREE; left];
    let mut match_r = vec![FREE; right];
    let mut dist = vec![0usize; left];
    let mut size = 0;
    loop {
        // Layered BFS from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..left {
            if match_l[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            return size;
        }
        // Iterative DFS along the layers.
        let mut it = vec![0usize; left];
        for root in 0..left {
            if match_l[root] != FREE {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&u) = stack.last() {
                if it[u] == adj[u].len() {
                    dist[u] = usize::MAX;
                    stack.pop();
                    continue;
                }
                let v = adj[u][it[u]];
                it[u] += 1;
                let w = match_r[v];
                if w == FREE {
                    // Augment along the stack.
                    let mut v = v;
                    while let Some(u) = stack.pop() {
                        let prev = match_l[u];
                        match_l[u] = v;
                        match_r[v] = u;
                        v = prev;
                    }
                    size += 1;
                    break;
                } else if dist[w] == dist[u] + 1 {
                    stack.push(w);
                }
            }
        }
    }
}

fn dedup(vectors: &[FitnessVector]) -> Vec<FitnessVector> {
    let mut v = vectors.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Size of the largest mutually incomparable subset of `vectors`.
pub fn max_antichain(vectors: &[FitnessVector]) -> Result<usize> {
    let v = dedup(vectors);
    if v.len() > MAX_ANTICHAIN_VECTORS {
        return Err(Error::TooLarge {
            what: "antichain input (distinct vectors)",
            size: v.len() as u128,
            cap: MAX_ANTICHAIN_VECTORS as u128,
        });
    }
    let adj: Vec<Vec<usize>> = (0..v.len())
        .map(|i| (0..v.len()).filter(|&j| v[i].strictly_dominates(&v[j])).collect())
        .collect();
    Ok(v.len() - max_matching(&adj, v.len()))
}

/// The two incomparable-set bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncomparableBound {
    /// At most `k` distinct values per objective: antichains have size `<= k^(m-1)`.
    ValuesPerObjective(u64),
    /// Two objectives with `|f1 - f2| <= a`: antichains have size `<= a + 1`.
    Band(u64),
}

impl IncomparableBound {
    /// The tightest `k` for `vectors`.
    pub fn values_per_objective(vectors: &[FitnessVector]) -> Self {
        let m = vectors.first().map_or(0, |v| v.len());
        let k = (0..m)
            .map(|j| {
                let mut col: Vec<u64> = vectors.iter().map(|v| v[j]).collect();
                col.sort_unstable();
                col.dedup();
                col.len() as u64
            })
            .max()
            .unwrap_or(1);
        IncomparableBound::ValuesPerObjective(k)
    }

    /// The tightest `a` for two-objective `vectors`.
    pub fn band(vectors: &[FitnessVector]) -> Self {
        IncomparableBound::Band(vectors.iter().map(|v| v[0].abs_diff(v[1])).max().unwrap_or(0))
    }

    fn limit(&self, m: usize) -> Option<u128> {
        match *self {
            IncomparableBound::ValuesPerObjective(k) => (k as u128).checked_pow(m.saturating_sub(1) as u32),
            IncomparableBound::Band(a) => Some(a as u128 + 1),
        }
    }
}

/// Checks that the largest incomparable subset of `vectors` respects `bound`.
pub fn verify_incomparable_bound(
    vectors: &[FitnessVector],
    bound: IncomparableBound,
    instance: &str,
) -> Result<LemmaReport> {
    let name = match bound {
        IncomparableBound::ValuesPerObjective(_) => "incomparable-bound-values",
        IncomparableBound::Band(_) => "incomparable-bound-band",
    };
    let mut report = LemmaReport::new(name, instance);
    let m = vectors.first().map_or(0, |v| v.len());
    if let IncomparableBound::Band(_) = bound {
        if m != 2 {
            return Err(Error::Precondition(format!("band bound needs two objectives, got {m}")));
        }
        for v in vectors {
            if let IncomparableBound::Band(a) = bound {
                report.expect(v[0].abs_diff(v[1]) <= a, || format!("{v:?} leaves the band {a}"));
            }
        }
    }
    let size = max_antichain(vectors)?;
    let limit = bound.limit(m);
    report.expect(limit.is_none_or(|l| size as u128 <= l), || {
        format!("largest incomparable subset has {size} vectors, bound {limit:?}")
    });
    report.count(dedup(vectors).len() as u128);
    Ok(report)
}
