//! Non-dominated sorting.
//!
//! Equal vectors are grouped first, then distinct vectors are visited in
//! decreasing lexicographic order (a vector can only be dominated by one
//! visited earlier) and each goes to the first layer holding no dominator.

use crate::error::{Error, Result};
use crate::fitness::FitnessVector;

/// Layers of indices into `points`, best first. Equal vectors share a layer.
pub fn non_dominated_sort(points: &[FitnessVector]) -> Result<Vec<Vec<usize>>> {
    if points.is_empty() {
        return Err(Error::Empty("non-dominated sort input"));
    }
    let m = points[0].len();
    if let Some(bad) = points.iter().find(|p| p.len() != m) {
        return Err(Error::LengthMismatch {
            expected: m,
            actual: bad.len(),
        });
    }
    Ok(sort_unchecked(points))
}

pub(crate) fn sort_unchecked(points: &[FitnessVector]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_unstable_by(|&a, &b| points[b].cmp(&points[a]).then(a.cmp(&b)));

    // Layers over one representative per distinct vector; duplicates inherit it.
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut layer_of = vec![0usize; points.len()];
    let mut prev: Option<usize> = None;
    for i in order {
        if let Some(p) = prev.filter(|&p| points[p] == points[i]) {
            layer_of[i] = layer_of[p];
            continue;
        }
        let v = &points[i];
        let layer = reps
            .iter()
            .position(|layer| !layer.iter().rev().any(|&u| points[u].strictly_dominates(v)))
            .unwrap_or(reps.len());
        if layer == reps.len() {
            reps.push(Vec::new());
        }
        reps[layer].push(i);
        layer_of[i] = layer;
        prev = Some(i);
    }

    let mut out: Vec<Vec<usize>> = vec![Vec::new(); reps.len()];
    for (i, &layer) in layer_of.iter().enumerate() {
        out[layer].push(i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fv(v: &[u64]) -> FitnessVector {
        FitnessVector::new(v.iter().copied())
    }

    /// Quadratic peeling: a layer is whatever no remaining point strictly dominates.
    fn peel(points: &[FitnessVector]) -> Vec<Vec<usize>> {
        let mut remaining: Vec<usize> = (0..points.len()).collect();
        let mut layers = Vec::new();
        while !remaining.is_empty() {
            let (front, rest): (Vec<usize>, Vec<usize>) = remaining.iter().partition(|&&i| {
                !remaining.iter().any(|&j| points[j].strictly_dominates(&points[i]))
            });
            layers.push(front);
            remaining = rest;
        }
        layers
    }

    #[test]
    fn example_layers() {
        let pts = [fv(&[2, 2]), fv(&[1, 3]), fv(&[3, 1]), fv(&[2, 1]), fv(&[1, 1])];
        let layers = non_dominated_sort(&pts).unwrap();
        assert_eq!(layers, vec![vec![0, 1, 2], vec![3], vec![4]]);
    }

    #[test]
    fn trivial_inputs() {
        assert_eq!(non_dominated_sort(&[fv(&[4, 4])]).unwrap(), vec![vec![0]]);
        let same = vec![fv(&[3, 3, 3]); 5];
        assert_eq!(non_dominated_sort(&same).unwrap(), vec![vec![0, 1, 2, 3, 4]]);
        assert!(matches!(non_dominated_sort(&[]), Err(Error::Empty(_))));
        assert!(non_dominated_sort(&[fv(&[1]), fv(&[1, 2])]).is_err());
    }

    proptest! {
        #[test]
        fn matches_peeling_oracle(
            raw in prop::collection::vec(prop::collection::vec(0u64..6, 3), 1..60)
        ) {
            let pts: Vec<FitnessVector> = raw.into_iter().map(FitnessVector::from).collect();
            let layers = non_dominated_sort(&pts).unwrap();
            prop_assert_eq!(&layers, &peel(&pts));
            // Soundness spelled out.
            for (k, layer) in layers.iter().enumerate() {
                for &a in layer {
                    for &b in layer {
                        prop_assert!(!pts[a].strictly_dominates(&pts[b]));
                    }
                    if k > 0 {
                        prop_assert!(layers[k - 1].iter().any(|&u| pts[u].strictly_dominates(&pts[a])));
                    }
                }
            }
        }
    }
}
