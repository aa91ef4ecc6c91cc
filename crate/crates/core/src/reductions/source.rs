//! Brute-force solvers for the source problems of the generators.

use super::Graph;

/// Some non-empty sub-multiset sums to zero.
pub fn subset_sum(xs: &[i64]) -> bool {
    (1u64..1 << xs.len()).any(|mask| masked_sum(xs, mask) == 0)
}

/// Some `ell`-subset has no non-empty sub-subset summing to zero.
pub fn sub_subset_sum(xs: &[i64], ell: usize) -> bool {
    (0u64..1 << xs.len())
        .filter(|mask| mask.count_ones() as usize == ell)
        .any(|outer| {
            let mut sub = outer;
            while sub != 0 {
                if masked_sum(xs, sub) == 0 {
                    return false;
                }
                sub = (sub - 1) & outer;
            }
            true
        })
}

/// Some sub-multiset sums to half the total.
pub fn partition(xs: &[i64]) -> bool {
    let total: i64 = xs.iter().sum();
    total % 2 == 0 && (0u64..1 << xs.len()).any(|mask| 2 * masked_sum(xs, mask) == total)
}

/// The graph has an independent set of `ell` nodes.
pub fn independent_set(graph: &Graph, ell: usize) -> bool {
    (0u64..1 << graph.nodes)
        .filter(|mask| mask.count_ones() as usize == ell)
        .any(|mask| graph.edges.iter().all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0))
}

/// `ell` of the sets cover `{1, ..., 3ell}`.
pub fn exact_cover(ell: usize, sets: &[[usize; 3]]) -> bool {
    let full: u64 = (1 << (3 * ell)) - 1;
    (0u64..1 << sets.len())
        .filter(|mask| mask.count_ones() as usize == ell)
        .any(|mask| {
            let covered = (0..sets.len())
                .filter(|j| mask >> j & 1 == 1)
                .flat_map(|j| sets[j])
                .fold(0u64, |acc, e| acc | 1 << (e - 1));
            covered == full
        })
}

fn masked_sum(xs: &[i64], mask: u64) -> i64 {
    xs.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, x)| x).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_answers() {
        assert!(subset_sum(&[-1, -2, 3, 1]));
        assert!(!subset_sum(&[1]));
        assert!(!subset_sum(&[1, 2]));
        assert!(sub_subset_sum(&[1, 2], 2));
        assert!(!sub_subset_sum(&[1, -1], 2));
        assert!(sub_subset_sum(&[1, -1], 1));
        assert!(partition(&[4, 4]));
        assert!(!partition(&[4, 8]));
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let triangle = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(independent_set(&path, 2));
        assert!(!independent_set(&triangle, 2));
        assert!(exact_cover(1, &[[1, 2, 3]]));
        assert!(!exact_cover(2, &[[1, 2, 3], [1, 2, 4]]));
        assert!(exact_cover(2, &[[1, 2, 4], [3, 5, 6]]));
    }
}
