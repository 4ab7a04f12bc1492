//! Split modularity Q of a prescribed bisection.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::topology::DecompositionTopology;

fn check_range(g: &Graph, lo: usize, hi: usize, split_at: usize) -> Result<()> {
    if hi > g.node_count() {
        return Err(Error::NodeOutOfRange { node: hi - 1, n: g.node_count() });
    }
    if !(lo < split_at && split_at < hi) {
        return Err(Error::InvalidSplit { lo, hi, split_at });
    }
    Ok(())
}

/// Induced degrees of the members `lo..hi`.
fn induced_degrees(g: &Graph, lo: usize, hi: usize) -> Vec<usize> {
    (lo..hi).map(|u| g.neighbors(u).iter().filter(|&&v| (lo..hi).contains(&v)).count()).collect()
}

/// The modularity matrix `B_ij = A_ij - k_i k_j / 2m` of the subgraph
/// induced by `lo..hi`, indexed from `lo`. All zeros when the subgraph has
/// no edges.
pub fn modularity_matrix(g: &Graph, lo: usize, hi: usize) -> Vec<Vec<f64>> {
    let k = induced_degrees(g, lo, hi);
    let two_m: usize = k.iter().sum();
    let size = hi - lo;
    let mut b = vec![vec![0.0; size]; size];
    if two_m == 0 {
        return b;
    }
    for i in 0..size {
        for j in 0..size {
            let a = if g.has_edge(lo + i, lo + j) { 1.0 } else { 0.0 };
            b[i][j] = a - (k[i] * k[j]) as f64 / two_m as f64;
        }
    }
    b
}

/// Q of the bisection `[lo, split_at) | [split_at, hi)` on the induced
/// subgraph, normalized by `2m`.
pub fn q_split(g: &Graph, lo: usize, hi: usize, split_at: usize) -> Result<f64> {
    check_range(g, lo, hi, split_at)?;
    let (mut same, mut cross) = (0i64, 0i64);
    let (mut k_left, mut k_right) = (0i64, 0i64);
    for u in lo..hi {
        for &v in g.neighbors(u) {
            if !(lo..hi).contains(&v) {
                continue;
            }
            let left_u = u < split_at;
            if left_u {
                k_left += 1;
            } else {
                k_right += 1;
            }
            if u < v {
                if left_u == (v < split_at) {
                    same += 1;
                } else {
                    cross += 1;
                }
            }
        }
    }
    let two_m = (k_left + k_right) as f64;
    if two_m == 0.0 {
        return Ok(0.0);
    }
    let imbalance = (k_left - k_right) as f64;
    Ok((2.0 * (same - cross) as f64 - imbalance * imbalance / two_m) / two_m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelQ {
    pub level: usize,
    pub lo: usize,
    pub hi: usize,
    pub split_at: usize,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QLevels {
    /// One value per split, breadth-first.
    pub values: Vec<LevelQ>,
    /// Set when `depth` exceeded the topology's depth.
    pub truncated: bool,
}

/// Q at every split of the top `depth` levels of `t`.
pub fn q_levels(g: &Graph, t: &DecompositionTopology, depth: usize) -> Result<QLevels> {
    if depth == 0 {
        return Err(Error::InvalidSpec("q depth must be at least 1".into()));
    }
    if g.node_count() != t.node_count() {
        return Err(Error::InvalidSpec("graph and topology sizes differ".into()));
    }
    let values = t
        .splits()
        .iter()
        .filter(|s| s.level <= depth)
        .map(|s| Ok(LevelQ { level: s.level, lo: s.lo, hi: s.hi, split_at: s.mid, q: q_split(g, s.lo, s.hi, s.mid)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(QLevels { values, truncated: depth > t.depth() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{n1, n2};
    use proptest::prelude::*;

    /// `s^T B s / 2m` from the explicit matrix.
    fn q_from_matrix(g: &Graph, lo: usize, hi: usize, split_at: usize) -> f64 {
        let b = modularity_matrix(g, lo, hi);
        let s: Vec<f64> = (lo..hi).map(|i| if i < split_at { 1.0 } else { -1.0 }).collect();
        let two_m = induced_degrees(g, lo, hi).iter().sum::<usize>() as f64;
        if two_m == 0.0 {
            return 0.0;
        }
        let mut total = 0.0;
        for i in 0..s.len() {
            for j in 0..s.len() {
                total += b[i][j] * s[i] * s[j];
            }
        }
        total / two_m
    }

    #[test]
    fn n1_and_n2_top_level() {
        assert!((q_split(&n1(), 0, 8, 4).unwrap() - 0.714286).abs() < 1e-6);
        assert!((q_split(&n2(), 0, 8, 4).unwrap() - 0.714286).abs() < 1e-6);
        assert!((q_from_matrix(&n1(), 0, 8, 4) - 10.0 / 14.0).abs() < 1e-12);
    }

    #[test]
    fn perfect_division_scores_one() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!((q_split(&g, 0, 6, 3).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_and_empty_splits() {
        let g = n1();
        assert!(matches!(q_split(&g, 0, 8, 0), Err(Error::InvalidSplit { .. })));
        assert!(matches!(q_split(&g, 0, 8, 8), Err(Error::InvalidSplit { .. })));
        assert!(matches!(q_split(&g, 3, 3, 3), Err(Error::InvalidSplit { .. })));
        // nodes 1,2,3 induce no edges
        assert_eq!(q_split(&g, 1, 4, 2).unwrap(), 0.0);
    }

    #[test]
    fn levels_on_binary_topology() {
        let t = DecompositionTopology::build(8, 2).unwrap();
        let levels = q_levels(&n1(), &t, 3).unwrap();
        assert_eq!(levels.values.len(), 7);
        assert!(!levels.truncated);
        assert_eq!((levels.values[1].lo, levels.values[1].hi, levels.values[1].split_at), (0, 4, 2));
        let deeper = q_levels(&n1(), &t, 5).unwrap();
        assert!(deeper.truncated);
        assert_eq!(deeper.values.len(), 7);
        assert_eq!(q_levels(&n1(), &t, 1).unwrap().values.len(), 1);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (4usize..14).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
                let mut g = Graph::new(n).unwrap();
                for (a, b) in pairs {
                    let _ = g.add_edge(a, b);
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn closed_form_matches_matrix(g in arb_graph(), a in 0usize..100, b in 0usize..100) {
            let n = g.node_count();
            let lo = a % (n - 1);
            let hi = lo + 2 + b % (n - lo - 1);
            let split = lo + 1 + a % (hi - lo - 1);
            let q = q_split(&g, lo, hi, split).unwrap();
            prop_assert!((q - q_from_matrix(&g, lo, hi, split)).abs() < 1e-9);
        }

        #[test]
        fn matrix_rows_and_columns_sum_to_zero(g in arb_graph()) {
            let b = modularity_matrix(&g, 0, g.node_count());
            for i in 0..b.len() {
                let row: f64 = b[i].iter().sum();
                let col: f64 = b.iter().map(|r| r[i]).sum();
                prop_assert!(row.abs() < 1e-9 && col.abs() < 1e-9);
            }
        }

        #[test]
        fn invariant_under_side_preserving_relabeling(g in arb_graph(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let n = g.node_count();
            let split = n / 2;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut left: Vec<usize> = (0..split).collect();
            let mut right: Vec<usize> = (split..n).collect();
            left.shuffle(&mut rng);
            right.shuffle(&mut rng);
            let perm: Vec<usize> = left.into_iter().chain(right).collect();
            let h = Graph::from_edges(n, g.edges().iter().map(|e| (perm[e.u], perm[e.v]))).unwrap();
            let diff = q_split(&g, 0, n, split).unwrap() - q_split(&h, 0, n, split).unwrap();
            prop_assert!(diff.abs() < 1e-12);
        }
    }
}
