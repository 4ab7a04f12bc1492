//! The decomposition topology: a binary tree of recursive halvings of the
//! node-label range, and the edge distances it induces.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// One split of the segment `[lo, hi)` at `mid`, which is also the label of
/// the internal node. The root split is level 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    pub level: usize,
    pub lo: usize,
    pub hi: usize,
    pub mid: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTopology {
    node_count: usize,
    min_module_size: usize,
    internal_paths: Vec<Vec<usize>>,
    splits: Vec<Split>,
    ed_max: usize,
}

impl DecompositionTopology {
    /// Halves every segment of size at least `ts` at `lo + size / 2`, so an
    /// odd segment puts the smaller half on the left.
    pub fn build(n: usize, ts: usize) -> Result<DecompositionTopology> {
        if n == 0 {
            return Err(Error::InvalidSize);
        }
        if ts < 2 {
            return Err(Error::InvalidSpec(format!("minimum module size must be >= 2, got {ts}")));
        }
        let mut internal_paths = vec![Vec::new(); n];
        let mut splits = Vec::new();
        // breadth-first, so every path is extended root first
        let mut queue = VecDeque::from([(1, 0, n)]);
        while let Some((level, lo, hi)) = queue.pop_front() {
            let size = hi - lo;
            if size < ts {
                continue;
            }
            let mid = lo + size / 2;
            splits.push(Split { level, lo, hi, mid });
            for path in &mut internal_paths[lo..hi] {
                path.push(mid);
            }
            queue.push_back((level + 1, lo, mid));
            queue.push_back((level + 1, mid, hi));
        }
        let ed_max = internal_paths.iter().map(|p| p.len().saturating_sub(1)).max().unwrap_or(0);
        Ok(DecompositionTopology { node_count: n, min_module_size: ts, internal_paths, splits, ed_max })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn min_module_size(&self) -> usize {
        self.min_module_size
    }

    /// Split labels of every segment containing `node`, root first.
    pub fn internal_path(&self, node: usize) -> &[usize] {
        &self.internal_paths[node]
    }

    /// All splits in breadth-first order.
    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    pub fn depth(&self) -> usize {
        self.splits.last().map_or(0, |s| s.level)
    }

    /// The longest internal path length, counted in internal edges.
    pub fn ed_max(&self) -> usize {
        self.ed_max
    }

    /// Number of internal edges shared by the two nodes' internal paths.
    /// Callers guarantee `u != v` and both in range.
    #[inline]
    pub(crate) fn ed(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.internal_paths[u], &self.internal_paths[v]);
        let common = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        common.saturating_sub(1)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for node in [u, v] {
            if node >= self.node_count {
                return Err(Error::NodeOutOfRange { node, n: self.node_count });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    pub fn edge_distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_pair(u, v)?;
        Ok(self.ed(u, v))
    }

    /// `ed_max - ed + 1`; at least 1 for every pair.
    pub fn complementary_edge_distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_pair(u, v)?;
        Ok(self.ced(u, v))
    }

    #[inline]
    pub(crate) fn ced(&self, u: usize, v: usize) -> usize {
        self.ed_max - self.ed(u, v) + 1
    }

    /// One line per node: `<label>: <path entries>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (node, path) in self.internal_paths.iter().enumerate() {
            write!(out, "{node}:").unwrap();
            for x in path {
                write!(out, " {x}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Mean edge distance over all edges of `g`.
pub fn average_edge_distance(g: &Graph, t: &DecompositionTopology) -> Result<f64> {
    if g.node_count() != t.node_count() {
        return Err(Error::InvalidSpec(format!("graph has {} nodes but topology {}", g.node_count(), t.node_count())));
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let total: usize = g.edges().iter().map(|e| t.ed(e.u, e.v)).sum();
    Ok(total as f64 / g.edge_count() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{n1, n2};
    use proptest::prelude::*;

    /// Explicit segment tree; `ed` = shared internal ancestors minus one.
    struct SegmentTree {
        // (lo, hi, parent); leaves are segments that were not split
        nodes: Vec<(usize, usize, Option<usize>, bool)>,
    }

    impl SegmentTree {
        fn new(n: usize, ts: usize) -> Self {
            let mut nodes = Vec::new();
            fn rec(
                nodes: &mut Vec<(usize, usize, Option<usize>, bool)>,
                lo: usize,
                hi: usize,
                parent: Option<usize>,
                ts: usize,
            ) {
                let id = nodes.len();
                let internal = hi - lo >= ts;
                nodes.push((lo, hi, parent, internal));
                if internal {
                    let mid = lo + (hi - lo) / 2;
                    rec(nodes, lo, mid, Some(id), ts);
                    rec(nodes, mid, hi, Some(id), ts);
                }
            }
            rec(&mut nodes, 0, n, None, ts);
            SegmentTree { nodes }
        }

        fn internal_ancestors(&self, x: usize) -> Vec<usize> {
            let mut out = Vec::new();
            for (id, &(lo, hi, _, internal)) in self.nodes.iter().enumerate() {
                if internal && lo <= x && x < hi {
                    out.push(id);
                }
            }
            out
        }

        fn ed(&self, u: usize, v: usize) -> usize {
            let a = self.internal_ancestors(u);
            let b = self.internal_ancestors(v);
            let shared = a.iter().filter(|x| b.contains(x)).count();
            shared.saturating_sub(1)
        }
    }

    #[test]
    fn worked_example_n20() {
        let t = DecompositionTopology::build(20, 4).unwrap();
        assert_eq!(t.internal_path(1), &[10, 5, 2]);
        assert_eq!(t.internal_path(4), &[10, 5, 2]);
        assert_eq!(t.internal_path(5), &[10, 5, 7]);
        assert_eq!(t.internal_path(17), &[10, 15, 17]);
        assert_eq!(t.ed_max(), 2);
        assert_eq!(t.edge_distance(1, 4).unwrap(), 2);
        assert_eq!(t.edge_distance(5, 4).unwrap(), 1);
        assert_eq!(t.edge_distance(4, 17).unwrap(), 0);
        assert_eq!(t.complementary_edge_distance(4, 17).unwrap(), 3);
        assert_eq!(t.complementary_edge_distance(1, 4).unwrap(), 1);
    }

    #[test]
    fn below_minimum_size_is_unsplit() {
        let t = DecompositionTopology::build(3, 4).unwrap();
        assert!((0..3).all(|i| t.internal_path(i).is_empty()));
        assert_eq!(t.ed_max(), 0);
        assert_eq!(t.edge_distance(0, 2).unwrap(), 0);
        assert_eq!(t.complementary_edge_distance(0, 2).unwrap(), 1);
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(average_edge_distance(&g, &t).unwrap(), 0.0);
    }

    #[test]
    fn perfect_binary_tree() {
        let t = DecompositionTopology::build(8, 2).unwrap();
        assert_eq!(t.internal_path(0), &[4, 2, 1]);
        assert_eq!(t.internal_path(7), &[4, 6, 7]);
        assert_eq!(t.edge_distance(0, 1).unwrap(), 2);
        assert_eq!(t.edge_distance(0, 4).unwrap(), 0);
        assert_eq!(t.splits().len(), 7);
        assert_eq!(t.depth(), 3);
    }

    #[test]
    fn errors() {
        let t = DecompositionTopology::build(8, 2).unwrap();
        assert!(matches!(t.edge_distance(3, 3), Err(Error::SelfLoop(3))));
        assert!(matches!(t.complementary_edge_distance(3, 3), Err(Error::SelfLoop(3))));
        assert!(DecompositionTopology::build(8, 1).is_err());
        assert!(matches!(average_edge_distance(&Graph::new(8).unwrap(), &t), Err(Error::EmptyGraph)));
    }

    #[test]
    fn aed_of_n1_and_n2_against_oracle() {
        let tree = SegmentTree::new(8, 2);
        let oracle =
            |g: &Graph| g.edges().iter().map(|e| tree.ed(e.u, e.v)).sum::<usize>() as f64 / g.edge_count() as f64;
        // frozen from the oracle: 8/7 and 10/7
        assert_eq!(oracle(&n1()), 8.0 / 7.0);
        assert_eq!(oracle(&n2()), 10.0 / 7.0);
        let t = DecompositionTopology::build(8, 2).unwrap();
        assert!((average_edge_distance(&n1(), &t).unwrap() - 8.0 / 7.0).abs() < 1e-12);
        assert!((average_edge_distance(&n2(), &t).unwrap() - 10.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn n200_shape() {
        let t = DecompositionTopology::build(200, 4).unwrap();
        assert_eq!(t.ed_max(), 6);
        assert!((0..200).all(|i| t.internal_path(i)[0] == 100));
        assert_eq!(t.splits().iter().filter(|s| s.level <= 3).count(), 7);
    }

    #[test]
    fn dump_format() {
        let t = DecompositionTopology::build(4, 4).unwrap();
        assert_eq!(t.dump(), "0: 2\n1: 2\n2: 2\n3: 2\n");
    }

    proptest! {
        #[test]
        fn matches_segment_tree_oracle(n in 1usize..=64, ts in 2usize..=10) {
            let t = DecompositionTopology::build(n, ts).unwrap();
            let tree = SegmentTree::new(n, ts);
            for u in 0..n {
                for v in 0..n {
                    if u == v { continue; }
                    let ed = t.edge_distance(u, v).unwrap();
                    prop_assert_eq!(ed, tree.ed(u, v));
                    prop_assert_eq!(ed, t.edge_distance(v, u).unwrap());
                    prop_assert!(ed <= t.ed_max());
                    let ced = t.complementary_edge_distance(u, v).unwrap();
                    prop_assert!(ced >= 1 && ced <= t.ed_max() + 1);
                }
            }
        }

        #[test]
        fn same_deepest_module_shares_whole_path(n in 4usize..=64, ts in 2usize..=8) {
            prop_assume!(ts <= n);
            let t = DecompositionTopology::build(n, ts).unwrap();
            for u in 0..n {
                for v in 0..n {
                    if u != v && t.internal_path(u) == t.internal_path(v) {
                        prop_assert_eq!(t.ed(u, v), t.internal_path(u).len().saturating_sub(1));
                    }
                }
            }
            // root split separates [0, mid) from [mid, n)
            let mid = t.internal_path(0)[0];
            prop_assert_eq!(t.ed(0, n - 1), 0);
            prop_assert_eq!(mid, n / 2);
        }
    }
}
