//! Simple undirected graphs and the double-edge switch.

use std::collections::VecDeque;
use std::fmt;

use crate::degree_sequence::DegreeList;
use crate::error::{Error, Result};

/// An undirected edge stored canonically with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Canonicalizes the endpoint order. Returns `None` for a loop.
    pub fn new(a: usize, b: usize) -> Option<Edge> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn contains(&self, node: usize) -> bool {
        self.u == node || self.v == node
    }

    /// The endpoint opposite to `node`, which must be one of the two.
    pub fn other(&self, node: usize) -> usize {
        if self.u == node {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// How the four endpoints of a pair `(p, q)`, `(r, s)` are rewired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwitchPattern {
    /// `(p, s)` and `(q, r)`.
    Cross,
    /// `(p, r)` and `(q, s)`.
    Parallel,
}

impl SwitchPattern {
    /// Raw endpoint pairs of the two replacement edges. Either may be a loop.
    pub fn replacements(self, e1: Edge, e2: Edge) -> [(usize, usize); 2] {
        let (p, q, r, s) = (e1.u, e1.v, e2.u, e2.v);
        match self {
            SwitchPattern::Cross => [(p, s), (q, r)],
            SwitchPattern::Parallel => [(p, r), (q, s)],
        }
    }
}

/// A simple undirected graph on nodes `0..n`.
///
/// Neighbor lists are kept sorted, and so is the canonical edge list, so
/// iteration order depends only on the edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidSize);
        }
        Ok(Graph { adjacency: vec![Vec::new(); n], edges: Vec::new() })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges in ascending `(u, v)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.node_count() && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.node_count() {
            Err(Error::NodeOutOfRange { node, n: self.node_count() })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<Edge> {
        self.check_node(a)?;
        self.check_node(b)?;
        let e = Edge::new(a, b).ok_or(Error::SelfLoop(a))?;
        let pos = match self.edges.binary_search(&e) {
            Ok(_) => return Err(Error::DuplicateEdge(e)),
            Err(pos) => pos,
        };
        self.edges.insert(pos, e);
        insert_sorted(&mut self.adjacency[e.u], e.v);
        insert_sorted(&mut self.adjacency[e.v], e.u);
        Ok(e)
    }

    pub fn remove_edge(&mut self, e: Edge) -> Result<()> {
        let pos = self.edges.binary_search(&e).map_err(|_| Error::MissingEdge(e))?;
        self.edges.remove(pos);
        remove_sorted(&mut self.adjacency[e.u], e.v);
        remove_sorted(&mut self.adjacency[e.v], e.u);
        Ok(())
    }

    /// Degrees in ascending node-label order.
    pub fn degree_list(&self) -> DegreeList {
        DegreeList::new(self.adjacency.iter().map(Vec::len).collect())
    }

    /// Checks whether `pattern` applied to `e1`, `e2` would give two valid
    /// new edges: no loop, and neither already present in the graph.
    pub fn switch_targets(&self, e1: Edge, e2: Edge, pattern: SwitchPattern) -> Result<(Edge, Edge)> {
        if e1 == e2 {
            return Err(Error::SameEdge(e1));
        }
        for e in [e1, e2] {
            if !self.contains(e) {
                return Err(Error::MissingEdge(e));
            }
        }
        let [(a, b), (c, d)] = pattern.replacements(e1, e2);
        let f1 = Edge::new(a, b).ok_or(Error::SelfLoop(a))?;
        let f2 = Edge::new(c, d).ok_or(Error::SelfLoop(c))?;
        for f in [f1, f2] {
            if self.contains(f) {
                return Err(Error::DuplicateEdge(f));
            }
        }
        Ok((f1, f2))
    }

    /// Replaces `e1` and `e2` by the two edges of `pattern`. On any error the
    /// graph is left untouched. Returns the inserted edges.
    pub fn switch_edges(&mut self, e1: Edge, e2: Edge, pattern: SwitchPattern) -> Result<(Edge, Edge)> {
        let (f1, f2) = self.switch_targets(e1, e2, pattern)?;
        self.apply_switch(e1, e2, f1, f2);
        Ok((f1, f2))
    }

    /// Applies a switch already validated by [`Graph::switch_targets`].
    pub(crate) fn apply_switch(&mut self, e1: Edge, e2: Edge, f1: Edge, f2: Edge) {
        for e in [e1, e2] {
            self.remove_edge(e).expect("validated switch removes present edges");
        }
        for f in [f1, f2] {
            self.add_edge(f.u, f.v).expect("validated switch adds absent edges");
        }
    }

    /// True iff a breadth-first search from node 0 reaches every node.
    pub fn is_connected(&self) -> bool {
        self.component_of(0).len() == self.node_count()
    }

    /// Nodes reachable from `start`, in ascending order.
    pub fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        (0..self.node_count()).filter(|&i| seen[i]).collect()
    }

    /// The largest connected component, ties going to the one holding the
    /// smallest label.
    pub fn largest_component(&self) -> Vec<usize> {
        let mut assigned = vec![false; self.node_count()];
        let mut best: Vec<usize> = Vec::new();
        for start in 0..self.node_count() {
            if assigned[start] {
                continue;
            }
            let comp = self.component_of(start);
            for &i in &comp {
                assigned[i] = true;
            }
            if comp.len() > best.len() {
                best = comp;
            }
        }
        best
    }

    /// Verifies the simple-graph invariants from scratch.
    pub fn is_valid(&self) -> bool {
        let n = self.node_count();
        let mut half_degree_sum = 0;
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in nbrs {
                if v == u || v >= n || self.adjacency[v].binary_search(&u).is_err() {
                    return false;
                }
            }
            half_degree_sum += nbrs.len();
        }
        half_degree_sum == 2 * self.edges.len()
            && self.edges.windows(2).all(|w| w[0] < w[1])
            && self.edges.iter().all(|e| e.u < e.v && self.adjacency[e.u].binary_search(&e.v).is_ok())
    }
}

fn insert_sorted(list: &mut Vec<usize>, x: usize) {
    if let Err(pos) = list.binary_search(&x) {
        list.insert(pos, x);
    }
}

fn remove_sorted(list: &mut Vec<usize>, x: usize) {
    if let Ok(pos) = list.binary_search(&x) {
        list.remove(pos);
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn n1() -> Graph {
        Graph::from_edges(8, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 6), (4, 5), (4, 7)]).unwrap()
    }

    pub fn n2() -> Graph {
        Graph::from_edges(8, [(0, 1), (0, 2), (0, 4), (2, 3), (4, 5), (4, 6), (6, 7)]).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }
}
