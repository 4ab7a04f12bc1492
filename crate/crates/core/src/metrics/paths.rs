//! Shortest-path metrics: distance statistics, betweenness, the hierarchy
//! measure H, and degree-quartile median path lengths.
//!
//! Everything is built from one breadth-first pass per source. Passes can
//! run in parallel; their results are folded in source order so the output
//! does not depend on the thread count.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::Graph;

const UNREACHED: u32 = u32::MAX;

/// Whether hierarchical paths allow plateaus of equal degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Monotonicity {
    #[default]
    NonStrict,
    Strict,
}

struct SourcePass {
    dist: Vec<u32>,
    /// Number of shortest paths from the source, summed over targets.
    paths: f64,
    /// How many of those are hierarchical.
    hierarchical: f64,
    /// Brandes dependencies of the source on every node.
    dependency: Vec<f64>,
}

fn source_pass(g: &Graph, s: usize, mono: Monotonicity) -> SourcePass {
    let n = g.node_count();
    let mut dist = vec![UNREACHED; n];
    let mut sigma = vec![0.0f64; n];
    // hierarchical partial paths ending in a rising / falling phase
    let mut rising = vec![0.0f64; n];
    let mut falling = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([s]);
    dist[s] = 0;
    sigma[s] = 1.0;
    rising[s] = 1.0;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        let du = g.degree(u);
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHED {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[u] + 1 {
                sigma[w] += sigma[u];
                let dw = g.degree(w);
                match mono {
                    Monotonicity::NonStrict => {
                        if dw >= du {
                            rising[w] += rising[u];
                        } else {
                            falling[w] += rising[u];
                        }
                        if dw <= du {
                            falling[w] += falling[u];
                        }
                    }
                    Monotonicity::Strict => {
                        if dw > du {
                            rising[w] += rising[u];
                        } else if dw < du {
                            falling[w] += rising[u] + falling[u];
                        }
                    }
                }
            }
        }
    }

    let mut dependency = vec![0.0f64; n];
    for &w in order.iter().rev() {
        for &u in g.neighbors(w) {
            if dist[u] != UNREACHED && dist[u] + 1 == dist[w] {
                dependency[u] += sigma[u] / sigma[w] * (1.0 + dependency[w]);
            }
        }
    }
    dependency[s] = 0.0;

    let (mut paths, mut hierarchical) = (0.0, 0.0);
    for &t in &order[1..] {
        paths += sigma[t];
        hierarchical += rising[t] + falling[t];
    }
    SourcePass { dist, paths, hierarchical, dependency }
}

/// Results of a breadth-first pass from every node.
#[derive(Debug, Clone, PartialEq)]
pub struct AllPairs {
    /// Distance matrix, `UNREACHED` between different components.
    dist: Vec<Vec<u32>>,
    /// Nodes of the largest component, ascending.
    pub component: Vec<usize>,
    pub connected: bool,
    /// Unnormalized betweenness over ordered source–target pairs.
    pub betweenness: Vec<f64>,
    /// Shortest paths and hierarchical shortest paths within the component.
    pub shortest_paths: f64,
    pub hierarchical_paths: f64,
}

impl AllPairs {
    pub fn compute(g: &Graph, mono: Monotonicity, parallel: bool) -> AllPairs {
        let n = g.node_count();
        let passes: Vec<SourcePass> = if parallel {
            (0..n).into_par_iter().map(|s| source_pass(g, s, mono)).collect()
        } else {
            (0..n).map(|s| source_pass(g, s, mono)).collect()
        };
        let component = g.largest_component();
        let mut in_component = vec![false; n];
        for &i in &component {
            in_component[i] = true;
        }
        let mut betweenness = vec![0.0; n];
        let (mut shortest_paths, mut hierarchical_paths) = (0.0, 0.0);
        for (s, pass) in passes.iter().enumerate() {
            for (b, d) in betweenness.iter_mut().zip(&pass.dependency) {
                *b += d;
            }
            if in_component[s] {
                shortest_paths += pass.paths;
                hierarchical_paths += pass.hierarchical;
            }
        }
        AllPairs {
            dist: passes.into_iter().map(|p| p.dist).collect(),
            connected: component.len() == n,
            component,
            betweenness,
            shortest_paths,
            hierarchical_paths,
        }
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<u32> {
        let d = self.dist[u][v];
        (d != UNREACHED).then_some(d)
    }

    /// Fraction of hierarchical shortest paths, `None` without any pair.
    pub fn hierarchy(&self) -> Option<f64> {
        (self.shortest_paths > 0.0).then(|| self.hierarchical_paths / self.shortest_paths)
    }

    /// Distance histogram over unordered pairs of `nodes`.
    fn histogram(&self, nodes: &[usize]) -> Vec<u64> {
        let mut hist = Vec::new();
        for (i, &u) in nodes.iter().enumerate() {
            for &v in &nodes[i + 1..] {
                if let Some(d) = self.distance(u, v) {
                    let d = d as usize;
                    if hist.len() <= d {
                        hist.resize(d + 1, 0);
                    }
                    hist[d] += 1;
                }
            }
        }
        hist
    }

    pub fn path_stats(&self) -> PathStats {
        let hist = self.histogram(&self.component);
        let pairs: u64 = hist.iter().sum();
        let total: u64 = hist.iter().enumerate().map(|(d, &c)| d as u64 * c).sum();
        PathStats {
            diameter: hist.len().saturating_sub(1),
            apl: if pairs > 0 { total as f64 / pairs as f64 } else { 0.0 },
            median: lower_median(&hist).unwrap_or(0),
            connected: self.connected,
        }
    }

    /// Lower median distance among unordered pairs of `nodes`, `None` for
    /// fewer than two nodes.
    pub fn median_distance(&self, nodes: &[usize]) -> Option<usize> {
        lower_median(&self.histogram(nodes))
    }
}

fn lower_median(hist: &[u64]) -> Option<usize> {
    let pairs: u64 = hist.iter().sum();
    if pairs == 0 {
        return None;
    }
    let rank = (pairs - 1) / 2;
    let mut seen = 0;
    for (d, &c) in hist.iter().enumerate() {
        seen += c;
        if seen > rank {
            return Some(d);
        }
    }
    unreachable!("rank below total count")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathStats {
    pub diameter: usize,
    pub apl: f64,
    /// Lower median over unordered pairs.
    pub median: usize,
    /// False when the stats cover only the largest component.
    pub connected: bool,
}

/// Diameter, average and median path length over the largest component.
pub fn path_stats(g: &Graph) -> PathStats {
    AllPairs::compute(g, Monotonicity::NonStrict, false).path_stats()
}

/// Unnormalized betweenness: for each node, the sum over ordered pairs of
/// other nodes of the fraction of shortest paths through it.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    AllPairs::compute(g, Monotonicity::NonStrict, false).betweenness
}

/// Fraction of all shortest paths (within the largest component) whose
/// degree sequence rises and then falls, either part possibly empty.
pub fn hierarchy_h(g: &Graph, mono: Monotonicity) -> Option<f64> {
    AllPairs::compute(g, mono, false).hierarchy()
}

/// Nodes of `nodes` in each degree quartile. Thresholds come from the sorted
/// unique degree values: the minimum of the upper quarter, the median, and
/// the minimum of the lower quarter; the fourth set is every node.
pub fn degree_quartiles(g: &Graph, nodes: &[usize]) -> [Vec<usize>; 4] {
    let mut values: Vec<usize> = nodes.iter().map(|&i| g.degree(i)).collect();
    values.sort_unstable();
    values.dedup();
    if values.is_empty() {
        return Default::default();
    }
    let u = values.len();
    let upper_min = values[3 * u / 4] as f64;
    let median = if u % 2 == 1 { values[u / 2] as f64 } else { (values[u / 2 - 1] + values[u / 2]) as f64 / 2.0 };
    let lower_min = values[0] as f64;
    let at_least =
        |threshold: f64| -> Vec<usize> { nodes.iter().copied().filter(|&i| g.degree(i) as f64 >= threshold).collect() };
    [at_least(upper_min), at_least(median), at_least(lower_min), nodes.to_vec()]
}

/// Median path length within each degree quartile of the largest component.
pub fn quartile_ampl_from(g: &Graph, all: &AllPairs) -> [Option<f64>; 4] {
    degree_quartiles(g, &all.component).map(|set| all.median_distance(&set).map(|d| d as f64))
}

pub fn quartile_ampl(g: &Graph) -> [Option<f64>; 4] {
    quartile_ampl_from(g, &AllPairs::compute(g, Monotonicity::NonStrict, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{complete, cycle, path, star};

    #[test]
    fn small_path_stats() {
        let p = path_stats(&complete(3));
        assert_eq!((p.diameter, p.apl, p.median, p.connected), (1, 1.0, 1, true));
        let p = path_stats(&path(3));
        assert_eq!(p.diameter, 2);
        assert!((p.apl - 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(p.median, 1);
        let p = path_stats(&star(5));
        assert_eq!(p.diameter, 2);
        // 5 center pairs at 1, 10 leaf pairs at 2
        assert!((p.apl - 25.0 / 15.0).abs() < 1e-12);
    }

    #[test]
    fn disconnected_uses_largest_component() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (3, 4)]).unwrap();
        let p = path_stats(&g);
        assert!(!p.connected);
        assert_eq!(p.diameter, 2);
        assert!((p.apl - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn betweenness_small() {
        assert_eq!(betweenness(&path(3)), vec![0.0, 2.0, 0.0]);
        let b = betweenness(&cycle(6));
        assert!(b.iter().all(|&x| (x - b[0]).abs() < 1e-12));
        assert_eq!(betweenness(&star(3)), vec![6.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn hierarchy_examples() {
        assert_eq!(hierarchy_h(&star(3), Monotonicity::NonStrict), Some(1.0));
        assert_eq!(hierarchy_h(&path(2), Monotonicity::NonStrict), Some(1.0));
        assert_eq!(hierarchy_h(&path(2), Monotonicity::Strict), Some(0.0));
        assert_eq!(hierarchy_h(&Graph::new(1).unwrap(), Monotonicity::NonStrict), None);
        // path with a degree valley in the middle: 0-1-2-3-4 plus leaves at 1 and 3
        // degrees 1,3,2,3,1 ... ; the path 5-1-2-3-6 dips at node 2
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (3, 6)]).unwrap();
        assert!(hierarchy_h(&g, Monotonicity::NonStrict).unwrap() < 1.0);
    }

    #[test]
    fn quartiles() {
        let q = quartile_ampl(&cycle(6));
        assert!(q.iter().all(|&x| x == q[0] && x.is_some()));
        let q = quartile_ampl(&star(9));
        assert_eq!(q[0], None);
        assert_eq!(q[3], Some(2.0));
        let sets = degree_quartiles(&star(9), &(0..10).collect::<Vec<_>>());
        assert_eq!(sets[0], vec![0]);
        assert_eq!(sets[2].len(), 10);
    }

    #[test]
    fn parallel_is_bit_identical() {
        let mut g = Graph::new(40).unwrap();
        for i in 0..40 {
            for j in [1, 3, 7] {
                let _ = g.add_edge(i, (i * 5 + j) % 40);
            }
        }
        let a = AllPairs::compute(&g, Monotonicity::NonStrict, false);
        let b = AllPairs::compute(&g, Monotonicity::NonStrict, true);
        assert_eq!(a, b);
    }
}
