use std::collections::BTreeMap;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    /// C_i per node; 0 for nodes of degree below 2.
    pub per_node: Vec<f64>,
    /// Mean of C_i over all nodes.
    pub average: f64,
    /// Mean C_i per degree value.
    pub spectrum: BTreeMap<usize, f64>,
}

fn common_neighbors(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Local clustering `C_i = 2 E_i / (k_i (k_i - 1))`, where `E_i` counts
/// links among the neighbors of `i`.
pub fn local_clustering(g: &Graph, node: usize) -> f64 {
    let nbrs = g.neighbors(node);
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let twice_links: usize = nbrs.iter().map(|&v| common_neighbors(nbrs, g.neighbors(v))).sum();
    twice_links as f64 / (k * (k - 1)) as f64
}

pub fn clustering(g: &Graph) -> Clustering {
    let per_node: Vec<f64> = (0..g.node_count()).map(|i| local_clustering(g, i)).collect();
    let average = per_node.iter().sum::<f64>() / g.node_count() as f64;
    let mut groups: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for (i, &c) in per_node.iter().enumerate() {
        let entry = groups.entry(g.degree(i)).or_insert((0.0, 0));
        entry.0 += c;
        entry.1 += 1;
    }
    let spectrum = groups.into_iter().map(|(k, (sum, count))| (k, sum / count as f64)).collect();
    Clustering { per_node, average, spectrum }
}
