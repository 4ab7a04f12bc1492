use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};

use crate::error::Result;
use crate::graph::Graph;
use crate::modularizer::{edge_distance_histogram, q2, Q2};
use crate::topology::{average_edge_distance, DecompositionTopology};

use super::clustering::{clustering, Clustering};
use super::degree::{assortativity_r, degree_ccdf, degree_centrality_corr, edge_density, knn_spectrum};
use super::modularity::{q_levels, QLevels};
use super::paths::{quartile_ampl_from, AllPairs, Monotonicity, PathStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricsOptions {
    /// Topology levels for which split Q values are reported.
    pub q_depth: usize,
    pub monotonicity: Monotonicity,
    /// Run the per-source shortest-path passes on the rayon pool.
    pub parallel: bool,
}

impl Default for MetricsOptions {
    fn default() -> Self {
        MetricsOptions { q_depth: 3, monotonicity: Monotonicity::NonStrict, parallel: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub degrees: Vec<usize>,
    pub q_levels: QLevels,
    /// Relative modularity against a reference graph, when one was given.
    pub q2: Option<Q2>,
    pub aed: Option<f64>,
    pub ed_histogram: BTreeMap<usize, usize>,
    pub clustering: Clustering,
    pub h: Option<f64>,
    pub paths: PathStats,
    pub assortativity_r: Option<f64>,
    pub knn_spectrum: BTreeMap<usize, f64>,
    pub betweenness: Vec<f64>,
    pub degree_centrality_corr: Option<f64>,
    pub quartile_ampl: [Option<f64>; 4],
    pub p_e: Option<f64>,
}

impl MetricsReport {
    pub fn compute(g: &Graph, t: &DecompositionTopology, opts: &MetricsOptions) -> Result<MetricsReport> {
        let all = AllPairs::compute(g, opts.monotonicity, opts.parallel);
        let aed = if g.edge_count() == 0 { None } else { Some(average_edge_distance(g, t)?) };
        Ok(MetricsReport {
            node_count: g.node_count(),
            edge_count: g.edge_count(),
            degrees: g.degree_list().into_vec(),
            q_levels: q_levels(g, t, opts.q_depth)?,
            q2: None,
            aed,
            ed_histogram: edge_distance_histogram(g, t),
            clustering: clustering(g),
            h: all.hierarchy(),
            paths: all.path_stats(),
            assortativity_r: assortativity_r(g),
            knn_spectrum: knn_spectrum(g),
            degree_centrality_corr: degree_centrality_corr(g, &all.betweenness),
            quartile_ampl: quartile_ampl_from(g, &all),
            p_e: edge_density(g),
            betweenness: all.betweenness,
        })
    }

    /// Sets Q₂ of this graph relative to a reference graph's aed.
    pub fn with_reference(mut self, aed_reference: f64) -> MetricsReport {
        self.q2 = Some(q2(aed_reference, self.aed.unwrap_or(0.0)));
        self
    }

    /// Q at the root split, if the topology has one.
    pub fn top_q(&self) -> Option<f64> {
        self.q_levels.values.first().map(|l| l.q)
    }

    /// Flat `key=value` record, one per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn Display| writeln!(out, "{k}={v}").unwrap();
        kv("n", &self.node_count);
        kv("m", &self.edge_count);
        kv("connected", &self.paths.connected);
        for l in &self.q_levels.values {
            kv(&format!("q[level={},lo={},hi={},split={}]", l.level, l.lo, l.hi, l.split_at), &l.q);
        }
        kv("q_truncated", &self.q_levels.truncated);
        kv("q2", &fmt_q2(self.q2));
        kv("aed", &fmt_opt(self.aed));
        kv("clustering_c", &self.clustering.average);
        kv("h", &fmt_opt(self.h));
        kv("diameter", &self.paths.diameter);
        kv("apl", &self.paths.apl);
        kv("median_pl", &self.paths.median);
        kv("assortativity_r", &fmt_opt(self.assortativity_r));
        kv("degree_centrality_corr", &fmt_opt(self.degree_centrality_corr));
        for (i, q) in self.quartile_ampl.iter().enumerate() {
            kv(&format!("quartile_ampl_{}", i + 1), &fmt_opt(*q));
        }
        kv("p_e", &fmt_opt(self.p_e));
        out
    }

    /// Named CSV tables: degree CCDF, C(k), kₙₙ(k), edge-distance
    /// histogram, and per-node values.
    pub fn csv_tables(&self) -> Vec<(&'static str, String)> {
        let mut ccdf = String::from("degree,ccdf\n");
        for (k, p) in degree_ccdf(&self.degrees) {
            writeln!(ccdf, "{k},{p}").unwrap();
        }
        let mut ck = String::from("degree,clustering\n");
        for (k, c) in &self.clustering.spectrum {
            writeln!(ck, "{k},{c}").unwrap();
        }
        let mut knn = String::from("degree,knn\n");
        for (k, v) in &self.knn_spectrum {
            writeln!(knn, "{k},{v}").unwrap();
        }
        let mut hist = String::from("edge_distance,count\n");
        for (d, c) in &self.ed_histogram {
            writeln!(hist, "{d},{c}").unwrap();
        }
        let mut nodes = String::from("node,degree,clustering,betweenness\n");
        for i in 0..self.node_count {
            writeln!(nodes, "{i},{},{},{}", self.degrees[i], self.clustering.per_node[i], self.betweenness[i]).unwrap();
        }
        vec![
            ("degree_ccdf", ccdf),
            ("clustering_spectrum", ck),
            ("knn_spectrum", knn),
            ("ed_histogram", hist),
            ("nodes", nodes),
        ]
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| x.to_string())
}

fn fmt_q2(v: Option<Q2>) -> String {
    match v {
        None => "undefined".into(),
        Some(Q2::Value(x)) => x.to_string(),
        Some(Q2::Degenerate) => "-inf".into(),
    }
}
