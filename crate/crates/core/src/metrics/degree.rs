//! Degree-based measurements: assortativity, nearest-neighbor degree
//! spectrum, degree–centrality correlation, edge density.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// Degree assortativity coefficient over edge endpoint degrees `(j, k)`:
///
/// `r = [<jk> - <(j+k)/2>^2] / [<(j^2+k^2)/2> - <(j+k)/2>^2]`
///
/// with averages taken over edges. `None` for an edgeless graph or when the
/// denominator vanishes (every edge joins equal-degree nodes of one value).
pub fn assortativity_r(g: &Graph) -> Option<f64> {
    let m = g.edge_count() as i128;
    if m == 0 {
        return None;
    }
    let (mut prod, mut sum, mut squares) = (0i128, 0i128, 0i128);
    for e in g.edges() {
        let (j, k) = (g.degree(e.u) as i128, g.degree(e.v) as i128);
        prod += j * k;
        sum += j + k;
        squares += j * j + k * k;
    }
    // numerator and denominator scaled by 4 m^2 to stay in integers
    let num = 4 * m * prod - sum * sum;
    let den = 2 * m * squares - sum * sum;
    if den == 0 {
        return None;
    }
    Some(num as f64 / den as f64)
}

/// Mean over nodes of degree `k` of their mean neighbor degree. Isolated
/// nodes are skipped.
pub fn knn_spectrum(g: &Graph) -> BTreeMap<usize, f64> {
    let mut groups: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for i in 0..g.node_count() {
        let k = g.degree(i);
        if k == 0 {
            continue;
        }
        let mean_nbr = g.neighbors(i).iter().map(|&v| g.degree(v)).sum::<usize>() as f64 / k as f64;
        let entry = groups.entry(k).or_insert((0.0, 0));
        entry.0 += mean_nbr;
        entry.1 += 1;
    }
    groups.into_iter().map(|(k, (s, c))| (k, s / c as f64)).collect()
}

/// Pearson correlation, `None` if either side has (numerically) zero variance.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    let flat = |ss: f64, mean: f64| ss <= 1e-20 * n * mean.abs().max(1.0).powi(2);
    if flat(sxx, mx) || flat(syy, my) {
        return None;
    }
    Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Pearson correlation between node degree and `centrality`.
pub fn degree_centrality_corr(g: &Graph, centrality: &[f64]) -> Option<f64> {
    let degrees: Vec<f64> = (0..g.node_count()).map(|i| g.degree(i) as f64).collect();
    pearson(&degrees, centrality)
}

/// `M / (N (N - 1) / 2)`, `None` below two nodes.
pub fn edge_density(g: &Graph) -> Option<f64> {
    let n = g.node_count();
    (n >= 2).then(|| g.edge_count() as f64 / (n * (n - 1) / 2) as f64)
}

/// Complementary cumulative degree distribution `P(X >= k)` at each
/// observed degree.
pub fn degree_ccdf(degrees: &[usize]) -> Vec<(usize, f64)> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let n = sorted.len() as f64;
    let mut out: Vec<(usize, f64)> = Vec::new();
    for (i, &k) in sorted.iter().enumerate() {
        if out.last().is_none_or(|&(prev, _)| prev != k) {
            out.push((k, (sorted.len() - i) as f64 / n));
        }
    }
    out
}
