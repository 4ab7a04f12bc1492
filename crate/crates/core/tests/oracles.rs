//! Path and degree metrics against brute force: every simple path between
//! every pair is enumerated, and the shortest ones are kept.

use linkswitch::metrics::{assortativity_r, betweenness, hierarchy_h, path_stats, Monotonicity};
use linkswitch::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INSTANCES: usize = 600;

fn random_connected(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let n = rng.random_range(2..=8);
        let p = rng.random_range(0.2..0.9);
        let mut g = Graph::new(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

/// All shortest paths from `s` to `t`, as node sequences.
fn shortest_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(g: &Graph, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        if u == t {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbors(u) {
            if !path.contains(&w) {
                path.push(w);
                walk(g, t, path, out);
                path.pop();
            }
        }
    }
    let mut all = Vec::new();
    walk(g, t, &mut vec![s], &mut all);
    let shortest = all.iter().map(Vec::len).min().unwrap();
    all.retain(|p| p.len() == shortest);
    all
}

fn is_hierarchical(degrees: &[usize], strict: bool) -> bool {
    let up = |a: usize, b: usize| if strict { a < b } else { a <= b };
    (0..degrees.len()).any(|peak| {
        degrees[..=peak].windows(2).all(|w| up(w[0], w[1])) && degrees[peak..].windows(2).all(|w| up(w[1], w[0]))
    })
}

struct Oracle {
    betweenness: Vec<f64>,
    h: [f64; 2],
    diameter: usize,
    apl: f64,
    median: usize,
}

fn oracle(g: &Graph) -> Oracle {
    let n = g.node_count();
    let mut betweenness = vec![0.0; n];
    let (mut total, mut hier, mut hier_strict) = (0usize, 0usize, 0usize);
    let mut lengths = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let paths = shortest_paths(g, s, t);
            if s < t {
                lengths.push(paths[0].len() - 1);
            }
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    betweenness[v] += 1.0 / paths.len() as f64;
                }
                let degrees: Vec<usize> = p.iter().map(|&v| g.degree(v)).collect();
                total += 1;
                hier += is_hierarchical(&degrees, false) as usize;
                hier_strict += is_hierarchical(&degrees, true) as usize;
            }
        }
    }
    lengths.sort_unstable();
    Oracle {
        betweenness,
        h: [hier as f64 / total as f64, hier_strict as f64 / total as f64],
        diameter: *lengths.last().unwrap(),
        apl: lengths.iter().sum::<usize>() as f64 / lengths.len() as f64,
        median: lengths[(lengths.len() - 1) / 2],
    }
}

fn assortativity_oracle(g: &Graph) -> Option<f64> {
    // Pearson correlation over both orientations of every edge
    let pairs: Vec<(f64, f64)> = g
        .edges()
        .iter()
        .flat_map(|e| {
            let (a, b) = (g.degree(e.u) as f64, g.degree(e.v) as f64);
            [(a, b), (b, a)]
        })
        .collect();
    let len = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / len;
    let cov = pairs.iter().map(|p| (p.0 - mx) * (p.1 - mx)).sum::<f64>();
    let var = pairs.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    (var > 1e-12).then(|| cov / var)
}

#[test]
fn path_metrics_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..INSTANCES {
        let g = random_connected(&mut rng);
        let o = oracle(&g);
        let b = betweenness(&g);
        for (x, y) in b.iter().zip(&o.betweenness) {
            assert!((x - y).abs() < 1e-9, "betweenness {b:?} vs {:?} on {:?}", o.betweenness, g.edges());
        }
        assert!((hierarchy_h(&g, Monotonicity::NonStrict).unwrap() - o.h[0]).abs() < 1e-12);
        assert!((hierarchy_h(&g, Monotonicity::Strict).unwrap() - o.h[1]).abs() < 1e-12);
        let ps = path_stats(&g);
        assert_eq!(ps.diameter, o.diameter);
        assert!((ps.apl - o.apl).abs() < 1e-12);
        assert_eq!(ps.median, o.median);
        assert!(ps.connected);
    }
}

#[test]
fn assortativity_matches_pearson_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut defined = 0;
    for _ in 0..INSTANCES {
        let g = random_connected(&mut rng);
        match (assortativity_r(&g), assortativity_oracle(&g)) {
            (Some(r), Some(o)) => {
                assert!((r - o).abs() < 1e-9, "{r} vs {o} on {:?}", g.edges());
                defined += 1;
            }
            (None, None) => {}
            other => panic!("{other:?} on {:?}", g.edges()),
        }
    }
    assert!(defined > INSTANCES / 2);
}
