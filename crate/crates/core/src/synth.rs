//! Synthetic graph generators for experiments and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::Graph;

/// Barabasi-Albert preferential attachment: starts from a star on m+1
/// vertices, then each new vertex attaches to m distinct existing vertices
/// drawn proportionally to degree.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph> {
    assert!(m >= 1 && n > m, "need n > m >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u64, u64, f64)> = Vec::with_capacity(n * m);
    // endpoint multiset: sampling an entry uniformly is degree-proportional
    let mut endpoints: Vec<u64> = Vec::with_capacity(2 * n * m);
    for leaf in 1..=m as u64 {
        edges.push((0, leaf, 1.0));
        endpoints.push(0);
        endpoints.push(leaf);
    }
    for v in (m + 1)..n {
        let v = v as u64;
        let mut targets: Vec<u64> = Vec::with_capacity(m);
        while targets.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if t != v && !targets.contains(&t) {
                targets.push(t);
            }
        }
        for t in targets {
            edges.push((v, t, 1.0));
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    Graph::from_edges(false, &edges)
}

/// G(n, p) with an appended path over all vertices so the result is
/// connected and every vertex has at least one edge.
pub fn gnp_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u64, u64, f64)> = Vec::new();
    for u in 0..n as u64 {
        for v in (u + 1)..n as u64 {
            if rng.gen::<f64>() < p {
                edges.push((u, v, 1.0));
            }
        }
    }
    for u in 0..(n as u64 - 1) {
        edges.push((u, u + 1, 1.0));
    }
    Graph::from_edges(false, &edges)
}

/// Directed G(n, p) with weights drawn uniformly from [lo, hi], plus a
/// directed cycle so every vertex appears.
pub fn directed_gnp_weighted(n: usize, p: f64, lo: f64, hi: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u64, u64, f64)> = Vec::new();
    for u in 0..n as u64 {
        for v in 0..n as u64 {
            if u != v && rng.gen::<f64>() < p {
                edges.push((u, v, lo + (hi - lo) * rng.gen::<f64>()));
            }
        }
    }
    for u in 0..n as u64 {
        let v = (u + 1) % n as u64;
        edges.push((u, v, lo + (hi - lo) * rng.gen::<f64>()));
    }
    Graph::from_edges(true, &edges)
}
