//! Objective functions for the three budget-constrained problems: max
//! vertex cover, budgeted max cut, and influence maximisation under the
//! independent cascade model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{run_indexed, ExecMode};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum ProblemKind {
    Mvc,
    Bmc,
    /// Influence maximisation: spread is estimated with `n_sim` Monte Carlo
    /// cascades seeded from `seed`.
    Im {
        n_sim: usize,
        seed: u64,
    },
}

impl ProblemKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::Mvc => "mvc",
            ProblemKind::Bmc => "bmc",
            ProblemKind::Im { .. } => "im",
        }
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A budget-b vertex set with its objective score. `vertices` is kept in the
/// order the solver added them, which the rank-interpolation pruner needs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Solution {
    pub vertices: Vec<VertexId>,
    pub score: f64,
    pub budget: usize,
}

impl Solution {
    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

/// Fraction of edges with at least one endpoint in `x`.
pub fn mvc_coverage(g: &Graph, x: &VertexSet) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::Domain("mvc coverage undefined on an empty graph".into()));
    }
    let covered = g
        .edges()
        .iter()
        .filter(|e| x.contains(&e.src) || x.contains(&e.dst))
        .count();
    Ok(covered as f64 / g.edge_count() as f64)
}

/// Number of edges with exactly one endpoint in `x`. Directed edges are
/// treated as undirected for cut counting.
pub fn bmc_cut_value(g: &Graph, x: &VertexSet) -> usize {
    g.edges()
        .iter()
        .filter(|e| x.contains(&e.src) != x.contains(&e.dst))
        .count()
}

fn validate_ic_graph(g: &Graph) -> Result<()> {
    if !g.directed() {
        return Err(Error::Validation(
            "independent cascade requires a directed graph".into(),
        ));
    }
    for e in g.edges() {
        if !(0.0..=1.0).contains(&e.weight) {
            return Err(Error::Validation(format!(
                "edge weight {} outside [0,1]; not a probability",
                e.weight
            )));
        }
    }
    Ok(())
}

fn run_cascade(g: &Graph, x: &VertexSet, rng: &mut ChaCha8Rng) -> usize {
    let mut active = vec![false; g.vertex_count()];
    let mut frontier: Vec<VertexId> = Vec::with_capacity(x.len());
    for &v in x {
        active[v] = true;
        frontier.push(v);
    }
    let mut count = x.len();
    while let Some(u) = frontier.pop() {
        for &(v, p) in g.out_edges(u) {
            if !active[v] && rng.gen::<f64>() < p {
                active[v] = true;
                count += 1;
                frontier.push(v);
            }
        }
    }
    count
}

/// Mean activated-set size over `n_sim` independent cascades. Each cascade
/// uses its own rng stream derived from (seed, sim index), so the estimate
/// is identical under sequential and parallel execution.
pub fn ic_spread_estimate(g: &Graph, x: &VertexSet, n_sim: usize, seed: u64) -> Result<f64> {
    ic_spread_estimate_with(g, x, n_sim, seed, ExecMode::default())
}

pub fn ic_spread_estimate_with(
    g: &Graph,
    x: &VertexSet,
    n_sim: usize,
    seed: u64,
    mode: ExecMode,
) -> Result<f64> {
    if n_sim == 0 {
        return Err(Error::Validation("n_sim must be at least 1".into()));
    }
    validate_ic_graph(g)?;
    let sizes = run_indexed(mode, n_sim, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        run_cascade(g, x, &mut rng) as f64
    });
    Ok(sizes.iter().sum::<f64>() / n_sim as f64)
}

/// Exact expected spread by enumerating all 2^|E| live-edge realizations.
/// A test oracle; refuses graphs with more than 20 edges.
pub fn ic_spread_exact(g: &Graph, x: &VertexSet) -> Result<f64> {
    validate_ic_graph(g)?;
    let m = g.edge_count();
    if m > 20 {
        return Err(Error::Size(format!(
            "exact spread enumeration needs |E| <= 20, got {m}"
        )));
    }
    let n = g.vertex_count();
    let mut expectation = 0.0;
    for mask in 0u32..(1u32 << m) {
        let mut prob = 1.0;
        for (i, e) in g.edges().iter().enumerate() {
            if mask >> i & 1 == 1 {
                prob *= e.weight;
            } else {
                prob *= 1.0 - e.weight;
            }
        }
        if prob == 0.0 {
            continue;
        }
        // BFS over live edges only
        let mut reached = vec![false; n];
        let mut frontier: Vec<VertexId> = x.iter().copied().collect();
        for &v in x {
            reached[v] = true;
        }
        let mut count = x.len();
        while let Some(u) = frontier.pop() {
            for (i, e) in g.edges().iter().enumerate() {
                if e.src == u && mask >> i & 1 == 1 && !reached[e.dst] {
                    reached[e.dst] = true;
                    count += 1;
                    frontier.push(e.dst);
                }
            }
        }
        expectation += prob * count as f64;
    }
    Ok(expectation)
}

/// Rewrites every edge weight to 1/indegree(dst), the weighted-cascade
/// convention for unweighted influence graphs.
pub fn weighted_cascade(g: &Graph) -> Result<Graph> {
    if !g.directed() {
        return Err(Error::Validation(
            "weighted cascade conversion requires a directed graph".into(),
        ));
    }
    let mut indeg = vec![0usize; g.vertex_count()];
    for e in g.edges() {
        indeg[e.dst] += 1;
    }
    let edges: Vec<(u64, u64, f64)> = g
        .edges()
        .iter()
        .map(|e| {
            (
                g.original_id(e.src),
                g.original_id(e.dst),
                1.0 / indeg[e.dst] as f64,
            )
        })
        .collect();
    let vertices: Vec<u64> = g.original_ids().to_vec();
    Graph::from_parts(true, vertices, &edges)
}

/// Evaluates the problem objective for `x` on `g`.
pub fn objective_score(problem: ProblemKind, g: &Graph, x: &VertexSet) -> Result<f64> {
    match problem {
        ProblemKind::Mvc => mvc_coverage(g, x),
        ProblemKind::Bmc => Ok(bmc_cut_value(g, x) as f64),
        ProblemKind::Im { n_sim, seed } => ic_spread_estimate(g, x, n_sim, seed),
    }
}
