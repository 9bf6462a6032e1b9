//! Reference solvers: marginal-gain greedy for coverage and cut, a
//! reverse-reachable-set greedy for influence maximisation, an exhaustive
//! oracle for small instances, and the solved-subgraph quality ratio.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::{run_indexed, ExecMode};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::problems::{
    bmc_cut_value, ic_spread_exact, mvc_coverage, objective_score, ProblemKind, Solution,
};

fn check_budget(g: &Graph, b: usize) -> Result<()> {
    if b == 0 || b > g.vertex_count() {
        return Err(Error::Budget {
            budget: b,
            vertices: g.vertex_count(),
        });
    }
    Ok(())
}

/// Greedy max vertex cover: b rounds, each adding the vertex covering the
/// most still-uncovered edges. Ties break to the lowest vertex id.
pub fn greedy_mvc(g: &Graph, b: usize) -> Result<Solution> {
    check_budget(g, b)?;
    let n = g.vertex_count();
    let mut covered = vec![false; g.edge_count()];
    let mut chosen = vec![false; n];
    let mut picks = Vec::with_capacity(b);
    for _ in 0..b {
        let mut best: Option<(usize, VertexId)> = None;
        for v in 0..n {
            if chosen[v] {
                continue;
            }
            let gain = g
                .incident_edges(v)
                .iter()
                .filter(|&&e| !covered[e as usize])
                .count();
            if best.map_or(true, |(bg, _)| gain > bg) {
                best = Some((gain, v));
            }
        }
        let (_, v) = best.expect("budget checked against vertex count");
        chosen[v] = true;
        for &e in g.incident_edges(v) {
            covered[e as usize] = true;
        }
        picks.push(v);
    }
    let set: VertexSet = picks.iter().copied().collect();
    let score = mvc_coverage(g, &set)?;
    Ok(Solution {
        vertices: picks,
        score,
        budget: b,
    })
}

/// Marginal cut change from adding `v` to `x`: +1 per incident edge whose
/// other endpoint is outside, -1 per edge into `x` (previously crossing).
fn cut_gain(g: &Graph, x: &[bool], v: VertexId) -> i64 {
    let mut gain = 0i64;
    for &e in g.incident_edges(v) {
        let edge = g.edges()[e as usize];
        let other = if edge.src == v { edge.dst } else { edge.src };
        if x[other] {
            gain -= 1;
        } else {
            gain += 1;
        }
    }
    gain
}

/// Greedy budgeted max cut. The full budget is always spent, even when late
/// marginal gains turn negative, so |X| = b holds.
pub fn greedy_bmc(g: &Graph, b: usize) -> Result<Solution> {
    check_budget(g, b)?;
    let n = g.vertex_count();
    let mut in_x = vec![false; n];
    let mut picks = Vec::with_capacity(b);
    for _ in 0..b {
        let mut best: Option<(i64, VertexId)> = None;
        for v in 0..n {
            if in_x[v] {
                continue;
            }
            let gain = cut_gain(g, &in_x, v);
            if best.map_or(true, |(bg, _)| gain > bg) {
                best = Some((gain, v));
            }
        }
        let (_, v) = best.expect("budget checked against vertex count");
        in_x[v] = true;
        picks.push(v);
    }
    let set: VertexSet = picks.iter().copied().collect();
    let score = bmc_cut_value(g, &set) as f64;
    Ok(Solution {
        vertices: picks,
        score,
        budget: b,
    })
}

/// One reverse-reachable set: vertices that reach a uniformly drawn root
/// through edges kept i.i.d. with their probabilities.
fn rr_set(g: &Graph, rng: &mut ChaCha8Rng) -> Vec<VertexId> {
    let root = rng.gen_range(0..g.vertex_count());
    let mut in_set = vec![false; g.vertex_count()];
    in_set[root] = true;
    let mut frontier = vec![root];
    let mut members = vec![root];
    while let Some(v) = frontier.pop() {
        for &(u, p) in g.in_edges(v) {
            if !in_set[u] && rng.gen::<f64>() < p {
                in_set[u] = true;
                members.push(u);
                frontier.push(u);
            }
        }
    }
    members
}

/// Reverse-reachable-set greedy for influence maximisation with a fixed
/// sample count. Score is covered fraction times |V|, the usual unbiased
/// spread estimate. Deterministic given the seed; RR sets are generated on
/// per-index rng streams so parallel generation matches sequential.
pub fn ris_im(g: &Graph, b: usize, n_rr: usize, seed: u64) -> Result<Solution> {
    ris_im_with(g, b, n_rr, seed, ExecMode::default())
}

pub fn ris_im_with(
    g: &Graph,
    b: usize,
    n_rr: usize,
    seed: u64,
    mode: ExecMode,
) -> Result<Solution> {
    check_budget(g, b)?;
    if n_rr == 0 {
        return Err(Error::Validation("n_rr must be at least 1".into()));
    }
    if !g.directed() {
        return Err(Error::Validation("RIS greedy requires a directed graph".into()));
    }
    let sets = run_indexed(mode, n_rr, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        rr_set(g, &mut rng)
    });

    let n = g.vertex_count();
    let mut coverage = vec![0usize; n];
    let mut membership: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, set) in sets.iter().enumerate() {
        for &v in set {
            coverage[v] += 1;
            membership[v].push(i as u32);
        }
    }
    let mut covered = vec![false; sets.len()];
    let mut covered_total = 0usize;
    let mut picks = Vec::with_capacity(b);
    let mut in_x = vec![false; n];
    for _ in 0..b {
        let mut best = (0usize, usize::MAX);
        for v in 0..n {
            if !in_x[v] && (best.1 == usize::MAX || coverage[v] > best.0) {
                best = (coverage[v], v);
            }
        }
        let v = best.1;
        in_x[v] = true;
        covered_total += coverage[v];
        for &s in &membership[v] {
            if !covered[s as usize] {
                covered[s as usize] = true;
                for &u in &sets[s as usize] {
                    coverage[u] -= 1;
                }
            }
        }
        picks.push(v);
    }
    let score = covered_total as f64 / n_rr as f64 * n as f64;
    Ok(Solution {
        vertices: picks,
        score,
        budget: b,
    })
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Exact argmax over all size-b subsets. Ties keep the lexicographically
/// smallest set. Bounded at one million candidate sets; IM additionally
/// requires the exact-spread edge cap.
pub fn brute_force(problem: ProblemKind, g: &Graph, b: usize) -> Result<Solution> {
    check_budget(g, b)?;
    let n = g.vertex_count();
    if binomial(n, b) > 1e6 {
        return Err(Error::Size(format!(
            "C({n}, {b}) exceeds the brute-force bound"
        )));
    }
    let mut best: Option<(f64, Vec<VertexId>)> = None;
    let mut subset: Vec<VertexId> = (0..b).collect();
    loop {
        let set: VertexSet = subset.iter().copied().collect();
        let score = match problem {
            ProblemKind::Mvc => mvc_coverage(g, &set)?,
            ProblemKind::Bmc => bmc_cut_value(g, &set) as f64,
            ProblemKind::Im { .. } => ic_spread_exact(g, &set)?,
        };
        if best.as_ref().map_or(true, |(bs, _)| score > *bs) {
            best = Some((score, subset.clone()));
        }
        // next lexicographic combination
        let mut i = b;
        loop {
            if i == 0 {
                let (score, vertices) = best.expect("at least one subset evaluated");
                return Ok(Solution {
                    vertices,
                    score,
                    budget: b,
                });
            }
            i -= 1;
            if subset[i] != i + n - b {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..b {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Quality ratio of a subgraph-derived solution against the full-graph one.
/// May exceed 1 when the reference solver is approximate.
pub fn solution_ratio(sub_score: f64, full_score: f64) -> Result<f64> {
    if full_score <= 0.0 {
        return Err(Error::Domain(format!(
            "full-graph score must be positive, got {full_score}"
        )));
    }
    Ok(sub_score / full_score)
}

/// Greedy MVC that samples uniformly among the top-3 marginal-gain
/// vertices each round; the stochastic solver used to fit the rank
/// interpolation pruner.
pub fn greedy_mvc_stochastic(g: &Graph, b: usize, seed: u64) -> Result<Solution> {
    check_budget(g, b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let mut covered = vec![false; g.edge_count()];
    let mut chosen = vec![false; n];
    let mut picks = Vec::with_capacity(b);
    for _ in 0..b {
        let mut gains: Vec<(usize, VertexId)> = (0..n)
            .filter(|&v| !chosen[v])
            .map(|v| {
                let gain = g
                    .incident_edges(v)
                    .iter()
                    .filter(|&&e| !covered[e as usize])
                    .count();
                (gain, v)
            })
            .collect();
        gains.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let top = gains.len().min(3);
        let (_, v) = gains[rng.gen_range(0..top)];
        chosen[v] = true;
        for &e in g.incident_edges(v) {
            covered[e as usize] = true;
        }
        picks.push(v);
    }
    let set: VertexSet = picks.iter().copied().collect();
    let score = mvc_coverage(g, &set)?;
    Ok(Solution {
        vertices: picks,
        score,
        budget: b,
    })
}

/// Greedy BMC sampling each round from a softmax over marginal cut gains;
/// the stochastic solver used to fit the rank interpolation pruner.
pub fn greedy_bmc_stochastic(g: &Graph, b: usize, seed: u64) -> Result<Solution> {
    check_budget(g, b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let mut in_x = vec![false; n];
    let mut picks = Vec::with_capacity(b);
    for _ in 0..b {
        let cands: Vec<VertexId> = (0..n).filter(|&v| !in_x[v]).collect();
        let gains: Vec<f64> = cands.iter().map(|&v| cut_gain(g, &in_x, v) as f64).collect();
        let max_gain = gains.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = gains.iter().map(|&x| (x - max_gain).exp()).collect();
        let total: f64 = weights.iter().sum();
        let mut draw = rng.gen::<f64>() * total;
        let mut idx = cands.len() - 1;
        for (i, &w) in weights.iter().enumerate() {
            if draw < w {
                idx = i;
                break;
            }
            draw -= w;
        }
        let v = cands[idx];
        in_x[v] = true;
        picks.push(v);
    }
    let set: VertexSet = picks.iter().copied().collect();
    let score = bmc_cut_value(g, &set) as f64;
    Ok(Solution {
        vertices: picks,
        score,
        budget: b,
    })
}

/// Runs the problem's stochastic solver variant with the given seed.
pub fn stochastic_solve(problem: ProblemKind, g: &Graph, b: usize, n_rr: usize, seed: u64) -> Result<Solution> {
    match problem {
        ProblemKind::Mvc => greedy_mvc_stochastic(g, b, seed),
        ProblemKind::Bmc => greedy_bmc_stochastic(g, b, seed),
        ProblemKind::Im { .. } => ris_im(g, b, n_rr, seed),
    }
}

/// Runs the problem's deterministic reference solver.
pub fn reference_solve(problem: ProblemKind, g: &Graph, b: usize, n_rr: usize, seed: u64) -> Result<Solution> {
    match problem {
        ProblemKind::Mvc => greedy_mvc(g, b),
        ProblemKind::Bmc => greedy_bmc(g, b),
        ProblemKind::Im { .. } => ris_im(g, b, n_rr, seed),
    }
}

/// Rescores a solution's vertex set on a (possibly different) graph in the
/// same original-id namespace, e.g. a subgraph solution on the host graph.
pub fn rescore_on(
    problem: ProblemKind,
    host: &Graph,
    solved_on: &Graph,
    solution: &Solution,
) -> Result<f64> {
    let mapped: VertexSet = solution
        .vertices
        .iter()
        .map(|&v| {
            host.dense_id(solved_on.original_id(v))
                .ok_or_else(|| Error::Internal("solution vertex missing from host".into()))
        })
        .collect::<Result<_>>()?;
    objective_score(problem, host, &mapped)
}
