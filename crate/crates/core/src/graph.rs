//! Immutable graph storage with dense vertex ids, SNAP edge-list ingestion,
//! train/test edge splitting, and the raw vertex features fed to the encoder.

use std::collections::{BTreeSet, HashMap};
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problems::ProblemKind;

/// Dense vertex index, `0..n` after remapping.
pub type VertexId = usize;

/// Ordered vertex set; iteration is always ascending, which keeps every
/// loop over a set deterministic.
pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: f64,
}

/// Immutable weighted graph. Undirected graphs store each edge once;
/// directed graphs keep separate in/out adjacency. Vertices are dense
/// `0..n` with the original ids kept in a side table.
#[derive(Debug, Clone)]
pub struct Graph {
    directed: bool,
    edges: Vec<Edge>,
    /// Sorted, duplicate-free union of in- and out-neighbours.
    nbrs: Vec<Vec<VertexId>>,
    out: Vec<Vec<(VertexId, f64)>>,
    ins: Vec<Vec<(VertexId, f64)>>,
    /// Indices into `edges` touching each vertex as either endpoint.
    incident: Vec<Vec<u32>>,
    original_ids: Vec<u64>,
    id_map: HashMap<u64, VertexId>,
}

impl Graph {
    /// Builds a graph from explicit vertex and edge lists in the original id
    /// namespace. Vertex order fixes the dense remap. Self-loops are dropped;
    /// duplicate edges keep the first weight seen.
    pub fn from_parts(
        directed: bool,
        vertices: Vec<u64>,
        edge_list: &[(u64, u64, f64)],
    ) -> Result<Self> {
        let mut id_map = HashMap::with_capacity(vertices.len());
        for (dense, &orig) in vertices.iter().enumerate() {
            if id_map.insert(orig, dense).is_some() {
                return Err(Error::Validation(format!("duplicate vertex id {orig}")));
            }
        }
        let n = vertices.len();
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut seen: HashMap<(VertexId, VertexId), ()> = HashMap::with_capacity(edge_list.len());
        for &(u, v, w) in edge_list {
            if w < 0.0 || !w.is_finite() {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) has invalid weight {w}"
                )));
            }
            let (su, sv) = match (id_map.get(&u), id_map.get(&v)) {
                (Some(&su), Some(&sv)) => (su, sv),
                _ => {
                    return Err(Error::Validation(format!(
                        "edge ({u}, {v}) references a vertex outside the vertex list"
                    )))
                }
            };
            if su == sv {
                continue;
            }
            let key = if directed {
                (su, sv)
            } else {
                (su.min(sv), su.max(sv))
            };
            if seen.insert(key, ()).is_none() {
                edges.push(Edge {
                    src: su,
                    dst: sv,
                    weight: w,
                });
            }
        }

        let mut out = vec![Vec::new(); n];
        let mut ins = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push((e.dst, e.weight));
            ins[e.dst].push((e.src, e.weight));
            if !directed {
                out[e.dst].push((e.src, e.weight));
                ins[e.src].push((e.dst, e.weight));
            }
            incident[e.src].push(i as u32);
            incident[e.dst].push(i as u32);
        }
        let nbrs = (0..n)
            .map(|v| {
                let mut set: Vec<VertexId> = out[v]
                    .iter()
                    .map(|&(u, _)| u)
                    .chain(ins[v].iter().map(|&(u, _)| u))
                    .collect();
                set.sort_unstable();
                set.dedup();
                set
            })
            .collect();

        Ok(Graph {
            directed,
            edges,
            nbrs,
            out,
            ins,
            incident,
            original_ids: vertices,
            id_map,
        })
    }

    /// Builds a graph from edges alone; the vertex set is the endpoints in
    /// first-seen order.
    pub fn from_edges(directed: bool, edge_list: &[(u64, u64, f64)]) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut seen = HashMap::new();
        for &(u, v, _) in edge_list {
            for orig in [u, v] {
                if !seen.contains_key(&orig) {
                    seen.insert(orig, ());
                    vertices.push(orig);
                }
            }
        }
        Self::from_parts(directed, vertices, edge_list)
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.original_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn original_id(&self, v: VertexId) -> u64 {
        self.original_ids[v]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    pub fn dense_id(&self, original: u64) -> Option<VertexId> {
        self.id_map.get(&original).copied()
    }

    /// Sorted union of in- and out-neighbours.
    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId]> {
        self.nbrs
            .get(v)
            .map(|n| n.as_slice())
            .ok_or(Error::UnknownVertex(v))
    }

    /// Number of distinct neighbours (in/out union).
    pub fn degree(&self, v: VertexId) -> usize {
        self.nbrs[v].len()
    }

    /// Out-edges for directed graphs; all incident edges for undirected.
    pub fn out_edges(&self, v: VertexId) -> &[(VertexId, f64)] {
        &self.out[v]
    }

    /// In-edges for directed graphs; all incident edges for undirected.
    pub fn in_edges(&self, v: VertexId) -> &[(VertexId, f64)] {
        &self.ins[v]
    }

    /// Indices into `edges()` of edges with `v` as an endpoint.
    pub fn incident_edges(&self, v: VertexId) -> &[u32] {
        &self.incident[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut r: Vec<VertexId> = self.ins[v].iter().map(|&(u, _)| u).collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// Sum of outgoing edge weights (all incident weights when undirected).
    pub fn out_weight(&self, v: VertexId) -> f64 {
        self.out[v].iter().map(|&(_, w)| w).sum()
    }

    /// Writes `src dst weight` lines in the original id namespace.
    pub fn save_edge_list(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(std::fs::File::create(path)?);
        for e in &self.edges {
            writeln!(
                w,
                "{} {} {}",
                self.original_ids[e.src], self.original_ids[e.dst], e.weight
            )?;
        }
        Ok(())
    }

    /// Writes the original-id -> dense-id sidecar as JSON.
    pub fn save_id_map(&self, path: &Path) -> Result<()> {
        let map: std::collections::BTreeMap<String, usize> = self
            .original_ids
            .iter()
            .enumerate()
            .map(|(dense, &orig)| (orig.to_string(), dense))
            .collect();
        let file = BufWriter::new(std::fs::File::create(path)?);
        serde_json::to_writer_pretty(file, &map)?;
        Ok(())
    }
}

/// Loads a SNAP-style edge list: '#' comment lines, whitespace-separated
/// integer ids, optional third weight column. Unweighted edges get weight 1.
pub fn load_edge_list(path: &Path, directed: bool, weighted: bool) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected 'u v' or 'u v w', got {} fields", fields.len()),
            });
        }
        let u: u64 = fields[0].parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("bad vertex id '{}'", fields[0]),
        })?;
        let v: u64 = fields[1].parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("bad vertex id '{}'", fields[1]),
        })?;
        let w = if weighted && fields.len() == 3 {
            let w: f64 = fields[2].parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad weight '{}'", fields[2]),
            })?;
            if w < 0.0 {
                return Err(Error::Validation(format!(
                    "negative weight {w} at line {lineno}"
                )));
            }
            w
        } else {
            1.0
        };
        edges.push((u, v, w));
    }
    Graph::from_edges(directed, &edges)
}

/// Assigns each edge to train or test by an independent Bernoulli draw.
/// Each side's vertex set is exactly the endpoints of its edges.
pub fn split_edges(g: &Graph, train_fraction: f64, seed: u64) -> Result<(Graph, Graph)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::Validation(format!(
            "train fraction must be in (0,1), got {train_fraction}"
        )));
    }
    if g.edge_count() == 0 {
        return Err(Error::Domain("cannot split an empty graph".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for e in g.edges() {
        let triple = (
            g.original_id(e.src),
            g.original_id(e.dst),
            e.weight,
        );
        if rng.gen::<f64>() < train_fraction {
            train.push(triple);
        } else {
            test.push(triple);
        }
    }
    if train.is_empty() {
        return Err(Error::EmptySplit { side: "train" });
    }
    if test.is_empty() {
        return Err(Error::EmptySplit { side: "test" });
    }
    Ok((
        Graph::from_edges(g.directed(), &train)?,
        Graph::from_edges(g.directed(), &test)?,
    ))
}

/// Subgraph induced on `kept`: kept vertices plus every edge with both
/// endpoints kept. This is ordinary vertex induction, not the one-hop
/// expansion used by the navigation environment.
pub fn vertex_induced(g: &Graph, kept: &VertexSet) -> Result<Graph> {
    if kept.is_empty() {
        return Err(Error::EmptyPrune);
    }
    let vertices: Vec<u64> = kept.iter().map(|&v| g.original_id(v)).collect();
    let edges: Vec<(u64, u64, f64)> = g
        .edges()
        .iter()
        .filter(|e| kept.contains(&e.src) && kept.contains(&e.dst))
        .map(|e| (g.original_id(e.src), g.original_id(e.dst), e.weight))
        .collect();
    Graph::from_parts(g.directed(), vertices, &edges)
}

/// Power iteration for eigenvector centrality on the underlying undirected
/// graph. Uses the shifted update x <- (A + I) x, which shares eigenvectors
/// with A but cannot oscillate on bipartite components. Returns the unit
/// 2-norm score vector and whether the iteration reached `tol` before
/// `max_iter`.
pub fn eigenvector_centrality(g: &Graph, tol: f64, max_iter: usize) -> (Vec<f64>, bool) {
    let n = g.vertex_count();
    if n == 0 {
        return (Vec::new(), true);
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    for _ in 0..max_iter {
        for v in 0..n {
            let mut acc = x[v];
            for &u in &g.nbrs[v] {
                acc += x[u];
            }
            next[v] = acc;
        }
        let norm = next.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            return (x, true);
        }
        for a in next.iter_mut() {
            *a /= norm;
        }
        let delta = x
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        x.copy_from_slice(&next);
        if delta <= tol {
            return (x, true);
        }
    }
    (x, false)
}

#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct ColumnStats {
    pub min: f64,
    pub max: f64,
}

/// Per-vertex raw feature rows: min-max normalised neighbour count and
/// eigenvector centrality, plus normalised outgoing edge weight for IM.
/// Stats are recorded so the train-graph scaling can be reused on test
/// graphs.
#[derive(Debug, Clone)]
pub struct FeatureTable {
    n: usize,
    ncols: usize,
    values: Vec<f64>,
    pub stats: Vec<ColumnStats>,
}

impl FeatureTable {
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn row(&self, v: VertexId) -> &[f64] {
        &self.values[v * self.ncols..(v + 1) * self.ncols]
    }

    /// Row-major feature rows for the vertices of `sub`, in `sub`'s dense
    /// order. Both graphs must share the original id namespace.
    pub fn gather(&self, host: &Graph, sub: &Graph) -> Result<Vec<f64>> {
        let mut rows = Vec::with_capacity(sub.vertex_count() * self.ncols);
        for v in 0..sub.vertex_count() {
            let orig = sub.original_id(v);
            let host_v = host
                .dense_id(orig)
                .ok_or(Error::Internal(format!("vertex {orig} not in host graph")))?;
            rows.extend_from_slice(self.row(host_v));
        }
        Ok(rows)
    }
}

fn raw_feature_columns(g: &Graph, problem: ProblemKind) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let degrees: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
    let (eig, converged) = eigenvector_centrality(g, 1e-10, 1000);
    if !converged {
        log::warn!("eigenvector centrality hit the iteration cap; using last iterate");
    }
    let mut cols = vec![degrees, eig];
    if matches!(problem, ProblemKind::Im { .. }) {
        cols.push((0..n).map(|v| g.out_weight(v)).collect());
    }
    cols
}

/// Fits min-max stats on `g` and returns the normalised table. A constant
/// column is set to zero and flagged with a warning.
pub fn compute_features(g: &Graph, problem: ProblemKind) -> FeatureTable {
    let cols = raw_feature_columns(g, problem);
    let stats: Vec<ColumnStats> = cols
        .iter()
        .map(|col| {
            let min = col.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            ColumnStats { min, max }
        })
        .collect();
    normalise(g, cols, stats)
}

/// Normalises `g`'s raw features with previously fitted stats (train-graph
/// scales reused on the test graph).
pub fn compute_features_with_stats(
    g: &Graph,
    problem: ProblemKind,
    stats: &[ColumnStats],
) -> Result<FeatureTable> {
    let cols = raw_feature_columns(g, problem);
    if cols.len() != stats.len() {
        return Err(Error::DimMismatch {
            expected: cols.len(),
            got: stats.len(),
        });
    }
    Ok(normalise(g, cols, stats.to_vec()))
}

fn normalise(g: &Graph, cols: Vec<Vec<f64>>, stats: Vec<ColumnStats>) -> FeatureTable {
    let n = g.vertex_count();
    let ncols = cols.len();
    let mut values = vec![0.0; n * ncols];
    for (c, (col, st)) in cols.iter().zip(stats.iter()).enumerate() {
        let range = st.max - st.min;
        if range <= 0.0 {
            log::warn!("feature column {c} is constant; set to zero");
            continue;
        }
        for (v, &raw) in col.iter().enumerate() {
            values[v * ncols + c] = (raw - st.min) / range;
        }
    }
    FeatureTable {
        n,
        ncols,
        values,
        stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    pub(crate) fn path3() -> Graph {
        Graph::from_edges(false, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn load_minimal_path() {
        let f = write_tmp("0 1\n1 2");
        let g = load_edge_list(f.path(), false, false).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn load_dedups_and_skips_comments() {
        let f = write_tmp("# c\n0 1\n0 1");
        let g = load_edge_list(f.path(), false, false).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn load_weighted_directed_arc() {
        let f = write_tmp("0 1 0.5");
        let g = load_edge_list(f.path(), true, true).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].weight, 0.5);
        assert_eq!(g.in_neighbors(g.dense_id(1).unwrap()), vec![0]);
    }

    #[test]
    fn undirected_dedup_covers_reversed_edges() {
        let g = Graph::from_edges(false, &[(0, 1, 0.3), (1, 0, 0.9)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].weight, 0.3); // first weight wins
    }

    #[test]
    fn self_loops_dropped() {
        let g = Graph::from_edges(false, &[(0, 0, 1.0), (0, 1, 1.0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let f = write_tmp("0 1\nnope");
        let err = load_edge_list(f.path(), false, false).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn negative_weight_rejected() {
        let f = write_tmp("0 1 -0.5");
        assert!(load_edge_list(f.path(), true, true).is_err());
    }

    #[test]
    fn neighbors_sorted_union() {
        let g = path3();
        assert_eq!(g.neighbors(1).unwrap(), &[0, 2]);
        let d = Graph::from_edges(true, &[(0, 1, 1.0), (2, 0, 1.0)]).unwrap();
        let zero = d.dense_id(0).unwrap();
        assert_eq!(d.neighbors(zero).unwrap(), &[1, 2]);
    }

    #[test]
    fn neighbors_unknown_vertex_errors() {
        let g = path3();
        assert!(g.neighbors(17).is_err());
    }

    #[test]
    fn degree_sum_matches_edge_count() {
        let g = Graph::from_edges(false, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (2, 3, 1.0)])
            .unwrap();
        let total: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn split_is_a_partition() {
        let edges: Vec<(u64, u64, f64)> = (0..100).map(|i| (i, i + 1, 1.0)).collect();
        let g = Graph::from_edges(false, &edges).unwrap();
        let (train, test) = split_edges(&g, 0.3, 7).unwrap();
        assert_eq!(train.edge_count() + test.edge_count(), 100);
        let (train2, test2) = split_edges(&g, 0.3, 7).unwrap();
        assert_eq!(train.edge_count(), train2.edge_count());
        assert_eq!(test.edge_count(), test2.edge_count());
        // vertex sets are exactly the endpoints of each side's edges
        for side in [&train, &test] {
            for v in 0..side.vertex_count() {
                assert!(!side.neighbors(v).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn split_count_within_binomial_bound() {
        let edges: Vec<(u64, u64, f64)> = (0..10_000).map(|i| (2 * i, 2 * i + 1, 1.0)).collect();
        let g = Graph::from_edges(false, &edges).unwrap();
        let (train, _) = split_edges(&g, 0.3, 11).unwrap();
        let sigma = (10_000.0_f64 * 0.3 * 0.7).sqrt();
        let dev = (train.edge_count() as f64 - 3_000.0).abs();
        assert!(dev < 3.0 * sigma, "train count {} off by {dev}", train.edge_count());
    }

    #[test]
    fn eigenvector_centrality_triangle_uniform() {
        let g = Graph::from_edges(false, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        let (scores, converged) = eigenvector_centrality(&g, 1e-9, 500);
        assert!(converged);
        let expect = 1.0 / 3.0_f64.sqrt();
        for s in scores {
            assert!((s - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn eigenvector_centrality_star_ratio() {
        // K_{1,3}: centre score = sqrt(3) x leaf score
        let g = Graph::from_edges(false, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        let (scores, converged) = eigenvector_centrality(&g, 1e-12, 2000);
        assert!(converged);
        assert!((scores[0] / scores[1] - 3.0_f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn eigenvector_centrality_path_ratio() {
        let g = path3();
        let (scores, converged) = eigenvector_centrality(&g, 1e-12, 2000);
        assert!(converged);
        assert!((scores[1] / scores[0] - 2.0_f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn eigenvector_centrality_relabel_invariant() {
        let edges = [(0u64, 1u64, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0), (0, 2, 1.0)];
        let g = Graph::from_edges(false, &edges).unwrap();
        // relabel v -> 10 - v
        let relabeled: Vec<(u64, u64, f64)> =
            edges.iter().map(|&(u, v, w)| (10 - u, 10 - v, w)).collect();
        let h = Graph::from_edges(false, &relabeled).unwrap();
        let (sg, _) = eigenvector_centrality(&g, 1e-12, 2000);
        let (sh, _) = eigenvector_centrality(&h, 1e-12, 2000);
        for v in 0..4u64 {
            let a = sg[g.dense_id(v).unwrap()];
            let b = sh[h.dense_id(10 - v).unwrap()];
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn features_star_minmax_endpoints() {
        let g = Graph::from_edges(false, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        let t = compute_features(&g, ProblemKind::Mvc);
        assert_eq!(t.ncols(), 2);
        assert_eq!(t.row(0)[0], 1.0); // centre degree
        assert_eq!(t.row(1)[0], 0.0); // leaf degree
    }

    #[test]
    fn features_im_out_weight_column() {
        let g = Graph::from_edges(true, &[(0, 1, 0.5), (0, 2, 0.5), (1, 2, 0.1)]).unwrap();
        let t = compute_features(&g, ProblemKind::Im { n_sim: 1, seed: 0 });
        assert_eq!(t.ncols(), 3);
        let v0 = g.dense_id(0).unwrap();
        assert_eq!(t.row(v0)[2], 1.0);
        let v2 = g.dense_id(2).unwrap();
        assert_eq!(t.row(v2)[2], 0.0);
    }

    #[test]
    fn features_constant_column_zeroed() {
        let g = Graph::from_edges(false, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        let t = compute_features(&g, ProblemKind::Mvc);
        for v in 0..3 {
            assert_eq!(t.row(v)[0], 0.0);
        }
    }

    #[test]
    fn features_in_unit_interval_on_fitted_graph() {
        let mut edges = Vec::new();
        for i in 0..30u64 {
            edges.push((i, (i + 1) % 30, 1.0));
            if i % 3 == 0 {
                edges.push((i, (i + 7) % 30, 1.0));
            }
        }
        let g = Graph::from_edges(false, &edges).unwrap();
        let t = compute_features(&g, ProblemKind::Mvc);
        for v in 0..g.vertex_count() {
            for &x in t.row(v) {
                assert!((0.0..=1.0).contains(&x) && x.is_finite());
            }
        }
    }

    #[test]
    fn vertex_induced_keeps_inner_edges_only() {
        let g = Graph::from_edges(false, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let kept: VertexSet = [0, 1, 2].into_iter().collect();
        let sub = vertex_induced(&g, &kept).unwrap();
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 2);
    }
}
