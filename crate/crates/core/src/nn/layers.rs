//! Forward/backward passes for the layers the encoder and Q-network are
//! built from. Each forward returns a trace holding exactly what backward
//! needs; inputs are passed again at backward time so traces stay small.

use rand::Rng;

use crate::graph::Graph;
use crate::nn::mat::{dot, l2_norm, Mat};

/// Neighbour lists in a subgraph's dense indexing, the adjacency view the
/// layers consume.
#[derive(Debug, Clone)]
pub struct AdjList {
    pub nbrs: Vec<Vec<usize>>,
}

impl AdjList {
    pub fn from_graph(g: &Graph) -> Self {
        let nbrs = (0..g.vertex_count())
            .map(|v| g.neighbors(v).expect("dense vertex").to_vec())
            .collect();
        AdjList { nbrs }
    }

    pub fn len(&self) -> usize {
        self.nbrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nbrs.is_empty()
    }

    /// Adjacency restricted to `kept` (ascending), reindexed densely.
    pub fn restrict(&self, kept: &[usize]) -> AdjList {
        let mut remap = vec![usize::MAX; self.nbrs.len()];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
        }
        let nbrs = kept
            .iter()
            .map(|&old| {
                self.nbrs[old]
                    .iter()
                    .filter_map(|&u| (remap[u] != usize::MAX).then(|| remap[u]))
                    .collect()
            })
            .collect();
        AdjList { nbrs }
    }

    /// Row-normalised adjacency product: out_v = mean of x over v's
    /// neighbours, zero when v has none.
    pub fn mean_aggregate(&self, x: &Mat) -> Mat {
        let mut out = Mat::zeros(x.rows(), x.cols());
        for (v, nbrs) in self.nbrs.iter().enumerate() {
            if nbrs.is_empty() {
                continue;
            }
            let inv = 1.0 / nbrs.len() as f64;
            let row = out.row_mut(v);
            for &u in nbrs {
                for (o, &val) in row.iter_mut().zip(x.row(u).iter()) {
                    *o += val;
                }
            }
            for o in row.iter_mut() {
                *o *= inv;
            }
        }
        out
    }

    /// Transpose of `mean_aggregate`: scatters y_v / deg(v) to each
    /// neighbour of v.
    pub fn mean_aggregate_transpose(&self, y: &Mat) -> Mat {
        let mut out = Mat::zeros(y.rows(), y.cols());
        for (v, nbrs) in self.nbrs.iter().enumerate() {
            if nbrs.is_empty() {
                continue;
            }
            let inv = 1.0 / nbrs.len() as f64;
            for &u in nbrs {
                let row_v = y.row(v);
                let row_u = out.row_mut(u);
                for (o, &val) in row_u.iter_mut().zip(row_v.iter()) {
                    *o += inv * val;
                }
            }
        }
        out
    }
}

pub fn glorot(rows: usize, cols: usize, rng: &mut impl Rng) -> Mat {
    let bound = (6.0 / (rows + cols) as f64).sqrt();
    let data = (0..rows * cols)
        .map(|_| rng.gen_range(-bound..bound))
        .collect();
    Mat::from_vec(rows, cols, data)
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Linear {
    pub w: Mat,
    pub b: Mat,
}

pub struct LinearTrace {
    // nothing beyond the input is needed; callers keep their inputs
}

impl Linear {
    pub fn new(input: usize, output: usize, rng: &mut impl Rng) -> Self {
        Linear {
            w: glorot(input, output, rng),
            b: Mat::zeros(1, output),
        }
    }

    pub fn in_dim(&self) -> usize {
        self.w.rows()
    }

    pub fn out_dim(&self) -> usize {
        self.w.cols()
    }

    pub fn forward(&self, x: &Mat) -> Mat {
        let mut y = x.matmul(&self.w);
        for i in 0..y.rows() {
            let row = y.row_mut(i);
            for (o, &b) in row.iter_mut().zip(self.b.data().iter()) {
                *o += b;
            }
        }
        y
    }

    /// Returns d_input and accumulates parameter gradients.
    pub fn backward(&self, x: &Mat, dy: &Mat, dw: &mut Mat, db: &mut Mat) -> Mat {
        dw.add_assign(&x.matmul_tn(dy));
        let sums = dy.col_sums();
        for (o, s) in db.data_mut().iter_mut().zip(sums) {
            *o += s;
        }
        dy.matmul_nt(&self.w)
    }
}

pub fn relu(x: &Mat) -> Mat {
    let mut y = x.clone();
    y.data_mut().iter_mut().for_each(|v| {
        if *v < 0.0 {
            *v = 0.0;
        }
    });
    y
}

/// Gradient of ReLU given the pre-activation values.
pub fn relu_backward(pre: &Mat, dy: &Mat) -> Mat {
    let mut dx = dy.clone();
    for (d, &z) in dx.data_mut().iter_mut().zip(pre.data().iter()) {
        if z <= 0.0 {
            *d = 0.0;
        }
    }
    dx
}

/// GraphSAGE layer with mean aggregation:
/// h'_v = ReLU(W_self h_v + W_neigh mean_{u in N(v)} h_u + bias).
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct SageLayer {
    pub w_self: Mat,
    pub w_neigh: Mat,
    pub bias: Mat,
}

pub struct SageTrace {
    pub mean_nbr: Mat,
    pub pre: Mat,
    pub out: Mat,
}

#[derive(Debug, Clone)]
pub struct SageGrads {
    pub w_self: Mat,
    pub w_neigh: Mat,
    pub bias: Mat,
}

impl SageLayer {
    pub fn new(input: usize, output: usize, rng: &mut impl Rng) -> Self {
        SageLayer {
            w_self: glorot(input, output, rng),
            w_neigh: glorot(input, output, rng),
            bias: Mat::zeros(1, output),
        }
    }

    pub fn zero_grads(&self) -> SageGrads {
        SageGrads {
            w_self: Mat::zeros(self.w_self.rows(), self.w_self.cols()),
            w_neigh: Mat::zeros(self.w_neigh.rows(), self.w_neigh.cols()),
            bias: Mat::zeros(1, self.bias.cols()),
        }
    }

    pub fn forward(&self, h: &Mat, adj: &AdjList) -> SageTrace {
        let mean_nbr = adj.mean_aggregate(h);
        let mut pre = h.matmul(&self.w_self);
        pre.add_assign(&mean_nbr.matmul(&self.w_neigh));
        for i in 0..pre.rows() {
            let row = pre.row_mut(i);
            for (o, &b) in row.iter_mut().zip(self.bias.data().iter()) {
                *o += b;
            }
        }
        let out = relu(&pre);
        SageTrace { mean_nbr, pre, out }
    }

    /// Backward through ReLU, both linear maps, and the mean aggregation.
    pub fn backward(
        &self,
        h: &Mat,
        adj: &AdjList,
        trace: &SageTrace,
        dy: &Mat,
        grads: &mut SageGrads,
    ) -> Mat {
        let dz = relu_backward(&trace.pre, dy);
        grads.w_self.add_assign(&h.matmul_tn(&dz));
        grads.w_neigh.add_assign(&trace.mean_nbr.matmul_tn(&dz));
        for (o, s) in grads.bias.data_mut().iter_mut().zip(dz.col_sums()) {
            *o += s;
        }
        let mut dh = dz.matmul_nt(&self.w_self);
        let d_mean = dz.matmul_nt(&self.w_neigh);
        dh.add_assign(&adj.mean_aggregate_transpose(&d_mean));
        dh
    }
}

/// Top-k pooling: scores y = h p / ||p||, keeps the ceil(ratio * n) highest
/// scorers (ties to the lower index), gates kept rows by tanh(y).
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct TopKPool {
    pub p: Mat,
    pub ratio: f64,
}

pub struct PoolTrace {
    pub scores: Vec<f64>,
    pub kept: Vec<usize>,
    pub p_norm: f64,
    pub out: Mat,
}

impl TopKPool {
    pub fn new(dim: usize, ratio: f64, rng: &mut impl Rng) -> Self {
        TopKPool {
            p: glorot(1, dim, rng),
            ratio,
        }
    }

    /// ||p|| guard: re-initialises the projection if it has collapsed.
    pub fn reinit_if_degenerate(&mut self, rng: &mut impl Rng) -> bool {
        if l2_norm(self.p.data()) < 1e-9 {
            self.p = glorot(1, self.p.cols(), rng);
            true
        } else {
            false
        }
    }

    pub fn keep_count(&self, n: usize) -> usize {
        ((self.ratio * n as f64).ceil() as usize).clamp(1, n)
    }

    pub fn forward(&self, h: &Mat) -> PoolTrace {
        let n = h.rows();
        let p_norm = l2_norm(self.p.data()).max(f64::MIN_POSITIVE);
        let scores: Vec<f64> = (0..n).map(|v| dot(h.row(v), self.p.data()) / p_norm).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            scores[b]
                .partial_cmp(&scores[a])
                .expect("finite scores")
                .then(a.cmp(&b))
        });
        let mut kept: Vec<usize> = order[..self.keep_count(n)].to_vec();
        kept.sort_unstable();
        let mut out = Mat::zeros(kept.len(), h.cols());
        for (r, &v) in kept.iter().enumerate() {
            let gate = scores[v].tanh();
            for (o, &x) in out.row_mut(r).iter_mut().zip(h.row(v).iter()) {
                *o = x * gate;
            }
        }
        PoolTrace {
            scores,
            kept,
            p_norm,
            out,
        }
    }

    /// Backward through the gate and the score projection. The kept-set
    /// selection itself is treated as constant.
    pub fn backward(&self, h: &Mat, trace: &PoolTrace, dy: &Mat, dp: &mut Mat) -> Mat {
        let dim = h.cols();
        let mut dh = Mat::zeros(h.rows(), dim);
        let p_hat: Vec<f64> = self.p.data().iter().map(|&x| x / trace.p_norm).collect();
        for (r, &v) in trace.kept.iter().enumerate() {
            let y = trace.scores[v];
            let t = y.tanh();
            let dy_row = dy.row(r);
            let h_row = h.row(v);
            // gate path
            for (o, &g) in dh.row_mut(v).iter_mut().zip(dy_row.iter()) {
                *o += g * t;
            }
            // score path
            let dscore: f64 = dot(dy_row, h_row) * (1.0 - t * t);
            for ((o, &ph), &hx) in dh.row_mut(v).iter_mut().zip(p_hat.iter()).zip(h_row.iter()) {
                let _ = hx;
                *o += dscore * ph;
            }
            for ((o, &hx), &ph) in dp
                .data_mut()
                .iter_mut()
                .zip(h_row.iter())
                .zip(p_hat.iter())
            {
                *o += dscore * (hx - y * ph) / trace.p_norm;
            }
        }
        dh
    }
}

/// Column-wise mean concatenated with column-wise max. The max argrows are
/// recorded for the backward pass; ties resolve to the first row.
pub struct ReadoutTrace {
    pub argmax: Vec<usize>,
    pub n: usize,
}

pub fn readout(h: &Mat) -> (Vec<f64>, ReadoutTrace) {
    let n = h.rows();
    let d = h.cols();
    assert!(n > 0, "readout of an empty matrix");
    let mut out = vec![0.0; 2 * d];
    let mut argmax = vec![0usize; d];
    for j in 0..d {
        let mut sum = 0.0;
        let mut best = f64::NEG_INFINITY;
        for i in 0..n {
            let v = h.get(i, j);
            sum += v;
            if v > best {
                best = v;
                argmax[j] = i;
            }
        }
        out[j] = sum / n as f64;
        out[d + j] = best;
    }
    (out, ReadoutTrace { argmax, n })
}

pub fn readout_backward(trace: &ReadoutTrace, d: usize, dout: &[f64]) -> Mat {
    let mut dh = Mat::zeros(trace.n, d);
    for j in 0..d {
        let g_mean = dout[j] / trace.n as f64;
        for i in 0..trace.n {
            *dh.row_mut(i).get_mut(j).unwrap() += g_mean;
        }
        *dh.row_mut(trace.argmax[j]).get_mut(j).unwrap() += dout[d + j];
    }
    dh
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn line_adj(n: usize) -> AdjList {
        let nbrs = (0..n)
            .map(|v| {
                let mut r = Vec::new();
                if v > 0 {
                    r.push(v - 1);
                }
                if v + 1 < n {
                    r.push(v + 1);
                }
                r
            })
            .collect();
        AdjList { nbrs }
    }

    #[test]
    fn sage_isolated_vertex_is_relu_of_self_term() {
        // identity W_self, zero W_neigh and bias
        let layer = SageLayer {
            w_self: Mat::from_vec(2, 2, vec![1.0, 0.0, 0.0, 1.0]),
            w_neigh: Mat::zeros(2, 2),
            bias: Mat::zeros(1, 2),
        };
        let h = Mat::from_vec(1, 2, vec![-0.5, 2.0]);
        let adj = AdjList { nbrs: vec![vec![]] };
        let t = layer.forward(&h, &adj);
        assert_eq!(t.out.data(), &[0.0, 2.0]);
    }

    #[test]
    fn sage_symmetric_pair_outputs_equal() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let layer = SageLayer::new(3, 4, &mut rng);
        let h = Mat::from_rows(&[&[0.2, -0.4, 0.7], &[0.2, -0.4, 0.7]]);
        let adj = AdjList {
            nbrs: vec![vec![1], vec![0]],
        };
        let t = layer.forward(&h, &adj);
        assert_eq!(t.out.row(0), t.out.row(1));
    }

    #[test]
    fn sage_matches_dense_oracle_on_path() {
        // independent dense-matrix route: ReLU(H Ws + D^-1 A H Wn + b)
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let layer = SageLayer::new(2, 3, &mut rng);
        let h = Mat::from_rows(&[&[0.3, -1.0], &[0.9, 0.4], &[-0.2, 0.8]]);
        let adj = line_adj(3);
        let t = layer.forward(&h, &adj);

        let a = [[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]];
        let deg = [1.0, 2.0, 1.0];
        for v in 0..3 {
            for j in 0..3 {
                let mut z = layer.bias.get(0, j);
                for k in 0..2 {
                    z += h.get(v, k) * layer.w_self.get(k, j);
                }
                let mut mean = [0.0, 0.0];
                for u in 0..3 {
                    for (k, m) in mean.iter_mut().enumerate() {
                        *m += a[v][u] * h.get(u, k) / deg[v];
                    }
                }
                for k in 0..2 {
                    z += mean[k] * layer.w_neigh.get(k, j);
                }
                let expect = z.max(0.0);
                assert!((t.out.get(v, j) - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn topk_keeps_ceil_of_ratio() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pool = TopKPool::new(2, 0.8, &mut rng);
        assert_eq!(pool.keep_count(10), 8);
        assert_eq!(pool.keep_count(1), 1);
        assert_eq!(pool.keep_count(2), 2);
    }

    #[test]
    fn topk_equal_scores_keep_lowest_indices() {
        let pool = TopKPool {
            p: Mat::from_vec(1, 2, vec![1.0, 0.0]),
            ratio: 0.5,
        };
        let h = Mat::from_rows(&[&[0.7, 1.0], &[0.7, 2.0], &[0.7, 3.0], &[0.7, 4.0]]);
        let t = pool.forward(&h);
        assert_eq!(t.kept, vec![0, 1]);
        let gate = t.scores[0].tanh();
        assert!((t.out.get(0, 0) - 0.7 * gate).abs() < 1e-12);
        assert!((t.out.get(1, 0) - 0.7 * gate).abs() < 1e-12);
    }

    #[test]
    fn topk_reinit_guard() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut pool = TopKPool {
            p: Mat::zeros(1, 3),
            ratio: 0.8,
        };
        assert!(pool.reinit_if_degenerate(&mut rng));
        assert!(l2_norm(pool.p.data()) > 0.0);
        assert!(!pool.reinit_if_degenerate(&mut rng));
    }

    #[test]
    fn readout_single_row_duplicates() {
        let h = Mat::from_rows(&[&[1.0, -2.0]]);
        let (out, _) = readout(&h);
        assert_eq!(out, vec![1.0, -2.0, 1.0, -2.0]);
    }

    #[test]
    fn readout_mean_and_max() {
        let h = Mat::from_rows(&[&[0.0, 2.0], &[2.0, 0.0]]);
        let (out, _) = readout(&h);
        assert_eq!(out, vec![1.0, 1.0, 2.0, 2.0]);
    }

    #[test]
    fn readout_permutation_invariant() {
        let h = Mat::from_rows(&[&[0.3, 1.0], &[-0.5, 0.2], &[2.0, -1.0]]);
        let p = Mat::from_rows(&[&[2.0, -1.0], &[0.3, 1.0], &[-0.5, 0.2]]);
        assert_eq!(readout(&h).0, readout(&p).0);
    }

    #[test]
    fn adjlist_restrict_reindexes() {
        let adj = line_adj(4);
        let sub = adj.restrict(&[1, 2, 3]);
        assert_eq!(sub.nbrs[0], vec![1]); // old 1 keeps old 2 only
        assert_eq!(sub.nbrs[1], vec![0, 2]);
    }
}
