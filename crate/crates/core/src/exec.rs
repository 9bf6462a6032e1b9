//! Execution strategy for embarrassingly parallel inner loops.
//!
//! Every parallel site in this crate maps a pure function over an index
//! range and reduces the results in index order, so sequential and parallel
//! execution are bit-identical. The `parallel` feature selects rayon as the
//! default backend; without it `ExecMode::Parallel` degrades to the
//! sequential path.

/// How to run an indexed map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Maps `f` over `0..n`, returning results in index order.
pub fn run_indexed<T, F>(mode: ExecMode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    match mode {
        ExecMode::Sequential => (0..n).map(f).collect(),
        ExecMode::Parallel => run_parallel(n, f),
    }
}

#[cfg(feature = "parallel")]
fn run_parallel<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_parallel<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    (0..n).map(f).collect()
}

/// Caps the rayon worker pool. A no-op without the `parallel` feature.
/// Returns an error message if the global pool was already initialised.
pub fn configure_jobs(jobs: usize) -> std::result::Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_and_parallel_agree() {
        let f = |i: usize| (i as f64).sqrt() * 3.7;
        let seq = run_indexed(ExecMode::Sequential, 1000, f);
        let par = run_indexed(ExecMode::Parallel, 1000, f);
        assert_eq!(seq, par);
    }
}
