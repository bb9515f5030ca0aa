//! Sequential and data-parallel execution of the hot loops.
//!
//! With the `parallel` feature the [`Execution::Parallel`] strategy runs on the
//! current rayon pool; without it every strategy falls back to the sequential
//! loop. Results are identical either way: work is split over disjoint output
//! ranges and each output element is computed by exactly one closure call.

/// How a data-parallel loop is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Minimum chunk length for parallel splits.
#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 1 << 10;

/// Fills `out[i] = f(i)` for every index.
pub fn fill_indexed<F>(exec: Execution, out: &mut [f64], f: F)
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && out.len() > MIN_CHUNK {
        use rayon::prelude::*;
        out.par_iter_mut()
            .with_min_len(MIN_CHUNK)
            .enumerate()
            .for_each(|(i, x)| *x = f(i));
        return;
    }
    let _ = exec;
    for (i, x) in out.iter_mut().enumerate() {
        *x = f(i);
    }
}

/// Maps `f` over `items` preserving order.
pub fn map_ordered<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Collects every `x` in `0..end` with `keep(x)`, in ascending order.
pub fn filter_range<F>(exec: Execution, end: u64, keep: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && end > MIN_CHUNK as u64 {
        use rayon::prelude::*;
        return (0..end).into_par_iter().filter(|&x| keep(x)).collect();
    }
    let _ = exec;
    (0..end).filter(|&x| keep(x)).collect()
}
