//! Data-parallel helpers. With the `parallel` feature enabled the closures
//! run on rayon's pool; the sequential path is always available so callers
//! (and the benches) can compare both.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over a slice, parallel when requested and compiled in.
pub fn map_slice<T, U, F>(parallel: bool, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// First index in `0..n` satisfying `pred`, respecting index order.
pub fn find_first_index<F>(parallel: bool, n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = parallel;
    (0..n).find(|&i| pred(i))
}

/// Map over an index range, parallel when requested and compiled in.
pub fn map_range<U, F>(parallel: bool, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}
