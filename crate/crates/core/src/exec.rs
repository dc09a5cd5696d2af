//! Execution strategy for the exhaustive searches and batch jobs.
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! otherwise, or when [`Strategy::Sequential`] is requested, it runs on the
//! calling thread. Both strategies return identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Strategy {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// Whether parallel execution is compiled in.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Smallest index in `0..n` satisfying `pred`.
pub fn find_first_index<F>(strategy: Strategy, n: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..n).into_par_iter().find_first(|&i| pred(i)),
        _ => (0..n).find(|&i| pred(i)),
    }
}

/// `items.map(f)`, order preserved.
pub fn map_collect<T, U, F>(strategy: Strategy, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// `(0..n).map(f)`, order preserved.
pub fn map_range<U, F>(strategy: Strategy, n: u64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> U + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for s in [Strategy::Sequential, Strategy::Parallel] {
            assert_eq!(find_first_index(s, 10_000, |i| i * i > 5000), Some(71));
            assert_eq!(find_first_index(s, 10, |_| false), None);
            assert_eq!(map_collect(s, &[1, 2, 3], |x| x * 2), vec![2, 4, 6]);
            assert_eq!(map_range(s, 4, |x| x + 1), vec![1, 2, 3, 4]);
        }
    }
}
