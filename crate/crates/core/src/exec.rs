//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] runs on the rayon
//! global pool; without it every strategy runs sequentially. Results never
//! depend on the strategy: searches return the leftmost hit.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Smallest index in `range` satisfying `pred`.
    pub fn find_first(
        self,
        range: Range<u64>,
        pred: impl Fn(u64) -> bool + Sync + Send,
    ) -> Option<u64> {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().find_first(|&i| pred(i))
            }
            _ => range.into_iter().find(|&i| pred(i)),
        }
    }

    pub fn all(self, range: Range<u64>, pred: impl Fn(u64) -> bool + Sync + Send) -> bool {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().all(pred)
            }
            _ => range.into_iter().all(pred),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u64> = (0..1000).collect();
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(exec.map(&items, |x| x * 2)[999], 1998);
            assert_eq!(
                exec.find_first(0..10_000, |i| i % 97 == 96 && i > 300),
                Some(387)
            );
            assert!(exec.all(0..500, |i| i < 500));
            assert!(!exec.all(0..500, |i| i != 250));
        }
    }
}
