//! Index-parallel evaluation with a sequential fallback.

use serde::{Deserialize, Serialize};

/// How sample loops are evaluated. Results always come back in index
/// order, so reports do not depend on the choice.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled and falls back to
    /// sequential evaluation otherwise.
    #[default]
    Parallel,
}

impl Exec {
    /// `[f(0), f(1), …, f(n−1)]`.
    pub fn map_indexed<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            Exec::Parallel => parallel_map(n, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let f = |i: usize| (i as f64).sin();
        assert_eq!(Exec::Sequential.map_indexed(1000, f), Exec::Parallel.map_indexed(1000, f));
        assert!(Exec::Parallel.map_indexed(0, f).is_empty());
    }
}
