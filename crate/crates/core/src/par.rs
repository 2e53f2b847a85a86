//! Data-parallel helpers. Without the `parallel` feature every mode runs
//! sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How independent work items are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// Order-preserving map over a slice.
#[cfg(feature = "parallel")]
pub(crate) fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        Exec::Parallel if items.len() > 1 => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<T, U, F>(_exec: Exec, items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
