//! Data-parallel helpers. With the `parallel` feature (on by default) these
//! run on the rayon pool; without it they fall back to plain iteration.
//! The `_seq` variants are always sequential so both paths can be compared.

use crate::tuples::{canonical_factorization, NormTuple};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every item, preserving order.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(items, f)
    }
}

pub fn map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Stable sort by a comparator.
pub fn sort_by<T, F>(items: &mut [T], cmp: F)
where
    T: Send,
    F: Fn(&T, &T) -> std::cmp::Ordering + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_sort_by(cmp)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.sort_by(cmp)
    }
}

/// True if `pred` holds for every item.
pub fn all<T, F>(items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().all(pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().all(pred)
    }
}

/// Canonical factorization of a batch of tuples.
pub fn factor_all(ts: &[NormTuple]) -> Vec<Vec<NormTuple>> {
    map(ts, canonical_factorization)
}

pub fn factor_all_seq(ts: &[NormTuple]) -> Vec<Vec<NormTuple>> {
    map_seq(ts, canonical_factorization)
}
