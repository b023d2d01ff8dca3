//! Order-preserving parallel map on a dedicated pool.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// `items.map(f)` on `threads` workers, results in input order. One thread
/// (or zero) runs inline without building a pool.
pub(crate) fn map<T, R, F>(threads: usize, items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if threads <= 1 || items.len() <= 1 {
        return Ok(items.iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(f).collect()))
}
