//! Worker pools for grid classification and verification suites.
//!
//! Work is split by grid row or by sample index; each worker writes a
//! disjoint slice and the results are assembled in index order, so output
//! does not depend on the worker count.

use rayon::prelude::*;

use escset_core::field::classify_row;
use escset_core::verify::{finish, SampleOutcome};
use escset_core::{
    Classification, ConstraintViolation, EscapeField, IterationConfig, MapExpr, Suite, VerificationReport, Window,
};

#[derive(Debug, thiserror::Error)]
#[error("cannot start worker pool: {0}")]
pub struct PoolError(#[from] rayon::ThreadPoolBuildError);

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, PoolError> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?)
}

#[derive(Debug, thiserror::Error)]
pub enum GridError {
    #[error(transparent)]
    Invalid(#[from] ConstraintViolation),
    #[error(transparent)]
    Pool(#[from] PoolError),
}

/// [`escset_core::classify_grid`] with rows spread over `workers` threads.
pub fn classify_grid(
    map: &MapExpr,
    window: Window,
    nx: usize,
    ny: usize,
    cfg: &IterationConfig,
    workers: usize,
) -> Result<EscapeField, GridError> {
    map.validate()?;
    let mut field = EscapeField::filled(window, nx, ny, Classification::BoundedAtBudget);
    if nx == 0 {
        return Ok(field);
    }
    pool(workers)?.install(|| {
        field
            .cells
            .par_chunks_mut(nx)
            .enumerate()
            .for_each(|(j, row)| classify_row(map, &window, nx, ny, j, cfg, row));
    });
    Ok(field)
}

/// Runs every check of `suite` on `workers` threads.
pub fn run_suite<S: Suite + Sync + ?Sized>(suite: &S, workers: usize) -> Result<VerificationReport, PoolError> {
    let outcomes: Vec<SampleOutcome> =
        pool(workers)?.install(|| (0..suite.len()).into_par_iter().map(|i| suite.check(i)).collect());
    Ok(finish(suite, outcomes))
}
