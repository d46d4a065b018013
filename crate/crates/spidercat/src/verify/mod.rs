//! Verification: stabilizer simulation, exhaustive fault checking, and
//! Monte Carlo error-rate estimation.

mod faults;
mod monte;
mod tableau;

pub use faults::{
    check_ft, check_ft_with_budget, FaultModel, FtCounterexample, FtReport, FT_SUBSET_BUDGET,
};
pub use monte::{monte_carlo, wilson_interval, MonteCarloReport};
pub use tableau::{is_cat, simulate, SimError, StabilizerState};

use std::sync::atomic::{AtomicUsize, Ordering};

static WORKER_CAP: AtomicUsize = AtomicUsize::new(0);

/// Cap the worker threads used by check_ft and monte_carlo; 0 restores
/// the default (available parallelism, at most 8).  Results never depend
/// on the worker count, only wall time does.
pub fn set_worker_cap(n: usize) {
    WORKER_CAP.store(n, Ordering::Relaxed);
}

pub(crate) fn workers() -> usize {
    match WORKER_CAP.load(Ordering::Relaxed) {
        0 => std::thread::available_parallelism().map_or(1, |p| p.get()).min(8),
        n => n,
    }
}
