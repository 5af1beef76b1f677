//! Per-thread reduction-step budget.
//!
//! Every Gröbner run reads the current limit when it starts and fails with
//! [`AlgebraError::BudgetExceeded`] once it has performed more reduction
//! steps than that. Steps are also accumulated into a per-thread usage
//! counter so callers can report how much work a computation took.

use std::cell::Cell;

use crate::error::{AlgebraError, Result};

/// Default per-run step limit.
pub const DEFAULT_STEP_LIMIT: u64 = 20_000_000;

thread_local! {
    static LIMIT: Cell<u64> = const { Cell::new(DEFAULT_STEP_LIMIT) };
    static USED: Cell<u64> = const { Cell::new(0) };
    static TOTAL: Cell<u64> = const { Cell::new(u64::MAX) };
}

/// Current per-run limit on this thread.
pub fn step_limit() -> u64 {
    LIMIT.with(|l| l.get())
}

/// Total steps consumed on this thread since the last [`reset_usage`].
pub fn steps_used() -> u64 {
    USED.with(|u| u.get())
}

pub fn reset_usage() {
    USED.with(|u| u.set(0));
}

/// Runs `f` with a different per-run limit, restoring the old one after.
pub fn with_step_limit<T>(limit: u64, f: impl FnOnce() -> T) -> T {
    let old = LIMIT.with(|l| l.replace(limit));
    struct Restore(u64);
    impl Drop for Restore {
        fn drop(&mut self) {
            LIMIT.with(|l| l.set(self.0));
        }
    }
    let _guard = Restore(old);
    f()
}

/// Runs `f` with a cap on the steps of all runs together, counting from
/// zero. Usage after `f` is available from [`steps_used`].
pub fn with_total_budget<T>(total: u64, f: impl FnOnce() -> T) -> T {
    reset_usage();
    let old = TOTAL.with(|t| t.replace(total));
    struct Restore(u64);
    impl Drop for Restore {
        fn drop(&mut self) {
            TOTAL.with(|t| t.set(self.0));
        }
    }
    let _guard = Restore(old);
    f()
}

/// Step counter for one run.
pub(crate) struct Meter {
    limit: u64,
    used: u64,
}

impl Meter {
    pub(crate) fn start() -> Self {
        Meter {
            limit: step_limit().min(TOTAL.with(|t| t.get()).saturating_sub(steps_used())),
            used: 0,
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(AlgebraError::BudgetExceeded { limit: self.limit });
        }
        Ok(())
    }
}

impl Drop for Meter {
    fn drop(&mut self) {
        let used = self.used;
        USED.with(|u| u.set(u.get().saturating_add(used)));
    }
}
