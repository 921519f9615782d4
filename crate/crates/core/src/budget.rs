//! Node budgets for the exact solvers.
//!
//! Every exhaustive search in this crate charges one unit per search node
//! against a [`Budget`]. Running out is not an error: the caller receives
//! [`Verdict::Undecided`] and never a guessed value.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

pub const DEFAULT_NODE_LIMIT: u64 = 200_000_000;

/// Marker returned when a search ran out of nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Exhausted {
    pub limit: u64,
}

impl std::fmt::Display for Exhausted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "node budget of {} exhausted", self.limit)
    }
}

#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        if self.used >= self.limit {
            return Err(Exhausted { limit: self.limit });
        }
        self.used += 1;
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.used
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_NODE_LIMIT)
    }
}

/// Budget shared between worker threads of a parallel search.
#[derive(Debug)]
pub struct SharedBudget {
    limit: u64,
    used: AtomicU64,
}

impl SharedBudget {
    pub fn new(limit: u64) -> Self {
        SharedBudget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    #[inline]
    pub fn tick(&self) -> Result<(), Exhausted> {
        let prev = self.used.fetch_add(1, Ordering::Relaxed);
        if prev >= self.limit {
            Err(Exhausted { limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// Charges `n` nodes at once (workers batch their ticks).
    pub fn charge(&self, n: u64) -> Result<(), Exhausted> {
        let prev = self.used.fetch_add(n, Ordering::Relaxed);
        if prev.saturating_add(n) > self.limit {
            Err(Exhausted { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

/// Outcome of a budgeted exact computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<T> {
    Decided(T),
    Undecided(Exhausted),
}

impl<T> Verdict<T> {
    pub fn decided(self) -> Option<T> {
        match self {
            Verdict::Decided(v) => Some(v),
            Verdict::Undecided(_) => None,
        }
    }

    pub fn as_ref(&self) -> Verdict<&T> {
        match self {
            Verdict::Decided(v) => Verdict::Decided(v),
            Verdict::Undecided(e) => Verdict::Undecided(*e),
        }
    }

    pub fn is_decided(&self) -> bool {
        matches!(self, Verdict::Decided(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Verdict<U> {
        match self {
            Verdict::Decided(v) => Verdict::Decided(f(v)),
            Verdict::Undecided(e) => Verdict::Undecided(e),
        }
    }

    pub fn into_result(self) -> Result<T, Exhausted> {
        self.into()
    }

    /// Unwraps a decided value; panics on `Undecided`. Test helper.
    #[track_caller]
    pub fn expect_decided(self, what: &str) -> T {
        match self {
            Verdict::Decided(v) => v,
            Verdict::Undecided(e) => panic!("{what}: {e}"),
        }
    }
}

impl<T> From<Result<T, Exhausted>> for Verdict<T> {
    fn from(r: Result<T, Exhausted>) -> Self {
        match r {
            Ok(v) => Verdict::Decided(v),
            Err(e) => Verdict::Undecided(e),
        }
    }
}

impl<T> From<Verdict<T>> for Result<T, Exhausted> {
    fn from(v: Verdict<T>) -> Self {
        match v {
            Verdict::Decided(v) => Ok(v),
            Verdict::Undecided(e) => Err(e),
        }
    }
}
