//! Explicit limits for the exponential searches.
//!
//! Every search that can blow up takes a [`Budget`]. Running out is reported
//! as an error carrying whatever partial state the search had reached; it is
//! never a silent truncation.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of candidate strings (or pairs, or samples) visited.
    pub max_candidates: u64,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const DEFAULT_CANDIDATES: u64 = 50_000_000;

    pub fn new(max_candidates: u64, max_time: Option<Duration>) -> Self {
        Self {
            max_candidates,
            max_time,
        }
    }

    pub fn candidates(max_candidates: u64) -> Self {
        Self::new(max_candidates, None)
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX, None)
    }

    pub fn meter(&self) -> Meter {
        Meter {
            budget: *self,
            used: AtomicU64::new(0),
            start: Instant::now(),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::candidates(Self::DEFAULT_CANDIDATES)
    }
}

/// Signals that a [`Meter`] ran dry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted {
    pub used: u64,
}

/// Running consumption against a [`Budget`]. Safe to share across rayon
/// workers.
#[derive(Debug)]
pub struct Meter {
    budget: Budget,
    used: AtomicU64,
    start: Instant,
}

impl Meter {
    /// Records `n` more units of work.
    pub fn charge(&self, n: u64) -> Result<(), Exhausted> {
        let used = self.used.fetch_add(n, Ordering::Relaxed).saturating_add(n);
        if used > self.budget.max_candidates {
            return Err(Exhausted { used });
        }
        // Clock reads are comparatively slow, sample them.
        if self.budget.max_time.is_some() && (used & 0x3ff) < n.max(1) {
            self.check_time()?;
        }
        Ok(())
    }

    pub fn check_time(&self) -> Result<(), Exhausted> {
        match self.budget.max_time {
            Some(limit) if self.start.elapsed() > limit => Err(Exhausted { used: self.used() }),
            _ => Ok(()),
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_limit_trips() {
        let meter = Budget::candidates(10).meter();
        assert!(meter.charge(10).is_ok());
        assert_eq!(meter.charge(1), Err(Exhausted { used: 11 }));
    }

    #[test]
    fn zero_time_limit_trips() {
        let meter = Budget::new(u64::MAX, Some(Duration::ZERO)).meter();
        std::thread::sleep(Duration::from_millis(2));
        assert!(meter.check_time().is_err());
    }

    #[test]
    fn unlimited_never_trips() {
        let meter = Budget::unlimited().meter();
        for _ in 0..1000 {
            meter.charge(1_000_000).unwrap();
        }
    }
}
