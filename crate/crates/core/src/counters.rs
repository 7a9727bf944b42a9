use core::sync::atomic::{AtomicU64, Ordering};

/// Operation counters shared by every structure. Totals only ever grow.
#[derive(Debug, Default)]
pub struct Counters {
    engine_queries: AtomicU64,
    detector_queries: AtomicU64,
    rank1_updates: AtomicU64,
    rebuilds: AtomicU64,
}

/// Plain snapshot of [`Counters`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CounterSnapshot {
    pub engine_queries: u64,
    pub detector_queries: u64,
    pub rank1_updates: u64,
    pub rebuilds: u64,
}

impl Counters {
    pub fn engine_query(&self) {
        self.engine_queries.fetch_add(1, Ordering::Relaxed);
    }

    pub fn detector_query(&self) {
        self.detector_queries.fetch_add(1, Ordering::Relaxed);
    }

    pub fn rank1_update(&self) {
        self.rank1_updates.fetch_add(1, Ordering::Relaxed);
    }

    pub fn rebuild(&self) {
        self.rebuilds.fetch_add(1, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> CounterSnapshot {
        CounterSnapshot {
            engine_queries: self.engine_queries.load(Ordering::Relaxed),
            detector_queries: self.detector_queries.load(Ordering::Relaxed),
            rank1_updates: self.rank1_updates.load(Ordering::Relaxed),
            rebuilds: self.rebuilds.load(Ordering::Relaxed),
        }
    }
}

impl Clone for Counters {
    fn clone(&self) -> Self {
        let s = self.snapshot();
        Counters {
            engine_queries: AtomicU64::new(s.engine_queries),
            detector_queries: AtomicU64::new(s.detector_queries),
            rank1_updates: AtomicU64::new(s.rank1_updates),
            rebuilds: AtomicU64::new(s.rebuilds),
        }
    }
}

impl CounterSnapshot {
    pub fn since(&self, earlier: &CounterSnapshot) -> CounterSnapshot {
        CounterSnapshot {
            engine_queries: self.engine_queries - earlier.engine_queries,
            detector_queries: self.detector_queries - earlier.detector_queries,
            rank1_updates: self.rank1_updates - earlier.rank1_updates,
            rebuilds: self.rebuilds - earlier.rebuilds,
        }
    }

    pub fn plus(&self, other: &CounterSnapshot) -> CounterSnapshot {
        CounterSnapshot {
            engine_queries: self.engine_queries + other.engine_queries,
            detector_queries: self.detector_queries + other.detector_queries,
            rank1_updates: self.rank1_updates + other.rank1_updates,
            rebuilds: self.rebuilds + other.rebuilds,
        }
    }
}
