use core::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

/// Nodes reserved from the shared counter at a time.
const CHUNK: u64 = 1024;

/// A node budget shared by every worker of one search.
///
/// Workers reserve nodes in chunks, so the total explored never exceeds the
/// limit; a worker may be refused while another still holds unused nodes.
#[derive(Debug)]
pub struct SharedBudget {
    limit: u64,
    reserved: AtomicU64,
    exhausted: AtomicBool,
    /// Subtrees with a larger index stop early (set once an earlier subtree
    /// has found what a `First` query asks for).
    cancel_after: AtomicUsize,
}

impl SharedBudget {
    pub fn new(limit: u64) -> SharedBudget {
        SharedBudget {
            limit,
            reserved: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            cancel_after: AtomicUsize::new(usize::MAX),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    /// Asks every subtree with index greater than `index` to stop.
    pub fn cancel_after(&self, index: usize) {
        self.cancel_after.fetch_min(index, Ordering::Relaxed);
    }

    fn reserve(&self) -> u64 {
        if self.is_exhausted() {
            return 0;
        }
        let prev = self.reserved.fetch_add(CHUNK, Ordering::Relaxed);
        if prev >= self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
            0
        } else {
            CHUNK.min(self.limit - prev)
        }
    }
}

/// Per-worker view of a [`SharedBudget`].
pub(crate) struct Meter<'a> {
    budget: &'a SharedBudget,
    subtree: usize,
    allowance: u64,
    pub explored: u64,
    pub exceeded: bool,
    pub cancelled: bool,
}

impl<'a> Meter<'a> {
    pub fn new(budget: &'a SharedBudget, subtree: usize) -> Self {
        Meter { budget, subtree, allowance: 0, explored: 0, exceeded: false, cancelled: false }
    }

    /// Charges one node; false means stop.
    pub fn tick(&mut self) -> bool {
        if self.allowance == 0 {
            if self.budget.cancel_after.load(Ordering::Relaxed) < self.subtree {
                self.cancelled = true;
                return false;
            }
            self.allowance = self.budget.reserve();
            if self.allowance == 0 {
                self.exceeded = true;
                return false;
            }
        }
        self.allowance -= 1;
        self.explored += 1;
        true
    }
}
