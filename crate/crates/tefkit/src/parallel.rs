//! Subtree-parallel search on scoped threads.
//!
//! The tree is cut at a fixed depth and the prefixes are handed out to
//! workers in frontier order. The merged outcome and allocation list match a
//! single-threaded run; node counts may differ, because a `First` query
//! cancels later subtrees only once an earlier one has found a solution and
//! workers may already be inside them.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use tefkit_core::search::{merge, Plan, SearchResult, SharedBudget};

/// Aim for this many subtrees per worker so uneven subtrees even out.
const SUBTREES_PER_THREAD: usize = 8;
const MAX_DEPTH: usize = 16;

pub fn run_plan(plan: &Plan<'_>, threads: usize) -> SearchResult {
    let budget = SharedBudget::new(plan.query().budget);
    if threads <= 1 {
        return plan.run(&[], &budget, 0);
    }
    let frontier = split(plan, threads * SUBTREES_PER_THREAD);
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<SearchResult>>> = Mutex::new(vec![None; frontier.len()]);
    std::thread::scope(|s| {
        for _ in 0..threads.min(frontier.len()) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(prefix) = frontier.get(k) else { break };
                let part = plan.run(prefix, &budget, k);
                slots.lock().unwrap()[k] = Some(part);
            });
        }
    });
    let parts = slots.into_inner().unwrap().into_iter().map(|p| p.expect("every subtree ran")).collect();
    merge(plan.query().mode, parts)
}

/// The shallowest frontier with at least `want` prefixes, or the deepest
/// one the tree allows.
fn split(plan: &Plan<'_>, want: usize) -> Vec<Vec<usize>> {
    let mut depth = 1;
    let mut frontier = plan.frontier(depth);
    while frontier.len() < want && depth < MAX_DEPTH {
        depth += 1;
        let deeper = plan.frontier(depth);
        if deeper.first().map(Vec::len) == frontier.first().map(Vec::len) {
            break;
        }
        frontier = deeper;
    }
    frontier
}
