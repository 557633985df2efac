//! Polynomial-time TEF1 solvers for restricted settings, class detection and
//! an auto-dispatcher.
//!
//! Solvers that need one item per round process items in id order, which is
//! the flattened instance; TEF1 there implies TEF1 on the original rounds.
//! Whenever the pseudocode leaves a choice open ("any agent", "ties broken
//! arbitrarily") the lowest agent index wins.

mod auto;
mod classes;
mod greedy;
mod two_agent;
mod two_rounds;

use alloc::vec::Vec;

use crate::instance::Allocation;
use crate::AgentId;

pub use auto::{solve_auto, solve_auto_with_budget, AutoOutcome};
pub use classes::{detect_class, ClassReport};
pub use greedy::{solve_generalized_binary, solve_two_types, solve_unimodal};
pub use two_agent::{solve_mixed_two_agent, solve_two_agent_chores, solve_two_agent_goods};
pub use two_rounds::solve_two_rounds;

/// What the two-agent window algorithm did, step by step.
///
/// `choices[t - 1]` is the agent that received item `t` when it arrived.
/// `swaps` and `resets` hold 1-based steps; at a swap step the items of the
/// current window (after the last reset, up to and including this step)
/// change hands, and a reset at step `t` moves the window start to `t`.
/// A step can both swap and reset; the swap comes first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolverTrace {
    pub choices: Vec<AgentId>,
    pub swaps: Vec<usize>,
    pub resets: Vec<usize>,
}

impl SolverTrace {
    /// Rebuilds the allocation from the recorded events.
    pub fn replay(&self) -> Allocation {
        let mut assignment = self.choices.clone();
        let mut start = 0;
        for t in 1..=assignment.len() {
            if self.swaps.binary_search(&t).is_ok() {
                for agent in &mut assignment[start..t] {
                    *agent = 1 - *agent;
                }
            }
            if self.resets.binary_search(&t).is_ok() {
                start = t;
            }
        }
        Allocation::new(assignment)
    }

    /// Window start in effect just before each reset, paired with the reset
    /// step: the windows `(start, t]` that the algorithm declared envy-free.
    pub fn windows(&self) -> Vec<(usize, usize)> {
        let mut start = 0;
        self.resets
            .iter()
            .map(|&t| {
                let window = (start, t);
                start = t;
                window
            })
            .collect()
    }
}
