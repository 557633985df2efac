//! Stand-alone replica of the exhaustive check for the 21-good tail of the
//! three-agent goods hardness construction.
//!
//! It deliberately mirrors the original verification program rather than
//! the general engine: every prefix (not only round ends) is checked, the
//! EF1 test subtracts the most valuable good of the other bundle (0 for an
//! empty bundle), and an optional envy offset adds one unit to the
//! "up to one good" value of a single ordered pair.

use alloc::vec;
use alloc::vec::Vec;

use super::{Mode, Outcome, SearchResult};
use crate::instance::Allocation;
use crate::AgentId;

pub const TAIL_GOODS: usize = 21;

const TAIL: [[i64; TAIL_GOODS]; 3] = [
    [
        90, 80, 70, 100, 100, 100, 15, 10000, 11000, 12000, 20000, 20000, 20000, 20000, 20000, 20000, 20000, 20000,
        20000, 19010, 18005,
    ],
    [
        90, 70, 80, 100, 100, 100, 95, 10000, 11000, 12000, 20000, 20000, 20000, 20000, 20000, 20000, 20000, 12000,
        12000, 19085, 14106,
    ],
    [
        80, 90, 70, 100, 100, 100, 25, 10000, 11000, 12000, 20000, 20000, 18500, 20000, 20000, 20000, 20000, 20000,
        20000, 19010, 19496,
    ],
];

/// Values of agents 0..3 for the tail goods `g_1..g_21`.
pub fn tail_values() -> [[i64; TAIL_GOODS]; 3] {
    TAIL
}

/// The pair that already envied at the end of the prefix: `from` envies `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TailEnvy {
    pub from: AgentId,
    pub to: AgentId,
}

struct Tail {
    envy: Option<TailEnvy>,
    bundles: [Vec<usize>; 3],
    mode: Mode,
    found: Vec<Allocation>,
    assignment: Vec<AgentId>,
    count: u128,
    nodes: u64,
}

impl Tail {
    fn ef1(&self) -> bool {
        let own: Vec<i64> = (0..3).map(|i| self.bundles[i].iter().map(|&g| TAIL[i][g]).sum()).collect();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let values = self.bundles[j].iter().map(|&g| TAIL[i][g]);
                let max = values.clone().max().unwrap_or(0);
                let mut less_one = values.sum::<i64>() - max;
                if self.envy == Some(TailEnvy { from: i, to: j }) {
                    less_one += 1;
                }
                if own[i] < less_one {
                    return false;
                }
            }
        }
        true
    }

    fn backtrack(&mut self, index: usize) -> bool {
        if index == TAIL_GOODS {
            self.count += 1;
            if self.mode != Mode::Count {
                self.found.push(Allocation::new(self.assignment.clone()));
            }
            return self.mode == Mode::First;
        }
        for agent in 0..3 {
            self.nodes += 1;
            self.bundles[agent].push(index);
            self.assignment.push(agent);
            let stop = self.ef1() && self.backtrack(index + 1);
            self.assignment.pop();
            self.bundles[agent].pop();
            if stop {
                return true;
            }
        }
        false
    }
}

/// Every allocation of the 21 tail goods that passes the check above after
/// each good, for the given envy offset. Agents are `0..3`.
pub fn appendix_tail_search(envy: Option<TailEnvy>, mode: Mode) -> SearchResult {
    let mut tail = Tail {
        envy,
        bundles: [vec![], vec![], vec![]],
        mode,
        found: Vec::new(),
        assignment: Vec::with_capacity(TAIL_GOODS),
        count: 0,
        nodes: 0,
    };
    tail.backtrack(0);
    SearchResult {
        outcome: if tail.count > 0 { Outcome::Found } else { Outcome::None },
        allocations: tail.found,
        count: tail.count,
        weighted_count: tail.count,
        nodes_explored: tail.nodes,
    }
}
