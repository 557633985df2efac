//! The backtracking core, generic over the integer type of the scaled profile.

use alloc::vec;
use alloc::vec::Vec;

use crate::fairness::Relation;
use crate::instance::Kind;
use crate::scaled::{pair_holds, BundleStats, Profile, Scalar};
use crate::search::budget::Meter;
use crate::AgentId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Leaf {
    Plain,
    ParetoOptimal,
    /// Round 1 has `len` items; leaves replicate it over every round.
    Repeat {
        len: usize,
    },
}

pub(crate) struct Config<'a, T> {
    pub kind: Kind,
    pub relation: Relation,
    pub profile: &'a Profile<T>,
    /// `ends[item]` is true when `item` closes a round.
    pub ends: &'a [bool],
    /// First item of the round that contains `item`.
    pub round_start: &'a [usize],
    pub leaf: Leaf,
    /// Agents interchangeable at the search root (identical valuations, empty bundles).
    pub fresh: Option<&'a [bool]>,
    pub stop_at_first: bool,
    pub keep_allocations: bool,
}

pub(crate) enum Flow {
    Continue,
    Stop,
}

pub(crate) struct Engine<'a, T> {
    cfg: Config<'a, T>,
    n: usize,
    m: usize,
    stats: Vec<Vec<BundleStats<T>>>,
    undo: Vec<BundleStats<T>>,
    pub assignment: Vec<AgentId>,
    sizes: Vec<usize>,
    changed: Vec<bool>,
    pub found: Vec<Vec<AgentId>>,
    pub count: u128,
    pub weighted: u128,
    /// Depth at which to record prefixes instead of descending.
    collect_at: Option<usize>,
}

impl<'a, T: Scalar> Engine<'a, T> {
    pub fn new(cfg: Config<'a, T>) -> Self {
        let n = cfg.profile.values.len();
        let m = cfg.ends.len();
        Engine {
            cfg,
            n,
            m,
            stats: vec![vec![BundleStats::empty(); n]; n],
            undo: Vec::new(),
            assignment: Vec::with_capacity(m),
            sizes: vec![0; n],
            changed: vec![false; n],
            found: Vec::new(),
            count: 0,
            weighted: 0,
            collect_at: None,
        }
    }

    pub fn collect_prefixes_at(&mut self, depth: usize) {
        self.collect_at = Some(depth);
    }

    fn push(&mut self, agent: AgentId) {
        let item = self.assignment.len();
        for i in 0..self.n {
            let v = &self.cfg.profile.values[i][item];
            let slot = &mut self.stats[i][agent];
            self.undo.push(slot.clone());
            slot.push(v);
        }
        self.assignment.push(agent);
        self.sizes[agent] += 1;
    }

    fn pop(&mut self) {
        let agent = self.assignment.pop().expect("pop on empty assignment");
        self.sizes[agent] -= 1;
        for i in (0..self.n).rev() {
            self.stats[i][agent] = self.undo.pop().expect("undo stack underflow");
        }
    }

    /// Checks the boundary closed by the last pushed item, looking only at
    /// pairs touching a bundle that changed during its round.
    fn boundary_ok(&mut self) -> bool {
        let last = self.assignment.len() - 1;
        let start = self.cfg.round_start[last];
        self.changed.iter_mut().for_each(|c| *c = false);
        for &a in &self.assignment[start..] {
            self.changed[a] = true;
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j || !(self.changed[i] || self.changed[j]) {
                    continue;
                }
                if !pair_holds(self.cfg.kind, self.cfg.relation, &self.stats[i][i], &self.stats[i][j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Pushes `agent` for the next item and checks the boundary if it closes
    /// a round. On failure the push is undone.
    pub fn try_push(&mut self, agent: AgentId) -> bool {
        self.push(agent);
        let item = self.assignment.len() - 1;
        if self.cfg.ends[item] && !self.boundary_ok() {
            self.pop();
            return false;
        }
        true
    }

    /// Agents the next item may go to under symmetry breaking.
    fn allowed(&self, agent: AgentId) -> bool {
        match self.cfg.fresh {
            Some(fresh) if fresh[agent] && self.sizes[agent] == 0 => {
                // only the lowest-index untouched interchangeable agent
                (0..agent).all(|b| !(fresh[b] && self.sizes[b] == 0))
            }
            _ => true,
        }
    }

    fn weight(&self) -> u128 {
        match self.cfg.fresh {
            None => 1,
            Some(fresh) => {
                let total = fresh.iter().filter(|&&f| f).count() as u128;
                let used = (0..self.n).filter(|&a| fresh[a] && self.sizes[a] > 0).count() as u128;
                (0..used).map(|k| total - k).product()
            }
        }
    }

    fn leaf(&mut self) -> Flow {
        let accept = match self.cfg.leaf {
            Leaf::Plain => true,
            Leaf::ParetoOptimal => !crate::fairness::pareto_dominated(self.cfg.profile, &self.assignment),
            Leaf::Repeat { len } => self.replicated_ok(len),
        };
        if !accept {
            return Flow::Continue;
        }
        self.count += 1;
        self.weighted += self.weight();
        if self.cfg.keep_allocations {
            let full = match self.cfg.leaf {
                Leaf::Repeat { len } => (0..self.m).map(|k| self.assignment[k % len]).collect(),
                _ => self.assignment.clone(),
            };
            self.found.push(full);
        }
        if self.cfg.stop_at_first {
            Flow::Stop
        } else {
            Flow::Continue
        }
    }

    fn replicated_ok(&mut self, len: usize) -> bool {
        let mut pushed = 0;
        let mut ok = true;
        while self.assignment.len() < self.m {
            let agent = self.assignment[self.assignment.len() - len];
            if !self.try_push(agent) {
                ok = false;
                break;
            }
            pushed += 1;
        }
        for _ in 0..pushed {
            self.pop();
        }
        ok
    }

    fn depth_limit(&self) -> usize {
        match self.cfg.leaf {
            Leaf::Repeat { len } => len,
            _ => self.m,
        }
    }

    pub fn dfs(&mut self, meter: &mut Meter<'_>) -> Flow {
        let depth = self.assignment.len();
        if self.collect_at == Some(depth) {
            self.found.push(self.assignment.clone());
            return Flow::Continue;
        }
        if depth == self.depth_limit() {
            return self.leaf();
        }
        for agent in 0..self.n {
            if !self.allowed(agent) {
                continue;
            }
            if !meter.tick() {
                return Flow::Stop;
            }
            if self.try_push(agent) {
                let flow = self.dfs(meter);
                self.pop();
                if let Flow::Stop = flow {
                    return Flow::Stop;
                }
            }
        }
        Flow::Continue
    }
}
