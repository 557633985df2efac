//! Exhaustive backtracking over allocations, pruned at round boundaries.
//!
//! Items are assigned in id order, each to agents `0..n` in index order, so
//! allocations come out in lexicographic order of their assignment vectors.
//! After the last item of a round the cumulative allocation must satisfy
//! the target relation; a failing prefix can never be completed into a
//! temporally fair allocation, so the whole subtree is skipped. Mid-round
//! prefixes are not checked.
//!
//! A search runs against a [`SharedBudget`] of nodes (one node is one item
//! tentatively given to one agent). Parallel callers split the tree with
//! [`Plan::frontier`], run each prefix with [`Plan::run`] and combine the
//! parts with [`merge`]; the merged outcome and allocation list do not depend
//! on how the work was split.

mod budget;
mod engine;
mod tail;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use budget::SharedBudget;
pub use tail::{appendix_tail_search, tail_values, TailEnvy, TAIL_GOODS};

use crate::error::{input, Error, Result};
use crate::fairness::{allocation_count, Relation, DEFAULT_PO_LIMIT};
use crate::instance::{Allocation, Instance};
use crate::scaled::{scale, Profile, Scalar, Scaled};
use crate::AgentId;
use budget::Meter;
use engine::{Config, Engine, Leaf};

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Tef1,
    Tefx,
    /// TEF1 allocations that are also Pareto-optimal (checked at the leaves).
    Tef1AndPo,
    /// TEF1 allocations that give the `k`-th item of every round to the
    /// same agent. Every round must have the same number of items.
    RepetitiveTef1,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Tef1 => "tef1",
            Target::Tefx => "tefx",
            Target::Tef1AndPo => "tef1po",
            Target::RepetitiveTef1 => "repetitive",
        }
    }

    fn relation(self) -> Relation {
        match self {
            Target::Tefx => Relation::Efx,
            _ => Relation::Ef1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Stop at the lexicographically first solution.
    First,
    /// Every solution.
    All,
    /// Only count solutions.
    Count,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchQuery {
    pub target: Target,
    pub mode: Mode,
    pub budget: u64,
    /// On identical valuations, only explore allocations in which
    /// not-yet-used agents are introduced in index order. `count` then
    /// counts those representatives and `weighted_count` the full total.
    pub symmetry_breaking: bool,
    /// Cap on `n^m` for the Pareto filter of [`Target::Tef1AndPo`].
    pub po_limit: Option<u128>,
}

impl SearchQuery {
    pub fn new(target: Target, mode: Mode) -> SearchQuery {
        SearchQuery { target, mode, budget: DEFAULT_BUDGET, symmetry_breaking: false, po_limit: None }
    }

    pub fn with_budget(mut self, budget: u64) -> SearchQuery {
        self.budget = budget;
        self
    }

    pub fn with_symmetry_breaking(mut self, on: bool) -> SearchQuery {
        self.symmetry_breaking = on;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Found,
    /// The whole tree was explored within budget and holds no solution.
    None,
    BudgetExceeded,
    /// A subtree stopped because an earlier subtree already answered a
    /// `First` query. Never returned by [`search`] or [`merge`].
    Cancelled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: Outcome,
    /// In lexicographic order; empty in `Count` mode, at most one in `First`.
    pub allocations: Vec<Allocation>,
    pub count: u128,
    pub weighted_count: u128,
    pub nodes_explored: u64,
}

impl SearchResult {
    fn empty(outcome: Outcome) -> SearchResult {
        SearchResult { outcome, allocations: Vec::new(), count: 0, weighted_count: 0, nodes_explored: 0 }
    }

    pub fn found(&self) -> bool {
        self.outcome == Outcome::Found
    }
}

/// A validated search, ready to run whole or split into subtrees.
pub struct Plan<'a> {
    instance: &'a Instance,
    query: SearchQuery,
    scaled: Scaled,
    ends: Vec<bool>,
    round_start: Vec<usize>,
    start: Vec<AgentId>,
    fresh: Option<Vec<bool>>,
    leaf: Leaf,
}

/// Validates `query` (and the optional round-aligned `start` prefix, which
/// must itself satisfy the target relation at each of its boundaries).
pub fn plan<'a>(instance: &'a Instance, query: &SearchQuery, start: Option<&Allocation>) -> Result<Plan<'a>> {
    let m = instance.n_items();
    let mut ends = vec![false; m];
    let mut round_start = vec![0; m];
    for t in 1..=instance.n_rounds() {
        let items = instance.round_items(t);
        if let Some(last) = items.clone().last() {
            ends[last] = true;
        }
        for item in items.clone() {
            round_start[item] = items.start;
        }
    }
    let start: Vec<AgentId> = start.map(|a| a.assignment.clone()).unwrap_or_default();
    if !instance.prefix_lengths().contains(&start.len()) {
        return Err(Error::Precondition(format!(
            "a partial allocation must cover whole rounds; {} items do not end a round",
            start.len()
        )));
    }
    if let Some(agent) = start.iter().find(|&&a| a >= instance.n_agents()) {
        return Err(input(format!("partial allocation names unknown agent {agent}")));
    }
    let leaf = match query.target {
        Target::Tef1 | Target::Tefx => Leaf::Plain,
        Target::Tef1AndPo => {
            let limit = query.po_limit.unwrap_or(DEFAULT_PO_LIMIT);
            let required = allocation_count(instance);
            if required > limit {
                return Err(Error::EnumerationCap { required, limit });
            }
            Leaf::ParetoOptimal
        }
        Target::RepetitiveTef1 => {
            let len = instance.rounds()[0].len();
            if instance.rounds().iter().any(|r| r.len() != len) || len == 0 {
                return Err(input("a repetitive allocation needs rounds of equal, nonzero size"));
            }
            if !start.is_empty() {
                return Err(input("a repetitive search cannot start from a partial allocation"));
            }
            Leaf::Repeat { len }
        }
    };
    let fresh = (query.symmetry_breaking && instance.has_identical_valuations())
        .then(|| (0..instance.n_agents()).map(|a| !start.contains(&a)).collect());
    let plan = Plan { instance, query: query.clone(), scaled: scale(instance), ends, round_start, start, fresh, leaf };
    plan.check_start()?;
    Ok(plan)
}

/// Runs `query` from scratch.
pub fn search(instance: &Instance, query: &SearchQuery) -> Result<SearchResult> {
    let plan = plan(instance, query, None)?;
    Ok(plan.run(&[], &SharedBudget::new(query.budget), 0))
}

/// Continues from a fixed allocation of the first `t` rounds. The partial
/// allocation must be fair (for the target relation) at every boundary up
/// to `t`, otherwise a precondition error is returned.
pub fn search_from_partial(instance: &Instance, partial: &Allocation, query: &SearchQuery) -> Result<SearchResult> {
    let plan = plan(instance, query, Some(partial))?;
    Ok(plan.run(&[], &SharedBudget::new(query.budget), 0))
}

impl Plan<'_> {
    pub fn query(&self) -> &SearchQuery {
        &self.query
    }

    pub fn instance(&self) -> &Instance {
        self.instance
    }

    fn config<'b, T>(&'b self, profile: &'b Profile<T>, keep: bool, stop: bool) -> Config<'b, T> {
        Config {
            kind: self.instance.kind(),
            relation: self.query.target.relation(),
            profile,
            ends: &self.ends,
            round_start: &self.round_start,
            leaf: self.leaf,
            fresh: self.fresh.as_deref(),
            stop_at_first: stop,
            keep_allocations: keep,
        }
    }

    fn check_start(&self) -> Result<()> {
        let ok = match &self.scaled {
            Scaled::Small(p) => self.replay_start(p),
            Scaled::Big(p) => self.replay_start(p),
        };
        match ok {
            Ok(()) => Ok(()),
            Err(round) => Err(Error::Precondition(format!(
                "the partial allocation is not {} at round {round}",
                self.query.target.relation().name().to_uppercase()
            ))),
        }
    }

    fn replay_start<T: Scalar>(&self, profile: &Profile<T>) -> core::result::Result<(), usize> {
        let mut engine = Engine::new(self.config(profile, false, false));
        for (item, &agent) in self.start.iter().enumerate() {
            if !engine.try_push(agent) {
                return Err(self.instance.round_of(item));
            }
        }
        Ok(())
    }

    /// All valid prefixes `depth` items past the start, in lexicographic
    /// order (fewer when the tree is shallower). Subtree runs over these
    /// prefixes partition the search.
    pub fn frontier(&self, depth: usize) -> Vec<Vec<AgentId>> {
        match &self.scaled {
            Scaled::Small(p) => self.frontier_in(p, depth),
            Scaled::Big(p) => self.frontier_in(p, depth),
        }
    }

    fn frontier_in<T: Scalar>(&self, profile: &Profile<T>, depth: usize) -> Vec<Vec<AgentId>> {
        let limit = match self.leaf {
            Leaf::Repeat { len } => len,
            _ => self.instance.n_items(),
        };
        let at = (self.start.len() + depth).min(limit);
        let mut engine = Engine::new(self.config(profile, false, false));
        for &agent in &self.start {
            engine.try_push(agent);
        }
        engine.collect_prefixes_at(at);
        let unlimited = SharedBudget::new(u64::MAX);
        let mut meter = Meter::new(&unlimited, 0);
        engine.dfs(&mut meter);
        let skip = self.start.len();
        engine.found.into_iter().map(|p| p[skip..].to_vec()).collect()
    }

    /// Runs the subtree below `prefix` (items right after the start).
    /// `subtree` is the prefix's position in [`Plan::frontier`]; it only
    /// matters for cancellation of `First` queries.
    pub fn run(&self, prefix: &[AgentId], budget: &SharedBudget, subtree: usize) -> SearchResult {
        match &self.scaled {
            Scaled::Small(p) => self.run_in(p, prefix, budget, subtree),
            Scaled::Big(p) => self.run_in(p, prefix, budget, subtree),
        }
    }

    fn run_in<T: Scalar>(
        &self,
        profile: &Profile<T>,
        prefix: &[AgentId],
        budget: &SharedBudget,
        subtree: usize,
    ) -> SearchResult {
        let keep = self.query.mode != Mode::Count;
        let stop = self.query.mode == Mode::First;
        let mut engine = Engine::new(self.config(profile, keep, stop));
        for &agent in self.start.iter().chain(prefix) {
            if agent >= self.instance.n_agents() || !engine.try_push(agent) {
                return SearchResult::empty(Outcome::None);
            }
        }
        let mut meter = Meter::new(budget, subtree);
        engine.dfs(&mut meter);
        let outcome = if engine.count > 0 && (stop || !(meter.exceeded || meter.cancelled)) {
            if stop {
                budget.cancel_after(subtree);
            }
            Outcome::Found
        } else if meter.cancelled {
            Outcome::Cancelled
        } else if meter.exceeded {
            Outcome::BudgetExceeded
        } else {
            Outcome::None
        };
        SearchResult {
            outcome,
            allocations: engine.found.into_iter().map(Allocation::new).collect(),
            count: engine.count,
            weighted_count: engine.weighted,
            nodes_explored: meter.explored,
        }
    }
}

/// Combines subtree results given in frontier order.
pub fn merge(mode: Mode, parts: Vec<SearchResult>) -> SearchResult {
    let nodes: u64 = parts.iter().map(|p| p.nodes_explored).sum();
    if mode == Mode::First {
        for part in parts {
            match part.outcome {
                Outcome::Found | Outcome::BudgetExceeded => return SearchResult { nodes_explored: nodes, ..part },
                Outcome::None | Outcome::Cancelled => {}
            }
        }
        return SearchResult { nodes_explored: nodes, ..SearchResult::empty(Outcome::None) };
    }
    let mut merged = SearchResult::empty(Outcome::None);
    merged.nodes_explored = nodes;
    let mut exceeded = false;
    for part in parts {
        exceeded |= matches!(part.outcome, Outcome::BudgetExceeded | Outcome::Cancelled);
        merged.allocations.extend(part.allocations);
        merged.count += part.count;
        merged.weighted_count += part.weighted_count;
    }
    merged.outcome = if exceeded {
        Outcome::BudgetExceeded
    } else if merged.count > 0 {
        Outcome::Found
    } else {
        Outcome::None
    };
    merged
}
