//! Instances, allocations and cumulative prefixes.
//!
//! Items are numbered `0..m` in arrival order, so every round holds a
//! contiguous block of ids and the rounds appear in id order. Rounds are
//! numbered `1..=T`; "boundary `t`" means the moment right after round `t`,
//! and boundary `0` is the empty prefix.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::{Signed, Zero};

use crate::error::{input, Result};
use crate::rational::Rational;
use crate::{AgentId, ItemId};

/// Sign restriction on the valuations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// All values are `>= 0`.
    Goods,
    /// All values are `<= 0`.
    Chores,
    /// Unrestricted values; EF1 removes one item from either bundle.
    Mixed,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Goods => "goods",
            Kind::Chores => "chores",
            Kind::Mixed => "mixed",
        }
    }

    pub fn from_name(name: &str) -> Option<Kind> {
        match name {
            "goods" | "g" => Some(Kind::Goods),
            "chores" | "c" => Some(Kind::Chores),
            "mixed" | "m" => Some(Kind::Mixed),
            _ => None,
        }
    }
}

/// An informed online fair division instance with additive valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    n_agents: usize,
    kind: Kind,
    rounds: Vec<Vec<ItemId>>,
    /// `values[agent][item]`
    values: Vec<Vec<Rational>>,
    /// `prefix_len[t] = |O^t|`, with `prefix_len[0] = 0`.
    prefix_len: Vec<usize>,
}

impl Instance {
    /// Validates and builds an instance.
    ///
    /// `rounds[t]` lists the ids arriving in round `t + 1`; the rounds must
    /// cover `0..m` exactly once, in arrival order. Goods and chores
    /// instances are sign-checked here.
    pub fn new(n_agents: usize, kind: Kind, rounds: Vec<Vec<ItemId>>, values: Vec<Vec<Rational>>) -> Result<Instance> {
        if n_agents == 0 {
            return Err(input("an instance needs at least one agent"));
        }
        if rounds.is_empty() {
            return Err(input("an instance needs at least one round"));
        }
        if values.len() != n_agents {
            return Err(input(format!("expected {n_agents} valuation rows, found {}", values.len())));
        }
        let m: usize = rounds.iter().map(Vec::len).sum();
        let mut rounds = rounds;
        let mut prefix_len = Vec::with_capacity(rounds.len() + 1);
        prefix_len.push(0);
        let mut next = 0;
        for (t, round) in rounds.iter_mut().enumerate() {
            round.sort_unstable();
            for (k, &item) in round.iter().enumerate() {
                if item != next + k {
                    return Err(input(format!(
                        "round {} must hold items {}..{} in arrival order, found item {item}",
                        t + 1,
                        next,
                        next + round.len()
                    )));
                }
            }
            next += round.len();
            prefix_len.push(next);
        }
        debug_assert_eq!(next, m);
        for (agent, row) in values.iter().enumerate() {
            if row.len() != m {
                return Err(input(format!("agent {agent} has {} values but the instance has {m} items", row.len())));
            }
            for (item, v) in row.iter().enumerate() {
                let bad = match kind {
                    Kind::Goods => v.is_negative(),
                    Kind::Chores => v.is_positive(),
                    Kind::Mixed => false,
                };
                if bad {
                    return Err(input(format!(
                        "agent {agent} values item {item} at {} which violates the {} sign constraint",
                        crate::rational::format(v),
                        kind.name()
                    )));
                }
            }
        }
        Ok(Instance { n_agents, kind, rounds, values, prefix_len })
    }

    /// One item per round, items in column order of `values`.
    pub fn single_item_rounds(kind: Kind, values: Vec<Vec<Rational>>) -> Result<Instance> {
        let m = values.first().map_or(0, Vec::len);
        let rounds = if m == 0 { vec![Vec::new()] } else { (0..m).map(|i| vec![i]).collect() };
        Instance::new(values.len(), kind, rounds, values)
    }

    /// Every agent shares the valuation `row`.
    pub fn identical(n_agents: usize, kind: Kind, rounds: Vec<Vec<ItemId>>, row: Vec<Rational>) -> Result<Instance> {
        Instance::new(n_agents, kind, rounds, vec![row; n_agents])
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn n_items(&self) -> usize {
        *self.prefix_len.last().unwrap_or(&0)
    }

    pub fn n_rounds(&self) -> usize {
        self.rounds.len()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rounds(&self) -> &[Vec<ItemId>] {
        &self.rounds
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    pub fn value(&self, agent: AgentId, item: ItemId) -> &Rational {
        &self.values[agent][item]
    }

    /// `|O^t|`, the number of items that have arrived after round `t`.
    pub fn prefix_len(&self, t: usize) -> usize {
        self.prefix_len[t]
    }

    /// Cumulative item counts at boundaries `0..=T`.
    pub fn prefix_lengths(&self) -> &[usize] {
        &self.prefix_len
    }

    /// Item ids of round `t` (1-based).
    pub fn round_items(&self, t: usize) -> Range<ItemId> {
        self.prefix_len[t - 1]..self.prefix_len[t]
    }

    /// Round (1-based) in which `item` arrives.
    pub fn round_of(&self, item: ItemId) -> usize {
        self.prefix_len.partition_point(|&len| len <= item)
    }

    pub fn is_single_item_rounds(&self) -> bool {
        self.rounds.iter().all(|r| r.len() == 1)
    }

    pub fn has_identical_valuations(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// Same item set and order, new kind; re-validates signs.
    pub fn with_kind(&self, kind: Kind) -> Result<Instance> {
        Instance::new(self.n_agents, kind, self.rounds.clone(), self.values.clone())
    }

    /// Additive value of `items` for `agent`.
    pub fn bundle_value(&self, agent: AgentId, items: &[ItemId]) -> Result<Rational> {
        if agent >= self.n_agents {
            return Err(input(format!("agent {agent} out of range (n = {})", self.n_agents)));
        }
        let row = &self.values[agent];
        let mut total = Rational::zero();
        for &item in items {
            let v = row.get(item).ok_or_else(|| input(format!("unknown item id {item} (m = {})", row.len())))?;
            total += v;
        }
        Ok(total)
    }

    /// Cumulative bundles `A_i^t = A_i ∩ O^t`.
    pub fn prefix_bundles(&self, alloc: &Allocation, t: usize) -> Result<PrefixBundles> {
        if t == 0 || t > self.n_rounds() {
            return Err(input(format!("round {t} out of range 1..={}", self.n_rounds())));
        }
        alloc.validate(self)?;
        let mut bundles = vec![Vec::new(); self.n_agents];
        for (item, &agent) in alloc.assignment[..self.prefix_len[t]].iter().enumerate() {
            bundles[agent].push(item);
        }
        Ok(PrefixBundles { round: t, bundles })
    }

    /// Each agent's value for their own bundle.
    pub fn utilities(&self, alloc: &Allocation) -> Result<Vec<Rational>> {
        alloc.validate(self)?;
        let mut utils = vec![Rational::zero(); self.n_agents];
        for (item, &agent) in alloc.assignment.iter().enumerate() {
            utils[agent] += &self.values[agent][item];
        }
        Ok(utils)
    }

    /// Splits every round into single-item rounds, keeping ids and values.
    ///
    /// The returned map sends each original boundary `t` to the flattened
    /// boundary `t'` with `O^t = Õ^{t'}`. An allocation carries over
    /// unchanged, and TEF1 of the flattened instance implies TEF1 of the
    /// original because the original boundaries are a subset of the new ones.
    pub fn flatten_single_item(&self) -> (Instance, BoundaryMap) {
        let m = self.n_items();
        let rounds = if m == 0 { vec![Vec::new()] } else { (0..m).map(|i| vec![i]).collect() };
        let flat = Instance::new(self.n_agents, self.kind, rounds, self.values.clone())
            .expect("flattening preserves validity");
        let targets = self.prefix_len[1..].to_vec();
        (flat, BoundaryMap { targets })
    }
}

/// Original boundary `t` ↦ flattened boundary `t'` (both 1-based; `0` means
/// the empty prefix, which only occurs for leading empty rounds).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMap {
    targets: Vec<usize>,
}

impl BoundaryMap {
    pub fn map(&self, t: usize) -> usize {
        self.targets[t - 1]
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn is_identity(&self) -> bool {
        self.targets.iter().enumerate().all(|(k, &t)| t == k + 1)
    }
}

/// A total assignment of items to agents, indexed by item id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Allocation {
    pub assignment: Vec<AgentId>,
}

impl Allocation {
    pub fn new(assignment: Vec<AgentId>) -> Allocation {
        Allocation { assignment }
    }

    pub fn from_bundles(n_items: usize, bundles: &[Vec<ItemId>]) -> Result<Allocation> {
        let mut assignment = vec![usize::MAX; n_items];
        for (agent, bundle) in bundles.iter().enumerate() {
            for &item in bundle {
                let slot = assignment.get_mut(item).ok_or_else(|| input(format!("unknown item id {item}")))?;
                if *slot != usize::MAX {
                    return Err(input(format!("item {item} appears in two bundles")));
                }
                *slot = agent;
            }
        }
        if let Some(item) = assignment.iter().position(|&a| a == usize::MAX) {
            return Err(input(format!("item {item} is not allocated")));
        }
        Ok(Allocation { assignment })
    }

    pub fn validate(&self, instance: &Instance) -> Result<()> {
        if self.assignment.len() != instance.n_items() {
            return Err(input(format!(
                "allocation covers {} items but the instance has {}",
                self.assignment.len(),
                instance.n_items()
            )));
        }
        if let Some((item, &agent)) = self.assignment.iter().enumerate().find(|(_, &a)| a >= instance.n_agents()) {
            return Err(input(format!("item {item} assigned to unknown agent {agent}")));
        }
        Ok(())
    }

    pub fn bundles(&self, n_agents: usize) -> Vec<Vec<ItemId>> {
        let mut bundles = vec![Vec::new(); n_agents];
        for (item, &agent) in self.assignment.iter().enumerate() {
            bundles[agent].push(item);
        }
        bundles
    }
}

/// The cumulative allocation after round `round`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixBundles {
    pub round: usize,
    pub bundles: Vec<Vec<ItemId>>,
}

impl PrefixBundles {
    /// Arbitrary bundles, e.g. a hand-built allocation; `round` is only used
    /// to label witnesses.
    pub fn new(round: usize, bundles: Vec<Vec<ItemId>>) -> PrefixBundles {
        PrefixBundles { round, bundles }
    }
}
