//! Envy-based fairness checks, Pareto optimality and p-mean welfare.
//!
//! Pairwise relations for agent `i` towards agent `j`:
//!
//! | kind   | EF1 (some item removed)                    | EFX (every item removed)  |
//! |--------|--------------------------------------------|---------------------------|
//! | goods  | a good from `A_j`                          | every good of `A_j`       |
//! | chores | a chore from `A_i`                         | every chore of `A_i`      |
//! | mixed  | one item of `A_i ∪ A_j`, from its own side | every item of `A_i ∪ A_j` |
//!
//! Both relations also hold whenever `i` does not envy `j` at all, which is
//! what makes them vacuous when the candidate set is empty.

mod pareto;
mod welfare;

use alloc::vec;
use alloc::vec::Vec;

pub(crate) use pareto::{allocation_count, dominated as pareto_dominated};
pub use pareto::{is_pareto_optimal, pareto_dominates, DEFAULT_PO_LIMIT};
pub use welfare::{p_mean_welfare, PMean, Welfare, WELFARE_PRECISION_BITS};

use crate::error::{input, Result};
use crate::instance::{Allocation, Instance, PrefixBundles};
use crate::rational::Rational;
use crate::scaled::{pair_holds, BundleStats};
use crate::AgentId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Ef,
    Ef1,
    Efx,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Ef => "ef",
            Relation::Ef1 => "ef1",
            Relation::Efx => "efx",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scope {
    /// Only the complete allocation.
    Final,
    /// Every round boundary `1..=T`.
    Temporal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FairnessRelation {
    pub relation: Relation,
    pub scope: Scope,
}

impl FairnessRelation {
    pub const TEF1: FairnessRelation = FairnessRelation { relation: Relation::Ef1, scope: Scope::Temporal };
    pub const TEFX: FairnessRelation = FairnessRelation { relation: Relation::Efx, scope: Scope::Temporal };
}

/// A violated pair: after round `round`, `envious` envies `envied` beyond
/// what the relation tolerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub round: usize,
    pub envious: AgentId,
    pub envied: AgentId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FairnessReport {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl FairnessReport {
    fn pass() -> FairnessReport {
        FairnessReport { holds: true, witness: None }
    }

    fn fail(witness: Witness) -> FairnessReport {
        FairnessReport { holds: false, witness: Some(witness) }
    }
}

/// Statistics `stats[i][j]` of agent `i`'s values over bundle `j`.
fn stats_of(instance: &Instance, bundles: &[Vec<usize>]) -> Result<Vec<Vec<BundleStats<Rational>>>> {
    let n = instance.n_agents();
    if bundles.len() != n {
        return Err(input(alloc::format!("expected {n} bundles, found {}", bundles.len())));
    }
    let mut seen = vec![false; instance.n_items()];
    for &item in bundles.iter().flatten() {
        match seen.get_mut(item) {
            None => return Err(input(alloc::format!("unknown item id {item}"))),
            Some(true) => return Err(input(alloc::format!("item {item} appears in two bundles"))),
            Some(s) => *s = true,
        }
    }
    let mut stats = vec![vec![BundleStats::empty(); n]; n];
    for (i, row) in stats.iter_mut().enumerate() {
        for (j, bundle) in bundles.iter().enumerate() {
            for &item in bundle {
                row[j].push(instance.value(i, item));
            }
        }
    }
    Ok(stats)
}

fn first_violation(
    instance: &Instance,
    relation: Relation,
    stats: &[Vec<BundleStats<Rational>>],
) -> Option<(AgentId, AgentId)> {
    let n = stats.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .find(|&(i, j)| !pair_holds(instance.kind(), relation, &stats[i][i], &stats[i][j]))
}

/// Checks `relation` between every ordered pair of the given bundles.
pub fn check_pairwise(instance: &Instance, bundles: &PrefixBundles, relation: Relation) -> Result<FairnessReport> {
    let stats = stats_of(instance, &bundles.bundles)?;
    Ok(match first_violation(instance, relation, &stats) {
        None => FairnessReport::pass(),
        Some((envious, envied)) => FairnessReport::fail(Witness { round: bundles.round, envious, envied }),
    })
}

/// Checks `relation` on the cumulative allocation after every round.
///
/// The witness is the first violation in `(round, envious, envied)` order.
pub fn check_temporal(instance: &Instance, alloc: &Allocation, relation: Relation) -> Result<FairnessReport> {
    alloc.validate(instance)?;
    let n = instance.n_agents();
    let mut stats = vec![vec![BundleStats::<Rational>::empty(); n]; n];
    for t in 1..=instance.n_rounds() {
        for item in instance.round_items(t) {
            let j = alloc.assignment[item];
            for (i, row) in stats.iter_mut().enumerate() {
                row[j].push(instance.value(i, item));
            }
        }
        if let Some((envious, envied)) = first_violation(instance, relation, &stats) {
            return Ok(FairnessReport::fail(Witness { round: t, envious, envied }));
        }
    }
    Ok(FairnessReport::pass())
}

/// Dispatches on scope: [`check_temporal`] or [`check_pairwise`] at round `T`.
pub fn check(instance: &Instance, alloc: &Allocation, relation: FairnessRelation) -> Result<FairnessReport> {
    match relation.scope {
        Scope::Temporal => check_temporal(instance, alloc, relation.relation),
        Scope::Final => {
            let bundles = instance.prefix_bundles(alloc, instance.n_rounds())?;
            check_pairwise(instance, &bundles, relation.relation)
        }
    }
}

/// Shorthand for `check_temporal(instance, alloc, Relation::Ef1).holds`.
pub fn is_tef1(instance: &Instance, alloc: &Allocation) -> Result<bool> {
    Ok(check_temporal(instance, alloc, Relation::Ef1)?.holds)
}
