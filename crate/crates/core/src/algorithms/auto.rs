use alloc::format;

use super::classes::{binary_weights, extrema, two_type_partition};
use super::{
    solve_generalized_binary, solve_mixed_two_agent, solve_two_agent_chores, solve_two_agent_goods, solve_two_rounds,
    solve_two_types, solve_unimodal,
};
use crate::error::{Error, Result};
use crate::fairness::{check_temporal, Relation};
use crate::instance::{Allocation, Instance, Kind};
use crate::search::{search, Mode, Outcome, SearchQuery, Target, DEFAULT_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutoOutcome {
    /// `solver` names the path taken, e.g. `"gen-binary-chores"` or `"search"`.
    Solved { allocation: Allocation, solver: &'static str },
    /// Exhaustive search finished and no TEF1 allocation exists.
    NoTef1 { nodes_explored: u64 },
}

/// [`solve_auto_with_budget`] with the default search budget.
pub fn solve_auto(instance: &Instance) -> Result<AutoOutcome> {
    solve_auto_with_budget(instance, DEFAULT_BUDGET)
}

/// Tries, in order: generalized binary, two types, unimodal (goods peaked,
/// chores dipped), two agents, two rounds, and finally exhaustive search
/// with `budget` nodes. All but two-rounds work on the flattened instance.
/// Every returned allocation has been checked for TEF1.
pub fn solve_auto_with_budget(instance: &Instance, budget: u64) -> Result<AutoOutcome> {
    let (flat, _) = instance.flatten_single_item();
    let kind = instance.kind();
    let pure = kind != Kind::Mixed;
    let solved = if pure && binary_weights(&flat).is_some() {
        let tag = if kind == Kind::Goods { "gen-binary-goods" } else { "gen-binary-chores" };
        Some((solve_generalized_binary(&flat)?, tag))
    } else if let (true, Some(types)) = (pure, two_type_partition(&flat)) {
        Some((solve_two_types(&flat, &types)?, "two-types"))
    } else if pure && extrema(&flat, kind == Kind::Goods).is_some() {
        Some((solve_unimodal(&flat)?, "unimodal"))
    } else if instance.n_agents() == 2 {
        Some(match kind {
            Kind::Goods => (solve_two_agent_goods(&flat)?.0, "two-agent-goods"),
            Kind::Chores => (solve_two_agent_chores(&flat)?.0, "two-agent-chores"),
            Kind::Mixed => (solve_mixed_two_agent(&flat)?, "two-agent-mixed"),
        })
    } else if pure && instance.n_rounds() == 2 {
        Some((solve_two_rounds(instance)?, "two-rounds"))
    } else {
        None
    };
    let (allocation, solver) = match solved {
        Some(found) => found,
        None => {
            let query = SearchQuery::new(Target::Tef1, Mode::First).with_budget(budget);
            let result = search(instance, &query)?;
            match result.outcome {
                Outcome::Found => (result.allocations[0].clone(), "search"),
                Outcome::None => return Ok(AutoOutcome::NoTef1 { nodes_explored: result.nodes_explored }),
                _ => return Err(Error::Budget { budget, explored: result.nodes_explored }),
            }
        }
    };
    let report = check_temporal(instance, &allocation, Relation::Ef1)?;
    if let Some(w) = report.witness {
        return Err(Error::Internal(format!(
            "{solver} output not TEF1: agent {} envies agent {} at round {}",
            w.envious + 1,
            w.envied + 1,
            w.round
        )));
    }
    Ok(AutoOutcome::Solved { allocation, solver })
}
