use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::SolverTrace;
use crate::error::{class, Error, Result};
use crate::fairness::{check_temporal, Relation};
use crate::instance::{Allocation, Instance, Kind};
use crate::rational::{abs, Rational};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// Agent 1 takes the chore unless it envies within the window.
    Chores,
    /// Agent 1 takes the good only if it envies within the window.
    Goods,
}

/// The window algorithm over `values[agent][item]`, items in id order.
fn window_algorithm(values: &[Vec<Rational>], rule: Rule) -> SolverTrace {
    let m = values.first().map_or(0, Vec::len);
    let mut trace = SolverTrace::default();
    let mut assignment = Vec::with_capacity(m);
    // w[i][j] = v_i(window part of A_j)
    let mut w = [[Rational::zero(), Rational::zero()], [Rational::zero(), Rational::zero()]];
    let mut start = 0;
    for t in 1..=m {
        let item = t - 1;
        let one_envies = w[0][0] < w[0][1];
        let agent = match rule {
            Rule::Chores => usize::from(one_envies),
            Rule::Goods => usize::from(!one_envies),
        };
        assignment.push(agent);
        trace.choices.push(agent);
        for (i, row) in w.iter_mut().enumerate() {
            row[agent] += &values[i][item];
        }
        if w[0][0] < w[0][1] && w[1][1] < w[1][0] {
            for a in &mut assignment[start..t] {
                *a = 1 - *a;
            }
            for row in &mut w {
                row.swap(0, 1);
            }
            trace.swaps.push(t);
        }
        if w[0][0] >= w[0][1] && w[1][1] >= w[1][0] {
            start = t;
            w = [[Rational::zero(), Rational::zero()], [Rational::zero(), Rational::zero()]];
            trace.resets.push(t);
        }
    }
    trace
}

fn require_two(instance: &Instance, solver: &'static str) -> Result<()> {
    if instance.n_agents() != 2 {
        return Err(class(solver, format!("needs exactly 2 agents, got {}", instance.n_agents())));
    }
    Ok(())
}

/// Two agents, chores. Agent 1 takes the chore unless it envies agent 2
/// within the current window; mutual envy swaps the window bundles and an
/// envy-free window is closed.
pub fn solve_two_agent_chores(instance: &Instance) -> Result<(Allocation, SolverTrace)> {
    require_two(instance, "two-agent-chores")?;
    if instance.kind() != Kind::Chores {
        return Err(class("two-agent-chores", format!("needs chores, got {}", instance.kind().name())));
    }
    let trace = window_algorithm(instance.values(), Rule::Chores);
    Ok((trace.replay(), trace))
}

/// Two agents, goods. Mirror of the chores rule: agent 1 takes the good only
/// if it strictly envies agent 2 within the current window. The result is
/// checked for TEF1 before it is returned.
pub fn solve_two_agent_goods(instance: &Instance) -> Result<(Allocation, SolverTrace)> {
    require_two(instance, "two-agent-goods")?;
    if instance.kind() != Kind::Goods {
        return Err(class("two-agent-goods", format!("needs goods, got {}", instance.kind().name())));
    }
    let trace = window_algorithm(instance.values(), Rule::Goods);
    let alloc = trace.replay();
    let report = check_temporal(instance, &alloc, Relation::Ef1)?;
    if let Some(w) = report.witness {
        return Err(Error::Internal(format!(
            "two-agent goods output not TEF1: agent {} envies agent {} at round {}",
            w.envious + 1,
            w.envied + 1,
            w.round
        )));
    }
    Ok((alloc, trace))
}

/// Two agents, items of any sign.
///
/// An item one agent values positively and the other negatively goes to the
/// agent who likes it. Every other item is a good for both (both values
/// `>= 0`) or a chore for both (both `<= 0`, one of them negative); these
/// are allocated by the goods algorithm under absolute values, after which
/// the two agents trade their chores. On a goods instance nothing is
/// pre-assigned or traded, so the output is the goods algorithm's.
pub fn solve_mixed_two_agent(instance: &Instance) -> Result<Allocation> {
    require_two(instance, "two-agent-mixed")?;
    let m = instance.n_items();
    let mut assignment = alloc::vec![0; m];
    let mut rest = Vec::new();
    for (item, slot) in assignment.iter_mut().enumerate() {
        let (a, b) = (instance.value(0, item), instance.value(1, item));
        if a.is_positive() && b.is_negative() {
            *slot = 0;
        } else if a.is_negative() && b.is_positive() {
            *slot = 1;
        } else {
            rest.push(item);
        }
    }
    let values: Vec<Vec<Rational>> =
        (0..2).map(|i| rest.iter().map(|&item| abs(instance.value(i, item))).collect()).collect();
    let sub = Instance::single_item_rounds(Kind::Goods, values)?;
    let (sub_alloc, _) = solve_two_agent_goods(&sub)?;
    for (k, &item) in rest.iter().enumerate() {
        let agent = sub_alloc.assignment[k];
        let chore = (0..2).any(|i| instance.value(i, item).is_negative());
        assignment[item] = if chore { 1 - agent } else { agent };
    }
    Ok(Allocation::new(assignment))
}
