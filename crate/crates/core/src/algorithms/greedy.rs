use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::classes::{binary_weights, extrema};
use crate::error::{class, Error, Result};
use crate::instance::{Allocation, Instance, Kind};
use crate::rational::Rational;

fn goods_or_chores(instance: &Instance, solver: &'static str) -> Result<()> {
    if instance.kind() == Kind::Mixed {
        return Err(class(solver, "needs goods or chores, got mixed"));
    }
    Ok(())
}

/// Two item types. Type-1 items go round-robin to agents `1, 2, …, n`,
/// type-2 items round-robin to `n, n-1, …, 1`; the two counters wrap
/// independently.
///
/// `types[item]` must be 1 or 2, and each agent must value all items of a
/// type equally.
pub fn solve_two_types(instance: &Instance, types: &[u8]) -> Result<Allocation> {
    const SOLVER: &str = "two-types";
    goods_or_chores(instance, SOLVER)?;
    let (n, m) = (instance.n_agents(), instance.n_items());
    if types.len() != m {
        return Err(class(SOLVER, format!("partition covers {} items, instance has {m}", types.len())));
    }
    let mut first: [Option<usize>; 2] = [None, None];
    for (item, &ty) in types.iter().enumerate() {
        if ty != 1 && ty != 2 {
            return Err(class(SOLVER, format!("item {item} has type {ty}, expected 1 or 2")));
        }
        match first[usize::from(ty - 1)] {
            None => first[usize::from(ty - 1)] = Some(item),
            Some(rep) => {
                if let Some(i) = (0..n).find(|&i| instance.value(i, item) != instance.value(i, rep)) {
                    return Err(class(
                        SOLVER,
                        format!("agent {} values items {rep} and {item} of type {ty} differently", i + 1),
                    ));
                }
            }
        }
    }
    let (mut alpha, mut beta) = (0, n - 1);
    let assignment = types
        .iter()
        .map(|&ty| {
            if ty == 1 {
                let agent = alpha;
                alpha = (alpha + 1) % n;
                agent
            } else {
                let agent = beta;
                beta = (beta + n - 1) % n;
                agent
            }
        })
        .collect();
    Ok(Allocation::new(assignment))
}

/// Generalized binary valuations (`v_i(o_j) ∈ {0, p_j}`).
///
/// Goods: a good nobody wants goes to agent 1, otherwise to the agent with
/// the least valuable own bundle among those who want it. Chores: a chore
/// that some agent does not mind goes to the first such agent, otherwise to
/// the agent with the most valuable own bundle.
pub fn solve_generalized_binary(instance: &Instance) -> Result<Allocation> {
    const SOLVER: &str = "gen-binary";
    goods_or_chores(instance, SOLVER)?;
    if binary_weights(instance).is_none() {
        return Err(class(SOLVER, "some item has two different nonzero values"));
    }
    let n = instance.n_agents();
    let mut own = vec![Rational::zero(); n];
    let mut assignment = Vec::with_capacity(instance.n_items());
    for item in 0..instance.n_items() {
        let v = |i: usize| instance.value(i, item);
        let agent = match instance.kind() {
            Kind::Goods => {
                (0..n).filter(|&i| v(i).is_positive()).min_by(|&a, &b| own[a].cmp(&own[b]).then(a.cmp(&b))).unwrap_or(0)
            }
            _ => match (0..n).find(|&i| v(i).is_zero()) {
                Some(i) => i,
                None => (0..n).min_by(|&a, &b| own[b].cmp(&own[a]).then(a.cmp(&b))).unwrap_or(0),
            },
        };
        own[agent] += v(agent);
        assignment.push(agent);
    }
    Ok(Allocation::new(assignment))
}

/// Single-peaked goods or single-dipped chores: each item goes to the agent
/// with the fewest items so far, lowest index first, which is plain
/// round-robin `1, …, n`.
pub fn solve_unimodal(instance: &Instance) -> Result<Allocation> {
    const SOLVER: &str = "unimodal";
    let (wanted, reverse, noun) = match instance.kind() {
        Kind::Goods => (true, false, "goods"),
        Kind::Chores => (false, true, "chores"),
        Kind::Mixed => return Err(class(SOLVER, "needs goods or chores, got mixed")),
    };
    if extrema(instance, wanted).is_none() {
        if extrema(instance, reverse).is_some() {
            return Err(Error::Unsupported(format!(
                "{} {noun} have no known polynomial TEF1 algorithm",
                if reverse { "single-dipped" } else { "single-peaked" }
            )));
        }
        return Err(class(
            SOLVER,
            format!("{noun} valuations are not {}", if wanted { "single-peaked" } else { "single-dipped" }),
        ));
    }
    let n = instance.n_agents();
    Ok(Allocation::new((0..instance.n_items()).map(|item| item % n).collect()))
}
