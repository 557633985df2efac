use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{class, Result};
use crate::instance::{Allocation, Instance, Kind};
use crate::rational::Rational;
use crate::AgentId;

const SOLVER: &str = "two-rounds";

/// Exactly two rounds. Round 1 is allocated by round-robin picking in order
/// `1, …, n`, round 2 in order `n, …, 1`; each pick takes the picker's most
/// valued remaining item, lowest id on ties.
///
/// For chores each round is padded with zero-valued dummy chores up to a
/// multiple of `n`, so that every agent makes the same number of picks;
/// with a ragged last pass an earlier picker can end up with one more chore
/// and envy a later one. Dummies are dropped from the result and never
/// change a bundle's value.
pub fn solve_two_rounds(instance: &Instance) -> Result<Allocation> {
    if instance.n_rounds() != 2 {
        return Err(class(SOLVER, format!("needs exactly 2 rounds, got {}", instance.n_rounds())));
    }
    if instance.kind() == Kind::Mixed {
        return Err(class(SOLVER, "needs goods or chores, got mixed"));
    }
    let n = instance.n_agents();
    let mut assignment = alloc::vec![0; instance.n_items()];
    for t in 1..=2 {
        let items: Vec<usize> = instance.round_items(t).collect();
        let padding = match instance.kind() {
            Kind::Chores => (n - items.len() % n) % n,
            _ => 0,
        };
        let order: Vec<AgentId> = if t == 1 { (0..n).collect() } else { (0..n).rev().collect() };
        let picks = pick_sequence(instance, &items, padding, &order);
        for (slot, agent) in picks {
            if let Some(&item) = items.get(slot) {
                assignment[item] = agent;
            }
        }
    }
    Ok(Allocation::new(assignment))
}

/// Round-robin over `items` followed by `padding` zero-valued dummies.
/// Returns `(slot, agent)` pairs; slots past `items.len()` are dummies.
fn pick_sequence(instance: &Instance, items: &[usize], padding: usize, order: &[AgentId]) -> Vec<(usize, AgentId)> {
    let zero = Rational::zero();
    let total = items.len() + padding;
    let mut taken = alloc::vec![false; total];
    let mut picks = Vec::with_capacity(total);
    for agent in order.iter().cycle().take(total).copied() {
        let value = |slot: usize| items.get(slot).map_or(&zero, |&item| instance.value(agent, item));
        let mut best: Option<usize> = None;
        for slot in (0..total).filter(|&s| !taken[s]) {
            if best.is_none_or(|b| value(slot) > value(b)) {
                best = Some(slot);
            }
        }
        let slot = best.expect("one free slot per pick");
        taken[slot] = true;
        picks.push((slot, agent));
    }
    picks
}
