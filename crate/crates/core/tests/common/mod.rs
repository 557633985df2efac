//! Brute-force oracles written straight from the definitions, sharing no
//! code with the library's checkers.
#![allow(dead_code)]

use proptest::prelude::*;
use tefkit_core::fairness::Relation;
use tefkit_core::rational::int;
use tefkit_core::{Allocation, Instance, Kind, Rational};

pub fn value(instance: &Instance, agent: usize, items: &[usize]) -> Rational {
    items.iter().map(|&o| instance.value(agent, o).clone()).sum()
}

fn without(items: &[usize], o: usize) -> Vec<usize> {
    items.iter().copied().filter(|&x| x != o).collect()
}

/// Is agent `i` fine with bundle `own` against `other` under `relation`?
pub fn pair_ok(instance: &Instance, relation: Relation, i: usize, own: &[usize], other: &[usize]) -> bool {
    let ef = |a: &[usize], b: &[usize]| value(instance, i, a) >= value(instance, i, b);
    if ef(own, other) {
        return true;
    }
    match (relation, instance.kind()) {
        (Relation::Ef, _) => false,
        (Relation::Ef1, Kind::Goods) => other.iter().any(|&g| ef(own, &without(other, g))),
        (Relation::Ef1, Kind::Chores) => own.iter().any(|&c| ef(&without(own, c), other)),
        (Relation::Ef1, Kind::Mixed) => own.iter().chain(other).any(|&o| ef(&without(own, o), &without(other, o))),
        (Relation::Efx, Kind::Goods) => !other.is_empty() && other.iter().all(|&g| ef(own, &without(other, g))),
        (Relation::Efx, Kind::Chores) => !own.is_empty() && own.iter().all(|&c| ef(&without(own, c), other)),
        (Relation::Efx, Kind::Mixed) => {
            let union: Vec<usize> = own.iter().chain(other).copied().collect();
            !union.is_empty() && union.iter().all(|&o| ef(&without(own, o), &without(other, o)))
        }
    }
}

pub fn bundles_ok(instance: &Instance, relation: Relation, bundles: &[Vec<usize>]) -> bool {
    (0..bundles.len())
        .all(|i| (0..bundles.len()).all(|j| i == j || pair_ok(instance, relation, i, &bundles[i], &bundles[j])))
}

pub fn prefix(instance: &Instance, assignment: &[usize], t: usize) -> Vec<Vec<usize>> {
    let mut bundles = vec![Vec::new(); instance.n_agents()];
    for (t_, round) in instance.rounds().iter().enumerate() {
        if t_ < t {
            for &o in round {
                bundles[assignment[o]].push(o);
            }
        }
    }
    bundles
}

pub fn temporal_ok(instance: &Instance, relation: Relation, assignment: &[usize]) -> bool {
    (1..=instance.n_rounds()).all(|t| bundles_ok(instance, relation, &prefix(instance, assignment, t)))
}

/// Every assignment vector in lexicographic order.
pub fn all_assignments(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn utilities(instance: &Instance, assignment: &[usize]) -> Vec<Rational> {
    let mut u = vec![int(0); instance.n_agents()];
    for (o, &a) in assignment.iter().enumerate() {
        u[a] += instance.value(a, o);
    }
    u
}

pub fn dominates(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}

pub fn pareto_optimal(instance: &Instance, assignment: &[usize]) -> bool {
    let u = utilities(instance, assignment);
    all_assignments(instance.n_agents(), instance.n_items())
        .iter()
        .all(|other| !dominates(&utilities(instance, other), &u))
}

pub fn rows(values: &[&[i64]]) -> Vec<Vec<Rational>> {
    values.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
}

pub fn alloc(assignment: &[usize]) -> Allocation {
    Allocation::new(assignment.to_vec())
}

/// Random single-item-round instance with integer values in `range`
/// (clipped to the sign of `kind`).
pub fn instance_strategy(
    agents: std::ops::RangeInclusive<usize>,
    items: std::ops::RangeInclusive<usize>,
    kind: Kind,
    range: std::ops::RangeInclusive<i64>,
) -> impl Strategy<Value = Instance> {
    let (lo, hi) = match kind {
        Kind::Goods => (0.max(*range.start()), *range.end()),
        Kind::Chores => (*range.start(), 0.min(*range.end())),
        Kind::Mixed => (*range.start(), *range.end()),
    };
    (agents, items).prop_flat_map(move |(n, m)| {
        proptest::collection::vec(proptest::collection::vec(lo..=hi, m), n).prop_map(move |v| {
            Instance::single_item_rounds(kind, v.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
        })
    })
}

/// Like [`instance_strategy`] but with rounds of random sizes.
pub fn multi_round_strategy(
    agents: std::ops::RangeInclusive<usize>,
    items: std::ops::RangeInclusive<usize>,
    kind: Kind,
) -> impl Strategy<Value = Instance> {
    instance_strategy(agents, items, kind, -4..=4).prop_flat_map(|inst| {
        let m = inst.n_items();
        proptest::collection::vec(any::<bool>(), m.saturating_sub(1)).prop_map(move |cuts| {
            let mut rounds = vec![vec![0]];
            for (o, cut) in (1..m).zip(cuts) {
                if cut {
                    rounds.push(Vec::new());
                }
                rounds.last_mut().unwrap().push(o);
            }
            if m == 0 {
                rounds = vec![Vec::new()];
            }
            Instance::new(inst.n_agents(), inst.kind(), rounds, inst.values().to_vec()).unwrap()
        })
    })
}

pub fn kind_strategy() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Goods), Just(Kind::Chores), Just(Kind::Mixed)]
}
