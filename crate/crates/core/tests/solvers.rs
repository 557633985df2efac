mod common;

use common::*;
use proptest::prelude::*;
use tefkit_core::algorithms::*;
use tefkit_core::fairness::{is_pareto_optimal, Relation};
use tefkit_core::gadgets::corpus_instance;
use tefkit_core::rational::int;
use tefkit_core::search::{search, Mode, SearchQuery, Target};
use tefkit_core::{Error, Instance, Kind};

fn tef1(inst: &Instance, assignment: &[usize]) -> bool {
    temporal_ok(inst, Relation::Ef1, assignment)
}

fn negate(values: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    values.into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect()
}

fn build(kind: Kind, values: Vec<Vec<i64>>) -> Instance {
    let values = if kind == Kind::Chores { negate(values) } else { values };
    Instance::single_item_rounds(kind, values.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
}

fn pure_kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Goods), Just(Kind::Chores)]
}

/// Two value vectors over agents, and a type per item.
fn two_types_case() -> impl Strategy<Value = (Instance, Vec<u8>)> {
    (1usize..=5, 1usize..=15, pure_kind()).prop_flat_map(|(n, m, kind)| {
        (
            proptest::collection::vec(0i64..=6, n),
            proptest::collection::vec(0i64..=6, n),
            proptest::collection::vec(1u8..=2, m),
        )
            .prop_map(move |(a, b, types)| {
                let values =
                    (0..n).map(|i| types.iter().map(|&t| if t == 1 { a[i] } else { b[i] }).collect()).collect();
                (build(kind, values), types)
            })
    })
}

fn generalized_binary_case(max_agents: usize, max_items: usize) -> impl Strategy<Value = Instance> {
    (1usize..=max_agents, 1usize..=max_items, pure_kind()).prop_flat_map(|(n, m, kind)| {
        (
            proptest::collection::vec(1i64..=5, m),
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), n),
        )
            .prop_map(move |(p, mask)| {
                let values = mask
                    .iter()
                    .map(|row| row.iter().zip(&p).map(|(&on, &pj)| if on { pj } else { 0 }).collect())
                    .collect();
                build(kind, values)
            })
    })
}

/// Single-peaked goods, or (negated) single-dipped chores.
fn unimodal_case() -> impl Strategy<Value = Instance> {
    (1usize..=5, 1usize..=15, pure_kind()).prop_flat_map(|(n, m, kind)| {
        proptest::collection::vec((proptest::collection::vec(0i64..=9, m), 0..m), n).prop_map(move |rows| {
            let values = rows
                .into_iter()
                .map(|(mut row, peak)| {
                    row[..peak].sort();
                    row[peak + 1..].sort_by(|a, b| b.cmp(a));
                    row[peak] = *row.iter().max().unwrap();
                    row
                })
                .collect();
            build(kind, values)
        })
    })
}

fn two_round_case() -> impl Strategy<Value = Instance> {
    (1usize..=5, 0usize..=7, 0usize..=7, pure_kind()).prop_flat_map(|(n, k1, k2, kind)| {
        proptest::collection::vec(proptest::collection::vec(0i64..=9, k1 + k2), n).prop_map(move |values| {
            let values = if kind == Kind::Chores { negate(values) } else { values };
            let rounds = vec![(0..k1).collect(), (k1..k1 + k2).collect()];
            let values = values.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            Instance::new(n, kind, rounds, values).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn two_agent_chores_is_tef1(inst in instance_strategy(2..=2, 1..=12, Kind::Chores, -9..=0)) {
        let (a, trace) = solve_two_agent_chores(&inst).unwrap();
        prop_assert!(tef1(&inst, &a.assignment));
        prop_assert_eq!(trace.replay(), a.clone());
        // every closed window is envy-free for both agents
        for (s, t) in trace.windows() {
            let mut w = vec![Vec::new(), Vec::new()];
            for o in s..t {
                w[a.assignment[o]].push(o);
            }
            prop_assert!(bundles_ok(&inst, Relation::Ef, &w), "window ({}, {}]", s, t);
        }
    }

    #[test]
    fn two_agent_goods_is_tef1(inst in instance_strategy(2..=2, 1..=12, Kind::Goods, 0..=9)) {
        let (a, trace) = solve_two_agent_goods(&inst).unwrap();
        prop_assert!(tef1(&inst, &a.assignment));
        prop_assert_eq!(trace.replay(), a);
    }

    #[test]
    fn two_agent_instances_always_have_tef1(
        inst in pure_kind().prop_flat_map(|k| instance_strategy(2..=2, 1..=10, k, -9..=9))
    ) {
        let r = search(&inst, &SearchQuery::new(Target::Tef1, Mode::First)).unwrap();
        prop_assert!(r.found());
    }

    #[test]
    fn two_types_is_tef1_and_balanced((inst, types) in two_types_case()) {
        let a = solve_two_types(&inst, &types).unwrap();
        prop_assert!(tef1(&inst, &a.assignment));
        let n = inst.n_agents();
        for t in 1..=inst.n_items() {
            for ty in [1u8, 2] {
                let counts: Vec<usize> =
                    (0..n).map(|i| (0..t).filter(|&o| types[o] == ty && a.assignment[o] == i).count()).collect();
                prop_assert!(counts.iter().max().unwrap() - counts.iter().min().unwrap() <= 1);
            }
        }
    }

    #[test]
    fn generalized_binary_is_tef1(inst in generalized_binary_case(5, 15)) {
        let a = solve_generalized_binary(&inst).unwrap();
        prop_assert!(tef1(&inst, &a.assignment));
        if inst.kind() == Kind::Goods {
            for (o, &i) in a.assignment.iter().enumerate() {
                let wasted = inst.value(i, o) == &int(0) && (0..inst.n_agents()).any(|j| inst.value(j, o) > &int(0));
                prop_assert!(!wasted, "item {} held by agent {} who values it at 0", o, i);
            }
        }
    }

    #[test]
    fn generalized_binary_is_pareto_optimal(inst in generalized_binary_case(3, 6)) {
        let a = solve_generalized_binary(&inst).unwrap();
        prop_assert!(pareto_optimal(&inst, &a.assignment));
        prop_assert!(is_pareto_optimal(&inst, &a, None).unwrap());
    }

    #[test]
    fn unimodal_is_tef1(inst in unimodal_case()) {
        let a = solve_unimodal(&inst).unwrap();
        prop_assert!(tef1(&inst, &a.assignment));
    }

    #[test]
    fn two_rounds_is_tef1(inst in two_round_case()) {
        let a = solve_two_rounds(&inst).unwrap();
        prop_assert!(tef1(&inst, &a.assignment));
    }

    #[test]
    fn mixed_two_agent_is_tef1(inst in instance_strategy(2..=2, 1..=12, Kind::Mixed, -3..=3)) {
        let a = solve_mixed_two_agent(&inst).unwrap();
        prop_assert!(tef1(&inst, &a.assignment));
    }

    #[test]
    fn mixed_on_goods_equals_goods_solver(inst in instance_strategy(2..=2, 1..=12, Kind::Goods, 0..=9)) {
        let as_mixed = inst.with_kind(Kind::Mixed).unwrap();
        prop_assert_eq!(solve_mixed_two_agent(&as_mixed).unwrap(), solve_two_agent_goods(&inst).unwrap().0);
    }

    #[test]
    fn mixed_on_chores_swaps_the_goods_solution(inst in instance_strategy(2..=2, 1..=12, Kind::Chores, -9..=0)) {
        let abs: Vec<Vec<_>> = inst.values().iter().map(|r| r.iter().map(|v| -v.clone()).collect()).collect();
        let goods = Instance::single_item_rounds(Kind::Goods, abs).unwrap();
        let base = solve_two_agent_goods(&goods).unwrap().0.assignment;
        // items nobody minds are goods and stay put
        let swapped: Vec<usize> = base
            .iter()
            .enumerate()
            .map(|(o, &a)| if (0..2).any(|i| inst.value(i, o) < &int(0)) { 1 - a } else { a })
            .collect();
        let mixed = solve_mixed_two_agent(&inst.with_kind(Kind::Mixed).unwrap()).unwrap();
        prop_assert_eq!(mixed.assignment, swapped);
    }

    #[test]
    fn auto_output_is_tef1_or_nonexistence_is_real(
        inst in kind_strategy().prop_flat_map(|k| multi_round_strategy(1..=3, 1..=7, k))
    ) {
        match solve_auto(&inst).unwrap() {
            AutoOutcome::Solved { allocation, .. } => prop_assert!(tef1(&inst, &allocation.assignment)),
            AutoOutcome::NoTef1 { .. } => {
                let any = all_assignments(inst.n_agents(), inst.n_items()).iter().any(|a| tef1(&inst, a));
                prop_assert!(!any);
            }
        }
    }
}

#[test]
fn unimodal_with_two_items_per_agent() {
    for n in 1..=4 {
        let row: Vec<i64> = (0..2 * n as i64).map(|k| k.min(2 * n as i64 - k)).collect();
        let inst = build(Kind::Goods, vec![row; n]);
        let a = solve_unimodal(&inst).unwrap();
        for i in 0..n {
            assert_eq!((a.assignment[i], a.assignment[i + n]), (i, i));
        }
    }
}

#[test]
fn auto_dispatch_tags() {
    let tag = |inst: &Instance| match solve_auto(inst).unwrap() {
        AutoOutcome::Solved { solver, .. } => solver,
        AutoOutcome::NoTef1 { .. } => "none",
    };
    let gb = build(Kind::Chores, vec![vec![1, 0, 2], vec![1, 3, 0]]);
    assert_eq!(tag(&gb), "gen-binary-chores");
    let prop33 = corpus_instance("prop33_goods").unwrap().instance;
    assert!(prop33.has_identical_valuations());
    assert_eq!(tag(&prop33), "gen-binary-goods");
    let types = build(Kind::Goods, vec![vec![1, 2, 1], vec![3, 4, 3], vec![2, 5, 2]]);
    assert_eq!(tag(&types), "two-types");
    let peaked = build(Kind::Goods, vec![vec![1, 2, 3, 1], vec![5, 4, 2, 1], vec![1, 1, 2, 3]]);
    assert_eq!(tag(&peaked), "unimodal");
    let two = build(Kind::Goods, vec![vec![1, 3, 2, 5], vec![2, 1, 3, 1]]);
    assert_eq!(tag(&two), "two-agent-goods");
    let rounds = Instance::new(
        3,
        Kind::Goods,
        vec![vec![0, 1, 2], vec![3, 4]],
        vec![
            [1, 3, 2, 4, 1].iter().map(|&v| int(v)).collect(),
            [2, 1, 3, 1, 5].iter().map(|&v| int(v)).collect(),
            [3, 2, 1, 5, 4].iter().map(|&v| int(v)).collect(),
        ],
    )
    .unwrap();
    assert_eq!(tag(&rounds), "two-rounds");
}

#[test]
fn auto_reports_appendix_a_nonexistence() {
    let inst = corpus_instance("appendixA_goods_23").unwrap().instance;
    assert!(matches!(solve_auto(&inst).unwrap(), AutoOutcome::NoTef1 { .. }));
}

#[test]
fn auto_budget_exhaustion_is_an_error() {
    let inst = corpus_instance("appendixA_goods_23").unwrap().instance;
    assert!(matches!(solve_auto_with_budget(&inst, 10), Err(Error::Budget { .. })));
}

#[test]
fn detect_class_on_corpus_instances() {
    let prop42 = detect_class(&corpus_instance("prop42_goods").unwrap().instance);
    assert!(prop42.two_types.is_some() && prop42.two_agents);
    let appendix = detect_class(&corpus_instance("appendixA_goods_23").unwrap().instance);
    assert!(!appendix.two_agents && appendix.generalized_binary.is_none());
    let identical = detect_class(&build(Kind::Goods, vec![vec![1, 2, 1]; 3]));
    assert!(identical.identical_valuations && identical.two_types.is_some());
}
