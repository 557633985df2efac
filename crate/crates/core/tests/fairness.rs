mod common;

use common::*;
use proptest::prelude::*;
use tefkit_core::fairness::{
    check, check_pairwise, check_temporal, is_pareto_optimal, p_mean_welfare, pareto_dominates, FairnessRelation,
    PMean, Relation, Scope, Welfare,
};
use tefkit_core::gadgets::corpus_instance;
use tefkit_core::rational::{int, ratio};
use tefkit_core::{Allocation, Error, Instance, Kind, PrefixBundles};

const RELATIONS: [Relation; 3] = [Relation::Ef, Relation::Ef1, Relation::Efx];

fn instance_and_assignment(kind: Kind) -> impl Strategy<Value = (Instance, Vec<usize>)> {
    multi_round_strategy(1..=4, 0..=7, kind).prop_flat_map(|inst| {
        let (n, m) = (inst.n_agents(), inst.n_items());
        (Just(inst), proptest::collection::vec(0..n, m))
    })
}

fn any_kind_case() -> impl Strategy<Value = (Instance, Vec<usize>)> {
    kind_strategy().prop_flat_map(instance_and_assignment)
}

proptest! {
    #[test]
    fn pairwise_matches_definition((inst, assignment) in any_kind_case()) {
        let bundles = prefix(&inst, &assignment, inst.n_rounds());
        for relation in RELATIONS {
            let report = check_pairwise(&inst, &PrefixBundles::new(inst.n_rounds(), bundles.clone()), relation).unwrap();
            prop_assert_eq!(report.holds, bundles_ok(&inst, relation, &bundles), "{:?}", relation);
        }
    }

    #[test]
    fn temporal_matches_definition((inst, assignment) in any_kind_case()) {
        for relation in RELATIONS {
            let report = check_temporal(&inst, &alloc(&assignment), relation).unwrap();
            prop_assert_eq!(report.holds, temporal_ok(&inst, relation, &assignment));
            if let Some(w) = report.witness {
                // the witness is the earliest failing round and reproduces the violation there
                prop_assert!((1..w.round).all(|t| bundles_ok(&inst, relation, &prefix(&inst, &assignment, t))));
                let b = prefix(&inst, &assignment, w.round);
                prop_assert!(!pair_ok(&inst, relation, w.envious, &b[w.envious], &b[w.envied]));
            }
        }
    }

    #[test]
    fn ef_implies_efx_implies_ef1((inst, assignment) in any_kind_case()) {
        let b = PrefixBundles::new(inst.n_rounds(), prefix(&inst, &assignment, inst.n_rounds()));
        let holds = |r| check_pairwise(&inst, &b, r).unwrap().holds;
        if holds(Relation::Ef) {
            prop_assert!(holds(Relation::Efx));
        }
        if holds(Relation::Efx) {
            prop_assert!(holds(Relation::Ef1));
        }
    }

    #[test]
    fn final_scope_equals_pairwise_at_the_end((inst, assignment) in any_kind_case()) {
        let a = alloc(&assignment);
        let b = inst.prefix_bundles(&a, inst.n_rounds()).unwrap();
        for relation in RELATIONS {
            let fin = check(&inst, &a, FairnessRelation { relation, scope: Scope::Final }).unwrap();
            prop_assert_eq!(fin, check_pairwise(&inst, &b, relation).unwrap());
        }
    }

    #[test]
    fn zero_good_in_envied_bundle_keeps_ef1_verdict(
        (inst, assignment) in instance_and_assignment(Kind::Goods),
        envied in 0usize..4,
    ) {
        let n = inst.n_agents();
        let envied = envied % n;
        let mut values = inst.values().to_vec();
        for row in &mut values {
            row.push(int(0));
        }
        let mut rounds = inst.rounds().to_vec();
        rounds.last_mut().unwrap().push(inst.n_items());
        let bigger = Instance::new(n, Kind::Goods, rounds, values).unwrap();
        let mut extended = assignment.clone();
        extended.push(envied);
        let before = check_temporal(&inst, &alloc(&assignment), Relation::Ef1).unwrap().holds;
        let after = check_temporal(&bigger, &alloc(&extended), Relation::Ef1).unwrap().holds;
        prop_assert_eq!(before, after);
    }

    #[test]
    fn pareto_matches_brute_force(
        (inst, assignment) in kind_strategy().prop_flat_map(instance_and_assignment).prop_filter("small", |(i, _)| i.n_items() <= 5 && i.n_agents() <= 3)
    ) {
        prop_assert_eq!(is_pareto_optimal(&inst, &alloc(&assignment), None).unwrap(), pareto_optimal(&inst, &assignment));
    }

    #[test]
    fn dominance_is_irreflexive_and_antisymmetric(
        (inst, a) in any_kind_case(),
        seed in proptest::collection::vec(0usize..4, 7),
    ) {
        let b: Vec<usize> = (0..inst.n_items()).map(|o| seed[o] % inst.n_agents()).collect();
        let (a, b) = (alloc(&a), alloc(&b));
        prop_assert!(!pareto_dominates(&inst, &a, &a).unwrap());
        prop_assert!(!(pareto_dominates(&inst, &a, &b).unwrap() && pareto_dominates(&inst, &b, &a).unwrap()));
        prop_assert_eq!(
            pareto_dominates(&inst, &a, &b).unwrap(),
            dominates(&utilities(&inst, &a.assignment), &utilities(&inst, &b.assignment))
        );
    }

    #[test]
    fn utilitarian_mean_times_n_is_the_sum((inst, assignment) in any_kind_case()) {
        let w = p_mean_welfare(&inst, &alloc(&assignment), &PMean::Finite(int(1))).unwrap();
        let sum: tefkit_core::Rational = utilities(&inst, &assignment).into_iter().sum();
        prop_assert_eq!(w, Welfare::Exact(sum / int(inst.n_agents() as i64)));
    }
}

#[test]
fn prop33_goods_bundle_checks() {
    let inst = corpus_instance("prop33_goods").unwrap().instance;
    let b = PrefixBundles::new(3, vec![vec![0, 2], vec![1]]);
    assert!(check_pairwise(&inst, &b, Relation::Ef1).unwrap().holds);
    let efx = check_pairwise(&inst, &b, Relation::Efx).unwrap();
    assert!(!efx.holds);
    let w = efx.witness.unwrap();
    assert_eq!((w.envious, w.envied), (1, 0));
}

#[test]
fn empty_bundles_pass_everything() {
    for kind in [Kind::Goods, Kind::Chores, Kind::Mixed] {
        let inst = Instance::new(3, kind, vec![vec![]], vec![vec![]; 3]).unwrap();
        for relation in RELATIONS {
            let b = PrefixBundles::new(1, vec![vec![]; 3]);
            assert!(check_pairwise(&inst, &b, relation).unwrap().holds);
        }
    }
}

#[test]
fn prop42_goods_envy_free_split_is_dominated() {
    let inst = corpus_instance("prop42_goods").unwrap().instance;
    let split = Allocation::from_bundles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
    assert!(check_pairwise(&inst, &inst.prefix_bundles(&split, 4).unwrap(), Relation::Ef).unwrap().holds);
    assert_eq!(inst.bundle_value(0, &[0, 2]).unwrap(), ratio(31, 10));
    let better = Allocation::from_bundles(4, &[vec![2, 3], vec![0, 1]]).unwrap();
    assert!(pareto_dominates(&inst, &better, &split).unwrap());
    assert!(!is_pareto_optimal(&inst, &split, None).unwrap());
}

#[test]
fn one_round_tef1_is_ef1() {
    let inst = Instance::new(2, Kind::Goods, vec![vec![0, 1, 2]], rows(&[&[3, 1, 1], &[1, 1, 3]])).unwrap();
    for assignment in all_assignments(2, 3) {
        let a = alloc(&assignment);
        let fin = check(&inst, &a, FairnessRelation { relation: Relation::Ef1, scope: Scope::Final }).unwrap();
        assert_eq!(fin.holds, check(&inst, &a, FairnessRelation::TEF1).unwrap().holds);
    }
}

#[test]
fn greedy_utilitarian_fails_on_appendix_a() {
    let inst = corpus_instance("appendixA_goods_23").unwrap().instance;
    let assignment: Vec<usize> = (0..inst.n_items())
        .map(|o| (0..3).max_by(|&a, &b| inst.value(a, o).cmp(inst.value(b, o)).then(b.cmp(&a))).unwrap())
        .collect();
    let report = check_temporal(&inst, &alloc(&assignment), Relation::Ef1).unwrap();
    assert!(!report.holds);
    assert!(report.witness.unwrap().round <= 23);
}

#[test]
fn pareto_cap_names_the_override() {
    let inst = Instance::single_item_rounds(Kind::Goods, vec![vec![int(1); 12]; 4]).unwrap();
    let err = is_pareto_optimal(&inst, &alloc(&[0; 12]), Some(1000)).unwrap_err();
    assert!(matches!(err, Error::EnumerationCap { .. }));
    assert!(err.to_string().contains("--po-limit"));
}

#[test]
fn welfare_spectrum() {
    let inst = Instance::single_item_rounds(Kind::Goods, rows(&[&[2, 0], &[0, 8]])).unwrap();
    let a = alloc(&[0, 1]);
    assert_eq!(p_mean_welfare(&inst, &a, &PMean::NashLimit).unwrap(), Welfare::Exact(int(4)));
    assert_eq!(p_mean_welfare(&inst, &a, &PMean::NegInfinity).unwrap(), Welfare::Exact(int(2)));
    assert_eq!(p_mean_welfare(&inst, &a, &PMean::Finite(int(1))).unwrap(), Welfare::Exact(int(5)));
    let zero = alloc(&[1, 1]);
    assert!(matches!(p_mean_welfare(&inst, &zero, &PMean::NashLimit), Err(Error::Domain(_))));
}
