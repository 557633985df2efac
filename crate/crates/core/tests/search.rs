mod common;

use common::*;
use proptest::prelude::*;
use tefkit_core::fairness::Relation;
use tefkit_core::gadgets::{corpus_instance, corpus_names};
use tefkit_core::rational::int;
use tefkit_core::search::*;
use tefkit_core::{Allocation, Error, Instance, Kind};

fn all(target: Target) -> SearchQuery {
    SearchQuery::new(target, Mode::All)
}

fn brute(inst: &Instance, keep: impl Fn(&[usize]) -> bool) -> Vec<Allocation> {
    all_assignments(inst.n_agents(), inst.n_items()).into_iter().filter(|a| keep(a)).map(Allocation::new).collect()
}

fn small_case() -> impl Strategy<Value = Instance> {
    kind_strategy().prop_flat_map(|k| multi_round_strategy(1..=3, 0..=6, k))
}

fn identical_case() -> impl Strategy<Value = Instance> {
    (2usize..=4, 1usize..=6, kind_strategy()).prop_flat_map(|(n, m, kind)| {
        let (lo, hi) = match kind {
            Kind::Goods => (0i64, 4i64),
            Kind::Chores => (-4, 0),
            Kind::Mixed => (-4, 4),
        };
        proptest::collection::vec(lo..=hi, m).prop_map(move |row| {
            Instance::single_item_rounds(kind, vec![row.iter().map(|&v| int(v)).collect(); n]).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn all_mode_matches_brute_force(inst in small_case()) {
        for (target, relation) in [(Target::Tef1, Relation::Ef1), (Target::Tefx, Relation::Efx)] {
            let r = search(&inst, &all(target)).unwrap();
            let expected = brute(&inst, |a| temporal_ok(&inst, relation, a));
            prop_assert_eq!(r.outcome == Outcome::Found, !expected.is_empty());
            prop_assert_eq!(r.count as usize, expected.len());
            prop_assert_eq!(r.weighted_count, r.count);
            prop_assert_eq!(&r.allocations, &expected);
            let first = search(&inst, &SearchQuery::new(target, Mode::First)).unwrap();
            prop_assert_eq!(first.allocations.first(), expected.first());
            let count = search(&inst, &SearchQuery::new(target, Mode::Count)).unwrap();
            prop_assert_eq!(count.count as usize, expected.len());
            prop_assert!(count.allocations.is_empty());
        }
    }

    #[test]
    fn po_filter_matches_brute_force(inst in kind_strategy().prop_flat_map(|k| multi_round_strategy(1..=3, 0..=5, k))) {
        let r = search(&inst, &all(Target::Tef1AndPo)).unwrap();
        let expected = brute(&inst, |a| temporal_ok(&inst, Relation::Ef1, a) && pareto_optimal(&inst, a));
        prop_assert_eq!(r.allocations, expected);
    }

    #[test]
    fn repetitive_matches_brute_force(
        (inst, len) in (1usize..=3, 1usize..=3, 1usize..=3, kind_strategy()).prop_flat_map(|(n, len, t, kind)| {
            (instance_strategy(n..=n, len * t..=len * t, kind, -4..=4), Just(len))
        })
    ) {
        let m = inst.n_items();
        let rounds: Vec<Vec<usize>> = (0..m / len).map(|t| (t * len..(t + 1) * len).collect()).collect();
        let inst = Instance::new(inst.n_agents(), inst.kind(), rounds, inst.values().to_vec()).unwrap();
        let r = search(&inst, &all(Target::RepetitiveTef1)).unwrap();
        let expected = brute(&inst, |a| (len..m).all(|o| a[o] == a[o % len]) && temporal_ok(&inst, Relation::Ef1, a));
        prop_assert_eq!(r.allocations, expected);
    }

    #[test]
    fn symmetry_breaking_preserves_weighted_count(inst in identical_case()) {
        let plain = search(&inst, &SearchQuery::new(Target::Tef1, Mode::Count)).unwrap();
        let broken = search(&inst, &SearchQuery::new(Target::Tef1, Mode::Count).with_symmetry_breaking(true)).unwrap();
        prop_assert_eq!(broken.weighted_count, plain.count);
        prop_assert!(broken.count <= plain.count);
        prop_assert!(broken.nodes_explored <= plain.nodes_explored);
    }

    #[test]
    fn split_search_equals_whole(inst in small_case(), depth in 0usize..4) {
        for mode in [Mode::First, Mode::All, Mode::Count] {
            let query = SearchQuery::new(Target::Tef1, mode);
            let whole = search(&inst, &query).unwrap();
            let p = plan(&inst, &query, None).unwrap();
            let budget = SharedBudget::new(query.budget);
            let parts = p.frontier(depth).iter().enumerate().map(|(k, pre)| p.run(pre, &budget, k)).collect();
            let merged = merge(mode, parts);
            prop_assert_eq!(merged.outcome, whole.outcome);
            prop_assert_eq!(merged.allocations, whole.allocations);
            prop_assert_eq!(merged.count, whole.count);
        }
    }

    #[test]
    fn partial_start_matches_brute_force(inst in small_case(), seed in proptest::collection::vec(0usize..3, 6), cut in 0usize..4) {
        let t = cut.min(inst.n_rounds());
        let len = inst.prefix_len(t);
        let start: Vec<usize> = seed[..len].iter().map(|&a| a % inst.n_agents()).collect();
        let fair_start = (1..=t).all(|r| bundles_ok(&inst, Relation::Ef1, &prefix(&inst, &start, r)));
        match search_from_partial(&inst, &Allocation::new(start.clone()), &all(Target::Tef1)) {
            Ok(r) => {
                prop_assert!(fair_start);
                let expected = brute(&inst, |a| a[..len] == start[..] && temporal_ok(&inst, Relation::Ef1, a));
                prop_assert_eq!(r.allocations, expected);
            }
            Err(e) => {
                prop_assert!(!fair_start);
                prop_assert!(matches!(e, Error::Precondition(_)));
            }
        }
    }
}

#[test]
fn empty_partial_equals_plain_search() {
    let inst = corpus_instance("prop33_chores").unwrap().instance;
    let q = all(Target::Tef1);
    assert_eq!(search_from_partial(&inst, &Allocation::new(vec![]), &q).unwrap(), search(&inst, &q).unwrap());
}

#[test]
fn misaligned_partial_is_rejected() {
    let inst = Instance::new(2, Kind::Goods, vec![vec![0, 1], vec![2]], rows(&[&[1, 1, 1], &[1, 1, 1]])).unwrap();
    let err = search_from_partial(&inst, &Allocation::new(vec![0]), &all(Target::Tef1)).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn one_item_count_is_n() {
    for n in 1..=5 {
        let inst = Instance::single_item_rounds(Kind::Goods, vec![vec![int(3)]; n]).unwrap();
        assert_eq!(search(&inst, &SearchQuery::new(Target::Tef1, Mode::Count)).unwrap().count, n as u128);
    }
}

#[test]
fn budget_exhaustion_is_reported() {
    let inst = corpus_instance("appendixA_goods_23").unwrap().instance;
    let r = search(&inst, &SearchQuery::new(Target::Tef1, Mode::First).with_budget(100)).unwrap();
    assert_eq!(r.outcome, Outcome::BudgetExceeded);
    assert!(r.nodes_explored <= 100);
}

#[test]
fn corpus_verdicts_hold() {
    for name in corpus_names().iter().copied().chain(["prop42_chores(3)", "prop42_chores:4"]) {
        let entry = corpus_instance(name).unwrap();
        for e in &entry.expected {
            let r = search(&entry.instance, &SearchQuery::new(e.target, Mode::First)).unwrap();
            assert_ne!(r.outcome, Outcome::BudgetExceeded, "{name}");
            assert_eq!(r.found(), e.found, "{name} {}", e.target.name());
        }
    }
}

#[test]
fn appendix_a_exhausts_quickly() {
    let inst = corpus_instance("appendixA_goods_23").unwrap().instance;
    let r = search(&inst, &SearchQuery::new(Target::Tef1, Mode::First)).unwrap();
    assert_eq!(r.outcome, Outcome::None);
    assert_eq!(r.nodes_explored, 894);
}

#[test]
fn tail_search_constants() {
    let free = appendix_tail_search(None, Mode::All);
    assert_eq!((free.count, free.nodes_explored), (12, 957));
    assert_eq!(free.allocations.len(), 12);
    let expected_nodes = [((0, 1), 600), ((0, 2), 564), ((1, 0), 342), ((1, 2), 342), ((2, 0), 21), ((2, 1), 21)];
    for ((from, to), nodes) in expected_nodes {
        let r = appendix_tail_search(Some(TailEnvy { from, to }), Mode::All);
        assert_eq!((r.outcome, r.count, r.nodes_explored), (Outcome::None, 0, nodes), "{from}->{to}");
    }
}

#[test]
fn unknown_corpus_name_is_an_input_error() {
    assert!(matches!(corpus_instance("prop99"), Err(Error::Input(_))));
    assert!(matches!(corpus_instance("prop42_chores(1)"), Err(Error::Input(_))));
}
