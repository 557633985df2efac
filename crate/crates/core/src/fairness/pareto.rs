use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};
use crate::scaled::{scale, Profile, Scalar, Scaled};

/// Default cap on `n^m` for the brute-force optimality check.
pub const DEFAULT_PO_LIMIT: u128 = 10_000_000;

/// `a` gives every agent at least as much as `b` and someone strictly more.
pub fn pareto_dominates(instance: &Instance, a: &Allocation, b: &Allocation) -> Result<bool> {
    let ua = instance.utilities(a)?;
    let ub = instance.utilities(b)?;
    Ok(ua.iter().zip(&ub).all(|(x, y)| x >= y) && ua.iter().zip(&ub).any(|(x, y)| x > y))
}

/// `n^m`, saturating.
pub(crate) fn allocation_count(instance: &Instance) -> u128 {
    let n = instance.n_agents() as u128;
    (0..instance.n_items()).fold(1u128, |acc, _| acc.saturating_mul(n))
}

/// Brute force over all `n^m` allocations: is there one that dominates `alloc`?
///
/// Refuses with [`Error::EnumerationCap`] when `n^m` exceeds `limit`
/// (`None` means [`DEFAULT_PO_LIMIT`]). Branches where some agent can no
/// longer reach its current utility are skipped, which does not change the
/// answer.
pub fn is_pareto_optimal(instance: &Instance, alloc: &Allocation, limit: Option<u128>) -> Result<bool> {
    alloc.validate(instance)?;
    let limit = limit.unwrap_or(DEFAULT_PO_LIMIT);
    let required = allocation_count(instance);
    if required > limit {
        return Err(Error::EnumerationCap { required, limit });
    }
    Ok(match scale(instance) {
        Scaled::Small(p) => !dominated(&p, &alloc.assignment),
        Scaled::Big(p) => !dominated(&p, &alloc.assignment),
    })
}

pub(crate) fn dominated<T: Scalar>(profile: &Profile<T>, assignment: &[usize]) -> bool {
    let n = profile.values.len();
    let m = assignment.len();
    let mut target = vec![T::zero(); n];
    for (item, &a) in assignment.iter().enumerate() {
        target[a] += &profile.values[a][item];
    }
    // best[i][k]: the most agent i can still gain from items k..m
    let mut best = vec![vec![T::zero(); m + 1]; n];
    for (i, row) in best.iter_mut().enumerate() {
        for k in (0..m).rev() {
            let mut acc = row[k + 1].clone();
            let v = &profile.values[i][k];
            if *v > T::zero() {
                acc += v;
            }
            row[k] = acc;
        }
    }
    let mut search = Dominance { profile, target, best, current: vec![T::zero(); n] };
    search.run(0)
}

struct Dominance<'a, T> {
    profile: &'a Profile<T>,
    target: Vec<T>,
    best: Vec<Vec<T>>,
    current: Vec<T>,
}

impl<T: Scalar> Dominance<'_, T> {
    fn reachable(&self, next: usize) -> bool {
        (0..self.target.len()).all(|i| {
            let mut reach = self.current[i].clone();
            reach += &self.best[i][next];
            reach >= self.target[i]
        })
    }

    fn run(&mut self, item: usize) -> bool {
        let m = self.best[0].len() - 1;
        if item == m {
            return self.current.iter().zip(&self.target).any(|(c, t)| c > t);
        }
        for a in 0..self.target.len() {
            let v = &self.profile.values[a][item];
            self.current[a] += v;
            let found = self.reachable(item + 1) && self.run(item + 1);
            self.current[a] -= v;
            if found {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Kind;
    use crate::rational::{int, ratio};

    fn prop42() -> Instance {
        let (a, b) = (ratio(11, 10), int(2));
        Instance::single_item_rounds(
            Kind::Goods,
            vec![vec![a.clone(), a.clone(), b.clone(), b.clone()], vec![b.clone(), b, a.clone(), a]],
        )
        .unwrap()
    }

    #[test]
    fn dominance_examples() {
        let inst = prop42();
        let fair = Allocation::new(vec![0, 1, 0, 1]);
        let better = Allocation::new(vec![1, 1, 0, 0]);
        assert!(pareto_dominates(&inst, &better, &fair).unwrap());
        assert!(!pareto_dominates(&inst, &fair, &better).unwrap());
        assert!(!pareto_dominates(&inst, &fair, &fair).unwrap());
        assert!(!is_pareto_optimal(&inst, &fair, None).unwrap());
        assert!(is_pareto_optimal(&inst, &better, None).unwrap());
    }

    #[test]
    fn identical_swap_does_not_dominate() {
        let inst = Instance::single_item_rounds(Kind::Goods, vec![vec![int(1), int(1)]; 2]).unwrap();
        let a = Allocation::new(vec![0, 1]);
        let b = Allocation::new(vec![1, 0]);
        assert!(!pareto_dominates(&inst, &a, &b).unwrap());
    }

    #[test]
    fn single_item_to_top_valuer_is_optimal() {
        let inst = Instance::single_item_rounds(Kind::Goods, vec![vec![int(1)], vec![int(3)], vec![int(2)]]).unwrap();
        assert!(is_pareto_optimal(&inst, &Allocation::new(vec![1]), None).unwrap());
        // taking the only good away always hurts its holder
        assert!(is_pareto_optimal(&inst, &Allocation::new(vec![0]), None).unwrap());
        let zero = Instance::single_item_rounds(Kind::Goods, vec![vec![int(1)], vec![int(0)]]).unwrap();
        assert!(!is_pareto_optimal(&zero, &Allocation::new(vec![1]), None).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let inst = Instance::single_item_rounds(Kind::Goods, vec![vec![int(1); 10]; 3]).unwrap();
        let alloc = Allocation::new(vec![0; 10]);
        match is_pareto_optimal(&inst, &alloc, Some(1000)) {
            Err(Error::EnumerationCap { required, limit }) => {
                assert_eq!(required, 59049);
                assert_eq!(limit, 1000);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
        assert!(is_pareto_optimal(&inst, &alloc, None).unwrap());
    }

    #[test]
    fn chores_reassignment_dominance() {
        // giving the shared -1 chore to agent 1 instead of agent 0 helps 0 and hurts 1
        let inst =
            Instance::single_item_rounds(Kind::Chores, vec![vec![int(-1), int(0)], vec![int(-1), int(-2)]]).unwrap();
        assert!(!is_pareto_optimal(&inst, &Allocation::new(vec![0, 1]), None).unwrap());
        assert!(is_pareto_optimal(&inst, &Allocation::new(vec![1, 0]), None).unwrap());
    }
}
