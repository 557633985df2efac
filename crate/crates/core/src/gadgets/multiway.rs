//! Two identical rounds whose repetitive TEF1 allocations encode a
//! `κ`-way equal-sum partition.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Gadget, IntegerMultiset, Provenance, Source};
use crate::error::{Error, Result};
use crate::instance::{Instance, Kind};
use crate::rational::{int, Rational};

/// `s'_j = s_j - max(S)`, the shifted multiset used by the chores variant.
pub fn multiway_chores_multiset(values: &[u64]) -> Vec<i64> {
    let max = values.iter().copied().max().unwrap_or(0) as i64;
    values.iter().map(|&s| s as i64 - max).collect()
}

/// `κ + 1` agents with identical valuations and two identical rounds of
/// `m + 1` items: `s_1..s_m` followed by `2W` with `W = Σ s / κ`. Chores use
/// `s'_j = s_j - max(S)` and `2W'` with `W' = Σ s' / κ`.
///
/// A sum not divisible by `κ` still yields an instance (a no-instance); the
/// provenance notes record it.
pub fn gadget_multiway_repeated(source: &IntegerMultiset, kind: Kind) -> Result<Gadget> {
    let kappa = source.kappa.ok_or_else(|| Error::Parameter("the multiway gadget needs kappa".into()))?;
    if kappa == 0 {
        return Err(Error::Parameter("kappa must be positive".into()));
    }
    if source.values.is_empty() {
        return Err(Error::Parameter("the multiway gadget needs a nonempty multiset".into()));
    }
    if source.values.iter().any(|&v| v > i64::MAX as u64 / 4) {
        return Err(Error::Parameter("multiset values too large".into()));
    }
    let items: Vec<i64> = match kind {
        Kind::Goods => source.values.iter().map(|&v| v as i64).collect(),
        Kind::Chores => multiway_chores_multiset(&source.values),
        Kind::Mixed => return Err(Error::Parameter("the multiway gadget exists for goods or chores".into())),
    };
    let total: i64 = items.iter().sum();
    let w = Rational::new(total.into(), (kappa as i64).into());
    let mut round: Vec<Rational> = items.iter().map(|&v| int(v)).collect();
    round.push(w * int(2));
    let per_round = round.len();
    let row: Vec<Rational> = round.iter().chain(&round).cloned().collect();
    let rounds = vec![(0..per_round).collect(), (per_round..2 * per_round).collect()];
    let instance = Instance::identical(kappa as usize + 1, kind, rounds, row)?;
    let mut notes = Vec::new();
    if total % kappa as i64 != 0 {
        notes.push(format!("sum {total} is not divisible by kappa = {kappa}"));
    }
    Ok(Gadget {
        instance,
        provenance: Provenance {
            reduction: if kind == Kind::Goods { "multiway-goods" } else { "multiway-chores" },
            source: Source::Multiset(source.clone()),
            epsilon: None,
            notes,
        },
    })
}

/// Can `values` be split into `kappa` (possibly empty) parts of equal sum?
pub fn has_multiway_partition(values: &[i64], kappa: usize) -> bool {
    let total: i64 = values.iter().sum();
    if kappa == 0 || total % kappa as i64 != 0 {
        return false;
    }
    let target = total / kappa as i64;
    let mut sums = vec![0i64; kappa];
    let mut used = vec![false; kappa];
    fn go(values: &[i64], k: usize, sums: &mut [i64], used: &mut [bool], target: i64) -> bool {
        if k == values.len() {
            return sums.iter().all(|&s| s == target);
        }
        for part in 0..sums.len() {
            // unused parts are interchangeable
            if !used[part] && part > 0 && !used[part - 1] {
                break;
            }
            let was = used[part];
            sums[part] += values[k];
            used[part] = true;
            let ok = go(values, k + 1, sums, used, target);
            sums[part] -= values[k];
            used[part] = was;
            if ok {
                return true;
            }
        }
        false
    }
    go(values, 0, &mut sums, &mut used, target)
}
