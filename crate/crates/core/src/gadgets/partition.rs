//! Four-agent chores gadget that starts from a fixed fair prefix.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{Gadget, GadgetParams, IntegerMultiset, Provenance, Source};
use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance, Kind};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionGadget {
    pub gadget: Gadget,
    /// `b_i` to agent `i` for the four leading chores.
    pub partial: Allocation,
}

/// `s'_j = s_j - K` with `K = max(S) + ε`, rescaled so that `Σ s'_j = -2`.
pub fn partition_scaled_values(values: &[u64], epsilon: &Rational) -> Vec<Rational> {
    let k = int(*values.iter().max().expect("nonempty multiset") as i64) + epsilon;
    let raw: Vec<Rational> = values.iter().map(|&s| int(s as i64) - &k).collect();
    let total: Rational = raw.iter().sum();
    let factor = int(-2) / total;
    raw.iter().map(|v| v * &factor).collect()
}

/// Four agents, chores `b_1..b_4, c_1..c_m`, one per round. Agents 1 and 4
/// dislike every `c_j` at `-1`; agents 2 and 3 value `c_j` at `s'_j`. The
/// prefix gives `b_i` to agent `i`.
///
/// The default `ε` is `1 / (m + 1)`: with `ε < 1/m` the shifted values
/// split evenly only when `S` splits into equal-sum halves of equal size,
/// while larger `ε` can create spurious even splits.
pub fn gadget_partition_chores_tef1(source: &IntegerMultiset, params: &GadgetParams) -> Result<PartitionGadget> {
    let s = &source.values;
    if s.is_empty() || s.contains(&0) {
        return Err(Error::Parameter("the partition gadget needs a nonempty multiset of positive integers".into()));
    }
    if s.iter().any(|&v| v > i64::MAX as u64 / 4) {
        return Err(Error::Parameter("multiset values too large".into()));
    }
    let eps = params.epsilon.clone().unwrap_or_else(|| Rational::new(1.into(), (s.len() as i64 + 1).into()));
    if !eps.is_positive() {
        return Err(Error::Parameter(format!("epsilon must be positive, got {}", crate::rational::format(&eps))));
    }
    let scaled = partition_scaled_values(s, &eps);
    let minus = int(-1);
    let zero = Rational::zero();
    let b_rows = [
        [minus.clone(), zero.clone(), zero.clone(), zero.clone()],
        [minus.clone(), minus.clone(), minus.clone(), minus.clone()],
        [minus.clone(), minus.clone(), minus.clone(), minus.clone()],
        [zero.clone(), zero.clone(), zero, minus.clone()],
    ];
    let values = b_rows
        .iter()
        .enumerate()
        .map(|(agent, b)| {
            let mut row = b.to_vec();
            if agent == 1 || agent == 2 {
                row.extend(scaled.iter().cloned());
            } else {
                row.extend(vec![minus.clone(); s.len()]);
            }
            row
        })
        .collect();
    Ok(PartitionGadget {
        gadget: Gadget {
            instance: Instance::single_item_rounds(Kind::Chores, values)?,
            provenance: Provenance {
                reduction: "partition-chores",
                source: Source::Multiset(source.clone()),
                epsilon: Some(eps),
                notes: Vec::new(),
            },
        },
        partial: Allocation::new(vec![0, 1, 2, 3]),
    })
}

/// Partition by brute force: do some of the values sum to exactly half?
pub fn has_equal_split(values: &[u64]) -> bool {
    let total: u64 = values.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let half = total / 2;
    (0u64..1 << values.len())
        .any(|mask| values.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).sum::<u64>() == half)
}
