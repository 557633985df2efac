use alloc::vec::Vec;

use num_traits::Zero;

use crate::instance::Instance;
use crate::rational::Rational;

/// Which restricted settings an instance belongs to. Flags are computed
/// independently, so several can hold at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub two_agents: bool,
    /// Type (1 or 2) of every item when at most two distinct value vectors
    /// `(v_1(o), …, v_n(o))` occur; the first item's vector is type 1.
    pub two_types: Option<Vec<u8>>,
    /// `p_j` per item when every agent values item `j` at `0` or `p_j`
    /// (`0` for items nobody values).
    pub generalized_binary: Option<Vec<Rational>>,
    /// 0-based peak item per agent; requires one item per round.
    pub single_peaked: Option<Vec<usize>>,
    /// 0-based dip item per agent; requires one item per round.
    pub single_dipped: Option<Vec<usize>>,
    pub identical_valuations: bool,
    pub rounds_single_item: bool,
    pub two_rounds: bool,
}

pub fn detect_class(instance: &Instance) -> ClassReport {
    let single = instance.is_single_item_rounds();
    ClassReport {
        two_agents: instance.n_agents() == 2,
        two_types: two_type_partition(instance),
        generalized_binary: binary_weights(instance),
        single_peaked: single.then(|| extrema(instance, true)).flatten(),
        single_dipped: single.then(|| extrema(instance, false)).flatten(),
        identical_valuations: instance.has_identical_valuations(),
        rounds_single_item: single,
        two_rounds: instance.n_rounds() == 2,
    }
}

fn column(instance: &Instance, item: usize) -> Vec<&Rational> {
    (0..instance.n_agents()).map(|i| instance.value(i, item)).collect()
}

pub(super) fn two_type_partition(instance: &Instance) -> Option<Vec<u8>> {
    let mut kinds: Vec<Vec<&Rational>> = Vec::new();
    let mut types = Vec::with_capacity(instance.n_items());
    for item in 0..instance.n_items() {
        let col = column(instance, item);
        let pos = match kinds.iter().position(|k| *k == col) {
            Some(pos) => pos,
            None if kinds.len() < 2 => {
                kinds.push(col);
                kinds.len() - 1
            }
            None => return None,
        };
        types.push(pos as u8 + 1);
    }
    Some(types)
}

pub(super) fn binary_weights(instance: &Instance) -> Option<Vec<Rational>> {
    (0..instance.n_items())
        .map(|item| {
            let mut p: Option<&Rational> = None;
            for v in column(instance, item).into_iter().filter(|v| !v.is_zero()) {
                match p {
                    Some(q) if q != v => return None,
                    _ => p = Some(v),
                }
            }
            Some(p.cloned().unwrap_or_else(Rational::zero))
        })
        .collect()
}

/// Per-agent peak (or dip) when every agent's sequence over items is weakly
/// rising then weakly falling (or the reverse).
pub(super) fn extrema(instance: &Instance, peaked: bool) -> Option<Vec<usize>> {
    instance.values().iter().map(|row| unimodal_at(row, peaked)).collect()
}

fn unimodal_at(row: &[Rational], peaked: bool) -> Option<usize> {
    if row.is_empty() {
        return Some(0);
    }
    // a dip is a peak of the negated sequence
    let up = |a: &Rational, b: &Rational| if peaked { a <= b } else { a >= b };
    let mut best = 0;
    for (k, v) in row.iter().enumerate() {
        if !up(v, &row[best]) {
            best = k;
        }
    }
    // the first extreme position works whenever any does
    let rising = row[..=best].windows(2).all(|w| up(&w[0], &w[1]));
    let falling = row[best..].windows(2).all(|w| up(&w[1], &w[0]));
    (rising && falling).then_some(best)
}
