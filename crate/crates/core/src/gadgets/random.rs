use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, Kind};
use crate::rational::Rational;

/// Parameters of [`gen_random`]. Values are `k / denominator` for integers
/// `k` drawn uniformly so that the value lies in `[low, high]`, after
/// clipping the range to the sign allowed by `kind`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub n_agents: usize,
    pub n_rounds: usize,
    pub per_round: usize,
    pub kind: Kind,
    pub low: i64,
    pub high: i64,
    pub denominator: u32,
    pub seed: u64,
}

impl RandomSpec {
    /// Values in `0..=10` for goods, `-10..=0` for chores and `-10..=10` for
    /// mixed instances.
    pub fn new(n_agents: usize, n_rounds: usize, per_round: usize, kind: Kind, seed: u64) -> RandomSpec {
        RandomSpec { n_agents, n_rounds, per_round, kind, low: -10, high: 10, denominator: 1, seed }
    }

    pub fn with_range(mut self, low: i64, high: i64) -> RandomSpec {
        self.low = low;
        self.high = high;
        self
    }
}

/// Deterministic pseudorandom instance (ChaCha8 seeded with `seed`).
pub fn gen_random(spec: &RandomSpec) -> Result<Instance> {
    if spec.n_agents == 0 || spec.n_rounds == 0 || spec.per_round == 0 || spec.denominator == 0 {
        return Err(Error::Parameter("agents, rounds, items per round and denominator must be positive".into()));
    }
    let (mut low, mut high) = (spec.low, spec.high);
    match spec.kind {
        Kind::Goods => low = low.max(0),
        Kind::Chores => high = high.min(0),
        Kind::Mixed => {}
    }
    if low > high {
        return Err(Error::Parameter("the value range is empty for this kind".into()));
    }
    let d = i64::from(spec.denominator);
    let (lo, hi) = (low.checked_mul(d), high.checked_mul(d));
    let (lo, hi) = lo.zip(hi).ok_or_else(|| Error::Parameter("value range overflows".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let m = spec.n_rounds * spec.per_round;
    let values: Vec<Vec<Rational>> = (0..spec.n_agents)
        .map(|_| (0..m).map(|_| Rational::new(rng.gen_range(lo..=hi).into(), d.into())).collect())
        .collect();
    let rounds = (0..spec.n_rounds).map(|t| (t * spec.per_round..(t + 1) * spec.per_round).collect()).collect();
    Instance::new(spec.n_agents, spec.kind, rounds, values)
}
