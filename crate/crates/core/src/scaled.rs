//! Integer copies of a valuation profile.
//!
//! Multiplying every value by the common denominator is a positive scaling,
//! so every envy and dominance comparison keeps its outcome. The hot loops
//! (search, Pareto brute force) then run on `i128` when the sums provably fit
//! and on `BigInt` otherwise.

use alloc::vec::Vec;
use core::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fairness::Relation;
use crate::instance::{Instance, Kind};
use crate::rational::Rational;

pub(crate) trait Scalar:
    Clone + Ord + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> + Send + Sync + core::fmt::Debug
{
}

impl<T> Scalar for T where
    T: Clone + Ord + Zero + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T> + Send + Sync + core::fmt::Debug
{
}

pub(crate) fn diff<T: Scalar>(a: &T, b: &T) -> T {
    let mut d = a.clone();
    d -= b;
    d
}

/// `values[agent][item]`, scaled to integers.
#[derive(Clone, Debug)]
pub(crate) struct Profile<T> {
    pub values: Vec<Vec<T>>,
}

pub(crate) enum Scaled {
    Small(Profile<i128>),
    Big(Profile<BigInt>),
}

/// Largest per-agent absolute total that still leaves `i128` headroom for
/// differences and the envy offsets added on top.
const SMALL_LIMIT_BITS: u64 = 120;

pub(crate) fn scale_values(values: &[Vec<Rational>]) -> Scaled {
    let mut lcm = BigInt::one();
    for v in values.iter().flatten() {
        lcm = lcm.lcm(v.denom());
    }
    let ints: Vec<Vec<BigInt>> =
        values.iter().map(|row| row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()).collect();
    let fits = ints.iter().all(|row| {
        let total: BigInt = row.iter().map(|v| v.abs()).sum();
        total.bits() <= SMALL_LIMIT_BITS
    });
    if fits {
        Scaled::Small(Profile {
            values: ints
                .iter()
                .map(|row| row.iter().map(|v| v.to_i128().expect("checked bit length")).collect())
                .collect(),
        })
    } else {
        Scaled::Big(Profile { values: ints })
    }
}

pub(crate) fn scale(instance: &Instance) -> Scaled {
    scale_values(instance.values())
}

/// Running statistics of agent `i`'s values over bundle `j`.
#[derive(Clone, Debug)]
pub(crate) struct BundleStats<T> {
    pub sum: T,
    pub min: Option<T>,
    pub max: Option<T>,
}

impl<T: Scalar> BundleStats<T> {
    pub fn empty() -> Self {
        BundleStats { sum: T::zero(), min: None, max: None }
    }

    pub fn push(&mut self, v: &T) {
        self.sum += v;
        if self.min.as_ref().is_none_or(|m| v < m) {
            self.min = Some(v.clone());
        }
        if self.max.as_ref().is_none_or(|m| v > m) {
            self.max = Some(v.clone());
        }
    }
}

/// Does agent `i` satisfy `relation` towards `j`, given `i`'s statistics of
/// its own bundle and of `j`'s bundle?
///
/// EF1 and EFX are read as "EF, or removing one (resp. any) candidate item
/// fixes the envy". The EF disjunct makes empty candidate sets behave
/// vacuously and keeps EF ⇒ EFX ⇒ EF1 for every kind.
pub(crate) fn pair_holds<T: Scalar>(
    kind: Kind,
    relation: Relation,
    own: &BundleStats<T>,
    other: &BundleStats<T>,
) -> bool {
    if own.sum >= other.sum {
        return true;
    }
    // removing g from j's bundle: own >= other - g
    let drop_other = |g: &T| own.sum >= diff(&other.sum, g);
    // removing c from i's bundle: own - c >= other
    let drop_own = |c: &T| diff(&own.sum, c) >= other.sum;
    match (relation, kind) {
        (Relation::Ef, _) => false,
        (Relation::Ef1, Kind::Goods) => other.max.as_ref().is_some_and(drop_other),
        (Relation::Ef1, Kind::Chores) => own.min.as_ref().is_some_and(drop_own),
        (Relation::Ef1, Kind::Mixed) => {
            own.min.as_ref().is_some_and(drop_own) || other.max.as_ref().is_some_and(drop_other)
        }
        (Relation::Efx, Kind::Goods) => other.min.as_ref().is_some_and(drop_other),
        (Relation::Efx, Kind::Chores) => own.max.as_ref().is_some_and(drop_own),
        (Relation::Efx, Kind::Mixed) => {
            (own.max.is_some() || other.min.is_some())
                && own.max.as_ref().is_none_or(drop_own)
                && other.min.as_ref().is_none_or(drop_other)
        }
    }
}
