//! Reduction gadgets, the counterexample corpus and random instances.

mod corpus;
mod multiway;
mod partition;
mod random;
mod sat;

use alloc::string::String;
use alloc::vec::Vec;

pub use corpus::{corpus_instance, corpus_names, CorpusEntry, Expectation};
pub use multiway::{gadget_multiway_repeated, has_multiway_partition, multiway_chores_multiset};
pub use partition::{gadget_partition_chores_tef1, has_equal_split, partition_scaled_values, PartitionGadget};
pub use random::{gen_random, RandomSpec};
pub use sat::{gadget_1in3sat_goods_tef1, gadget_1in3sat_tef1_po, has_equal_thirds, CnfFormula};

use crate::instance::{Instance, Kind};
use crate::rational::Rational;

/// A source multiset of positive integers, with a part count for the
/// multiway variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMultiset {
    pub values: Vec<u64>,
    pub kappa: Option<u64>,
}

impl IntegerMultiset {
    pub fn new(values: Vec<u64>) -> IntegerMultiset {
        IntegerMultiset { values, kappa: None }
    }

    pub fn with_kappa(values: Vec<u64>, kappa: u64) -> IntegerMultiset {
        IntegerMultiset { values, kappa: Some(kappa) }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GadgetParams {
    /// `None` picks the gadget's default.
    pub epsilon: Option<Rational>,
}

/// What a gadget instance was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Formula(CnfFormula),
    Multiset(IntegerMultiset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    /// CLI name of the reduction, e.g. `"partition-chores"`.
    pub reduction: &'static str,
    pub source: Source,
    pub epsilon: Option<Rational>,
    /// Remarks such as "sum not divisible by kappa".
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub instance: Instance,
    pub provenance: Provenance,
}

/// `5^k` as a rational.
pub(crate) fn pow5(k: u32) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(5u8).pow(k))
}

pub(crate) fn negate_if(kind: Kind, v: Rational) -> Rational {
    if kind == Kind::Chores {
        -v
    } else {
        v
    }
}
