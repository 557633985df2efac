use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{input, Error, Result};
use crate::instance::{Allocation, Instance};
use crate::rational::{self, Rational};

/// Parameter of the p-mean family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PMean {
    /// A rational `p <= 1`, `p != 0`.
    Finite(Rational),
    /// `p → 0`: geometric mean (Nash welfare).
    NashLimit,
    /// `p → -∞`: minimum utility (egalitarian welfare).
    NegInfinity,
}

impl PMean {
    /// `"neg-inf"`, `"0"` or a rational.
    pub fn parse(text: &str) -> Result<PMean> {
        match text.trim() {
            "neg-inf" | "-inf" => Ok(PMean::NegInfinity),
            other => {
                let p = rational::parse(other)?;
                Ok(if p.is_zero() { PMean::NashLimit } else { PMean::Finite(p) })
            }
        }
    }
}

/// A welfare value: exact when it is rational, otherwise a guaranteed
/// enclosure `lower <= w <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Welfare {
    Exact(Rational),
    Bounds { lower: Rational, upper: Rational },
}

/// Bits of relative precision targeted by each irrational root. The
/// enclosure returned is rigorous; its width is roughly `2^-(this - 8)`
/// relative to the value.
pub const WELFARE_PRECISION_BITS: u64 = 128;

/// p-mean welfare `((1/n) Σ u_i^p)^(1/p)` of the agents' utilities.
pub fn p_mean_welfare(instance: &Instance, alloc: &Allocation, p: &PMean) -> Result<Welfare> {
    let utils = instance.utilities(alloc)?;
    p_mean(&utils, p)
}

pub(crate) fn p_mean(utils: &[Rational], p: &PMean) -> Result<Welfare> {
    if utils.is_empty() {
        return Err(input("p-mean of no utilities"));
    }
    let n = Rational::from_integer(BigInt::from(utils.len()));
    let ill = match p {
        PMean::Finite(q) if q.is_positive() && q.is_integer() => false,
        PMean::Finite(q) if q.is_positive() => utils.iter().any(|u| u.is_negative()),
        _ => utils.iter().any(|u| !u.is_positive()),
    };
    if ill {
        return Err(Error::Domain(format!(
            "p-mean with p = {} is undefined for utilities {}",
            describe(p),
            utils.iter().map(rational::format).collect::<Vec<_>>().join(", ")
        )));
    }
    match p {
        PMean::NegInfinity => Ok(Welfare::Exact(utils.iter().min().cloned().expect("nonempty"))),
        PMean::NashLimit => {
            let product: Rational = utils.iter().product();
            Ok(root(&product, utils.len() as u64))
        }
        PMean::Finite(p) => {
            if p > &Rational::one() {
                return Err(input(format!("p-mean needs p <= 1, got {}", rational::format(p))));
            }
            let a = p.numer().to_i64().ok_or_else(|| input("p numerator too large"))?;
            let b = p.denom().to_u64().ok_or_else(|| input("p denominator too large"))?;
            // term_i = (u_i^a)^(1/b)
            let mut lower = Rational::zero();
            let mut upper = Rational::zero();
            for u in utils {
                let (lo, hi) = bounds(root(&pow(u, a), b));
                lower += lo;
                upper += hi;
            }
            lower /= &n;
            upper /= &n;
            // result = (M^b)^(1/a), inverted when a < 0
            let (lo, _) = bounds(root(&pow(&lower, b as i64), a.unsigned_abs()));
            let (_, hi) = bounds(root(&pow(&upper, b as i64), a.unsigned_abs()));
            let (lo, hi) = if a < 0 {
                if lo.is_zero() {
                    return Err(Error::Internal("welfare enclosure collapsed to zero".into()));
                }
                (hi.recip(), lo.recip())
            } else {
                (lo, hi)
            };
            Ok(if lo == hi { Welfare::Exact(lo) } else { Welfare::Bounds { lower: lo, upper: hi } })
        }
    }
}

fn describe(p: &PMean) -> alloc::string::String {
    match p {
        PMean::Finite(p) => rational::format(p),
        PMean::NashLimit => "0".into(),
        PMean::NegInfinity => "-inf".into(),
    }
}

fn bounds(w: Welfare) -> (Rational, Rational) {
    match w {
        Welfare::Exact(v) => (v.clone(), v),
        Welfare::Bounds { lower, upper } => (lower, upper),
    }
}

fn pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    }
}

/// `x^(1/k)` for `x >= 0`: exact when `x` is a perfect `k`-th power of a
/// rational, otherwise an enclosure.
fn root(x: &Rational, k: u64) -> Welfare {
    if k == 1 || x.is_zero() {
        return Welfare::Exact(x.clone());
    }
    let k32 = k as u32;
    let (num, den) = (x.numer(), x.denom());
    let (rn, rd) = (num.nth_root(k32), den.nth_root(k32));
    if num_traits::pow(rn.clone(), k as usize) == *num && num_traits::pow(rd.clone(), k as usize) == *den {
        return Welfare::Exact(Rational::new(rn, rd));
    }
    // scale so the root carries WELFARE_PRECISION_BITS significant bits
    let magnitude = num.bits() as i64 - den.bits() as i64;
    let shift = (WELFARE_PRECISION_BITS as i64 - magnitude / k as i64).max(0) as u64;
    let scale = BigInt::one() << (shift * k);
    let y = x * Rational::from_integer(scale);
    let lo = y.floor().to_integer().nth_root(k32);
    let ceil = y.ceil().to_integer();
    let mut hi = ceil.nth_root(k32);
    if num_traits::pow(hi.clone(), k as usize) < ceil {
        hi += 1;
    }
    let unit = Rational::from_integer(BigInt::one() << shift);
    Welfare::Bounds { lower: Rational::from_integer(lo) / &unit, upper: Rational::from_integer(hi) / &unit }
}
