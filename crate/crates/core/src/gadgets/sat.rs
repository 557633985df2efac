//! 1-in-3-SAT gadgets: three-agent goods (TEF1) and two-agent TEF1 ∧ PO.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{negate_if, pow5, Gadget, GadgetParams, Provenance, Source};
use crate::error::{Error, Result};
use crate::instance::{Instance, Kind};
use crate::rational::{ratio, Rational};
use crate::search::tail_values;

/// A CNF formula with exactly three literals per clause. Literal `k > 0`
/// is `x_k`, `-k` is its negation; variables are `1..=n_vars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    n_vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(n_vars: usize, clauses: Vec<[i32; 3]>) -> Result<CnfFormula> {
        if n_vars == 0 || clauses.is_empty() {
            return Err(Error::Parameter("a formula needs at least one variable and one clause".into()));
        }
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > n_vars {
                    return Err(Error::Parameter(format!("literal {lit} outside variables 1..={n_vars}")));
                }
            }
        }
        Ok(CnfFormula { n_vars, clauses })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// Does `assignment` (indexed by variable - 1) make exactly one literal
    /// of every clause true?
    pub fn is_one_in_three(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().filter(|&&lit| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0)).count() == 1
        })
    }

    /// First satisfying assignment in binary counting order, by brute force.
    pub fn one_in_three_assignment(&self) -> Option<Vec<bool>> {
        (0u64..1 << self.n_vars)
            .map(|mask| (0..self.n_vars).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.is_one_in_three(a))
    }

    /// `v(t_i)` and `v(f_i)` for `i = 1..=n`: `5^(m+n-i)` plus `5^(m-j)` for
    /// each occurrence of the literal in clause `C_j`.
    fn literal_values(&self) -> Vec<(Rational, Rational)> {
        let (n, m) = (self.n_vars as u32, self.clauses.len() as u32);
        (1..=n)
            .map(|i| {
                let mut t = pow5(m + n - i);
                let mut f = t.clone();
                for (j, clause) in self.clauses.iter().enumerate() {
                    let weight = pow5(m - 1 - j as u32);
                    for &lit in clause {
                        if lit == i as i32 {
                            t += &weight;
                        } else if lit == -(i as i32) {
                            f += &weight;
                        }
                    }
                }
                (t, f)
            })
            .collect()
    }

    /// `Σ_{j=1..m} 5^(j-1)`.
    fn clause_sum(&self) -> Rational {
        (0..self.clauses.len() as u32).map(pow5).sum()
    }

    /// `Σ_{i=1..n} 5^(m+i-1)`.
    fn variable_sum(&self) -> Rational {
        let m = self.clauses.len() as u32;
        (0..self.n_vars as u32).map(|i| pow5(m + i)).sum()
    }
}

/// Three agents, goods `s, t_1, f_1, …, t_n, f_n, r, g_1, …, g_21`, one per
/// round. The first `2n + 2` goods are valued identically; the tail uses
/// the fixed three-agent table. A TEF1 allocation should exist exactly when
/// the formula has a 1-in-3 assignment.
pub fn gadget_1in3sat_goods_tef1(formula: &CnfFormula) -> Gadget {
    let mut head = vec![formula.variable_sum() + formula.clause_sum() * Rational::from_integer(2.into())];
    for (t, f) in formula.literal_values() {
        head.push(t);
        head.push(f);
    }
    head.push(formula.clause_sum());
    let tail = tail_values();
    let values = (0..3)
        .map(|agent| {
            let mut row = head.clone();
            row.extend(tail[agent].iter().map(|&v| Rational::from_integer(v.into())));
            row
        })
        .collect();
    Gadget {
        instance: Instance::single_item_rounds(Kind::Goods, values).expect("gadget values are goods"),
        provenance: Provenance {
            reduction: "1in3sat-goods",
            source: Source::Formula(formula.clone()),
            epsilon: None,
            notes: Vec::new(),
        },
    }
}

/// Two agents, items `t_1, f_1, …, t_n, f_n, r, o_1, …, o_4`, one per round.
/// The first `2n + 1` items are valued identically; `o_1..o_4` are worth
/// about `5^(m+n)` with an `ε` tilt that makes exactly one split of them
/// both fair and efficient. Chores negate every value.
pub fn gadget_1in3sat_tef1_po(formula: &CnfFormula, kind: Kind, params: &GadgetParams) -> Result<Gadget> {
    if kind == Kind::Mixed {
        return Err(Error::Parameter("the TEF1+PO gadget exists for goods or chores".into()));
    }
    let eps = params.epsilon.clone().unwrap_or_else(|| ratio(1, 4));
    if !eps.is_positive() || eps >= ratio(1, 3) {
        return Err(Error::Parameter(format!(
            "epsilon must satisfy 0 < ε < 1/3, got {}",
            crate::rational::format(&eps)
        )));
    }
    let mut head = Vec::new();
    for (t, f) in formula.literal_values() {
        head.push(t);
        head.push(f);
    }
    head.push(formula.clause_sum());
    let big = pow5((formula.n_vars + formula.clauses.len()) as u32);
    let low = &big - &eps;
    let tails = [[big.clone(), low.clone(), low.clone(), big.clone()], [low.clone(), big.clone(), big.clone(), low]];
    let values =
        tails.iter().map(|tail| head.iter().chain(tail).map(|v| negate_if(kind, v.clone())).collect()).collect();
    let reduction = if kind == Kind::Goods { "1in3sat-po-goods" } else { "1in3sat-po-chores" };
    Ok(Gadget {
        instance: Instance::single_item_rounds(kind, values)?,
        provenance: Provenance {
            reduction,
            source: Source::Formula(formula.clone()),
            epsilon: Some(eps),
            notes: Vec::new(),
        },
    })
}

/// Can `values` be split into three parts of equal sum?
pub fn has_equal_thirds(values: &[Rational]) -> bool {
    let total: Rational = values.iter().sum();
    let third = total / Rational::from_integer(3.into());
    let mut sums = [Rational::zero(), Rational::zero(), Rational::zero()];
    fn go(values: &[Rational], k: usize, sums: &mut [Rational; 3], third: &Rational) -> bool {
        if k == values.len() {
            return sums.iter().all(|s| s == third);
        }
        for part in 0..3 {
            // empty parts are interchangeable (all values are positive)
            if part > 0 && sums[part - 1].is_zero() {
                break;
            }
            sums[part] += &values[k];
            let ok = sums[part] <= *third && go(values, k + 1, sums, third);
            sums[part] -= &values[k];
            if ok {
                return true;
            }
        }
        false
    }
    go(values, 0, &mut sums, &third)
}
