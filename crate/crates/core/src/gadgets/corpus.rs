//! Small named instances with known search verdicts.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{input, Result};
use crate::instance::{Instance, Kind};
use crate::rational::{int, ratio, Rational};
use crate::search::Target;

/// `found` is whether a search for `target` should find an allocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub target: Target,
    pub found: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub instance: Instance,
    pub expected: Vec<Expectation>,
}

pub fn corpus_names() -> &'static [&'static str] {
    &["appendixA_goods_23", "prop33_goods", "prop33_chores", "prop42_goods", "prop42_chores"]
}

fn expect(pairs: &[(Target, bool)]) -> Vec<Expectation> {
    pairs.iter().map(|&(target, found)| Expectation { target, found }).collect()
}

/// Looks up a corpus instance. `prop42_chores` takes an optional agent
/// count, written `prop42_chores(3)` or `prop42_chores:3` (default 2).
pub fn corpus_instance(name: &str) -> Result<CorpusEntry> {
    let (base, arg) = split_argument(name)?;
    let (instance, expected) = match (base, arg) {
        ("appendixA_goods_23", None) => (appendix_a(), expect(&[(Target::Tef1, false)])),
        ("prop33_goods", None) => (
            Instance::single_item_rounds(Kind::Goods, vec![vec![int(1), int(1), int(2)]; 2])?,
            expect(&[(Target::Tefx, false), (Target::Tef1, true)]),
        ),
        ("prop33_chores", None) => (
            Instance::single_item_rounds(Kind::Chores, vec![vec![int(-1), int(-1), int(-2)]; 2])?,
            expect(&[(Target::Tefx, false), (Target::Tef1, true)]),
        ),
        ("prop42_goods", None) => {
            let (a, b) = (ratio(11, 10), int(2));
            (
                Instance::single_item_rounds(
                    Kind::Goods,
                    vec![vec![a.clone(), a.clone(), b.clone(), b.clone()], vec![b.clone(), b, a.clone(), a]],
                )?,
                expect(&[(Target::Tef1, true), (Target::Tef1AndPo, false)]),
            )
        }
        ("prop42_chores", n) => {
            let n = n.unwrap_or(2);
            if n < 2 {
                return Err(input("prop42_chores needs at least 2 agents"));
            }
            (prop42_chores(n)?, expect(&[(Target::Tef1, true), (Target::Tef1AndPo, false)]))
        }
        _ => {
            return Err(input(format!("unknown corpus instance {name:?}; known: {}", corpus_names().join(", "))));
        }
    };
    Ok(CorpusEntry { name: String::from(name), instance, expected })
}

fn split_argument(name: &str) -> Result<(&str, Option<usize>)> {
    let name = name.trim();
    let (base, arg) = if let Some(open) = name.find('(') {
        let arg = name[open + 1..].strip_suffix(')').ok_or_else(|| input(format!("malformed name {name:?}")))?;
        (&name[..open], Some(arg))
    } else if let Some((base, arg)) = name.split_once(':') {
        (base, Some(arg))
    } else {
        (name, None)
    };
    let arg = match arg {
        None => None,
        Some(a) => Some(a.trim().parse::<usize>().map_err(|_| input(format!("malformed argument in {name:?}")))?),
    };
    Ok((base, arg))
}

/// Three agents, 23 goods, one per round; no TEF1 allocation exists.
fn appendix_a() -> Instance {
    let head = |a: [Rational; 3], g7: Rational| {
        let mut row = a.to_vec();
        row.extend(vec![int(1); 3]);
        row.push(g7);
        row.extend([int(100), int(110), int(120)]);
        row
    };
    let mut rows = vec![
        head([ratio(9, 10), ratio(4, 5), ratio(7, 10)], ratio(3, 20)),
        head([ratio(9, 10), ratio(7, 10), ratio(4, 5)], ratio(19, 20)),
        head([ratio(4, 5), ratio(9, 10), ratio(7, 10)], ratio(1, 4)),
    ];
    // g11 ..= g23
    let tails: [[i64; 13]; 3] = [
        [200; 13],
        [200, 200, 200, 200, 200, 200, 200, 120, 120, 200, 120, 120, 200],
        [200, 200, 185, 200, 200, 200, 200, 200, 200, 200, 200, 200, 200],
    ];
    for (row, tail) in rows.iter_mut().zip(tails) {
        row.extend(tail.iter().map(|&v| int(v)));
    }
    Instance::single_item_rounds(Kind::Goods, rows).expect("static instance")
}

/// `n` agents, `2n` chores: agent 1 values the first half at -11/10 and the
/// second at -2, agent 2 the reverse, everyone else -2 throughout.
fn prop42_chores(n: usize) -> Result<Instance> {
    let (light, heavy) = (ratio(-11, 10), int(-2));
    let mut rows = vec![
        [vec![light.clone(); n], vec![heavy.clone(); n]].concat(),
        [vec![heavy.clone(); n], vec![light; n]].concat(),
    ];
    rows.extend((2..n).map(|_| vec![heavy.clone(); 2 * n]));
    Instance::single_item_rounds(Kind::Chores, rows)
}
