//! Temporal envy-freeness for informed online fair division.
//!
//! Items arrive over ordered rounds and every item is allocated to one agent.
//! An allocation is *temporally* EF1 (TEF1) when the cumulative allocation after
//! every round is EF1. This crate provides:
//!
//! - the exact-arithmetic instance model ([`instance`]),
//! - fairness, Pareto and welfare checkers ([`fairness`]),
//! - polynomial-time TEF1 solvers for the restricted classes where TEF1 is
//!   guaranteed to exist ([`algorithms`]),
//! - an exhaustive, prefix-pruned backtracking search that decides existence
//!   questions on small instances ([`search`]),
//! - constructors for reduction gadgets, counterexamples and random instances
//!   ([`gadgets`]).
//!
//! The crate is `no_std` and only needs `alloc`. JSON formats and the command
//! line tool live in the `tefkit` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algorithms;
mod error;
pub mod fairness;
pub mod gadgets;
pub mod instance;
pub mod rational;
mod scaled;
pub mod search;

pub use error::{Error, Result};
pub use instance::{Allocation, BoundaryMap, Instance, Kind, PrefixBundles};
pub use rational::Rational;

/// Index of an agent, `0..n_agents`.
pub type AgentId = usize;
/// Index of an item, `0..m` in arrival order.
pub type ItemId = usize;
