//! Friends-and-strangers graphs over the permutation state space.
//!
//! Given two graphs `X` (positions) and `Y` (people) on the same vertex set
//! `[n]`, the friends-and-strangers graph `FS(X,Y)` has one vertex per
//! bijection of people onto positions, with an edge whenever two placements
//! differ by swapping two adjacent-in-`Y` people across an edge of `X`.
//!
//! This crate provides:
//!
//! - construction and parsing for the small simple graphs involved
//!   ([`graph`]),
//! - permutations with factorial-base ranking for dense state indexing
//!   ([`perm`]),
//! - exact component enumeration of `FS(X,Y)` by breadth-first search over
//!   ranked permutations ([`fs`]),
//! - vertex connectivity and Menger-style disjoint path extraction via
//!   unit-capacity flows ([`connectivity`]),
//! - block/cut-vertex structure, Wilson classification, component-size
//!   prediction, and routing in star instances ([`structure`]),
//! - executable predicates and verifiers for the governing theorems
//!   ([`theorems`]),
//! - a deterministic Monte Carlo harness for random-graph threshold
//!   experiments ([`random_lab`]).

pub mod connectivity;
pub mod error;
pub mod fs;
pub mod graph;
pub mod perm;
pub mod random_lab;
pub mod rng;
pub mod structure;
pub mod theorems;

pub use error::{Error, Result};
pub use graph::{FamilySpec, SimpleGraph};
pub use perm::Permutation;
