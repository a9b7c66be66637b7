//! Finite boolean concept classes and their sample compression schemes.
//!
//! The crate is organized bottom-up:
//!
//! - [`family`]: concept classes, traces, shattering and vc-dimension, joins and
//!   restrictions, symmetry and canonical forms, the `.fam` format.
//! - [`scheme`]: unlabeled and labeled compression schemes, the exhaustive and
//!   sampled verifiers, scheme combinators, the `.ucs` decoder format.
//! - [`constructions`]: hand-built schemes for joins of the pentagon family C5,
//!   for C5⁻, and for the 6-point family W6.
//! - [`search`]: exact decision procedures for scheme existence and a DIMACS
//!   CNF encoding of the same question.
//! - [`catalog`]: isomorph-free enumeration of small maximal classes and a
//!   persistent hunt for classes whose unlabeled compression size exceeds their
//!   vc-dimension.
//! - [`select`], [`reproduce`], [`cli`]: selectors for families and schemes, the
//!   claim-reproduction suite, and the command-line front end.

pub mod bits;
pub mod error;
pub mod family;

pub use error::{Error, Result};
pub mod scheme;
pub mod constructions;
pub mod search;
pub mod catalog;
pub mod select;
pub mod reproduce;
pub mod cli;
