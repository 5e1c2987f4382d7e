//! Exact-arithmetic toolkit for NSSD graphs (non-singular graphs with a
//! singular deck) arising as commuting graphs of the Hv-group `(D_2n, o)`.
//!
//! The pieces, bottom-up:
//!
//! - [`dihedral`]: normal-form arithmetic in `D_2n` and the element grammar.
//! - [`hyperop`]: the hyperoperation, its commutation relation, and the
//!   Hv-group axiom checks.
//! - [`graph`], [`canon`], [`formats`]: commuting graphs, canonical forms,
//!   DOT and graph6.
//! - [`linalg`]: exact determinants, ranks and characteristic polynomials.
//! - [`nssd`]: the NSSD predicate with a certificate and a rank-only oracle.
//! - [`constructions`]: the pendant-union and bridge-join constructions.
//! - [`enumerate`]: exhaustive subset enumeration and the per-order counts.
//! - [`catalog`]: the 43 shipped vertex sets and their verification.

pub mod canon;
pub mod catalog;
pub mod constructions;
pub mod dihedral;
pub mod enumerate;
pub mod error;
pub mod formats;
pub mod graph;
pub mod hyperop;
pub mod linalg;
pub mod nssd;

pub use canon::{canonical_form, CanonicalForm};
pub use dihedral::{format_element, parse_element, GroupCtx, GroupElement};
pub use error::{Error, Result};
pub use graph::{CommutingGraph, Graph};
pub use hyperop::{commutes, HvGroupCtx, HyperProduct, Hyperoperation};
pub use linalg::{IntMatrix, IntPolynomial};
pub use nssd::{is_nssd, is_nssd_spectral, NssdCertificate, NssdFailure};

#[cfg(test)]
mod proptests;
