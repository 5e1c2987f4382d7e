//! The NSSD predicate: non-singular adjacency matrix, every vertex-deleted
//! subgraph singular.
//!
//! [`is_nssd`] decides through the determinant and the principal minors and
//! returns a certificate. [`is_nssd_spectral`] is an independent route
//! using ranks only; the two must agree on every input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::Graph;
use crate::linalg::{determinant, nullity, principal_minor, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NssdFailure {
    /// The graph has no vertices.
    EmptyGraph,
    /// `det(A) = 0`.
    Singular,
    /// `G - v` is non-singular.
    NonsingularDeckEntry(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NssdCertificate {
    pub det: BigInt,
    /// `minor_diag[i] = det(A with row and column i removed)`; empty for a
    /// single vertex.
    pub minor_diag: Vec<BigInt>,
    pub verdict: bool,
    pub failure: Option<NssdFailure>,
}

impl fmt::Display for NssdCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "det = {}", self.det)?;
        let minors: Vec<String> = self.minor_diag.iter().map(ToString::to_string).collect();
        writeln!(f, "principal minors = [{}]", minors.join(", "))?;
        match self.failure {
            None => write!(f, "verdict: NSSD"),
            Some(NssdFailure::EmptyGraph) => write!(f, "verdict: not NSSD (empty graph)"),
            Some(NssdFailure::Singular) => write!(f, "verdict: not NSSD (singular)"),
            Some(NssdFailure::NonsingularDeckEntry(v)) => {
                write!(f, "verdict: not NSSD (G - v{v} is non-singular)")
            }
        }
    }
}

/// Full certificate for `g`.
pub fn is_nssd(g: &Graph) -> NssdCertificate {
    certificate_for(&g.adjacency_matrix())
}

/// Same as [`is_nssd`] for an arbitrary square integer matrix.
pub fn certificate_for(a: &IntMatrix) -> NssdCertificate {
    let n = a.dim();
    let det = determinant(a);
    let minor_diag: Vec<BigInt> = if n >= 2 {
        (0..n)
            .map(|i| principal_minor(a, i).expect("index in range"))
            .collect()
    } else {
        Vec::new()
    };
    let failure = if n == 0 {
        Some(NssdFailure::EmptyGraph)
    } else if det.is_zero() {
        Some(NssdFailure::Singular)
    } else {
        // n == 1 with det != 0 cannot come from a graph; its deck is the
        // empty matrix, which is non-singular.
        if n == 1 {
            Some(NssdFailure::NonsingularDeckEntry(0))
        } else {
            minor_diag
                .iter()
                .position(|m| !m.is_zero())
                .map(NssdFailure::NonsingularDeckEntry)
        }
    };
    NssdCertificate {
        det,
        minor_diag,
        verdict: failure.is_none(),
        failure,
    }
}

/// Verdict only, stopping at the first violated condition. Graphs with an
/// isolated vertex are rejected before any elimination.
pub fn is_nssd_fast(g: &Graph) -> bool {
    if g.order() < 2 || g.has_isolated_vertex() {
        return false;
    }
    let a = g.adjacency_matrix();
    if determinant(&a).is_zero() {
        return false;
    }
    (0..a.dim()).all(|i| principal_minor(&a, i).expect("index in range").is_zero())
}

/// Rank-only oracle: `nullity(A) = 0` and `nullity(A - v) >= 1` for all `v`.
pub fn is_nssd_spectral(g: &Graph) -> bool {
    let n = g.order();
    if n == 0 {
        return false;
    }
    let a = g.adjacency_matrix();
    if nullity(&a) != 0 {
        return false;
    }
    (0..n).all(|i| nullity(&a.principal_submatrix(i).expect("index in range")) >= 1)
}
