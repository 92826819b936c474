//! Deciding whether a collection of local density matrices (a *mean field
//! state*) is compatible with a global multipartite quantum state, and
//! constructing an explicit witness state for every positive answer.
//!
//! Three compatibility questions are covered:
//!
//! * pure states of `n` qubits — the margin-vector inequalities, the `V*`
//!   vertex polytope and the even-pure-state witness ([`qubit_array`]);
//! * two-qubit mixed states with a fixed spectrum — the four closed-form
//!   inequalities, the region Ω in the `(λ^A, λ^B)` plane and the three
//!   explicit witness families ([`two_qubit`]);
//! * the convex envelope over a spectrum's unitary orbit — the reduction to
//!   classical bipartite distributions and majorization
//!   ([`classical_bridge`]).
//!
//! [`linalg`] holds the dense complex kernel (tensor products, partial
//! traces, a Jacobi eigensolver, purification), [`spectra`] the majorization
//! machinery, and [`numerics`] the seeded samplers, the unitary-orbit
//! optimizer and a small simplex used as independent verification oracles.

pub mod classical_bridge;
pub mod error;
pub mod json;
pub mod linalg;
pub mod numerics;
pub mod qubit_array;
pub mod spectra;
pub mod two_qubit;

pub use error::{Error, Result};

/// Numerical tolerances used by validated constructors and predicates.
///
/// The defaults leave wide margin for double precision at the dimensions
/// this crate targets (`dim <= 256`, eigenproblems `dim <= 16`).
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Maximum entrywise deviation from `m == m†`.
    pub herm: f64,
    /// Maximum deviation of a trace or probability sum from 1.
    pub trace: f64,
    /// Most negative admissible eigenvalue of a density matrix.
    pub psd: f64,
    /// Residual allowed in eigenpair and marginal reconstructions.
    pub eig: f64,
    /// Column orthonormality residual for eigenvector matrices.
    pub orth: f64,
    /// Slack on majorization partial-sum and membership comparisons.
    pub maj: f64,
    /// Largest matrix dimension `kron` may produce.
    pub dim_cap: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            herm: 1e-9,
            trace: 1e-9,
            psd: 1e-9,
            eig: 1e-8,
            orth: 1e-8,
            maj: 1e-10,
            dim_cap: 256,
        }
    }
}

impl Tolerances {
    /// Tolerances with the membership/majorization slack replaced.
    pub fn with_maj(slack: f64) -> Self {
        Tolerances {
            maj: slack,
            ..Tolerances::default()
        }
    }
}
