//! Exact multiplication matrices and strong Lefschetz checks for artinian
//! monomial complete intersections `k[x1..xn] / (x1^d1, ..., xn^dn)` over
//! `Q` and prime fields.
//!
//! ```
//! use lefschetz::{build_matrix, slp_check, AlgebraSpec, CheckOptions, LinearForm};
//! use lefschetz::linalg::Determinant;
//!
//! let spec = AlgebraSpec::quadratic(4, 0)?;
//! let ell = LinearForm::sum(4);
//! let m = build_matrix(&spec, &ell, 1, 2)?;
//! assert_eq!(m.matrix.determinant()?, (-48).into());
//! assert!(slp_check(&spec, &ell, CheckOptions::default())?.slp);
//! # Ok::<(), lefschetz::Error>(())
//! ```

pub mod algebra;
pub mod block;
pub mod embedding;
mod error;
pub mod lefschetz;
pub mod linalg;
pub mod monomial;
pub mod primes;
pub mod report;

pub use algebra::{graded_basis, hilbert_vector, AlgebraElement, AlgebraSpec, HilbertVector};
pub use block::{decompose, recursive_middle_rank, BlockDecomposition};
pub use embedding::{EmbedVerification, EmbeddingSpec};
pub use error::{Error, Result};
pub use lefschetz::{
    build_matrix, char_search, max_rank_check, slp_check, CheckOptions, LefschetzReport,
    LinearForm, Method, Mode, MultiplicationMatrix,
};
pub use monomial::{BasisIndex, Monomial};
