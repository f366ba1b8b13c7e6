//! Dense exact linear algebra over `Z`, `Q` and `F_p`.

pub mod io;
mod matrix;
mod rank;
mod ring;

pub use matrix::{FpMatrix, IntMatrix, Matrix, RatMatrix};
pub use rank::{
    bareiss, field_rank, rank_certified, rank_fraction_free, rank_mod_p, BareissOutcome,
    Determinant, RankMethod, RankResult,
};
pub use ring::{DomainTag, Field, Integers, PrimeField, Rationals, Ring, MAX_MODULUS};
