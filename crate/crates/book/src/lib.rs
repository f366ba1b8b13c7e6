//! The guide under `book/`, one module per chapter, so that `cargo test`
//! runs every listing as a doc-test.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}
#[doc = include_str!("../../../book/src/monomials.md")]
pub mod monomials {}
#[doc = include_str!("../../../book/src/algebra.md")]
pub mod algebra {}
#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}
#[doc = include_str!("../../../book/src/rank.md")]
pub mod rank {}
#[doc = include_str!("../../../book/src/recursion.md")]
pub mod recursion {}
#[doc = include_str!("../../../book/src/embedding.md")]
pub mod embedding {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
