//! Exact rank and determinant kernels.
//!
//! Integer matrices go through fraction-free (Bareiss) elimination: after
//! eliminating with pivot `k`, every active entry is a `(k+1) x (k+1)` minor
//! of the input, so each update divides exactly by the previous pivot.
//! Field matrices (rationals, `F_p`) use ordinary Gauss-Jordan style
//! elimination. Pivot choice is the first nonzero entry in column order in
//! both cases.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{FpMatrix, IntMatrix, Matrix, RatMatrix};
use super::ring::{DomainTag, Field, PrimeField, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    FractionFree,
    Modular,
    Rational,
    BlockRecursive,
}

impl RankMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RankMethod::FractionFree => "fraction-free",
            RankMethod::Modular => "modular",
            RankMethod::Rational => "rational",
            RankMethod::BlockRecursive => "block-recursive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    /// `(row, col)` of each pivot, in the original row numbering.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pivots: Option<Vec<(usize, usize)>>,
}

impl RankResult {
    pub fn new(rank: usize, method: RankMethod) -> Self {
        RankResult {
            rank,
            method,
            pivots: None,
        }
    }
}

/// Everything a fraction-free run learns about its input.
#[derive(Clone, Debug)]
pub struct BareissOutcome {
    pub rank: usize,
    pub pivots: Vec<(usize, usize)>,
    /// Determinant for square matrices (zero when singular).
    pub determinant: Option<BigInt>,
    /// Largest intermediate entry, in bits.
    pub peak_bits: u64,
}

pub fn bareiss(m: &IntMatrix) -> BareissOutcome {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.to_rows();
    let mut order: Vec<usize> = (0..rows).collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = 0usize;
    let mut pivots = Vec::new();
    let mut peak_bits = m.max_bits();

    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            order.swap(p, r);
            swaps += 1;
        }
        pivots.push((order[r], c));
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let piv = &prow[c];
        let divide = !prev.is_one();
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = piv * &row[j];
                if !factor.is_zero() && !prow[j].is_zero() {
                    v -= &factor * &prow[j];
                }
                if divide {
                    v /= &prev;
                }
                peak_bits = peak_bits.max(v.bits());
                row[j] = v;
            }
        }
        prev = prow[c].clone();
        r += 1;
    }

    let determinant = (rows == cols).then(|| {
        if r < rows {
            BigInt::zero()
        } else if rows == 0 {
            BigInt::one()
        } else if swaps % 2 == 1 {
            -prev.clone()
        } else {
            prev.clone()
        }
    });
    BareissOutcome {
        rank: r,
        pivots,
        determinant,
        peak_bits,
    }
}

/// Exact rank over the rationals of an integer matrix.
pub fn rank_fraction_free(m: &IntMatrix) -> RankResult {
    let out = bareiss(m);
    RankResult {
        rank: out.rank,
        method: RankMethod::FractionFree,
        pivots: Some(out.pivots),
    }
}

/// Rank over `F_p` of an integer matrix, entries reduced first.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<RankResult> {
    let field = PrimeField::new(p)?;
    Ok(field_rank(&m.reduce_mod(field)))
}

struct Echelon<E> {
    rank: usize,
    pivots: Vec<(usize, usize)>,
    /// Product of pivots with the permutation sign, for square inputs.
    det: Option<E>,
}

fn eliminate<F: Field>(m: &Matrix<F>) -> Echelon<F::Elem> {
    let ring = m.ring();
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.to_rows();
    let mut order: Vec<usize> = (0..rows).collect();
    let mut det = ring.one();
    let mut r = 0;
    let mut pivots = Vec::new();

    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ring.is_zero(&a[i][c])) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            order.swap(p, r);
            det = ring.neg(&det);
        }
        pivots.push((order[r], c));
        det = ring.mul(&det, &a[r][c]);
        let inv = ring.inv(&a[r][c]).expect("pivot is nonzero");
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            if ring.is_zero(&row[c]) {
                continue;
            }
            let factor = ring.mul(&row[c], &inv);
            row[c] = ring.zero();
            for j in c + 1..cols {
                if !ring.is_zero(&prow[j]) {
                    row[j] = ring.sub(&row[j], &ring.mul(&factor, &prow[j]));
                }
            }
        }
        r += 1;
    }
    let det = (rows == cols).then(|| if r < rows { ring.zero() } else { det });
    Echelon {
        rank: r,
        pivots,
        det,
    }
}

/// Rank over a field by Gaussian elimination.
pub fn field_rank<F: Field>(m: &Matrix<F>) -> RankResult {
    let e = eliminate(m);
    let method = match m.ring().tag() {
        DomainTag::Modular => RankMethod::Modular,
        _ => RankMethod::Rational,
    };
    RankResult {
        rank: e.rank,
        method,
        pivots: Some(e.pivots),
    }
}

fn require_square<R: Ring>(m: &Matrix<R>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Exact determinant in the matrix's own domain.
pub trait Determinant {
    type Elem;
    fn determinant(&self) -> Result<Self::Elem>;
}

impl Determinant for IntMatrix {
    type Elem = BigInt;
    fn determinant(&self) -> Result<BigInt> {
        require_square(self)?;
        Ok(bareiss(self).determinant.expect("square"))
    }
}

impl Determinant for RatMatrix {
    type Elem = num_rational::BigRational;
    fn determinant(&self) -> Result<Self::Elem> {
        require_square(self)?;
        Ok(eliminate(self).det.expect("square"))
    }
}

impl Determinant for FpMatrix {
    type Elem = u64;
    fn determinant(&self) -> Result<u64> {
        require_square(self)?;
        Ok(eliminate(self).det.expect("square"))
    }
}

/// Rank over the rationals, certified cheaply when possible.
///
/// Full rank modulo `certifying_prime` implies full rank over `Q`; only a
/// deficient modular rank triggers exact fraction-free elimination.
pub fn rank_certified(m: &IntMatrix, certifying_prime: u64) -> Result<RankResult> {
    let full = m.rows().min(m.cols());
    let modular = rank_mod_p(m, certifying_prime)?;
    if modular.rank == full {
        return Ok(modular);
    }
    Ok(rank_fraction_free(m))
}
