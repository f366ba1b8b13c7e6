//! Block structure of the quadratic multiplication matrices.
//!
//! Split the degree-`t` square-free basis in `n` variables as the basis in
//! the first `n - 1` variables followed by the monomials divisible by
//! `x_n`, each identified with its quotient by `x_n`. Since `x_n^2 = 0`,
//! `ell^t = ell'^t + t * c_n * ell'^(t-1) * x_n` where `ell'` drops the last
//! term, and in that split
//!
//! ```text
//! M_i^t = [ M'_i^t              0         ]
//!         [ c_n t M'_i^(t-1)    M'_(i-1)^t ]
//! ```
//!
//! with primes denoting matrices over the first `n - 1` variables.
//!
//! For the middle map `t = n - 2i` the top-left block factors as
//! `M'_(n-i-1) P` and the bottom-right as `P M'_(i-1)` with
//! `P = M'_i^(n-2i-1)` square. When `P` is nonsingular,
//! `rank [[A P, 0], [P, P B]] = dim P + rank(A P B)`, and `A P B` is the
//! middle map of the `(n-1)`-variable algebra in degree `i - 1`. So the
//! rank recurses down to 1x1 socle maps, and nonsingularity of `P` is
//! itself a middle-map rank one level down.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::AlgebraSpec;
use crate::error::{invalid, Error, Result};
use crate::lefschetz::{max_rank_check, multiplication_matrix, LinearForm, MultiplicationMatrix};
use crate::linalg::io::to_json_value;
use crate::linalg::{field_rank, Field, IntMatrix, Integers, Matrix, RankMethod, RankResult};

#[derive(Clone, Debug, PartialEq)]
pub struct BlockDecomposition {
    /// The algebra on the first `n - 1` variables.
    pub restricted: AlgebraSpec,
    pub top_left: IntMatrix,
    pub top_right: IntMatrix,
    /// `c_n * t`, already applied to `bottom_left`.
    pub bottom_left_scalar: BigInt,
    pub bottom_left: IntMatrix,
    pub bottom_right: IntMatrix,
}

impl BlockDecomposition {
    pub fn assemble(&self) -> IntMatrix {
        IntMatrix::block_assemble(
            &self.top_left,
            &self.top_right,
            &self.bottom_left,
            &self.bottom_right,
        )
        .expect("blocks conform by construction")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tl": to_json_value(&self.top_left),
            "tr": to_json_value(&self.top_right),
            "bl_scalar": self.bottom_left_scalar.to_string(),
            "bl": to_json_value(&self.bottom_left),
            "br": to_json_value(&self.bottom_right),
        })
    }
}

fn require_quadratic(spec: &AlgebraSpec, form: &LinearForm) -> Result<()> {
    if !spec.is_quadratic() {
        return Err(invalid("block structure needs the quadratic algebra"));
    }
    if form.len() != spec.num_vars() {
        return Err(invalid("form length differs from the variable count"));
    }
    Ok(())
}

/// The four blocks of `M_i^t` over the first `n - 1` variables.
pub fn decompose(
    spec: &AlgebraSpec,
    form: &LinearForm,
    i: usize,
    t: usize,
) -> Result<BlockDecomposition> {
    require_quadratic(spec, form)?;
    let n = spec.num_vars();
    if i == 0 || t == 0 || i >= n || i + t > n {
        return Err(invalid(format!(
            "block form needs 1 <= i <= n-1 and 1 <= t <= n-i, got i={i}, t={t}, n={n}"
        )));
    }
    let restricted = spec.restricted()?;
    let rform = form.restricted();
    let top_left = multiplication_matrix(&restricted, &rform, i, t);
    let bottom_right = multiplication_matrix(&restricted, &rform, i - 1, t);
    let top_right = IntMatrix::zeros(Integers, top_left.rows(), bottom_right.cols());
    let bottom_left_scalar = BigInt::from(form.last()) * t;
    let bottom_left = multiplication_matrix(&restricted, &rform, i, t - 1).scale(&bottom_left_scalar);
    Ok(BlockDecomposition {
        restricted,
        top_left,
        top_right,
        bottom_left_scalar,
        bottom_left,
        bottom_right,
    })
}

/// `M'_(n-i-1) * M'_i^(n-2i-1) * M'_(i-1)` over the first `n - 1`
/// variables, for `1 <= i < n/2`.
pub fn inner_product_matrix(spec: &AlgebraSpec, form: &LinearForm, i: usize) -> Result<IntMatrix> {
    require_quadratic(spec, form)?;
    let n = spec.num_vars();
    if i == 0 || 2 * i >= n {
        return Err(invalid(format!("need 1 <= i < n/2, got i={i}, n={n}")));
    }
    let restricted = spec.restricted()?;
    let rform = form.restricted();
    let left = multiplication_matrix(&restricted, &rform, n - i - 1, 1);
    let middle = multiplication_matrix(&restricted, &rform, i, n - 2 * i - 1);
    let right = multiplication_matrix(&restricted, &rform, i - 1, 1);
    left.mat_mul(&middle)?.mat_mul(&right)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockRankOutcome {
    pub result: RankResult,
    /// The characteristic/coefficient hypotheses did not hold at the top.
    pub precondition_violated: bool,
    /// Levels where the inner block was singular and dense elimination ran.
    pub fallbacks: usize,
    /// Recursion nodes visited.
    pub nodes: usize,
    /// Largest entry, in bits, of any matrix actually built.
    pub peak_bits: u64,
}

#[derive(Default)]
struct Walk {
    fallbacks: usize,
    nodes: usize,
    peak_bits: u64,
}

/// Rank of the middle map `M_i^(n-2i)` of the quadratic algebra by block
/// recursion.
///
/// Requires characteristic 0 or `p > n` and nonzero coefficients; otherwise
/// the guard fires and the rank comes from dense elimination instead.
pub fn recursive_middle_rank(
    spec: &AlgebraSpec,
    form: &LinearForm,
    i: usize,
) -> Result<BlockRankOutcome> {
    require_quadratic(spec, form)?;
    let n = spec.num_vars();
    if 2 * i >= n {
        return Err(invalid(format!("middle maps need i < n/2, got i={i}, n={n}")));
    }
    let p = spec.characteristic();
    let coefficients_ok = form
        .coefficients()
        .iter()
        .all(|&c| c != 0 && (p == 0 || c.rem_euclid(p as i64) != 0));
    let characteristic_ok = p == 0 || p as usize > n;
    if !(coefficients_ok && characteristic_ok) {
        let verdict = dense_middle(spec, form, i);
        return Ok(BlockRankOutcome {
            peak_bits: verdict.1,
            result: verdict.0,
            precondition_violated: true,
            fallbacks: 1,
            nodes: 1,
        });
    }
    let mut walk = Walk::default();
    let rank = middle_rank(spec, form, i, &mut walk);
    Ok(BlockRankOutcome {
        result: RankResult::new(rank, RankMethod::BlockRecursive),
        precondition_violated: false,
        fallbacks: walk.fallbacks,
        nodes: walk.nodes,
        peak_bits: walk.peak_bits,
    })
}

fn dense_middle(spec: &AlgebraSpec, form: &LinearForm, i: usize) -> (RankResult, u64) {
    let t = spec.num_vars() - 2 * i;
    let m = MultiplicationMatrix {
        spec: spec.clone(),
        form: form.clone(),
        source_degree: i,
        power: t,
        matrix: multiplication_matrix(spec, form, i, t),
    };
    let bits = m.matrix.max_bits();
    (max_rank_check(&m).result, bits)
}

fn middle_rank(spec: &AlgebraSpec, form: &LinearForm, i: usize, walk: &mut Walk) -> usize {
    walk.nodes += 1;
    let n = spec.num_vars();
    let t = n - 2 * i;
    if i == 0 {
        // 1x1: t! times the product of the coefficients.
        let (r, bits) = dense_middle(spec, form, 0);
        walk.peak_bits = walk.peak_bits.max(bits);
        return r.rank;
    }
    let restricted = spec.restricted().expect("n > 2i >= 2");
    let rform = form.restricted();
    let scalar = BigInt::from(form.last()) * t;
    let scalar_ok = !spec.normalize(scalar).is_zero();
    let inner_dim = binomial(n - 1, i);
    // P = M'_i^(t-1) is the identity when t = 1.
    let inner_ok = t == 1 || middle_rank(&restricted, &rform, i, walk) == inner_dim;
    if !(scalar_ok && inner_ok) {
        walk.fallbacks += 1;
        let (r, bits) = dense_middle(spec, form, i);
        walk.peak_bits = walk.peak_bits.max(bits);
        return r.rank;
    }
    inner_dim + middle_rank(&restricted, &rform, i - 1, walk)
}

/// `[[A P, 0], [P, P B]]`.
pub fn factored_assemble<F: Field>(a: &Matrix<F>, b: &Matrix<F>, p: &Matrix<F>) -> Result<Matrix<F>> {
    let ap = a.mat_mul(p)?;
    let pb = p.mat_mul(b)?;
    let zero = Matrix::zeros(p.ring().clone(), ap.rows(), pb.cols());
    Matrix::block_assemble(&ap, &zero, p, &pb)
}

/// Rank of `[[A P, 0], [P, P B]]` as `dim P + rank(A P B)` for nonsingular
/// `P`.
pub fn factored_rank<F: Field>(a: &Matrix<F>, b: &Matrix<F>, p: &Matrix<F>) -> Result<RankResult> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch("P must be square".into()));
    }
    if a.cols() != p.rows() || b.rows() != p.cols() {
        return Err(Error::DimensionMismatch(format!(
            "A is {}x{}, P is {}x{}, B is {}x{}",
            a.rows(),
            a.cols(),
            p.rows(),
            p.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if field_rank(p).rank != p.rows() {
        return Err(invalid("P is singular"));
    }
    let apb = a.mat_mul(p)?.mat_mul(b)?;
    let inner = field_rank(&apb);
    Ok(RankResult::new(p.rows() + inner.rank, inner.method))
}
