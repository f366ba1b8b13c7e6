//! Multiplication matrices of `x ell^t : A_i -> A_{i+t}` and the strong
//! Lefschetz decision.
//!
//! Rows of `M_i^t` are indexed by the degree `i + t` basis and columns by
//! the degree `i` basis, both in decreasing revlex order. Entry `(v, u)` is
//! the coefficient of `v` in `ell^t * u`; writing `v = u * x^c` with
//! `|c| = t`, that is the multinomial `t! / prod(c_k!)` times
//! `prod(coef_k ^ c_k)`, and zero when `u` does not divide `v`. Entries are
//! kept as integers in every characteristic and reduced only when a rank is
//! taken.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{graded_basis, hilbert_vector, AlgebraSpec};
use crate::block::recursive_middle_rank;
use crate::error::{invalid, Error, Result};
use crate::linalg::{rank_certified, rank_mod_p, IntMatrix, Integers, RankMethod, RankResult};

/// Prime used to certify maximal rank over `Q`: full rank modulo any prime
/// implies full rank over the rationals.
pub const CERTIFYING_PRIME: u64 = 2_305_843_009_213_693_951;

/// `ell = c_1 x_1 + ... + c_n x_n` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm {
    coefficients: Vec<i64>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<i64>) -> Self {
        LinearForm { coefficients }
    }

    /// `x_1 + ... + x_n`.
    pub fn sum(n: usize) -> Self {
        LinearForm {
            coefficients: vec![1; n],
        }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// The image of `ell` after setting the last variable to zero.
    pub fn restricted(&self) -> LinearForm {
        LinearForm {
            coefficients: self.coefficients[..self.coefficients.len().saturating_sub(1)].to_vec(),
        }
    }

    pub fn last(&self) -> i64 {
        *self.coefficients.last().expect("nonempty form")
    }

    fn check(&self, spec: &AlgebraSpec) -> Result<()> {
        if self.coefficients.len() != spec.num_vars() {
            return Err(invalid(format!(
                "form has {} coefficients, algebra has {} variables",
                self.coefficients.len(),
                spec.num_vars()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicationMatrix {
    pub spec: AlgebraSpec,
    pub form: LinearForm,
    pub source_degree: usize,
    pub power: usize,
    /// Integer lift of the matrix; reduce modulo the characteristic when
    /// it is positive.
    pub matrix: IntMatrix,
}

/// `M_i^t` with range checks on `i` and `t`.
pub fn build_matrix(
    spec: &AlgebraSpec,
    form: &LinearForm,
    i: usize,
    t: usize,
) -> Result<MultiplicationMatrix> {
    form.check(spec)?;
    let m = spec.socle_degree();
    if i + t > m {
        return Err(invalid(format!(
            "degrees {i} -> {} exceed socle degree {m}",
            i + t
        )));
    }
    Ok(MultiplicationMatrix {
        spec: spec.clone(),
        form: form.clone(),
        source_degree: i,
        power: t,
        matrix: multiplication_matrix(spec, form, i, t),
    })
}

/// `M_i^t` without range checks: degrees past the socle give empty bases.
pub(crate) fn multiplication_matrix(
    spec: &AlgebraSpec,
    form: &LinearForm,
    i: usize,
    t: usize,
) -> IntMatrix {
    let source = graded_basis(spec, i);
    let target = graded_basis(spec, i + t);
    let factorials = factorials(t);
    let powers: Vec<Vec<BigInt>> = form
        .coefficients()
        .iter()
        .map(|&c| {
            let c = BigInt::from(c);
            let mut row = vec![BigInt::one()];
            for e in 1..=t {
                let next = &row[e - 1] * &c;
                row.push(next);
            }
            row
        })
        .collect();

    let mut out = IntMatrix::zeros(Integers, target.len(), source.len());
    for (col, u) in source.iter().enumerate() {
        for (row, v) in target.iter().enumerate() {
            let Some(step) = v.div(u) else {
                continue;
            };
            let mut entry = factorials[t].clone();
            let mut denom = BigInt::one();
            for (k, &e) in step.exponents().iter().enumerate() {
                if e > 0 {
                    entry *= &powers[k][e as usize];
                    denom *= &factorials[e as usize];
                }
            }
            entry /= denom;
            if !entry.is_zero() {
                out.set(row, col, entry);
            }
        }
    }
    out
}

fn factorials(t: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for k in 1..=t {
        let next = &f[k - 1] * k;
        f.push(next);
    }
    f
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxRankVerdict {
    pub maximal: bool,
    pub expected: usize,
    pub result: RankResult,
}

/// Rank of `M_i^t` in the algebra's characteristic, compared to
/// `min(rows, cols)`.
pub fn max_rank_check(m: &MultiplicationMatrix) -> MaxRankVerdict {
    let expected = m.matrix.rows().min(m.matrix.cols());
    let result = match m.spec.characteristic() {
        0 => rank_certified(&m.matrix, CERTIFYING_PRIME).expect("certifying prime is prime"),
        p => rank_mod_p(&m.matrix, p).expect("validated characteristic"),
    };
    MaxRankVerdict {
        maximal: result.rank == expected,
        expected,
        result,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every `(i, t)` with `t >= 1` and `i + t <= socle degree`.
    #[default]
    Full,
    /// Only `(i, m - 2i)` for `0 <= i < m / 2`.
    Middle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Build the matrix and eliminate.
    #[default]
    Dense,
    /// Block recursion where it applies, dense elsewhere.
    Block,
    /// Same as `Block`.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: Mode,
    pub method: Method,
    pub jobs: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            mode: Mode::Full,
            method: Method::Dense,
            jobs: 1,
        }
    }
}

impl CheckOptions {
    pub fn middle() -> Self {
        CheckOptions {
            mode: Mode::Middle,
            ..Default::default()
        }
    }

    pub fn with_method(self, method: Method) -> Self {
        CheckOptions { method, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapRecord {
    pub i: usize,
    pub t: usize,
    pub rows: usize,
    pub cols: usize,
    pub expected: usize,
    pub rank: usize,
    pub maximal: bool,
    pub method: RankMethod,
    pub ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub spec: AlgebraSpec,
    pub form: LinearForm,
    pub mode: Mode,
    pub characteristic: u64,
    pub maps: Vec<MapRecord>,
    pub slp: bool,
    pub failing: Vec<(usize, usize)>,
    pub total_ms: f64,
}

impl LefschetzReport {
    pub(crate) fn assemble(
        spec: &AlgebraSpec,
        form: &LinearForm,
        mode: Mode,
        maps: Vec<MapRecord>,
        total_ms: f64,
    ) -> Self {
        let failing: Vec<(usize, usize)> =
            maps.iter().filter(|r| !r.maximal).map(|r| (r.i, r.t)).collect();
        LefschetzReport {
            spec: spec.clone(),
            form: form.clone(),
            mode,
            characteristic: spec.characteristic(),
            slp: failing.is_empty(),
            failing,
            maps,
            total_ms,
        }
    }
}

/// The `(i, t)` pairs a check visits, in report order.
pub fn map_list(spec: &AlgebraSpec, mode: Mode) -> Vec<(usize, usize)> {
    let m = spec.socle_degree();
    match mode {
        Mode::Full => (0..m)
            .flat_map(|i| (1..=m - i).map(move |t| (i, t)))
            .collect(),
        Mode::Middle => (0..m).take_while(|&i| 2 * i < m).map(|i| (i, m - 2 * i)).collect(),
    }
}

fn block_applies(spec: &AlgebraSpec, i: usize, t: usize) -> bool {
    spec.is_quadratic() && 2 * i + t == spec.num_vars()
}

fn check_one(
    spec: &AlgebraSpec,
    form: &LinearForm,
    i: usize,
    t: usize,
    method: Method,
) -> MapRecord {
    let start = Instant::now();
    let h = hilbert_vector(spec);
    let (rows, cols) = (h.get(i + t) as usize, h.get(i) as usize);
    let expected = rows.min(cols);
    let result = if method != Method::Dense && block_applies(spec, i, t) {
        recursive_middle_rank(spec, form, i)
            .expect("preconditions checked above")
            .result
    } else {
        let m = build_matrix(spec, form, i, t).expect("pair drawn from the map list");
        max_rank_check(&m).result
    };
    MapRecord {
        i,
        t,
        rows,
        cols,
        expected,
        rank: result.rank,
        maximal: result.rank == expected,
        method: result.method,
        ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Decide the strong Lefschetz property of `spec` for `form`.
pub fn slp_check(
    spec: &AlgebraSpec,
    form: &LinearForm,
    options: CheckOptions,
) -> Result<LefschetzReport> {
    form.check(spec)?;
    if options.jobs == 0 {
        return Err(invalid("parallelism must be at least 1"));
    }
    if options.mode == Mode::Middle {
        let h = hilbert_vector(spec);
        if !(h.is_symmetric() && h.is_unimodal()) {
            return Err(invalid("middle-maps mode needs a symmetric unimodal Hilbert vector"));
        }
    }
    let start = Instant::now();
    let pairs = map_list(spec, options.mode);
    let maps: Vec<MapRecord> = if options.jobs == 1 {
        pairs
            .iter()
            .map(|&(i, t)| check_one(spec, form, i, t, options.method))
            .collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(|| {
                pairs
                    .par_iter()
                    .map(|&(i, t)| check_one(spec, form, i, t, options.method))
                    .collect()
            })
    };
    Ok(LefschetzReport::assemble(
        spec,
        form,
        options.mode,
        maps,
        start.elapsed().as_secs_f64() * 1e3,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharVerdict {
    pub p: u64,
    pub slp: bool,
    pub failing: Vec<(usize, usize)>,
}

/// SLP verdict over `F_p` for every prime in `primes`, same form pattern.
pub fn char_search(
    spec: &AlgebraSpec,
    form: &LinearForm,
    primes: &[u64],
    options: CheckOptions,
) -> Result<Vec<CharVerdict>> {
    primes
        .iter()
        .map(|&p| {
            let report = slp_check(&spec.with_characteristic(p)?, form, options)?;
            Ok(CharVerdict {
                p,
                slp: report.slp,
                failing: report.failing,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{basis_positions, AlgebraElement};
    use crate::linalg::{rank_fraction_free, Determinant};

    fn quad(n: usize, p: u64) -> AlgebraSpec {
        AlgebraSpec::quadratic(n, p).unwrap()
    }

    #[test]
    fn golden_matrix() {
        let m = build_matrix(&quad(4, 0), &LinearForm::sum(4), 1, 2).unwrap();
        let expected = IntMatrix::from_i64_rows(&[
            vec![2, 2, 2, 0],
            vec![2, 2, 0, 2],
            vec![2, 0, 2, 2],
            vec![0, 2, 2, 2],
        ])
        .unwrap();
        assert_eq!(m.matrix, expected);
        assert_eq!(m.matrix.determinant().unwrap(), BigInt::from(-48));
    }

    #[test]
    fn power_zero_is_identity() {
        let spec = AlgebraSpec::new(vec![3, 2, 4], 0).unwrap();
        let form = LinearForm::new(vec![2, -1, 5]);
        for i in 0..=spec.socle_degree() {
            let m = build_matrix(&spec, &form, i, 0).unwrap().matrix;
            assert_eq!(m, IntMatrix::identity(Integers, m.rows()));
        }
    }

    #[test]
    fn entries_match_algebra_multiplication() {
        let spec = AlgebraSpec::new(vec![3, 3], 0).unwrap();
        let form = LinearForm::sum(2);
        let m = build_matrix(&spec, &form, 0, 2).unwrap().matrix;
        let l = AlgebraElement::linear(&spec, form.coefficients()).unwrap();
        let sq = l.pow(2);
        let target = graded_basis(&spec, 2);
        assert_eq!(m.cols(), 1);
        for (r, v) in target.iter().enumerate() {
            assert_eq!(*m.get(r, 0), sq.coefficient(v));
        }
        assert_eq!(m.to_rows(), vec![vec![1.into()], vec![2.into()], vec![1.into()]]);
    }

    #[test]
    fn out_of_range_degrees() {
        let s = quad(3, 0);
        assert!(build_matrix(&s, &LinearForm::sum(3), 2, 2).is_err());
        assert!(build_matrix(&s, &LinearForm::sum(2), 0, 1).is_err());
    }

    #[test]
    fn golden_is_maximal() {
        let m = build_matrix(&quad(4, 0), &LinearForm::sum(4), 1, 2).unwrap();
        let v = max_rank_check(&m);
        assert!(v.maximal);
        assert_eq!(v.result.rank, 4);
    }

    #[test]
    fn zero_form_is_never_maximal() {
        let s = quad(4, 0);
        let m = build_matrix(&s, &LinearForm::new(vec![0; 4]), 1, 1).unwrap();
        let v = max_rank_check(&m);
        assert!(!v.maximal);
        assert_eq!(v.result.rank, 0);
    }

    #[test]
    fn five_variables_one_to_four() {
        let m = build_matrix(&quad(5, 0), &LinearForm::sum(5), 1, 3).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (5, 5));
        assert_eq!(rank_fraction_free(&m.matrix).rank, 5);
        assert!(max_rank_check(&m).maximal);
    }

    #[test]
    fn socle_entry_is_factorial() {
        for n in 1..=8 {
            let m = build_matrix(&quad(n, 0), &LinearForm::sum(n), 0, n).unwrap();
            let fact: BigInt = (1..=n).map(BigInt::from).product();
            assert_eq!(m.matrix.to_rows(), vec![vec![fact]]);
        }
    }

    #[test]
    fn map_lists() {
        let s = AlgebraSpec::new(vec![3, 4], 0).unwrap();
        assert_eq!(map_list(&s, Mode::Full).len(), 15);
        assert_eq!(map_list(&s, Mode::Middle), vec![(0, 5), (1, 3), (2, 1)]);
        assert_eq!(map_list(&quad(4, 0), Mode::Middle), vec![(0, 4), (1, 2)]);
        assert!(map_list(&AlgebraSpec::new(vec![1], 0).unwrap(), Mode::Full).is_empty());
    }

    #[test]
    fn slp_examples() {
        let r = slp_check(&quad(4, 0), &LinearForm::sum(4), CheckOptions::default()).unwrap();
        assert!(r.slp);
        let r = slp_check(&quad(3, 2), &LinearForm::sum(3), CheckOptions::default()).unwrap();
        assert!(!r.slp);
        assert!(r.failing.contains(&(0, 2)));
        let s = AlgebraSpec::new(vec![3, 4], 0).unwrap();
        let r = slp_check(&s, &LinearForm::sum(2), CheckOptions::default()).unwrap();
        assert!(r.slp);
        assert_eq!(r.maps.len(), 15);
    }

    #[test]
    fn degenerate_algebra_holds_vacuously() {
        let s = AlgebraSpec::new(vec![1], 0).unwrap();
        let r = slp_check(&s, &LinearForm::sum(1), CheckOptions::default()).unwrap();
        assert!(r.slp && r.maps.is_empty());
    }

    #[test]
    fn parallel_matches_sequential() {
        let s = AlgebraSpec::new(vec![3, 3, 2], 0).unwrap();
        let f = LinearForm::new(vec![1, 2, 3]);
        let a = slp_check(&s, &f, CheckOptions::default()).unwrap();
        let b = slp_check(&s, &f, CheckOptions { jobs: 4, ..Default::default() }).unwrap();
        let strip = |r: &LefschetzReport| {
            r.maps.iter().map(|m| (m.i, m.t, m.rank, m.maximal)).collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
        assert!(slp_check(&s, &f, CheckOptions { jobs: 0, ..Default::default() }).is_err());
    }

    #[test]
    fn char_search_small_cases() {
        let v = char_search(&quad(4, 0), &LinearForm::sum(4), &[3, 5], CheckOptions::middle()).unwrap();
        assert!(!v[0].slp);
        assert!(v[1].slp);
        let v = char_search(&quad(2, 0), &LinearForm::sum(2), &[3, 5, 7], CheckOptions::middle()).unwrap();
        assert!(v.iter().all(|c| c.slp));
        assert!(char_search(&quad(2, 0), &LinearForm::sum(2), &[4], CheckOptions::middle()).is_err());
    }

    #[test]
    fn rows_follow_target_basis() {
        let s = quad(4, 0);
        let form = LinearForm::new(vec![1, 2, 3, 4]);
        let m = build_matrix(&s, &form, 1, 1).unwrap().matrix;
        let rows = basis_positions(&graded_basis(&s, 2));
        let x1x3 = crate::monomial::Monomial::from_support(4, &[0, 2]).unwrap();
        // x1 * ell contains 3 x1x3; x3 * ell contains 1 x1x3.
        assert_eq!(*m.get(rows[&x1x3], 0), BigInt::from(3));
        assert_eq!(*m.get(rows[&x1x3], 2), BigInt::from(1));
        assert_eq!(*m.get(rows[&x1x3], 1), BigInt::from(0));
    }
}
