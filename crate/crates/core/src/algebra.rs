//! The artinian algebra `A = k[x1..xn] / (x1^d1, ..., xn^dn)`.
//!
//! Throughout, `d_k` is the *killed power*: `x_k^(d_k - 1)` survives and
//! `x_k^d_k` is zero. The quadratic algebra is the case `d_k = 2` for all
//! `k`, whose basis is the set of square-free monomials. A monomial
//! complete intersection written with exponents `a_k + 1` (as in the
//! embedding construction) is `AlgebraSpec::new(a.map(|a| a + 1), ..)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{PrimeField, Ring, MAX_MODULUS};
use crate::monomial::{enumerate_squarefree, revlex_compare, Monomial};
use crate::primes::is_prime;

/// Killed powers above this would overflow the `u8` exponent storage.
pub const MAX_KILLED_POWER: u32 = 256;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct AlgebraSpec {
    exponents: Vec<u32>,
    characteristic: u64,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    n: usize,
    exponents: Vec<u32>,
    characteristic: u64,
}

impl TryFrom<RawSpec> for AlgebraSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        if raw.n != raw.exponents.len() {
            return Err(invalid(format!(
                "n = {} but {} exponents given",
                raw.n,
                raw.exponents.len()
            )));
        }
        AlgebraSpec::new(raw.exponents, raw.characteristic)
    }
}

impl From<AlgebraSpec> for RawSpec {
    fn from(spec: AlgebraSpec) -> Self {
        RawSpec {
            n: spec.exponents.len(),
            exponents: spec.exponents,
            characteristic: spec.characteristic,
        }
    }
}

impl AlgebraSpec {
    /// `characteristic` is 0 or a prime below 2^62.
    pub fn new(exponents: Vec<u32>, characteristic: u64) -> Result<Self> {
        if exponents.is_empty() {
            return Err(invalid("an algebra needs at least one variable"));
        }
        if let Some(&d) = exponents.iter().find(|&&d| d == 0 || d > MAX_KILLED_POWER) {
            return Err(invalid(format!(
                "killed power {d} outside 1..={MAX_KILLED_POWER}"
            )));
        }
        if characteristic != 0 && (!is_prime(characteristic) || characteristic >= MAX_MODULUS) {
            return Err(Error::NotPrime(characteristic));
        }
        Ok(AlgebraSpec {
            exponents,
            characteristic,
        })
    }

    pub fn quadratic(n: usize, characteristic: u64) -> Result<Self> {
        AlgebraSpec::new(vec![2; n], characteristic)
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_quadratic(&self) -> bool {
        self.exponents.iter().all(|&d| d == 2)
    }

    /// `sum(d_k) - n`, the top nonzero degree.
    pub fn socle_degree(&self) -> usize {
        self.exponents.iter().map(|&d| d as usize - 1).sum()
    }

    /// The coefficient field when the characteristic is positive.
    pub fn field(&self) -> Option<PrimeField> {
        (self.characteristic != 0)
            .then(|| PrimeField::new(self.characteristic).expect("validated at construction"))
    }

    pub fn with_characteristic(&self, characteristic: u64) -> Result<Self> {
        AlgebraSpec::new(self.exponents.clone(), characteristic)
    }

    /// The algebra on the first `n - 1` variables (`x_n` set to zero).
    pub fn restricted(&self) -> Result<Self> {
        if self.exponents.len() < 2 {
            return Err(invalid("cannot drop the only variable"));
        }
        AlgebraSpec::new(
            self.exponents[..self.exponents.len() - 1].to_vec(),
            self.characteristic,
        )
    }

    /// Canonical representative of an integer coefficient.
    pub fn normalize(&self, c: BigInt) -> BigInt {
        if self.characteristic == 0 {
            return c;
        }
        let p = BigInt::from(self.characteristic);
        let r = c % &p;
        if r.is_negative() {
            r + p
        } else {
            r
        }
    }

    fn admits(&self, m: &Monomial) -> bool {
        m.exponents()
            .iter()
            .zip(&self.exponents)
            .all(|(&e, &d)| (e as u32) < d)
    }
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[x1..x{}]/(", self.exponents.len())?;
        for (k, d) in self.exponents.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "x{}^{d}", k + 1)?;
        }
        write!(f, "), char {}", self.characteristic)
    }
}

/// Reduce a monomial modulo the ideal: unchanged, or `None` for zero.
pub fn reduce(spec: &AlgebraSpec, m: &Monomial) -> Option<Monomial> {
    (m.num_vars() == spec.num_vars() && spec.admits(m)).then(|| m.clone())
}

/// Standard monomials of degree `t`, in decreasing revlex order.
pub fn graded_basis(spec: &AlgebraSpec, t: usize) -> Vec<Monomial> {
    if t > spec.socle_degree() {
        return Vec::new();
    }
    if spec.is_quadratic() {
        return enumerate_squarefree(spec.num_vars(), t);
    }
    let mut out = Vec::new();
    standard_monomials(&spec.exponents, t, &mut Vec::new(), &mut out);
    out
}

// Decreasing revlex: ascending in the exponent of the last variable, then
// recursively in the prefix. `suffix` holds exponents of x_{k+1}..x_n in
// reverse.
fn standard_monomials(bounds: &[u32], t: usize, suffix: &mut Vec<u8>, out: &mut Vec<Monomial>) {
    let Some((&last, head)) = bounds.split_last() else {
        if t == 0 {
            out.push(Monomial::new(suffix.iter().rev().copied().collect()));
        }
        return;
    };
    let head_cap: usize = head.iter().map(|&d| d as usize - 1).sum();
    let lo = t.saturating_sub(head_cap);
    let hi = t.min(last as usize - 1);
    for e in lo..=hi {
        suffix.push(e as u8);
        standard_monomials(head, t - e, suffix, out);
        suffix.pop();
    }
}

/// Position lookup for a graded basis.
pub fn basis_positions(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// `(h_0, ..., h_m)` with `h_j = dim A_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertVector(pub Vec<u64>);

impl HilbertVector {
    pub fn socle_degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, j: usize) -> u64 {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn is_unimodal(&self) -> bool {
        let peak = self.0.windows(2).take_while(|w| w[0] <= w[1]).count();
        self.0[peak..].windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Display for HilbertVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Coefficients of `prod_k (1 + t + ... + t^(d_k - 1))`.
pub fn hilbert_vector(spec: &AlgebraSpec) -> HilbertVector {
    let mut h = vec![1u64];
    for &d in spec.exponents() {
        let mut next = vec![0u64; h.len() + d as usize - 1];
        for (j, &c) in h.iter().enumerate() {
            for slot in &mut next[j..j + d as usize] {
                *slot += c;
            }
        }
        h = next;
    }
    HilbertVector(h)
}

/// A polynomial in the free ring, before any reduction.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let c = c.into();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        let v = self.terms.remove(&m).unwrap_or_default() + c;
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }
}

/// An element of `A`: every key is a standard monomial, no zero values,
/// coefficients normalized for the characteristic.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    spec: AlgebraSpec,
    terms: BTreeMap<Monomial, BigInt>,
}

impl AlgebraElement {
    pub fn zero(spec: &AlgebraSpec) -> Self {
        AlgebraElement {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: &AlgebraSpec) -> Self {
        Self::from_monomial(spec, Monomial::one(spec.num_vars()), BigInt::one())
    }

    pub fn from_monomial(spec: &AlgebraSpec, m: Monomial, c: BigInt) -> Self {
        let mut e = Self::zero(spec);
        e.accumulate(m, c);
        e
    }

    /// `sum c_k x_k`.
    pub fn linear(spec: &AlgebraSpec, coefficients: &[i64]) -> Result<Self> {
        if coefficients.len() != spec.num_vars() {
            return Err(invalid(format!(
                "{} coefficients for {} variables",
                coefficients.len(),
                spec.num_vars()
            )));
        }
        let mut e = Self::zero(spec);
        for (k, &c) in coefficients.iter().enumerate() {
            e.accumulate(Monomial::var(spec.num_vars(), k), BigInt::from(c));
        }
        Ok(e)
    }

    /// Image of a free polynomial in `A`.
    pub fn from_polynomial(spec: &AlgebraSpec, p: &Polynomial) -> Result<Self> {
        let mut e = Self::zero(spec);
        for (m, c) in &p.terms {
            if m.num_vars() != spec.num_vars() {
                return Err(invalid("polynomial over the wrong number of variables"));
            }
            e.accumulate(m.clone(), c.clone());
        }
        Ok(e)
    }

    fn accumulate(&mut self, m: Monomial, c: BigInt) {
        let Some(m) = reduce(&self.spec, &m) else {
            return;
        };
        let v = self
            .spec
            .normalize(self.terms.remove(&m).unwrap_or_default() + c);
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn check_spec(&self, other: &AlgebraElement) -> Result<()> {
        if self.spec != other.spec {
            return Err(invalid(format!(
                "elements of {:?} and {:?}",
                self.spec, other.spec
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<Self> {
        self.check_spec(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.spec);
        for (m, v) in &self.terms {
            out.accumulate(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<Self> {
        self.check_spec(other)?;
        let mut out = Self::zero(&self.spec);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let uv = u.mul(v).expect("same variable count");
                out.accumulate(uv, a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.spec);
        for _ in 0..k {
            acc = acc.mul(self).expect("same spec");
        }
        acc
    }

    /// Coefficient reduced into the algebra's prime field, if it has one.
    pub fn coefficient_in(&self, field: &PrimeField, m: &Monomial) -> u64 {
        field.from_bigint(&self.coefficient(m))
    }
}

/// Terms in basis order, unit coefficients omitted: `x1*x3 - 2*x2*x3`.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| revlex_compare(b.0, a.0).expect("same variable count"));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let magnitude = c.magnitude();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn multiply(spec: &AlgebraSpec, f: &AlgebraElement, g: &AlgebraElement) -> Result<AlgebraElement> {
    if f.spec() != spec {
        return Err(invalid("left factor is not over the given spec"));
    }
    f.mul(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(d: &[u32]) -> AlgebraSpec {
        AlgebraSpec::new(d.to_vec(), 0).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(AlgebraSpec::new(vec![], 0).is_err());
        assert!(AlgebraSpec::new(vec![2, 0], 0).is_err());
        assert!(AlgebraSpec::new(vec![2, 2], 4).is_err());
        assert!(AlgebraSpec::new(vec![1], 0).is_ok());
        assert_eq!(spec(&[3, 2, 4]).socle_degree(), 6);
    }

    #[test]
    fn json_round_trip() {
        let s = AlgebraSpec::quadratic(4, 0).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"n":4,"exponents":[2,2,2,2],"characteristic":0}"#);
        assert_eq!(serde_json::from_str::<AlgebraSpec>(&text).unwrap(), s);
        assert!(serde_json::from_str::<AlgebraSpec>(r#"{"n":3,"exponents":[2,2],"characteristic":0}"#).is_err());
        assert!(serde_json::from_str::<AlgebraSpec>(r#"{"n":1,"exponents":[2],"characteristic":6}"#).is_err());
    }

    #[test]
    fn quadratic_basis_degree_three() {
        let s = AlgebraSpec::quadratic(4, 0).unwrap();
        let names: Vec<String> = graded_basis(&s, 3).iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x1*x2*x3", "x1*x2*x4", "x1*x3*x4", "x2*x3*x4"]);
    }

    #[test]
    fn general_basis_order() {
        let names: Vec<String> = graded_basis(&spec(&[3, 3]), 2).iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x1^2", "x1*x2", "x2^2"]);
        assert_eq!(graded_basis(&spec(&[3, 3]), 0), vec![Monomial::one(2)]);
        assert!(graded_basis(&spec(&[3, 3]), 5).is_empty());
    }

    #[test]
    fn reduction() {
        let q = AlgebraSpec::quadratic(2, 0).unwrap();
        assert_eq!(reduce(&q, &Monomial::new(vec![2, 1])), None);
        assert_eq!(reduce(&q, &Monomial::new(vec![1, 1])), Some(Monomial::new(vec![1, 1])));
        let s = spec(&[3, 2]);
        assert!(reduce(&s, &Monomial::new(vec![2, 1])).is_some());
        assert_eq!(reduce(&s, &Monomial::new(vec![3, 0])), None);
    }

    #[test]
    fn hilbert_vectors() {
        assert_eq!(hilbert_vector(&AlgebraSpec::quadratic(4, 0).unwrap()).0, vec![1, 4, 6, 4, 1]);
        assert_eq!(hilbert_vector(&spec(&[2])).0, vec![1, 1]);
        assert_eq!(hilbert_vector(&spec(&[3, 3])).0, vec![1, 2, 3, 2, 1]);
        assert_eq!(hilbert_vector(&spec(&[1])).0, vec![1]);
        let h = HilbertVector(vec![1, 3, 2, 3, 1]);
        assert!(h.is_symmetric() && !h.is_unimodal());
    }

    #[test]
    fn square_of_sum_in_two_variables() {
        let q = AlgebraSpec::quadratic(2, 0).unwrap();
        let l = AlgebraElement::linear(&q, &[1, 1]).unwrap();
        let sq = multiply(&q, &l, &l).unwrap();
        assert_eq!(sq.terms().len(), 1);
        assert_eq!(sq.coefficient(&Monomial::new(vec![1, 1])), BigInt::from(2));
        assert_eq!(l.mul(&AlgebraElement::one(&q)).unwrap(), l);
    }

    #[test]
    fn characteristic_kills_coefficients() {
        let q = AlgebraSpec::quadratic(2, 2).unwrap();
        let l = AlgebraElement::linear(&q, &[1, 1]).unwrap();
        assert!(l.pow(2).is_zero());
    }

    #[test]
    fn mismatched_specs_are_rejected() {
        let a = AlgebraElement::one(&spec(&[2, 2]));
        let b = AlgebraElement::one(&spec(&[3, 2]));
        assert!(a.mul(&b).is_err());
        assert!(multiply(&spec(&[3, 2]), &a, &a).is_err());
    }

    #[test]
    fn restriction_drops_last_variable() {
        let s = spec(&[3, 2, 4]).restricted().unwrap();
        assert_eq!(s.exponents(), &[3, 2]);
        assert!(spec(&[2]).restricted().is_err());
    }

    #[test]
    fn display_lists_terms_in_basis_order() {
        let q = AlgebraSpec::quadratic(3, 0).unwrap();
        let l = AlgebraElement::linear(&q, &[1, -2, 1]).unwrap();
        assert_eq!(l.to_string(), "x1 - 2*x2 + x3");
        assert_eq!(l.mul(&l).unwrap().to_string(), "-4*x1*x2 + 2*x1*x3 - 4*x2*x3");
        let c = AlgebraElement::one(&q).scale(&BigInt::from(-3));
        assert_eq!(c.to_string(), "-3");
        assert_eq!(AlgebraElement::zero(&q).to_string(), "0");
    }
}
