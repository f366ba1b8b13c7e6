//! Exponent-vector monomials, the graded reverse-lexicographic order, and
//! combinatorial-number-system indexing of square-free monomials.
//!
//! Bases are listed in *decreasing* revlex order with `x1 > x2 > ... > xn`.
//! For square-free monomials of degree `t` this is the colexicographic order
//! on index sets:
//!
//! ```text
//! t = 2:  x1x2, x1x3, x2x3, x1x4, x2x4, x3x4, ...
//! ```
//!
//! so the position of `x_{i1} ... x_{it}` (0-based, `i1 < ... < it`) is
//! `C(i1, 1) + C(i2, 2) + ... + C(it, t)`. The position does not depend on
//! the ambient variable count, which is what makes the basis of `n - 1`
//! variables a literal prefix of the basis in `n` variables.

use std::cmp::Ordering;
use std::fmt;

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A monomial `x1^e1 * ... * xn^en`, stored as its dense exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exponents: Vec<u8>,
}

impl Monomial {
    pub fn new(exponents: Vec<u8>) -> Self {
        Monomial { exponents }
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exponents: vec![0; n] }
    }

    /// The variable `x_{k+1}` (0-based `k`) in `n` variables.
    pub fn var(n: usize, k: usize) -> Self {
        let mut exponents = vec![0; n];
        exponents[k] = 1;
        Monomial { exponents }
    }

    /// Square-free monomial from 0-based variable indices.
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        let mut exponents = vec![0u8; n];
        for &k in support {
            if k >= n {
                return Err(invalid(format!("variable index {k} out of range for n = {n}")));
            }
            if exponents[k] != 0 {
                return Err(invalid(format!("variable index {k} repeated")));
            }
            exponents[k] = 1;
        }
        Ok(Monomial { exponents })
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    /// 0-based indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, _)| k)
            .collect()
    }

    /// Product of monomials over the same variables.
    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        check_same_len(self, other)?;
        Ok(Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.exponents.len() != other.exponents.len() {
            return None;
        }
        let mut exponents = Vec::with_capacity(self.exponents.len());
        for (a, b) in self.exponents.iter().zip(&other.exponents) {
            exponents.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exponents })
    }

    /// Same exponents with one extra trailing variable of exponent `e`.
    pub fn extend(&self, e: u8) -> Monomial {
        let mut exponents = self.exponents.clone();
        exponents.push(e);
        Monomial { exponents }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_same_len(u: &Monomial, v: &Monomial) -> Result<()> {
    if u.exponents.len() != v.exponents.len() {
        return Err(invalid(format!(
            "monomials over {} and {} variables",
            u.exponents.len(),
            v.exponents.len()
        )));
    }
    Ok(())
}

/// Graded reverse-lexicographic comparison with `x1 > x2 > ... > xn`.
///
/// `Greater` means `u` is listed before `v` in a basis. Within one degree,
/// `u > v` iff the last nonzero entry of `u - v` is negative.
pub fn revlex_compare(u: &Monomial, v: &Monomial) -> Result<Ordering> {
    check_same_len(u, v)?;
    let by_degree = u.degree().cmp(&v.degree());
    if by_degree != Ordering::Equal {
        return Ok(by_degree);
    }
    for (a, b) in u.exponents.iter().zip(&v.exponents).rev() {
        if a != b {
            return Ok(b.cmp(a));
        }
    }
    Ok(Ordering::Equal)
}

/// Position of a monomial inside the ordered basis of its degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisIndex {
    pub degree: usize,
    pub position: usize,
}

/// All square-free monomials of degree `t` in `n` variables, in decreasing
/// revlex order. Empty when `t > n`.
pub fn enumerate_squarefree(n: usize, t: usize) -> Vec<Monomial> {
    if t > n {
        return Vec::new();
    }
    let count = binomial(n, t);
    (0..count)
        .map(|pos| unrank_unchecked(n, t, pos))
        .collect()
}

pub fn squarefree_rank(m: &Monomial) -> Result<BasisIndex> {
    if !m.is_squarefree() {
        return Err(invalid(format!("{m} is not square-free")));
    }
    let position = m
        .support()
        .iter()
        .enumerate()
        .map(|(j, &k)| binomial(k, j + 1))
        .sum();
    Ok(BasisIndex {
        degree: m.degree(),
        position,
    })
}

pub fn squarefree_unrank(n: usize, t: usize, position: usize) -> Result<Monomial> {
    if t > n || position >= binomial(n, t) {
        return Err(invalid(format!(
            "position {position} out of range for degree {t} in {n} variables"
        )));
    }
    Ok(unrank_unchecked(n, t, position))
}

// Greedy decoding of the combinatorial number system, largest index first.
fn unrank_unchecked(n: usize, t: usize, mut position: usize) -> Monomial {
    let mut exponents = vec![0u8; n];
    let mut top = n;
    for j in (1..=t).rev() {
        let mut k = top - 1;
        while binomial(k, j) > position {
            k -= 1;
        }
        position -= binomial(k, j);
        exponents[k] = 1;
        top = k;
    }
    Monomial { exponents }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: usize, support: &[usize]) -> Monomial {
        Monomial::from_support(n, support).unwrap()
    }

    #[test]
    fn listed_first_is_greater() {
        let x1x2 = sq(3, &[0, 1]);
        let x1x3 = sq(3, &[0, 2]);
        assert_eq!(revlex_compare(&x1x2, &x1x3).unwrap(), Ordering::Greater);
        assert_eq!(revlex_compare(&x1x3, &x1x2).unwrap(), Ordering::Less);
        assert_eq!(revlex_compare(&x1x2, &x1x2).unwrap(), Ordering::Equal);
    }

    #[test]
    fn compare_rejects_mismatched_lengths() {
        assert!(revlex_compare(&Monomial::one(2), &Monomial::one(3)).is_err());
    }

    #[test]
    fn degree_two_in_four_variables() {
        let got: Vec<String> = enumerate_squarefree(4, 2).iter().map(|m| m.to_string()).collect();
        assert_eq!(
            got,
            ["x1*x2", "x1*x3", "x2*x3", "x1*x4", "x2*x4", "x3*x4"]
        );
    }

    #[test]
    fn degree_three_listing_prefix() {
        let n = 6;
        let got = enumerate_squarefree(n, 3);
        assert_eq!(got[0], sq(n, &[0, 1, 2]));
        assert_eq!(got[1], sq(n, &[0, 1, 3]));
        assert_eq!(got[2], sq(n, &[0, 2, 3]));
        // x_{n-3}x_{n-2}x_{n-1} is the last monomial not involving x_n,
        // followed by x1x2xn.
        let split = binomial(n - 1, 3);
        assert_eq!(got[split - 1], sq(n, &[n - 4, n - 3, n - 2]));
        assert_eq!(got[split], sq(n, &[0, 1, n - 1]));
        assert_eq!(*got.last().unwrap(), sq(n, &[n - 3, n - 2, n - 1]));
    }

    #[test]
    fn degree_zero_and_out_of_range() {
        assert_eq!(enumerate_squarefree(5, 0), vec![Monomial::one(5)]);
        assert!(enumerate_squarefree(3, 4).is_empty());
    }

    #[test]
    fn rank_and_unrank_examples() {
        let idx = squarefree_rank(&sq(4, &[0, 1])).unwrap();
        assert_eq!(idx, BasisIndex { degree: 2, position: 0 });
        assert_eq!(squarefree_unrank(4, 2, 3).unwrap(), sq(4, &[0, 3]));
        assert!(squarefree_unrank(4, 2, 6).is_err());
        assert!(squarefree_unrank(4, 5, 0).is_err());
        assert!(squarefree_rank(&Monomial::new(vec![2, 0])).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Monomial::one(3).to_string(), "1");
        assert_eq!(Monomial::new(vec![2, 0, 1]).to_string(), "x1^2*x3");
    }

    #[test]
    fn json_is_exponent_array() {
        let m = sq(4, &[0, 2]);
        assert_eq!(serde_json::to_string(&m).unwrap(), "[1,0,1,0]");
        let back: Monomial = serde_json::from_str("[1,0,1,0]").unwrap();
        assert_eq!(back, m);
    }
}
