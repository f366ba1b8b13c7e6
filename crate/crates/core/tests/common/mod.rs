//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library.

#![allow(dead_code, clippy::needless_range_loop)]

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Exps = Vec<u32>;
pub type Poly = HashMap<Exps, BigInt>;

/// Every exponent vector with `e_k < d_k`, any degree.
pub fn all_standard(d: &[u32]) -> Vec<Exps> {
    let mut out = vec![vec![]];
    for &dk in d {
        out = out
            .into_iter()
            .flat_map(|prefix: Exps| {
                (0..dk).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

/// `Greater` when `u` precedes `v` in decreasing reverse-lex order.
pub fn revlex(u: &[u32], v: &[u32]) -> Ordering {
    let (du, dv): (u32, u32) = (u.iter().sum(), v.iter().sum());
    if du != dv {
        return du.cmp(&dv);
    }
    for k in (0..u.len()).rev() {
        if u[k] != v[k] {
            return v[k].cmp(&u[k]);
        }
    }
    Ordering::Equal
}

/// Standard monomials of degree `t`, listed greatest first.
pub fn basis(d: &[u32], t: u32) -> Vec<Exps> {
    let mut b: Vec<Exps> = all_standard(d)
        .into_iter()
        .filter(|e| e.iter().sum::<u32>() == t)
        .collect();
    b.sort_by(|u, v| revlex(v, u));
    b
}

pub fn socle(d: &[u32]) -> u32 {
    d.iter().map(|x| x - 1).sum()
}

pub fn hilbert(d: &[u32]) -> Vec<usize> {
    (0..=socle(d)).map(|t| basis(d, t).len()).collect()
}

/// Multiply by a linear form in `k[x] / (x_k^{d_k})`.
pub fn times_linear(f: &Poly, d: &[u32], c: &[i64]) -> Poly {
    let mut out = Poly::new();
    for (e, coef) in f {
        for k in 0..d.len() {
            if c[k] == 0 || e[k] + 1 >= d[k] {
                continue;
            }
            let mut g = e.clone();
            g[k] += 1;
            *out.entry(g).or_insert_with(BigInt::zero) += coef * c[k];
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `M_i^t`: rows are degree `i + t`, columns degree `i`.
pub fn mult_matrix(d: &[u32], c: &[i64], i: u32, t: u32) -> Vec<Vec<BigInt>> {
    let src = basis(d, i);
    let dst = basis(d, i + t);
    let mut m = vec![vec![BigInt::zero(); src.len()]; dst.len()];
    for (col, u) in src.iter().enumerate() {
        let mut f = Poly::new();
        f.insert(u.clone(), BigInt::one());
        for _ in 0..t {
            f = times_linear(&f, d, c);
        }
        for (row, v) in dst.iter().enumerate() {
            if let Some(x) = f.get(v) {
                m[row][col] = x.clone();
            }
        }
    }
    m
}

pub fn from_i64(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Determinant by the permutation expansion.
pub fn det_leibniz(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<BigInt>], total: &mut BigInt) {
    if k == perm.len() {
        let inversions = (0..perm.len())
            .flat_map(|a| (a + 1..perm.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let mut term = BigInt::one();
        for (r, &c) in perm.iter().enumerate() {
            term *= &m[r][c];
        }
        if inversions % 2 == 1 {
            term = -term;
        }
        *total += term;
        return;
    }
    for j in k..perm.len() {
        perm.swap(k, j);
        permute(perm, k + 1, m, total);
        perm.swap(k, j);
    }
}

/// Exact rank by textbook elimination over the rationals, kept integral by
/// cross-multiplying rows and dividing out the row gcd.
pub fn rank_exact(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for k in r + 1..rows {
            if a[k][c].is_zero() {
                continue;
            }
            let (x, y) = (a[r][c].clone(), a[k][c].clone());
            let mut g = BigInt::zero();
            for j in c..cols {
                let v = &a[k][j] * &x - &a[r][j] * &y;
                g = num_integer::Integer::gcd(&g, &v);
                a[k][j] = v;
            }
            if !g.is_zero() && !g.is_one() {
                for j in c..cols {
                    a[k][j] = &a[k][j] / &g;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn rank_mod(m: &[Vec<BigInt>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let r = x % &pb;
                    let r = if r.is_negative() { r + &pb } else { r };
                    u64::try_from(r).unwrap()
                })
                .collect()
        })
        .collect();
    rank_fp(&mut a, p)
}

pub fn rank_fp(a: &mut [Vec<u64>], p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inv = |x: u64| {
        let (mut base, mut e, mut acc) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&k| a[k][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let s = inv(a[r][c]);
        for k in r + 1..rows {
            if a[k][c] == 0 {
                continue;
            }
            let f = mul(a[k][c], s);
            for j in c..cols {
                let sub = mul(f, a[r][j]);
                a[k][j] = (a[k][j] + p - sub) % p;
            }
        }
        r += 1;
    }
    r
}

pub fn matmul_fp(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(0u64, |acc, k| {
                        ((acc as u128 + row[k] as u128 * b[k][j] as u128) % p as u128) as u64
                    })
                })
                .collect()
        })
        .collect()
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

pub fn primes_upto(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi)
        .filter(|&q| (2..q).take_while(|k| k * k <= q).all(|k| q % k != 0))
        .collect()
}

/// Every composition of every total in `1..=max_total`.
pub fn compositions(max_total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 1..=max_total {
        for mask in 0u32..1 << (total - 1) {
            let mut parts = Vec::new();
            let mut run = 1;
            for bit in 0..total - 1 {
                if mask >> bit & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            out.push(parts);
        }
    }
    out
}
