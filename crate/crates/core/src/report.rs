//! Machine-readable reports, the dense-vs-block benchmark, and the quick
//! self-test battery behind the `selftest` command.
//!
//! Timing lives in `maps[].ms`, `timing` and bench `ms` fields only;
//! [`strip_timing`] removes them so reports can be compared byte for byte.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::AlgebraSpec;
use crate::block::{decompose, factored_assemble, factored_rank, recursive_middle_rank};
use crate::embedding::{EmbedVerification, EmbeddingSpec};
use crate::error::{invalid, Error, Result};
use crate::lefschetz::{
    build_matrix, char_search, map_list, slp_check, CharVerdict, CheckOptions, LefschetzReport,
    LinearForm, Method, Mode,
};
use crate::linalg::{bareiss, field_rank, rank_mod_p, Determinant, FpMatrix, PrimeField};

pub fn report_json(r: &LefschetzReport) -> Value {
    let maps: Vec<Value> = r
        .maps
        .iter()
        .map(|m| {
            json!({
                "i": m.i,
                "t": m.t,
                "rows": m.rows,
                "cols": m.cols,
                "rank": m.rank,
                "maximal": m.maximal,
                "method": m.method.as_str(),
                "ms": m.ms,
            })
        })
        .collect();
    json!({
        "spec": r.spec,
        "form": r.form,
        "mode": r.mode,
        "characteristic": r.characteristic,
        "maps": maps,
        "slp": r.slp,
        "failing": r.failing,
        "timing": { "total_ms": r.total_ms },
    })
}

/// Drop every timing field, recursively.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timing");
            map.remove("ms");
            for child in map.values_mut() {
                strip_timing(child);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

pub fn char_search_json(spec: &AlgebraSpec, form: &LinearForm, verdicts: &[CharVerdict]) -> Value {
    json!({
        "spec": spec,
        "form": form,
        "socle_degree": spec.socle_degree(),
        "primes": verdicts,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchMethod {
    Dense,
    Block,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub i: usize,
    pub t: usize,
    pub rows: usize,
    pub cols: usize,
    pub method: BenchMethod,
    pub ms: f64,
    pub peak_bits: u64,
    pub rank: usize,
}

/// Time every middle map of the quadratic algebra with each method.
///
/// `dense` is exact fraction-free elimination of the built matrix; `block`
/// is the recursion. Ranks must agree across methods before any record is
/// returned.
pub fn bench(spec: &AlgebraSpec, form: &LinearForm, methods: &[BenchMethod]) -> Result<Vec<BenchRecord>> {
    if !spec.is_quadratic() {
        return Err(invalid("bench compares methods on the quadratic algebra"));
    }
    if methods.is_empty() {
        return Err(invalid("no methods selected"));
    }
    let n = spec.num_vars();
    let mut records = Vec::new();
    for (i, t) in map_list(spec, Mode::Middle) {
        let dim = binomial(n, i);
        let mut ranks = Vec::new();
        for &method in methods {
            let start = Instant::now();
            let (rank, peak_bits) = match method {
                BenchMethod::Dense => {
                    let m = build_matrix(spec, form, i, t)?.matrix;
                    match spec.characteristic() {
                        0 => {
                            let out = bareiss(&m);
                            (out.rank, out.peak_bits)
                        }
                        p => (rank_mod_p(&m, p)?.rank, m.max_bits()),
                    }
                }
                BenchMethod::Block => {
                    let out = recursive_middle_rank(spec, form, i)?;
                    (out.result.rank, out.peak_bits)
                }
            };
            ranks.push(rank);
            records.push(BenchRecord {
                n,
                i,
                t,
                rows: dim,
                cols: dim,
                method,
                ms: start.elapsed().as_secs_f64() * 1e3,
                peak_bits,
                rank,
            });
        }
        if ranks.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Disagreement(format!(
                "ranks {ranks:?} at (i, t) = ({i}, {t})"
            )));
        }
    }
    Ok(records)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfTestOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, passed: bool, detail: impl Into<String>) -> SelfTestOutcome {
    SelfTestOutcome {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

fn random_fp(rng: &mut ChaCha8Rng, f: PrimeField, rows: usize, cols: usize) -> FpMatrix {
    let entries = (0..rows * cols).map(|_| rng.gen_range(0..f.modulus())).collect();
    FpMatrix::from_vec(f, rows, cols, entries).expect("sized")
}

/// Random `(A, B, P)` over `F_q` with `P` nonsingular, dimensions in
/// `1..=max_dim`.
pub fn random_factored_instance(
    rng: &mut ChaCha8Rng,
    field: PrimeField,
    max_dim: usize,
) -> (FpMatrix, FpMatrix, FpMatrix) {
    let m = rng.gen_range(1..=max_dim);
    let n = rng.gen_range(1..=max_dim);
    let p = rng.gen_range(1..=max_dim);
    // Low-rank factors now and then, so rank(APB) varies.
    let a = if rng.gen_bool(0.3) {
        let k = rng.gen_range(0..=n);
        random_fp(rng, field, m, k).mat_mul(&random_fp(rng, field, k, n)).expect("conforming")
    } else {
        random_fp(rng, field, m, n)
    };
    let b = random_fp(rng, field, n, p);
    let pm = loop {
        let cand = random_fp(rng, field, n, n);
        if field_rank(&cand).rank == n {
            break cand;
        }
    };
    (a, b, pm)
}

/// A fast battery over the core identities; every check is exact.
pub fn selftest(seed: u64) -> Vec<SelfTestOutcome> {
    let mut out = Vec::new();
    let quad = |n| AlgebraSpec::quadratic(n, 0).expect("n >= 1");

    let golden = build_matrix(&quad(4), &LinearForm::sum(4), 1, 2).map(|m| m.matrix);
    let det = golden.as_ref().ok().and_then(|m| m.determinant().ok());
    out.push(outcome(
        "golden determinant",
        det == Some(BigInt::from(-48)),
        format!("{det:?}"),
    ));

    let socle_ok = (1..=8).all(|n| {
        build_matrix(&quad(n), &LinearForm::sum(n), 0, n)
            .map(|m| *m.matrix.get(0, 0) == (1..=n).map(BigInt::from).product::<BigInt>())
            .unwrap_or(false)
    });
    out.push(outcome("socle entry is n!", socle_ok, "n = 1..=8"));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = PrimeField::new(101).expect("prime");
    let mut violations = 0;
    for _ in 0..100 {
        let (a, b, p) = random_factored_instance(&mut rng, field, 6);
        let reduced = factored_rank(&a, &b, &p).map(|r| r.rank);
        let direct = factored_assemble(&a, &b, &p).map(|m| field_rank(&m).rank);
        if reduced.is_err() || reduced != direct {
            violations += 1;
        }
    }
    out.push(outcome("rank identity", violations == 0, format!("{violations} violations in 100")));

    let mut decomp_ok = true;
    for n in 2..=6 {
        for i in 1..n {
            for t in 1..=n - i {
                let d = decompose(&quad(n), &LinearForm::sum(n), i, t).map(|d| d.assemble());
                let m = build_matrix(&quad(n), &LinearForm::sum(n), i, t).map(|m| m.matrix);
                decomp_ok &= d.is_ok() && d == m;
            }
        }
    }
    out.push(outcome("block decomposition", decomp_ok, "n = 2..=6"));

    let mut rec_ok = true;
    for n in 1..=7 {
        for i in (0..n).take_while(|i| 2 * i < n) {
            let r = recursive_middle_rank(&quad(n), &LinearForm::sum(n), i).map(|o| o.result.rank);
            let m = build_matrix(&quad(n), &LinearForm::sum(n), i, n - 2 * i)
                .map(|m| bareiss(&m.matrix).rank);
            rec_ok &= r.is_ok() && r == m;
        }
    }
    out.push(outcome("recursion vs dense", rec_ok, "n = 1..=7"));

    let verdicts = char_search(&quad(4), &LinearForm::sum(4), &[2, 3, 5, 7], CheckOptions::middle());
    let pattern: Option<Vec<bool>> = verdicts.ok().map(|v| v.iter().map(|c| c.slp).collect());
    out.push(outcome(
        "characteristic bound n=4",
        pattern == Some(vec![false, false, true, true]),
        format!("{pattern:?}"),
    ));

    let general = AlgebraSpec::new(vec![3, 4], 0).expect("valid");
    let full = slp_check(&general, &LinearForm::sum(2), CheckOptions::default());
    let middle = slp_check(
        &general,
        &LinearForm::sum(2),
        CheckOptions::middle().with_method(Method::Dense),
    );
    let modes_ok = matches!((&full, &middle), (Ok(f), Ok(m)) if f.slp && m.slp);
    out.push(outcome("general spec (3,4)", modes_ok, "full and middle"));

    let embed = EmbeddingSpec::from_parts(vec![2, 2], 0).and_then(|es| EmbedVerification::run(&es));
    out.push(outcome(
        "embedding (2,2)",
        embed.as_ref().map(|v| v.all_ok()).unwrap_or(false),
        embed
            .map(|v| format!("socle scalar {}", v.socle.scalar))
            .unwrap_or_else(|e| e.to_string()),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes() {
        for o in selftest(7) {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }

    #[test]
    fn bench_methods_agree() {
        let spec = AlgebraSpec::quadratic(6, 0).unwrap();
        let recs = bench(&spec, &LinearForm::sum(6), &[BenchMethod::Dense, BenchMethod::Block]).unwrap();
        assert_eq!(recs.len(), 6);
        for pair in recs.chunks(2) {
            assert_eq!(pair[0].rank, pair[1].rank);
            assert_eq!((pair[0].i, pair[0].t), (pair[1].i, pair[1].t));
        }
        assert!(bench(&AlgebraSpec::new(vec![3], 0).unwrap(), &LinearForm::sum(1), &[BenchMethod::Dense]).is_err());
    }

    #[test]
    fn timing_is_strippable() {
        let spec = AlgebraSpec::quadratic(3, 0).unwrap();
        let a = slp_check(&spec, &LinearForm::sum(3), CheckOptions::default()).unwrap();
        let b = slp_check(&spec, &LinearForm::sum(3), CheckOptions::default()).unwrap();
        let (mut ja, mut jb) = (report_json(&a), report_json(&b));
        assert!(ja["timing"]["total_ms"].is_number());
        strip_timing(&mut ja);
        strip_timing(&mut jb);
        assert_eq!(ja.to_string(), jb.to_string());
        assert!(ja.get("timing").is_none());
        assert!(ja["maps"][0].get("ms").is_none());
        assert_eq!(ja["maps"][0]["method"], "modular");
    }
}
