//! `lefschetz` command-line driver.
//!
//! Exit status: 0 when the property (or check) holds, 1 when it fails, 2 on
//! any usage or input error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use lefschetz::block::recursive_middle_rank;
use lefschetz::lefschetz::CERTIFYING_PRIME;
use lefschetz::linalg::io::{from_csv, from_json, to_csv, to_json_value};
use lefschetz::linalg::{rank_certified, rank_mod_p, RankResult};
use lefschetz::primes::{is_prime, primes_in};
use lefschetz::report::{bench, char_search_json, report_json, selftest, BenchMethod};
use lefschetz::{
    build_matrix, char_search, hilbert_vector, max_rank_check, slp_check, AlgebraSpec,
    CheckOptions, EmbedVerification, EmbeddingSpec, LinearForm, Method, Mode,
};

use output::{Emit, Format, Sink};

#[derive(Parser, Debug)]
#[command(name = "lefschetz", version, about = "Exact strong Lefschetz checks for monomial complete intersections")]
struct RunConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert vector of the algebra.
    Hilbert {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Matrix of multiplication by the t-th power of the form, degree i to i+t.
    Matrix {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long = "i")]
        i: usize,
        #[arg(long = "t")]
        t: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Rank of a multiplication matrix, or of a matrix read from a file.
    Rank {
        #[command(flatten)]
        spec: OptionalSpecArgs,
        #[arg(long = "i", required_unless_present = "input")]
        i: Option<usize>,
        #[arg(long = "t", required_unless_present = "input")]
        t: Option<usize>,
        /// CSV or JSON matrix; the extension picks the parser.
        #[arg(long, conflicts_with_all = ["quadratic", "exponents", "i", "t"])]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodArg::Dense)]
        method: MethodArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Decide the strong Lefschetz property.
    Slp {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        check: CheckArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Repeat the check over every prime in a range.
    CharSearch {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        check: CheckArgs,
        #[arg(long, value_parser = parse_range, default_value = "2..31")]
        primes: (u64, u64),
        #[command(flatten)]
        out: OutArgs,
    },
    /// Embed into the quadratic algebra and verify the embedding.
    EmbedVerify {
        /// Killed powers d1,..,dn of the source algebra.
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Time dense elimination against the block recursion on middle maps.
    Bench {
        #[arg(long)]
        quadratic: usize,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        form: Option<Vec<i64>>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "dense,block")]
        methods: Vec<BenchArg>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Quick exact battery over the core identities.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "algebra")]
struct SpecChoice {
    /// n variables, every square killed.
    #[arg(long)]
    quadratic: Option<usize>,
    /// Killed powers d1,..,dn.
    #[arg(long, value_delimiter = ',')]
    exponents: Option<Vec<u32>>,
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[command(flatten)]
    choice: SpecChoice,
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Coefficients of the linear form; defaults to all ones.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    form: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
struct OptionalSpecArgs {
    #[arg(long)]
    quadratic: Option<usize>,
    #[arg(long, value_delimiter = ',', conflicts_with = "quadratic")]
    exponents: Option<Vec<u32>>,
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    form: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Dense)]
    method: MethodArg,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Full,
    Middle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Dense,
    Block,
    Auto,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BenchArg {
    Dense,
    Block,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn build_spec(
    quadratic: Option<usize>,
    exponents: Option<&[u32]>,
    characteristic: u64,
) -> lefschetz::Result<AlgebraSpec> {
    match (quadratic, exponents) {
        (Some(n), None) => AlgebraSpec::quadratic(n, characteristic),
        (None, Some(d)) => AlgebraSpec::new(d.to_vec(), characteristic),
        _ => Err(lefschetz::Error::InvalidArgument(
            "give exactly one of --quadratic and --exponents".into(),
        )),
    }
}

fn build_form(spec: &AlgebraSpec, form: Option<&[i64]>) -> LinearForm {
    form.map_or_else(|| LinearForm::sum(spec.num_vars()), |c| LinearForm::new(c.to_vec()))
}

impl SpecArgs {
    fn resolve(&self) -> lefschetz::Result<(AlgebraSpec, LinearForm)> {
        let spec = build_spec(
            self.choice.quadratic,
            self.choice.exponents.as_deref(),
            self.characteristic,
        )?;
        let form = build_form(&spec, self.form.as_deref());
        Ok((spec, form))
    }
}

impl CheckArgs {
    fn options(&self) -> CheckOptions {
        CheckOptions {
            mode: match self.mode {
                ModeArg::Full => Mode::Full,
                ModeArg::Middle => Mode::Middle,
            },
            method: match self.method {
                MethodArg::Dense => Method::Dense,
                MethodArg::Block => Method::Block,
                MethodArg::Auto => Method::Auto,
            },
            jobs: self.jobs as usize,
        }
    }
}

impl OutArgs {
    fn sink(&self, default: Format) -> Sink {
        Sink::new(self.out.clone(), self.format, default)
    }
}

#[derive(Serialize)]
struct DegreeRow {
    degree: usize,
    dim: u64,
}

#[derive(Serialize)]
struct PrimeRow {
    p: u64,
    slp: bool,
    failing: usize,
}

fn rank_of_matrix(m: &lefschetz::linalg::IntMatrix, characteristic: u64) -> lefschetz::Result<RankResult> {
    match characteristic {
        0 => rank_certified(m, CERTIFYING_PRIME),
        p => rank_mod_p(m, p),
    }
}

fn run(config: RunConfig) -> lefschetz::Result<ExitCode> {
    let ok = |holds: bool| if holds { ExitCode::SUCCESS } else { ExitCode::from(1) };
    match config.command {
        Command::Hilbert { spec, out } => {
            let (spec, _) = spec.resolve()?;
            let h = hilbert_vector(&spec);
            let rows: Vec<DegreeRow> = h.0.iter().enumerate().map(|(degree, &dim)| DegreeRow { degree, dim }).collect();
            out.sink(Format::Json).emit(Emit {
                human: h.to_string(),
                json: json!({ "spec": spec, "hilbert": h.0 }),
                csv: Some(output::csv_rows(&rows)?),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Matrix { spec, i, t, out } => {
            let (spec, form) = spec.resolve()?;
            let m = build_matrix(&spec, &form, i, t)?;
            let csv = to_csv(&m.matrix);
            out.sink(Format::Csv).emit(Emit {
                human: csv.clone(),
                json: to_json_value(&m.matrix),
                csv: Some(csv),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Rank { spec, i, t, input, method, out } => {
            let (rows, cols, result) = match input {
                Some(path) => {
                    if method == MethodArg::Block {
                        return Err(lefschetz::Error::InvalidArgument(
                            "the block method needs an algebra, not a matrix file".into(),
                        ));
                    }
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| lefschetz::Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                    let m = match path.extension().and_then(|e| e.to_str()) {
                        Some("json") => from_json(&text)?,
                        _ => from_csv(&text)?,
                    };
                    if spec.characteristic != 0 && !is_prime(spec.characteristic) {
                        return Err(lefschetz::Error::NotPrime(spec.characteristic));
                    }
                    (m.rows(), m.cols(), rank_of_matrix(&m, spec.characteristic)?)
                }
                None => {
                    let algebra = build_spec(spec.quadratic, spec.exponents.as_deref(), spec.characteristic)?;
                    let form = build_form(&algebra, spec.form.as_deref());
                    let (i, t) = (i.expect("required by clap"), t.expect("required by clap"));
                    let m = build_matrix(&algebra, &form, i, t)?;
                    let applies = algebra.is_quadratic() && 2 * i + t == algebra.num_vars();
                    let result = match method {
                        MethodArg::Block if !applies => {
                            return Err(lefschetz::Error::InvalidArgument(
                                "the block method covers middle maps of the quadratic algebra".into(),
                            ))
                        }
                        MethodArg::Block | MethodArg::Auto if applies => {
                            recursive_middle_rank(&algebra, &form, i)?.result
                        }
                        _ => max_rank_check(&m).result,
                    };
                    (m.matrix.rows(), m.matrix.cols(), result)
                }
            };
            let maximal = result.rank == rows.min(cols);
            out.sink(Format::Json).emit(Emit {
                human: format!("rank {} of {rows}x{cols} ({})", result.rank, result.method.as_str()),
                json: json!({
                    "rows": rows,
                    "cols": cols,
                    "rank": result.rank,
                    "maximal": maximal,
                    "method": result.method.as_str(),
                }),
                csv: None,
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Slp { spec, check, out } => {
            let (spec, form) = spec.resolve()?;
            let report = slp_check(&spec, &form, check.options())?;
            let mut human = output::map_table(&report);
            human.push_str(&format!("SLP {}", if report.slp { "holds" } else { "fails" }));
            out.sink(Format::Json).emit(Emit {
                human,
                json: report_json(&report),
                csv: Some(output::csv_rows(&report.maps)?),
            })?;
            Ok(ok(report.slp))
        }
        Command::CharSearch { spec, check, primes, out } => {
            let (spec, form) = spec.resolve()?;
            let list = primes_in(primes.0, primes.1);
            if list.is_empty() {
                return Err(lefschetz::Error::InvalidArgument(format!(
                    "no primes in {}..{}",
                    primes.0, primes.1
                )));
            }
            let verdicts = char_search(&spec, &form, &list, check.options())?;
            let human = verdicts
                .iter()
                .map(|v| format!("p={:<5} {}", v.p, if v.slp { "holds" } else { "fails" }))
                .collect::<Vec<_>>()
                .join("\n");
            let rows: Vec<PrimeRow> = verdicts
                .iter()
                .map(|v| PrimeRow { p: v.p, slp: v.slp, failing: v.failing.len() })
                .collect();
            out.sink(Format::Json).emit(Emit {
                human,
                json: char_search_json(&spec, &form, &verdicts),
                csv: Some(output::csv_rows(&rows)?),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::EmbedVerify { exponents, characteristic, out } => {
            let es = EmbeddingSpec::from_killed_powers(&exponents, characteristic)?;
            let v = EmbedVerification::run(&es)?;
            let degrees_ok = v.degrees.iter().all(|d| d.ok);
            let human = format!(
                "m={} socle scalar {} ({}), degrees {}, SLP direct {} via embedding {}",
                v.m,
                v.socle.scalar,
                if v.socle.nonzero { "nonzero" } else { "zero" },
                if degrees_ok { "all ok" } else { "rank drop" },
                v.transfer.direct.slp,
                v.transfer.via_embedding.slp,
            );
            out.sink(Format::Json).emit(Emit {
                human,
                json: v.to_json(),
                csv: Some(output::csv_rows(&v.degrees)?),
            })?;
            Ok(ok(v.all_ok()))
        }
        Command::Bench { quadratic, characteristic, form, methods, out } => {
            let spec = AlgebraSpec::quadratic(quadratic, characteristic)?;
            let form = build_form(&spec, form.as_deref());
            let methods: Vec<BenchMethod> = methods
                .iter()
                .map(|m| match m {
                    BenchArg::Dense => BenchMethod::Dense,
                    BenchArg::Block => BenchMethod::Block,
                })
                .collect();
            let records = bench(&spec, &form, &methods)?;
            let human = records
                .iter()
                .map(|r| {
                    format!(
                        "i={:<2} t={:<2} {:>5}x{:<5} {:<6} rank {:<5} {:>10.3} ms {:>5} bits",
                        r.i,
                        r.t,
                        r.rows,
                        r.cols,
                        format!("{:?}", r.method).to_lowercase(),
                        r.rank,
                        r.ms,
                        r.peak_bits
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            out.sink(Format::Json).emit(Emit {
                human,
                json: json!({ "spec": spec, "form": form, "records": records }),
                csv: Some(output::csv_rows(&records)?),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { seed, out } => {
            let outcomes = selftest(seed);
            let human = outcomes
                .iter()
                .map(|o| format!("{} {} ({})", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail))
                .collect::<Vec<_>>()
                .join("\n");
            let all = outcomes.iter().all(|o| o.passed);
            out.sink(Format::Json).emit(Emit {
                human,
                json: json!({ "seed": seed, "checks": outcomes, "passed": all }),
                csv: Some(output::csv_rows(&outcomes)?),
            })?;
            Ok(ok(all))
        }
    }
}

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_ranges() {
        assert_eq!(parse_range("2..31"), Ok((2, 31)));
        assert_eq!(parse_range(" 5 .. 5 "), Ok((5, 5)));
        assert!(parse_range("31..2").is_err());
        assert!(parse_range("2-31").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn arguments_are_consistent() {
        use clap::CommandFactory;
        RunConfig::command().debug_assert();
    }
}
