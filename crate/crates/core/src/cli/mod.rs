//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification or oracle check failed, 2 bad
//! usage or input.

mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::arith::{divisors, mobius};
use crate::curve::{zeta_numerator_from_counts, CurveModel, CurveSpec};
use crate::gf::DEFAULT_CAP;
use crate::glue::{build_glued_curve, build_selective_glued_curve, SingularCurve};
use crate::poly::{bigint_to_json, IntPolynomial};
use crate::zeta::{count_points_direct, count_points_singular, extremality_from, BoundSide};

pub use verify::{run_suite, CaseResult, Suite, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Tsv,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Largest field size (number of elements) that may be built
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Highest extension degree n in count tables
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    pub nmax: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

/// Where the normalization and the gluing come from.
#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Use the projective line over F_q, q = p^e
    #[arg(long, conflicts_with = "curve")]
    pub p1: bool,
    /// JSON curve description: {"kind": "p1"|"plane", "p", "e", "poly": [[coef, ex, ey, ez], ...]}
    #[arg(long)]
    pub curve: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Glue every closed point of degree 2..=n
    #[arg(long, conflicts_with = "select")]
    pub n: Option<u32>,
    /// Glue only closed points of the listed degrees
    #[arg(long, value_delimiter = ',')]
    pub select: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Args)]
pub struct CurveInput {
    /// Singular curve JSON written by `construct`
    #[arg(long, conflicts_with_all = ["p1", "curve"])]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub curve: CurveArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a glued curve and print it as JSON
    Construct(CurveArgs),
    /// Point counts of Y and C, Δ, p_a and the singular factor
    Table {
        #[command(flatten)]
        input: CurveInput,
        /// Check every row against the enumeration oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Zeta numerators of C and Y
    Zeta(CurveInput),
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        n: Option<u32>,
        /// Number of random profiles for lemma-e0
        #[arg(long, default_value_t = 1000)]
        seeds: u64,
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// Closed points by degree, by enumeration and by Möbius inversion of N_n
    Census(CurveArgs),
}

#[derive(Debug, Parser)]
#[command(name = "singular-curves", version, about = "Glued singular curves over finite fields")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

enum Failure {
    Usage(anyhow::Error),
    Check(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            1
        }
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Construct(args) => {
            let y = build_from_args(args, cfg.cap)?;
            writeln!(out, "{}", y.to_json_string()).map_err(anyhow::Error::from)?;
            Ok(())
        }
        Command::Table { input, oracle } => cmd_table(&load(input, cfg.cap)?, cfg, *oracle, out),
        Command::Zeta(input) => cmd_zeta(&load(input, cfg.cap)?, cfg, out),
        Command::Verify {
            suite,
            p,
            e,
            n,
            seeds,
            curve,
        } => {
            let curve = curve.as_ref().map(|path| read_curve_spec(path, cfg.cap)).transpose()?;
            let params = verify::SuiteParams {
                p: *p,
                e: *e,
                n: *n,
                seeds: *seeds,
                curve,
                nmax: cfg.nmax,
                cap: cfg.cap,
                seed: cfg.seed,
            };
            let report = run_suite(*suite, &params)?;
            write_suite(&report, cfg.format, out)?;
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Check(format!(
                    "{} of {} cases failed",
                    report.failed(),
                    report.cases.len()
                )))
            }
        }
        Command::Census(args) => cmd_census(&normalization(args, cfg.cap)?, cfg, out),
    }
}

fn read_curve_spec(path: &PathBuf, cap: u64) -> anyhow::Result<CurveModel> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec: CurveSpec = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(spec.to_model(cap)?)
}

fn normalization(args: &CurveArgs, cap: u64) -> anyhow::Result<CurveModel> {
    if let Some(path) = &args.curve {
        return read_curve_spec(path, cap);
    }
    if !args.p1 {
        bail!("give --p1 --p P [--e E] or --curve FILE");
    }
    let p = args.p.ok_or_else(|| anyhow!("--p1 needs --p"))?;
    Ok(CurveModel::projective_line_with_cap(p, args.e, cap)?)
}

fn build_from_args(args: &CurveArgs, cap: u64) -> anyhow::Result<SingularCurve> {
    let c = normalization(args, cap)?;
    Ok(match (&args.n, &args.select) {
        (Some(n), _) => build_glued_curve(&c, *n)?,
        (None, Some(ts)) => build_selective_glued_curve(&c, ts)?,
        (None, None) => SingularCurve::smooth(c),
    })
}

fn load(input: &CurveInput, cap: u64) -> anyhow::Result<SingularCurve> {
    match &input.input {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(SingularCurve::from_json_str(&text, cap)?)
        }
        None => build_from_args(&input.curve, cap),
    }
}

fn delimited(format: Format, out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    let delim = if format == Format::Tsv { b'\t' } else { b',' };
    csv::WriterBuilder::new().delimiter(delim).from_writer(out)
}

fn side_name(side: BoundSide) -> &'static str {
    match side {
        BoundSide::Upper => "upper",
        BoundSide::Lower => "lower",
        BoundSide::Both => "both",
        BoundSide::Interior => "interior",
    }
}

fn coeff_list(f: &IntPolynomial) -> String {
    f.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Delimited columns: `n, count_c, count_y, lower, upper, side, direct`.
fn cmd_table(y: &SingularCurve, cfg: &RunConfig, oracle: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let z = count_points_singular(y, cfg.nmax).map_err(anyhow::Error::from)?;
    let ext = extremality_from(&z);
    let direct: Option<Vec<u64>> = if oracle {
        Some(
            (1..=cfg.nmax)
                .map(|n| count_points_direct(y, n))
                .collect::<Result<_, _>>()
                .map_err(anyhow::Error::from)?,
        )
    } else {
        None
    };
    match cfg.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = ext
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut v = serde_json::to_value(r).expect("serializable");
                    if let Some(d) = &direct {
                        v["direct"] = json!(d[i]);
                    }
                    v
                })
                .collect();
            let doc = json!({
                "curve": y.normalization().to_spec(),
                "q": y.normalization().q(),
                "genus_c": y.normalization().genus(),
                "delta": z.delta,
                "p_a": y.arithmetic_genus(),
                "singular_factor": z.singular_factor,
                "all_minus_one": z.all_minus_one,
                "all_plus_one": z.all_plus_one,
                "rows": rows,
                "note": ext.note,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable")).map_err(anyhow::Error::from)?;
        }
        format => {
            writeln!(out, "# q={} genus_c={}", y.normalization().q(), y.normalization().genus())
                .and_then(|_| writeln!(out, "# delta={} p_a={}", z.delta, y.arithmetic_genus()))
                .and_then(|_| writeln!(out, "# singular_factor={}", coeff_list(&z.singular_factor)))
                .and_then(|_| writeln!(out, "# all_minus_one={} all_plus_one={}", z.all_minus_one, z.all_plus_one))
                .map_err(anyhow::Error::from)?;
            let mut w = delimited(format, out);
            w.write_record(["n", "count_c", "count_y", "lower", "upper", "side", "direct"])
                .map_err(anyhow::Error::from)?;
            for (i, r) in ext.rows.iter().enumerate() {
                let d = direct.as_ref().map_or(String::new(), |d| d[i].to_string());
                w.write_record([
                    r.n.to_string(),
                    r.count_c.to_string(),
                    r.count_y.to_string(),
                    r.lower.to_string(),
                    r.upper.to_string(),
                    side_name(r.side).to_string(),
                    d,
                ])
                .map_err(anyhow::Error::from)?;
            }
            w.flush().map_err(anyhow::Error::from)?;
        }
    }
    if let Some(d) = direct {
        let bad: Vec<u32> = (0..d.len()).filter(|&i| d[i] != z.counts_y[i]).map(|i| i as u32 + 1).collect();
        if !bad.is_empty() {
            return Err(Failure::Check(format!("direct count differs from the zeta count at n = {bad:?}")));
        }
    }
    Ok(())
}

/// `Z_Y(t) = P_C(t) S(t) / ((1 - t)(1 - qt))` with `S` the singular factor.
fn cmd_zeta(y: &SingularCurve, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let c = y.normalization();
    let tbl = c.count_points(c.genus().max(1)).map_err(anyhow::Error::from)?;
    let num_c = zeta_numerator_from_counts(&tbl, c.genus()).map_err(anyhow::Error::from)?.poly;
    let s = crate::zeta::singular_factor(y).map_err(anyhow::Error::from)?;
    let num_y = &num_c * &s;
    let q = BigInt::from(c.q());
    let denom = IntPolynomial::from_coeffs(vec![BigInt::from(1), -(&q + 1u32), q]);
    match cfg.format {
        Format::Json => {
            let doc = json!({
                "q": c.q(),
                "genus_c": c.genus(),
                "p_a": y.arithmetic_genus(),
                "delta": y.delta(),
                "numerator_c": num_c,
                "singular_factor": s,
                "numerator_y": num_y,
                "denominator": denom,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable")).map_err(anyhow::Error::from)?;
        }
        format => {
            let mut w = delimited(format, out);
            w.write_record(["degree", "numerator_c", "singular_factor", "numerator_y", "denominator"])
                .map_err(anyhow::Error::from)?;
            let top = num_y.degree().unwrap_or(0).max(2);
            for k in 0..=top {
                w.write_record([
                    k.to_string(),
                    num_c.coeff(k).to_string(),
                    s.coeff(k).to_string(),
                    num_y.coeff(k).to_string(),
                    denom.coeff(k).to_string(),
                ])
                .map_err(anyhow::Error::from)?;
            }
            w.flush().map_err(anyhow::Error::from)?;
        }
    }
    Ok(())
}

/// Delimited columns: `t, count, closed_points, mobius`.
fn cmd_census(c: &CurveModel, cfg: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let tbl = c.count_points(cfg.nmax).map_err(anyhow::Error::from)?;
    let mut rows = Vec::new();
    let mut mismatched = Vec::new();
    for t in 1..=cfg.nmax {
        let enumerated = c.closed_points_of_degree(t).map_err(anyhow::Error::from)?.len() as u64;
        let weighted: BigInt = divisors(t as u64)
            .into_iter()
            .map(|d| BigInt::from(mobius(t as u64 / d)) * BigInt::from(tbl.counts[d as usize - 1]))
            .sum();
        let from_counts = weighted / BigInt::from(t);
        if from_counts != BigInt::from(enumerated) {
            mismatched.push(t);
        }
        rows.push((t, tbl.counts[t as usize - 1], enumerated, from_counts));
    }
    match cfg.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(t, n, e, m)| json!({"t": t, "count": n, "closed_points": e, "mobius": bigint_to_json(m)}))
                .collect();
            let doc = json!({"curve": c.to_spec(), "q": c.q(), "genus": c.genus(), "rows": rows});
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable")).map_err(anyhow::Error::from)?;
        }
        format => {
            let mut w = delimited(format, out);
            w.write_record(["t", "count", "closed_points", "mobius"]).map_err(anyhow::Error::from)?;
            for (t, n, e, m) in &rows {
                w.write_record([t.to_string(), n.to_string(), e.to_string(), m.to_string()])
                    .map_err(anyhow::Error::from)?;
            }
            w.flush().map_err(anyhow::Error::from)?;
        }
    }
    if mismatched.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("closed point census disagrees at t = {mismatched:?}")))
    }
}

/// Delimited columns: `case, ok, detail`.
fn write_suite(report: &SuiteReport, format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(report)?)?,
        format => {
            let mut w = delimited(format, out);
            w.write_record(["case", "ok", "detail"])?;
            for case in &report.cases {
                w.write_record([case.name.as_str(), if case.ok { "pass" } else { "fail" }, case.detail.as_str()])?;
            }
            w.flush()?;
            drop(w);
            writeln!(
                out,
                "# {}: {}/{} passed",
                report.suite.to_possible_value().expect("no skipped variants").get_name(),
                report.cases.len() - report.failed(),
                report.cases.len()
            )?;
        }
    }
    Ok(())
}
