//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::function::{parse_real, FunctionSpec};
use crate::lab::{self, SweepCase, SweepReport};
use crate::means::{self, MeanResult, Tolerances};
use crate::poly::int;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "taylor-mean",
    version,
    about = "Means from intersection points of Taylor polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Roots of P_b - P_a with in-interval verdicts.
    Mean(MeanArgs),
    /// Run exact verification suites.
    Verify(VerifyArgs),
    /// Sweep the pair real parts over a grid, or run a fixed demo.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ToleranceArgs {
    #[arg(long, default_value_t = Tolerances::default().residual)]
    pub residual_tol: f64,
    #[arg(long, default_value_t = Tolerances::default().identity)]
    pub identity_tol: f64,
    #[arg(long, default_value_t = Tolerances::default().pairing)]
    pub pairing_tol: f64,
}

impl ToleranceArgs {
    fn tolerances(&self) -> Result<Tolerances, String> {
        for (name, v) in [
            ("--residual-tol", self.residual_tol),
            ("--identity-tol", self.identity_tol),
            ("--pairing-tol", self.pairing_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        Ok(Tolerances {
            residual: self.residual_tol,
            identity: self.identity_tol,
            pairing: self.pairing_tol,
            ..Tolerances::default()
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct MeanArgs {
    /// power:<p>, exp or log.
    #[arg(long = "f", allow_hyphen_values = true)]
    pub spec: String,
    #[arg(long)]
    pub r: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Vw,
    FactorSigns,
    Lemma5,
    Lemma6,
    LPoly,
    V1,
    Theorem1,
    DerivativeTables,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Integer range `lo..hi` (inclusive) or list for n-indexed suites.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Integer exponents for the vw and theorem1 suites.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Rational right endpoints (a = 1) for the vw and theorem1 suites.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    NonrealNodes,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Function specs; repeat the flag or separate with commas.
    #[arg(long = "f", allow_hyphen_values = true, value_delimiter = ',')]
    pub specs: Vec<String>,
    /// Orders, e.g. `4,5,7` or `2..6`.
    #[arg(long, default_value = "3")]
    pub r: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    /// Right endpoints, e.g. `2,4` or `1.5..10:0.5`.
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, value_enum, conflicts_with = "specs")]
    pub demo: Option<Demo>,
    /// Exit 1 if any case reports an error.
    #[arg(long)]
    pub strict: bool,
    /// Worker threads; output does not depend on it.
    #[arg(long, env = "TAYLOR_MEAN_JOBS")]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// A usage problem (exit 2) or a computational failure (exit 1).
#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

type CmdResult = Result<i32, Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parse a decimal, `num/den`, or integer into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if (whole.is_empty() && frac.is_empty()) || !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{whole}{frac}").parse().ok()?;
    let scale = exponent - frac.len() as i32;
    let power = BigRational::from_integer(num_traits::pow(BigInt::from(10), scale.unsigned_abs() as usize));
    let q = BigRational::from_integer(digits);
    let q = if scale >= 0 { q * power } else { q / power };
    Some(if negative { -q } else { q })
}

/// Comma list of values or inclusive integer ranges `lo..hi`.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>, String> {
    let mut out = vec![];
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: i64 = lo.trim().parse().map_err(|_| format!("bad integer range {item:?}"))?;
            let hi: i64 = hi.trim().parse().map_err(|_| format!("bad integer range {item:?}"))?;
            if lo > hi {
                return Err(format!("empty range {item:?}"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(item.parse().map_err(|_| format!("bad integer {item:?}"))?);
        }
    }
    if out.is_empty() {
        return Err(format!("empty list {s:?}"));
    }
    Ok(out)
}

/// Comma list of values or ranges `lo..hi[:step]`. Ranges include both ends;
/// the default step is 1.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let mut out = vec![];
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if let Some((lo, rest)) = item.split_once("..") {
            let (hi, step) = rest.split_once(':').unwrap_or((rest, "1"));
            let parse = |t: &str| parse_real(t).ok_or_else(|| format!("bad number {t:?} in {item:?}"));
            let (lo, hi, step) = (parse(lo)?, parse(hi)?, parse(step)?);
            if !(step > 0.0) || lo > hi {
                return Err(format!("bad range {item:?}"));
            }
            let count = ((hi - lo) / step + 1e-9).floor() as usize;
            if count > 1_000_000 {
                return Err(format!("range {item:?} is too large"));
            }
            out.extend((0..=count).map(|k| lo + k as f64 * step));
        } else {
            out.push(parse_real(item).ok_or_else(|| format!("bad number {item:?}"))?);
        }
    }
    if out.is_empty() {
        return Err(format!("empty grid {s:?}"));
    }
    Ok(out)
}

fn parse_number(name: &str, s: &str) -> Result<f64, Failure> {
    parse_real(s).ok_or_else(|| Failure::Usage(format!("{name}: cannot parse {s:?} as a number")))
}

fn emit(out: &OutputArgs, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Compute(format!("writing {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Compute(format!("writing output: {e}"))),
    }
}

fn mean_case(m: &MeanResult) -> SweepCase {
    SweepCase {
        spec: m.spec.clone(),
        r: m.r,
        a: m.a,
        b: m.b,
        x0: m.x0,
        pairs: m.pairs.iter().map(|c| [c.x, c.y]).collect(),
        inside: m.inside.clone(),
        cj1: m.cj1(),
        cj2: m.cj2(),
        residual: Some(m.residual),
        error: None,
        closed_form: None,
    }
}

fn plain_case(c: &SweepCase) -> String {
    let mut s = format!("{} r={} a={} b={}", c.spec, c.r, c.a, c.b);
    if let Some(e) = &c.error {
        s.push_str(&format!(" error: {e}\n"));
        return s;
    }
    if let Some(x0) = c.x0 {
        s.push_str(&format!(" x0={x0}"));
    }
    s.push_str(&format!(" cj1={} cj2={}", c.cj1, c.cj2));
    if let Some(res) = c.residual {
        s.push_str(&format!(" residual={res:e}"));
    }
    s.push('\n');
    for (p, inside) in c.pairs.iter().zip(&c.inside) {
        s.push_str(&format!("  pair {} ± {}i inside={}\n", p[0], p[1], inside));
    }
    if let Some(f) = &c.closed_form {
        let expected: Vec<String> = f.expected.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!(
            "  closed form [{}] matches={}\n",
            expected.join(", "),
            f.matches
        ));
    }
    s
}

fn cmd_mean(args: &MeanArgs, stdout: &mut dyn Write) -> CmdResult {
    let spec: FunctionSpec = args.spec.parse().map_err(usage)?;
    let a = parse_number("--a", &args.a)?;
    let b = parse_number("--b", &args.b)?;
    let tol = args.tol.tolerances().map_err(Failure::Usage)?;
    let result = means::mean(&spec, args.r, a, b, &tol).map_err(|e| {
        if e.is_precondition() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Compute(e.to_string())
        }
    })?;
    let case = mean_case(&result);
    let text = match args.out.format {
        Format::Plain => plain_case(&case),
        Format::Json => serde_json::to_string_pretty(&case).expect("serializes") + "\n",
        Format::Csv => SweepReport {
            cases: vec![case],
            summary: Default::default(),
        }
        .to_csv(),
    };
    emit(&args.out, &text, stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
struct Check {
    suite: &'static str,
    case: String,
    pass: bool,
    detail: String,
}

#[derive(Debug, Clone, Serialize)]
struct VerifyReport {
    checks: Vec<Check>,
    passed: usize,
    failed: usize,
}

fn check(suite: &'static str, case: String, outcome: Result<String, String>) -> Check {
    match outcome {
        Ok(detail) => Check {
            suite,
            case,
            pass: true,
            detail,
        },
        Err(detail) => Check {
            suite,
            case,
            pass: false,
            detail,
        },
    }
}

fn default_b_grid() -> Vec<BigRational> {
    vec![BigRational::new(3.into(), 2.into()), int(2), int(3), int(10)]
}

fn default_p_range() -> Vec<i64> {
    (-12..=20).collect()
}

struct VerifyInputs {
    n: Option<Vec<i64>>,
    p: Vec<i64>,
    b: Vec<BigRational>,
}

impl VerifyInputs {
    fn n_or(&self, default: std::ops::RangeInclusive<i64>, min: i64) -> Vec<i64> {
        match &self.n {
            Some(ns) => ns.iter().copied().filter(|&n| n >= min).collect(),
            None => default.collect(),
        }
    }
}

fn suite_vw(inp: &VerifyInputs) -> Vec<Check> {
    inp.p
        .iter()
        .map(|&p| {
            let outcome = lab::vw_build(p).map_err(|e| e.to_string()).and_then(|pair| {
                if !lab::reflection_check(&pair, p) {
                    return Err("reflection identity fails".into());
                }
                for b in &inp.b {
                    let (v, w) = (pair.v.eval(b), pair.w.eval(b));
                    if !(v.is_negative() && w.is_positive()) {
                        return Err(format!("b = {b}: V = {v}, W = {w}"));
                    }
                }
                Ok("dual construction, reflection, V<0<W".into())
            });
            check("vw", format!("p={p}"), outcome)
        })
        .collect()
}

fn suite_factor_signs(inp: &VerifyInputs) -> Vec<Check> {
    let q = inp.n_or(4..=30, 4).into_iter().map(|n| {
        check(
            "factor-signs",
            format!("Q n={n}"),
            lab::q_factor(n)
                .map(|q| format!("degree {:?}, all negative", q.degree()))
                .map_err(|e| e.to_string()),
        )
    });
    let s = inp.n_or(1..=30, 1).into_iter().map(|n| {
        check(
            "factor-signs",
            format!("S n={n}"),
            lab::s_factor(n)
                .map(|s| format!("degree {:?}, all positive", s.degree()))
                .map_err(|e| e.to_string()),
        )
    });
    q.chain(s).collect()
}

fn suite_lemma5(inp: &VerifyInputs) -> Vec<Check> {
    inp.n_or(4..=40, 4)
        .into_iter()
        .map(|n| {
            let outcome = (0..=n - 4).try_for_each(|j| match lab::lemma5_sum(n, j) {
                Ok((l, r)) if l == r => Ok(()),
                Ok((l, r)) => Err(format!("j={j}: {l} != {r}")),
                Err(e) => Err(e.to_string()),
            });
            check(
                "lemma5",
                format!("n={n}"),
                outcome.map(|_| format!("{} sums equal", n - 3)),
            )
        })
        .collect()
}

fn suite_lemma6(inp: &VerifyInputs) -> Vec<Check> {
    inp.n_or(13..=40, 13)
        .into_iter()
        .map(|n| {
            let outcome = match lab::lemma6_root_count(n) {
                Ok(1) => Ok("count 1".to_string()),
                Ok(k) => Err(format!("count {k}")),
                Err(e) => Err(e.to_string()),
            };
            check("lemma6", format!("n={n}"), outcome)
        })
        .collect()
}

fn bool_suite(suite: &'static str, ns: Vec<i64>, f: fn(i64) -> bool) -> Vec<Check> {
    ns.into_iter()
        .map(|n| {
            let outcome = if f(n) {
                Ok("identity exact".to_string())
            } else {
                Err("mismatch".to_string())
            };
            check(suite, format!("n={n}"), outcome)
        })
        .collect()
}

fn suite_theorem1(inp: &VerifyInputs) -> Vec<Check> {
    let mut out = vec![];
    for &p in &inp.p {
        for b in &inp.b {
            let outcome = lab::theorem1_verify(p, b).map_err(|e| e.to_string()).and_then(|t| {
                if (t.x1 - t.pair_re).abs() > 1e-9 {
                    return Err(format!("x1 = {} vs pair real part {}", t.x1, t.pair_re));
                }
                if p == -1 {
                    let exact = lab::reciprocal_pair_real_part(&int(1), b);
                    let g = means::g_cubic_exact(-1, &int(1), b).map_err(|e| e.to_string())?;
                    if !g.eval(&exact).is_zero() {
                        return Err(format!("g({exact}) != 0"));
                    }
                }
                Ok(format!(
                    "g(1)={} g(b)={} x1={}",
                    lab::rational_string(&t.g_at_1),
                    lab::rational_string(&t.g_at_b),
                    t.x1
                ))
            });
            out.push(check("theorem1", format!("p={p} b={b}"), outcome));
        }
    }
    out
}

fn run_suites(suite: Suite, inp: &VerifyInputs) -> Vec<Check> {
    let all = suite == Suite::All;
    let mut checks = vec![];
    if all || suite == Suite::Vw {
        checks.extend(suite_vw(inp));
    }
    if all || suite == Suite::FactorSigns {
        checks.extend(suite_factor_signs(inp));
    }
    if all || suite == Suite::Lemma5 {
        checks.extend(suite_lemma5(inp));
    }
    if all || suite == Suite::Lemma6 {
        checks.extend(suite_lemma6(inp));
    }
    if all || suite == Suite::LPoly {
        checks.extend(bool_suite("l-poly", inp.n_or(4..=25, 4), lab::l_poly_check));
    }
    if all || suite == Suite::V1 {
        checks.extend(bool_suite("v1", inp.n_or(4..=25, 4), lab::v1_double_sum_check));
    }
    if all || suite == Suite::DerivativeTables {
        checks.extend(bool_suite(
            "derivative-tables",
            inp.n_or(2..=30, 2),
            lab::derivative_table_check,
        ));
    }
    if all || suite == Suite::Theorem1 {
        checks.extend(suite_theorem1(inp));
    }
    checks
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> CmdResult {
    let n = args
        .n
        .as_deref()
        .map(parse_int_list)
        .transpose()
        .map_err(Failure::Usage)?;
    // Excluded exponents 0..=3 are dropped from ranges rather than rejected.
    let p: Vec<i64> = match &args.p {
        Some(s) => parse_int_list(s).map_err(Failure::Usage)?,
        None => default_p_range(),
    }
    .into_iter()
    .filter(|p| !(0..=3).contains(p))
    .collect();
    if p.is_empty() {
        return Err(Failure::Usage("--p: no exponents outside {0, 1, 2, 3}".into()));
    }
    let b = match &args.b {
        Some(s) => s
            .split(',')
            .map(|x| {
                parse_rational(x)
                    .filter(|q| *q > int(1))
                    .ok_or_else(|| Failure::Usage(format!("--b: need rationals > 1, got {x:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => default_b_grid(),
    };
    let checks = run_suites(args.suite, &VerifyInputs { n, p, b });
    let failed = checks.iter().filter(|c| !c.pass).count();
    let report = VerifyReport {
        passed: checks.len() - failed,
        failed,
        checks,
    };
    let text = match args.out.format {
        Format::Plain => {
            let mut s = String::new();
            for c in &report.checks {
                s.push_str(&format!(
                    "{} {} {}: {}\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.suite,
                    c.case,
                    c.detail
                ));
            }
            s.push_str(&format!("{} passed, {} failed\n", report.passed, report.failed));
            s
        }
        Format::Json => serde_json::to_string_pretty(&report).expect("serializes") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            for c in &report.checks {
                w.serialize(c).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    };
    emit(&args.out, &text, stdout)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

#[derive(Debug, Serialize)]
struct DemoReport {
    demo: &'static str,
    a: [f64; 2],
    b: [f64; 2],
    roots: Vec<[f64; 2]>,
    factorization_holds: bool,
    node_mean: [f64; 2],
}

fn cmd_demo(args: &SweepArgs, stdout: &mut dyn Write) -> CmdResult {
    let d = lab::nonreal_nodes_demo().map_err(|e| Failure::Compute(e.to_string()))?;
    let pair = |z: num_complex::Complex64| [z.re, z.im];
    let report = DemoReport {
        demo: "nonreal-nodes",
        a: pair(d.a),
        b: pair(d.b),
        roots: d.roots.iter().map(|&z| pair(z)).collect(),
        factorization_holds: d.factorization_holds,
        node_mean: pair(d.node_mean),
    };
    let text = match args.out.format {
        Format::Plain => {
            let mut s = format!("z^4, r=3, nodes {}+{}i and {}+{}i\n", d.a.re, d.a.im, d.b.re, d.b.im);
            for z in &d.roots {
                s.push_str(&format!("  root {:.12}{:+.12}i\n", z.re, z.im));
            }
            s.push_str(&format!("factorization holds: {}\n", d.factorization_holds));
            s.push_str(&format!("mean of nodes: {}+{}i\n", d.node_mean.re, d.node_mean.im));
            s
        }
        Format::Json => serde_json::to_string_pretty(&report).expect("serializes") + "\n",
        Format::Csv => {
            let mut s = String::from("re,im\n");
            for z in &d.roots {
                s.push_str(&format!("{},{}\n", z.re, z.im));
            }
            s
        }
    };
    emit(&args.out, &text, stdout)?;
    Ok(if d.factorization_holds { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> CmdResult {
    if args.demo.is_some() {
        return cmd_demo(args, stdout);
    }
    if args.specs.is_empty() {
        return Err(Failure::Usage("sweep needs --f or --demo".into()));
    }
    let specs = args
        .specs
        .iter()
        .map(|s| s.parse::<FunctionSpec>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    let r_values = parse_int_list(&args.r)
        .map_err(Failure::Usage)?
        .into_iter()
        .map(|r| {
            usize::try_from(r)
                .ok()
                .filter(|&r| r >= 1)
                .ok_or_else(|| Failure::Usage(format!("--r: bad order {r}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let a = parse_number("--a", &args.a)?;
    let b_grid = parse_grid(&args.b).map_err(Failure::Usage)?;
    if !(a > 0.0) || b_grid.iter().any(|&b| !(b > a)) {
        return Err(Failure::Usage(format!(
            "need 0 < a < b for every grid point, got a = {a}"
        )));
    }
    let tol = args.tol.tolerances().map_err(Failure::Usage)?;
    let run = || lab::conjecture_sweep(&specs, &r_values, a, &b_grid, &tol);
    let report = match args.jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Failure::Compute(e.to_string()))?
            .install(run),
        None => run(),
    };
    let text = match args.out.format {
        Format::Plain => {
            let mut s: String = report.cases.iter().map(plain_case).collect();
            let m = &report.summary;
            s.push_str(&format!(
                "{} cases, {} errors, cj1 holds in {}, cj2 holds in {}, closed-form mismatches {}\n",
                m.cases, m.errors, m.cj1_holds, m.cj2_holds, m.closed_form_mismatches
            ));
            s
        }
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    };
    emit(&args.out, &text, stdout)?;
    let failed = report.summary.closed_form_mismatches > 0 || (args.strict && report.summary.errors > 0);
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

/// Parse `args` and run, writing the report to `stdout` and diagnostics to
/// `stderr`. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Mean(a) => cmd_mean(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
    }
}
