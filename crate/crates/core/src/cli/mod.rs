//! Instance files, run reports and the `foldbetti` command line.

mod instance;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

pub use instance::{parse_instance, FieldSpec, FormSpec, Instance, InstanceFile};

use crate::betti::{b1_tutte_with, herzog_kuhl_residuals, BettiEngine, BettiTable, Method};
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::forms::FormCollection;
use crate::matroid::{hamming_weights, height_from_weights, tutte_shifted_coeffs, TuttePoly};
use crate::oracle::{b1_via_circuits_limited, betti_from_hilbert, hilbert_function_range, HFReport, OracleLimits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Betti table of each requested fold.
    Betti,
    /// Tutte polynomial and its shift T(x+1, y).
    Tutte,
    /// Generalized Hamming weights.
    Hamming,
    /// Height of each requested fold ideal.
    Height,
    /// Hilbert function values of each requested fold ideal.
    Hilbert,
    /// Every available method on every requested fold, cross-checked.
    Verify,
}

/// Which folds a run covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Folds {
    All,
    Only(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct Options {
    pub folds: Folds,
    pub method: Method,
    /// Inclusive degree range for `hilbert`; defaults to `a..=a+k`.
    pub degrees: Option<(usize, usize)>,
    pub tutte_threshold: Option<usize>,
    pub allow_trivial: bool,
    pub limits: OracleLimits,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            folds: Folds::All,
            method: Method::Auto,
            degrees: None,
            tutte_threshold: None,
            allow_trivial: false,
            limits: OracleLimits::default(),
        }
    }
}

/// Result of one method on one fold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Table(BettiTable),
    B1 { b1: u64 },
    Skipped { skipped: String },
    NotApplicable { not_applicable: String },
    Failed { error: String },
}

impl Outcome {
    fn from_table(r: Result<BettiTable>) -> Self {
        match r {
            Ok(t) => Outcome::Table(t),
            Err(e) => Self::from_error(e),
        }
    }

    fn from_b1(r: Result<u64>) -> Self {
        match r {
            Ok(b1) => Outcome::B1 { b1 },
            Err(e) => Self::from_error(e),
        }
    }

    fn from_error(e: Error) -> Self {
        match e {
            Error::Guardrail(_) => Outcome::Skipped { skipped: e.to_string() },
            Error::HeightWindowUnsupported(_) => Outcome::NotApplicable { not_applicable: e.to_string() },
            _ => Outcome::Failed { error: e.to_string() },
        }
    }

    fn b1(&self) -> Option<u64> {
        match self {
            Outcome::Table(t) => Some(t.get(1)),
            Outcome::B1 { b1 } => Some(*b1),
            _ => None,
        }
    }

    fn failed(&self) -> bool {
        matches!(self, Outcome::Failed { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Agree,
    Disagree { reasons: Vec<String>, values: BTreeMap<String, Vec<u64>> },
}

/// Structural checks run on every table a fold produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub height: usize,
    pub herzog_kuhl: BTreeMap<String, Vec<i64>>,
    pub pdim: BTreeMap<String, usize>,
    pub pdim_expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoldResult {
    pub a: usize,
    pub checks: Option<Checks>,
    pub height: Option<usize>,
    pub hilbert: Option<HFReport>,
    pub methods: BTreeMap<String, Outcome>,
    pub verdict: Option<Verdict>,
}

impl FoldResult {
    fn new(a: usize) -> Self {
        FoldResult { a, checks: None, height: None, hilbert: None, methods: BTreeMap::new(), verdict: None }
    }

    fn ok(&self, command: Command) -> bool {
        let methods_ok = if command == Command::Verify {
            !self.methods.values().any(Outcome::failed)
        } else {
            self.methods.values().all(|o| matches!(o, Outcome::Table(_)))
        };
        methods_ok && !matches!(self.verdict, Some(Verdict::Disagree { .. }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TutteReport {
    pub polynomial: TuttePoly,
    pub shifted: TuttePoly,
    pub text: String,
    pub shifted_text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: Command,
    pub instance: InstanceFile,
    pub k_original: usize,
    pub k_eff: usize,
    pub n: usize,
    pub hamming: Vec<usize>,
    pub results: Vec<FoldResult>,
    pub tutte: Option<TutteReport>,
    pub warnings: Vec<String>,
    pub ok: bool,
}

impl RunReport {
    /// Key-sorted pretty JSON.
    pub fn to_json(&self) -> String {
        // serde_json's default map is ordered, so converting through Value sorts every key.
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("report serializes")
    }

    pub fn exit_code(&self) -> ExitCode {
        if self.ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

/// Runs `command` on a parsed instance. Errors are reserved for bad requests;
/// failed computations are recorded in the report.
pub fn run(command: Command, file: &InstanceFile, options: &Options) -> Result<RunReport> {
    match file.build()? {
        Instance::Rational(sigma) => run_on(command, file, &sigma, options),
        Instance::Prime(sigma) => run_on(command, file, &sigma, options),
    }
}

fn requested_folds(n: usize, options: &Options) -> Result<Vec<usize>> {
    let folds = match &options.folds {
        Folds::All => (1..=n).collect(),
        Folds::Only(v) => v.clone(),
    };
    if !options.allow_trivial {
        if let Some(&a) = folds.iter().find(|&&a| a == 0 || a > n) {
            return Err(Error::InvalidArgument(format!(
                "fold {a} is outside 1..={n}; pass --allow-trivial to report its trivial table"
            )));
        }
    }
    Ok(folds)
}

fn run_on<F: Field>(command: Command, file: &InstanceFile, sigma: &FormCollection<F>, options: &Options) -> Result<RunReport> {
    let ess = sigma.essentialize();
    let (n, k_eff) = (ess.n(), ess.k());
    let hw = hamming_weights(&ess)?;
    let folds = match command {
        Command::Tutte | Command::Hamming => Vec::new(),
        _ => requested_folds(n, options)?,
    };
    if let Some((lo, hi)) = options.degrees {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty degree range {lo}..{hi}")));
        }
    }
    let mut engine = BettiEngine::new().with_oracle_limits(options.limits.clone());
    if let Some(t) = options.tutte_threshold {
        engine = engine.with_tutte_threshold(t);
    }
    let results: Vec<FoldResult> = folds
        .par_iter()
        .map(|&a| {
            let mut r = FoldResult::new(a);
            if a == 0 || a > n {
                trivial_fold(command, &mut r, a, k_eff, options);
                return r;
            }
            match command {
                Command::Betti => {
                    r.methods.insert(options.method.name().into(), Outcome::from_table(engine.compute(&ess, a, options.method)));
                }
                Command::Height => r.height = Some(height_from_weights(&hw, a)),
                Command::Hilbert => {
                    let (lo, hi) = options.degrees.unwrap_or((a, a + k_eff));
                    match hilbert_values(&ess, a, lo, hi, &options.limits) {
                        Ok(report) => r.hilbert = Some(report),
                        Err(e) => {
                            r.methods.insert("oracle".into(), Outcome::from_error(e));
                        }
                    }
                }
                Command::Verify => verify_fold(&engine, &ess, a, height_from_weights(&hw, a), &options.limits, &mut r),
                Command::Tutte | Command::Hamming => unreachable!(),
            }
            r
        })
        .collect();
    let tutte = (command == Command::Tutte).then(|| {
        let polynomial = engine.tutte().polynomial(&ess);
        let shifted = tutte_shifted_coeffs(&polynomial);
        TutteReport { text: polynomial.to_string(), shifted_text: shifted.to_string(), polynomial, shifted }
    });
    let mut warnings = Vec::new();
    if sigma.field().characteristic() != 0 && command == Command::Verify {
        warnings.push(format!(
            "working over {}: the closed-form formulas were derived without fixing the field, and the matroid can change in positive characteristic",
            sigma.field().name()
        ));
    }
    let ok = results.iter().all(|r| r.ok(command));
    Ok(RunReport {
        command,
        instance: file.clone(),
        k_original: sigma.k(),
        k_eff,
        n,
        hamming: hw.d.clone(),
        results,
        tutte,
        warnings,
        ok,
    })
}

fn trivial_fold(command: Command, r: &mut FoldResult, a: usize, k_eff: usize, options: &Options) {
    let table = if a == 0 { BettiTable::principal(0, k_eff) } else { BettiTable::zero(a, k_eff) };
    match command {
        Command::Betti => {
            r.methods.insert(options.method.name().into(), Outcome::Table(table));
        }
        Command::Height => r.height = (a > 0).then_some(0),
        Command::Hilbert => {
            let (lo, hi) = options.degrees.unwrap_or((a, a + k_eff));
            let values = (lo..=hi)
                .map(|d| (d, if a == 0 { crate::combinatorics::binom((d + k_eff - 1) as i64, d as i64) as usize } else { 0 }))
                .collect();
            r.hilbert = Some(HFReport { a, values });
        }
        Command::Verify => {
            r.methods.insert("trivial".into(), Outcome::Table(table));
            r.verdict = Some(Verdict::Agree);
        }
        Command::Tutte | Command::Hamming => {}
    }
}

/// HF over `lo..=hi`, with the degrees below `a` (where `I_a` vanishes) filled in as zero.
fn hilbert_values<F: Field>(sigma: &FormCollection<F>, a: usize, lo: usize, hi: usize, limits: &OracleLimits) -> Result<HFReport> {
    let mut values: BTreeMap<usize, usize> = (lo..a.min(hi + 1)).map(|d| (d, 0)).collect();
    if hi >= a {
        values.extend(hilbert_function_range(sigma, a, lo.max(a)..=hi, limits)?.values);
    }
    Ok(HFReport { a, values })
}

fn verify_fold<F: Field>(
    engine: &BettiEngine<F>,
    sigma: &FormCollection<F>,
    a: usize,
    height: usize,
    limits: &OracleLimits,
    r: &mut FoldResult,
) {
    let n = sigma.n();
    let k = sigma.k();
    let m = &mut r.methods;
    m.insert("recursion".into(), Outcome::from_table(engine.compute(sigma, a, Method::Recursion)));
    m.insert("tutte_hk".into(), Outcome::from_table(engine.tutte_hk(sigma, a)));
    m.insert("oracle".into(), Outcome::from_table(betti_from_hilbert(sigma, a, limits)));
    m.insert("tutte_b1".into(), Outcome::from_b1(b1_tutte_with(engine.tutte(), sigma, a)));
    let circuits = if a < n {
        Outcome::from_b1(b1_via_circuits_limited(sigma, a, limits))
    } else {
        Outcome::NotApplicable { not_applicable: "circuit relations are used for a < n".into() }
    };
    m.insert("circuits_b1".into(), circuits);

    let mut reasons = Vec::new();
    let mut values = BTreeMap::new();
    let pdim_expected = k.min(n - a + 1);
    let mut checks = Checks { height, herzog_kuhl: BTreeMap::new(), pdim: BTreeMap::new(), pdim_expected };
    let tables: Vec<(&String, &BettiTable)> =
        m.iter().filter_map(|(name, o)| if let Outcome::Table(t) = o { Some((name, t)) } else { None }).collect();
    for (name, o) in m.iter() {
        match o {
            Outcome::Table(t) => {
                values.insert(name.clone(), t.b.clone());
            }
            Outcome::B1 { b1 } => {
                values.insert(name.clone(), vec![*b1]);
            }
            Outcome::Failed { error } => reasons.push(format!("{name} failed: {error}")),
            _ => {}
        }
    }
    for (name, t) in &tables {
        let residuals = herzog_kuhl_residuals(t, a, height);
        if residuals.iter().any(|&x| x != 0) {
            reasons.push(format!("{name}: Herzog-Kühl residuals {residuals:?}"));
        }
        checks
            .herzog_kuhl
            .insert((*name).clone(), residuals.iter().map(|&x| i64::try_from(x).unwrap_or(i64::MAX)).collect());
        checks.pdim.insert((*name).clone(), t.pdim());
        if t.pdim() != pdim_expected {
            reasons.push(format!("{name}: pdim {} but expected {pdim_expected}", t.pdim()));
        }
        if !t.tail_vanishes() {
            reasons.push(format!("{name}: nonzero entry after a zero"));
        }
    }
    if let Some((first, t0)) = tables.first() {
        for (name, t) in &tables[1..] {
            if t.b != t0.b {
                reasons.push(format!("{name} differs from {first}"));
            }
        }
    }
    let b1s: Vec<(&String, u64)> = m.iter().filter_map(|(name, o)| o.b1().map(|b| (name, b))).collect();
    if let Some((first, b0)) = b1s.first() {
        for (name, b) in &b1s[1..] {
            if b != b0 {
                reasons.push(format!("b_1 from {name} is {b}, from {first} is {b0}"));
            }
        }
    }
    r.checks = Some(checks);
    r.verdict = Some(if reasons.is_empty() { Verdict::Agree } else { Verdict::Disagree { reasons, values } });
}

/// Plain-text rendering of a report.
pub fn render_text(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "field {}  n = {}  k = {} (effective {})",
        report.instance.field, report.n, report.k_original, report.k_eff
    );
    let _ = writeln!(out, "hamming weights: ({})", report.hamming.iter().join(", "));
    if let Some(t) = &report.tutte {
        let _ = writeln!(out, "T(x, y)     = {}", t.text);
        let _ = writeln!(out, "T(x + 1, y) = {}", t.shifted_text);
    }
    for r in &report.results {
        let _ = write!(out, "a = {:>2}", r.a);
        if let Some(h) = r.height {
            let _ = write!(out, "  height {h}");
        }
        if let Some(hf) = &r.hilbert {
            let _ = write!(out, "  HF: {}", hf.values.iter().map(|(d, v)| format!("{d}:{v}")).join(" "));
        }
        for (name, o) in &r.methods {
            let shown = match o {
                Outcome::Table(t) => format!("({})", t.b.iter().join(", ")),
                Outcome::B1 { b1 } => format!("b1 = {b1}"),
                Outcome::Skipped { skipped } => format!("skipped: {skipped}"),
                Outcome::NotApplicable { .. } => "n/a".into(),
                Outcome::Failed { error } => format!("error: {error}"),
            };
            let _ = write!(out, "  {name} {shown}");
        }
        match &r.verdict {
            Some(Verdict::Agree) => out.push_str("  [agree]"),
            Some(Verdict::Disagree { reasons, .. }) => {
                let _ = write!(out, "  [DISAGREE: {}]", reasons.join("; "));
            }
            None => {}
        }
        out.push('\n');
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

fn parse_degrees(s: &str) -> std::result::Result<(usize, usize), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected D1..D2, got {s:?}"))?;
    let lo = lo.trim().parse().map_err(|_| format!("invalid degree {lo:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("invalid degree {hi:?}"))?;
    Ok((lo, hi))
}

/// Betti numbers of ideals generated by a-fold products of linear forms.
#[derive(Debug, Parser)]
#[command(name = "foldbetti", version)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Instance JSON file, or `-` for standard input.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Fold to compute; may be repeated.
    #[arg(long = "fold", short = 'a', conflicts_with = "all_folds")]
    pub fold: Vec<usize>,
    /// Every fold a = 1..n (the default when no fold is given).
    #[arg(long)]
    pub all_folds: bool,
    #[arg(long, default_value = "auto")]
    pub method: Method,
    /// Degree range D1..D2 for `hilbert`.
    #[arg(long, value_parser = parse_degrees)]
    pub degrees: Option<(usize, usize)>,
    /// Largest n for which the Tutte shortcut is tried inside the recursion.
    #[arg(long)]
    pub tutte_threshold: Option<usize>,
    /// Accept folds a = 0 and a > n and report their trivial tables.
    #[arg(long)]
    pub allow_trivial: bool,
    /// Emit key-sorted JSON.
    #[arg(long)]
    pub json: bool,
}

/// Entry point of the binary. Exit codes: 0 success, 1 failed computation or
/// disagreement, 2 unusable input.
pub fn main_with(args: Args) -> ExitCode {
    let input = if args.input.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf).map(|_| buf)
    } else {
        std::fs::read(&args.input)
    };
    let report = input
        .map_err(|e| Error::Io(format!("{}: {e}", args.input.display())))
        .and_then(|text| parse_instance(&text))
        .and_then(|file| {
            let options = Options {
                folds: if args.fold.is_empty() { Folds::All } else { Folds::Only(args.fold.clone()) },
                method: args.method,
                degrees: args.degrees,
                tutte_threshold: args.tutte_threshold,
                allow_trivial: args.allow_trivial,
                limits: OracleLimits::from_env()?,
            };
            run(args.command, &file, &options)
        });
    match report {
        Ok(report) => {
            if args.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", render_text(&report));
                for w in &report.warnings {
                    eprintln!("warning: {w}");
                }
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
