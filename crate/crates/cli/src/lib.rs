//! Command-line front end: argument handling, output formatting, the corpus
//! runner and the result cache.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | any other failure |
//! | 2 | usage error or malformed input |
//! | 3 | reducible polynomial |
//! | 4 | precision search exceeded the gross cap |
//! | 5 | unconditional bound above budget (rerun with `--grh`) |
//! | 6 | corpus mismatch |

pub mod cache;
pub mod parse;
pub mod record;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use logclass_core::arith::int::is_prime_u64;
use logclass_core::corpus::{check_row, paper_rows, parse_filter, splitting_shape, CorpusRow, Tier};
use logclass_core::localfield::{factor_local, PadicPoly};
use logclass_core::logar::places_above;
use logclass_core::logclass::{log_class_group_from, render_group, LogClassOptions};
use logclass_core::numberfield::{maximal_order, ClassGroup, ClassGroupOptions, FieldContext};
use logclass_core::{Error, ZPoly};

use cache::Cache;
use record::{JobSpec, ResultRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REDUCIBLE: i32 = 3;
pub const EXIT_GROSS_CAP: i32 = 4;
pub const EXIT_BOUND: i32 = 5;
pub const EXIT_MISMATCH: i32 = 6;

#[derive(Parser, Debug)]
#[command(name = "logclass", version, about = "Logarithmic l-class groups of number fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the logarithmic l-class group of a field.
    Compute(ComputeArgs),
    /// Run the built-in reference table.
    Corpus(CorpusArgs),
    /// Class group of a field.
    Classgroup(FieldArgs),
    /// Prime ideals above p.
    Decompose(PrimeArgs),
    /// Factorisation of the polynomial over Z_p with certificates.
    LocalFactor(LocalArgs),
    /// Logarithmic invariants of the places above l.
    Places(PlacesArgs),
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Monic irreducible polynomial in x, e.g. "x^2+521951".
    #[arg(long)]
    pub poly: String,
    /// Use the Bach bound (conditional on GRH) instead of the Minkowski bound.
    #[arg(long)]
    pub grh: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub ell: u64,
    /// Abort the precision search once m exceeds m' by this much.
    #[arg(long, default_value_t = 64)]
    pub precision_cap: u32,
    /// JSON-lines cache file.
    #[arg(long, env = "LOGCLASS_CACHE")]
    pub cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    /// Table name; only "paper" is built in.
    #[arg(default_value = "paper")]
    pub table: String,
    /// Filter, e.g. "degree<=2" or "ell=2,tier=mandatory".
    #[arg(long)]
    pub rows: Option<String>,
    /// Include the GRH-gated rows of degree at least 5.
    #[arg(long)]
    pub grh: bool,
    #[arg(long, default_value_t = 4)]
    pub jobs: usize,
    #[arg(long, default_value_t = 64)]
    pub precision_cap: u32,
    #[arg(long)]
    pub json: bool,
    #[arg(long, env = "LOGCLASS_CACHE")]
    pub cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PrimeArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct LocalArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub p: u64,
    /// p-adic precision of the factors.
    #[arg(long, default_value_t = 20)]
    pub precision: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct PlacesArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub ell: u64,
    #[arg(long, default_value_t = 20)]
    pub precision: u32,
    #[arg(long)]
    pub json: bool,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure { code: exit_code(&e), msg: e.to_string() }
    }
}

impl From<parse::ParseError> for Failure {
    fn from(e: parse::ParseError) -> Failure {
        Failure { code: EXIT_USAGE, msg: e.to_string() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ReduciblePolynomial(_) => EXIT_REDUCIBLE,
        Error::GrossCapExceeded { .. } => EXIT_GROSS_CAP,
        Error::BoundTooLarge { .. } => EXIT_BOUND,
        Error::InvalidPolynomial | Error::InvalidInput(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

type Out<'a> = &'a mut dyn Write;

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.into() }
}

fn io(e: std::io::Error) -> Failure {
    Failure { code: EXIT_FAILURE, msg: e.to_string() }
}

fn field(src: &str) -> Result<FieldContext, Failure> {
    let c = parse::parse_poly(src)?;
    let f = ZPoly::new(c);
    if f.degree() < 1 || !f.is_monic() {
        return Err(usage("polynomial must be monic of degree at least 1"));
    }
    Ok(maximal_order(&f)?)
}

fn prime(p: u64, what: &str) -> Result<u64, Failure> {
    if is_prime_u64(p) {
        Ok(p)
    } else {
        Err(usage(format!("{what} = {p} is not prime")))
    }
}

fn json_line<T: Serialize>(out: Out, v: &T) -> Result<(), Failure> {
    let v = serde_json::to_value(v).expect("serialisable");
    writeln!(out, "{}", serde_json::to_string(&v).expect("serialisable")).map_err(io)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let r = match cli.command {
        Command::Compute(a) => compute(&a, out),
        Command::Corpus(a) => corpus(&a, out),
        Command::Classgroup(a) => classgroup(&a, out),
        Command::Decompose(a) => decompose(&a, out),
        Command::LocalFactor(a) => local_factor(&a, out),
        Command::Places(a) => places(&a, out),
    };
    match r {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn class_group_options(grh: bool) -> ClassGroupOptions {
    ClassGroupOptions { grh, ..ClassGroupOptions::default() }
}

/// Runs one job, consulting and filling the cache.
pub fn compute_record(
    ctx: &FieldContext,
    cg: &ClassGroup,
    spec: JobSpec,
    cache: Option<&Cache>,
) -> Result<ResultRecord, Failure> {
    if let Some(c) = cache {
        if let Some(r) = c.lookup(&spec.key()) {
            return Ok(r);
        }
    }
    let t = Instant::now();
    let opts = LogClassOptions {
        class_group: class_group_options(spec.grh),
        precision_cap: spec.precision_cap,
        ..LogClassOptions::default()
    };
    let r = log_class_group_from(ctx, cg, spec.ell, &opts)?;
    let rec = ResultRecord::build(spec, ctx, cg, &r, t.elapsed().as_millis() as u64);
    if let Some(c) = cache {
        c.append(&rec.spec.key(), &rec).map_err(io)?;
    }
    Ok(rec)
}

fn compute(a: &ComputeArgs, out: Out) -> Result<i32, Failure> {
    let ell = prime(a.ell, "ell")?;
    let coeffs = parse::parse_poly(&a.field.poly)?;
    let spec = JobSpec::new(&coeffs, ell, a.field.grh, a.precision_cap);
    let cache = a.cache.as_ref().map(Cache::new);
    if let Some(r) = cache.as_ref().and_then(|c| c.lookup(&spec.key())) {
        emit(out, &r, a.field.json)?;
        return Ok(EXIT_OK);
    }
    let ctx = field(&a.field.poly)?;
    let cg = ClassGroup::compute(&ctx, &class_group_options(a.field.grh))?;
    let rec = compute_record(&ctx, &cg, spec, cache.as_ref())?;
    emit(out, &rec, a.field.json)?;
    Ok(EXIT_OK)
}

fn emit(out: Out, r: &ResultRecord, json: bool) -> Result<(), Failure> {
    if json {
        writeln!(out, "{}", r.to_json()).map_err(io)
    } else {
        write!(out, "{}", r.human()).map_err(io)
    }
}

#[derive(Serialize)]
struct RowOutcome {
    field: String,
    ell: u64,
    tier: String,
    pass: bool,
    checks: Vec<CheckOut>,
    error: Option<String>,
    millis: u64,
}

#[derive(Serialize)]
struct CheckOut {
    name: String,
    expected: String,
    actual: String,
    pass: bool,
}

fn run_field(rows: &[CorpusRow], cap: u32, cache: Option<&Cache>) -> Vec<RowOutcome> {
    let fail_all = |msg: String| -> Vec<RowOutcome> {
        rows.iter()
            .map(|r| RowOutcome {
                field: r.field.into(),
                ell: r.ell,
                tier: format!("{:?}", r.tier).to_lowercase(),
                pass: false,
                checks: vec![],
                error: Some(msg.clone()),
                millis: 0,
            })
            .collect()
    };
    let first = &rows[0];
    let ctx = match maximal_order(&first.zpoly()) {
        Ok(c) => c,
        Err(e) => return fail_all(e.to_string()),
    };
    let cg = match ClassGroup::compute(&ctx, &class_group_options(first.grh())) {
        Ok(c) => c,
        Err(e) => return fail_all(e.to_string()),
    };
    rows.iter()
        .map(|row| {
            let t = Instant::now();
            let coeffs: Vec<BigInt> = row.poly.iter().map(|&c| BigInt::from(c)).collect();
            let spec = JobSpec::new(&coeffs, row.ell, row.grh(), cap);
            let opts = LogClassOptions {
                class_group: class_group_options(row.grh()),
                precision_cap: cap,
                ..LogClassOptions::default()
            };
            let tier = format!("{:?}", row.tier).to_lowercase();
            match log_class_group_from(&ctx, &cg, row.ell, &opts) {
                Ok(r) => {
                    if let Some(c) = cache {
                        let rec = ResultRecord::build(spec, &ctx, &cg, &r, t.elapsed().as_millis() as u64);
                        let _ = c.append(&rec.spec.key(), &rec);
                    }
                    let checks: Vec<CheckOut> = check_row(row, &ctx, &r)
                        .into_iter()
                        .map(|c| CheckOut { name: c.name.into(), pass: c.pass(), expected: c.expected, actual: c.actual })
                        .collect();
                    RowOutcome {
                        field: row.field.into(),
                        ell: row.ell,
                        tier,
                        pass: checks.iter().all(|c| c.pass),
                        checks,
                        error: None,
                        millis: t.elapsed().as_millis() as u64,
                    }
                }
                Err(e) => RowOutcome {
                    field: row.field.into(),
                    ell: row.ell,
                    tier,
                    pass: false,
                    checks: vec![],
                    error: Some(e.to_string()),
                    millis: t.elapsed().as_millis() as u64,
                },
            }
        })
        .collect()
}

fn corpus(a: &CorpusArgs, out: Out) -> Result<i32, Failure> {
    if a.table != "paper" {
        return Err(usage(format!("unknown table '{}'", a.table)));
    }
    let filters = match &a.rows {
        Some(s) => parse_filter(s).map_err(usage)?,
        None => vec![],
    };
    let rows: Vec<CorpusRow> = paper_rows()
        .into_iter()
        .filter(|r| a.grh || r.tier == Tier::Mandatory)
        .filter(|r| filters.iter().all(|f| f.accepts(r)))
        .collect();
    let mut groups: BTreeMap<Vec<i64>, Vec<CorpusRow>> = BTreeMap::new();
    let mut order: Vec<Vec<i64>> = Vec::new();
    for r in rows {
        let k = r.poly.to_vec();
        if !groups.contains_key(&k) {
            order.push(k.clone());
        }
        groups.entry(k).or_default().push(r);
    }
    let cache = a.cache.as_ref().map(Cache::new);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.max(1))
        .build()
        .map_err(|e| Failure { code: EXIT_FAILURE, msg: e.to_string() })?;
    let results: Vec<Vec<RowOutcome>> =
        pool.install(|| order.par_iter().map(|k| run_field(&groups[k], a.precision_cap, cache.as_ref())).collect());
    let results: Vec<RowOutcome> = results.into_iter().flatten().collect();
    let all_pass = results.iter().all(|r| r.pass);
    if a.json {
        json_line(out, &results)?;
    } else {
        for r in &results {
            let status = if r.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{status}  {} l={} ({} ms)", r.field, r.ell, r.millis).map_err(io)?;
            if let Some(e) = &r.error {
                writeln!(out, "      error: {e}").map_err(io)?;
            }
            for c in &r.checks {
                let mark = if c.pass { "ok " } else { "BAD" };
                writeln!(out, "      {mark} {:<15} expected {:<12} got {}", c.name, c.expected, c.actual).map_err(io)?;
            }
        }
        let n = results.len();
        let k = results.iter().filter(|r| r.pass).count();
        writeln!(out, "{k}/{n} rows pass").map_err(io)?;
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_MISMATCH })
}

#[derive(Serialize)]
struct ClassGroupOut {
    field: String,
    degree: usize,
    signature: (usize, usize),
    discriminant: String,
    class_group: String,
    class_number: String,
    regulator: String,
    roots_of_unity: u64,
    bound: u64,
    grh: bool,
}

fn classgroup(a: &FieldArgs, out: Out) -> Result<i32, Failure> {
    let ctx = field(&a.poly)?;
    let cg = ClassGroup::compute(&ctx, &class_group_options(a.grh))?;
    let o = ClassGroupOut {
        field: ctx.poly.to_string(),
        degree: ctx.n,
        signature: (ctx.r1, ctx.r2),
        discriminant: ctx.disc.to_string(),
        class_group: render_group(&cg.cyclic),
        class_number: cg.h.to_string(),
        regulator: format!("{:.12}", cg.regulator),
        roots_of_unity: cg.torsion.w,
        bound: cg.bound,
        grh: cg.grh,
    };
    if a.json {
        json_line(out, &o)?;
    } else {
        writeln!(out, "field          {}", o.field).map_err(io)?;
        writeln!(out, "signature      ({}, {})", o.signature.0, o.signature.1).map_err(io)?;
        writeln!(out, "discriminant   {}", o.discriminant).map_err(io)?;
        writeln!(out, "class group    {}", o.class_group).map_err(io)?;
        writeln!(out, "regulator      {}", o.regulator).map_err(io)?;
        writeln!(out, "roots of unity {}", o.roots_of_unity).map_err(io)?;
        writeln!(out, "prime bound    {}{}", o.bound, if o.grh { " (GRH)" } else { "" }).map_err(io)?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct PlaceOut {
    p: u64,
    index: usize,
    e: u32,
    f: u32,
    norm: String,
    uniformizer: String,
}

fn decompose(a: &PrimeArgs, out: Out) -> Result<i32, Failure> {
    let p = prime(a.p, "p")?;
    let ctx = field(&a.poly)?;
    let rows: Vec<PlaceOut> = ctx
        .places(p)
        .iter()
        .map(|pl| PlaceOut {
            p,
            index: pl.index,
            e: pl.e,
            f: pl.f,
            norm: pl.norm().to_string(),
            uniformizer: pl.theta(&ctx).to_string(),
        })
        .collect();
    if a.json {
        json_line(out, &rows)?;
    } else {
        writeln!(out, "({p}) = {}", splitting_shape(&ctx, p)).map_err(io)?;
        writeln!(out, "  k   e   f  norm        generator with v = 1").map_err(io)?;
        for r in &rows {
            writeln!(out, "{:>3}{:>4}{:>4}  {:<11} {}", r.index, r.e, r.f, r.norm, r.uniformizer).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct LocalOut {
    e: u32,
    f: u32,
    factor: String,
    gamma: String,
    pi: String,
}

fn local_factor(a: &LocalArgs, out: Out) -> Result<i32, Failure> {
    let p = prime(a.p, "p")?;
    let c = parse::parse_poly(&a.poly)?;
    let f = ZPoly::new(c);
    if a.precision == 0 {
        return Err(usage("precision must be positive"));
    }
    let facs = factor_local(&PadicPoly::from_zpoly(&f, p, a.precision))?;
    let rows: Vec<LocalOut> = facs
        .iter()
        .map(|lf| LocalOut {
            e: lf.e,
            f: lf.f,
            factor: lf.phi.to_zpoly().to_string(),
            gamma: lf.gamma.to_string(),
            pi: lf.pi.to_string(),
        })
        .collect();
    if a.json {
        json_line(out, &rows)?;
    } else {
        writeln!(out, "{} over Z_{p} modulo {p}^{}:", f, a.precision).map_err(io)?;
        for (i, r) in rows.iter().enumerate() {
            writeln!(out, "factor {}: e = {}, f = {}", i + 1, r.e, r.f).map_err(io)?;
            writeln!(out, "  phi   = {}", r.factor).map_err(io)?;
            writeln!(out, "  Gamma = {}", r.gamma).map_err(io)?;
            writeln!(out, "  Pi    = {}", r.pi).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct LogPlaceOut {
    p: u64,
    e: u32,
    f: u32,
    e_tilde: u64,
    f_tilde: u64,
    lambda: String,
    deg: String,
    deg_valuation: u32,
}

fn places(a: &PlacesArgs, out: Out) -> Result<i32, Failure> {
    let ell = prime(a.ell, "ell")?;
    let ctx = field(&a.poly)?;
    let rows: Vec<LogPlaceOut> = places_above(&ctx, ell, a.precision)?
        .iter()
        .map(|lp| {
            Ok(LogPlaceOut {
                p: lp.place.p,
                e: lp.place.e,
                f: lp.place.f,
                e_tilde: lp.e_tilde,
                f_tilde: lp.f_tilde,
                lambda: lp.lambda()?.residue().to_string(),
                deg: lp.deg.residue().to_string(),
                deg_valuation: lp.deg.valuation_capped(),
            })
        })
        .collect::<Result<_, Error>>()?;
    if a.json {
        json_line(out, &rows)?;
    } else {
        writeln!(out, "places above {ell}, values modulo {ell}^{}:", a.precision).map_err(io)?;
        writeln!(out, "     p   e   f  e~  f~  lambda / deg_F").map_err(io)?;
        for r in &rows {
            writeln!(out, "{:>6}{:>4}{:>4}{:>4}{:>4}  {}", r.p, r.e, r.f, r.e_tilde, r.f_tilde, r.lambda).map_err(io)?;
            writeln!(out, "{:>26}  {} (valuation {})", "", r.deg, r.deg_valuation).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}
