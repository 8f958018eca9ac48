use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use plateau_core::code::{
    enumerate_weights_capped, macwilliams, sphere_packing_classify, DEFAULT_ENUM_CAP,
};
use plateau_core::construct::{
    build_cbar, build_cf, build_cstar, build_extended, extend_to_self_dual, CodeDocument,
    Provenance,
};
use plateau_core::plateaued::{coeff_label, quadratic_coeff_count};
use plateau_core::scan::{check_desk_scale, run_scan, ScanPlan};
use plateau_core::verify::{run_targets, Enumerated};
use plateau_core::{
    CodeError, ConstructError, ConstructionBundle, FieldCtx, LinearCode, PFunction, QuadraticSpec,
    SelfDualOutcome, Target, WalshProfile, WeightDistribution,
};
use serde::Serialize;
use thiserror::Error;

use crate::{FieldArgs, Format, FunctionInput, Which};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Cap(String),
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Cap(_) => 4,
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::DegenerateRows | ConstructError::NotSelfOrthogonalInput => {
                CliError::Precondition(e.to_string())
            }
            ConstructError::Code(c) => c.into(),
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::TooLarge { .. } => CliError::Cap(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

/// `PLATEAU_MAX_ENUM` if set, else the library default.
pub fn enum_cap() -> Result<u64, CliError> {
    match std::env::var("PLATEAU_MAX_ENUM") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("PLATEAU_MAX_ENUM must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn field(
    p: u32,
    m: u32,
    poly: Option<&[u32]>,
    alpha: Option<&[u32]>,
) -> Result<Arc<FieldCtx>, CliError> {
    let ctx = FieldCtx::new(p, m, poly).map_err(usage)?;
    let ctx = match alpha {
        Some(a) => {
            let g = ctx.from_coeffs(a).map_err(usage)?;
            ctx.with_alpha(g).map_err(usage)?
        }
        None => ctx,
    };
    Ok(Arc::new(ctx))
}

impl FieldArgs {
    fn ctx(&self) -> Result<Arc<FieldCtx>, CliError> {
        field(self.p, self.m, self.poly.as_deref(), self.alpha.as_deref())
    }
}

/// A function read from the command line, with its quadratic spec when it
/// was given by coefficients.
struct LoadedFunction {
    f: PFunction,
    spec: Option<QuadraticSpec>,
}

impl FunctionInput {
    fn field_params(&self) -> Option<(u32, u32)> {
        Some((self.p?, self.m?))
    }

    fn load(&self) -> Result<LoadedFunction, CliError> {
        match (&self.coeffs, &self.table) {
            (Some(coeffs), None) => {
                let (p, m) = self
                    .field_params()
                    .ok_or_else(|| usage("--coeffs needs --p and --m"))?;
                let ctx = field(p, m, self.poly.as_deref(), self.alpha.as_deref())?;
                let want = quadratic_coeff_count(m);
                if coeffs.len() != want {
                    return Err(usage(format!(
                        "GF({p}^{m}) takes {want} coefficients, got {}",
                        coeffs.len()
                    )));
                }
                let labels: Vec<&str> = coeffs.iter().map(String::as_str).collect();
                let spec = QuadraticSpec::from_labels(ctx, &labels).map_err(usage)?;
                Ok(LoadedFunction {
                    f: spec.to_function(),
                    spec: Some(spec),
                })
            }
            (None, Some(path)) => {
                let f: PFunction = read_json(path)?;
                if let Some((p, m)) = self.field_params() {
                    if (p, m) != (f.ctx().p(), f.ctx().m()) {
                        return Err(usage(format!(
                            "--p {p} --m {m} disagrees with the table's GF({}^{})",
                            f.ctx().p(),
                            f.ctx().m()
                        )));
                    }
                }
                Ok(LoadedFunction { f, spec: None })
            }
            _ => Err(usage("give exactly one of --coeffs or --table")),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn print_json(value: &impl Serialize) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).map_err(|e| usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

pub fn construct(input: &FunctionInput, which: Which) -> Result<ExitCode, CliError> {
    let LoadedFunction { f, spec } = input.load()?;
    let code = match which {
        Which::Cbar => build_cbar(&f)?,
        Which::Cstar => build_cstar(&f)?,
        Which::Cf => build_cf(&f)?,
        Which::Extended => build_extended(&f)?,
    };
    let profile = WalshProfile::compute(&f);
    print_json(&CodeDocument {
        code: &code,
        provenance: Some(Provenance::new(&profile, spec.as_ref())),
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Analysis {
    p: u32,
    n: usize,
    k: usize,
    d: Option<usize>,
    weights: WeightDistribution,
    gram_rank: usize,
    hull_dim: usize,
    self_orthogonal: bool,
    lcd: bool,
    sphere_packing: Option<String>,
    dual: Option<DualSummary>,
}

#[derive(Serialize)]
struct DualSummary {
    k: usize,
    d: Option<usize>,
    sphere_packing: Option<String>,
}

fn bracket(n: usize, k: usize, d: Option<usize>) -> String {
    match d {
        Some(d) => format!("[{n},{k},{d}]"),
        None => format!("[{n},{k}]"),
    }
}

pub fn analyze(path: &Path, format: Format, cap: u64) -> Result<ExitCode, CliError> {
    let code: LinearCode = read_json(path)?;
    let (p, n, k) = (code.p(), code.n(), code.k());
    let weights = enumerate_weights_capped(&code, cap)?;
    let d = weights.min_distance();
    let class = |k: usize, d: Option<usize>| {
        d.and_then(|d| sphere_packing_classify(n, k, d, p).ok())
            .map(|c| format!("{c}(sphere-packing)"))
    };
    let dual = (k < n)
        .then(|| macwilliams(&weights, k, p))
        .transpose()?
        .map(|dw| {
            let dd = dw.min_distance();
            DualSummary {
                k: n - k,
                d: dd,
                sphere_packing: class(n - k, dd),
            }
        });
    let gram = code.gram_rank();
    let a = Analysis {
        p,
        n,
        k,
        d,
        sphere_packing: class(k, d),
        gram_rank: gram.rank,
        hull_dim: gram.hull_dim(),
        self_orthogonal: code.is_self_orthogonal(),
        lcd: gram.is_lcd(),
        weights,
        dual,
    };
    match format {
        Format::Json => print_json(&a)?,
        Format::Csv => print!("{}", a.weights.to_csv()),
        Format::Pretty => {
            let mut out = io::stdout().lock();
            writeln!(out, "code {} over GF({p})", bracket(n, k, d))?;
            write!(out, "{}", a.weights.to_csv())?;
            writeln!(out, "d={}", d.map_or("none".into(), |d| d.to_string()))?;
            writeln!(out, "gram_rank={}", a.gram_rank)?;
            writeln!(out, "hull_dim={}", a.hull_dim)?;
            writeln!(out, "self_orthogonal={}", a.self_orthogonal)?;
            writeln!(out, "lcd={}", a.lcd)?;
            let sp = |c: &Option<String>| c.clone().unwrap_or_else(|| "unclassified".into());
            writeln!(out, "code {} {}", bracket(n, k, d), sp(&a.sphere_packing))?;
            if let Some(du) = &a.dual {
                writeln!(
                    out,
                    "dual {} {}",
                    bracket(n, du.k, du.d),
                    sp(&du.sphere_packing)
                )?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(
    input: &FunctionInput,
    targets: &[Target],
    format: Format,
    seed: u64,
    cap: u64,
) -> Result<ExitCode, CliError> {
    let LoadedFunction { f, spec } = input.load()?;
    check_desk_scale(f.ctx().p(), f.ctx().m(), cap).map_err(|e| CliError::Cap(e.to_string()))?;
    let bundle = ConstructionBundle::build(f)?;
    let enumerated = Enumerated::compute(&bundle, cap)?;
    let reports = run_targets(&bundle, &enumerated, targets, spec.as_ref(), seed);
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            for r in &reports {
                serde_json::to_writer(&mut out, r).map_err(usage)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            writeln!(out, "target,verdict,quantity,expected,observed")?;
            for r in &reports {
                let verdict = r.verdict.to_string();
                if r.checks.is_empty() {
                    writeln!(out, "{},{verdict},,,", r.target)?;
                }
                for c in &r.checks {
                    writeln!(
                        out,
                        "{},{verdict},{},{},{}",
                        r.target,
                        csv_field(&c.quantity),
                        csv_field(&c.expected.to_string()),
                        csv_field(&c.observed)
                    )?;
                }
            }
        }
        Format::Pretty => {
            for r in &reports {
                writeln!(out, "{}", r.summary_line())?;
                for note in &r.notes {
                    writeln!(out, "    note: {note}")?;
                }
            }
        }
    }
    Ok(if reports.iter().any(|r| r.verdict.is_fail()) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[allow(clippy::too_many_arguments)]
pub fn scan(
    field: &FieldArgs,
    count: Option<usize>,
    exhaustive: bool,
    seed: u64,
    s: Option<u32>,
    workers: Option<usize>,
    targets: &[Target],
    cap: u64,
) -> Result<ExitCode, CliError> {
    check_desk_scale(field.p, field.m, cap).map_err(|e| CliError::Cap(e.to_string()))?;
    let ctx = field.ctx()?;
    if let Some(w) = workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(usage)?;
    }
    let plan = if exhaustive {
        ScanPlan::exhaustive(ctx)
    } else {
        ScanPlan::random(ctx, count.unwrap_or(100), seed)
    };
    let mut out = io::BufWriter::new(io::stdout().lock());
    let mut write_err = None;
    let summary = run_scan(&plan, targets, s, cap, seed, |r| {
        if write_err.is_none() {
            if let Err(e) = serde_json::to_writer(&mut out, r)
                .map_err(io::Error::from)
                .and_then(|_| writeln!(out))
            {
                write_err = Some(e);
            }
        }
    });
    if let Some(e) = write_err {
        return Err(e.into());
    }
    out.flush()?;
    eprint!("{}", summary.render());
    Ok(if summary.failures() > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

pub fn selfdual(path: &Path) -> Result<ExitCode, CliError> {
    let code: LinearCode = read_json(path)?;
    match extend_to_self_dual(&code)? {
        SelfDualOutcome::SelfDual(sd) => {
            print_json(&CodeDocument {
                code: &sd,
                provenance: None,
            })?;
            eprintln!(
                "self-dual {} gram_rank={}",
                bracket(sd.n(), sd.k(), None),
                sd.gram_rank().rank
            );
        }
        SelfDualOutcome::NoSelfDual(reason) => {
            println!(
                "no self-dual code of length {} over GF({}): {reason}",
                code.n(),
                code.p()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn field_info(field: &FieldArgs) -> Result<ExitCode, CliError> {
    let ctx = field.ctx()?;
    let mut out = io::stdout().lock();
    let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    writeln!(out, "GF({}^{}) q={}", ctx.p(), ctx.m(), ctx.q())?;
    writeln!(out, "poly={}", join(ctx.poly()))?;
    writeln!(out, "alpha={}", join(&ctx.coeffs(ctx.alpha())))?;
    writeln!(out, "primitive_elements={}", ctx.primitive_elements().len())?;
    writeln!(out, "position,label,coeffs,trace")?;
    for (i, x) in ctx.elements().enumerate() {
        writeln!(
            out,
            "{i},{},\"{}\",{}",
            coeff_label(&ctx, x),
            join(&ctx.coeffs(x)),
            ctx.trace(x)
        )?;
    }
    Ok(ExitCode::SUCCESS)
}
