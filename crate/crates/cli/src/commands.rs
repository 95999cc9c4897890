use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use tricycle::cycles::{coextend, extend, product, verify_cycle, PerfectCycle, ProductResult};
use tricycle::homology::{gorenstein, gorenstein_criterion, min_proj_resolution, GorensteinDims};
use tricycle::module::{injective, projective, simple};
use tricycle::{Algebra, Field, FieldSpec, LeftModule, PrimeField, Rationals};

use crate::certificate::{Certificate, CycleRecord, ProductRecord};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::files::{algebra_out, bimodule_out, module_out, write_json, CycleFile, Loader};

#[derive(Debug, Parser)]
#[command(
    name = "tricycle",
    version,
    about = "Homological invariants of finite-dimensional algebras and exceptional cycles"
)]
pub struct Cli {
    /// Ground field: `rational` or `fp:<p>`.
    #[arg(long, global = true, default_value = "rational")]
    pub field: FieldSpec,
    /// Longest projective resolution computed before giving up.
    #[arg(long, global = true, default_value_t = 32)]
    pub cutoff: usize,
    /// Seed for randomized isomorphism tests.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random trials per isomorphism test.
    #[arg(long, global = true, default_value_t = 8)]
    pub trials: usize,
    /// Check only the first row of the Ext pattern.
    #[arg(long, global = true)]
    pub fast: bool,
    /// Directory for certificates and generated files.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// More output; repeat for more.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the algebra laws and report the dimension and Gorenstein dimensions.
    AlgebraCheck { algebra: PathBuf },
    /// Tabulate dim Ext^t(M, N) for t = 0..=tmax.
    Ext {
        m: PathBuf,
        n: PathBuf,
        #[arg(long, default_value_t = 4)]
        tmax: usize,
    },
    /// Verify a perfect exceptional cycle and write its certificate.
    VerifyCycle { cycle: PathBuf },
    /// Build the product of two cycles over a triangular algebra and verify it.
    Product {
        a: PathBuf,
        b: Option<PathBuf>,
        /// Product with (k, k) on the right.
        #[arg(long, conflicts_with = "coextend")]
        extend: bool,
        /// Product with (k, k) on the left.
        #[arg(long)]
        coextend: bool,
    },
    /// Write module files for indecomposable projectives, injectives or simples.
    Standard {
        algebra: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Vertex label; all vertices when omitted.
        #[arg(long)]
        vertex: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Projective,
    Injective,
    Simple,
}

/// What a run printed and how it should exit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments and runs one command; never exits the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let cfg = RunConfig {
        field: cli.field,
        cutoff: cli.cutoff,
        seed: cli.seed,
        trials: cli.trials,
        fast: cli.fast,
        out: cli.out,
        verbosity: cli.verbose,
    };
    let mut out = String::new();
    let result = cfg.validate().and_then(|cfg| match cfg.field {
        FieldSpec::Rationals => execute(Rationals, &cli.command, &cfg, &mut out),
        FieldSpec::Prime(p) => execute(PrimeField::new(p)?, &cli.command, &cfg, &mut out),
    });
    match result {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute<F: Field>(field: F, cmd: &Command, cfg: &RunConfig, out: &mut String) -> Result<i32, CliError> {
    let mut loader = Loader::new(field);
    match cmd {
        Command::AlgebraCheck { algebra } => algebra_check(&mut loader, algebra, cfg, out),
        Command::Ext { m, n, tmax } => ext(&mut loader, m, n, *tmax, cfg, out),
        Command::VerifyCycle { cycle } => verify(&mut loader, cycle, cfg, out),
        Command::Product { a, b, extend, coextend } => {
            let how = match (b, extend, coextend) {
                (Some(b), false, false) => How::Product(b),
                (None, true, false) => How::Extend,
                (None, false, true) => How::Coextend,
                _ => {
                    return Err(CliError::Usage(
                        "product takes two cycles, or one cycle with --extend or --coextend".into(),
                    ))
                }
            };
            product_cmd(&mut loader, a, how, cfg, out)
        }
        Command::Standard { algebra, kind, vertex } => {
            standard(&mut loader, algebra, *kind, vertex.as_deref(), cfg, out)
        }
    }
}

fn dims_text(g: &GorensteinDims) -> String {
    let d = |x: Option<usize>| x.map_or("infinite within cutoff".to_string(), |x| x.to_string());
    format!(
        "left {}, right {} ({})",
        d(g.left),
        d(g.right),
        if g.is_gorenstein() { "Gorenstein" } else { "not Gorenstein" }
    )
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn algebra_check<F: Field>(
    loader: &mut Loader<F>,
    path: &Path,
    cfg: &RunConfig,
    out: &mut String,
) -> Result<i32, CliError> {
    let alg = loader.algebra(path)?;
    alg.check_laws()?;
    writeln!(out, "dim: {}", alg.dim()).unwrap();
    writeln!(out, "associativity: ok").unwrap();
    writeln!(out, "unit: ok").unwrap();
    match alg.basic() {
        Some(b) => {
            writeln!(out, "vertices: {}", b.vertex_count()).unwrap();
            let g = gorenstein(&alg, cfg.cutoff)?;
            writeln!(out, "gorenstein: {}", dims_text(&g)).unwrap();
        }
        None => writeln!(out, "gorenstein: unknown (no idempotents given)").unwrap(),
    }
    Ok(0)
}

fn ext<F: Field>(
    loader: &mut Loader<F>,
    m: &Path,
    n: &Path,
    tmax: usize,
    cfg: &RunConfig,
    out: &mut String,
) -> Result<i32, CliError> {
    let m = loader.module(m)?;
    let n = loader.module(n)?;
    if !m.same_algebra(&n) {
        return Err(tricycle::Error::AlgebraMismatch("Ext needs modules over one algebra".into()).into());
    }
    let res = min_proj_resolution(&m, cfg.cutoff)?;
    let known = (0..=tmax).take_while(|&t| res.knows_differential(t + 1)).count();
    let dims = if known > 0 { res.ext_dims(&n, known - 1)? } else { vec![] };
    for t in 0..=tmax {
        match dims.get(t) {
            Some(d) => writeln!(out, "Ext^{t}\t{d}").unwrap(),
            None => writeln!(out, "Ext^{t}\t∞?").unwrap(),
        }
    }
    Ok(0)
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "cycle".into())
}

fn create_out(cfg: &RunConfig) -> Result<(), CliError> {
    fs::create_dir_all(&cfg.out).map_err(|source| CliError::Io {
        path: cfg.out.clone(),
        source,
    })
}

fn report_cycle(record: &CycleRecord, out: &mut String, verbosity: u8) {
    if let Some(g) = &record.gorenstein {
        let d = |x: Option<usize>| x.map_or("inf".to_string(), |x| x.to_string());
        writeln!(out, "gorenstein: left {}, right {}", d(g.left), d(g.right)).unwrap();
    }
    if record.passed() {
        writeln!(out, "degrees: {}", tuple(&record.degrees)).unwrap();
        if verbosity > 0 {
            for (i, row) in record.ext_table.iter().enumerate() {
                for (j, dims) in row.iter().enumerate() {
                    writeln!(out, "ext(E_{}, E_{}): {}", i + 1, j + 1, tuple(dims)).unwrap();
                }
            }
        }
    }
}

fn verify<F: Field>(
    loader: &mut Loader<F>,
    path: &Path,
    cfg: &RunConfig,
    out: &mut String,
) -> Result<i32, CliError> {
    let cycle = loader.cycle(path)?;
    let verdict = verify_cycle(&cycle, &cfg.verify_options())?;
    let mut record = CycleRecord::new(&verdict, cycle.len(), cycle.algebra().dim());
    if record.gorenstein.is_none() {
        // the failure came after the Gorenstein test passed
        record.gorenstein = Some(gorenstein(cycle.algebra(), cfg.cutoff)?.into());
    }
    writeln!(
        out,
        "cycle: {} terms over an algebra of dimension {}",
        cycle.len(),
        cycle.algebra().dim()
    )
    .unwrap();
    report_cycle(&record, out, cfg.verbosity);
    let cert = Certificate::new("verify-cycle", cfg.recorded(), loader.digests().to_vec(), None, record);
    create_out(cfg)?;
    let target = cfg.out.join(format!("{}.certificate.json", stem(path)));
    write_json(&target, &cert)?;
    match &cert.cycle.failure {
        None => writeln!(out, "verdict: PASS").unwrap(),
        Some(why) => writeln!(out, "verdict: FAIL: {why}").unwrap(),
    }
    writeln!(out, "certificate: {}", target.display()).unwrap();
    Ok(if cert.passed() { 0 } else { 2 })
}

enum How<'a> {
    Product(&'a Path),
    Extend,
    Coextend,
}

fn product_cmd<F: Field>(
    loader: &mut Loader<F>,
    a: &Path,
    how: How<'_>,
    cfg: &RunConfig,
    out: &mut String,
) -> Result<i32, CliError> {
    let opts = cfg.verify_options();
    let e = loader.cycle(a)?;
    let (construction, p) = match how {
        How::Product(b) => {
            let f = loader.cycle(b)?;
            ("product", product(&e, &f, &opts)?)
        }
        How::Extend => ("extension", extend(&e, &opts)?),
        How::Coextend => ("coextension", coextend(&e, &opts)?),
    };
    let lam = p.lambda().clone();
    writeln!(
        out,
        "lambda: dimension {} = {} + {} + {}",
        lam.dim(),
        p.triangular.embedding.a.len(),
        p.triangular.embedding.n.len(),
        p.triangular.embedding.b.len()
    )
    .unwrap();
    let direct = gorenstein(&lam, cfg.cutoff)?;
    let criterion = gorenstein_criterion(&p.triangular, cfg.cutoff)?;
    writeln!(out, "gorenstein (direct): {}", dims_text(&direct)).unwrap();
    writeln!(
        out,
        "gorenstein (criterion): {}",
        if criterion.holds() { "holds" } else { "fails" }
    )
    .unwrap();
    writeln!(out, "expected degrees: {}", tuple(&p.expected_degrees)).unwrap();

    let cycle = p.cycle();
    let verdict = verify_cycle(&cycle, &opts)?;
    let mut record = CycleRecord::new(&verdict, cycle.len(), lam.dim());
    if record.gorenstein.is_none() {
        record.gorenstein = Some(direct.into());
    }
    report_cycle(&record, out, cfg.verbosity);
    let cert = Certificate::new(
        "product",
        cfg.recorded(),
        loader.digests().to_vec(),
        Some(ProductRecord::new(construction, &p, direct, criterion)),
        record,
    );
    create_out(cfg)?;
    write_product_files(&p, &cfg.out)?;
    write_json(&cfg.out.join("certificate.json"), &cert)?;
    if let Some(why) = &cert.cycle.failure {
        writeln!(out, "failure: {why}").unwrap();
    }
    writeln!(
        out,
        "exceptional {}-cycle: {}",
        cycle.len(),
        cert.verdict
    )
    .unwrap();
    Ok(if cert.passed() { 0 } else { 2 })
}

/// `a.json`, `b.json`, `bimodule.json`, `lambda.json`, one file per term
/// and `cycle.json`.
fn write_product_files<F: Field>(p: &ProductResult<F>, dir: &Path) -> Result<(), CliError> {
    let tri = &p.triangular;
    write_json(&dir.join("a.json"), &algebra_out(&tri.a))?;
    write_json(&dir.join("b.json"), &algebra_out(&tri.b))?;
    write_json(&dir.join("bimodule.json"), &bimodule_out(&tri.n, "a.json", "b.json"))?;
    write_json(&dir.join("lambda.json"), &algebra_out(&tri.lambda))?;
    let mut names = Vec::new();
    for (k, m) in p.sequence.iter().enumerate() {
        let name = format!("term_{}.json", k + 1);
        write_json(&dir.join(&name), &module_out(m, "lambda.json", false))?;
        names.push(name);
    }
    write_json(
        &dir.join("cycle.json"),
        &CycleFile {
            algebra: "lambda.json".into(),
            modules: names,
        },
    )
}

fn standard<F: Field>(
    loader: &mut Loader<F>,
    path: &Path,
    kind: Kind,
    vertex: Option<&str>,
    cfg: &RunConfig,
    out: &mut String,
) -> Result<i32, CliError> {
    let alg: Arc<Algebra<F>> = loader.algebra(path)?;
    let basic = alg.require_basic("standard modules")?;
    let vertices: Vec<usize> = match vertex {
        Some(v) => vec![basic
            .vertex_index(v)
            .ok_or_else(|| CliError::Usage(format!("no vertex `{v}`")))?],
        None => (0..basic.vertex_count()).collect(),
    };
    create_out(cfg)?;
    let reference = algebra_reference(path, &cfg.out)?;
    type Build<F> = fn(&Arc<Algebra<F>>, usize) -> tricycle::Result<LeftModule<F>>;
    let (prefix, build): (&str, Build<F>) = match kind {
        Kind::Projective => ("P", projective),
        Kind::Injective => ("I", injective),
        Kind::Simple => ("S", simple),
    };
    for v in vertices {
        let m = build(&alg, v)?;
        let label = basic.vertex_labels()[v].replace('\'', "p");
        let target = cfg.out.join(format!("{}_{prefix}{label}.json", stem(path)));
        write_json(&target, &module_out(&m, &reference, alg.presentation().is_some()))?;
        writeln!(out, "{}", target.display()).unwrap();
    }
    Ok(0)
}

/// The algebra's file name when the output sits next to it, otherwise its
/// absolute path.
fn algebra_reference(algebra: &Path, out: &Path) -> Result<String, CliError> {
    let canon = |p: &Path| {
        fs::canonicalize(p).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        })
    };
    let a = canon(algebra)?;
    let o = canon(out)?;
    Ok(if a.parent() == Some(o.as_path()) {
        a.file_name().unwrap().to_string_lossy().into_owned()
    } else {
        a.to_string_lossy().into_owned()
    })
}

/// Loads a cycle file over `field`; used by tests and benches.
pub fn load_cycle<F: Field>(field: F, path: &Path) -> Result<PerfectCycle<F>, CliError> {
    Loader::new(field).cycle(path)
}
