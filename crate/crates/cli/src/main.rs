use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use spectrachrome::bounds::{
    certify_with, run_method, BoundConfig, BoundReport, Certificate, Method, Prepared,
};
use spectrachrome::exact::DEFAULT_BUDGET;
use spectrachrome::graph::{parse_graph6, parse_graph_text, FamilySpec, Graph};
use spectrachrome::quantum::{
    parse_projectors_json, verify_quantum_coloring, Verdict, DEFAULT_QTOL,
};
use spectrachrome::spectral::{eigendecompose_with_tol, DEFAULT_EIG_TOL};
use spectrachrome::{Error, Result};

/// Eigenvalue lower bounds and certification for quantum distance-k
/// chromatic numbers.
#[derive(Parser, Debug)]
#[command(name = "spectrachrome", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distinct adjacency eigenvalues with multiplicities.
    Spectrum {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opts: Opts,
    },
    /// Optimized lower bounds on the quantum distance-k chromatic number.
    Bound {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opts: Opts,
    },
    /// Bounds plus exact chi_k; certified when they meet.
    Certify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        opts: Opts,
    },
    /// Check a projector family against the quantum k-distance coloring rules.
    VerifyQc {
        #[command(flatten)]
        source: Source,
        /// JSON array of {v, h, matrix: [[re, im], ...]} entries.
        #[arg(long, value_name = "PATH")]
        projectors: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Certify every graph6 line of a file.
    Batch {
        /// File with one graph6 string per line.
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in family, e.g. cycle:6, petersen, generalized_petersen:8,3.
    #[arg(long, value_name = "SPEC")]
    family: Option<FamilySpec>,
    /// graph6 or edge-list file.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Opts {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    method: Vec<MethodArg>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Node budget of the exact coloring search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = DEFAULT_EIG_TOL)]
    eig_tol: f64,
    /// Simplex feasibility tolerance.
    #[arg(long)]
    lp_tol: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_QTOL)]
    qtol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Inertial1,
    Inertial2,
    Ratio,
    Inertia1q,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

impl Opts {
    fn k(&self) -> usize {
        self.k as usize
    }

    fn methods(&self) -> Vec<Method> {
        if self.method.contains(&MethodArg::All) {
            return Method::ALL.to_vec();
        }
        let mut out: Vec<Method> = self
            .method
            .iter()
            .map(|m| match m {
                MethodArg::Inertial1 => Method::Inertial1,
                MethodArg::Inertial2 => Method::Inertial2,
                MethodArg::Ratio => Method::Ratio,
                MethodArg::Inertia1q | MethodArg::All => Method::InertiaK1,
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn config(&self) -> Result<BoundConfig> {
        let mut cfg = BoundConfig::default();
        if !(self.eig_tol > 0.0 && self.eig_tol.is_finite()) {
            return Err(Error::Input("--eig-tol must be positive".into()));
        }
        cfg.eig_tol = self.eig_tol;
        if let Some(t) = self.lp_tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Input("--lp-tol must be positive".into()));
            }
            cfg.lp.feas_tol = t;
        }
        Ok(cfg)
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load(source: &Source) -> Result<Graph> {
    match (&source.family, &source.input) {
        (Some(spec), _) => spec.build(),
        (None, Some(path)) => {
            Ok(parse_graph_text(&read_file(path)?)?.with_name(path.display().to_string()))
        }
        (None, None) => Err(Error::Input(
            "one of --family or --input is required".into(),
        )),
    }
}

fn emit<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("output serializes")
    );
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or("-".into(), |v| format!("{v:.6}"))
}

fn report_table(reports: &[BoundReport]) -> String {
    let mut s = format!(
        "{:<10} {:>10} {:>12} {:>8}  witness\n",
        "method", "applicable", "raw", "bound"
    );
    for r in reports {
        let witness = r
            .witness_poly
            .as_ref()
            .map_or("-".into(), |p| format!("{:?}", p.coeffs()));
        let _ = writeln!(
            s,
            "{:<10} {:>10} {:>12} {:>8}  {}",
            r.method.cli_name(),
            r.applicable,
            fmt_opt(r.raw_value),
            r.integer_bound.map_or("-".into(), |b| b.to_string()),
            witness
        );
        for note in &r.notes {
            let _ = writeln!(s, "{:<10} {note}", "");
        }
    }
    s
}

fn certificate_table(c: &Certificate) -> String {
    let mut s = report_table(&c.reports);
    let exact = c
        .chi_k_exact
        .map_or(format!("<= {}", c.chi_k_upper), |x| x.to_string());
    let _ = writeln!(s, "\nchi_{} = {exact}", c.k);
    let _ = writeln!(
        s,
        "best lower bound = {}",
        c.best_bound.as_ref().map_or(1, BoundReport::value)
    );
    let _ = writeln!(s, "certified = {}", c.certified);
    if let Some(q) = c.quantum_value {
        let _ = writeln!(s, "chi_{}q = {q}", c.k);
    }
    for note in &c.notes {
        let _ = writeln!(s, "{note}");
    }
    s
}

fn verdict_table(v: &Verdict) -> String {
    let mut s = format!("pass = {}\nmax residual = {:.3e}\n", v.pass, v.max_residual);
    for x in &v.violations {
        let _ = writeln!(
            s,
            "{:?} v={} w={} h={} residual={:.3e}",
            x.kind,
            x.v,
            x.w.map_or("-".into(), |w| w.to_string()),
            x.h.map_or("-".into(), |h| h.to_string()),
            x.residual
        );
    }
    s
}

fn spectrum(source: &Source, opts: &Opts) -> Result<()> {
    let g = load(source)?;
    let spec = eigendecompose_with_tol(&g, opts.eig_tol)?;
    match opts.format {
        Format::Json => {
            let mut v = json!({ "graph": g.name(), "n": g.n() });
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, spec.to_json_value()) {
                dst.extend(src);
            }
            emit(&v);
        }
        Format::Table => {
            println!("{:>20} {:>5}", "eigenvalue", "mult");
            for (t, m) in spec.distinct.iter().zip(&spec.mult) {
                println!("{t:>20.12} {m:>5}");
            }
        }
    }
    Ok(())
}

fn bound(source: &Source, opts: &Opts) -> Result<()> {
    let g = load(source)?;
    let cfg = opts.config()?;
    let prep = Prepared::new(&g, opts.k(), &cfg)?;
    let reports = opts
        .methods()
        .into_iter()
        .map(|m| run_method(&prep, m, &cfg))
        .collect::<Result<Vec<_>>>()?;
    match opts.format {
        Format::Json => emit(&reports),
        Format::Table => print!("{}", report_table(&reports)),
    }
    Ok(())
}

fn certify(source: &Source, opts: &Opts) -> Result<()> {
    let g = load(source)?;
    let c = certify_with(&g, opts.k(), &opts.methods(), &opts.config()?, opts.budget)?;
    match opts.format {
        Format::Json => emit(&c),
        Format::Table => print!("{}", certificate_table(&c)),
    }
    Ok(())
}

fn verify_qc(source: &Source, projectors: &Path, opts: &Opts) -> Result<()> {
    let g = load(source)?;
    if !(opts.qtol > 0.0 && opts.qtol.is_finite()) {
        return Err(Error::Input("--qtol must be positive".into()));
    }
    let qc = parse_projectors_json(&read_file(projectors)?)?;
    let verdict = verify_quantum_coloring(&qc, &g, opts.k(), opts.qtol)?;
    match opts.format {
        Format::Json => emit(&verdict),
        Format::Table => print!("{}", verdict_table(&verdict)),
    }
    Ok(())
}

#[derive(Serialize)]
struct BatchRow {
    line: usize,
    graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<BatchError>,
}

#[derive(Serialize)]
struct BatchError {
    code: u8,
    message: String,
}

/// Returns the worst exit code among the rows.
fn batch(input: &Path, opts: &Opts) -> Result<u8> {
    let text = read_file(input)?;
    let cfg = opts.config()?;
    let methods = opts.methods();
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let rows: Vec<BatchRow> = lines
        .par_iter()
        .map(|&(line, g6)| {
            let res = parse_graph6(g6).and_then(|g| {
                certify_with(&g.with_name(g6), opts.k(), &methods, &cfg, opts.budget)
            });
            match res {
                Ok(c) => BatchRow {
                    line,
                    graph6: g6.to_string(),
                    certificate: Some(c),
                    error: None,
                },
                Err(e) => BatchRow {
                    line,
                    graph6: g6.to_string(),
                    certificate: None,
                    error: Some(BatchError {
                        code: e.exit_code(),
                        message: e.to_string(),
                    }),
                },
            }
        })
        .collect();
    let code = rows
        .iter()
        .filter_map(|r| r.error.as_ref().map(|e| e.code))
        .max()
        .unwrap_or(0);
    match opts.format {
        Format::Json => emit(&rows),
        Format::Table => {
            println!(
                "{:>5} {:<24} {:>6} {:>6} {:>9}",
                "line", "graph6", "bound", "chi_k", "certified"
            );
            for r in &rows {
                match (&r.certificate, &r.error) {
                    (Some(c), _) => println!(
                        "{:>5} {:<24} {:>6} {:>6} {:>9}",
                        r.line,
                        r.graph6,
                        c.best_bound.as_ref().map_or(1, BoundReport::value),
                        c.chi_k_exact.map_or("?".into(), |x| x.to_string()),
                        c.certified
                    ),
                    (None, Some(e)) => {
                        println!("{:>5} {:<24} error: {}", r.line, r.graph6, e.message)
                    }
                    (None, None) => unreachable!(),
                }
            }
        }
    }
    Ok(code)
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("SPECTRACHROME_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Error::Input(format!(
            "SPECTRACHROME_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Resource(e.to_string()))
}

fn run(cli: Cli) -> Result<u8> {
    configure_threads()?;
    match &cli.command {
        Command::Spectrum { source, opts } => spectrum(source, opts)?,
        Command::Bound { source, opts } => bound(source, opts)?,
        Command::Certify { source, opts } => certify(source, opts)?,
        Command::VerifyQc {
            source,
            projectors,
            opts,
        } => verify_qc(source, projectors, opts)?,
        Command::Batch { input, opts } => return batch(input, opts),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
