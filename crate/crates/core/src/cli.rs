//! Command-line front end of the `quipu` binary.
//!
//! Exit codes: 0 success, 1 mathematical counterexample (a `FAIL` summary),
//! 2 usage or parse error, 3 I/O error.

use std::fmt::Write as _;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{
    corollary33_tree, eval_f, eval_g, eval_h, f_at_threshold, g_at_threshold, h_at_threshold,
};
use crate::graph::{classify_shape, diameter, encode_graph6, ingest_graph6, Graph, GraphSpec};
use crate::search::{
    find_minimizer, minimizer_report, verify_theorem_1_1, verify_theorem_1_2, verify_theorem_1_3,
    woo_neumaier_spotcheck, MinimizerResult, VerificationReport,
};
use crate::spectral::{
    char_poly, is_below_threshold_with, power_iteration_bounds, rho_limit, rho_mk, spectral_radius,
    Certificate, RadiusBracket, ThresholdVerdict, DEFAULT_TOL, THRESHOLD_F64,
};
use crate::transfer::LambdaPoint;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

const MAX_TOL: f64 = 1e-4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub tol: f64,
    /// Sturm certificates for threshold verdicts; off means float margins.
    pub exact: bool,
    pub workers: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tol: DEFAULT_TOL,
            exact: true,
            workers: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            format: Format::Text,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol <= MAX_TOL) {
            return Err(Error::Config(format!(
                "tolerance must lie in (0, {MAX_TOL:e}], got {}",
                self.tol
            )));
        }
        if self.workers == 0 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        Ok(())
    }
}

/// Keys accepted in a TOML config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    tol: Option<f64>,
    exact: Option<bool>,
    workers: Option<usize>,
    format: Option<Format>,
    output: Option<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(
    name = "quipu",
    version,
    about = "Spectral radii and diameter scans for quipu graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalOpts {
    /// Bracket width for spectral radii, in (0, 1e-4].
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Float threshold verdicts instead of exact Sturm certificates.
    #[arg(long, global = true)]
    pub numeric: bool,
    /// Worker threads for scans.
    #[arg(long, global = true, env = "QUIPU_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Report file; the summary line then goes to stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// TOML file with the keys tol, exact, workers, format, output; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certified spectral radius and threshold verdict of one graph.
    Rho {
        /// `open K / M`, `closed K / M`, `dagger T`, `cycle N`, `path N` or `g6:LINE`.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Order, size, diameter, shape class and graph6 encoding.
    Build {
        /// `open K / M`, `closed K / M`, `dagger T`, `cycle N`, `path N` or `g6:LINE`.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Exact characteristic polynomial.
    Charpoly {
        /// `open K / M`, `closed K / M`, `dagger T`, `cycle N`, `path N` or `g6:LINE`.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Run a theorem scan and report counterexamples.
    Verify {
        #[command(subcommand)]
        theorem: VerifyCmd,
    },
    /// Boundary tables as CSV.
    Table {
        #[command(subcommand)]
        family: TableCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Open quipus below the threshold satisfy 3D >= 2n-4.
    #[command(name = "t1.1")]
    T11 {
        #[arg(long, default_value_t = 20)]
        nmax: usize,
    },
    /// Closed quipus below the threshold satisfy n/3 < D <= (2n-4)/3 up to two families.
    #[command(name = "t1.2")]
    T12 {
        #[arg(long, default_value_t = 20)]
        nmax: usize,
    },
    /// Minimizers of the spectral radius at fixed order and diameter.
    #[command(name = "t1.3")]
    T13 {
        /// Single order; needs --d.
        #[arg(long, requires = "d")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        d: Option<usize>,
        #[arg(long, default_value_t = 13)]
        nmin: usize,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
    },
    /// Every connected graph strictly between sqrt(2+sqrt5) and the threshold is in the trichotomy.
    #[command(name = "woo-neumaier")]
    WooNeumaier {
        #[arg(long)]
        g6: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum TableCmd {
    /// rho_{m,k} with the exact verdict on a tree attaining it.
    #[command(name = "rho_mk")]
    RhoMk {
        #[arg(long, default_value = "1..5")]
        m: IntRange,
        #[arg(long, default_value = "1..14")]
        k: IntRange,
    },
    /// rho_m, the limit of rho_{m,k} as k grows.
    #[command(name = "rho_limit")]
    RhoLimit {
        #[arg(long, default_value = "1..5")]
        m: IntRange,
    },
    /// The two-junction sign functions f, g, h, exact at the threshold.
    #[command(name = "f_sign")]
    FSign {
        #[arg(long, default_value = "1..3")]
        m: IntRange,
        #[arg(long, default_value = "1..3")]
        mp: IntRange,
        #[arg(long, default_value = "1..6")]
        k: IntRange,
        /// Exact rational values at the threshold (the default).
        #[arg(long)]
        at_threshold: bool,
        /// Float values at this lambda > 2 instead.
        #[arg(long, conflicts_with = "at_threshold")]
        lambda: Option<f64>,
    },
}

/// Inclusive integer range written `a..b`, `a..=b` or `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: usize,
    pub hi: usize,
}

impl IntRange {
    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{t}` is not a non-negative integer"))
        };
        match s.split_once("..") {
            Some((a, b)) => Ok(IntRange {
                lo: num(a)?,
                hi: num(b.strip_prefix('=').unwrap_or(b))?,
            }),
            None => {
                let v = num(s)?;
                Ok(IntRange { lo: v, hi: v })
            }
        }
    }
}

/// Merges flags, environment and the optional config file; flags win.
pub fn resolve_config(opts: &GlobalOpts) -> Result<RunConfig> {
    let file = match &opts.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            toml::from_str::<FileConfig>(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };
    let base = RunConfig::default();
    let cfg = RunConfig {
        tol: opts.tol.or(file.tol).unwrap_or(base.tol),
        exact: if opts.numeric {
            false
        } else {
            file.exact.unwrap_or(base.exact)
        },
        workers: opts.workers.or(file.workers).unwrap_or(base.workers),
        format: opts.format.or(file.format).unwrap_or(base.format),
        output: opts.output.clone().or(file.output),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::Verification(_) => EXIT_COUNTEREXAMPLE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let outcome = resolve_config(&cli.global).and_then(|cfg| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
        // buffered so the pool closure stays Send
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = pool.install(|| dispatch(&cli.command, &cfg, &mut o, &mut e));
        out.write_all(&o)?;
        err.write_all(&e)?;
        code
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(
    cmd: &Command,
    cfg: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    match cmd {
        Command::Rho { spec } => cmd_rho(&parse_graph(spec)?, cfg, out),
        Command::Build { spec } => cmd_build(&parse_graph(spec)?, cfg, out),
        Command::Charpoly { spec } => cmd_charpoly(&parse_graph(spec)?, cfg, out),
        Command::Verify { theorem } => cmd_verify(theorem, cfg, out, err),
        Command::Table { family } => cmd_table(family, cfg, out),
    }
}

fn parse_graph(words: &[String]) -> Result<(GraphSpec, Graph)> {
    let spec: GraphSpec = words.join(" ").parse()?;
    let g = spec.build()?;
    Ok((spec, g))
}

/// Writes `text` to the configured output file, or to `out`.
fn emit(cfg: &RunConfig, out: &mut dyn Write, text: &str) -> Result<()> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::SturmExact => "sturm_exact".into(),
        Certificate::NumericMargin(m) => format!("numeric_margin {m:e}"),
    }
}

#[derive(Serialize)]
struct RhoOutput<'a> {
    spec: String,
    n: usize,
    #[serde(rename = "D")]
    d: Option<usize>,
    rho: &'a RadiusBracket,
    verdict: &'a ThresholdVerdict,
}

fn radius(g: &Graph, cfg: &RunConfig) -> Result<RadiusBracket> {
    if cfg.exact {
        spectral_radius(g, cfg.tol)
    } else {
        power_iteration_bounds(g, cfg.tol, 200_000)
    }
}

fn cmd_rho((spec, g): &(GraphSpec, Graph), cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let rho = radius(g, cfg)?;
    let verdict = is_below_threshold_with(g, cfg.exact);
    let d = diameter(g).ok();
    let rec = RhoOutput {
        spec: spec.to_string(),
        n: g.n(),
        d,
        rho: &rho,
        verdict: &verdict,
    };
    let text = match cfg.format {
        Format::Json => {
            serde_json::to_string_pretty(&rec).map_err(|e| Error::Config(e.to_string()))? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("spec,n,D,rho_lo,rho_hi,below_threshold,certificate\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                csv_field(&rec.spec),
                g.n(),
                d.map(|x| x.to_string()).unwrap_or_default(),
                rho.lo,
                rho.hi,
                verdict.below,
                certificate_text(&verdict.certificate)
            );
            s
        }
        Format::Text => format!(
            "{}\nn = {}, D = {}\nrho in [{}, {}] ({:?})\nbelow threshold: {} ({})\n",
            rec.spec,
            g.n(),
            d.map(|x| x.to_string()).unwrap_or_else(|| "-".into()),
            rho.lo,
            rho.hi,
            rho.evidence,
            verdict.below,
            certificate_text(&verdict.certificate)
        ),
    };
    emit(cfg, out, &text)?;
    Ok(EXIT_OK)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Serialize)]
struct BuildOutput {
    spec: String,
    n: usize,
    edges: usize,
    #[serde(rename = "D")]
    d: Option<usize>,
    shape: String,
    graph6: String,
    edge_list: Vec<(usize, usize)>,
}

fn cmd_build((spec, g): &(GraphSpec, Graph), cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let rec = BuildOutput {
        spec: spec.to_string(),
        n: g.n(),
        edges: g.edge_count(),
        d: diameter(g).ok(),
        shape: classify_shape(g).tag().into(),
        graph6: encode_graph6(g),
        edge_list: g.edges(),
    };
    let text = match cfg.format {
        Format::Json => {
            serde_json::to_string_pretty(&rec).map_err(|e| Error::Config(e.to_string()))? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("u,v\n");
            for (u, v) in &rec.edge_list {
                let _ = writeln!(s, "{u},{v}");
            }
            s
        }
        Format::Text => {
            let edges: Vec<String> = rec
                .edge_list
                .iter()
                .map(|(u, v)| format!("{u}-{v}"))
                .collect();
            format!(
                "{}\nn = {}, |E| = {}, D = {}\nshape: {}\ngraph6: {}\nedges: {}\n",
                rec.spec,
                rec.n,
                rec.edges,
                rec.d.map(|x| x.to_string()).unwrap_or_else(|| "-".into()),
                rec.shape,
                rec.graph6,
                edges.join(" ")
            )
        }
    };
    emit(cfg, out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_charpoly(
    (spec, g): &(GraphSpec, Graph),
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Result<i32> {
    let p = char_poly(g);
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    let text = match cfg.format {
        Format::Json => {
            let v =
                serde_json::json!({ "spec": spec.to_string(), "coefficients_low_to_high": coeffs });
            serde_json::to_string_pretty(&v).map_err(|e| Error::Config(e.to_string()))? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("power,coefficient\n");
            for (i, c) in coeffs.iter().enumerate() {
                let _ = writeln!(s, "{i},{c}");
            }
            s
        }
        Format::Text => format!("{p}\n"),
    };
    emit(cfg, out, &text)?;
    Ok(EXIT_OK)
}

fn render_report(report: &VerificationReport, format: Format) -> Result<String> {
    let mut buf = Vec::new();
    match format {
        Format::Json => {
            report.write_json(&mut buf)?;
            buf.push(b'\n');
        }
        Format::Csv => report.write_csv(&mut buf)?,
        Format::Text => {
            for note in &report.notes {
                let _ = writeln!(buf, "note: {note}");
            }
            for row in report.rows() {
                let _ = writeln!(
                    buf,
                    "{:?} n={} D={} rho=[{}, {}] {} {} {}",
                    row.role, row.n, row.d, row.rho_lo, row.rho_hi, row.family, row.spec, row.note
                );
            }
        }
    }
    String::from_utf8(buf).map_err(|e| Error::Config(e.to_string()))
}

fn read_graph6(path: &Path) -> Result<Vec<Graph>> {
    let file = std::fs::File::open(path)?;
    ingest_graph6(BufReader::new(file))
}

fn cmd_verify(
    cmd: &VerifyCmd,
    cfg: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let mut extra = String::new();
    let report = match cmd {
        VerifyCmd::T11 { nmax } => verify_theorem_1_1(*nmax)?,
        VerifyCmd::T12 { nmax } => verify_theorem_1_2(*nmax)?,
        VerifyCmd::T13 {
            n: Some(n),
            d: Some(d),
            ..
        } => {
            let started = Instant::now();
            let result = find_minimizer(*n, *d)?;
            extra = winner_text(&result);
            minimizer_report(
                std::slice::from_ref(&result),
                format!("n = {n}, D = {d}"),
                started,
            )?
        }
        VerifyCmd::T13 { nmin, nmax, .. } => verify_theorem_1_3(*nmin, *nmax)?.0,
        VerifyCmd::WooNeumaier { g6 } => woo_neumaier_spotcheck(&read_graph6(g6)?)?,
    };
    let body = render_report(&report, cfg.format)?;
    let summary = format!("{extra}{}\n{}\n", report.summary_line(), report.footer());
    match (&cfg.output, cfg.format) {
        (Some(path), _) => {
            std::fs::write(path, body)?;
            out.write_all(summary.as_bytes())?;
        }
        // keep machine-readable stdout clean
        (None, Format::Json | Format::Csv) => {
            out.write_all(body.as_bytes())?;
            err.write_all(summary.as_bytes())?;
        }
        (None, Format::Text) => {
            out.write_all(body.as_bytes())?;
            out.write_all(summary.as_bytes())?;
        }
    }
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

fn winner_text(r: &MinimizerResult) -> String {
    let mut s = format!("winner {}", r.argmin.join(" | "));
    if let Some(p) = &r.predicted {
        let _ = write!(s, " (predicted {p})");
    }
    if !r.unique {
        let _ = write!(s, ", tie of {}", r.argmin.len());
    }
    s + "\n"
}

fn cmd_table(cmd: &TableCmd, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let mut s = String::new();
    match cmd {
        TableCmd::RhoMk { m, k } => {
            s.push_str("m,k,rho_lo,rho_hi,below_threshold,certificate\n");
            for m in m.iter() {
                for k in k.iter() {
                    if m == 0 || k == 0 {
                        return Err(Error::InvalidSpec(format!(
                            "rho_mk needs m, k >= 1, got ({m},{k})"
                        )));
                    }
                    let rho = rho_mk(m, k, cfg.tol)?;
                    let verdict =
                        is_below_threshold_with(&corollary33_tree(m, k)?.build(), cfg.exact);
                    let _ = writeln!(
                        s,
                        "{m},{k},{},{},{},{}",
                        rho.lo,
                        rho.hi,
                        verdict.below,
                        certificate_text(&verdict.certificate)
                    );
                }
            }
        }
        TableCmd::RhoLimit { m } => {
            s.push_str("m,rho_lo,rho_hi,below_threshold\n");
            for m in m.iter() {
                let rho = rho_limit(m, cfg.tol)?;
                let _ = writeln!(s, "{m},{},{},{}", rho.lo, rho.hi, rho.hi < THRESHOLD_F64);
            }
        }
        TableCmd::FSign {
            m, mp, k, lambda, ..
        } => {
            s.push_str("m,mp,k,f,g,h\n");
            let pt = lambda.map(LambdaPoint::<f64>::from_f64).transpose()?;
            for m in m.iter() {
                for mp in mp.iter() {
                    for k in k.iter() {
                        match &pt {
                            Some(pt) => {
                                let _ = writeln!(
                                    s,
                                    "{m},{mp},{k},{:e},{:e},{:e}",
                                    eval_f(m, mp, k, pt),
                                    eval_g(m, mp, k, pt),
                                    eval_h(m, mp, k, pt)
                                );
                            }
                            None => {
                                let _ = writeln!(
                                    s,
                                    "{m},{mp},{k},{},{},{}",
                                    f_at_threshold(m, mp, k),
                                    g_at_threshold(m, mp, k),
                                    h_at_threshold(m, mp, k)
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    emit(cfg, out, &s)?;
    Ok(EXIT_OK)
}

/// Entry point of the binary.
pub fn main_with_stdio() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
