//! Command-line parsing and the subcommands.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use quadual::compass::{construct, verify_compass};
use quadual::sample::QuadSampler;
use quadual::theorems::{verify_all, TheoremReport};
use quadual::{congruent, dual_quadrangle_with, sweep, ComplementMethod, FamilySpec, MarkedQuadrangle, Tolerance};

use crate::document::{parse_document, DocumentError, QuadrangleDocument};
use crate::render::{render_svg, RenderSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Degenerate(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Document(_) | CliError::Input(_) | CliError::Io { .. } => EXIT_INPUT,
            CliError::Degenerate(_) => EXIT_DEGENERATE,
        }
    }
}

impl From<quadual::Error> for CliError {
    fn from(e: quadual::Error) -> Self {
        use quadual::Error::*;
        match e {
            DegenerateInput { .. }
            | DegenerateDual { .. }
            | DegenerateAtT { .. }
            | ConstructionFailure(_)
            | NoIntersection
            | CoincidentCenters => CliError::Degenerate(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "quadual", version, about = "Duals of plane quadrangles")]
pub struct Cli {
    /// Residual tolerance for theorem checks and congruence.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Degeneracy threshold for collinear successive edges.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_EPS)]
    pub eps: f64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input document; stdin when omitted.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the shape class.
    Classify(Input),
    /// Print the dual as a document; side lengths and diagonals go to stderr.
    Dual {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check every applicable theorem and print the residuals.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Check N seeded random quadrangles instead of an input document.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ruler-and-compass dual of a convex quadrangle.
    Compass {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Classify a straight-line family from the input to `--end`.
    Sweep {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        end: PathBuf,
        #[arg(long, default_value_t = 64)]
        steps: usize,
    },
    /// Draw the quadrangle and its dual side by side as SVG.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 400)]
        height: u32,
        #[arg(long)]
        no_labels: bool,
        #[arg(long)]
        diagonals: bool,
        #[arg(long, default_value_t = 1.0)]
        stroke: f64,
    },
}

/// What a command produced: text for stdout and stderr plus an exit code.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn read_text(input: &Option<PathBuf>) -> Result<String, CliError> {
    match input {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            Ok(s)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(input: &Option<PathBuf>, eps: Tolerance) -> Result<QuadrangleDocument, CliError> {
    let doc = parse_document(&read_text(input)?)?;
    // re-check against a custom threshold
    let quadrangle = MarkedQuadrangle::with_tolerance(doc.quadrangle.vertices(), eps).map_err(|e| DocumentError::Validation {
        invariant: "degenerate",
        message: e.to_string(),
    })?;
    Ok(QuadrangleDocument::new(quadrangle, doc.label))
}

fn list(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn derived_label(prefix: &str, label: &Option<String>) -> Option<String> {
    Some(match label {
        Some(l) => format!("{prefix} of {l}"),
        None => prefix.to_string(),
    })
}

fn report_json(r: &TheoremReport) -> Value {
    json!({
        "name": r.name,
        "max_residual": r.max_residual(),
        "residuals": r.residuals,
        "tolerance": r.tolerance,
        "passed": r.passed,
        "detail": r.detail,
    })
}

fn report_table(reports: &[TheoremReport]) -> String {
    let mut out = format!("{:<20} {:>12} {:>10}  {:<6} {}\n", "theorem", "max-residual", "tolerance", "result", "detail");
    for r in reports {
        out += &format!(
            "{:<20} {:>12.3e} {:>10.1e}  {:<6} {}\n",
            r.name,
            r.max_residual(),
            r.tolerance,
            if r.passed { "PASS" } else { "FAIL" },
            r.detail
        );
    }
    out
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let eps = Tolerance::new(cli.eps).map_err(|e| CliError::Usage(format!("--eps: {e}")))?;
    let mut out = Output::default();
    match &cli.command {
        Command::Classify(input) => {
            let doc = load(&input.input, eps)?;
            let class = doc.quadrangle.classify(eps)?;
            out.stdout = if cli.json {
                json!({ "class": class.as_str() }).to_string()
            } else {
                class.to_string()
            };
            out.stdout.push('\n');
        }
        Command::Dual { input, out: path } => {
            let doc = load(&input.input, eps)?;
            let dual = dual_quadrangle_with(&doc.quadrangle, eps, ComplementMethod::Quaternion)?;
            let dual_doc = QuadrangleDocument::new(dual, derived_label("dual", &doc.label));
            let (sides, diagonals) = (dual.edge_lengths(), dual.diagonal_lengths());
            let doc_line = dual_doc.to_json() + "\n";
            if let Some(p) = path {
                write_file(p, &doc_line)?;
            }
            if cli.json {
                let mut v: Value = serde_json::from_str(&doc_line).expect("own output parses");
                v["edge_lengths"] = json!(sides);
                v["diagonals"] = json!(diagonals);
                out.stdout = v.to_string() + "\n";
            } else {
                let info = format!("edge lengths: {}\ndiagonals: {}\n", list(&sides), list(&diagonals));
                if path.is_some() {
                    out.stdout = info;
                } else {
                    out.stdout = doc_line;
                    out.stderr = info;
                }
            }
        }
        Command::Verify { input, random, seed } => {
            let reports = match random {
                None => {
                    let doc = load(&input.input, eps)?;
                    let reports = verify_all(&doc.quadrangle, cli.tol)?;
                    out.stdout = if cli.json {
                        json!(reports.iter().map(report_json).collect::<Vec<_>>()).to_string() + "\n"
                    } else {
                        report_table(&reports)
                    };
                    reports
                }
                Some(n) => {
                    let summary = verify_random(*n, *seed, cli.tol)?;
                    out.stdout = if cli.json {
                        json!(summary.iter().map(report_json).collect::<Vec<_>>()).to_string() + "\n"
                    } else {
                        format!("{n} random quadrangles, seed {seed}\n") + &report_table(&summary)
                    };
                    summary
                }
            };
            let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
            if !failed.is_empty() {
                out.stderr = format!("verification failed: {}\n", failed.join(", "));
                out.code = EXIT_VERIFICATION;
            }
        }
        Command::Compass { input, out: path } => {
            let doc = load(&input.input, eps)?;
            let built = construct(&doc.quadrangle, eps)?;
            let dual = dual_quadrangle_with(&doc.quadrangle, eps, ComplementMethod::Quaternion)?;
            let deviation = congruent(&built.quadrangle, &dual, cli.tol, true);
            let s = doc.quadrangle.normalize().edge_lengths();
            let expected = [1.0 - s[0], 1.0 - s[1], 1.0 - s[3], 1.0 - s[2]];
            let report = verify_compass(&doc.quadrangle, cli.tol)?;
            let built_doc = QuadrangleDocument::new(built.quadrangle, derived_label("compass dual", &doc.label));
            let doc_line = built_doc.to_json() + "\n";
            if let Some(p) = path {
                write_file(p, &doc_line)?;
            }
            if cli.json {
                out.stdout = json!({
                    "vertices": built.quadrangle.vertices().map(|p| [p.x, p.y]),
                    "b1": [built.b1.x, built.b1.y],
                    "d1": [built.d1.x, built.d1.y],
                    "radii": built.radii,
                    "expected_radii": expected,
                    "deviation": deviation.max_vertex_distance,
                    "relabel_shift": deviation.relabel_shift,
                    "passed": report.passed,
                })
                .to_string()
                    + "\n";
            } else {
                let info = format!(
                    "B1: {}, {}\nD1: {}, {}\nradii |B1A| |B1C| |D1A| |D1C|: {}\nexpected 1-s1 1-s2 1-s4 1-s3: {}\ndeviation from algebraic dual: {:.3e} (relabel shift {})\n",
                    built.b1.x,
                    built.b1.y,
                    built.d1.x,
                    built.d1.y,
                    list(&built.radii),
                    list(&expected),
                    deviation.max_vertex_distance,
                    deviation.relabel_shift.map_or("none".into(), |s| s.to_string()),
                );
                if path.is_some() {
                    out.stdout = info;
                } else {
                    out.stdout = doc_line;
                    out.stderr = info;
                }
            }
            if !report.passed {
                out.stderr += &format!("verification failed: compass ({})\n", report.detail);
                out.code = EXIT_VERIFICATION;
            }
        }
        Command::Sweep { input, end, steps } => {
            let start = load(&input.input, eps)?;
            let end = load(&Some(end.clone()), eps)?;
            let spec = FamilySpec::new(start.quadrangle, end.quadrangle, *steps)?.with_tolerance(eps);
            let result = sweep(&spec);
            let name = |c: Option<quadual::ShapeClass>| c.map_or("degenerate", |c| c.as_str());
            if cli.json {
                let records: Vec<Value> = result
                    .records
                    .iter()
                    .map(|r| {
                        json!({
                            "t": r.t,
                            "class": name(r.class),
                            "dual_class": name(r.dual_class),
                            "margin": r.margin,
                            "dual_margin": r.dual_margin,
                        })
                    })
                    .collect();
                out.stdout = json!({
                    "records": records,
                    "class_constant": result.class_constant(),
                    "dual_class_constant": result.dual_class_constant(),
                    "min_margin": result.min_margin(),
                    "min_dual_margin": result.min_dual_margin(),
                })
                .to_string()
                    + "\n";
            } else {
                let mut s = format!(
                    "{:>5} {:>10}  {:<18} {:<18} {:>10} {:>11}\n",
                    "step", "t", "class", "dual-class", "margin", "dual-margin"
                );
                for (i, r) in result.records.iter().enumerate() {
                    s += &format!(
                        "{:>5} {:>10.6}  {:<18} {:<18} {:>10.3e} {:>11}\n",
                        i,
                        r.t,
                        name(r.class),
                        name(r.dual_class),
                        r.margin,
                        r.dual_margin.map_or("-".into(), |m| format!("{m:.3e}")),
                    );
                }
                s += &format!(
                    "class constant: {}\ndual class constant: {}\nmin margin: {:.3e}\nmin dual margin: {:.3e}\n",
                    result.class_constant(),
                    result.dual_class_constant(),
                    result.min_margin(),
                    result.min_dual_margin()
                );
                out.stdout = s;
            }
        }
        Command::Render {
            input,
            out: path,
            width,
            height,
            no_labels,
            diagonals,
            stroke,
        } => {
            if !(*stroke > 0.0 && stroke.is_finite()) {
                return Err(CliError::Usage(format!("--stroke must be positive, got {stroke}")));
            }
            let doc = load(&input.input, eps)?;
            let dual = dual_quadrangle_with(&doc.quadrangle, eps, ComplementMethod::Quaternion)?;
            let spec = RenderSpec {
                width: *width,
                height: *height,
                show_labels: !no_labels,
                show_diagonals: *diagonals,
                stroke_scale: *stroke,
            };
            let svg = render_svg(&doc.quadrangle.normalize(), &dual, doc.label.as_deref(), &spec);
            match path {
                Some(p) => write_file(p, &svg)?,
                None => out.stdout = svg,
            }
        }
    }
    Ok(out)
}

/// Runs every applicable check on `n` seeded quadrangles and folds the reports
/// by theorem name: residuals are concatenated, `passed` is the conjunction.
pub fn verify_random(n: usize, seed: u64, tol: f64) -> Result<Vec<TheoremReport>, CliError> {
    let mut sampler = QuadSampler::new(seed);
    let mut merged: Vec<TheoremReport> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for _ in 0..n {
        let q = sampler.any();
        for r in verify_all(&q, tol)? {
            match merged.iter().position(|m| m.name == r.name) {
                Some(i) => {
                    merged[i].residuals.extend(r.residuals);
                    merged[i].passed &= r.passed;
                    counts[i] += 1;
                }
                None => {
                    merged.push(r);
                    counts.push(1);
                }
            }
        }
    }
    for (m, c) in merged.iter_mut().zip(counts) {
        m.detail = format!("{c} quadrangles");
    }
    Ok(merged)
}

/// Parses `args`, runs the command, writes its output, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let _ = io::stdout().write_all(out.stdout.as_bytes());
            let _ = io::stderr().write_all(out.stderr.as_bytes());
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
