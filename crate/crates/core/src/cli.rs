//! Command-line front end. Reports go to stdout as JSON, logs to stderr.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 when an
//! input cannot be read, parsed, or used.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::Error;
use crate::holomorphic::QuadratureOptions;
use crate::io::{self, complex_vec, InputError, JsonComplex, MonogenicFile};
use crate::monogenic::{
    check_cauchy_riemann, default_cr_step, eval_monogenic, eval_monogenic_contour,
    gateaux_derivative, MonogenicFunction, VariableFrame,
};
use crate::pde::{
    characteristic_sum, check_pde_residual, default_pde_step, p_nonvanishing_scan,
    theorem4_check, PdeSpec, ScanVerdict,
};
use crate::resolvent::{invert, resolvent, QTable};
use crate::selftest::run_selftest;
use crate::C64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const DEFAULT_CR_TOL: f64 = 1e-7;
const DEFAULT_PDE_TOL: f64 = 1e-5;
const DEFAULT_CHAR_TOL: f64 = 1e-10;
const DEFAULT_CONTOUR_TOL: f64 = 1e-8;
const DEFAULT_UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "monogenic",
    version,
    about = "Monogenic functions in commutative associative algebras",
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Absolute zero tolerance for table products and poles.
    #[arg(long, global = true)]
    pub tol_zero: Option<f64>,
    /// Pass/fail tolerance; each subcommand has its own default.
    #[arg(long, global = true)]
    pub tol_check: Option<f64>,
    /// Finite-difference step; default scales with the point.
    #[arg(long, global = true)]
    pub fd_step: Option<f64>,
    /// Node cap for contour quadrature.
    #[arg(long, global = true)]
    pub quad_nodes: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the input file schemas and exit.
    #[arg(long)]
    pub emit_schema: bool,
    /// More log output on stderr (repeatable).
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArg {
    /// Algebra spec (JSON).
    #[arg(long, short = 'a')]
    pub algebra: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FrameArgs {
    #[command(flatten)]
    pub algebra: AlgebraArg,
    /// Frame spec (JSON).
    #[arg(long, short = 'f')]
    pub frame: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FunctionArgs {
    #[command(flatten)]
    pub frame: FrameArgs,
    /// Monogenic function spec (JSON with "F" and "G").
    #[arg(long, short = 'F')]
    pub function: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    /// Comma-separated point x_1,…,x_k.
    #[arg(long, short = 'x', value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Option<Vec<f64>>,
    /// Grid spec (JSON) instead of a single point.
    #[arg(long, conflicts_with = "point")]
    pub grid: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// Interval `lo,hi` used for every b_j.
    #[arg(long = "box", value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-10.0, 10.0])]
    pub bounds: Vec<f64>,
    /// Grid points per axis.
    #[arg(long, default_value_t = 11)]
    pub grid_points: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check associativity of the multiplication table.
    Validate(AlgebraArg),
    /// Invert an element given as a file or inline JSON.
    Invert {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Element: path to a JSON file, or inline JSON coefficients.
        #[arg(long, short = 'e', allow_hyphen_values = true)]
        element: String,
    },
    /// Resolvent (t e_1 − ζ)^{-1} at a point.
    Resolvent {
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(long, short = 'x', value_delimiter = ',', allow_hyphen_values = true, required = true)]
        point: Vec<f64>,
        /// Complex parameter `re` or `re,im`.
        #[arg(long, short = 't', allow_hyphen_values = true)]
        t: String,
    },
    /// Evaluate a monogenic function in residue form.
    Eval {
        #[command(flatten)]
        function: FunctionArgs,
        #[command(flatten)]
        points: PointArgs,
        /// Record that the caller asserts the domain is convex in the degenerate directions.
        #[arg(long)]
        domain_convex: bool,
    },
    /// Evaluate a monogenic function by contour quadrature.
    EvalContour {
        #[command(flatten)]
        function: FunctionArgs,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Gateaux derivative of a given order.
    Derive {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Numerical Cauchy–Riemann check.
    CheckCr {
        #[command(flatten)]
        function: FunctionArgs,
        #[command(flatten)]
        points: PointArgs,
        #[arg(long)]
        domain_convex: bool,
    },
    /// Characteristic sum Σ C_α e_2^{α_2}⋯e_k^{α_k} of a PDE for a frame.
    CharEq {
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(long, short = 'p')]
        pde: PathBuf,
    },
    /// Grid scan of the real characteristic polynomial.
    PScan {
        #[arg(long, short = 'p')]
        pde: PathBuf,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Finite-difference PDE residual of a monogenic function.
    CheckPde {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, short = 'p')]
        pde: PathBuf,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Hypotheses and conclusion of the surjectivity criterion.
    Theorem4 {
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(long, short = 'p')]
        pde: PathBuf,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Run the bundled fixture suite.
    Selftest,
}

/// A fully loaded invocation: every input has been read and parsed.
#[derive(Debug)]
pub enum Job {
    Validate(AlgebraSpec),
    Invert(AlgebraSpec, AlgebraElement),
    Resolvent {
        spec: AlgebraSpec,
        frame: VariableFrame,
        x: Vec<f64>,
        t: C64,
    },
    Eval {
        spec: AlgebraSpec,
        mf: MonogenicFunction,
        points: Vec<Vec<f64>>,
        domain_convex: bool,
    },
    EvalContour {
        spec: AlgebraSpec,
        mf: MonogenicFunction,
        points: Vec<Vec<f64>>,
    },
    Derive {
        spec: AlgebraSpec,
        mf: MonogenicFunction,
        order: usize,
        points: Vec<Vec<f64>>,
    },
    CheckCr {
        spec: AlgebraSpec,
        mf: MonogenicFunction,
        points: Vec<Vec<f64>>,
        domain_convex: bool,
    },
    CharEq {
        spec: AlgebraSpec,
        frame: VariableFrame,
        pde: PdeSpec,
    },
    PScan {
        pde: PdeSpec,
        bounds: Vec<[f64; 2]>,
        grid_points: usize,
    },
    CheckPde {
        spec: AlgebraSpec,
        mf: MonogenicFunction,
        pde: PdeSpec,
        points: Vec<Vec<f64>>,
    },
    Theorem4 {
        spec: AlgebraSpec,
        frame: VariableFrame,
        pde: PdeSpec,
        bounds: Vec<[f64; 2]>,
        grid_points: usize,
    },
    Selftest,
}

/// Subcommand plus tolerances and seed.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: Command,
    pub options: Options,
}

fn arg_error(what: &str, source: Error) -> InputError {
    InputError::Semantic {
        file: what.to_string(),
        source,
    }
}

fn invalid(what: &str, msg: String) -> InputError {
    arg_error(what, Error::InvalidArgument(msg))
}

fn parse_complex(s: &str) -> Result<C64, InputError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| {
        p.parse::<f64>()
            .map_err(|_| invalid("--t", format!("{p:?} is not a number")))
    };
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(invalid("--t", format!("expected `re` or `re,im`, got {s:?}"))),
    }
}

fn bounds_for(pde: &PdeSpec, scan: &ScanArgs) -> Result<Vec<[f64; 2]>, InputError> {
    match scan.bounds.as_slice() {
        &[lo, hi] if lo.is_finite() && hi.is_finite() && lo <= hi => {
            Ok(vec![[lo, hi]; pde.k() - 1])
        }
        _ => Err(invalid(
            "--box",
            format!("expected `lo,hi` with lo <= hi, got {:?}", scan.bounds),
        )),
    }
}

impl RunManifest {
    pub fn new(command: Command, options: Options) -> Self {
        Self { command, options }
    }

    fn algebra(&self, a: &AlgebraArg) -> Result<AlgebraSpec, InputError> {
        let file = a.algebra.display().to_string();
        let spec = io::parse_algebra(&io::read_text(&a.algebra)?, &file)?;
        Ok(match self.options.tol_zero {
            Some(tol) if tol >= 0.0 && tol.is_finite() => spec.with_tol_zero(tol),
            Some(tol) => return Err(invalid("--tol-zero", format!("{tol} is not a tolerance"))),
            None => spec,
        })
    }

    fn frame(&self, f: &FrameArgs) -> Result<(AlgebraSpec, VariableFrame), InputError> {
        let spec = self.algebra(&f.algebra)?;
        let file = f.frame.display().to_string();
        let frame = io::parse_frame(&io::read_text(&f.frame)?, &file, &spec)?;
        Ok((spec, frame))
    }

    fn function(&self, f: &FunctionArgs) -> Result<(AlgebraSpec, MonogenicFunction), InputError> {
        let (spec, frame) = self.frame(&f.frame)?;
        let file = f.function.display().to_string();
        let mf = io::parse_monogenic(&io::read_text(&f.function)?, &file, &spec, frame)?;
        Ok((spec, mf))
    }

    fn pde(path: &Path) -> Result<PdeSpec, InputError> {
        io::parse_pde(&io::read_text(path)?, &path.display().to_string())
    }

    fn points(p: &PointArgs, k: usize, required: bool) -> Result<Vec<Vec<f64>>, InputError> {
        if let Some(x) = &p.point {
            if x.len() != k {
                return Err(arg_error(
                    "--point",
                    Error::DimensionMismatch {
                        expected: k,
                        found: x.len(),
                    },
                ));
            }
            return Ok(vec![x.clone()]);
        }
        if let Some(path) = &p.grid {
            let file = path.display().to_string();
            let grid = io::parse_grid(&io::read_text(path)?, &file)?;
            grid.validate(k).map_err(|source| InputError::Semantic {
                file: file.clone(),
                source,
            })?;
            return Ok(grid.points());
        }
        if required {
            Err(invalid("--point", "one of --point or --grid is required".into()))
        } else {
            Ok(Vec::new())
        }
    }

    /// Reads and parses every referenced input before anything is computed.
    pub fn load(&self) -> Result<Job, InputError> {
        Ok(match &self.command {
            Command::Validate(a) => Job::Validate(self.algebra(a)?),
            Command::Invert { algebra, element } => {
                let spec = self.algebra(algebra)?;
                let trimmed = element.trim_start();
                let b = if trimmed.starts_with('[') || trimmed.starts_with('{') {
                    io::parse_element(element, "--element", &spec)?
                } else {
                    let path = Path::new(element);
                    io::parse_element(&io::read_text(path)?, element, &spec)?
                };
                Job::Invert(spec, b)
            }
            Command::Resolvent { frame, point, t } => {
                let (spec, frame) = self.frame(frame)?;
                if point.len() != frame.k() {
                    return Err(arg_error(
                        "--point",
                        Error::DimensionMismatch {
                            expected: frame.k(),
                            found: point.len(),
                        },
                    ));
                }
                Job::Resolvent {
                    spec,
                    frame,
                    x: point.clone(),
                    t: parse_complex(t)?,
                }
            }
            Command::Eval {
                function,
                points,
                domain_convex,
            } => {
                let (spec, mf) = self.function(function)?;
                let points = Self::points(points, mf.frame().k(), true)?;
                Job::Eval {
                    spec,
                    mf,
                    points,
                    domain_convex: *domain_convex,
                }
            }
            Command::EvalContour { function, points } => {
                let (spec, mf) = self.function(function)?;
                let points = Self::points(points, mf.frame().k(), true)?;
                Job::EvalContour { spec, mf, points }
            }
            Command::Derive {
                function,
                order,
                points,
            } => {
                let (spec, mf) = self.function(function)?;
                let points = Self::points(points, mf.frame().k(), false)?;
                Job::Derive {
                    spec,
                    mf,
                    order: *order,
                    points,
                }
            }
            Command::CheckCr {
                function,
                points,
                domain_convex,
            } => {
                let (spec, mf) = self.function(function)?;
                let points = Self::points(points, mf.frame().k(), true)?;
                Job::CheckCr {
                    spec,
                    mf,
                    points,
                    domain_convex: *domain_convex,
                }
            }
            Command::CharEq { frame, pde } => {
                let (spec, frame) = self.frame(frame)?;
                let pde = Self::pde(pde)?;
                Job::CharEq { spec, frame, pde }
            }
            Command::PScan { pde, scan } => {
                let pde = Self::pde(pde)?;
                let bounds = bounds_for(&pde, scan)?;
                Job::PScan {
                    pde,
                    bounds,
                    grid_points: scan.grid_points,
                }
            }
            Command::CheckPde {
                function,
                pde,
                points,
            } => {
                let (spec, mf) = self.function(function)?;
                let pde = Self::pde(pde)?;
                let points = Self::points(points, mf.frame().k(), true)?;
                Job::CheckPde {
                    spec,
                    mf,
                    pde,
                    points,
                }
            }
            Command::Theorem4 { frame, pde, scan } => {
                let (spec, frame) = self.frame(frame)?;
                let pde = Self::pde(pde)?;
                let bounds = bounds_for(&pde, scan)?;
                Job::Theorem4 {
                    spec,
                    frame,
                    pde,
                    bounds,
                    grid_points: scan.grid_points,
                }
            }
            Command::Selftest => Job::Selftest,
        })
    }
}

/// Result of a computation: the JSON report and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn elem(a: &AlgebraElement) -> Value {
    to_value(complex_vec(a.coeffs()))
}

fn unit_residual(spec: &AlgebraSpec, a: &AlgebraElement, b: &AlgebraElement) -> Result<f64, Error> {
    let scale = (a.norm_inf() * b.norm_inf()).max(1.0);
    Ok(spec.mul(a, b)?.distance(&spec.unit())? / scale)
}

fn convexity_note(asserted: bool) -> Value {
    json!({
        "asserted_by_caller": asserted,
        "verified": false,
    })
}

/// Runs a loaded job.
pub fn execute(job: Job, opts: &Options) -> Result<Outcome, Error> {
    let tol = |default: f64| opts.tol_check.unwrap_or(default);
    Ok(match job {
        Job::Validate(spec) => {
            let r = spec.validate();
            Outcome {
                passed: r.valid,
                report: to_value(&r),
            }
        }
        Job::Invert(spec, b) => {
            let inv = invert(&spec, &b)?;
            let residual = unit_residual(&spec, &b, &inv)?;
            let tolerance = tol(DEFAULT_UNIT_TOL);
            Outcome {
                passed: residual <= tolerance,
                report: json!({
                    "inverse": elem(&inv),
                    "relative_residual": residual,
                    "tolerance": tolerance,
                }),
            }
        }
        Job::Resolvent { spec, frame, x, t } => {
            let r = resolvent(&spec, &frame, &x, t)?;
            let table = QTable::for_point(&spec, &frame, &x)?;
            let lhs = spec.unit().scale(t).sub(&frame.zeta(&x)?)?;
            let residual = unit_residual(&spec, &lhs, &r)?;
            let tolerance = tol(DEFAULT_UNIT_TOL);
            Outcome {
                passed: residual <= tolerance,
                report: json!({
                    "t": JsonComplex(t),
                    "xi": complex_vec(&frame.xis(&x)?),
                    "resolvent": elem(&r),
                    "q_table": table.entries().map(|(r, s, v)| json!({"r": r, "s": s, "value": JsonComplex(v)})).collect::<Vec<_>>(),
                    "relative_residual": residual,
                    "tolerance": tolerance,
                }),
            }
        }
        Job::Eval {
            spec,
            mf,
            points,
            domain_convex,
        } => {
            let values = points
                .iter()
                .map(|x| {
                    Ok(json!({
                        "x": x,
                        "xi": complex_vec(&mf.frame().xis(x)?),
                        "value": elem(&eval_monogenic(&spec, &mf, x)?),
                    }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Outcome {
                passed: true,
                report: json!({
                    "points": values,
                    "surjectivity": mf.frame().surjectivity_check(spec.tol_zero()),
                    "domain_convexity": convexity_note(domain_convex),
                }),
            }
        }
        Job::EvalContour { spec, mf, points } => {
            let qopts = opts
                .quad_nodes
                .map_or_else(QuadratureOptions::default, QuadratureOptions::with_max_nodes);
            let tolerance = tol(DEFAULT_CONTOUR_TOL);
            let mut passed = true;
            let mut max_diff = 0.0_f64;
            let mut rows = Vec::with_capacity(points.len());
            for x in &points {
                let c = eval_monogenic_contour(&spec, &mf, x, qopts)?;
                let residue = eval_monogenic(&spec, &mf, x)?;
                let diff = c.value.distance(&residue)?;
                max_diff = max_diff.max(diff);
                passed &= c.converged && diff <= tolerance;
                rows.push(json!({
                    "x": x,
                    "value": elem(&c.value),
                    "radius": c.radius,
                    "nodes": c.max_nodes,
                    "converged": c.converged,
                    "residue_form_difference": diff,
                }));
            }
            Outcome {
                passed,
                report: json!({
                    "points": rows,
                    "max_difference": max_diff,
                    "tolerance": tolerance,
                }),
            }
        }
        Job::Derive {
            spec,
            mf,
            order,
            points,
        } => {
            let d = gateaux_derivative(&mf, order);
            let values = points
                .iter()
                .map(|x| Ok(json!({"x": x, "value": elem(&eval_monogenic(&spec, &d, x)?)})))
                .collect::<Result<Vec<_>, Error>>()?;
            Outcome {
                passed: true,
                report: json!({
                    "order": order,
                    "function": MonogenicFile::from_monogenic(&d),
                    "points": values,
                }),
            }
        }
        Job::CheckCr {
            spec,
            mf,
            points,
            domain_convex,
        } => {
            let tolerance = tol(DEFAULT_CR_TOL);
            let map = mf.bind(&spec);
            let mut max_residual = 0.0_f64;
            let mut rows = Vec::with_capacity(points.len());
            for x in &points {
                let h = opts.fd_step.unwrap_or_else(|| default_cr_step(x));
                let r = check_cauchy_riemann(&spec, mf.frame(), &map, x, h)?;
                max_residual = max_residual.max(r.max_residual);
                rows.push(json!({"x": x, "report": r}));
            }
            Outcome {
                passed: max_residual <= tolerance,
                report: json!({
                    "points": rows,
                    "max_residual": max_residual,
                    "tolerance": tolerance,
                    "domain_convexity": convexity_note(domain_convex),
                }),
            }
        }
        Job::CharEq { spec, frame, pde } => {
            let sum = characteristic_sum(&spec, &frame, &pde)?;
            let tolerance = tol(DEFAULT_CHAR_TOL);
            let norm = sum.norm_inf();
            let per_u = (1..=spec.m())
                .map(|u| spec.functional(u, &sum).map(JsonComplex))
                .collect::<Result<Vec<_>, Error>>()?;
            Outcome {
                passed: norm <= tolerance,
                report: json!({
                    "characteristic_sum": elem(&sum),
                    "norm_inf": norm,
                    "vanishes": norm <= tolerance,
                    "per_u": per_u,
                    "tolerance": tolerance,
                }),
            }
        }
        Job::PScan {
            pde,
            bounds,
            grid_points,
        } => {
            let r = p_nonvanishing_scan(&pde, &bounds, grid_points)?;
            Outcome {
                passed: r.verdict == ScanVerdict::NoRootFound,
                report: json!({"bounds": bounds, "grid_points": grid_points, "scan": r}),
            }
        }
        Job::CheckPde {
            spec,
            mf,
            pde,
            points,
        } => {
            let tolerance = tol(DEFAULT_PDE_TOL);
            let map = mf.bind(&spec);
            let mut max_residual = 0.0_f64;
            let mut rows = Vec::with_capacity(points.len());
            for x in &points {
                let h = opts.fd_step.unwrap_or_else(|| default_pde_step(x));
                let r = check_pde_residual(&map, &pde, x, h)?;
                max_residual = max_residual.max(r.residual);
                rows.push(json!({"x": x, "h": r.h, "residual": r.residual}));
            }
            let sum = characteristic_sum(&spec, mf.frame(), &pde)?;
            Outcome {
                passed: max_residual <= tolerance,
                report: json!({
                    "points": rows,
                    "max_residual": max_residual,
                    "tolerance": tolerance,
                    "characteristic_sum_norm": sum.norm_inf(),
                }),
            }
        }
        Job::Theorem4 {
            spec,
            frame,
            pde,
            bounds,
            grid_points,
        } => {
            let r = theorem4_check(&spec, &frame, &pde, &bounds, grid_points, tol(DEFAULT_CHAR_TOL))?;
            Outcome {
                passed: r.consistent,
                report: to_value(&r),
            }
        }
        Job::Selftest => {
            let r = run_selftest(opts.seed);
            Outcome {
                passed: r.all_passed,
                report: to_value(&r),
            }
        }
    })
}

fn input_error_json(e: &InputError) -> Value {
    match e {
        InputError::Io { file, message } => {
            json!({"error": {"kind": "io", "file": file, "message": message}})
        }
        InputError::Syntax {
            file,
            path,
            line,
            column,
            message,
        } => json!({"error": {
            "kind": "parse", "file": file, "path": path,
            "line": line, "column": column, "message": message,
        }}),
        InputError::Semantic { file, source } => {
            json!({"error": {"kind": "invalid", "file": file, "message": source.to_string()}})
        }
    }
}

/// Full pipeline for one invocation: returns the exit status and the JSON
/// document for stdout.
pub fn run(cli: Cli) -> (i32, Value) {
    if cli.options.emit_schema {
        return (EXIT_OK, io::schemas());
    }
    let Some(command) = cli.command else {
        return (
            EXIT_INPUT,
            json!({"error": {"kind": "usage", "message": "no subcommand given"}}),
        );
    };
    let manifest = RunManifest::new(command, cli.options);
    let job = match manifest.load() {
        Ok(job) => job,
        Err(e) => {
            log::error!("{e}");
            return (EXIT_INPUT, input_error_json(&e));
        }
    };
    match execute(job, &manifest.options) {
        Ok(out) => {
            if !out.passed {
                log::warn!("check failed");
            }
            (
                if out.passed { EXIT_OK } else { EXIT_CHECK_FAILED },
                out.report,
            )
        }
        Err(e) => {
            log::error!("{e}");
            (
                EXIT_INPUT,
                json!({"error": {"kind": "domain", "message": e.to_string()}}),
            )
        }
    }
}

/// Entry point used by the binary.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let level = match cli.options.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .target(env_logger::Target::Stderr)
        .init();
    let (code, report) = run(cli);
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    // a closed pipe (e.g. `| head`) is not an error worth panicking over
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    code
}
