//! Command-line front end: argument parsing, dispatch and output encoding.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive
//! it with in-memory sinks.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use ricci_lab::immersion::{
    detect_closure, solve_for_ell_with, theta_limits, ClosureResult, ProfileCurve, SolveConfig,
    ThetaLimit, ThetaProfile, CLOSURE_TOL, DEFAULT_Q_MAX,
};
use ricci_lab::mesh_io::{
    build_profile, build_surface_mesh, export_csv, export_json, export_obj, scan_theta, Projection,
    ScanConfig, SurfaceMesh,
};
use ricci_lab::phase_portrait::{orbit_period_numeric, period_integral, periodic_profile, RicciParams};
use ricci_lab::spherical_family::{
    classify, j_from_minimal, minimal_from_j, Classification, SphericalParams,
};
use ricci_lab::warped_geometry::{ricci_residual, RicciType};
use ricci_lab::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Caps the worker pool used by `scan` and `mesh`.
pub const THREADS_ENV: &str = "RICCI_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "ricci-lab",
    version,
    about = "Spherical Ricci metrics, their periods, and rotational tori in the 3-sphere"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Residual of the generalized Ricci condition along a periodic profile.
    Verify(VerifyArgs),
    /// Period of the profile oscillation by quadrature and by integration.
    Period(PeriodArgs),
    /// Rotation advance Theta, its bounds, closure and boundary limits.
    Theta(ThetaArgs),
    /// Find ell with Theta = 2 pi p / q.
    Solve(SolveArgs),
    /// Theta over an (m, ell) grid.
    Scan(ScanArgs),
    /// Sampled profile curve in S^3.
    Profile(ProfileArgs),
    /// Quad mesh of the rotational torus.
    Mesh(MeshArgs),
    /// Minimal slice map j <-> (m, 1/2).
    Minimal(MinimalArgs),
    /// Where (m, ell) sits among the parameter sets.
    Classify(ClassifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Obj,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct OutputArgs {
    /// Output encoding; plain text when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write data here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn finite(raw: &str) -> Result<f64, String> {
    let v: f64 = raw.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{raw} is not a finite number"))
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 4.0, value_parser = finite)]
    pub a: f64,
    #[arg(long, default_value_t = 0.0, value_parser = finite)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0, value_parser = finite)]
    pub c: f64,
    #[arg(long, value_parser = finite)]
    pub m: f64,
    #[arg(long, value_parser = finite)]
    pub ell: f64,
    /// Grid points over one period.
    #[arg(long, default_value_t = 512)]
    pub points: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct PeriodArgs {
    #[arg(long, default_value_t = 4.0, value_parser = finite)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, value_parser = finite)]
    pub c: f64,
    #[arg(long, value_parser = finite)]
    pub m: f64,
    #[arg(long, value_parser = finite)]
    pub ell: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ThetaArgs {
    #[arg(long, default_value_t = 1.0, value_parser = finite)]
    pub c: f64,
    #[arg(long, value_parser = finite)]
    pub m: f64,
    #[arg(long, value_parser = finite)]
    pub ell: f64,
    #[arg(long, default_value_t = DEFAULT_Q_MAX)]
    pub q_max: u64,
    #[arg(long, default_value_t = CLOSURE_TOL, value_parser = finite)]
    pub tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SolveArgs {
    #[arg(long, default_value_t = 1.0, value_parser = finite)]
    pub c: f64,
    #[arg(long, value_parser = finite)]
    pub m: f64,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub q: u64,
    /// Scan samples across the admissible ell interval.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 1.0, value_parser = finite)]
    pub c: f64,
    #[arg(long, value_parser = finite)]
    pub m_min: f64,
    #[arg(long, value_parser = finite)]
    pub m_max: f64,
    #[arg(long, value_parser = finite)]
    pub ell_min: f64,
    #[arg(long, value_parser = finite)]
    pub ell_max: f64,
    #[arg(long, default_value_t = 16)]
    pub nm: usize,
    #[arg(long, default_value_t = 16)]
    pub nl: usize,
    #[arg(long, default_value_t = DEFAULT_Q_MAX)]
    pub q_max: u64,
    #[arg(long, default_value_t = CLOSURE_TOL, value_parser = finite)]
    pub tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

/// Shared by `profile` and `mesh`: `ell` is solved for when omitted.
#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SurfaceArgs {
    #[arg(long, default_value_t = 1.0, value_parser = finite)]
    pub c: f64,
    #[arg(long, value_parser = finite)]
    pub m: f64,
    #[arg(long, value_parser = finite)]
    pub ell: Option<f64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ProfileArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub surface: SurfaceArgs,
    /// Samples over the closed circuit (or over `periods` when open).
    #[arg(long, default_value_t = 512)]
    pub ns: usize,
    /// Periods to sample when the curve does not close.
    #[arg(long, default_value_t = 1)]
    pub periods: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct MeshArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, default_value_t = 256)]
    pub ns: usize,
    #[arg(long, default_value_t = 128)]
    pub nt: usize,
    /// Stereographic projection to R^3 (required for OBJ).
    #[arg(long)]
    pub project: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct MinimalArgs {
    #[arg(long, default_value_t = 1.0, value_parser = finite)]
    pub c: f64,
    #[arg(long, value_parser = finite, conflicts_with = "m", required_unless_present = "m")]
    pub j: Option<f64>,
    #[arg(long, value_parser = finite)]
    pub m: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ClassifyArgs {
    #[arg(long, default_value_t = 1.0, value_parser = finite)]
    pub c: f64,
    #[arg(long, value_parser = finite)]
    pub m: f64,
    #[arg(long, value_parser = finite)]
    pub ell: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutputArgs,
}

/// Failure inside a subcommand, before its mapping to an exit code.
#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

type CmdResult = Result<(), Failure>;

/// JSON envelope: the parsed flags next to the result.
#[derive(Serialize)]
struct Envelope<'a, I: Serialize, R: Serialize> {
    command: &'a str,
    inputs: &'a I,
    result: &'a R,
}

/// Where data goes. Standard output is buffered so the command can run
/// inside the worker pool.
struct Sink {
    stdout: Vec<u8>,
}

impl Sink {
    fn with<F>(&mut self, target: &OutputArgs, body: F) -> CmdResult
    where
        F: FnOnce(&mut dyn Write) -> CmdResult,
    {
        match &target.output {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path)?);
                body(&mut w)?;
                w.flush()?;
                Ok(())
            }
            None => body(&mut self.stdout),
        }
    }
}

fn json<I: Serialize, R: Serialize>(w: &mut dyn Write, command: &str, inputs: &I, result: &R) -> CmdResult {
    export_json(
        &Envelope {
            command,
            inputs,
            result,
        },
        w,
    )?;
    Ok(())
}

fn reject_format(command: &str, format: Format) -> Failure {
    Failure::Usage(format!("--format {format:?} is not available for `{command}`").to_lowercase())
}

#[derive(Serialize)]
struct VerifyReport {
    max_abs: f64,
    scale: f64,
    normalized: f64,
    period: f64,
    points: usize,
    provenance: String,
}

fn cmd_verify(args: &VerifyArgs, sink: &mut Sink) -> CmdResult {
    if args.points == 0 {
        return Err(Failure::Usage("--points must be positive".into()));
    }
    let params = RicciParams::new(args.a, args.c, args.m, args.ell)?;
    let period = if args.a == 4.0 {
        std::f64::consts::PI / args.c.sqrt()
    } else {
        period_integral(args.a, args.c, args.m, args.ell)?
    };
    let profile = periodic_profile(&params, 1.0)?;
    let grid: Vec<f64> = (0..args.points)
        .map(|i| period * i as f64 / args.points as f64)
        .collect();
    let ty = RicciType {
        a: args.a,
        b: args.b,
        c: args.c,
    };
    let rep = ricci_residual(profile.as_ref(), ty, &grid)?;
    let report = VerifyReport {
        max_abs: rep.max_abs,
        scale: rep.scale,
        normalized: rep.normalized,
        period,
        points: args.points,
        provenance: format!("{:?}", profile.provenance()),
    };
    sink.with(&args.out, |w| match args.out.format {
        Some(Format::Json) => json(w, "verify", args, &report),
        Some(f) => Err(reject_format("verify", f)),
        None => {
            writeln!(w, "max_abs_residual {:e}", report.max_abs)?;
            writeln!(w, "normalized_residual {:e}", report.normalized)?;
            writeln!(w, "scale {}", report.scale)?;
            writeln!(w, "period {}", report.period)?;
            writeln!(w, "provenance {}", report.provenance)?;
            Ok(())
        }
    })
}

#[derive(Serialize)]
struct PeriodReport {
    quadrature: f64,
    orbit: f64,
    difference: f64,
}

fn cmd_period(args: &PeriodArgs, sink: &mut Sink) -> CmdResult {
    let quadrature = period_integral(args.a, args.c, args.m, args.ell)?;
    let orbit = orbit_period_numeric(args.a, args.c, args.m, args.ell)?;
    let report = PeriodReport {
        quadrature,
        orbit,
        difference: (orbit - quadrature).abs(),
    };
    sink.with(&args.out, |w| match args.out.format {
        Some(Format::Json) => json(w, "period", args, &report),
        Some(f) => Err(reject_format("period", f)),
        None => {
            writeln!(w, "quadrature {}", report.quadrature)?;
            writeln!(w, "orbit {}", report.orbit)?;
            writeln!(w, "difference {:e}", report.difference)?;
            Ok(())
        }
    })
}

#[derive(Serialize)]
struct ThetaReport {
    theta: f64,
    theta_over_2pi: f64,
    s1: f64,
    s2: f64,
    closure: Option<ClosureResult>,
    /// Theta as ell decreases to sqrt(cm).
    limit_ell_to_lower: f64,
    /// Theta as m decreases to 0 (only for ell <= 1/2).
    limit_m_to_zero: Option<f64>,
    /// Theta grows without bound as ell approaches this value.
    divergent_ell: f64,
}

fn cmd_theta(args: &ThetaArgs, sink: &mut Sink) -> CmdResult {
    let params = SphericalParams::new(args.c, args.m, args.ell)?;
    let tp = ThetaProfile::new(&params)?;
    let theta = tp.big_theta();
    let (s1, s2) = tp.slack_bounds();
    let report = ThetaReport {
        theta,
        theta_over_2pi: theta / std::f64::consts::TAU,
        s1,
        s2,
        closure: detect_closure(theta, args.q_max, args.tol),
        limit_ell_to_lower: theta_limits(args.c, ThetaLimit::EllToLower { m: args.m })?,
        limit_m_to_zero: theta_limits(args.c, ThetaLimit::MToZero { ell: args.ell }).ok(),
        divergent_ell: 0.5 * (args.c * args.m + 1.0),
    };
    sink.with(&args.out, |w| match args.out.format {
        Some(Format::Json) => json(w, "theta", args, &report),
        Some(f) => Err(reject_format("theta", f)),
        None => {
            writeln!(w, "Theta {}", report.theta)?;
            writeln!(w, "Theta/2pi {}", report.theta_over_2pi)?;
            writeln!(w, "bounds {} {}", report.s1, report.s2)?;
            match report.closure {
                Some(cl) => writeln!(w, "closure p={} q={} embedded={}", cl.p, cl.q, cl.embedded)?,
                None => writeln!(w, "closure none")?,
            }
            writeln!(w, "limit ell->sqrt(cm) {}", report.limit_ell_to_lower)?;
            if let Some(v) = report.limit_m_to_zero {
                writeln!(w, "limit m->0 {v}")?;
            }
            writeln!(w, "diverges at ell {}", report.divergent_ell)?;
            Ok(())
        }
    })
}

fn cmd_solve(args: &SolveArgs, sink: &mut Sink) -> CmdResult {
    let cfg = SolveConfig {
        samples: args.samples,
        ..SolveConfig::default()
    };
    let outcome = solve_for_ell_with(args.c, args.m, args.p, args.q, &cfg)?;
    sink.with(&args.out, |w| match args.out.format {
        Some(Format::Json) => json(w, "solve", args, &outcome),
        Some(f) => Err(reject_format("solve", f)),
        None => {
            writeln!(w, "ell {}", outcome.ell)?;
            writeln!(w, "Theta {}", outcome.theta)?;
            writeln!(w, "target {}", outcome.target)?;
            writeln!(
                w,
                "closure p={} q={} embedded={}",
                outcome.closure.p, outcome.closure.q, outcome.closure.embedded
            )?;
            writeln!(w, "roots {}", outcome.roots.len())?;
            for r in &outcome.roots {
                writeln!(w, "  ell={} bracket=[{}, {}]", r.ell, r.bracket.0, r.bracket.1)?;
            }
            Ok(())
        }
    })
}

fn cmd_scan(args: &ScanArgs, sink: &mut Sink) -> CmdResult {
    let cfg = ScanConfig {
        q_max: args.q_max,
        closure_tol: args.tol,
    };
    let table = scan_theta(
        args.c,
        (args.m_min, args.m_max),
        (args.ell_min, args.ell_max),
        (args.nm, args.nl),
        &cfg,
    )?;
    sink.with(&args.out, |w| match args.out.format {
        Some(Format::Json) => json(w, "scan", args, &table),
        None | Some(Format::Csv) => Ok(export_csv(&table, w)?),
        Some(f) => Err(reject_format("scan", f)),
    })
}

/// Resolved parameters and closure for `profile` / `mesh`.
struct Resolved {
    params: SphericalParams,
    closure: Option<ClosureResult>,
}

fn resolve_surface(s: &SurfaceArgs) -> Result<Resolved, Failure> {
    let given = match (s.p, s.q) {
        (Some(p), Some(q)) => Some(ClosureResult::new(p, q)?),
        (None, None) => None,
        _ => return Err(Failure::Usage("--p and --q go together".into())),
    };
    let ell = match (s.ell, given) {
        (Some(ell), _) => ell,
        (None, Some(cl)) => solve_for_ell_with(s.c, s.m, cl.p, cl.q, &SolveConfig::default())?.ell,
        (None, None) => return Err(Failure::Usage("give --ell, or --p and --q to solve for it".into())),
    };
    let params = SphericalParams::new(s.c, s.m, ell)?;
    let closure = match given {
        Some(cl) => Some(cl),
        None => detect_closure(ThetaProfile::new(&params)?.big_theta(), DEFAULT_Q_MAX, CLOSURE_TOL),
    };
    Ok(Resolved { params, closure })
}

fn cmd_profile(args: &ProfileArgs, sink: &mut Sink) -> CmdResult {
    let r = resolve_surface(&args.surface)?;
    let curve = match &r.closure {
        Some(cl) => build_profile(&r.params, cl, args.ns)?,
        None => ProfileCurve::sample(&ThetaProfile::new(&r.params)?, args.periods, args.ns)?,
    };
    sink.with(&args.out, |w| match args.out.format {
        Some(Format::Json) => json(w, "profile", args, &curve),
        None | Some(Format::Csv) => Ok(export_csv(&curve, w)?),
        Some(f) => Err(reject_format("profile", f)),
    })
}

#[derive(Serialize)]
struct MeshSummary<'a> {
    vertices: usize,
    faces: usize,
    euler_characteristic: i64,
    watertight: bool,
    mesh: &'a SurfaceMesh,
}

fn cmd_mesh(args: &MeshArgs, sink: &mut Sink) -> CmdResult {
    let r = resolve_surface(&args.surface)?;
    let closure = r.closure.ok_or_else(|| {
        Failure::Lib(Error::ClosureMismatch(format!(
            "Theta for ell = {} is not a rational multiple of 2 pi within tolerance; pass --p/--q or solve first",
            r.params.ell
        )))
    })?;
    let format = args.out.format.unwrap_or(Format::Obj);
    if format == Format::Obj && !args.project {
        return Err(Failure::Lib(Error::InvalidMesh(
            "OBJ output needs --project (vertices otherwise live in R^4)".into(),
        )));
    }
    let projection = if args.project {
        Projection::Stereographic
    } else {
        Projection::None
    };
    let mesh = build_surface_mesh(&r.params, &closure, args.ns, args.nt, projection)?;
    sink.with(&args.out, |w| match format {
        Format::Obj => Ok(export_obj(&mesh, w)?),
        Format::Json => {
            let summary = MeshSummary {
                vertices: mesh.vertex_count(),
                faces: mesh.faces.len(),
                euler_characteristic: mesh.euler_characteristic(),
                watertight: mesh.is_watertight(),
                mesh: &mesh,
            };
            json(w, "mesh", args, &summary)
        }
        f => Err(reject_format("mesh", f)),
    })
}

#[derive(Serialize)]
struct MinimalReport {
    j: f64,
    m: f64,
    ell: f64,
    classification: Classification,
}

fn cmd_minimal(args: &MinimalArgs, sink: &mut Sink) -> CmdResult {
    let (j, m, ell) = match (args.j, args.m) {
        (Some(j), _) => {
            let (m, ell) = minimal_from_j(args.c, j)?;
            (j, m, ell)
        }
        (None, Some(m)) => (j_from_minimal(args.c, m, 0.5)?, m, 0.5),
        (None, None) => return Err(Failure::Usage("give --j or --m".into())),
    };
    let report = MinimalReport {
        j,
        m,
        ell,
        classification: classify(args.c, m, ell),
    };
    sink.with(&args.out, |w| match args.out.format {
        Some(Format::Json) => json(w, "minimal", args, &report),
        Some(f) => Err(reject_format("minimal", f)),
        None => {
            writeln!(w, "j {}", report.j)?;
            writeln!(w, "m {}", report.m)?;
            writeln!(w, "ell {}", report.ell)?;
            writeln!(w, "classification {}", report.classification)?;
            Ok(())
        }
    })
}

#[derive(Serialize)]
struct ClassifyReport {
    classification: Classification,
    immersible: bool,
}

fn cmd_classify(args: &ClassifyArgs, sink: &mut Sink) -> CmdResult {
    if !(args.c > 0.0) {
        return Err(Failure::Lib(Error::Domain(format!("curvature c = {} must be positive", args.c))));
    }
    let params = SphericalParams::new(args.c, args.m, args.ell)?;
    let report = ClassifyReport {
        classification: classify(args.c, args.m, args.ell),
        immersible: ricci_lab::immersion::check_immersible(&params).is_ok(),
    };
    sink.with(&args.out, |w| match args.out.format {
        Some(Format::Json) => json(w, "classify", args, &report),
        Some(f) => Err(reject_format("classify", f)),
        None => {
            writeln!(w, "{}", report.classification)?;
            Ok(())
        }
    })
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

fn dispatch(command: &Command, sink: &mut Sink) -> CmdResult {
    match command {
        Command::Verify(a) => cmd_verify(a, sink),
        Command::Period(a) => cmd_period(a, sink),
        Command::Theta(a) => cmd_theta(a, sink),
        Command::Solve(a) => cmd_solve(a, sink),
        Command::Scan(a) => cmd_scan(a, sink),
        Command::Profile(a) => cmd_profile(a, sink),
        Command::Mesh(a) => cmd_mesh(a, sink),
        Command::Minimal(a) => cmd_minimal(a, sink),
        Command::Classify(a) => cmd_classify(a, sink),
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code. Data goes to `out` unless `--output` is given; diagnostics go
/// to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let mut sink = Sink { stdout: Vec::new() };
    let outcome = pool.install(|| dispatch(&cli.command, &mut sink));
    if let Err(e) = out.write_all(&sink.stdout).and_then(|()| out.flush()) {
        let _ = writeln!(err, "error [io]: {e}");
        return EXIT_PRECONDITION;
    }
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(err, "run with --help for usage");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error [{}]: {e}", e.code());
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_PRECONDITION
            }
        }
    }
}
