//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification ran and failed, 2 usage or
//! parse error, 3 domain rejection, 4 output failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::cevian::{bisector_lengths, unconditional_identities};
use crate::error::Error;
use crate::figure::render_svg;
use crate::steiner_lehmus::{scan_random, solve_equal_bisector_angle};
use crate::triangle::{
    law_of_sines_residual, solve_from_angles, solve_from_asa, solve_from_sas, solve_from_sss, ToleranceConfig,
    Triangle, TriangleAngles, TriangleSides,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_OUTPUT: i32 = 4;

/// Largest `|C - B|` accepted by `verify`.
const VERIFY_ANGLE_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "hypbisect", version, about = "Hyperbolic triangles, angle bisectors and the Steiner-Lehmus theorem")]
pub struct CliConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Read angle arguments in degrees instead of radians.
    #[arg(long, global = true)]
    pub degrees: bool,

    /// Relative tolerance for identity residuals (at most 1e-8).
    #[arg(long, global = true)]
    pub rtol: Option<f64>,

    /// Absolute tolerance for equality decisions.
    #[arg(long, global = true)]
    pub atol: Option<f64>,

    /// Minimum angle defect (for `scan`, also the smallest sampled angle).
    #[arg(long = "eps-angle", global = true)]
    pub eps_angle: Option<f64>,

    /// Largest accepted side length.
    #[arg(long = "max-side", global = true)]
    pub max_side: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Case {
    /// Three angles A B C.
    Aaa,
    /// Three sides a b c.
    Sss,
    /// Side b, included angle A, side c.
    Sas,
    /// Angle A, included side c, angle B.
    Asa,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a triangle and print its sides, angles, defect and law-of-sines residual.
    Solve {
        #[arg(value_enum)]
        case: Case,
        #[arg(required = true, num_args = 3)]
        values: Vec<f64>,
    },
    /// Print the bisectors from B and C with their identity residuals.
    Bisect {
        #[arg(value_enum)]
        case: Case,
        #[arg(required = true, num_args = 3)]
        values: Vec<f64>,
    },
    /// Solve tB = tC for C with A and B fixed; succeeds iff C = B is the unique root.
    Verify { a: f64, b: f64 },
    /// Check identities and bisector monotonicity on random triangles.
    Scan {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw the triangle and both bisectors in the Poincaré disk as SVG.
    Figure {
        #[arg(value_enum)]
        case: Case,
        #[arg(required = true, num_args = 3)]
        values: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Serialize)]
struct SolveReport {
    a: f64,
    b: f64,
    c: f64,
    #[serde(rename = "A")]
    angle_a: f64,
    #[serde(rename = "B")]
    angle_b: f64,
    #[serde(rename = "C")]
    angle_c: f64,
    defect: f64,
    residual: f64,
}

#[derive(Debug, Serialize)]
struct BisectReport {
    beta: f64,
    gamma: f64,
    u: f64,
    #[serde(rename = "U")]
    big_u: f64,
    v: f64,
    #[serde(rename = "V")]
    big_v: f64,
    #[serde(rename = "tB")]
    t_b: f64,
    #[serde(rename = "tC")]
    t_c: f64,
    gap: f64,
    residual_bcc: f64,
    residual_acc: f64,
    residual_cbb: f64,
    residual_abb: f64,
    residual_foot_b: f64,
    residual_foot_c: f64,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    #[serde(rename = "A")]
    angle_a: f64,
    #[serde(rename = "B")]
    angle_b: f64,
    c: f64,
    gap_to_b: f64,
    iterations: usize,
    sign_changes: usize,
    sweep_points: usize,
    passed: bool,
}

#[derive(Debug, Serialize)]
struct FigureReport {
    path: String,
}

/// Parse failures and domain errors, mapped to exit codes.
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidTriangle { .. } | Error::DomainCap { .. } | Error::InvalidPoint { .. } | Error::InvalidInput(_) => {
            EXIT_DOMAIN
        }
        Error::InvalidConfig(_) => EXIT_USAGE,
        Error::Io(_) => EXIT_OUTPUT,
        Error::NumericalFailure(_) | Error::NoBracket { .. } | Error::NonConvergence { .. } => EXIT_FAILED,
    }
}

impl CliConfig {
    fn tolerances(&self, base: ToleranceConfig) -> Result<ToleranceConfig, Failure> {
        let mut tol = base;
        if let Some(x) = self.rtol {
            tol.rtol_identity = x;
        }
        if let Some(x) = self.atol {
            tol.atol_equal = x;
        }
        if let Some(x) = self.eps_angle {
            tol.eps_angle = x;
        }
        if let Some(x) = self.max_side {
            tol.max_side = x;
        }
        tol.validate().map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(tol)
    }

    fn angle(&self, x: f64) -> f64 {
        if self.degrees {
            x.to_radians()
        } else {
            x
        }
    }
}

fn positive_values(values: &[f64]) -> Result<(), Failure> {
    for &x in values {
        if !(x.is_finite() && x > 0.0) {
            return Err(Failure::Usage(format!("expected a positive finite number, got {x}")));
        }
    }
    Ok(())
}

fn build_triangle(cfg: &CliConfig, case: Case, values: &[f64], tol: &ToleranceConfig) -> Result<Triangle, Failure> {
    let [x, y, z] = <[f64; 3]>::try_from(values)
        .map_err(|_| Failure::Usage(format!("expected three values, got {}", values.len())))?;
    positive_values(values)?;
    let t = match case {
        Case::Aaa => {
            let angles = TriangleAngles::new(cfg.angle(x), cfg.angle(y), cfg.angle(z))?;
            solve_from_angles(&angles, tol)?
        }
        Case::Sss => solve_from_sss(&TriangleSides::new(x, y, z)?, tol)?,
        Case::Sas => solve_from_sas(x, cfg.angle(y), z, tol)?,
        Case::Asa => solve_from_asa(cfg.angle(x), y, cfg.angle(z), tol)?,
    };
    Ok(t)
}

fn emit<T: Serialize, W: Write>(format: Format, report: &T, out: &mut W) -> std::io::Result<()> {
    let value = serde_json::to_value(report).map_err(std::io::Error::other)?;
    let Value::Object(map) = value else {
        unreachable!("reports serialize to objects");
    };
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &map).map_err(std::io::Error::other)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(map.keys())?;
            w.write_record(map.values().map(scalar_text))?;
            w.flush()
        }
        Format::Text => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in &map {
                writeln!(out, "{k:<width$}  {}", scalar_text(v))?;
            }
            Ok(())
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn execute<W: Write>(cfg: &CliConfig, out: &mut W) -> Result<i32, Failure> {
    match &cfg.command {
        Command::Solve { case, values } => {
            let tol = cfg.tolerances(ToleranceConfig::default())?;
            let t = build_triangle(cfg, *case, values, &tol)?;
            let (s, g) = (t.sides(), t.angles());
            let report = SolveReport {
                a: s.a(),
                b: s.b(),
                c: s.c(),
                angle_a: g.a(),
                angle_b: g.b(),
                angle_c: g.c(),
                defect: t.defect(),
                residual: law_of_sines_residual(&t),
            };
            emit(cfg.format, &report, out).map_err(Error::Io)?;
            Ok(EXIT_OK)
        }
        Command::Bisect { case, values } => {
            let tol = cfg.tolerances(ToleranceConfig::default())?;
            let t = build_triangle(cfg, *case, values, &tol)?;
            let d = bisector_lengths(&t);
            let sub = d.sub_triangle_residuals(&t);
            let ids = unconditional_identities(&d, &t);
            let report = BisectReport {
                beta: d.half_b,
                gamma: d.half_c,
                u: d.a_to_foot_b,
                big_u: d.foot_b_to_c,
                v: d.a_to_foot_c,
                big_v: d.foot_c_to_b,
                t_b: d.bisector_b,
                t_c: d.bisector_c,
                gap: d.gap(),
                residual_bcc: sub.bcc,
                residual_acc: sub.acc,
                residual_cbb: sub.cbb,
                residual_abb: sub.abb,
                residual_foot_b: ids.foot_b,
                residual_foot_c: ids.foot_c,
            };
            emit(cfg.format, &report, out).map_err(Error::Io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { a, b } => {
            let tol = cfg.tolerances(ToleranceConfig::default())?;
            positive_values(&[*a, *b])?;
            let (a, b) = (cfg.angle(*a), cfg.angle(*b));
            let root = solve_equal_bisector_angle(a, b, &tol)?;
            let gap_to_b = (root.angle_c - b).abs();
            let passed = gap_to_b < VERIFY_ANGLE_TOL && root.sign_changes == 1;
            let report = VerifyReport {
                angle_a: a,
                angle_b: b,
                c: root.angle_c,
                gap_to_b,
                iterations: root.iterations,
                sign_changes: root.sign_changes,
                sweep_points: root.sweep_points,
                passed,
            };
            emit(cfg.format, &report, out).map_err(Error::Io)?;
            Ok(if passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Scan { n, seed } => {
            let tol = cfg.tolerances(ToleranceConfig::scan())?;
            let n = usize::try_from(*n).map_err(|_| Failure::Usage(format!("sample count {n} is too large")))?;
            let report = scan_random(n, *seed, &tol)?;
            emit(cfg.format, &report, out).map_err(Error::Io)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Figure { case, values, out: path } => {
            let tol = cfg.tolerances(ToleranceConfig::default())?;
            let t = build_triangle(cfg, *case, values, &tol)?;
            render_svg(&t, &bisector_lengths(&t), path)?;
            let report = FigureReport {
                path: path.display().to_string(),
            };
            emit(cfg.format, &report, out).map_err(Error::Io)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` and diagnostics to `err`. Returns the exit
/// code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cfg, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
