//! The `lamkit` command-line front end.
//!
//! Every subcommand reads JSON from stdin (where it reads anything) and
//! writes a single line of JSON to stdout. Exit codes: 0 success, 1
//! malformed input, 2 validation failure, 3 counterexample found, 4
//! arithmetic overflow.

pub mod fuzz;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use lamkit_core::{
    intersect_d3, intersect_relaxed, intersect_relaxed_family, random_family, reconstruct,
    render_svg, DynnikovCoords, Error, FamilyMember, IntervalFamily, PunctureCount,
    RelaxedCurve, RenderOptions, TriangleCoords, Violation, Violations,
};
use serde::Deserialize;
use serde_json::json;

pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;
pub const EXIT_OVERFLOW: i32 = 4;

pub const SEED_ENV: &str = "LAMKIT_SEED";

#[derive(Debug, Parser)]
#[command(name = "lamkit", version, about = "Integral laminations on the punctured disk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Dynnikov,
    Triangle,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert a lamination read from stdin (either form is accepted).
    Convert {
        #[arg(long, value_enum)]
        to: Form,
    },
    /// Check triangle coordinates; exits 2 and lists violations if invalid.
    Validate,
    /// Intersection number of the stdin lamination with a relaxed curve or
    /// a laminar family of them.
    Intersect {
        /// Interval `i,j` of the relaxed curve.
        #[arg(long, value_parser = parse_interval, required_unless_present = "family", conflicts_with = "family")]
        curve: Option<(usize, usize)>,
        /// JSON file holding an interval family.
        #[arg(long)]
        family: Option<PathBuf>,
    },
    /// Intersection number of two laminations on D_3, read from stdin.
    D3Intersect {
        #[arg(long, value_enum, default_value_t = Form::Dynnikov)]
        format: Form,
    },
    /// Print a random laminar interval family.
    Gen {
        #[arg(long)]
        n: usize,
        /// Upper bound on the number of curves.
        #[arg(long)]
        components: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw the stdin lamination as SVG.
    Render {
        /// Write the SVG here and print a summary instead of the document.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 400)]
        height: u32,
        #[arg(long)]
        no_arcs: bool,
        #[arg(long)]
        no_labels: bool,
    },
    /// Randomised round-trip and oracle-equivalence checks.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_interval(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `i,j`, got `{s}`"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((parse(i)?, parse(j)?))
}

#[derive(Debug)]
enum Failure {
    Malformed(String),
    Core(Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Malformed(_) => EXIT_MALFORMED,
            Failure::Core(e) => exit_code(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Malformed(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidTriangle(_)
        | Error::ZeroVector
        | Error::NonLaminar { .. }
        | Error::EmptyFamily => EXIT_INVALID,
        Error::Overflow => EXIT_OVERFLOW,
        _ => EXIT_MALFORMED,
    }
}

fn malformed(e: impl std::fmt::Display) -> Failure {
    Failure::Malformed(e.to_string())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawLamination {
    Triangle(RawTriangle),
    Dynnikov(RawDynnikov),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriangle {
    n: usize,
    alpha: Vec<i64>,
    beta: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDynnikov {
    n: usize,
    a: Vec<i64>,
    b: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    n: usize,
    components: Vec<FamilyMember>,
}

enum Lamination {
    Triangle(TriangleCoords),
    Dynnikov(DynnikovCoords),
}

impl Lamination {
    fn from_value(v: serde_json::Value, only: Option<Form>) -> Result<Self, Failure> {
        let raw: RawLamination = serde_json::from_value(v).map_err(|_| {
            malformed("expected {\"n\",\"alpha\",\"beta\"} or {\"n\",\"a\",\"b\"}")
        })?;
        match (raw, only) {
            (RawLamination::Triangle(r), None | Some(Form::Triangle)) => {
                let n = PunctureCount::new(r.n).map_err(malformed)?;
                let t = TriangleCoords::new(n, r.alpha, r.beta).map_err(malformed)?;
                Ok(Lamination::Triangle(t))
            }
            (RawLamination::Dynnikov(r), None | Some(Form::Dynnikov)) => {
                let n = PunctureCount::new(r.n).map_err(malformed)?;
                match DynnikovCoords::new(n, r.a, r.b) {
                    Ok(d) => Ok(Lamination::Dynnikov(d)),
                    Err(Error::ZeroVector) => Err(Error::ZeroVector.into()),
                    Err(e) => Err(malformed(e)),
                }
            }
            (_, Some(f)) => Err(malformed(format!("expected {f:?} coordinates").to_lowercase())),
        }
    }

    /// Validated triangle coordinates.
    fn triangle(self) -> Result<TriangleCoords, Failure> {
        match self {
            Lamination::Triangle(t) => {
                t.validate().map_err(Error::InvalidTriangle)?;
                Ok(t)
            }
            Lamination::Dynnikov(d) => Ok(d.to_triangle()?),
        }
    }

    fn dynnikov(self) -> Result<DynnikovCoords, Failure> {
        match self {
            Lamination::Triangle(t) => Ok(t.to_dynnikov()?),
            Lamination::Dynnikov(d) => Ok(d),
        }
    }
}

fn read_stdin(stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut s = String::new();
    stdin.read_to_string(&mut s).map_err(malformed)?;
    Ok(s)
}

fn parse_one(text: &str) -> Result<serde_json::Value, Failure> {
    serde_json::from_str(text).map_err(|e| malformed(format!("invalid JSON: {e}")))
}

fn read_lamination(stdin: &mut dyn Read) -> Result<Lamination, Failure> {
    Lamination::from_value(parse_one(&read_stdin(stdin)?)?, None)
}

/// Either two concatenated JSON values or a single two-element array.
fn parse_pair(text: &str) -> Result<(serde_json::Value, serde_json::Value), Failure> {
    let values = serde_json::Deserializer::from_str(text)
        .into_iter::<serde_json::Value>()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| malformed(format!("invalid JSON: {e}")))?;
    let mut values = match values.as_slice() {
        [serde_json::Value::Array(inner)] => inner.clone(),
        _ => values,
    };
    if values.len() != 2 {
        return Err(malformed(format!("expected two laminations, got {}", values.len())));
    }
    let second = values.pop().unwrap_or_default();
    let first = values.pop().unwrap_or_default();
    Ok((first, second))
}

fn to_line<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(malformed)
}

struct Output {
    stdout: String,
    code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

fn resolve_seed(flag: u64, env_seed: Option<&str>) -> Result<u64, Failure> {
    match env_seed {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| malformed(format!("{SEED_ENV} must be an unsigned integer, got `{s}`"))),
        None => Ok(flag),
    }
}

fn dispatch(cmd: Command, stdin: &mut dyn Read, env_seed: Option<&str>) -> Result<Output, Failure> {
    match cmd {
        Command::Convert { to } => {
            let l = read_lamination(stdin)?;
            let line = match to {
                Form::Triangle => to_line(&l.triangle()?)?,
                Form::Dynnikov => to_line(&l.dynnikov()?)?,
            };
            Ok(Output::ok(line))
        }
        Command::Validate => {
            let violations = match read_lamination(stdin)? {
                Lamination::Triangle(t) => t.validate().err(),
                Lamination::Dynnikov(_) => None,
            };
            Ok(validation_report(violations))
        }
        Command::Intersect { curve, family } => {
            let t = read_lamination(stdin)?.triangle()?;
            let value = match (curve, family) {
                (Some((i, j)), _) => intersect_relaxed(&t, &RelaxedCurve::new(t.n(), i, j)?)?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| malformed(format!("{}: {e}", path.display())))?;
                    let raw: RawFamily = serde_json::from_str(&text)
                        .map_err(|e| malformed(format!("{}: {e}", path.display())))?;
                    let n = PunctureCount::new(raw.n).map_err(malformed)?;
                    let f = IntervalFamily::new(n, raw.components)?;
                    intersect_relaxed_family(&t, &f)?
                }
                (None, None) => return Err(malformed("one of --curve or --family is required")),
            };
            Ok(Output::ok(value.to_string()))
        }
        Command::D3Intersect { format } => {
            let (x, y) = parse_pair(&read_stdin(stdin)?)?;
            let t1 = Lamination::from_value(x, Some(format))?.triangle()?;
            let t2 = Lamination::from_value(y, Some(format))?.triangle()?;
            Ok(Output::ok(intersect_d3(&t1, &t2)?.to_string()))
        }
        Command::Gen { n, components, seed } => {
            let seed = resolve_seed(seed, env_seed)?;
            let n = PunctureCount::new(n).map_err(malformed)?;
            let f = random_family(n, components, seed).map_err(malformed)?;
            Ok(Output::ok(to_line(&f)?))
        }
        Command::Render { out, width, height, no_arcs, no_labels } => {
            let t = read_lamination(stdin)?.triangle()?;
            let diagram = reconstruct(&t)?;
            let opts = RenderOptions {
                width,
                height,
                show_arcs: !no_arcs,
                show_labels: !no_labels,
                ..RenderOptions::default()
            };
            let svg = render_svg(&diagram, &opts).map_err(malformed)?;
            match out {
                None => Ok(Output::ok(svg.trim_end().to_string())),
                Some(path) => {
                    std::fs::write(&path, &svg)
                        .map_err(|e| malformed(format!("{}: {e}", path.display())))?;
                    Ok(Output::ok(to_line(&json!({
                        "out": path.display().to_string(),
                        "components": diagram.component_count(),
                        "bytes": svg.len(),
                    }))?))
                }
            }
        }
        Command::Fuzz { trials, n_max, seed } => {
            let seed = resolve_seed(seed, env_seed)?;
            if n_max < 3 {
                return Err(malformed("--n-max must be at least 3"));
            }
            let cfg = fuzz::Config { trials, n_max, seed };
            match fuzz::campaign(cfg) {
                Some(w) => Ok(Output { stdout: to_line(&w)?, code: EXIT_COUNTEREXAMPLE }),
                None => Ok(Output::ok(to_line(&json!({
                    "trials": trials,
                    "n_max": n_max,
                    "seed": seed,
                    "counterexample": null,
                }))?)),
            }
        }
    }
}

fn validation_report(violations: Option<Violations>) -> Output {
    match violations {
        None => Output::ok(json!({ "valid": true }).to_string()),
        Some(v) => Output {
            stdout: json!({ "valid": false, "violations": v }).to_string(),
            code: EXIT_INVALID,
        },
    }
}

/// Runs one invocation and returns its exit code. `env_seed` is the value
/// of `LAMKIT_SEED`, which takes precedence over `--seed`.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    env_seed: Option<&str>,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{text}");
            return code;
        }
    };

    // zero vectors on the validate path are a validation failure, not an error
    let is_validate = matches!(cli.command, Command::Validate);
    match dispatch(cli.command, stdin, env_seed) {
        Ok(out) => {
            let _ = writeln!(stdout, "{}", out.stdout);
            out.code
        }
        Err(Failure::Core(Error::ZeroVector)) if is_validate => {
            let out = validation_report(Some(Violations(vec![Violation::ZeroVector])));
            let _ = writeln!(stdout, "{}", out.stdout);
            out.code
        }
        Err(f) => {
            let code = f.code();
            let _ = writeln!(stderr, "{}", json!({ "error": f.to_string(), "exit_code": code }));
            code
        }
    }
}
