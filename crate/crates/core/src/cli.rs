//! The `heartfan` command line.
//!
//! Exit codes: 0 ok, 1 invariant failure, 2 bad configuration, 3 resource cap,
//! 4 not a heart cone. Output is assembled in memory and written only on success.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arrangement::{Arrangement, ConeRef, Sector, DEFAULT_MAX_CHAMBERS};
use crate::check;
use crate::dynkin::{parse_diagram, DynkinData};
use crate::error::Error;
use crate::export::ChamberListing;
use crate::linalg;
use crate::mutation;
use crate::vset::VertexSet;

pub const MAX_CHAMBERS_ENV: &str = "HEARTFAN_MAX_CHAMBERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_NOT_HEART: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "heartfan", version, about = "Mutation classes, cone arrangements and heart descriptors for affine ADE data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exchange quiver of the mutation class of 𝔍.
    Mutclass(MutclassArgs),
    /// Chambers of one sector meeting a box, with separating roots and Hasse edges.
    Chambers(ChambersArgs),
    /// Heart descriptor of the cone containing a point, or of a face of a chamber.
    Classify(ClassifyArgs),
    /// Runs the invariant suites.
    Check(CheckArgs),
}

#[derive(Args, Debug, Clone)]
struct Context {
    /// Affine diagram, e.g. `A1~`, `D4~`, `E7~`.
    #[arg(long)]
    diagram: String,
    /// Marked vertices as a comma list; empty for 𝔍 = ∅.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    marked: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
    Csv,
}

#[derive(Args, Debug)]
struct MutclassArgs {
    #[command(flatten)]
    ctx: Context,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Only mutate at vertices of the finite part.
    #[arg(long)]
    spherical: bool,
}

#[derive(Args, Debug)]
struct ChambersArgs {
    #[command(flatten)]
    ctx: Context,
    /// `+`, `0` or `-`.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    sector: String,
    #[arg(long = "box", default_value_t = 1, allow_hyphen_values = true)]
    box_level: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also check the fan axioms on all faces.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    ctx: Context,
    /// Values θ(α_k) on the surviving simple roots, comma separated; rationals allowed.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "path")]
    point: Option<String>,
    /// Wall labels to cross from the principal chamber of `--sector`.
    #[arg(long, allow_hyphen_values = true)]
    path: Option<String>,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    sector: String,
    /// Wall labels of the reached chamber set to zero.
    #[arg(long, default_value = "")]
    zeros: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    ctx: Context,
    #[arg(long = "box", default_value_t = 1, allow_hyphen_values = true)]
    box_level: i64,
    /// Flip the sign of one Cartan entry before checking.
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Failure of a command: exit code and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
    /// Report to emit even though the command failed (check failures).
    payload: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string(), payload: None }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap(_) => EXIT_CAP,
        Error::ZeroCone | Error::NotAHeartCone(_) | Error::ZeroFunctional => EXIT_NOT_HEART,
        Error::Internal(_) | Error::Overflow => EXIT_INVARIANT,
        _ => EXIT_CONFIG,
    }
}

fn config(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_CONFIG, message: msg.into(), payload: None }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| config(format!("bad {what} entry `{t}`"))))
        .collect()
}

fn parse_rational(t: &str) -> Result<num_rational::BigRational, Failure> {
    let bad = || config(format!("bad coordinate `{t}`"));
    match t.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(linalg::rat(a) / linalg::rat(b))
        }
        None => Ok(linalg::rat(t.parse().map_err(|_| bad())?)),
    }
}

fn max_chambers() -> Result<usize, Failure> {
    match std::env::var(MAX_CHAMBERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(config(format!("{MAX_CHAMBERS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(DEFAULT_MAX_CHAMBERS),
    }
}

fn data(ctx: &Context) -> Result<DynkinData, Failure> {
    let marked = parse_list(&ctx.marked, "marked")?;
    Ok(DynkinData::parse(&ctx.diagram, &marked)?)
}

fn arrangement(ctx: &Context) -> Result<Arrangement, Failure> {
    let cap = max_chambers()?;
    Ok(Arrangement::new(data(ctx)?)?.with_max_chambers(cap))
}

fn json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn mutclass(a: &MutclassArgs) -> Result<String, Failure> {
    let data = data(&a.ctx)?;
    let d = data.ambient();
    let q = if a.spherical {
        mutation::spherical_mutation_class(d, data.marked())?
    } else {
        mutation::mutation_class(d, data.marked())?
    };
    let cap = max_chambers()?;
    if q.vertices.len() > cap {
        return Err(Error::ResourceCap(cap).into());
    }
    Ok(match a.format {
        Format::Dot => q.to_dot(),
        Format::Json => json(&q.to_json()),
        Format::Csv => {
            let mut s = String::from("source,label,target\n");
            for (x, l, y) in q.named_arrows() {
                s.push_str(&format!("{x},{l},{y}\n"));
            }
            s
        }
        Format::Svg => return Err(config("mutclass has no svg output")),
    })
}

fn chambers(a: &ChambersArgs) -> Result<String, Failure> {
    let sector = Sector::parse(&a.sector)?;
    if a.box_level < 1 {
        return Err(config(format!("box level must be at least 1, got {}", a.box_level)));
    }
    let arr = arrangement(&a.ctx)?;
    let listing = ChamberListing::build(&arr, sector, a.box_level, a.verify)?;
    if let Some(f) = &listing.fan {
        if !f.ok {
            return Err(Failure {
                code: EXIT_INVARIANT,
                message: format!("fan axioms fail: {:?}", f.counterexample),
                payload: Some(json(&listing.to_json(&arr))),
            });
        }
    }
    Ok(match a.format {
        Format::Json => json(&listing.to_json(&arr)),
        Format::Dot => listing.to_dot(),
        Format::Csv => listing.to_csv(),
        Format::Svg => listing.to_svg(&arr)?,
    })
}

fn classify(a: &ClassifyArgs) -> Result<String, Failure> {
    let arr = arrangement(&a.ctx)?;
    let (cone, interval) = match (&a.point, &a.path) {
        (Some(p), None) => {
            let theta = p.split(',').map(|t| parse_rational(t.trim())).collect::<Result<Vec<_>, _>>()?;
            if theta.len() != arr.dim() {
                return Err(config(format!("point needs {} coordinates (vertices {})", arr.dim(), arr.lattice())));
            }
            if theta.iter().all(|q| *q == linalg::rat(0)) {
                return Err(Error::ZeroCone.into());
            }
            let interval = arr.numerical_interval(&theta)?;
            (arr.locate(&theta)?, Some(interval))
        }
        (None, Some(p)) => {
            let sector = Sector::parse(&a.sector)?;
            let steps = parse_list(p, "path")?;
            let c = arr.walk(&arr.principal_chamber(sector), &steps)?;
            let zeros: VertexSet = parse_list(&a.zeros, "zeros")?.into_iter().collect();
            (ConeRef::new(c, zeros)?, None)
        }
        _ => return Err(config("give exactly one of --point or --path")),
    };
    let desc = arr.classify_cone(&cone)?;
    let mut v = desc.to_json();
    if let Some(i) = interval {
        v["interval"] = i.to_json();
    }
    Ok(json(&v))
}

fn run_check(a: &CheckArgs) -> Result<String, Failure> {
    let marked = parse_list(&a.ctx.marked, "marked")?;
    let mut d = parse_diagram(&a.ctx.diagram)?;
    if let Some(&v) = marked.iter().find(|&&v| d.index(v).is_err()) {
        return Err(Error::UnknownVertex(v).into());
    }
    if a.inject_fault {
        d = d.with_cartan_fault();
    }
    let data = DynkinData::new(d, marked.into_iter().collect())?;
    if a.box_level < 1 {
        return Err(config(format!("box level must be at least 1, got {}", a.box_level)));
    }
    let report = check::run_checks(&data, a.box_level, max_chambers()?)?;
    let out = json(&report);
    if report.passed {
        Ok(out)
    } else {
        Err(Failure {
            code: EXIT_INVARIANT,
            message: format!("invariant failure: {}", report.failed().join(", ")),
            payload: Some(out),
        })
    }
}

fn emit(text: &str, output: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| config(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| config(format!("cannot write output: {e}"))),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return if code == 0 { EXIT_OK } else { EXIT_CONFIG };
        }
    };
    let (result, output) = match &cli.command {
        Command::Mutclass(a) => (mutclass(a), a.output.as_ref()),
        Command::Chambers(a) => (chambers(a), a.output.as_ref()),
        Command::Classify(a) => (classify(a), a.output.as_ref()),
        Command::Check(a) => (run_check(a), a.output.as_ref()),
    };
    let result = result.and_then(|text| emit(&text, output, out));
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if let Some(p) = &f.payload {
                let _ = out.write_all(p.as_bytes());
            }
            let _ = writeln!(err, "heartfan: {}", f.message);
            f.code
        }
    }
}
