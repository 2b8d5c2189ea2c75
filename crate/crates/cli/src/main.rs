//! `seshadri`: exact Seshadri constants of nef classes on geometrically ruled
//! surfaces, with tables for plotting and oracle-backed verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation
//! error. `SESHADRI_DECIMALS` sets the digits of decimal renderings.

mod output;
mod verify;

use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seshadri_core::catalog::catalog;
use seshadri_core::exactnum::{parse_rational, ExactValue};
use seshadri_core::render::{self, DEFAULT_DECIMALS};
use seshadri_core::seshadri::{near_maximal_example, scan, sqrt_self_int};
use seshadri_core::surface::transform_surface;
use seshadri_core::transform::{elm_curve, elm_lambda, exceptional_defect};
use seshadri_core::{compute, DivisorClass, Execution, PointStratum, Rational, SurfaceModel};

const DECIMALS_VAR: &str = "SESHADRI_DECIMALS";

#[derive(Parser)]
#[command(name = "seshadri", version, about = "Exact Seshadri constants on ruled surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Seshadri constant of one class at a point of a stratum.
    Compute(ComputeArgs),
    /// Table of Seshadri constants over an integer grid of classes.
    Scan(ScanArgs),
    /// Exceptional curves through a point of a stratum.
    Catalog(CatalogArgs),
    /// Elementary transformation of curves, surfaces and influence endpoints.
    Transform {
        #[command(subcommand)]
        target: TransformTarget,
    },
    /// The near-maximal class on `S_{-1}` at a point of `T_n`.
    NearMax(NearMaxArgs),
    /// Closed forms against the brute-force oracles; the report is JSON.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum DocFormat {
    Json,
    Text,
}

#[derive(Args)]
struct Location {
    /// Surface: `rational:e=E`, `unstable:g=G,e=E`, `product:g=G`,
    /// `semistable:g=G,e=E`, `dec2tor:g=G`, `ell-dec:nontorsion`,
    /// `ell-dec:torsion=K`, `ell-S0`, `ell-Sm1`.
    #[arg(long, value_parser = surface_arg)]
    surface: SurfaceModel,
    /// Point stratum: `generic`, `X0`, `X1`, `nsec=N`, `T1`, `Tk=K`, `notT`.
    #[arg(long)]
    stratum: PointStratum,
}

impl Location {
    fn admissible(&self) -> Result<(), Failure> {
        self.surface.ensure_admissible(self.stratum).map_err(|e| Failure::usage("--stratum", e))
    }
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    at: Location,
    /// Coefficient of `X0`, an integer or `p/q`.
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    a: Rational,
    /// Coefficient of the fibre, an integer or `p/q`.
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    b: Rational,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    at: Location,
    /// Inclusive range `LO..HI` of `a`, or a single integer.
    #[arg(long, allow_hyphen_values = true, value_parser = range_arg)]
    a: RangeInclusive<i64>,
    /// Inclusive range `LO..HI` of `b`, or a single integer.
    #[arg(long, allow_hyphen_values = true, value_parser = range_arg)]
    b: RangeInclusive<i64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(flatten)]
    at: Location,
    /// Largest index kept of an infinite family.
    #[arg(long, default_value_t = 8)]
    depth: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum TransformTarget {
    /// Strict transform of a curve through the centre.
    Curve {
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        a: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        b: Rational,
        /// Multiplicity at the centre.
        #[arg(long)]
        mult: u64,
        /// Invariant `e` of the source surface.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        e: i64,
        /// Invariant `e` of the target surface.
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        e_prime: i64,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
    /// Surface reached from a stratum of `S_{-1}`.
    Surface {
        #[arg(long, value_parser = surface_arg, default_value = "ell-Sm1")]
        surface: SurfaceModel,
        #[arg(long)]
        stratum: PointStratum,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
    /// Image `lambda / (lambda - 1)` of an influence endpoint `lambda > 1`.
    Lambda {
        #[arg(long, value_parser = rational_arg)]
        lambda: Rational,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
}

#[derive(Args)]
struct NearMaxArgs {
    /// Torsion order `n >= 3`.
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value_t = DocFormat::Json)]
    format: DocFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    CatalogMin,
    Transform,
    Coverage,
    Continuity,
    Feasible,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Grid size: 50 for catalog-min, 10 for feasible.
    #[arg(long)]
    grid: Option<i64>,
    /// Largest torsion order (transform, 100) or curve degree (feasible, 30).
    #[arg(long)]
    kmax: Option<u64>,
    /// Family depth: equal to kmax for transform, 25 otherwise.
    #[arg(long)]
    nmax: Option<u64>,
    /// Upper end of the coverage sweep in `lambda`.
    #[arg(long, default_value_t = 20)]
    lmax: i64,
    /// Catalog depth of the feasibility constraints.
    #[arg(long, default_value_t = 5)]
    depth: u64,
    /// Leave the dropped family members out of the coverage union.
    #[arg(long)]
    no_tail: bool,
}

enum Failure {
    Usage { flag: &'static str, message: String },
    Io(io::Error),
}

impl Failure {
    fn usage(flag: &'static str, e: impl std::fmt::Display) -> Self {
        Failure::Usage { flag, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn surface_arg(s: &str) -> Result<SurfaceModel, String> {
    let surface: SurfaceModel = s.parse().map_err(|e: seshadri_core::Error| e.to_string())?;
    surface.validate().map_err(|e| e.to_string())?;
    Ok(surface)
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn range_arg(s: &str) -> Result<RangeInclusive<i64>, String> {
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("not an integer: {t:?}"));
    // the separator is the first `..` after a possible leading sign
    let (lo, hi) = match s.get(1..).and_then(|rest| rest.find("..")).map(|i| i + 1) {
        Some(i) => {
            let hi = &s[i + 2..];
            (int(&s[..i])?, int(hi.strip_prefix('=').unwrap_or(hi))?)
        }
        None => {
            let v = int(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn decimals() -> Result<usize, Failure> {
    match std::env::var(DECIMALS_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::usage(DECIMALS_VAR, format!("expected a nonnegative integer, got {v:?}"))
        }),
        Err(_) => Ok(DEFAULT_DECIMALS),
    }
}

fn print_json(v: &Value) -> io::Result<()> {
    writeln!(io::stdout().lock(), "{v}")
}

fn print_text(s: &str) -> io::Result<()> {
    io::stdout().lock().write_all(s.as_bytes())
}

fn run_compute(args: ComputeArgs) -> Result<ExitCode, Failure> {
    let digits = decimals()?;
    args.at.admissible()?;
    let (s, x) = (args.at.surface, args.at.stratum);
    let class = DivisorClass::new(args.a, args.b);
    let r = compute(&s, x, &class).map_err(|e| Failure::usage("--a/--b", format!("{class}: {e}")))?;
    let sqrt_a2 = sqrt_self_int(&class, s.e);
    match args.format {
        Format::Json => print_json(&render::result(&r, digits))?,
        Format::Csv => output::result_csv(io::stdout().lock(), &class, &r, &sqrt_a2, digits)?,
        Format::Text => print_text(&output::result_text(&r, &sqrt_a2, digits))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn run_scan(args: ScanArgs) -> Result<ExitCode, Failure> {
    let digits = decimals()?;
    args.at.admissible()?;
    let rows = scan(&args.at.surface, args.at.stratum, args.a, args.b, Execution::default())
        .map_err(|e| Failure::usage("--stratum", e))?;
    match args.format {
        Format::Json => print_json(&output::scan_json(&rows, digits))?,
        Format::Csv => output::scan_csv(io::stdout().lock(), &rows, digits)?,
        Format::Text => print_text(&output::scan_text(&rows, digits))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn run_catalog(args: CatalogArgs) -> Result<ExitCode, Failure> {
    args.at.admissible()?;
    let (s, x) = (args.at.surface, args.at.stratum);
    let curves = catalog(&s, x, args.depth).map_err(|e| Failure::usage("--stratum", e))?;
    match args.format {
        Format::Json => print_json(&output::catalog_json(&s, x, args.depth, &curves))?,
        Format::Csv => output::catalog_csv(io::stdout().lock(), &s, &curves)?,
        Format::Text => print_text(&output::catalog_text(&s, &curves))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn emit(doc: Value, text: String, format: DocFormat) -> io::Result<()> {
    match format {
        DocFormat::Json => print_json(&doc),
        DocFormat::Text => print_text(&text),
    }
}

fn run_transform(target: TransformTarget) -> Result<ExitCode, Failure> {
    match target {
        TransformTarget::Curve { a, b, mult, e, e_prime, format } => {
            let cls = DivisorClass::new(a, b);
            let (image, m) =
                elm_curve(&cls, mult, e, e_prime).map_err(|err| Failure::usage("--a/--mult", err))?;
            let defect = exceptional_defect(&cls, mult, e);
            let doc = json!({
                "class": render::class(&cls),
                "mult": mult,
                "image": render::class(&image),
                "image_mult": m,
                "defect": render::rational(&defect),
                "image_defect": render::rational(&exceptional_defect(&image, m, e_prime)),
            });
            emit(doc, format!("{cls} mult {mult} -> {image} mult {m}\n"), format)?;
        }
        TransformTarget::Surface { surface, stratum, format } => {
            let image = transform_surface(&surface, stratum).map_err(|e| Failure::usage("--stratum", e))?;
            let doc = json!({ "surface": surface.to_string(), "stratum": stratum.to_string(), "image": image.to_string() });
            emit(doc, format!("{surface} at {stratum} -> {image}\n"), format)?;
        }
        TransformTarget::Lambda { lambda, format } => {
            let image = elm_lambda(&lambda).map_err(|e| Failure::usage("--lambda", e))?;
            let doc = json!({ "lambda": lambda.to_string(), "image": image.to_string() });
            emit(doc, format!("{lambda} -> {image}\n"), format)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_near_max(args: NearMaxArgs) -> Result<ExitCode, Failure> {
    let digits = decimals()?;
    let ex = near_maximal_example(args.n).map_err(|e| Failure::usage("--n", e))?;
    let eps = ExactValue::Rat(ex.epsilon.clone());
    let doc = json!({
        "surface": ex.surface.to_string(),
        "stratum": ex.stratum.to_string(),
        "class": render::class(&ex.class),
        "epsilon": ex.epsilon.to_string(),
        "approx": render::decimal(&eps.approx(digits)),
        "sqrtA2": ex.sqrt_a2.to_string(),
        "sqrtA2_approx": render::decimal(&ex.sqrt_a2.approx(digits)),
        "gap_bound": format!("1/{}", args.n - 1),
    });
    let text = format!(
        "{} at {}: class {}  epsilon {} ~{}  sqrtA2 {} ~{}\n",
        ex.surface,
        ex.stratum,
        ex.class,
        ex.epsilon,
        eps.approx(digits),
        ex.sqrt_a2,
        ex.sqrt_a2.approx(digits)
    );
    emit(doc, text, args.format)?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, Failure> {
    let suites = match args.suite {
        Suite::All => {
            vec![Suite::CatalogMin, Suite::Transform, Suite::Coverage, Suite::Continuity, Suite::Feasible]
        }
        one => vec![one],
    };
    let reports: Vec<verify::Report> = suites
        .into_iter()
        .map(|suite| match suite {
            Suite::CatalogMin => verify::catalog_min(args.grid.unwrap_or(50)),
            Suite::Transform => {
                let k = args.kmax.unwrap_or(100);
                verify::transform(k, args.nmax.unwrap_or(k))
            }
            Suite::Coverage => verify::coverage(args.lmax, args.nmax.unwrap_or(25), !args.no_tail),
            Suite::Continuity => verify::continuity(args.nmax.unwrap_or(25)),
            Suite::Feasible => {
                verify::feasible(args.kmax.unwrap_or(30), args.depth, args.grid.unwrap_or(10))
            }
            Suite::All => unreachable!("expanded above"),
        })
        .collect();
    let passed = reports.iter().all(verify::Report::passed);
    let doc = if args.suite == Suite::All {
        json!({ "passed": passed, "suites": reports.iter().map(verify::Report::to_json).collect::<Vec<_>>() })
    } else {
        reports[0].to_json()
    };
    print_json(&doc)?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(a) => run_compute(a),
        Command::Scan(a) => run_scan(a),
        Command::Catalog(a) => run_catalog(a),
        Command::Transform { target } => run_transform(target),
        Command::NearMax(a) => run_near_max(a),
        Command::Verify(a) => run_verify(a),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage { flag, message }) => {
            eprintln!("error: {flag}: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
