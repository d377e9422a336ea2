//! Command-line front end.
//!
//! ```text
//! trispec classify P Q R
//! trispec spectrum P Q R --max N [--by-degree] [--include-zeros] [--format text|json|csv]
//! trispec multiplicity P Q R (--lambda L | --degree l) [--format ...]
//! trispec census P Q R [--format text|json]
//! trispec count P Q R --max N [--by-degree] [--format ...]
//! trispec verify [--suite NAME] [--max N] [--jobs K] [--seed S] [--format text|json]
//! ```
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::eigenlab::DEFAULT_SEED;
use crate::error::Error;
use crate::euclidean::{self, lattice_model, LatticeKind};
use crate::signature::{classify, group_order, GeometryClass, SpectrumEntry, TriangleSignature};
use crate::spherical::{self, angle_census, degree_below, degree_of, multiplicity_closed};
use crate::verify::{self, Suite, VerifyOptions};

pub const SEED_ENV: &str = "TRISPEC_SEED";
pub const TOOL_VERSION: &str = concat!("trispec ", env!("CARGO_PKG_VERSION"));

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "trispec", version, about = "Laplacian spectra of non-hyperbolic triangle group orbifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SigArgs {
    /// Rotation orders; any order, `inf` for an infinite one
    #[arg(value_name = "P")]
    p: String,
    #[arg(value_name = "Q")]
    q: String,
    #[arg(value_name = "R")]
    r: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the geometry class of the signature
    Classify {
        #[command(flatten)]
        sig: SigArgs,
    },
    /// List eigenvalues with their multiplicities
    Spectrum {
        #[command(flatten)]
        sig: SigArgs,
        /// Largest eigenvalue (or degree, with --by-degree)
        #[arg(long)]
        max: u64,
        /// Bound spherical spectra by the degree l instead of λ = l(l+1)
        #[arg(long)]
        by_degree: bool,
        /// Keep eigenvalue candidates whose multiplicity is zero
        #[arg(long)]
        include_zeros: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Multiplicity of a single eigenvalue
    Multiplicity {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, conflicts_with = "degree", required_unless_present = "degree")]
        lambda: Option<String>,
        /// Spherical degree l (λ = l(l+1))
        #[arg(long)]
        degree: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rotation-angle census (spherical) or lattice model (euclidean)
    Census {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Eigenvalue counting function with its Weyl leading term
    Count {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        max: u64,
        #[arg(long)]
        by_degree: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the cross-verification suites
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Main sweep bound of the suite (suite-specific default)
        #[arg(long)]
        max: Option<u64>,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        /// Seed for sampled checks; falls back to $TRISPEC_SEED
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    pub normalization: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

/// Top-level JSON document for spectra and single multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub group: [u64; 3],
    pub geometry: GeometryClass,
    pub entries: Vec<SpectrumEntry>,
    pub metadata: Metadata,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRecord {
    pub group: [u64; 3],
    pub geometry: GeometryClass,
    /// Degree bound `L` (spherical) or eigenvalue bound `Λ` (euclidean).
    pub bound: u64,
    pub bound_kind: String,
    pub count: u64,
    pub leading_term: f64,
    pub remainder: f64,
    pub metadata: Metadata,
}

fn normalization(sig: TriangleSignature) -> String {
    match classify(sig) {
        GeometryClass::Spherical => "unit sphere; λ_l = l(l+1)".into(),
        GeometryClass::Euclidean => match lattice_model(sig).map(|m| m.kind) {
            Ok(LatticeKind::Square) => "translation lengths tau = (2π, 0), sigma = (0, 2π)".into(),
            _ => "translation lengths tau = (4π/√3, 0), sigma = (2π/√3, 2π)".into(),
        },
        GeometryClass::Hyperbolic => "unsupported".into(),
    }
}

fn metadata(sig: TriangleSignature) -> Metadata {
    Metadata {
        tool_version: TOOL_VERSION.into(),
        normalization: normalization(sig),
        seed: None,
    }
}

/// Formats with 12 significant digits, dropping trailing zeros.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

fn round12(x: f64) -> f64 {
    sig12(x).parse().unwrap_or(x)
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<std::io::Error> for Usage {
    fn from(e: std::io::Error) -> Self {
        // a closed pipe downstream is not an error
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Usage(String::new());
        }
        Usage(format!("write failed: {e}"))
    }
}

fn parse_sig(a: &SigArgs) -> Result<TriangleSignature, Usage> {
    Ok(TriangleSignature::parse(&a.p, &a.q, &a.r)?)
}

fn spectral_sig(a: &SigArgs) -> Result<TriangleSignature, Usage> {
    let sig = parse_sig(a)?;
    if classify(sig) == GeometryClass::Hyperbolic {
        return Err(Usage(format!(
            "{sig} is hyperbolic; only spherical and euclidean triangle groups are supported"
        )));
    }
    Ok(sig)
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Usage(msg)) if msg.is_empty() => EXIT_OK,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Usage> {
    match cmd {
        Command::Classify { sig } => {
            let sig = parse_sig(&sig)?;
            writeln!(out, "{}", classify(sig))?;
        }
        Command::Spectrum {
            sig,
            max,
            by_degree,
            include_zeros,
            format,
        } => {
            let sig = spectral_sig(&sig)?;
            let entries = spectrum_entries(sig, max, by_degree, include_zeros)?;
            write_entries(out, sig, entries, format)?;
        }
        Command::Multiplicity {
            sig,
            lambda,
            degree,
            format,
        } => {
            let sig = spectral_sig(&sig)?;
            let entry = single_entry(sig, lambda.as_deref(), degree)?;
            if format == Format::Text {
                writeln!(out, "{}", entry.map_or(0, |e| e.mult))?;
            } else {
                write_entries(out, sig, entry.into_iter().collect(), format)?;
            }
        }
        Command::Census { sig, format } => {
            let sig = spectral_sig(&sig)?;
            write_census(out, sig, format)?;
        }
        Command::Count {
            sig,
            max,
            by_degree,
            format,
        } => {
            let sig = spectral_sig(&sig)?;
            let record = count_record(sig, max, by_degree)?;
            write_count(out, &record, format)?;
        }
        Command::Verify {
            suite,
            max,
            jobs,
            seed,
            format,
        } => return run_verify(out, suite, max, jobs, seed, format),
    }
    Ok(EXIT_OK)
}

fn spectrum_entries(
    sig: TriangleSignature,
    max: u64,
    by_degree: bool,
    include_zeros: bool,
) -> Result<Vec<SpectrumEntry>, Usage> {
    match classify(sig) {
        GeometryClass::Spherical => {
            let max_degree = if by_degree { max } else { degree_below(max) };
            Ok(spherical::spectrum_by_degree(sig, max_degree, include_zeros)?)
        }
        GeometryClass::Euclidean => {
            if by_degree {
                return Err(Usage("--by-degree applies to spherical groups only".into()));
            }
            Ok(euclidean::spectrum(sig, max, include_zeros)?)
        }
        GeometryClass::Hyperbolic => unreachable!("rejected by spectral_sig"),
    }
}

fn single_entry(
    sig: TriangleSignature,
    lambda: Option<&str>,
    degree: Option<u64>,
) -> Result<Option<SpectrumEntry>, Usage> {
    let geometry = classify(sig);
    if let Some(l) = degree {
        if geometry != GeometryClass::Spherical {
            return Err(Usage("--degree applies to spherical groups only".into()));
        }
        return Ok(Some(SpectrumEntry::spherical(l, multiplicity_closed(sig, l)?)));
    }
    let text = lambda.ok_or_else(|| Usage("one of --lambda or --degree is required".into()))?;
    let exact = text.trim().parse::<u64>().ok();
    let real: f64 = match exact {
        Some(v) => v as f64,
        None => text
            .trim()
            .parse()
            .map_err(|_| Usage(format!("--lambda expects a number, got {text:?}")))?,
    };
    match (geometry, exact) {
        (GeometryClass::Spherical, Some(v)) => Ok(match degree_of(v) {
            Some(l) => Some(SpectrumEntry::spherical(l, multiplicity_closed(sig, l)?)),
            None => Some(SpectrumEntry {
                lambda: v,
                mult: 0,
                degree_l: None,
            }),
        }),
        (GeometryClass::Euclidean, Some(v)) => Ok(Some(SpectrumEntry::euclidean(
            v,
            euclidean::orbifold_multiplicity(sig, v)?,
        ))),
        (_, None) => {
            if real.is_finite() && real >= 0.0 && real.fract() == 0.0 && real < u64::MAX as f64 {
                return single_entry(sig, Some(&format!("{}", real as u64)), None);
            }
            // eigenvalues are non-negative integers under both normalizations
            Ok(None)
        }
        (GeometryClass::Hyperbolic, _) => unreachable!("rejected by spectral_sig"),
    }
}

fn write_entries(
    out: &mut dyn Write,
    sig: TriangleSignature,
    entries: Vec<SpectrumEntry>,
    format: Format,
) -> Result<(), Usage> {
    match format {
        Format::Json => {
            let record = OutputRecord {
                group: sig.orders(),
                geometry: classify(sig),
                entries,
                metadata: metadata(sig),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&record).map_err(|e| Usage(e.to_string()))?)?;
        }
        Format::Csv => {
            writeln!(out, "lambda,degree_l,multiplicity")?;
            for e in &entries {
                let degree = e.degree_l.map(|l| l.to_string()).unwrap_or_default();
                writeln!(out, "{},{},{}", e.lambda, degree, e.mult)?;
            }
        }
        Format::Text => {
            writeln!(out, "# {sig} {}", classify(sig))?;
            let spherical = classify(sig) == GeometryClass::Spherical;
            if spherical {
                writeln!(out, "# l\tlambda\tmultiplicity")?;
            } else {
                writeln!(out, "# lambda\tmultiplicity")?;
            }
            for e in &entries {
                match e.degree_l {
                    Some(l) => writeln!(out, "{l}\t{}\t{}", e.lambda, e.mult)?,
                    None => writeln!(out, "{}\t{}", e.lambda, e.mult)?,
                }
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CensusJson {
    group: [u64; 3],
    geometry: GeometryClass,
    order: u64,
    angles: Vec<CensusAngleJson>,
}

#[derive(Serialize)]
struct CensusAngleJson {
    turn: String,
    degrees: f64,
    count: u64,
}

#[derive(Serialize)]
struct LatticeJson {
    group: [u64; 3],
    geometry: GeometryClass,
    lattice: LatticeKind,
    tau: [String; 2],
    sigma: [String; 2],
    tau_numeric: [f64; 2],
    sigma_numeric: [f64; 2],
    dual_form: [i64; 3],
    quotient_order: u64,
    divisor_formula: String,
    weyl_coefficient: f64,
    metadata: Metadata,
}

fn pi_multiple(v: &euclidean::QSqrt3) -> String {
    if v.to_f64() == 0.0 {
        "0".into()
    } else {
        format!("({v})π")
    }
}

fn write_census(out: &mut dyn Write, sig: TriangleSignature, format: Format) -> Result<(), Usage> {
    match classify(sig) {
        GeometryClass::Spherical => {
            let census = angle_census(sig)?;
            let order = group_order(sig)?;
            if format == Format::Json {
                let doc = CensusJson {
                    group: sig.orders(),
                    geometry: GeometryClass::Spherical,
                    order,
                    angles: census
                        .entries
                        .iter()
                        .map(|e| CensusAngleJson {
                            turn: e.turn.to_string(),
                            degrees: round12(e.angle().to_degrees()),
                            count: e.count,
                        })
                        .collect(),
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(|e| Usage(e.to_string()))?)?;
            } else {
                writeln!(out, "# {sig} spherical, order {order}")?;
                writeln!(out, "# angle/2π\tdegrees\tcount")?;
                for e in &census.entries {
                    writeln!(out, "{}\t{}\t{}", e.turn, sig12(e.angle().to_degrees()), e.count)?;
                }
            }
        }
        GeometryClass::Euclidean => {
            let m = lattice_model(sig)?;
            let (a, b, c) = m.dual_form.coefficients();
            let f = m.divisor_formula;
            let formula = format!(
                "{}·(d_({},{}) − d_({},{}))",
                f.scale, f.plus, f.modulus, f.minus, f.modulus
            );
            if format == Format::Json {
                let doc = LatticeJson {
                    group: sig.orders(),
                    geometry: GeometryClass::Euclidean,
                    lattice: m.kind,
                    tau: [pi_multiple(&m.tau[0]), pi_multiple(&m.tau[1])],
                    sigma: [pi_multiple(&m.sigma[0]), pi_multiple(&m.sigma[1])],
                    tau_numeric: m.tau_vector().map(round12),
                    sigma_numeric: m.sigma_vector().map(round12),
                    dual_form: [a, b, c],
                    quotient_order: m.quotient_order,
                    divisor_formula: formula,
                    weyl_coefficient: round12(m.weyl_coefficient()),
                    metadata: metadata(sig),
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(|e| Usage(e.to_string()))?)?;
            } else {
                writeln!(out, "# {sig} euclidean, {:?} lattice", m.kind)?;
                writeln!(out, "tau\t({}, {})", pi_multiple(&m.tau[0]), pi_multiple(&m.tau[1]))?;
                writeln!(out, "sigma\t({}, {})", pi_multiple(&m.sigma[0]), pi_multiple(&m.sigma[1]))?;
                writeln!(out, "dual_form\t{a}m² + {b}mn + {c}n²")?;
                writeln!(out, "quotient_order\t{}", m.quotient_order)?;
                writeln!(out, "torus_multiplicity\t{formula}")?;
                writeln!(out, "weyl_coefficient\t{}", sig12(m.weyl_coefficient()))?;
            }
        }
        GeometryClass::Hyperbolic => unreachable!("rejected by spectral_sig"),
    }
    Ok(())
}

fn count_record(sig: TriangleSignature, max: u64, by_degree: bool) -> Result<CountRecord, Usage> {
    let geometry = classify(sig);
    let (bound, bound_kind, count, leading) = match geometry {
        GeometryClass::Spherical => {
            let l = if by_degree { max } else { degree_below(max) };
            (
                l,
                "degree".to_string(),
                spherical::counting_spherical(sig, l)?,
                spherical::weyl_leading_spherical(sig, l)?,
            )
        }
        GeometryClass::Euclidean => {
            if by_degree {
                return Err(Usage("--by-degree applies to spherical groups only".into()));
            }
            let r = euclidean::counting_euclidean(sig, max)?;
            (max, "lambda".to_string(), r.count, r.leading_term())
        }
        GeometryClass::Hyperbolic => unreachable!("rejected by spectral_sig"),
    };
    Ok(CountRecord {
        group: sig.orders(),
        geometry,
        bound,
        bound_kind,
        count,
        leading_term: round12(leading),
        remainder: round12(count as f64 - leading),
        metadata: metadata(sig),
    })
}

fn write_count(out: &mut dyn Write, r: &CountRecord, format: Format) -> Result<(), Usage> {
    match format {
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(r).map_err(|e| Usage(e.to_string()))?)?;
        }
        Format::Csv => {
            writeln!(out, "bound_kind,bound,count,leading_term,remainder")?;
            writeln!(
                out,
                "{},{},{},{},{}",
                r.bound_kind,
                r.bound,
                r.count,
                sig12(r.leading_term),
                sig12(r.remainder)
            )?;
        }
        Format::Text => {
            writeln!(out, "{}\t{}", r.bound_kind, r.bound)?;
            writeln!(out, "count\t{}", r.count)?;
            writeln!(out, "weyl_leading\t{}", sig12(r.leading_term))?;
            writeln!(out, "remainder\t{}", sig12(r.remainder))?;
        }
    }
    Ok(())
}

fn resolve_seed(seed: Option<u64>) -> Result<u64, Usage> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn run_verify(
    out: &mut dyn Write,
    suite: Suite,
    max: Option<u64>,
    jobs: Option<usize>,
    seed: Option<u64>,
    format: Format,
) -> Result<i32, Usage> {
    let seed = resolve_seed(seed)?;
    if jobs == Some(0) {
        return Err(Usage("--jobs must be at least 1".into()));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = jobs {
        builder = builder.num_threads(k);
    }
    let pool = builder.build().map_err(|e| Usage(e.to_string()))?;
    let opts = VerifyOptions { max, seed };
    let reports = pool.install(|| verify::run(suite, opts));
    let passed = reports.iter().all(|r| r.passed());

    match format {
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&reports).map_err(|e| Usage(e.to_string()))?)?;
        }
        Format::Text | Format::Csv => {
            let (mut ok, mut total) = (0, 0);
            for r in &reports {
                for c in &r.checks {
                    total += 1;
                    ok += c.passed as usize;
                    writeln!(
                        out,
                        "{} [{}] {} ({})",
                        if c.passed { "PASS" } else { "FAIL" },
                        r.suite,
                        c.name,
                        c.detail
                    )?;
                }
            }
            writeln!(out, "{ok}/{total} checks passed (seed {seed})")?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
