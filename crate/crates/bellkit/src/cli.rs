//! Argument parsing and command execution for the `bellkit` executable.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use bellkit_core::analysis::{
    asymptotic_zero_probability, binomial_identity_sides, max_b0_family, zero_probability,
    ClassificationReport, MAX_EXHAUSTIVE_SITES,
};
use bellkit_core::hadamard::HadamardMatrix;
use bellkit_core::inequality::{CoefficientVector, MAX_ENUMERATION_SITES};
use bellkit_core::lhv::{tilt_sum, SingletSetup};
use bellkit_core::polynomial::{b0_from_uv, b_uv, s_poly, BellPolynomial, SummandTable, UVIndex};
use bellkit_core::{analysis, Error};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::input::{parse_coeffs, parse_mask, parse_rational, parse_record, InputRecord};
use crate::output::{emit, error_line, EnumPayload, OutputRecord};
use crate::parallel::{classify_exhaustive, classify_sampled, max_lhv_parallel};

/// Environment variable overriding the enumeration and exhaustive-classification caps.
pub const MAX_N_ENV: &str = "BELLKIT_MAX_N";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

const ENUM_CHUNK: u64 = 1 << 12;
const ENUM_BATCH: u64 = 64;
const VERIFY_BATCH: usize = 4096;

#[derive(Parser, Debug)]
#[command(
    name = "bellkit",
    version,
    about = "Generate, enumerate and verify two-setting correlation Bell inequalities"
)]
pub struct Cli {
    /// Worker threads for parallel commands (default: available parallelism)
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Sylvester Hadamard matrix of order 2^N
    Hadamard(HadamardArgs),
    /// Build one inequality from a sign mask
    Gen(GenArgs),
    /// List every inequality for N sites
    Enum(EnumArgs),
    /// Bell polynomial operations
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Compute the local hidden-variable maximum and check tightness
    Verify(VerifyArgs),
    /// Print the singlet correlation table for the three-angle setup
    Singlet(SingletArgs),
    /// Count term statistics over all (or sampled) inequalities
    Classify(ClassifyArgs),
    /// Constructions of inequality families
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Check the binomial identity and the zero-coefficient probability
    Identity(IdentityArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GridFormat {
    #[value(alias = "text")]
    Ascii,
    Json,
    Pbm,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum EnumFormat {
    Json,
    #[value(alias = "text")]
    Shorthand,
    Traditional,
}

#[derive(Args, Debug)]
struct HadamardArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value = "ascii")]
    format: GridFormat,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: u32,
    /// Sign mask: bit j set means c_j = -1 (decimal, 0b or 0x)
    #[arg(long)]
    c: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct EnumArgs {
    #[arg(long)]
    n: u32,
    /// Allow site counts above the materialization cap
    #[arg(long)]
    stream: bool,
    /// Emit standard forms instead of raw H c vectors
    #[arg(long)]
    standard_form: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: EnumFormat,
}

#[derive(Subcommand, Debug)]
enum PolyCommand {
    /// B_uv for one sign number u and parity number v
    Buv(BuvArgs),
    /// Every B_uv for N <= 3
    Table(TableArgs),
    /// The summand s_k
    S(SummandArgs),
    /// Lift two N-site polynomials with equal bound to N+1 sites
    Bowtie(BowtieArgs),
    /// Exact value at a rational point
    Eval(EvalArgs),
    /// Polynomial view of coefficient vectors
    Show(ShowArgs),
}

#[derive(Args, Debug)]
struct BuvArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    u: String,
    #[arg(long)]
    v: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct SummandArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct BowtieArgs {
    /// Sites of the operands; inferred from the longer list when absent
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n", "u", "v"])]
    coeffs: Option<String>,
    #[arg(long, requires_all = ["u", "v"])]
    n: Option<u32>,
    #[arg(long, requires = "n")]
    u: Option<String>,
    #[arg(long, requires = "n")]
    v: Option<String>,
    /// `p/q`, an integer or a finite decimal
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// JSON-lines file of records with a `coeffs` array, `-` for standard input
    #[arg(long)]
    input: Option<String>,
}

#[derive(Args, Debug)]
struct ShowArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    /// Claimed bound; defaults to the record's `bound` or |sum of coefficients|
    #[arg(long)]
    bound: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct SingletArgs {
    /// Rotation of the second apparatus in radians
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, conflicts_with = "sample")]
    exhaustive: bool,
    /// Number of uniformly drawn sign masks
    #[arg(long, requires = "seed")]
    sample: Option<u64>,
    #[arg(long, requires = "sample")]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// Standard forms with the largest coefficient of E(k, ..., k)
    #[command(name = "max-b0")]
    MaxB0(MaxB0Args),
}

#[derive(Args, Debug)]
struct MaxB0Args {
    #[arg(long)]
    n: u32,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    k: u8,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct IdentityArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = Context::new(cli.jobs)
        .and_then(|ctx| ctx.execute(cli.command, stdin, stdout))
        .and_then(|()| stdout.flush().map_err(CliError::from));
    match outcome {
        Ok(()) => EXIT_OK,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_line(&e));
            EXIT_INVALID
        }
    }
}

struct Context {
    pool: Option<rayon::ThreadPool>,
    max_n: Option<u32>,
}

impl Context {
    fn new(jobs: Option<u16>) -> Result<Self> {
        let pool = match jobs {
            Some(j) => Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j.into())
                    .build()
                    .map_err(|e| CliError::Invalid(e.to_string()))?,
            ),
            None => None,
        };
        let max_n = match std::env::var(MAX_N_ENV) {
            Ok(text) => Some(
                text.trim()
                    .parse::<u32>()
                    .map_err(|_| CliError::Parse { what: MAX_N_ENV, input: text.clone() })?,
            ),
            Err(std::env::VarError::NotPresent) => None,
            Err(e) => return Err(CliError::Invalid(format!("{MAX_N_ENV}: {e}"))),
        };
        Ok(Context { pool, max_n })
    }

    fn par<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    fn execute(&self, command: Command, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<()> {
        match command {
            Command::Hadamard(a) => hadamard(a, out),
            Command::Gen(a) => gen(a, out),
            Command::Enum(a) => self.enumerate(a, out),
            Command::Poly(p) => self.poly(p, stdin, out),
            Command::Verify(a) => self.verify(a, stdin, out),
            Command::Singlet(a) => singlet(a, out),
            Command::Classify(a) => self.classify(a, out),
            Command::Construct(ConstructCommand::MaxB0(a)) => self.max_b0(a, out),
            Command::Identity(a) => identity(a, out),
        }
    }

    fn enumerate(&self, a: EnumArgs, out: &mut dyn Write) -> Result<()> {
        let cap = self.max_n.unwrap_or(4);
        if a.n > MAX_ENUMERATION_SITES {
            return Err(Error::TooManySites { sites: a.n, cap: MAX_ENUMERATION_SITES }.into());
        }
        if a.n > cap && !a.stream {
            return Err(Error::StreamingRequired { sites: a.n, cap }.into());
        }
        let total = analysis::mask_count(a.n)?;
        let chunks = total.div_ceil(ENUM_CHUNK);
        let mut first = 0;
        while first < chunks {
            let last = (first + ENUM_BATCH).min(chunks);
            let texts = self.par(|| {
                (first..last)
                    .into_par_iter()
                    .map(|i| enum_chunk(&a, i * ENUM_CHUNK..((i + 1) * ENUM_CHUNK).min(total)))
                    .collect::<Result<Vec<String>>>()
            })?;
            for text in texts {
                out.write_all(text.as_bytes())?;
            }
            first = last;
        }
        Ok(())
    }

    fn poly(&self, command: PolyCommand, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<()> {
        match command {
            PolyCommand::Buv(a) => {
                let index = uv_index(a.n, &a.u, &a.v)?;
                let p = b_uv(index);
                match a.format {
                    Format::Text => writeln!(out, "{p}")?,
                    Format::Json => emit(out, "poly buv", uv_payload(index, &p))?,
                }
            }
            PolyCommand::Table(a) => {
                if a.n > 3 {
                    return Err(Error::TooManySites { sites: a.n, cap: 3 }.into());
                }
                let table = SummandTable::new(a.n)?;
                for index in UVIndex::all(a.n)? {
                    let p = table.b_uv(index)?;
                    match a.format {
                        Format::Text => writeln!(out, "B_{{{},{}}}(z) = {p}", index.u(), index.v())?,
                        Format::Json => emit(out, "poly table", uv_payload(index, &p))?,
                    }
                }
            }
            PolyCommand::S(a) => {
                let p = s_poly(a.n, a.k)?;
                match a.format {
                    Format::Text => writeln!(out, "{p}")?,
                    Format::Json => emit(
                        out,
                        "poly s",
                        json!({"n": a.n, "k": a.k, "coeffs": p.coeffs(), "polynomial": p.to_string()}),
                    )?,
                }
            }
            PolyCommand::Bowtie(a) => {
                let (left, right) = (parse_coeffs(&a.a)?, parse_coeffs(&a.b)?);
                let sites = match a.n {
                    Some(n) => n,
                    None => sites_for_len(left.len().max(right.len())),
                };
                let p = BellPolynomial::new(sites, left)?.bowtie(&BellPolynomial::new(sites, right)?)?;
                match a.format {
                    Format::Text => writeln!(out, "{p}")?,
                    Format::Json => emit(out, "poly bowtie", poly_payload(&p))?,
                }
            }
            PolyCommand::Eval(a) => {
                let p = match (&a.coeffs, a.n, &a.u, &a.v) {
                    (Some(c), ..) => {
                        let c = parse_coeffs(c)?;
                        BellPolynomial::new(sites_for_len(c.len()), c)?
                    }
                    (None, Some(n), Some(u), Some(v)) => b_uv(uv_index(n, u, v)?),
                    _ => return Err(CliError::Invalid("poly eval needs --coeffs or --n/--u/--v".into())),
                };
                let z = parse_rational(&a.z)?;
                let value = p.eval(&z);
                match a.format {
                    Format::Text => writeln!(out, "{value}")?,
                    Format::Json => emit(
                        out,
                        "poly eval",
                        json!({
                            "n": p.sites(),
                            "coeffs": p.coeffs(),
                            "z": z.to_string(),
                            "value": value.to_string(),
                        }),
                    )?,
                }
            }
            PolyCommand::Show(a) => {
                let mut show = |record: InputRecord, _: usize| -> Result<()> {
                    let p = BellPolynomial::new(sites_for_len(record.coeffs.len()), record.coeffs)?;
                    match a.format {
                        Format::Text => writeln!(out, "{p}")?,
                        Format::Json => {
                            let mut payload = poly_payload(&p);
                            payload["normalized"] = json!(p.normalize().to_string());
                            payload["at_one"] = json!(p.at_one());
                            payload["at_minus_one"] = json!(p.at_minus_one());
                            if let Some(c) = record.c {
                                payload["c"] = json!(c);
                            }
                            emit(out, "poly show", payload)?;
                        }
                    }
                    Ok(())
                };
                for_each_source(&a.source, stdin, &mut show)?;
            }
        }
        Ok(())
    }

    fn verify(&self, a: VerifyArgs, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<()> {
        let mut batch: Vec<(InputRecord, usize)> = Vec::new();
        let flush = |batch: &mut Vec<(InputRecord, usize)>, out: &mut dyn Write| -> Result<()> {
            let results = self.par(|| {
                batch
                    .par_iter()
                    .map(|(record, line)| verify_one(record, a.bound, *line))
                    .collect::<Result<Vec<_>>>()
            })?;
            for (payload, text) in results {
                match a.format {
                    Format::Text => writeln!(out, "{text}")?,
                    Format::Json => emit(out, "verify", payload)?,
                }
            }
            batch.clear();
            Ok(())
        };
        let mut collect = |record: InputRecord, line: usize| -> Result<()> {
            batch.push((record, line));
            if batch.len() >= VERIFY_BATCH {
                flush(&mut batch, out)?;
            }
            Ok(())
        };
        for_each_source(&a.source, stdin, &mut collect)?;
        flush(&mut batch, out)
    }

    fn classify(&self, a: ClassifyArgs, out: &mut dyn Write) -> Result<()> {
        let (stats, exhaustive) = match a.sample {
            Some(samples) => {
                let seed = a.seed.expect("clap enforces --seed with --sample");
                if samples == 0 {
                    return Err(CliError::Invalid("--sample must be positive".into()));
                }
                (self.par(|| classify_sampled(a.n, samples, seed))?, false)
            }
            None => {
                let cap = self.max_n.unwrap_or(MAX_EXHAUSTIVE_SITES);
                if a.n > cap {
                    return Err(CliError::Invalid(format!(
                        "exhaustive classification is capped at N = {cap}; use --sample M --seed S \
                         or raise {MAX_N_ENV}"
                    )));
                }
                (self.par(|| classify_exhaustive(a.n))?, true)
            }
        };
        let report = stats.into_report(exhaustive);
        match a.format {
            Format::Text => out.write_all(report_text(&report, a.seed).as_bytes())?,
            Format::Json => emit(out, "classify", report_json(&report, a.seed))?,
        }
        Ok(())
    }

    fn max_b0(&self, a: MaxB0Args, out: &mut dyn Write) -> Result<()> {
        let family = max_b0_family(a.n, a.k)?;
        let position = if a.k == 0 { 0 } else { (1usize << a.n) - 1 };
        let checked = self.par(|| {
            family
                .par_iter()
                .map(|p| {
                    let v = p.to_coefficient_vector()?;
                    Ok((max_lhv_parallel(&v)?, v))
                })
                .collect::<std::result::Result<Vec<_>, Error>>()
        })?;
        for (i, (p, (best, v))) in family.iter().zip(checked).enumerate() {
            match a.format {
                Format::Text => writeln!(out, "{p}")?,
                Format::Json => {
                    let mut payload = poly_payload(p);
                    payload["k"] = json!(a.k);
                    payload["index"] = json!(i);
                    payload["coefficient"] = json!(v.coeffs()[position]);
                    payload["bound"] = json!(v.bound());
                    payload["terms"] = json!(v.terms());
                    payload["max_lhv"] = json!(best);
                    payload["tight"] = json!(best == v.bound());
                    emit(out, "construct max-b0", payload)?;
                }
            }
        }
        Ok(())
    }
}

fn hadamard(a: HadamardArgs, out: &mut dyn Write) -> Result<()> {
    let h = HadamardMatrix::build(a.n)?;
    match a.format {
        GridFormat::Ascii => write!(out, "{h}")?,
        GridFormat::Json => {
            let rows: Vec<Vec<i64>> = h.rows().collect();
            emit(out, "hadamard", json!({"n": a.n, "order": h.order(), "rows": rows}))?;
        }
        GridFormat::Pbm => {
            writeln!(out, "P1\n{0} {0}", h.order())?;
            for row in h.rows() {
                let line: Vec<&str> = row.iter().map(|&x| if x == 1 { "1" } else { "0" }).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
        }
    }
    Ok(())
}

fn gen(a: GenArgs, out: &mut dyn Write) -> Result<()> {
    let mask = parse_mask(&a.c)?;
    let mask = u64::try_from(mask).map_err(|_| Error::IndexOutOfRange { index: mask, len: 1 << 64 })?;
    let v = CoefficientVector::from_sign_mask(a.n, mask)?;
    let reduced = v.reduced();
    let standard = v.standard_form();
    match a.format {
        Format::Text => {
            writeln!(out, "coeffs {v}")?;
            writeln!(out, "bound {}", v.bound())?;
            writeln!(out, "terms {}", v.terms())?;
            writeln!(out, "standard form {}", *standard)?;
            writeln!(out, "{}", reduced.to_traditional())?;
        }
        Format::Json => emit(
            out,
            "gen",
            json!({
                "n": a.n,
                "c": mask,
                "coeffs": v.coeffs(),
                "bound": v.bound(),
                "terms": v.terms(),
                "standard_form": standard.coeffs(),
                "traditional": reduced.to_traditional(),
            }),
        )?,
    }
    Ok(())
}

fn enum_chunk(a: &EnumArgs, masks: std::ops::Range<u64>) -> Result<String> {
    let mut text = String::new();
    for (c, raw) in bellkit_core::inequality::enumerate_range(a.n, masks)? {
        let v = if a.standard_form { raw.standard_form().into_vector() } else { raw };
        match a.format {
            EnumFormat::Json => {
                let payload =
                    EnumPayload { n: a.n, c, coeffs: v.coeffs(), bound: v.bound(), terms: v.terms() };
                text.push_str(&OutputRecord::new("enum", payload).to_line());
            }
            EnumFormat::Shorthand => text.push_str(&v.shorthand()),
            EnumFormat::Traditional => text.push_str(&v.to_traditional()),
        }
        text.push('\n');
    }
    Ok(text)
}

fn verify_one(record: &InputRecord, bound: Option<u64>, line: usize) -> Result<(Value, String)> {
    let v = CoefficientVector::from_coeffs(record.coeffs.clone())
        .map_err(|e| CliError::Input { line, message: e.to_string() })?;
    let claimed = bound.or(record.bound).unwrap_or(v.bound());
    let best = max_lhv_parallel(&v)?;
    let mut payload = json!({
        "n": v.sites(),
        "coeffs": v.coeffs(),
        "bound": claimed,
        "max_lhv": best,
        "tight": best == claimed,
        "valid": best <= claimed,
    });
    if let Some(c) = record.c {
        payload["c"] = json!(c);
    }
    let text = format!("{v} max_lhv {best} bound {claimed} tight {}", best == claimed);
    Ok((payload, text))
}

fn for_each_source(
    source: &Source,
    stdin: &mut dyn BufRead,
    f: &mut dyn FnMut(InputRecord, usize) -> Result<()>,
) -> Result<()> {
    if let Some(c) = &source.coeffs {
        return f(InputRecord { coeffs: parse_coeffs(c)?, bound: None, c: None }, 0);
    }
    let path = source.input.as_deref().expect("clap requires one source");
    let mut file_reader;
    let reader: &mut dyn BufRead = if path == "-" {
        stdin
    } else {
        file_reader = io::BufReader::new(std::fs::File::open(path)?);
        &mut file_reader
    };
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        f(parse_record(&line, i + 1)?, i + 1)?;
    }
    Ok(())
}

fn singlet(a: SingletArgs, out: &mut dyn Write) -> Result<()> {
    let setup = SingletSetup::default().tilted(a.phi);
    let table = setup.table();
    match a.format {
        Format::Text => {
            writeln!(out, "E(i,j)     j=1      j=2      j=3")?;
            for (i, row) in table.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|e| format!("{:+.4}", clean_zero(*e))).collect();
                writeln!(out, "i={}    {}", i + 1, cells.join("  "))?;
            }
        }
        Format::Json => emit(
            out,
            "singlet",
            json!({
                "phi": a.phi,
                "theta": setup.theta,
                "eta": setup.eta,
                "table": table,
                "mean_product": setup.mean_product(),
                "tilt_sum": tilt_sum(a.phi),
            }),
        )?,
    }
    Ok(())
}

// Keeps rounding noise such as -1e-17 from printing as -0.0000.
fn clean_zero(x: f64) -> f64 {
    if x.abs() < 5e-5 {
        0.0
    } else {
        x
    }
}

fn identity(a: IdentityArgs, out: &mut dyn Write) -> Result<()> {
    let (lhs, rhs) = binomial_identity_sides(a.n)?;
    let exact = zero_probability(a.n, 0)?;
    let exact_f64 = exact.to_f64().ok_or(Error::Overflow)?;
    let asymptotic = asymptotic_zero_probability(a.n);
    match a.format {
        Format::Text => {
            let relation = if lhs == rhs { "=" } else { "≠" };
            writeln!(out, "N = {}: {lhs} {relation} {rhs}", a.n)?;
            writeln!(
                out,
                "zero probability {exact} ≈ {exact_f64:.6}, asymptotic {asymptotic:.6}, ratio {:.6}",
                exact_f64 / asymptotic
            )?;
        }
        Format::Json => emit(
            out,
            "identity",
            json!({
                "n": a.n,
                "lhs": lhs.to_string(),
                "rhs": rhs.to_string(),
                "holds": lhs == rhs,
                "zero_probability": exact.to_string(),
                "zero_probability_approx": exact_f64,
                "asymptotic": asymptotic,
                "ratio": exact_f64 / asymptotic,
            }),
        )?,
    }
    Ok(())
}

fn uv_index(n: u32, u: &str, v: &str) -> Result<UVIndex> {
    Ok(UVIndex::new(n, parse_mask(u)?, parse_mask(v)?)?)
}

fn sites_for_len(len: usize) -> u32 {
    len.max(1).next_power_of_two().trailing_zeros()
}

fn poly_payload(p: &BellPolynomial) -> Value {
    json!({"n": p.sites(), "coeffs": p.coeffs(), "polynomial": p.to_string()})
}

fn uv_payload(index: UVIndex, p: &BellPolynomial) -> Value {
    json!({
        "n": index.sites(),
        "u": index.u(),
        "v": index.v(),
        "coeffs": p.coeffs(),
        "polynomial": p.to_string(),
        "normalized": p.normalize().to_string(),
        "b0": b0_from_uv(index),
    })
}

fn report_json(r: &ClassificationReport, seed: Option<u64>) -> Value {
    let checks = r.checks();
    json!({
        "n": r.sites,
        "mode": if r.exhaustive { "exhaustive" } else { "sample" },
        "seed": seed,
        "total": r.total,
        "population": r.population(),
        "histogram": r.histogram,
        "trivial_classes": r.trivial_classes,
        "full_term": r.full_term,
        "full_term_fraction": r.full_term_fraction(),
        "standard_error": r.standard_error(),
        "zero_counts": r.zero_counts,
        "checks": {
            "histogram_total": checks.histogram_total,
            "trivial_classes": checks.trivial_classes,
            "at_least_half_full_term": checks.at_least_half_full_term,
            "exactly_half_full_term": checks.exactly_half_full_term,
            "all_hold": checks.all_hold(),
        },
    })
}

fn report_text(r: &ClassificationReport, seed: Option<u64>) -> String {
    let mut s = String::new();
    match seed {
        Some(seed) if !r.exhaustive => {
            let _ = writeln!(s, "N = {}: {} sampled of {} (seed {seed})", r.sites, r.total, r.population());
        }
        _ => {
            let _ = writeln!(s, "N = {}: all {} inequalities", r.sites, r.total);
        }
    }
    let _ = writeln!(s, "{:>6}  {:>12}", "terms", "count");
    for (t, &count) in r.histogram.iter().enumerate().filter(|(_, &c)| c > 0) {
        let _ = writeln!(s, "{t:>6}  {count:>12}");
    }
    let _ = writeln!(s, "trivial classes: {}", r.trivial_classes);
    if r.exhaustive {
        let _ = writeln!(s, "full-term: {} ({:.6})", r.full_term, r.full_term_fraction());
    } else {
        let _ = writeln!(
            s,
            "full-term: {} ({:.6} ± {:.6})",
            r.full_term,
            r.full_term_fraction(),
            r.standard_error()
        );
    }
    let checks = r.checks();
    let show = |c: Option<bool>| match c {
        Some(true) => "ok",
        Some(false) => "FAILED",
        None => "n/a",
    };
    let _ = writeln!(
        s,
        "checks: histogram {}, trivial classes {}, at least half full-term {}, exactly half {}",
        show(Some(checks.histogram_total)),
        show(checks.trivial_classes),
        show(checks.at_least_half_full_term),
        show(checks.exactly_half_full_term),
    );
    s
}
