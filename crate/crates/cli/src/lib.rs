//! Command-line front end for `tporder`.
//!
//! [`dispatch`] parses arguments, runs one subcommand and returns the process
//! exit code: 0 on success, 1 when a verification finds a violation, 2 on a
//! usage or input error.

use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use tporder::verify::{
    DigitFlip, BIJECTION_LIMIT, ORACLE_PAIR_LIMIT, PAIRWISE_LIMIT, RADIUS_LIMIT, TRIPLE_LIMIT,
};
use tporder::{
    decode_permutation, encode_permutation, minimal_width, open_stream, open_stream_continuing, partition, rank,
    seed_distance, unrank_traced, DeltaStep, DistanceQuery, Error, FactoradicCode, Permutation, Property,
    Sampling, Seed, SeedInt, SeedRange, VerificationReport, Verifier,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Widest width served by the native `u64` path.
const NATIVE_WIDTH: usize = 20;
/// Exhaustive adjacency and step checks stop here; wider widths are sampled.
const RANGE_LIMIT: usize = 7;
const DEFAULT_SAMPLE: usize = 10_000;
/// Default pair count for the search oracle above its exhaustive width.
const DEFAULT_ORACLE_SAMPLE: usize = 1_000;

#[derive(Debug, Parser)]
#[command(name = "tporder", version, about = "Permutations in transposition order")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Factoradic code and permutation of a seed
    Unrank {
        seed: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Print x, d and f for every loop step
        #[arg(long)]
        trace: bool,
    },
    /// Seed of a factoradic code (digits most significant first)
    Rank {
        #[arg(required = true, num_args = 1..)]
        digits: Vec<usize>,
    },
    /// Permutation of a factoradic code (digits most significant first)
    Decode {
        #[arg(required = true, num_args = 1..)]
        digits: Vec<usize>,
    },
    /// Factoradic code of a permutation of 1..n
    Encode {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<usize>,
    },
    /// Transposition distance between the permutations of two seeds
    Dist {
        left: String,
        right: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Every seed in [START, END) with the swap from its predecessor
    Stream {
        start: String,
        end: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        chunks: usize,
    },
    /// Check the transposition-order properties at a width
    Verify(VerifyArgs),
    /// Time unranking
    Bench {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        count: u64,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, conflicts_with = "property")]
    all: bool,
    #[arg(long)]
    property: Option<String>,
    /// Sample this many seeds, pairs or triples instead of enumerating
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    /// Corrupt one digit of one seed's code, chosen by this RNG seed
    #[arg(long, value_name = "RNG_SEED")]
    inject_fault: Option<u64>,
    #[arg(long)]
    json: bool,
    /// Append elapsed time to each report line
    #[arg(long)]
    timing: bool,
}

/// One JSON-lines record.
#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub s: String,
    pub n: usize,
    pub digits: Vec<usize>,
    pub perm: Vec<usize>,
    pub delta: Option<[usize; 2]>,
}

impl OutputRecord {
    fn new<T: SeedInt>(seed: &T, code: &FactoradicCode, perm: &Permutation, delta: Option<[usize; 2]>) -> Self {
        Self { s: seed.to_string(), n: code.width(), digits: code.to_msd_vec(), perm: perm.entries().to_vec(), delta }
    }

    fn from_step<T: SeedInt>(step: &DeltaStep<T>) -> Self {
        Self::new(&step.seed, &step.code, &step.perm, step.delta.map(|t| [t.pos_a(), t.pos_b()]))
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Violation(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAdjacent { .. } => Failure::Violation(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<i32, Failure>;

fn parse_seed(text: &str) -> Result<Seed, Failure> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Failure::Usage(format!("malformed seed `{text}`: expected a non-negative decimal integer")));
    }
    text.parse().map_err(|_| Failure::Usage(format!("malformed seed `{text}`")))
}

/// Converts to the native path's type; a seed too large for it is also too
/// large for any width the native path serves.
fn narrow<T: SeedInt>(seed: &Seed, width: usize) -> Result<T, Error> {
    T::from_big(seed).ok_or_else(|| Error::SeedOutOfRange { seed: seed.to_string(), width })
}

/// Parses arguments and runs one subcommand.
pub fn dispatch<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(err, "violation: {msg}");
            EXIT_VIOLATION
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Unrank { seed, n, json, trace } => {
            let seed = parse_seed(&seed)?;
            let n = n.unwrap_or_else(|| minimal_width(&seed));
            if n <= NATIVE_WIDTH {
                cmd_unrank(&narrow::<u64>(&seed, n)?, n, json, trace, out)
            } else {
                cmd_unrank(&seed, n, json, trace, out)
            }
        }
        Command::Rank { digits } => {
            let code = FactoradicCode::from_msd(&digits)?;
            writeln!(out, "{}", rank::<Seed>(&code)?)?;
            Ok(EXIT_OK)
        }
        Command::Decode { digits } => {
            let code = FactoradicCode::from_msd(&digits)?;
            writeln!(out, "{}", decode_permutation(&code))?;
            Ok(EXIT_OK)
        }
        Command::Encode { perm } => {
            let perm = Permutation::new(perm)?;
            writeln!(out, "{}", encode_permutation(&perm))?;
            Ok(EXIT_OK)
        }
        Command::Dist { left, right, n } => {
            let mut query = DistanceQuery::new(parse_seed(&left)?, parse_seed(&right)?);
            query.width = n;
            let width = query.resolved_width();
            let d = if width <= NATIVE_WIDTH {
                let left = narrow::<u64>(&query.left, width)?;
                let right = narrow::<u64>(&query.right, width)?;
                seed_distance(&DistanceQuery::new(left, right).with_width(width))?
            } else {
                seed_distance(&query)?
            };
            writeln!(out, "{d}")?;
            Ok(EXIT_OK)
        }
        Command::Stream { start, end, n, json, chunks } => {
            let (start, end) = (parse_seed(&start)?, parse_seed(&end)?);
            let n = n.unwrap_or_else(|| {
                let last = if end > start { &end - 1u32 } else { start.clone() };
                minimal_width(&last)
            });
            if n <= NATIVE_WIDTH {
                let range = SeedRange::new(narrow::<u64>(&start, n)?, narrow(&end, n)?, n)?;
                cmd_stream(&range, json, chunks, out)
            } else {
                cmd_stream(&SeedRange::new(start, end, n)?, json, chunks, out)
            }
        }
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Bench { n, count } => {
            if n <= NATIVE_WIDTH {
                cmd_bench::<u64>(n, count, out)
            } else {
                cmd_bench::<Seed>(n, count, out)
            }
        }
    }
}

fn cmd_unrank<T: SeedInt>(seed: &T, n: usize, json: bool, trace: bool, out: &mut dyn Write) -> Outcome {
    let (code, steps) = unrank_traced(seed, n)?;
    let perm = decode_permutation(&code);
    if json {
        writeln!(out, "{}", serde_json::to_string(&OutputRecord::new(seed, &code, &perm, None)).expect("serializable"))?;
    } else {
        writeln!(out, "{code}")?;
        writeln!(out, "{perm}")?;
    }
    if trace {
        for step in &steps.steps {
            writeln!(out, "k={} x={} d={} f={}", step.k, step.x, step.d, step.f)?;
        }
    }
    Ok(EXIT_OK)
}

fn format_step<T: SeedInt>(step: &DeltaStep<T>, json: bool) -> String {
    if json {
        serde_json::to_string(&OutputRecord::from_step(step)).expect("serializable")
    } else {
        let delta = step.delta.map_or_else(|| "-".to_string(), |t| t.to_string());
        format!("{}\t{}\t{}\t{}", step.seed, step.code, step.perm, delta)
    }
}

fn cmd_stream<T: SeedInt>(range: &SeedRange<T>, json: bool, chunks: usize, out: &mut dyn Write) -> Outcome {
    if chunks == 1 {
        for step in open_stream(range) {
            writeln!(out, "{}", format_step(&step?, json))?;
        }
        return Ok(EXIT_OK);
    }
    let parts = partition(range, chunks)?;
    // later chunks continue from their predecessor so output matches one stream
    let rendered = parts
        .par_iter()
        .enumerate()
        .map(|(i, part)| -> Result<String, Error> {
            let stream = if i == 0 { open_stream(part) } else { open_stream_continuing(part)? };
            let mut text = String::new();
            for step in stream {
                text.push_str(&format_step(&step?, json));
                text.push('\n');
            }
            Ok(text)
        })
        .collect::<Result<Vec<_>, _>>()?;
    for text in rendered {
        out.write_all(text.as_bytes())?;
    }
    Ok(EXIT_OK)
}

fn cmd_bench<T: SeedInt>(n: usize, count: u64, out: &mut dyn Write) -> Outcome {
    let total = tporder::num::factorial::<Seed>(n).expect("unbounded");
    let count = BigUint::from(count).min(total);
    let range = SeedRange::<T>::new(T::zero(), narrow(&count, n)?, n)?;
    let started = Instant::now();
    let mut checksum = 0usize;
    for step in open_stream(&range) {
        checksum = checksum.wrapping_add(step?.perm.at(1));
    }
    let secs = started.elapsed().as_secs_f64();
    let rate = count.to_string().parse::<f64>().unwrap_or(f64::NAN) / secs.max(f64::EPSILON);
    writeln!(out, "streamed {count} permutations at n={n} in {:.3} s ({rate:.0} per second, checksum {checksum})", secs)?;
    Ok(EXIT_OK)
}

enum Planned {
    Run(VerificationReport),
    Skip(Property, String),
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let properties: Vec<Property> = match &args.property {
        Some(name) => vec![name.parse()?],
        None => Property::ALL.to_vec(),
    };
    let verifier = match args.inject_fault {
        Some(rng_seed) => {
            let flip = DigitFlip::seeded(&SeedRange::<Seed>::full(args.n)?, rng_seed)?;
            Verifier::with_fault(flip)
        }
        None => Verifier::new(),
    };
    let mut failed = false;
    for property in properties {
        let planned = if args.n <= NATIVE_WIDTH {
            verify_one::<u64>(&verifier, property, args)?
        } else {
            verify_one::<Seed>(&verifier, property, args)?
        };
        match planned {
            Planned::Run(report) => {
                failed |= !report.passed;
                write_report(&report, args, out)?;
            }
            Planned::Skip(property, reason) => {
                if args.json {
                    let line = serde_json::json!({ "property": property, "n": args.n, "skipped": reason });
                    writeln!(out, "{line}")?;
                } else {
                    writeln!(out, "SKIP {property} n={} ({reason})", args.n)?;
                }
            }
        }
    }
    Ok(if failed { EXIT_VIOLATION } else { EXIT_OK })
}

fn verify_one<T: SeedInt>(verifier: &Verifier, property: Property, args: &VerifyArgs) -> Result<Planned, Failure> {
    let n = args.n;
    let sampled = |limit: usize| match args.sample {
        Some(count) => Sampling::Random { count, rng_seed: args.rng_seed },
        None if n <= limit => Sampling::Exhaustive,
        None => Sampling::Random { count: DEFAULT_SAMPLE, rng_seed: args.rng_seed },
    };
    let range_check = |offset: usize| -> Result<Option<VerificationReport>, Error> {
        if n <= offset || (n == 2 && offset == 2) {
            return Ok(None);
        }
        match sampled(RANGE_LIMIT) {
            Sampling::Exhaustive => {
                let range = SeedRange::<T>::full(n)?;
                if offset == 1 { verifier.check_adjacency(&range) } else { verifier.check_step2(&range) }.map(Some)
            }
            Sampling::Random { count, rng_seed } => if offset == 1 {
                verifier.check_adjacency_sampled::<T>(n, count, rng_seed)
            } else {
                verifier.check_step2_sampled::<T>(n, count, rng_seed)
            }
            .map(Some),
        }
    };
    let skip = |reason: String| Ok(Planned::Skip(property, reason));
    let report = match property {
        Property::Bijection if n > BIJECTION_LIMIT => return skip(format!("exhaustive only, n <= {BIJECTION_LIMIT}")),
        Property::Bijection => verifier.check_bijection(n)?,
        Property::Radius if n > RADIUS_LIMIT => return skip(format!("exhaustive only, n <= {RADIUS_LIMIT}")),
        Property::Radius => verifier.check_radius(n)?,
        Property::Adjacency => match range_check(1)? {
            Some(r) => r,
            None => return skip("needs at least two seeds".into()),
        },
        Property::Step2 => match range_check(2)? {
            Some(r) => r,
            None => return skip("needs at least three seeds".into()),
        },
        Property::DistanceBound => verifier.check_distance_bound::<T>(n, sampled(PAIRWISE_LIMIT))?,
        Property::ReverseTriangle => verifier.check_reverse_triangle::<T>(n, sampled(PAIRWISE_LIMIT))?,
        Property::MetricAxioms => verifier.check_metric_axioms::<T>(n, sampled(TRIPLE_LIMIT))?,
        Property::OracleAgreement if n > tporder::distance::BFS_LIMIT => {
            return skip(format!("search oracle limited to n <= {}", tporder::distance::BFS_LIMIT))
        }
        Property::OracleAgreement => {
            let sampling = match sampled(ORACLE_PAIR_LIMIT) {
                Sampling::Random { rng_seed, .. } if args.sample.is_none() && n > 6 => {
                    Sampling::Random { count: DEFAULT_ORACLE_SAMPLE, rng_seed }
                }
                other => other,
            };
            verifier.check_oracle_agreement::<T>(n, sampling)?
        }
    };
    Ok(Planned::Run(report))
}

const MAX_LISTED_VIOLATIONS: usize = 20;

fn write_report(report: &VerificationReport, args: &VerifyArgs, out: &mut dyn Write) -> io::Result<()> {
    if args.json {
        let mut value = serde_json::to_value(report).expect("serializable");
        if args.timing {
            value["elapsed_ms"] = serde_json::json!(report.elapsed.as_secs_f64() * 1e3);
        }
        return writeln!(out, "{value}");
    }
    let status = if report.passed { "PASS" } else { "FAIL" };
    write!(
        out,
        "{status} {} n={} checked={} violations={}",
        report.property,
        report.n,
        report.seeds_checked,
        report.violations.len()
    )?;
    if args.timing {
        write!(out, " elapsed_ms={:.3}", report.elapsed.as_secs_f64() * 1e3)?;
    }
    writeln!(out)?;
    for v in report.violations.iter().take(MAX_LISTED_VIOLATIONS) {
        writeln!(out, "  seeds={} rule=\"{}\" observed={} bound={}", v.seeds.join(","), v.rule, v.observed, v.bound)?;
    }
    if report.violations.len() > MAX_LISTED_VIOLATIONS {
        writeln!(out, "  ... {} more", report.violations.len() - MAX_LISTED_VIOLATIONS)?;
    }
    Ok(())
}
