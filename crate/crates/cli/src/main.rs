//! `spinorlab`: classify, sample, decompose and verify points of the secant
//! variety of lines to the spinor variety.

mod documents;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use spinorlab_core::isotropic::{hamming_distance, pure_from_subspace};
use spinorlab_core::orbit::{
    classify_detailed, closed_form_dims, decompositions_sigma2, orbit_dimension, representative, sample,
    terracini_deficient, Certificate, OrbitLabel,
};
use spinorlab_core::verify::{Suite, VerificationReport};
use spinorlab_core::{Spinor, SpinorError};

use documents::{check_n, read_json, read_spinor, write_json, SpinorDocument, SubspaceDocument};
use error::CliError;

const MEMBERSHIP_CAVEAT: &str =
    "note: a failed classification is not a proof of non-membership; only successful certificates are conclusive";

#[derive(Parser)]
#[command(name = "spinorlab", version, about = "Exact orbit geometry on the secant variety of a spinor variety")]
struct Cli {
    /// Accept n above 12 (slow: dense rank computations grow as 4^n).
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit label and certificate of a spinor.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write a (twisted) orbit representative.
    Sample {
        #[arg(long)]
        n: usize,
        /// pure, sigma:L or theta:L
        #[arg(long)]
        orbit: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        twists: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hamming distance of two pure spinors.
    Distance {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Decompositions (or the tangency point) of a point of the secant variety.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Closed-form orbit dimensions.
    Dims {
        #[arg(long)]
        n: usize,
        /// Also measure the representatives.
        #[arg(long)]
        verify: bool,
    },
    /// Terracini deficiency of a pair of pure spinors.
    Terracini {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// The pure spinor of a maximal isotropic subspace.
    PureFromSubspace {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run verification suites.
    Verify {
        #[arg(long)]
        n: usize,
        /// poset, dims, identifiability, distance-rank, terracini, evidence or all
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.allow_large {
        eprintln!("warning: --allow-large lifts the n <= 12 cap; expect very long runs");
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let large = cli.allow_large;
    match cli.command {
        Command::Classify { input, json } => cmd_classify(&read_spinor(&input, large)?, json),
        Command::Sample { n, orbit, seed, twists, out } => {
            check_n(n, large)?;
            let label: OrbitLabel = orbit.parse()?;
            let s = sample(label, n, seed, twists)?;
            write_json(&out, &SpinorDocument::from_spinor(&s.spinor))?;
            println!("{label}: {}", s.spinor);
            Ok(())
        }
        Command::Distance { a, b } => {
            let d = hamming_distance(&read_spinor(&a, large)?, &read_spinor(&b, large)?)?;
            println!("{d}");
            Ok(())
        }
        Command::Decompose { input, trials, seed } => cmd_decompose(&read_spinor(&input, large)?, trials, seed),
        Command::Dims { n, verify } => {
            check_n(n, large)?;
            cmd_dims(n, verify)
        }
        Command::Terracini { a, b } => {
            let (def, s) = terracini_deficient(&read_spinor(&a, large)?, &read_spinor(&b, large)?)?;
            println!("deficient: {}", if def { "yes" } else { "no" });
            println!("span dimension: {s}");
            Ok(())
        }
        Command::PureFromSubspace { input, out } => {
            let h = read_json::<SubspaceDocument>(&input)?.to_subspace(large)?;
            let x = pure_from_subspace(&h)?;
            write_json(&out, &SpinorDocument::from_spinor(&x))?;
            println!("{x}");
            Ok(())
        }
        Command::Verify { n, suite, seed, json } => {
            check_n(n, large)?;
            cmd_verify(n, &suite, seed, json)
        }
    }
}

fn with_caveat(e: SpinorError) -> CliError {
    if matches!(e, SpinorError::NotInSecantVariety(_)) {
        eprintln!("{MEMBERSHIP_CAVEAT}");
    }
    e.into()
}

fn certificate_json(c: &Certificate) -> serde_json::Value {
    let doc = |x: &Spinor| serde_json::to_value(SpinorDocument::from_spinor(x)).expect("document serializes");
    match c {
        Certificate::Pure => json!({ "kind": "pure" }),
        Certificate::Pair(a, b) => json!({ "kind": "pair", "points": [doc(a), doc(b)] }),
        Certificate::Tangent(p) => json!({ "kind": "tangent", "point": doc(p) }),
        Certificate::Unwitnessed => json!({ "kind": "unwitnessed" }),
    }
}

fn print_certificate(c: &Certificate) {
    match c {
        Certificate::Pure => println!("certificate: the point is pure"),
        Certificate::Pair(a, b) => {
            println!("certificate: pair");
            println!("  a = {a}");
            println!("  b = {b}");
        }
        Certificate::Tangent(p) => {
            println!("certificate: tangency point");
            println!("  p = {p}");
        }
        Certificate::Unwitnessed => println!("certificate: none found (kernel dimension only)"),
    }
}

fn cmd_classify(q: &Spinor, as_json: bool) -> Result<(), CliError> {
    let c = classify_detailed(q).map_err(with_caveat)?;
    if as_json {
        let v = json!({
            "orbit": c.label.to_string(),
            "kernel_dim": c.kernel_dim,
            "certificate": certificate_json(&c.certificate),
        });
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        println!("orbit: {}", c.label);
        println!("kernel dimension: {}", c.kernel_dim);
        print_certificate(&c.certificate);
    }
    Ok(())
}

fn cmd_decompose(q: &Spinor, trials: usize, seed: u64) -> Result<(), CliError> {
    let c = classify_detailed(q).map_err(with_caveat)?;
    println!("orbit: {}", c.label);
    match c.label {
        OrbitLabel::Pure => println!("the point is pure; it has no proper decomposition"),
        OrbitLabel::Sigma(2) => {
            let pairs = decompositions_sigma2(q, trials, seed)?;
            println!("{} distinct decompositions (not identifiable)", pairs.len().min(trials));
            for (k, (a, b)) in pairs.iter().take(trials).enumerate() {
                println!("  {}: a = {a}", k + 1);
                println!("  {}: b = {b}", k + 1);
            }
        }
        _ => {
            if matches!(c.label, OrbitLabel::Sigma(_)) {
                println!("unique decomposition");
            } else {
                println!("unique tangency point");
            }
            print_certificate(&c.certificate);
        }
    }
    Ok(())
}

fn cmd_dims(n: usize, verify: bool) -> Result<(), CliError> {
    let table = closed_form_dims(n)?;
    println!("n = {n}");
    let mut mismatches = 0;
    for &(label, d) in &table.orbits {
        if verify {
            let m = orbit_dimension(&representative(label, n)?)?;
            let mark = if m == d { "ok" } else { "MISMATCH" };
            mismatches += usize::from(m != d);
            println!("{:<12}{d:>6}  measured {m:>6}  {mark}", label.to_string());
        } else {
            println!("{:<12}{d:>6}", label.to_string());
        }
    }
    println!("{:<12}{:>6}", "secant", table.secant);
    println!("{:<12}{:>6}", "tangential", table.tangential);
    if mismatches > 0 {
        return Err(CliError::Verification(format!("{mismatches} measured dimensions differ from the closed forms")));
    }
    Ok(())
}

fn worker_count() -> usize {
    std::env::var("SPINORLAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
}

/// Runs suites on up to `SPINORLAB_THREADS` workers; results keep suite order.
fn run_suites(suites: &[Suite], n: usize, seed: u64) -> Vec<Result<VerificationReport, SpinorError>> {
    let workers = worker_count().min(suites.len()).max(1);
    let mut out: Vec<Option<Result<VerificationReport, SpinorError>>> = (0..suites.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let chunks: Vec<_> = out
            .chunks_mut(suites.len().div_ceil(workers))
            .zip(suites.chunks(suites.len().div_ceil(workers)))
            .map(|(slots, work)| {
                scope.spawn(move || {
                    for (slot, suite) in slots.iter_mut().zip(work) {
                        *slot = Some(suite.run(n, seed));
                    }
                })
            })
            .collect();
        for h in chunks {
            h.join().expect("suite worker panicked");
        }
    });
    out.into_iter().map(|r| r.expect("every suite ran")).collect()
}

fn cmd_verify(n: usize, suite: &str, seed: u64, as_json: bool) -> Result<(), CliError> {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    let mut reports = Vec::new();
    for r in run_suites(&suites, n, seed) {
        reports.push(r?);
    }
    for r in &reports {
        eprintln!("{}: {:.2?}", r.suite, r.duration);
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("json"));
    } else {
        let text: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
        println!("{}", text.join("\n\n"));
    }
    let failed: Vec<String> = reports.iter().flat_map(|r| r.failures().map(|c| c.id.clone())).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}
