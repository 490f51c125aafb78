//! Command-line front end for the spinfreeze toolkit.
//!
//! Subcommands:
//! - `jack`: print (and cache) nonsymmetric, symmetric, or antisymmetric Jack
//!   polynomials in exact rational arithmetic.
//! - `motifs`: tabulate motifs with energies, degeneracies, and momenta.
//! - `spectrum`: dense spin-chain spectrum with a motif matching report.
//! - `verify`: residual checks for the explicit motif eigenvectors.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input, 3 verification
//! failure.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use spinfreeze_core::combinatorics::{
    degeneracy, enumerate_motifs, hs_motif_energy, hs_motif_energy_minus, Motif,
};
use spinfreeze_core::dunkl::{antisym_jack, nonsym_jack, sym_jack, DunklConfig};
use spinfreeze_core::freezing::{hs_eigenvector, verify_eigenvector};
use spinfreeze_core::polyring::LaurentPoly;
use spinfreeze_core::spinchain::{exact_spectrum, HsSign};
use spinfreeze_core::{parse_rat, Error, Rat};

#[derive(Parser)]
#[command(name = "spinfreeze", version, about = "Exact spin-chain toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Working precision in mantissa bits (>= 53). Values above 53 are
    /// accepted but computations currently run in double precision.
    #[arg(long, global = true, default_value_t = 53)]
    precision: u32,
    /// Directory for the polynomial cache (overrides SPINFREEZE_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Seed for randomized property suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum JackKind {
    Nonsym,
    Sym,
    Antisym,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    /// `sum_{i<j} V(i-j) (1 - P_ij)`: ferromagnetic ground state at zero.
    Plus,
    /// `sum_{i<j} V(i-j) (1 + P_ij)`.
    Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a Jack polynomial.
    Jack(JackArgs),
    /// List all motifs with energies, degeneracies, and momenta.
    Motifs {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Dense spectrum of the spin chain with motif matching.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
    },
    /// Verify explicit eigenvectors for one motif or all motifs.
    Verify {
        #[arg(long)]
        n: usize,
        /// Comma-separated motif entries, e.g. "2,4"; omit to check all.
        #[arg(long)]
        motif: Option<String>,
    },
}

#[derive(Args)]
struct JackArgs {
    /// Polynomial family.
    #[arg(value_enum)]
    kind: JackKind,
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Jack parameter as a rational "p/q".
    #[arg(long, default_value = "1")]
    alpha: String,
    /// Composition for the nonsymmetric family, e.g. "1,0".
    #[arg(long)]
    comp: Option<String>,
    /// Partition (weakly decreasing) for `sym`, strictly decreasing for
    /// `antisym`, e.g. "2,1".
    #[arg(long)]
    part: Option<String>,
}

/// Failure modes mapped to exit codes.
enum Failure {
    /// Exit 2: the user gave us something unusable.
    Invalid(String),
    /// Exit 3: a check ran and did not pass.
    Verification(String),
    /// Exit 1: anything else.
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::InvalidMotif(_) | Error::LengthMismatch { .. } => {
                Failure::Invalid(e.to_string())
            }
            Error::SizeLimit(_) => Failure::Invalid(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("invalid input: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if cli.precision < 53 {
        return Err(Failure::Invalid("precision must be at least 53".into()));
    }
    if cli.precision > 53 {
        eprintln!(
            "note: precision {} requested; computations run at 53 bits (double)",
            cli.precision
        );
    }
    let cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("SPINFREEZE_CACHE").map(PathBuf::from));
    match &cli.command {
        Command::Jack(args) => cmd_jack(args, cli.format, cache_dir.as_deref()),
        Command::Motifs { n, rank } => cmd_motifs(*n, *rank, cli.format),
        Command::Spectrum { n, rank, sign } => cmd_spectrum(*n, *rank, *sign, cli.format),
        Command::Verify { n, motif } => cmd_verify(*n, motif.as_deref(), cli.format),
    }
}

/// Render a rational as "p/q" (denominator always present).
fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_int_list(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Invalid(format!("cannot parse integer '{}'", t.trim())))
        })
        .collect()
}

// ---------------------------------------------------------------- jack ----

fn cmd_jack(
    args: &JackArgs,
    format: Format,
    cache_dir: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let alpha = parse_rat(&args.alpha)?;
    if !alpha.is_positive() {
        return Err(Failure::Invalid("alpha must be positive".into()));
    }
    let (kind_name, index) = match args.kind {
        JackKind::Nonsym => (
            "nonsym",
            args.comp
                .as_deref()
                .ok_or_else(|| Failure::Invalid("nonsym requires --comp".into()))?,
        ),
        JackKind::Sym => (
            "sym",
            args.part
                .as_deref()
                .ok_or_else(|| Failure::Invalid("sym requires --part".into()))?,
        ),
        JackKind::Antisym => (
            "antisym",
            args.part
                .as_deref()
                .ok_or_else(|| Failure::Invalid("antisym requires --part".into()))?,
        ),
    };
    let index_parts = parse_int_list(index)?;
    if index_parts.len() != args.n {
        return Err(Failure::Invalid(format!(
            "index has {} entries but --n is {}",
            index_parts.len(),
            args.n
        )));
    }
    let index_key: String = index_parts
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let poly = match load_cached(cache_dir, kind_name, args.n, &alpha, &index_key) {
        Some(p) => p,
        None => {
            let cfg = DunklConfig::new(args.n, alpha.clone())?;
            let p = match args.kind {
                JackKind::Nonsym => nonsym_jack(&cfg, &index_parts)?,
                JackKind::Sym => sym_jack(&cfg, &index_parts)?,
                JackKind::Antisym => antisym_jack(&cfg, &index_parts)?,
            };
            store_cached(cache_dir, kind_name, args.n, &alpha, &index_key, &p);
            p
        }
    };
    match format {
        Format::Text => println!("{poly}"),
        Format::Json => {
            let terms: Vec<serde_json::Value> = poly
                .terms()
                .map(|(e, c)| {
                    serde_json::json!({ "coeff": rat_str(c), "exponents": e })
                })
                .collect();
            let out = serde_json::json!({
                "kind": kind_name,
                "n": args.n,
                "alpha": rat_str(&alpha),
                "index": index_parts,
                "terms": terms,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Format::Csv => {
            println!("coeff,exponents");
            for (e, c) in poly.terms() {
                let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                println!("{},\"{}\"", rat_str(c), exps.join(","));
            }
        }
    }
    Ok(())
}

fn cache_path(
    dir: &std::path::Path,
    kind: &str,
    n: usize,
    alpha: &Rat,
    index: &str,
) -> PathBuf {
    let alpha_tag = format!("{}_{}", alpha.numer(), alpha.denom());
    let index_tag = index.replace(',', "_").replace('-', "m");
    dir.join(format!("jack-v1-{kind}-n{n}-a{alpha_tag}-{index_tag}.txt"))
}

fn load_cached(
    dir: Option<&std::path::Path>,
    kind: &str,
    n: usize,
    alpha: &Rat,
    index: &str,
) -> Option<LaurentPoly> {
    let path = cache_path(dir?, kind, n, alpha, index);
    let content = std::fs::read_to_string(path).ok()?;
    let mut lines = content.lines();
    if lines.next()? != "spinfreeze-jack v1" {
        return None;
    }
    let header_ok = lines.next()? == format!("kind {kind}")
        && lines.next()? == format!("n {n}")
        && lines.next()? == format!("alpha {}", rat_str(alpha))
        && lines.next()? == format!("index {index}")
        && lines.next()? == "---";
    if !header_ok {
        return None;
    }
    let body: String = lines.collect::<Vec<_>>().join("\n");
    LaurentPoly::from_text(&body, n).ok()
}

fn store_cached(
    dir: Option<&std::path::Path>,
    kind: &str,
    n: usize,
    alpha: &Rat,
    index: &str,
    poly: &LaurentPoly,
) {
    let Some(dir) = dir else { return };
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let mut content = String::new();
    let _ = writeln!(content, "spinfreeze-jack v1");
    let _ = writeln!(content, "kind {kind}");
    let _ = writeln!(content, "n {n}");
    let _ = writeln!(content, "alpha {}", rat_str(alpha));
    let _ = writeln!(content, "index {index}");
    let _ = writeln!(content, "---");
    content.push_str(&poly.to_text());
    let _ = std::fs::write(cache_path(dir, kind, n, alpha, index), content);
}

// -------------------------------------------------------------- motifs ----

#[derive(Serialize)]
struct MotifRow {
    motif: Vec<usize>,
    energy_plus: String,
    energy_minus: String,
    degeneracy: Option<u64>,
    momentum: usize,
}

fn motif_rows(n: usize, rank: usize) -> Vec<MotifRow> {
    enumerate_motifs(n, rank)
        .iter()
        .map(|m| MotifRow {
            motif: m.entries().to_vec(),
            energy_plus: rat_str(&hs_motif_energy(m)),
            energy_minus: rat_str(&hs_motif_energy_minus(m)),
            degeneracy: (rank == 2).then(|| degeneracy(m)),
            momentum: m.momentum(),
        })
        .collect()
}

fn cmd_motifs(n: usize, rank: usize, format: Format) -> Result<(), Failure> {
    if n == 0 || rank < 2 {
        return Err(Failure::Invalid("need n >= 1 and rank >= 2".into()));
    }
    let rows = motif_rows(n, rank);
    let total_degeneracy: Option<u64> = (rank == 2)
        .then(|| rows.iter().map(|r| r.degeneracy.unwrap_or(0)).sum());
    if let Some(total) = total_degeneracy {
        let expect = 2u64.pow(n as u32);
        if total != expect {
            return Err(Failure::Internal(format!(
                "degeneracies sum to {total}, expected {expect}"
            )));
        }
    }
    match format {
        Format::Text => {
            println!("motifs for n = {n}, rank = {rank}: {} rows", rows.len());
            for r in &rows {
                let deg = r
                    .degeneracy
                    .map(|d| d.to_string())
                    .unwrap_or_else(|| "-".into());
                println!(
                    "  motif {:?}  E+ {}  E- {}  deg {}  momentum {}",
                    r.motif, r.energy_plus, r.energy_minus, deg, r.momentum
                );
            }
            if let Some(total) = total_degeneracy {
                println!("  total degeneracy {total} = 2^{n}");
            }
        }
        Format::Json => {
            let out = serde_json::json!({
                "n": n,
                "rank": rank,
                "rows": rows,
                "total_degeneracy": total_degeneracy,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Format::Csv => {
            println!("motif,energy_plus,energy_minus,degeneracy,momentum");
            for r in &rows {
                let motif: Vec<String> = r.motif.iter().map(|x| x.to_string()).collect();
                let deg = r
                    .degeneracy
                    .map(|d| d.to_string())
                    .unwrap_or_default();
                println!(
                    "\"{}\",{},{},{},{}",
                    motif.join(","),
                    r.energy_plus,
                    r.energy_minus,
                    deg,
                    r.momentum
                );
            }
        }
    }
    Ok(())
}

// ------------------------------------------------------------ spectrum ----

#[derive(Serialize)]
struct SpectrumRow {
    energy: f64,
    multiplicity: usize,
    motifs: Vec<Vec<usize>>,
    predicted_multiplicity: Option<u64>,
    matched: bool,
}

fn cmd_spectrum(n: usize, rank: usize, sign: SignArg, format: Format) -> Result<(), Failure> {
    let hs_sign = match sign {
        SignArg::Plus => HsSign::Plus,
        SignArg::Minus => HsSign::Minus,
    };
    let clusters = exact_spectrum(n, rank, hs_sign, 1e-8)?;
    // Group motifs by energy under the requested sign.
    let mut predicted: Vec<(f64, Vec<Vec<usize>>, Option<u64>)> = Vec::new();
    for m in enumerate_motifs(n, rank) {
        let e = match sign {
            SignArg::Plus => hs_motif_energy(&m),
            SignArg::Minus => hs_motif_energy_minus(&m),
        }
        .to_f64()
        .expect("rational fits in f64");
        let deg = (rank == 2).then(|| degeneracy(&m));
        match predicted.iter_mut().find(|(pe, _, _)| (pe - e).abs() < 1e-8) {
            Some((_, motifs, total)) => {
                motifs.push(m.entries().to_vec());
                if let (Some(t), Some(d)) = (total.as_mut(), deg) {
                    *t += d;
                }
            }
            None => predicted.push((e, vec![m.entries().to_vec()], deg)),
        }
    }
    predicted.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
    let mut rows = Vec::new();
    let mut all_matched = true;
    for (energy, multiplicity) in &clusters {
        let hit = predicted.iter().find(|(pe, _, _)| (pe - energy).abs() < 1e-8);
        let (motifs, pred_mult) = match hit {
            Some((_, motifs, total)) => (motifs.clone(), *total),
            None => (Vec::new(), None),
        };
        let matched = match pred_mult {
            Some(p) => !motifs.is_empty() && p == *multiplicity as u64,
            None => !motifs.is_empty(),
        };
        all_matched &= matched;
        rows.push(SpectrumRow {
            energy: *energy,
            multiplicity: *multiplicity,
            motifs,
            predicted_multiplicity: pred_mult,
            matched,
        });
    }
    // Every predicted level must appear in the dense spectrum.
    for (pe, motifs, _) in &predicted {
        if !clusters.iter().any(|(e, _)| (e - pe).abs() < 1e-8) {
            all_matched = false;
            rows.push(SpectrumRow {
                energy: *pe,
                multiplicity: 0,
                motifs: motifs.clone(),
                predicted_multiplicity: None,
                matched: false,
            });
        }
    }
    match format {
        Format::Text => {
            println!(
                "spectrum for n = {n}, rank = {rank} ({} levels)",
                rows.len()
            );
            for r in &rows {
                let motifs: Vec<String> = r.motifs.iter().map(|m| format!("{m:?}")).collect();
                println!(
                    "  E = {:<10.6} x{:<4} motifs [{}] {}",
                    r.energy,
                    r.multiplicity,
                    motifs.join(" "),
                    if r.matched { "ok" } else { "MISMATCH" }
                );
            }
            println!("motif matching: {}", if all_matched { "ok" } else { "FAILED" });
        }
        Format::Json => {
            let out = serde_json::json!({
                "n": n,
                "rank": rank,
                "rows": rows,
                "all_matched": all_matched,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Format::Csv => {
            println!("energy,multiplicity,predicted_multiplicity,matched");
            for r in &rows {
                let pred = r
                    .predicted_multiplicity
                    .map(|d| d.to_string())
                    .unwrap_or_default();
                println!("{},{},{},{}", r.energy, r.multiplicity, pred, r.matched);
            }
        }
    }
    if all_matched {
        Ok(())
    } else {
        Err(Failure::Verification(
            "dense spectrum does not match the motif prediction".into(),
        ))
    }
}

// -------------------------------------------------------------- verify ----

#[derive(Serialize)]
struct VerifyRow {
    motif: Vec<usize>,
    norm: f64,
    energy_residual: f64,
    energy_minus_residual: f64,
    raising_residual: f64,
    highest_weight_residual: f64,
    momentum_residual: f64,
    vanishes_at_zero: bool,
    pass: bool,
}

fn cmd_verify(n: usize, motif: Option<&str>, format: Format) -> Result<(), Failure> {
    const TOL: f64 = 1e-9;
    let motifs: Vec<Motif> = match motif {
        Some(list) => {
            let entries: Vec<usize> = parse_int_list(list)?
                .into_iter()
                .map(|x| {
                    usize::try_from(x)
                        .map_err(|_| Failure::Invalid("motif entries must be positive".into()))
                })
                .collect::<Result<_, _>>()?;
            vec![Motif::new(entries, n, 2)?]
        }
        None => enumerate_motifs(n, 2),
    };
    let mut rows = Vec::new();
    let mut all_pass = true;
    for m in &motifs {
        let ev = hs_eigenvector(m)?;
        let report = verify_eigenvector(&ev)?;
        let pass = report.energy_residual < TOL
            && report.energy_minus_residual < TOL
            && report.raising_residual < TOL
            && report.highest_weight_residual < TOL
            && report.momentum_residual < TOL
            && report.vanishes_at_zero;
        all_pass &= pass;
        rows.push(VerifyRow {
            motif: m.entries().to_vec(),
            norm: report.norm,
            energy_residual: report.energy_residual,
            energy_minus_residual: report.energy_minus_residual,
            raising_residual: report.raising_residual,
            highest_weight_residual: report.highest_weight_residual,
            momentum_residual: report.momentum_residual,
            vanishes_at_zero: report.vanishes_at_zero,
            pass,
        });
    }
    match format {
        Format::Text => {
            println!("eigenvector checks for n = {n} ({} motifs)", rows.len());
            for r in &rows {
                println!(
                    "  motif {:?}: residuals energy {:.2e} / {:.2e}, raising {:.2e}, \
                     highest-weight {:.2e}, momentum {:.2e} -> {}",
                    r.motif,
                    r.energy_residual,
                    r.energy_minus_residual,
                    r.raising_residual,
                    r.highest_weight_residual,
                    r.momentum_residual,
                    if r.pass { "pass" } else { "FAIL" }
                );
            }
        }
        Format::Json => {
            let out = serde_json::json!({
                "n": n,
                "tolerance": TOL,
                "rows": rows,
                "all_pass": all_pass,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Format::Csv => {
            println!(
                "motif,norm,energy_residual,energy_minus_residual,raising_residual,\
                 highest_weight_residual,momentum_residual,vanishes_at_zero,pass"
            );
            for r in &rows {
                let motif: Vec<String> = r.motif.iter().map(|x| x.to_string()).collect();
                println!(
                    "\"{}\",{},{},{},{},{},{},{},{}",
                    motif.join(","),
                    r.norm,
                    r.energy_residual,
                    r.energy_minus_residual,
                    r.raising_residual,
                    r.highest_weight_residual,
                    r.momentum_residual,
                    r.vanishes_at_zero,
                    r.pass
                );
            }
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Verification(
            "one or more eigenvector checks exceeded the tolerance".into(),
        ))
    }
}
