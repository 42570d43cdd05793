//! Command-line front end. Exit codes: 0 PASS, 1 FAIL or parse error,
//! 2 resource cap or unsupported size.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::amalgam::{normal_form, relator_discrepancy, AmalgamNF, GWord};
use crate::cosetenum::{todd_coxeter, Presentation, Status};
use crate::error::{Error, Result};
use crate::graphs::{certify_flexible, to_graph6, DEFAULT_MAX_N};
use crate::membership::{is_prime, verify_fox_magnus, verify_free_product_kernel, verify_power_gamma};
use crate::nilq::{verify_ball_intersection, QuotientMachine};
use crate::report::Verdict;

const DEFAULT_CAP_MB: usize = 1024;
/// Rough per-element footprint used to turn the memory cap into counts.
const BYTES_PER_ITEM: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "flexigraph", version, about = "Flexible cubic graphs of girth 2l and their word-length oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Graph6,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    #[value(name = "theoremB")]
    TheoremB,
    #[value(name = "lemma43")]
    Lemma43,
    #[value(name = "balls")]
    Balls,
    #[value(name = "fox")]
    Fox,
    #[value(name = "relators")]
    Relators,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build Gamma_ell and its flexibility certificate.
    Build {
        #[arg(long)]
        ell: u32,
        /// Graph output file; the certificate goes next to it as `<stem>.cert.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Largest graph handed to the exact automorphism search.
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Run a desk-verification oracle and write its report.
    Oracle {
        #[arg(value_enum)]
        which: OracleKind,
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        ell: u32,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        words: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Todd-Coxeter enumeration for a presentation file.
    Tc {
        file: PathBuf,
        /// Comma-separated subgroup generators.
        #[arg(long, default_value = "")]
        subgroup: String,
        #[arg(long, default_value_t = 1_000_000)]
        max_cosets: usize,
    },
    /// Print the summary of the finite model of G/M.
    Machine {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Item budget derived from `FLEXIGRAPH_CAP_MB`.
pub fn item_cap() -> usize {
    let mb = std::env::var("FLEXIGRAPH_CAP_MB").ok().and_then(|s| s.parse::<usize>().ok()).unwrap_or(DEFAULT_CAP_MB);
    mb.saturating_mul(1 << 20) / BYTES_PER_ITEM
}

/// Writes `contents` to `path` via a temporary file and rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exit_for(v: Verdict) -> u8 {
    if v.passed() {
        0
    } else {
        1
    }
}

fn cert_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "gamma".into());
    out.with_file_name(format!("{stem}.cert.json"))
}

fn cmd_build(ell: u32, out: Option<&Path>, format: Format, max_n: usize) -> Result<u8> {
    if !matches!(ell, 2 | 3) {
        return Err(Error::UnsupportedEll(ell));
    }
    let b = certify_flexible(ell, max_n)?;
    let cert = to_json(&b.certificate)?;
    if let Some(out) = out {
        let graph = match format {
            Format::Json => to_json(&b.gamma.to_json(&b.gamma_cycles))?,
            Format::Graph6 => to_graph6(&b.gamma) + "\n",
        };
        write_atomic(out, graph.as_bytes())?;
        write_atomic(&cert_path(out), cert.as_bytes())?;
    }
    print!("{cert}");
    Ok(exit_for(b.certificate.verdict))
}

#[derive(Debug, Serialize)]
pub struct BallReport {
    pub oracle: &'static str,
    pub ell: u32,
    pub radius: usize,
    pub ball_checked: u128,
    pub members: Vec<String>,
    pub claimed: Vec<String>,
    pub verdict: Verdict,
    pub claim: String,
}

/// The set claimed for `B_*(radius) ∩ M`: `{1}` below `4ℓ`, and
/// `{1, (za²)^{±2ℓ}}` at `4ℓ` and `4ℓ + 1`.
pub fn claimed_ball_set(ell: u32, radius: usize) -> Option<Vec<AmalgamNF>> {
    let four = 4 * ell as usize;
    if radius < four {
        return Some(vec![AmalgamNF::identity()]);
    }
    if radius > four + 1 {
        return None;
    }
    let za2 = normal_form(&GWord::parse("z*a^2").expect("static"));
    let e = 2 * ell as i64;
    let mut v = vec![AmalgamNF::identity(), za2.pow(e), za2.pow(-e)];
    v.sort_by_key(|g| (g.star_length(), g.z_count(), g.eps(), g.exps().to_vec()));
    Some(v)
}

pub fn ball_report(ell: u32, radius: usize, cap: usize) -> Result<BallReport> {
    let claimed = claimed_ball_set(ell, radius).ok_or_else(|| Error::Usage(format!("radius {radius} is beyond the claimed range (at most {})", 4 * ell + 1)))?;
    let m = QuotientMachine::build(ell)?;
    let (found, visited) = verify_ball_intersection(&m, radius, cap)?;
    let claim = if radius < 4 * ell as usize {
        format!("M ∩ B_*({radius}) = {{1}}")
    } else {
        format!("M ∩ B_*({radius}) = {{1, (za^2)^(+-{})}}", 2 * ell)
    };
    Ok(BallReport {
        oracle: "balls",
        ell,
        radius,
        ball_checked: visited,
        members: found.iter().map(|g| g.compact()).collect(),
        claimed: claimed.iter().map(|g| g.compact()).collect(),
        verdict: Verdict::from(found == claimed),
        claim,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(which: OracleKind, rank: usize, ell: u32, radius: Option<usize>, samples: usize, words: usize, seed: u64, out: Option<&Path>) -> Result<u8> {
    let cap = item_cap();
    let (text, verdict) = match which {
        OracleKind::TheoremB => {
            let r = verify_power_gamma(rank, ell, cap)?;
            (to_json(&r)?, r.verdict)
        }
        OracleKind::Lemma43 => {
            if !is_prime(ell) {
                return Err(Error::NotPrime(ell));
            }
            let r = verify_free_product_kernel(ell, cap)?;
            (to_json(&r)?, r.verdict)
        }
        OracleKind::Balls => {
            let r = ball_report(ell, radius.unwrap_or(4 * ell as usize + 1), cap)?;
            (to_json(&r)?, r.verdict)
        }
        OracleKind::Fox => {
            let r = verify_fox_magnus(samples, words, seed);
            (to_json(&r)?, r.verdict)
        }
        OracleKind::Relators => {
            let r = relator_discrepancy();
            (to_json(&r)?, r.verdict)
        }
    };
    emit(out, &text)?;
    Ok(exit_for(verdict))
}

fn cmd_tc(file: &Path, subgroup: &str, max_cosets: usize) -> Result<u8> {
    let text = std::fs::read_to_string(file)?;
    let p = Presentation::parse(&text)?;
    let sub = p.parse_word_list(subgroup)?;
    let budget = max_cosets.min(item_cap() / (2 * p.rank()).max(1));
    let t = todd_coxeter(&p, &sub, budget.max(1));
    match t.status {
        Status::Complete => {
            println!("index {}", t.rows.len());
            Ok(0)
        }
        Status::Overflow => {
            println!("overflow");
            Err(Error::CapExceeded { what: "coset table".into(), cap: budget })
        }
    }
}

fn cmd_machine(ell: u32, out: Option<&Path>) -> Result<u8> {
    let m = QuotientMachine::build(ell)?;
    emit(out, &to_json(&m.summary())?)?;
    Ok(0)
}

pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Build { ell, out, format, max_n } => cmd_build(ell, out.as_deref(), format, max_n),
        Command::Oracle { which, rank, ell, radius, samples, words, seed, out } => {
            cmd_oracle(which, rank, ell, radius, samples, words, seed, out.as_deref())
        }
        Command::Tc { file, subgroup, max_cosets } => cmd_tc(&file, &subgroup, max_cosets),
        Command::Machine { ell, out } => cmd_machine(ell, out.as_deref()),
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 2 } else { 1 })
        }
    }
}
