//! `ratdec`: simulate FER sweeps, run verification suites, decode single words.

mod input;

use std::fs;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use ratdec_core::decoder::{hard_list_decode_traced, soft_decode_traced, hard_premise};
use ratdec_core::ma::{asymptotic_condition, soft_premise};
use ratdec_core::rscode::is_codeword;
use ratdec_core::sim::{run_sweep, write_csv, SimConfig};
use ratdec_core::verify::{run_suite, SUITES};
use ratdec_core::{bm_decode, DecodeResult, ErrorPattern, FactorMethod, PosteriorMatrix, SoftConfig};

#[derive(Parser)]
#[command(name = "ratdec", version, about = "Rational-interpolation list and soft-decision RS decoding")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a frame-error-rate sweep and write a v1 CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output CSV; overrides `out` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Extra `key=value` overrides, applied after the config file.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Run a verification suite: algebra, interp, planted-hard or planted-soft.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Decode one received word with every decoder.
    Decode {
        /// m,n,k
        #[arg(long)]
        code: String,
        /// Received word in hex.
        #[arg(long)]
        word: String,
        /// Posterior matrix file for the soft decoder.
        #[arg(long)]
        pi: Option<PathBuf>,
        /// Transmitted codeword in hex, enables diagnostics.
        #[arg(long)]
        truth: Option<String>,
        #[arg(long, default_value_t = 8)]
        budget: usize,
        #[arg(long, default_value = "pairwise")]
        method: FactorMethod,
        /// Multiplicity for the hard list decoder.
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Target radius for the hard list decoder; t + 1 by default.
        #[arg(long)]
        radius: Option<usize>,
    },
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Verification(anyhow::Error),
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Simulate { config, jobs, seed, out, set } => simulate(config, jobs, seed, out, set),
        Cmd::Verify { suite, seed } => verify(&suite, seed),
        Cmd::Decode { code, word, pi, truth, budget, method, r, radius } => {
            decode(&code, &word, pi, truth, SoftConfig { budget, method, rho: None }, r, radius)
        }
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(e)) => {
            eprintln!("ratdec: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("ratdec: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn simulate(
    config: PathBuf,
    jobs: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    set: Vec<String>,
) -> Result<(), Failure> {
    let text = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
    let mut cfg = SimConfig::parse(&text).with_context(|| format!("in {}", config.display()))?;
    for kv in &set {
        let (k, v) = kv.split_once('=').with_context(|| format!("--set expects KEY=VALUE, got {kv:?}"))?;
        cfg.set(k.trim(), v.trim()).map_err(anyhow::Error::from)?;
    }
    if let Some(j) = jobs {
        cfg.jobs = j;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let out = out
        .or_else(|| cfg.out.clone().map(PathBuf::from))
        .context("no output path: pass --out or set `out` in the config")?;
    cfg.validate().map_err(anyhow::Error::from)?;
    let rows = run_sweep(&cfg).map_err(anyhow::Error::from)?;
    let file = fs::File::create(&out).with_context(|| format!("creating {}", out.display()))?;
    write_csv(BufWriter::new(file), &rows).map_err(anyhow::Error::from)?;
    eprintln!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}

fn verify(suite: &str, seed: u64) -> Result<(), Failure> {
    let report = run_suite(suite, seed)
        .with_context(|| format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", ")))?;
    println!("{}: {} passed, {} failed, {} skipped", report.name, report.passed, report.failed, report.skipped);
    for f in &report.failures {
        println!("  FAIL {f}");
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Verification(anyhow::anyhow!("suite {suite} had {} failures", report.failed)))
    }
}

fn print_result(name: &str, res: &DecodeResult, params: &ratdec_core::CodeParams) {
    println!("{name}: {:?}, {} candidate(s)", res.status, res.candidates.len());
    for (rank, c) in res.candidates.iter().enumerate() {
        let errs: Vec<String> = c.locations.iter().zip(&c.values).map(|(i, e)| format!("{i}:{:x}", e.0)).collect();
        println!(
            "  #{} {} score {:.4} valid {} I = [{}]",
            rank + 1,
            input::format_word(&c.codeword, params),
            c.score,
            is_codeword(params, &c.codeword),
            errs.join(" ")
        );
    }
}

fn decode(
    code: &str,
    word: &str,
    pi: Option<PathBuf>,
    truth: Option<String>,
    soft: SoftConfig,
    r: usize,
    radius: Option<usize>,
) -> Result<(), Failure> {
    let params = input::parse_code(code)?;
    let f = params.field();
    let received = input::parse_word(word, &params).context("--word")?;
    let truth = truth.map(|t| input::parse_word(&t, &params).context("--truth")).transpose()?;
    let pi = match pi {
        Some(path) => {
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            input::parse_pi(&text, &params).with_context(|| format!("in {}", path.display()))?
        }
        None => PosteriorMatrix::certain(params.n()),
    };
    if soft.budget == 0 || r == 0 {
        return Err(Failure::Usage(anyhow::anyhow!("--budget and --r must be positive")));
    }
    let w = radius.unwrap_or(params.t() + 1);
    let bm = bm_decode(&params, &received);
    let (hard, htr) = hard_list_decode_traced(&params, &received, w, r);
    let (sres, str_) = soft_decode_traced(&params, &pi, &received, &soft);
    print_result("bm", &bm, &params);
    print_result("hard", &hard, &params);
    print_result("soft", &sres, &params);
    let Some(truth) = truth else { return Ok(()) };
    if !is_codeword(&params, &truth) {
        return Err(Failure::Usage(anyhow::anyhow!("--truth is not a codeword")));
    }
    let pat = ErrorPattern::between(&received, &truth);
    println!("truth: {} errors at {:?}", pat.weight(), pat.locations);
    if let (Some(keys), Some(q)) = (htr.keys.as_ref(), htr.interp.as_ref()) {
        println!(
            "hard premise at deg(Lambda) = {}, r = {r}: {}",
            pat.weight(),
            hard_premise(keys, pat.weight(), r, q)
        );
    }
    if let (Some(keys), Some(a)) = (str_.keys.as_ref(), str_.assignment.as_ref()) {
        let spat = ErrorPattern::between(&str_.received, &truth);
        let used = str_.pi.as_ref().unwrap_or(&pi);
        println!(
            "soft counting premise (C = {}, D_Y = {}): {}",
            a.cost,
            a.dy,
            soft_premise(f, &a.m, a.cost, a.dy, keys, &spat)
        );
        println!("soft asymptotic condition: {}", asymptotic_condition(f, used, keys, &spat));
    }
    let found = [&bm, &hard, &sres].iter().any(|r| r.contains(&truth));
    println!("truth in a list: {found}");
    if found {
        Ok(())
    } else {
        Err(Failure::Verification(anyhow::anyhow!("transmitted codeword not recovered")))
    }
}
