//! Frame-error-rate sweeps and the versioned CSV they produce.
//!
//! Each trial draws from its own ChaCha8 stream, selected by (point, trial)
//! under the master seed, so results do not depend on thread count.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{Field, Gf};
use crate::channel::{transmit, ChannelSpec};
use crate::decoder::{bm_decode, hard_list_decode, soft_decode, DecodeResult, SoftConfig};
use crate::factor::FactorMethod;
use crate::rscode::{CodeParams, RsError};
use crate::verify::random_codeword;

pub const CSV_VERSION_LINE: &str = "# ratdec-csv v1";
pub const CSV_COLUMNS: [&str; 8] =
    ["decoder", "param", "trials", "frame_errors", "fer", "mean_list_size", "mean_decode_us", "seed"];

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown config key '{0}'")]
    UnknownKey(String),
    #[error("bad value '{value}' for '{key}': {msg}")]
    BadValue { key: String, value: String, msg: String },
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Code(#[from] RsError),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("not a ratdec v1 CSV (first line {0:?})")]
    Version(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    Bm,
    Hard,
    Soft,
}

impl DecoderKind {
    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::Bm => "bm",
            DecoderKind::Hard => "hard",
            DecoderKind::Soft => "soft",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bm" => Ok(DecoderKind::Bm),
            "hard" => Ok(DecoderKind::Hard),
            "soft" => Ok(DecoderKind::Soft),
            other => Err(format!("unknown decoder '{other}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelKind {
    Qsc,
    Awgn,
}

impl ChannelKind {
    pub fn spec(self, param: f64) -> ChannelSpec {
        match self {
            ChannelKind::Qsc => ChannelSpec::Qsc { p: param },
            ChannelKind::Awgn => ChannelSpec::Awgn { snr_db: param },
        }
    }
}

/// Everything a sweep needs. Parsed from `key = value` lines; `#` starts a comment.
#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub m: u32,
    pub n: Option<usize>,
    pub k: usize,
    pub prim_poly: Option<u32>,
    pub channel: ChannelKind,
    pub points: Vec<f64>,
    pub trials: usize,
    pub decoders: Vec<DecoderKind>,
    pub seed: u64,
    pub soft: SoftConfig,
    /// Error count the hard decoder aims at; t + 1 when unset.
    pub hard_radius: Option<usize>,
    pub hard_r: usize,
    /// When false the timing column is written as 0, making output byte-reproducible.
    pub timing: bool,
    pub jobs: usize,
    pub out: Option<String>,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            m: 4,
            n: None,
            k: 9,
            prim_poly: None,
            channel: ChannelKind::Qsc,
            points: Vec::new(),
            trials: 1000,
            decoders: vec![DecoderKind::Bm, DecoderKind::Soft],
            seed: 1,
            soft: SoftConfig::default(),
            hard_radius: None,
            hard_r: 2,
            timing: true,
            jobs: 1,
            out: None,
        }
    }
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, SimError>
where
    T::Err: fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_one(key, s))
        .collect()
}

fn parse_one<T: FromStr>(key: &str, value: &str) -> Result<T, SimError>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e: T::Err| SimError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
        msg: e.to_string(),
    })
}

fn parse_u32_maybe_hex(key: &str, value: &str) -> Result<u32, SimError> {
    let parsed = match value.strip_prefix("0x").or_else(|| value.strip_prefix("0X")) {
        Some(h) => u32::from_str_radix(h, 16).map_err(|e| e.to_string()),
        None => value.parse::<u32>().map_err(|e| e.to_string()),
    };
    parsed.map_err(|msg| SimError::BadValue { key: key.to_string(), value: value.to_string(), msg })
}

impl SimConfig {
    pub fn parse(text: &str) -> Result<SimConfig, SimError> {
        let mut cfg = SimConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| SimError::Syntax { line: idx + 1, msg: format!("expected key = value, got {line:?}") })?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| SimError::Syntax { line: idx + 1, msg: e.to_string() })?;
        }
        Ok(cfg)
    }

    /// Set one key; used for both file lines and command-line overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), SimError> {
        match key {
            "m" => self.m = parse_one(key, value)?,
            "n" => self.n = Some(parse_one(key, value)?),
            "k" => self.k = parse_one(key, value)?,
            "prim_poly" => self.prim_poly = Some(parse_u32_maybe_hex(key, value)?),
            "channel" => {
                self.channel = match value {
                    "qsc" => ChannelKind::Qsc,
                    "awgn" => ChannelKind::Awgn,
                    _ => {
                        return Err(SimError::BadValue {
                            key: key.into(),
                            value: value.into(),
                            msg: "expected qsc or awgn".into(),
                        })
                    }
                }
            }
            "points" => self.points = parse_list(key, value)?,
            "trials" => self.trials = parse_one(key, value)?,
            "decoders" => self.decoders = parse_list(key, value)?,
            "seed" => self.seed = parse_one(key, value)?,
            "budget" => self.soft.budget = parse_one(key, value)?,
            "method" => self.soft.method = parse_one::<FactorMethod>(key, value)?,
            "rho" => self.soft.rho = Some(parse_one(key, value)?),
            "hard_radius" => self.hard_radius = Some(parse_one(key, value)?),
            "hard_r" => self.hard_r = parse_one(key, value)?,
            "timing" => self.timing = parse_one(key, value)?,
            "jobs" => self.jobs = parse_one(key, value)?,
            "out" => self.out = Some(value.to_string()),
            _ => return Err(SimError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    pub fn code_params(&self) -> Result<CodeParams, SimError> {
        let field = match self.prim_poly {
            Some(p) => Field::new(self.m, p),
            None => Field::with_default_poly(self.m),
        }
        .map_err(|e| SimError::Invalid(e.to_string()))?;
        let params = CodeParams::new(field, self.k)?;
        if let Some(n) = self.n {
            if n != params.n() {
                return Err(SimError::Invalid(format!("n must be 2^m - 1 = {}", params.n())));
            }
        }
        Ok(params)
    }

    /// Check everything before any trial runs.
    pub fn validate(&self) -> Result<CodeParams, SimError> {
        let params = self.code_params()?;
        if self.decoders.is_empty() {
            return Err(SimError::Invalid("no decoders selected".into()));
        }
        if self.soft.budget == 0 {
            return Err(SimError::Invalid("budget must be at least 1".into()));
        }
        if self.hard_r == 0 {
            return Err(SimError::Invalid("hard_r must be at least 1".into()));
        }
        if self.jobs == 0 {
            return Err(SimError::Invalid("jobs must be at least 1".into()));
        }
        for &p in &self.points {
            self.channel.spec(p).validate().map_err(|e| SimError::Invalid(e.to_string()))?;
        }
        Ok(params)
    }
}

/// One aggregated CSV row.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CsvRow {
    pub decoder: String,
    pub param: f64,
    pub trials: usize,
    pub frame_errors: usize,
    pub fer: f64,
    pub mean_list_size: f64,
    pub mean_decode_us: f64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug)]
struct Outcome {
    frame_error: bool,
    list_size: usize,
    micros: f64,
}

pub fn decode_with(
    kind: DecoderKind,
    params: &CodeParams,
    hard: &[Gf],
    pi: &crate::ma::PosteriorMatrix,
    cfg: &SimConfig,
) -> DecodeResult {
    match kind {
        DecoderKind::Bm => bm_decode(params, hard),
        DecoderKind::Hard => {
            let w = cfg.hard_radius.unwrap_or(params.t() + 1);
            hard_list_decode(params, hard, w, cfg.hard_r)
        }
        DecoderKind::Soft => soft_decode(params, pi, hard, &cfg.soft),
    }
}

/// The RNG for one trial.
pub fn trial_rng(seed: u64, point: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((point as u64) << 32) | trial as u64);
    rng
}

fn run_trial(params: &CodeParams, cfg: &SimConfig, point: usize, trial: usize) -> Vec<Outcome> {
    let mut rng = trial_rng(cfg.seed, point, trial);
    let codeword = random_codeword(params, &mut rng);
    let rw = transmit(params, &cfg.channel.spec(cfg.points[point]), &codeword, &mut rng);
    cfg.decoders
        .iter()
        .map(|&d| {
            let start = Instant::now();
            let res = decode_with(d, params, &rw.hard, &rw.pi, cfg);
            let micros = start.elapsed().as_secs_f64() * 1e6;
            Outcome {
                frame_error: res.best().is_none_or(|c| c.codeword != codeword),
                list_size: res.list_size(),
                micros,
            }
        })
        .collect()
}

/// Run every (point, decoder) cell; rows come out point-major in config order.
pub fn run_sweep(cfg: &SimConfig) -> Result<Vec<CsvRow>, SimError> {
    let params = cfg.validate()?;
    if cfg.trials == 0 {
        return Ok(Vec::new());
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build()?;
    let mut rows = Vec::new();
    for (pi, &param) in cfg.points.iter().enumerate() {
        let outcomes: Vec<Vec<Outcome>> =
            pool.install(|| (0..cfg.trials).into_par_iter().map(|t| run_trial(&params, cfg, pi, t)).collect());
        for (di, &d) in cfg.decoders.iter().enumerate() {
            let col = outcomes.iter().map(|o| o[di]);
            let frame_errors = col.clone().filter(|o| o.frame_error).count();
            let list: usize = col.clone().map(|o| o.list_size).sum();
            let micros: f64 = col.map(|o| o.micros).sum();
            let denom = cfg.trials as f64;
            rows.push(CsvRow {
                decoder: d.name().to_string(),
                param,
                trials: cfg.trials,
                frame_errors,
                fer: frame_errors as f64 / denom,
                mean_list_size: list as f64 / denom,
                mean_decode_us: if cfg.timing { (micros / denom * 1000.0).round() / 1000.0 } else { 0.0 },
                seed: cfg.seed,
            });
        }
    }
    Ok(rows)
}

/// Version line, header, rows. Zero trials give a header-only file.
pub fn write_csv<W: Write>(mut out: W, rows: &[CsvRow]) -> Result<(), SimError> {
    writeln!(out, "{CSV_VERSION_LINE}")?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: BufRead>(mut input: R) -> Result<Vec<CsvRow>, SimError> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    if first.trim_end() != CSV_VERSION_LINE {
        return Err(SimError::Version(first.trim_end().to_string()));
    }
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_COLUMNS {
        return Err(SimError::Version(header.join(",")));
    }
    r.deserialize().map(|row| row.map_err(SimError::from)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SimConfig {
        SimConfig::parse(
            "# sweep\nm = 4\nk = 9\nchannel = qsc\npoints = 0.0, 0.1\ntrials = 20\n\
             decoders = bm,hard,soft\nseed = 5\ntiming = false\n",
        )
        .unwrap()
    }

    #[test]
    fn parse_and_override() {
        let mut c = small();
        assert_eq!(c.points, vec![0.0, 0.1]);
        assert_eq!(c.decoders.len(), 3);
        c.set("seed", "9").unwrap();
        assert_eq!(c.seed, 9);
        assert!(matches!(SimConfig::parse("m = 4\nbogus = 1"), Err(SimError::Syntax { line: 2, .. })));
        assert!(matches!(SimConfig::default().set("bogus", "1"), Err(SimError::UnknownKey(_))));
        assert!(matches!(SimConfig::parse("trials 5"), Err(SimError::Syntax { line: 1, .. })));
        assert!(matches!(SimConfig::default().set("trials", "x"), Err(SimError::BadValue { .. })));
        assert_eq!(SimConfig::parse("prim_poly = 0x13").unwrap().prim_poly, Some(0x13));
    }

    #[test]
    fn validation() {
        let mut c = small();
        c.points = vec![1.5];
        assert!(c.validate().is_err());
        let mut c = small();
        c.n = Some(14);
        assert!(c.validate().is_err());
        let mut c = small();
        c.decoders.clear();
        assert!(c.validate().is_err());
    }

    #[test]
    fn noiseless_point_has_zero_fer_and_output_is_deterministic() {
        let c = small();
        let rows = run_sweep(&c).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows[..3].iter().all(|r| r.fer == 0.0));
        let mut a = Vec::new();
        write_csv(&mut a, &rows).unwrap();
        let mut c2 = c.clone();
        c2.jobs = 3;
        let mut b = Vec::new();
        write_csv(&mut b, &run_sweep(&c2).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_roundtrip_and_header() {
        let rows = vec![CsvRow {
            decoder: "soft".into(),
            param: 0.15,
            trials: 10,
            frame_errors: 3,
            fer: 0.3,
            mean_list_size: 1.25,
            mean_decode_us: 12.5,
            seed: 42,
        }];
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("# ratdec-csv v1"));
        assert_eq!(lines.next(), Some("decoder,param,trials,frame_errors,fer,mean_list_size,mean_decode_us,seed"));
        assert_eq!(lines.next(), Some("soft,0.15,10,3,0.3,1.25,12.5,42"));
        assert_eq!(read_csv(&buf[..]).unwrap(), rows);
        assert!(read_csv(&b"decoder,param\n"[..]).is_err());
    }

    #[test]
    fn zero_trials_header_only() {
        let mut c = small();
        c.trials = 0;
        let rows = run_sweep(&c).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 2);
    }
}
