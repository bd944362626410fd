//! End-to-end decoders: Berlekamp-Massey baseline, hard-decision rational
//! list decoding, and algebraic soft-decision decoding.
//!
//! Every decoder funnels its codeword guesses through `finalize`, which drops
//! anything with a nonzero syndrome, scores, dedupes and ranks.

mod bm;
mod hard;
mod soft;

pub use bm::bm_decode;
pub use hard::{hard_cap, hard_list_decode, hard_list_decode_traced, hard_premise, HardTrace};
pub use soft::{soft_decode, soft_decode_traced, SoftConfig, SoftTrace};

use std::cmp::Ordering;

use crate::algebra::{Gf, Poly, RationalFn, RationalValue};
use crate::keysolver::ThetaFrame;
use crate::ma::PosteriorMatrix;
use crate::rscode::{apply_error_values, erasure_decode, is_codeword, CodeParams, ErrorPattern};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("error value at position {0} is indeterminate")]
    IndeterminateValue(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecodeStatus {
    Success,
    ListEmpty,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub codeword: Vec<Gf>,
    /// Positions where the codeword differs from the received word.
    pub locations: Vec<usize>,
    /// received - codeword at those positions.
    pub values: Vec<Gf>,
    pub score: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    /// Best first.
    pub candidates: Vec<Candidate>,
    pub status: DecodeStatus,
}

impl DecodeResult {
    pub fn best(&self) -> Option<&Candidate> {
        self.candidates.first()
    }

    pub fn contains(&self, codeword: &[Gf]) -> bool {
        self.candidates.iter().any(|c| c.codeword == codeword)
    }

    pub fn list_size(&self) -> usize {
        self.candidates.len()
    }
}

/// How candidates are scored: posterior log-product, or -|I| without a posterior.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Scoring<'a> {
    Posterior(&'a PosteriorMatrix),
    Distance,
}

/// Validate, score, dedupe and rank codeword guesses against `received`.
pub(crate) fn finalize(
    params: &CodeParams,
    received: &[Gf],
    words: Vec<Vec<Gf>>,
    scoring: Scoring<'_>,
    failed: bool,
) -> DecodeResult {
    let f = params.field();
    let mut out: Vec<Candidate> = Vec::new();
    for w in words {
        if w.len() != params.n() || !is_codeword(params, &w) || out.iter().any(|c| c.codeword == w) {
            continue;
        }
        let pat = ErrorPattern::between(received, &w);
        let score = match scoring {
            Scoring::Posterior(pi) => pi.log_score(f, received, &w),
            Scoring::Distance => -(pat.weight() as f64),
        };
        out.push(Candidate { codeword: w, locations: pat.locations, values: pat.values, score });
    }
    out.sort_by(rank);
    let status = if failed {
        DecodeStatus::BudgetExceeded
    } else if out.is_empty() {
        DecodeStatus::ListEmpty
    } else {
        DecodeStatus::Success
    };
    DecodeResult { candidates: out, status }
}

/// Higher score first, then fewer errors, then the lexicographically smaller codeword.
fn rank(a: &Candidate, b: &Candidate) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then(a.locations.len().cmp(&b.locations.len()))
        .then_with(|| a.codeword.cmp(&b.codeword))
}

/// Positions i with Λ(α^(-i)) = 0, or `None` unless there are exactly deg Λ of them.
pub fn locator_positions(params: &CodeParams, lambda: &Poly) -> Option<Vec<usize>> {
    let f = params.field();
    let deg = lambda.deg().finite()?;
    let locs: Vec<usize> = (1..=params.n())
        .filter(|&i| lambda.eval(f, params.locator_point(i)).is_zero())
        .collect();
    (locs.len() == deg).then_some(locs)
}

/// Forney: e_i = Ω(x)/(x·Λ'(x)) at x = α^(-i).
pub fn forney_values(params: &CodeParams, lambda: &Poly, omega: &Poly, locs: &[usize]) -> Option<Vec<Gf>> {
    let f = params.field();
    let dl = lambda.derivative();
    locs.iter()
        .map(|&i| {
            let x = params.locator_point(i);
            f.div(omega.eval(f, x), f.mul(x, dl.eval(f, x))).ok()
        })
        .collect()
}

/// Error values from g' in characteristic 2: e_i = φ(x) / (x·(g'(x) + h'(x))) at x = α^(-i).
pub fn error_values_from_gprime(
    params: &CodeParams,
    frame: &ThetaFrame,
    gprime: &RationalFn,
    locs: &[usize],
) -> Result<Vec<Gf>, DecodeError> {
    let f = params.field();
    locs.iter()
        .map(|&i| {
            let x = params.locator_point(i);
            let RationalValue::Finite(gp) = gprime.eval(f, x) else {
                return Err(DecodeError::IndeterminateValue(i));
            };
            let den = f.mul(x, gp + frame.h_prime_at(i));
            f.div(frame.phi_at(i), den).map_err(|_| DecodeError::IndeterminateValue(i))
        })
        .collect()
}

/// Codeword from a claimed location set: erasure decoding on the complement
/// when it has at least k positions, otherwise the supplied error values.
pub(crate) fn reconstruct(
    params: &CodeParams,
    received: &[Gf],
    locs: &[usize],
    values: impl FnOnce() -> Option<Vec<Gf>>,
) -> Option<Vec<Gf>> {
    if locs.len() <= params.redundancy() {
        let good: Vec<usize> = (1..=params.n()).filter(|i| !locs.contains(i)).collect();
        erasure_decode(params, received, &good).ok()
    } else {
        apply_error_values(params, received, locs, &values()?)
    }
}
