use crate::algebra::{Gf, RationalFn, RationalValue};
use crate::factor::{pairwise_ratio, resultant_ratio, shifted_rational_roots, FactorError, FactorMethod, RootBounds};
use crate::interp::{interpolate, InterpError, InterpPoint, InterpResult, WeightedOrder};
use crate::keysolver::{berlekamp, build_frame, order_keys, select_thetas, OrderedKeys, Theta, ThetaFrame};
use crate::ma::{assign, error_value, Assignment, PosteriorMatrix};
use crate::rscode::{is_codeword, syndromes, CodeParams};

use super::bm::bm_word;
use super::{error_values_from_gprime, finalize, reconstruct, DecodeResult, Scoring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SoftConfig {
    /// Number of unit multiplicity increments handed to the greedy assignment.
    pub budget: usize,
    pub method: FactorMethod,
    /// Largest error count the root bounds allow for; n - k when unset.
    pub rho: Option<usize>,
}

impl Default for SoftConfig {
    fn default() -> Self {
        SoftConfig { budget: 8, method: FactorMethod::Pairwise, rho: None }
    }
}

/// Intermediate objects of one soft decode, for verification.
#[derive(Clone, Debug, Default)]
pub struct SoftTrace {
    /// Hard decision and posterior actually decoded (after any flip).
    pub received: Vec<Gf>,
    pub pi: Option<PosteriorMatrix>,
    pub flipped: Option<(usize, usize)>,
    pub budget: usize,
    pub keys: Option<OrderedKeys>,
    pub thetas: Option<(Theta, Theta)>,
    pub assignment: Option<Assignment>,
    pub frames: Vec<ThetaFrame>,
    pub interps: Vec<InterpResult>,
    pub roots: Vec<Vec<RationalFn>>,
    /// Candidate ratios √g1'/√g2'.
    pub ratios: Vec<RationalFn>,
    /// True when the resultant vanished and pairwise division was used instead.
    pub resultant_fallback: bool,
    /// No ratio gave a candidate, y divided both polynomials, and constant
    /// g was tried instead.
    pub constant_fallback: bool,
}

/// Root bounds for √g' in the frame of θ, after the pole shift.
pub(crate) fn sqrt_gprime_bounds(keys: &OrderedKeys, theta: Theta, rho: usize) -> RootBounds {
    let (la, lb) = (keys.l_a, keys.l_b);
    let w_deg = (2 * rho).saturating_sub(la + lb + 1) / 2;
    let den = match theta {
        Theta::Finite(_) => rho.saturating_sub(la),
        Theta::Infinity => rho.saturating_sub(lb),
    };
    RootBounds::new(den + w_deg, den, den)
}

/// Interpolation order for the frame of θ: weights (1, (L_a-L_b-1)/2), or
/// (1, (L_b-L_a-1)/2) for θ = ∞.
pub(crate) fn soft_order(keys: &OrderedKeys, theta: Theta) -> WeightedOrder {
    let (la, lb) = (keys.l_a as i64, keys.l_b as i64);
    match theta {
        Theta::Finite(_) => WeightedOrder::doubled(2, la - lb - 1),
        Theta::Infinity => WeightedOrder::doubled(2, lb - la - 1),
    }
}

/// (α^(-i), √p(α^(-i), α^(-j)), M) for every cell with M > 0.
pub(crate) fn soft_points(params: &CodeParams, frame: &ThetaFrame, asg: &Assignment) -> Vec<InterpPoint> {
    let f = params.field();
    asg.m
        .nonzero()
        .map(|(i, j, m)| {
            let p = frame.point_value_at(params, i, error_value(f, j));
            InterpPoint::new(params.locator_point(i), f.sqrt(p), m as usize)
        })
        .collect()
}

pub fn soft_decode(params: &CodeParams, pi: &PosteriorMatrix, received: &[Gf], cfg: &SoftConfig) -> DecodeResult {
    soft_decode_traced(params, pi, received, cfg).0
}

enum Attempt {
    Done,
    Infeasible,
}

pub fn soft_decode_traced(
    params: &CodeParams,
    pi: &PosteriorMatrix,
    received: &[Gf],
    cfg: &SoftConfig,
) -> (DecodeResult, SoftTrace) {
    assert!(cfg.budget >= 1, "budget must be positive");
    let score = Scoring::Posterior(pi);
    let mut trace = SoftTrace { received: received.to_vec(), ..SoftTrace::default() };
    let mut words: Vec<Vec<Gf>> = bm_word(params, received).into_iter().collect();
    if syndromes(params, received).is_zero() {
        return (finalize(params, received, words, score, false), trace);
    }
    let mut failed = true;
    let mut flipped_once = false;
    let mut cur_rx = received.to_vec();
    let mut cur_pi = pi.clone();
    for budget in [cfg.budget, 2 * cfg.budget] {
        match attempt(params, &mut cur_rx, &mut cur_pi, &mut flipped_once, budget, cfg, &mut trace, &mut words) {
            Attempt::Done => {
                failed = false;
                break;
            }
            Attempt::Infeasible => continue,
        }
    }
    (finalize(params, received, words, score, failed), trace)
}

#[allow(clippy::too_many_arguments)]
fn attempt(
    params: &CodeParams,
    rx: &mut [Gf],
    pi: &mut PosteriorMatrix,
    flipped_once: &mut bool,
    budget: usize,
    cfg: &SoftConfig,
    trace: &mut SoftTrace,
    words: &mut Vec<Vec<Gf>>,
) -> Attempt {
    let f = params.field();
    trace.budget = budget;
    let mut keys = order_keys(&berlekamp(f, &syndromes(params, rx), params.redundancy()));
    let mut asg = assign(pi, budget, &keys);
    if !*flipped_once {
        if let Some(&(i, j)) = asg.over_cap.first() {
            *flipped_once = true;
            rx[i - 1] += error_value(f, j);
            *pi = pi.flip(f, i, j);
            trace.flipped = Some((i, j));
            let s = syndromes(params, rx);
            if s.is_zero() {
                words.push(rx.to_vec());
                trace.received = rx.to_vec();
                trace.pi = Some(pi.clone());
                return Attempt::Done;
            }
            words.extend(bm_word(params, rx));
            keys = order_keys(&berlekamp(f, &s, params.redundancy()));
            asg = assign(pi, budget, &keys);
        }
    }
    trace.received = rx.to_vec();
    trace.pi = Some(pi.clone());
    trace.keys = Some(keys.clone());
    trace.assignment = Some(asg.clone());
    if asg.dy < 1 {
        return Attempt::Infeasible;
    }
    let Ok((t1, t2)) = select_thetas(&keys, params) else {
        return Attempt::Done;
    };
    trace.thetas = Some((t1, t2));
    let frames = [build_frame(params, &keys, t1), build_frame(params, &keys, t2)];
    let run = |fr: &ThetaFrame| {
        let pts = soft_points(params, fr, &asg);
        interpolate(f, &pts, &soft_order(&keys, fr.theta), asg.dy)
    };
    let (r1, r2) = rayon::join(|| run(&frames[0]), || run(&frames[1]));
    let (q1, q2) = match (r1, r2) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(InterpError::InfeasibleCap { .. }), _) | (_, Err(InterpError::InfeasibleCap { .. })) => {
            trace.frames = frames.to_vec();
            return Attempt::Infeasible;
        }
        _ => return Attempt::Done,
    };
    let rho = cfg.rho.unwrap_or(params.redundancy());
    let b1 = sqrt_gprime_bounds(&keys, t1, rho);
    let b2 = sqrt_gprime_bounds(&keys, t2, rho);
    let roots1 = shifted_rational_roots(f, &q1.q, b1, b1.truncation(rho));
    let roots2 = shifted_rational_roots(f, &q2.q, b2, b2.truncation(rho));
    let pairwise = || pairwise_ratio(f, &roots2, &roots1);
    let ratios = match cfg.method {
        FactorMethod::Pairwise => pairwise(),
        FactorMethod::Resultant => {
            let d = rho.saturating_sub(keys.l_a);
            let zb = RootBounds::new(2 * d, d, d);
            match resultant_ratio(f, &q1.q, &q2.q, zb, zb.truncation(rho)) {
                Ok(z) => z,
                Err(FactorError::DegenerateResultant) => {
                    trace.resultant_fallback = true;
                    pairwise()
                }
                Err(_) => Vec::new(),
            }
        }
    };
    let h1 = &frames[0];
    let before = words.len();
    for z in &ratios {
        let g = match (t1, t2) {
            (Theta::Finite(a), Theta::Finite(b)) => {
                let inv = f.inv(a + b).expect("distinct θ");
                z.add(f, &RationalFn::one()).scale(f, inv)
            }
            _ => z.clone(),
        };
        let locs: Vec<usize> = (1..=params.n())
            .filter(|&i| g.eval(f, params.locator_point(i)) == RationalValue::Finite(h1.h_at(i)))
            .collect();
        let gp = g.derivative(f);
        if let Some(c) = reconstruct(params, rx, &locs, || error_values_from_gprime(params, h1, &gp, &locs).ok()) {
            words.push(c);
        }
    }
    // √g' = 0 is a common root whenever y divides both polynomials, and then
    // the ratio is 0/0. With g' = 0 and the degree bounds here g is constant,
    // so try each value h takes on the support.
    let ratio_hit = words[before..].iter().any(|w| is_codeword(params, w));
    if !ratio_hit && q1.minimal.row(0).is_zero() && q2.minimal.row(0).is_zero() {
        trace.constant_fallback = true;
        let mut tried: Vec<Gf> = Vec::new();
        for i in 1..=params.n() {
            let gamma = h1.h_at(i);
            if tried.contains(&gamma) {
                continue;
            }
            tried.push(gamma);
            let locs: Vec<usize> = (1..=params.n()).filter(|&l| h1.h_at(l) == gamma).collect();
            let zero = RationalFn::zero();
            if let Some(c) = reconstruct(params, rx, &locs, || error_values_from_gprime(params, h1, &zero, &locs).ok()) {
                words.push(c);
            }
        }
    }
    trace.frames = frames.to_vec();
    trace.interps = vec![q1, q2];
    trace.roots = vec![roots1, roots2];
    trace.ratios = ratios;
    Attempt::Done
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::{bm_decode, DecodeStatus};
    use crate::ma::error_index;
    use crate::rscode::{encode, is_codeword, ErrorPattern};

    fn params() -> CodeParams {
        CodeParams::standard(4, 9).unwrap()
    }

    fn concentrated(p: &CodeParams, e: &ErrorPattern, mass: f64) -> PosteriorMatrix {
        let f = p.field();
        let mut pi = PosteriorMatrix::certain(15);
        for (&i, &v) in e.locations.iter().zip(&e.values) {
            pi.set(i, error_index(f, v), mass);
            pi.set_hard(i, 1.0 - mass);
        }
        pi
    }

    #[test]
    fn clean_word_fast_path() {
        let p = params();
        let c = encode(&p, &[Gf(5); 9]).unwrap();
        let r = soft_decode(&p, &PosteriorMatrix::certain(15), &c, &SoftConfig::default());
        assert_eq!(r.status, DecodeStatus::Success);
        assert!(r.candidates[0].locations.is_empty());
    }

    #[test]
    fn recovers_planted_weight_four() {
        let p = params();
        let c = encode(&p, &(1..=9).map(|v| Gf(v * 2 % 16)).collect::<Vec<_>>()).unwrap();
        let e = ErrorPattern::new(vec![(1, Gf(3)), (6, Gf(9)), (10, Gf(14)), (15, Gf(2))]);
        let r = e.apply(&c);
        assert!(!bm_decode(&p, &r).contains(&c));
        let pi = concentrated(&p, &e, 0.95);
        for method in [FactorMethod::Pairwise, FactorMethod::Resultant] {
            let cfg = SoftConfig { budget: 4, method, rho: None };
            let (res, tr) = soft_decode_traced(&p, &pi, &r, &cfg);
            assert!(res.contains(&c), "{method:?} {tr:?}");
            assert_eq!(res.best().unwrap().codeword, c);
            assert!(res.candidates.iter().all(|x| is_codeword(&p, &x.codeword)));
        }
    }

    #[test]
    fn wrong_posterior_stays_sound() {
        let p = params();
        let c = encode(&p, &[Gf(7); 9]).unwrap();
        let e = ErrorPattern::new(vec![(2, Gf(3)), (4, Gf(9)), (8, Gf(14)), (11, Gf(2))]);
        let decoy = ErrorPattern::new(vec![(1, Gf(5)), (3, Gf(6)), (5, Gf(7)), (7, Gf(8))]);
        let r = e.apply(&c);
        let res = soft_decode(&p, &concentrated(&p, &decoy, 0.95), &r, &SoftConfig::default());
        assert!(res.candidates.iter().all(|x| is_codeword(&p, &x.codeword)));
    }
}
