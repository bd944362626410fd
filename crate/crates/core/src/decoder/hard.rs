use crate::algebra::{Gf, RationalFn};
use crate::factor::{hard_root_to_uv, hard_transform_roots, RootBounds};
use crate::interp::{interpolate, InterpPoint, InterpResult, WeightedOrder};
use crate::keysolver::{berlekamp, build_frame, order_keys, select_thetas, OrderedKeys, Theta};
use crate::rscode::{syndromes, CodeParams};

use super::bm::bm_word;
use super::{finalize, forney_values, locator_positions, reconstruct, DecodeResult, Scoring};

/// Everything the hard decoder computed on the way to its list.
#[derive(Clone, Debug, Default)]
pub struct HardTrace {
    pub keys: Option<OrderedKeys>,
    pub theta: Option<Theta>,
    pub cap: usize,
    pub interp: Option<InterpResult>,
    pub roots: Vec<RationalFn>,
}

/// Number of monomials x^i y^j, j ≤ c, with i + j(L_a - L_b) + c(w - L_a) ≤ rw - 1.
fn monomial_room(keys: &OrderedKeys, w: usize, r: usize, c: usize) -> i64 {
    let d = (r * w) as i64 - 1 - (w as i64 - keys.l_a as i64) * c as i64;
    let step = keys.l_b as i64 - keys.l_a as i64;
    (0..=c as i64).map(|j| (d + step * j + 1).max(0)).sum()
}

/// y-degree cap for radius w and multiplicity r: the smallest c ≤ rw with the
/// most room under the degree bound.
pub fn hard_cap(keys: &OrderedKeys, w: usize, r: usize) -> usize {
    let mut best = (0, monomial_room(keys, w, r, 0));
    for c in 1..=r * w {
        let room = monomial_room(keys, w, r, c);
        if room > best.1 {
            best = (c, room);
        }
    }
    best.0
}

/// deg_{1, L_a-L_b} Q + (w - L_a)·D_Y(Q) < r·w, evaluated on the minimal polynomial.
pub fn hard_premise(keys: &OrderedKeys, w: usize, r: usize, interp: &InterpResult) -> bool {
    let q = &interp.minimal;
    let Some(wd) = q.weighted_degree(1, keys.l_a as i64 - keys.l_b as i64) else {
        return false;
    };
    let dy = q.y_degree().finite().unwrap_or(0) as i64;
    w >= keys.l_a && wd + (w - keys.l_a) as i64 * dy < (r * w) as i64
}

/// Hard-decision list decoding aimed at `radius_target` errors with
/// interpolation multiplicity `r`.
pub fn hard_list_decode(params: &CodeParams, received: &[Gf], radius_target: usize, r: usize) -> DecodeResult {
    hard_list_decode_traced(params, received, radius_target, r).0
}

pub fn hard_list_decode_traced(
    params: &CodeParams,
    received: &[Gf],
    radius_target: usize,
    r: usize,
) -> (DecodeResult, HardTrace) {
    assert!(r >= 1, "multiplicity must be positive");
    let f = params.field();
    let mut trace = HardTrace::default();
    let mut words: Vec<Vec<Gf>> = bm_word(params, received).into_iter().collect();
    let s = syndromes(params, received);
    let w = radius_target;
    if s.is_zero() {
        return (finalize(params, received, words, Scoring::Distance, false), trace);
    }
    let keys = order_keys(&berlekamp(f, &s, params.redundancy()));
    trace.keys = Some(keys.clone());
    let Ok((theta, _)) = select_thetas(&keys, params) else {
        return (finalize(params, received, words, Scoring::Distance, false), trace);
    };
    trace.theta = Some(theta);
    if w < keys.l_a {
        return (finalize(params, received, words, Scoring::Distance, false), trace);
    }
    let frame = build_frame(params, &keys, theta);
    let points: Vec<InterpPoint> = (1..=params.n())
        .map(|i| InterpPoint::new(params.locator_point(i), frame.h_at(i), r))
        .collect();
    let cap = hard_cap(&keys, w, r);
    trace.cap = cap;
    let order = WeightedOrder::unit_x(keys.l_a as i64 - keys.l_b as i64);
    let Ok(res) = interpolate(f, &points, &order, cap) else {
        return (finalize(params, received, words, Scoring::Distance, false), trace);
    };
    let d = w - keys.l_a;
    let bounds = RootBounds::new(d, d, 0);
    let roots = hard_transform_roots(f, &res.q, keys.a_is_lambda, theta, bounds, bounds.truncation(w));
    for root in &roots {
        let (u, v) = hard_root_to_uv(f, root, keys.a_is_lambda, theta);
        let lambda = keys.a.mul(f, &u).add(&keys.b.mul(f, &v));
        let omega = keys.c.mul(f, &u).add(&keys.d.mul(f, &v));
        if lambda.is_zero() || lambda.coeff(0).is_zero() {
            continue;
        }
        let Some(locs) = locator_positions(params, &lambda) else { continue };
        if let Some(c) = reconstruct(params, received, &locs, || forney_values(params, &lambda, &omega, &locs)) {
            words.push(c);
        }
    }
    trace.interp = Some(res);
    trace.roots = roots;
    (finalize(params, received, words, Scoring::Distance, false), trace)
}
