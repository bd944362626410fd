//! Rational y-roots of interpolation polynomials.
//!
//! Roots are found as power series by Roth-Ruckenstein, turned into rational
//! functions by Padé approximation, and kept only if they annihilate the
//! polynomial exactly. A pole at x = 0 is handled by first substituting
//! y -> x^(-s)·y.

mod pade;
mod resultant;
mod rr;

pub use pade::pade;
pub use resultant::resultant;
pub use rr::rr_series_roots;

use crate::algebra::{BiPoly, Field, Poly, RationalFn};
use crate::keysolver::Theta;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("no Padé form with nonvanishing denominator at 0")]
    NoPadeForm,
    #[error("series has {have} terms, Padé needs {needed}")]
    SeriesTooShort { needed: usize, have: usize },
    #[error("resultant vanishes identically")]
    DegenerateResultant,
    #[error("fraction-free elimination hit an inexact division")]
    InexactElimination,
}

/// How the ratio of the two soft-decision roots is recovered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FactorMethod {
    #[default]
    Pairwise,
    Resultant,
}

impl std::str::FromStr for FactorMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pairwise" => Ok(FactorMethod::Pairwise),
            "resultant" => Ok(FactorMethod::Resultant),
            other => Err(format!("unknown factor method '{other}'")),
        }
    }
}

/// Degree bounds for a root after the pole shift, and the shift itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootBounds {
    pub num: usize,
    pub den: usize,
    pub shift: usize,
}

impl RootBounds {
    pub fn new(num: usize, den: usize, shift: usize) -> RootBounds {
        RootBounds { num, den, shift }
    }

    /// Series terms used: the larger of 2ρ + 2 and what Padé needs.
    pub fn truncation(&self, rho: usize) -> usize {
        (2 * rho + 2).max(self.num + self.den + 1)
    }
}

/// Rational roots of Q via RR + Padé on Q(x, x^(-shift) y)·x^(shift·D_Y).
///
/// Every returned root r satisfies Q(x, r) = 0 exactly.
pub fn shifted_rational_roots(f: &Field, q: &BiPoly, bounds: RootBounds, order: usize) -> Vec<RationalFn> {
    if q.is_zero() {
        return Vec::new();
    }
    let shifted = q.pole_shift(bounds.shift);
    let mut out: Vec<RationalFn> = Vec::new();
    for s in rr_series_roots(f, &shifted, order) {
        let Ok(r) = pade(f, &s, bounds.num, bounds.den) else { continue };
        let root = r.mul_x_power(f, -(bounds.shift as i64));
        if !out.contains(&root) && q.substitute_rational(f, &root).is_zero() {
            out.push(root);
        }
    }
    out
}

/// The polynomial whose roots the hard decoder factors, for each frame case.
///
/// With g = v/(u+θv) (finite θ) or u/v (θ = ∞), the transformed root is v/u
/// when a = λ and (u+θv)/v or u/v when b = λ, so its denominator is a unit at 0.
pub fn hard_transform(f: &Field, q: &BiPoly, a_is_lambda: bool, theta: Theta) -> BiPoly {
    match (a_is_lambda, theta) {
        (true, Theta::Finite(t)) if t.is_zero() => q.clone(),
        (true, Theta::Finite(t)) => q.reverse_y().shift_y(f, t).reverse_y(),
        (false, Theta::Finite(_)) => q.reverse_y(),
        (true, Theta::Infinity) => q.reverse_y(),
        (false, Theta::Infinity) => q.clone(),
    }
}

/// Roots of the transformed polynomial; see `hard_transform`.
pub fn hard_transform_roots(
    f: &Field,
    q: &BiPoly,
    a_is_lambda: bool,
    theta: Theta,
    bounds: RootBounds,
    order: usize,
) -> Vec<RationalFn> {
    shifted_rational_roots(f, &hard_transform(f, q, a_is_lambda, theta), bounds, order)
}

/// (u, v) up to a common scalar from a transformed hard-decision root.
pub fn hard_root_to_uv(f: &Field, root: &RationalFn, a_is_lambda: bool, theta: Theta) -> (Poly, Poly) {
    let (num, den) = (root.num().clone(), root.den().clone());
    match (a_is_lambda, theta) {
        (true, _) => (den, num),
        (false, Theta::Finite(t)) => (num.add(&den.scale(f, t)), den),
        (false, Theta::Infinity) => (num, den),
    }
}

/// Every quotient r2/r1 over pairs, skipping zero divisors, without repeats.
pub fn pairwise_ratio(f: &Field, roots1: &[RationalFn], roots2: &[RationalFn]) -> Vec<RationalFn> {
    let mut out: Vec<RationalFn> = Vec::new();
    for r1 in roots1.iter().filter(|r| !r.is_zero()) {
        for r2 in roots2 {
            let z = r2.div(f, r1).expect("nonzero divisor");
            if !out.contains(&z) {
                out.push(z);
            }
        }
    }
    out
}

/// Rational z-roots of Res_y(Q1(x, zy), Q2(x, y)).
pub fn resultant_ratio(
    f: &Field,
    q1: &BiPoly,
    q2: &BiPoly,
    bounds: RootBounds,
    order: usize,
) -> Result<Vec<RationalFn>, FactorError> {
    let r = resultant(f, q1, q2)?;
    let content = r.x_content(f);
    let r = r.div_x_poly(f, &content).expect("content divides every row");
    Ok(shifted_rational_roots(f, &r, bounds, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Gf;

    #[test]
    fn pole_at_origin_needs_shift() {
        let f = Field::with_default_poly(4).unwrap();
        // x·y - 1 has the root 1/x
        let q = BiPoly::linear_in_y(Poly::x(), Poly::one());
        let want = RationalFn::new(&f, Poly::one(), Poly::x()).unwrap();
        assert!(shifted_rational_roots(&f, &q, RootBounds::new(0, 0, 0), 4).is_empty());
        assert_eq!(shifted_rational_roots(&f, &q, RootBounds::new(1, 0, 1), 4), vec![want]);
    }

    #[test]
    fn planted_factor_with_double_pole() {
        let f = Field::with_default_poly(4).unwrap();
        let w = Poly::from_values(&[1, 3]);
        let den = w.shift(2); // x^2 (1 + 3x)
        let num = Poly::from_values(&[5, 0, 9]);
        let t = BiPoly::from_terms(&[(0, 0, Gf(2)), (1, 1, Gf(1))]);
        let q = BiPoly::linear_in_y(den.clone(), num.clone()).mul(&f, &t);
        let want = RationalFn::new(&f, num, den).unwrap();
        let roots = shifted_rational_roots(&f, &q, RootBounds::new(4, 3, 2), 10);
        assert!(roots.contains(&want));
    }

    #[test]
    fn pairwise_examples() {
        let f = Field::with_default_poly(4).unwrap();
        let s = RationalFn::new(&f, Poly::from_values(&[1, 2]), Poly::from_values(&[1, 0, 7])).unwrap();
        let z0 = Gf(11);
        assert_eq!(pairwise_ratio(&f, std::slice::from_ref(&s), &[s.scale(&f, z0)]), vec![RationalFn::constant(z0)]);
        let t = RationalFn::from_poly(Poly::from_values(&[3, 3]));
        let same = pairwise_ratio(&f, &[s.clone(), t.clone()], &[s, t]);
        assert!(same.contains(&RationalFn::one()));
        assert!(pairwise_ratio(&f, &[RationalFn::zero()], &[RationalFn::one()]).is_empty());
    }

    #[test]
    fn hard_transforms_recover_uv() {
        let f = Field::with_default_poly(4).unwrap();
        let u = Poly::from_values(&[1, 6, 2]);
        let v = Poly::from_values(&[0, 3]);
        let bounds = RootBounds::new(3, 3, 0);
        for theta in [Theta::Finite(Gf(0)), Theta::Finite(Gf(9)), Theta::Infinity] {
            let g = match theta {
                Theta::Finite(t) => RationalFn::new(&f, v.clone(), u.add(&v.scale(&f, t))).unwrap(),
                Theta::Infinity => RationalFn::new(&f, u.clone(), v.clone()).unwrap(),
            };
            let q = BiPoly::linear_in_y(g.den().clone(), g.num().clone())
                .mul(&f, &BiPoly::from_terms(&[(2, 0, Gf(1)), (0, 1, Gf(4))]));
            // a = λ: u(0) = 1
            let roots = hard_transform_roots(&f, &q, true, theta, bounds, 8);
            let found = roots.iter().any(|r| {
                let (uu, vv) = hard_root_to_uv(&f, r, true, theta);
                uu.mul(&f, &v) == vv.mul(&f, &u)
            });
            assert!(found, "theta {theta:?}");
        }
    }
}
