//! Berlekamp iteration on the syndromes and the decoding frame built from it.
//!
//! Besides the connection polynomial λ and its partner xδ, the iteration
//! carries (ω, xκ) through the same updates, so that λS ≡ ω and
//! xδ·S ≡ xκ modulo x^(n-k). Storing x·κ keeps every state a polynomial.

use std::fmt;

use crate::algebra::{Field, Gf, Poly, RationalFn, RationalValue};
use crate::rscode::CodeParams;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeyError {
    #[error("fewer than two admissible theta values")]
    NoValidTheta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyState {
    pub lambda: Poly,
    pub x_delta: Poly,
    pub omega: Poly,
    pub x_kappa: Poly,
    pub l_lambda: usize,
    pub l_xdelta: usize,
    pub iterations: usize,
}

/// Massey-form Berlekamp iteration run for exactly `n_minus_k` steps.
pub fn berlekamp(f: &Field, s: &Poly, n_minus_k: usize) -> KeyState {
    let mut lambda = Poly::one();
    let mut b = Poly::one(); // δ before the final x shift
    let mut omega = Poly::zero();
    let mut x_kappa = Poly::one();
    let mut l = 0usize;
    for r in 1..=n_minus_k {
        let mut disc = Gf::ZERO;
        for (j, &c) in lambda.coeffs().iter().enumerate() {
            if j < r {
                disc += f.mul(c, s.coeff(r - 1 - j));
            }
        }
        if disc.is_zero() {
            b = b.shift(1);
            x_kappa = x_kappa.shift(1);
            continue;
        }
        let mut new_lambda = lambda.clone();
        new_lambda.add_scaled_shifted(f, disc, 1, &b);
        let mut new_omega = omega.clone();
        new_omega.add_scaled_shifted(f, disc, 0, &x_kappa);
        if 2 * l < r {
            let inv = f.inv(disc).expect("nonzero discrepancy");
            b = lambda.scale(f, inv);
            x_kappa = omega.scale(f, inv).shift(1);
            l = r - l;
        } else {
            b = b.shift(1);
            x_kappa = x_kappa.shift(1);
        }
        lambda = new_lambda;
        omega = new_omega;
    }
    KeyState {
        lambda,
        x_delta: b.shift(1),
        omega,
        x_kappa,
        l_lambda: l,
        l_xdelta: n_minus_k + 1 - l,
        iterations: n_minus_k,
    }
}

/// (a, b, c, d) with L_a ≤ L_b, where {a, b} = {λ, xδ}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedKeys {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
    pub l_a: usize,
    pub l_b: usize,
    /// True when a = λ (and c = ω).
    pub a_is_lambda: bool,
}

pub fn order_keys(ks: &KeyState) -> OrderedKeys {
    if ks.l_lambda <= ks.l_xdelta {
        OrderedKeys {
            a: ks.lambda.clone(),
            b: ks.x_delta.clone(),
            c: ks.omega.clone(),
            d: ks.x_kappa.clone(),
            l_a: ks.l_lambda,
            l_b: ks.l_xdelta,
            a_is_lambda: true,
        }
    } else {
        OrderedKeys {
            a: ks.x_delta.clone(),
            b: ks.lambda.clone(),
            c: ks.x_kappa.clone(),
            d: ks.omega.clone(),
            l_a: ks.l_xdelta,
            l_b: ks.l_lambda,
            a_is_lambda: false,
        }
    }
}

impl OrderedKeys {
    /// ad + bc (= ad - bc in characteristic 2).
    pub fn cross(&self, f: &Field) -> Poly {
        self.a.mul(f, &self.d).add(&self.b.mul(f, &self.c))
    }

    /// L_b + 1 - L_a.
    pub fn k_factor(&self) -> usize {
        self.l_b + 1 - self.l_a
    }
}

/// A member of GF(q) ∪ {∞}.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theta {
    Finite(Gf),
    Infinity,
}

impl fmt::Debug for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Finite(g) => write!(f, "{g:?}"),
            Theta::Infinity => write!(f, "inf"),
        }
    }
}

impl Theta {
    pub fn finite(self) -> Option<Gf> {
        match self {
            Theta::Finite(g) => Some(g),
            Theta::Infinity => None,
        }
    }
}

/// All θ in scan order: 0, α^0, α^1, ..., α^(q-2), ∞.
pub fn theta_scan_order(f: &Field) -> Vec<Theta> {
    let mut v = Vec::with_capacity(f.size() + 1);
    v.push(Theta::Finite(Gf::ZERO));
    v.extend((0..f.order()).map(|e| Theta::Finite(f.alpha_pow(e as i64))));
    v.push(Theta::Infinity);
    v
}

/// The polynomial b + θa (or a for θ = ∞).
pub fn theta_denominator(f: &Field, keys: &OrderedKeys, theta: Theta) -> Poly {
    match theta {
        Theta::Finite(t) => keys.b.add(&keys.a.scale(f, t)),
        Theta::Infinity => keys.a.clone(),
    }
}

/// Every θ whose denominator has no root among the locator points, in scan order.
pub fn valid_thetas(keys: &OrderedKeys, params: &CodeParams) -> Vec<Theta> {
    let f = params.field();
    // each support point rules out exactly one θ: b(x)/a(x), or ∞ when a(x) = 0
    let mut bad_finite = vec![false; f.size()];
    let mut bad_inf = false;
    for i in 1..=params.n() {
        let x = params.locator_point(i);
        let av = keys.a.eval(f, x);
        let bv = keys.b.eval(f, x);
        if av.is_zero() {
            bad_inf = true;
        } else {
            bad_finite[f.div(bv, av).expect("nonzero").0 as usize] = true;
        }
    }
    theta_scan_order(f)
        .into_iter()
        .filter(|t| match t {
            Theta::Finite(g) => !bad_finite[g.0 as usize],
            Theta::Infinity => !bad_inf,
        })
        .collect()
}

/// The first two admissible θ in scan order; θ1 is always finite.
pub fn select_thetas(keys: &OrderedKeys, params: &CodeParams) -> Result<(Theta, Theta), KeyError> {
    let v = valid_thetas(keys, params);
    match v.as_slice() {
        [t1 @ Theta::Finite(_), t2, ..] => Ok((*t1, *t2)),
        _ => Err(KeyError::NoValidTheta),
    }
}

/// h, φ and h' for one θ, with their values cached on the support.
#[derive(Clone, Debug)]
pub struct ThetaFrame {
    pub theta: Theta,
    pub keys: OrderedKeys,
    pub h: RationalFn,
    pub h_prime: RationalFn,
    pub phi: RationalFn,
    // index i-1 holds values at α^(-i)
    h_vals: Vec<Gf>,
    h_prime_vals: Vec<Gf>,
    phi_vals: Vec<Gf>,
}

pub fn build_frame(params: &CodeParams, keys: &OrderedKeys, theta: Theta) -> ThetaFrame {
    let f = params.field();
    let den = theta_denominator(f, keys, theta);
    let h = match theta {
        Theta::Finite(_) => RationalFn::new(f, keys.a.clone(), den.clone()),
        Theta::Infinity => RationalFn::new(f, keys.b.clone(), den.clone()),
    }
    .expect("a and b are never both zero");
    let phi = RationalFn::new(f, keys.cross(f), den.square(f)).expect("nonzero denominator");
    let h_prime = h.derivative(f);
    let finite_at = |r: &RationalFn, x: Gf| match r.eval(f, x) {
        RationalValue::Finite(v) => v,
        RationalValue::Infinity => panic!("frame function has a pole on the support"),
    };
    let mut h_vals = Vec::with_capacity(params.n());
    let mut h_prime_vals = Vec::with_capacity(params.n());
    let mut phi_vals = Vec::with_capacity(params.n());
    for i in 1..=params.n() {
        let x = params.locator_point(i);
        h_vals.push(finite_at(&h, x));
        h_prime_vals.push(finite_at(&h_prime, x));
        phi_vals.push(finite_at(&phi, x));
    }
    ThetaFrame {
        theta,
        keys: keys.clone(),
        h,
        h_prime,
        phi,
        h_vals,
        h_prime_vals,
        phi_vals,
    }
}

impl ThetaFrame {
    /// h(α^(-i))
    pub fn h_at(&self, i: usize) -> Gf {
        self.h_vals[i - 1]
    }

    pub fn h_prime_at(&self, i: usize) -> Gf {
        self.h_prime_vals[i - 1]
    }

    /// φ(α^(-i))
    pub fn phi_at(&self, i: usize) -> Gf {
        self.phi_vals[i - 1]
    }

    /// p(x, e) = φ(x)/(e·x) + h'(x) at an arbitrary point.
    pub fn point_value(&self, f: &Field, x: Gf, e: Gf) -> Gf {
        let phi = self.phi.eval(f, x).finite().expect("φ finite at x");
        let hp = self.h_prime.eval(f, x).finite().expect("h' finite at x");
        f.div(phi, f.mul(e, x)).expect("e and x nonzero") + hp
    }

    /// p(α^(-i), e) from the cached support values.
    pub fn point_value_at(&self, params: &CodeParams, i: usize, e: Gf) -> Gf {
        let f = params.field();
        let x = params.locator_point(i);
        f.div(self.phi_at(i), f.mul(e, x)).expect("e nonzero") + self.h_prime_at(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rscode::{syndromes, verify_key_equation, ErrorPattern};

    #[test]
    fn zero_syndrome_state() {
        let f = Field::with_default_poly(4).unwrap();
        let ks = berlekamp(&f, &Poly::zero(), 6);
        assert!(ks.lambda.is_one());
        assert!(ks.omega.is_zero());
        assert_eq!(ks.l_lambda, 0);
        // δ and xκ pick up one factor of x per zero-discrepancy step
        assert_eq!(ks.x_delta, Poly::monomial(7, Gf::ONE));
        assert_eq!(ks.x_kappa, Poly::monomial(6, Gf::ONE));
        assert_eq!(ks.l_xdelta, 7);
    }

    #[test]
    fn single_error_rs73() {
        let p = CodeParams::new(Field::new(3, 0xB).unwrap(), 3).unwrap();
        let f = p.field();
        let e = ErrorPattern::new(vec![(3, Gf(6))]);
        let s = syndromes(&p, &e.to_vector(7));
        let ks = berlekamp(f, &s, 4);
        assert_eq!(ks.lambda, Poly::from_coeffs(vec![Gf::ONE, f.alpha_pow(3)]));
        assert!(verify_key_equation(f, &ks.lambda, &ks.omega, &s, 4));
        assert_eq!(ks.omega, e.evaluator(&p));
    }

    #[test]
    fn partner_satisfies_its_key_equation() {
        let p = CodeParams::standard(4, 9).unwrap();
        let f = p.field();
        let e = ErrorPattern::new(vec![(1, Gf(3)), (7, Gf(12)), (8, Gf(1)), (14, Gf(5))]);
        let s = syndromes(&p, &e.to_vector(15));
        let ks = berlekamp(f, &s, 6);
        assert!(verify_key_equation(f, &ks.lambda, &ks.omega, &s, 6));
        assert!(verify_key_equation(f, &ks.x_delta, &ks.x_kappa, &s, 6));
        assert_eq!(ks.l_lambda + ks.l_xdelta, 7);
        assert!(ks.lambda.deg().finite().unwrap() <= ks.l_lambda);
        assert!(ks.x_delta.deg().finite().unwrap() <= ks.l_xdelta);
    }

    #[test]
    fn ordering_rule() {
        let p = CodeParams::standard(4, 9).unwrap();
        let f = p.field();
        let e = ErrorPattern::new(vec![(2, Gf(3))]);
        let ks = berlekamp(f, &syndromes(&p, &e.to_vector(15)), 6);
        let k = order_keys(&ks);
        assert!(k.a_is_lambda && k.l_a == 1 && k.l_b == 6);
        assert_eq!((&k.c, &k.d), (&ks.omega, &ks.x_kappa));
        let swapped = KeyState { l_lambda: 5, l_xdelta: 2, ..ks.clone() };
        let k2 = order_keys(&swapped);
        assert!(!k2.a_is_lambda);
        assert_eq!((&k2.a, &k2.b, &k2.c, &k2.d), (&ks.x_delta, &ks.lambda, &ks.x_kappa, &ks.omega));
    }

    #[test]
    fn pre_iteration_state_admits_zero() {
        let p = CodeParams::new(Field::new(3, 0xB).unwrap(), 3).unwrap();
        let keys = OrderedKeys {
            a: Poly::one(),
            b: Poly::x(),
            c: Poly::zero(),
            d: Poly::one(),
            l_a: 0,
            l_b: 1,
            a_is_lambda: true,
        };
        let (t1, _) = select_thetas(&keys, &p).unwrap();
        assert_eq!(t1, Theta::Finite(Gf::ZERO));
    }

    #[test]
    fn frame_formulas() {
        let p = CodeParams::standard(4, 9).unwrap();
        let f = p.field();
        let e = ErrorPattern::new(vec![(5, Gf(9)), (11, Gf(4))]);
        let keys = order_keys(&berlekamp(f, &syndromes(&p, &e.to_vector(15)), 6));
        let (t1, _) = select_thetas(&keys, &p).unwrap();
        let th = t1.finite().unwrap();
        let fr = build_frame(&p, &keys, t1);
        let den = keys.b.add(&keys.a.scale(f, th));
        assert_eq!(fr.h, RationalFn::new(f, keys.a.clone(), den.clone()).unwrap());
        assert_eq!(fr.phi, RationalFn::new(f, keys.cross(f), den.square(f)).unwrap());
        // p(x, ·) is injective on nonzero e
        for i in 1..=15 {
            let mut vals: Vec<Gf> = f.nonzero_elements().map(|e| fr.point_value_at(&p, i, e)).collect();
            vals.sort();
            vals.dedup();
            assert_eq!(vals.len(), 15);
            assert!(!fr.phi_at(i).is_zero());
        }
    }
}
