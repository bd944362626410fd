//! Padé reconstruction of a rational function from its Maclaurin series.

use super::FactorError;
use crate::algebra::{Field, Poly, RationalFn, Series};

/// num/den with deg num ≤ deg_num, deg den ≤ deg_den, den(0) ≠ 0 and
/// num ≡ den·series mod x^(deg_num+deg_den+1), by partial extended Euclid.
pub fn pade(f: &Field, series: &Series, deg_num: usize, deg_den: usize) -> Result<RationalFn, FactorError> {
    let terms = deg_num + deg_den + 1;
    if terms > series.order() {
        return Err(FactorError::SeriesTooShort { needed: terms, have: series.order() });
    }
    let mut r0 = Poly::monomial(terms, crate::algebra::Gf::ONE);
    let mut r1 = series.to_poly().truncate(terms);
    let mut t0 = Poly::zero();
    let mut t1 = Poly::one();
    while r1.deg().finite().is_some_and(|d| d > deg_num) {
        let (q, rem) = r0.div_rem(f, &r1).expect("nonzero divisor");
        let t2 = t0.add(&q.mul(f, &t1));
        r0 = std::mem::replace(&mut r1, rem);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.coeff(0).is_zero() || t1.deg().finite().is_some_and(|d| d > deg_den) {
        return Err(FactorError::NoPadeForm);
    }
    Ok(RationalFn::new(f, r1, t1).expect("nonzero denominator"))
}
