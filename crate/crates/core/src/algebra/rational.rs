//! Rational functions num/den in canonical form: coprime, monic denominator.

use super::{AlgebraError, Field, Gf, Poly};

/// Value of a rational function at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalValue {
    Finite(Gf),
    Infinity,
}

impl RationalValue {
    pub fn finite(self) -> Option<Gf> {
        match self {
            RationalValue::Finite(v) => Some(v),
            RationalValue::Infinity => None,
        }
    }
}

/// Canonical representatives make structural equality coincide with
/// equality of the rational functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(f: &Field, num: Poly, den: Poly) -> Result<RationalFn, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFn::zero());
        }
        let g = num.gcd(f, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(f, &g)?, den.div_exact(f, &g)?)
        };
        let lead_inv = f.inv(den.leading())?;
        if lead_inv != Gf::ONE {
            num = num.scale(f, lead_inv);
            den = den.scale(f, lead_inv);
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: Poly) -> RationalFn {
        RationalFn { num: p, den: Poly::one() }
    }

    pub fn zero() -> RationalFn {
        RationalFn::from_poly(Poly::zero())
    }

    pub fn one() -> RationalFn {
        RationalFn::from_poly(Poly::one())
    }

    pub fn constant(c: Gf) -> RationalFn {
        RationalFn::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, f: &Field, other: &RationalFn) -> RationalFn {
        if self.den == other.den {
            return RationalFn::new(f, self.num.add(&other.num), self.den.clone())
                .expect("nonzero denominator");
        }
        let num = self.num.mul(f, &other.den).add(&other.num.mul(f, &self.den));
        RationalFn::new(f, num, self.den.mul(f, &other.den)).expect("nonzero denominator")
    }

    pub fn mul(&self, f: &Field, other: &RationalFn) -> RationalFn {
        RationalFn::new(
            f,
            self.num.mul(f, &other.num),
            self.den.mul(f, &other.den),
        )
        .expect("nonzero denominator")
    }

    pub fn scale(&self, f: &Field, c: Gf) -> RationalFn {
        RationalFn::new(f, self.num.scale(f, c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn inv(&self, f: &Field) -> Result<RationalFn, AlgebraError> {
        RationalFn::new(f, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, f: &Field, other: &RationalFn) -> Result<RationalFn, AlgebraError> {
        Ok(self.mul(f, &other.inv(f)?))
    }

    pub fn square(&self, f: &Field) -> RationalFn {
        RationalFn { num: self.num.square(f), den: self.den.square(f) }
    }

    /// Quotient rule; signs vanish in characteristic 2.
    pub fn derivative(&self, f: &Field) -> RationalFn {
        let num = self
            .num
            .derivative()
            .mul(f, &self.den)
            .add(&self.num.mul(f, &self.den.derivative()));
        RationalFn::new(f, num, self.den.square(f)).expect("nonzero denominator")
    }

    /// Multiply by x^k for any integer k.
    pub fn mul_x_power(&self, f: &Field, k: i64) -> RationalFn {
        if k >= 0 {
            RationalFn::new(f, self.num.shift(k as usize), self.den.clone())
        } else {
            RationalFn::new(f, self.num.clone(), self.den.shift((-k) as usize))
        }
        .expect("nonzero denominator")
    }

    pub fn eval(&self, f: &Field, x: Gf) -> RationalValue {
        let d = self.den.eval(f, x);
        let n = self.num.eval(f, x);
        if d.is_zero() {
            assert!(!n.is_zero(), "canonical rational function evaluated to 0/0");
            return RationalValue::Infinity;
        }
        RationalValue::Finite(f.div(n, d).expect("nonzero denominator"))
    }

    /// Cross-multiplied equality; agrees with `==` on canonical values.
    pub fn same_value(&self, f: &Field, other: &RationalFn) -> bool {
        self.num.mul(f, &other.den) == other.num.mul(f, &self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let f = Field::new(3, 0xB).unwrap();
        let r = RationalFn::new(&f, Poly::one(), Poly::from_values(&[1, 1])).unwrap();
        assert_eq!(r.eval(&f, Gf(0)), RationalValue::Finite(Gf(1)));
        assert_eq!(r.eval(&f, Gf(1)), RationalValue::Infinity);
        // (x^2 + x)/x reduces to x + 1
        let c = RationalFn::new(&f, Poly::from_values(&[0, 1, 1]), Poly::x()).unwrap();
        assert_eq!(c, RationalFn::from_poly(Poly::from_values(&[1, 1])));
        for x in f.elements() {
            assert_eq!(c.eval(&f, x), RationalValue::Finite(x + Gf::ONE));
        }
    }

    #[test]
    fn field_inverse_property() {
        let f = Field::with_default_poly(4).unwrap();
        let a = Poly::from_values(&[3, 0, 7, 1]);
        let b = Poly::from_values(&[5, 11]);
        let r = RationalFn::new(&f, a.clone(), b.clone()).unwrap();
        let s = RationalFn::new(&f, b, a).unwrap();
        assert_eq!(r.mul(&f, &s), RationalFn::one());
        assert!(r.same_value(&f, &r.add(&f, &RationalFn::zero())));
    }

    #[test]
    fn derivative_matches_polynomial_rule() {
        let f = Field::with_default_poly(4).unwrap();
        let p = Poly::from_values(&[1, 2, 3, 4, 5]);
        assert_eq!(
            RationalFn::from_poly(p.clone()).derivative(&f),
            RationalFn::from_poly(p.derivative())
        );
        // (1/x)' = 1/x^2 in char 2
        let r = RationalFn::new(&f, Poly::one(), Poly::x()).unwrap();
        assert_eq!(
            r.derivative(&f),
            RationalFn::new(&f, Poly::one(), Poly::monomial(2, Gf::ONE)).unwrap()
        );
    }
}
