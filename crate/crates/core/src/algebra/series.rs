//! Power series at x = 0 truncated to a fixed order.

use super::{AlgebraError, Field, Gf, Poly, RationalFn};

/// Σ c_i x^i mod x^order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Gf>,
    order: usize,
}

impl Series {
    pub fn new(mut coeffs: Vec<Gf>, order: usize) -> Series {
        coeffs.resize(order, Gf::ZERO);
        Series { coeffs, order }
    }

    pub fn from_poly(p: &Poly, order: usize) -> Series {
        Series::new(p.coeffs().iter().take(order).copied().collect(), order)
    }

    /// Maclaurin expansion of num/den; requires den(0) != 0.
    pub fn from_rational(f: &Field, r: &RationalFn, order: usize) -> Result<Series, AlgebraError> {
        let inv = Series::from_poly(r.den(), order).inverse(f)?;
        Ok(Series::from_poly(r.num(), order).mul(f, &inv))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Gf {
        self.coeffs.get(i).copied().unwrap_or(Gf::ZERO)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.clone())
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order.min(other.order);
        Series::new(
            (0..order).map(|i| self.coeff(i) + other.coeff(i)).collect(),
            order,
        )
    }

    pub fn mul(&self, f: &Field, other: &Series) -> Series {
        let order = self.order.min(other.order);
        let mut out = vec![Gf::ZERO; order];
        for (i, &a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(order - i) {
                out[i + j] += f.mul(a, b);
            }
        }
        Series { coeffs: out, order }
    }

    /// Multiplicative inverse; fails when the constant term is zero.
    pub fn inverse(&self, f: &Field) -> Result<Series, AlgebraError> {
        let c0 = f.inv(self.coeff(0))?;
        let mut out = vec![Gf::ZERO; self.order];
        if self.order == 0 {
            return Ok(Series { coeffs: out, order: 0 });
        }
        out[0] = c0;
        for k in 1..self.order {
            let mut acc = Gf::ZERO;
            for j in 1..=k {
                acc += f.mul(self.coeff(j), out[k - j]);
            }
            out[k] = f.mul(acc, c0);
        }
        Ok(Series { coeffs: out, order: self.order })
    }
}
