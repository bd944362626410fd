//! Dense univariate polynomials over GF(2^m), lowest degree first.

use std::cmp::Ordering;
use std::fmt;

use super::{AlgebraError, Field, Gf};

/// Polynomial degree with a distinguished value for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::MinusInfinity, Degree::MinusInfinity) => Ordering::Equal,
            (Degree::MinusInfinity, _) => Ordering::Less,
            (_, Degree::MinusInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Gf>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c:?}")?,
                1 => write!(f, "{c:?}x")?,
                _ => write!(f, "{c:?}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub(crate) const fn zero_const() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Gf::ONE)
    }

    pub fn constant(c: Gf) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// x^k
    pub fn monomial(k: usize, c: Gf) -> Poly {
        let mut coeffs = vec![Gf::ZERO; k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn x() -> Poly {
        Poly::monomial(1, Gf::ONE)
    }

    pub fn from_coeffs(mut coeffs: Vec<Gf>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_values(values: &[u16]) -> Poly {
        Poly::from_coeffs(values.iter().map(|&v| Gf(v)).collect())
    }

    /// Π (x - r) over the given roots.
    pub fn from_roots(f: &Field, roots: &[Gf]) -> Poly {
        roots.iter().fold(Poly::one(), |acc, &r| {
            acc.mul(f, &Poly::from_coeffs(vec![r, Gf::ONE]))
        })
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Gf> {
        self.coeffs
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> Gf {
        self.coeffs.get(i).copied().unwrap_or(Gf::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Gf::ONE
    }

    pub fn deg(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as a signed integer, -1 for zero. Only for bound arithmetic.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Gf {
        self.coeffs.last().copied().unwrap_or(Gf::ZERO)
    }

    /// Largest k with x^k dividing self; `None` for zero.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, &s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn add_assign(&mut self, other: &Poly) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Gf::ZERO);
        }
        for (c, &o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *c += o;
        }
        self.normalize();
    }

    /// self += c * x^shift * other
    pub fn add_scaled_shifted(&mut self, f: &Field, c: Gf, shift: usize, other: &Poly) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let need = other.coeffs.len() + shift;
        if need > self.coeffs.len() {
            self.coeffs.resize(need, Gf::ZERO);
        }
        for (i, &o) in other.coeffs.iter().enumerate() {
            self.coeffs[i + shift] += f.mul(c, o);
        }
        self.normalize();
    }

    /// self ← (x + x0)·self
    pub fn mul_linear_assign(&mut self, f: &Field, x0: Gf) {
        if self.coeffs.is_empty() {
            return;
        }
        self.coeffs.push(Gf::ZERO);
        for k in (1..self.coeffs.len()).rev() {
            self.coeffs[k] = self.coeffs[k - 1] + f.mul(x0, self.coeffs[k]);
        }
        self.coeffs[0] = f.mul(x0, self.coeffs[0]);
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn scale(&self, f: &Field, c: Gf) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Gf::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += f.mul(a, b);
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn square(&self, f: &Field) -> Poly {
        // char 2: (sum a_i x^i)^2 = sum a_i^2 x^(2i)
        let mut out = vec![Gf::ZERO; (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[2 * i] = f.square(a);
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, f: &Field, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square(f);
            }
        }
        acc
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Gf::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Divide by x^k, dropping low-order terms.
    pub fn unshift(&self, k: usize) -> Poly {
        if k >= self.coeffs.len() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs[k..].to_vec() }
    }

    /// self mod x^k
    pub fn truncate(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().take(k).copied().collect())
    }

    pub fn div_rem(&self, f: &Field, divisor: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lead = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Gf::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[i] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] += f.mul(c, d);
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Quotient when the division is known to be exact.
    pub fn div_exact(&self, f: &Field, divisor: &Poly) -> Result<Poly, AlgebraError> {
        let (q, r) = self.div_rem(f, divisor)?;
        if !r.is_zero() {
            return Err(AlgebraError::NotDivisible);
        }
        Ok(q)
    }

    pub fn rem(&self, f: &Field, divisor: &Poly) -> Result<Poly, AlgebraError> {
        Ok(self.div_rem(f, divisor)?.1)
    }

    pub fn eval(&self, f: &Field, x: Gf) -> Gf {
        let mut acc = Gf::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.mul(acc, x) + c;
        }
        acc
    }

    /// Formal derivative; in characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { Gf::ZERO })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Square root of a polynomial with only even-degree terms.
    pub fn sqrt(&self, f: &Field) -> Result<Poly, AlgebraError> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return Err(AlgebraError::NotASquare);
        }
        Ok(Poly::from_coeffs(
            self.coeffs.iter().step_by(2).map(|&c| f.sqrt(c)).collect(),
        ))
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(f, inv)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, f: &Field, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Roots among the given candidate points.
    pub fn roots_in(&self, f: &Field, candidates: impl IntoIterator<Item = Gf>) -> Vec<Gf> {
        candidates
            .into_iter()
            .filter(|&x| self.eval(f, x).is_zero())
            .collect()
    }

    /// Substitute x -> c·x.
    pub fn scale_arg(&self, f: &Field, c: Gf) -> Poly {
        let mut pw = Gf::ONE;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            out.push(f.mul(a, pw));
            pw = f.mul(pw, c);
        }
        Poly::from_coeffs(out)
    }
}

/// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
pub fn lagrange_interpolate(f: &Field, xs: &[Gf], ys: &[Gf]) -> Result<Poly, AlgebraError> {
    assert_eq!(xs.len(), ys.len());
    let mut acc = Poly::zero();
    for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Gf::ONE;
        for (j, &xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(f, &Poly::from_coeffs(vec![xj, Gf::ONE]));
            denom = f.mul(denom, xi + xj);
        }
        let c = f.div(yi, denom)?;
        acc.add_assign(&basis.scale(f, c));
    }
    Ok(acc)
}
