//! Bivariate polynomials Q(x, y) = Σ_j q_j(x) y^j.
//!
//! Stored as one dense x-polynomial per y-degree. Rows are canonical (no
//! trailing zero rows), so D_Y(Q) is the index of the last row.

use std::fmt;

use super::{AlgebraError, Degree, Field, Gf, Poly, RationalFn};

/// C(n, k) mod 2 by Lucas' theorem.
#[inline]
pub fn binom_mod2(n: usize, k: usize) -> bool {
    k <= n && (n & k) == k
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    rows: Vec<Poly>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, row) in self.rows.iter().enumerate() {
            if row.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({row:?})")?,
                1 => write!(f, "({row:?})y")?,
                _ => write!(f, "({row:?})y^{j}")?,
            }
        }
        Ok(())
    }
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly { rows: Vec::new() }
    }

    pub fn one() -> BiPoly {
        BiPoly::from_rows(vec![Poly::one()])
    }

    pub fn from_rows(mut rows: Vec<Poly>) -> BiPoly {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BiPoly { rows }
    }

    /// Build from (x-degree, y-degree, coefficient) triples; repeated
    /// monomials accumulate.
    pub fn from_terms(terms: &[(usize, usize, Gf)]) -> BiPoly {
        let dy = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let mut rows: Vec<Vec<Gf>> = vec![Vec::new(); dy];
        for &(i, j, c) in terms {
            if rows[j].len() <= i {
                rows[j].resize(i + 1, Gf::ZERO);
            }
            rows[j][i] += c;
        }
        BiPoly::from_rows(rows.into_iter().map(Poly::from_coeffs).collect())
    }

    /// y^j
    pub fn y_power(j: usize) -> BiPoly {
        let mut rows = vec![Poly::zero(); j + 1];
        rows[j] = Poly::one();
        BiPoly { rows }
    }

    /// p(x) y - q(x)
    pub fn linear_in_y(p: Poly, q: Poly) -> BiPoly {
        BiPoly::from_rows(vec![q, p])
    }

    pub fn from_x_poly(p: Poly) -> BiPoly {
        BiPoly::from_rows(vec![p])
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    pub fn row(&self, j: usize) -> &Poly {
        static ZERO: Poly = Poly::zero_const();
        self.rows.get(j).unwrap_or(&ZERO)
    }

    pub fn coeff(&self, i: usize, j: usize) -> Gf {
        self.rows.get(j).map_or(Gf::ZERO, |r| r.coeff(i))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// D_Y(Q), the y-degree.
    pub fn y_degree(&self) -> Degree {
        match self.rows.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn x_degree(&self) -> Degree {
        self.rows.iter().map(|r| r.deg()).max().unwrap_or(Degree::MinusInfinity)
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.coeffs().iter().filter(|c| !c.is_zero()).count())
            .sum()
    }

    /// Nonzero terms as (i, j, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Gf)> + '_ {
        self.rows.iter().enumerate().flat_map(|(j, row)| {
            row.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, &c)| (i, j, c))
        })
    }

    /// max over monomials of wx·i + wy·j; `None` for zero.
    pub fn weighted_degree(&self, wx: i64, wy: i64) -> Option<i64> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(j, r)| r.deg().finite().map(|i| wx * i as i64 + wy * j as i64))
            .max()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(other.rows.len());
        BiPoly::from_rows(
            (0..n).map(|j| self.row(j).add(other.row(j))).collect(),
        )
    }

    pub fn scale(&self, f: &Field, c: Gf) -> BiPoly {
        BiPoly::from_rows(self.rows.iter().map(|r| r.scale(f, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let mut rows = vec![Poly::zero(); self.rows.len() + other.rows.len() - 1];
        for (j1, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j2, b) in other.rows.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                rows[j1 + j2].add_assign(&a.mul(f, b));
            }
        }
        BiPoly::from_rows(rows)
    }

    pub fn pow(&self, f: &Field, e: u32) -> BiPoly {
        (0..e).fold(BiPoly::one(), |acc, _| acc.mul(f, self))
    }

    pub fn mul_x_poly(&self, f: &Field, p: &Poly) -> BiPoly {
        BiPoly::from_rows(self.rows.iter().map(|r| r.mul(f, p)).collect())
    }

    /// Multiply by (x + x0), i.e. (x - x0) in characteristic 2.
    pub fn mul_x_minus(&self, f: &Field, x0: Gf) -> BiPoly {
        let lin = Poly::from_coeffs(vec![x0, Gf::ONE]);
        self.mul_x_poly(f, &lin)
    }

    pub fn mul_y_power(&self, k: usize) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut rows = vec![Poly::zero(); k];
        rows.extend(self.rows.iter().cloned());
        BiPoly { rows }
    }

    /// Divide out the largest power of y; returns the quotient and the power.
    pub fn strip_y_factors(&self) -> (BiPoly, usize) {
        let k = self.rows.iter().take_while(|r| r.is_zero()).count();
        if k == 0 || self.is_zero() {
            return (self.clone(), 0);
        }
        (BiPoly { rows: self.rows[k..].to_vec() }, k)
    }

    /// Divide out the largest power of x.
    pub fn strip_x_factors(&self) -> (BiPoly, usize) {
        let k = self
            .rows
            .iter()
            .filter_map(|r| r.x_valuation())
            .min()
            .unwrap_or(0);
        if k == 0 {
            return (self.clone(), 0);
        }
        (BiPoly::from_rows(self.rows.iter().map(|r| r.unshift(k)).collect()), k)
    }

    /// Monic gcd of the x-polynomial coefficients.
    pub fn x_content(&self, f: &Field) -> Poly {
        self.rows.iter().fold(Poly::zero(), |g, r| g.gcd(f, r))
    }

    pub fn div_x_poly(&self, f: &Field, p: &Poly) -> Result<BiPoly, AlgebraError> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.div_exact(f, p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BiPoly::from_rows(rows))
    }

    /// Exact division treating both as polynomials in y over F[x].
    pub fn div_exact(&self, f: &Field, divisor: &BiPoly) -> Result<BiPoly, AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let dd = divisor.rows.len() - 1;
        let lead = &divisor.rows[dd];
        let mut rem = self.rows.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Ok(BiPoly::zero()) } else { Err(AlgebraError::NotDivisible) };
        }
        let mut quot = vec![Poly::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let c = top.div_exact(f, lead)?;
            for (j, d) in divisor.rows.iter().enumerate() {
                if !d.is_zero() {
                    let t = c.mul(f, d);
                    rem[k + j].add_assign(&t);
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return Err(AlgebraError::NotDivisible);
        }
        Ok(BiPoly::from_rows(quot))
    }

    pub fn eval(&self, f: &Field, x: Gf, y: Gf) -> Gf {
        let mut acc = Gf::ZERO;
        for r in self.rows.iter().rev() {
            acc = f.mul(acc, y) + r.eval(f, x);
        }
        acc
    }

    /// Q(x0, y) as a polynomial in y.
    pub fn eval_x(&self, f: &Field, x0: Gf) -> Poly {
        Poly::from_coeffs(self.rows.iter().map(|r| r.eval(f, x0)).collect())
    }

    /// Hasse derivative D^(r,s) Q evaluated at (x0, y0).
    pub fn hasse(&self, f: &Field, r: usize, s: usize, x0: Gf, y0: Gf) -> Gf {
        let mut acc = Gf::ZERO;
        let n = f.order();
        let lx = f.log(x0).unwrap_or(0);
        let ly = f.log(y0).unwrap_or(0);
        // only indices containing the bits of r (resp. s) have odd binomials
        let mut j = s;
        while j < self.rows.len() {
            if j > s && y0.is_zero() {
                break;
            }
            let coeffs = self.rows[j].coeffs();
            let mut inner = Gf::ZERO;
            let mut i = r;
            while i < coeffs.len() {
                if i > r && x0.is_zero() {
                    break;
                }
                inner += f.mul_alpha_pow(coeffs[i], lx * (i - r) % n);
                i = (i + 1) | r;
            }
            acc += f.mul_alpha_pow(inner, ly * (j - s) % n);
            j = (j + 1) | s;
        }
        acc
    }

    /// self += c·other, in place.
    pub fn add_scaled_assign(&mut self, f: &Field, c: Gf, other: &BiPoly) {
        if self.rows.len() < other.rows.len() {
            self.rows.resize(other.rows.len(), Poly::zero());
        }
        for (row, o) in self.rows.iter_mut().zip(&other.rows) {
            row.add_scaled_shifted(f, c, 0, o);
        }
        while self.rows.last().is_some_and(|r| r.is_zero()) {
            self.rows.pop();
        }
    }

    /// self ← (x + x0)·self, in place.
    pub fn mul_x_minus_assign(&mut self, f: &Field, x0: Gf) {
        for row in &mut self.rows {
            row.mul_linear_assign(f, x0);
        }
    }

    /// Q(x, y + θ).
    pub fn shift_y(&self, f: &Field, theta: Gf) -> BiPoly {
        if theta.is_zero() {
            return self.clone();
        }
        // Horner: Q = (...(q_d y' + q_{d-1}) y' + ...) with y' = y + θ
        let mut acc = BiPoly::zero();
        let lin = BiPoly::from_rows(vec![Poly::constant(theta), Poly::one()]);
        for r in self.rows.iter().rev() {
            acc = acc.mul(f, &lin).add(&BiPoly::from_x_poly(r.clone()));
        }
        acc
    }

    /// Q(x, 1/y) · y^(D_Y).
    pub fn reverse_y(&self) -> BiPoly {
        let mut rows = self.rows.clone();
        rows.reverse();
        BiPoly::from_rows(rows)
    }

    /// Q(x, x^(-s) y) · x^(s·D_Y): row j is multiplied by x^(s(D_Y - j)).
    pub fn pole_shift(&self, s: usize) -> BiPoly {
        let dy = self.rows.len().saturating_sub(1);
        BiPoly::from_rows(
            self.rows
                .iter()
                .enumerate()
                .map(|(j, r)| r.shift(s * (dy - j)))
                .collect(),
        )
    }

    /// Q(x, num/den) · den^(D_Y), returned as a rational function over den^(D_Y).
    pub fn substitute_rational(&self, f: &Field, r: &RationalFn) -> RationalFn {
        if self.is_zero() {
            return RationalFn::zero();
        }
        let dy = self.rows.len() - 1;
        // Horner on the homogenised form Σ q_j num^j den^(dy-j)
        let mut acc = Poly::zero();
        let mut den_pow = Poly::one();
        let mut pows = Vec::with_capacity(dy + 1);
        for _ in 0..=dy {
            pows.push(den_pow.clone());
            den_pow = den_pow.mul(f, r.den());
        }
        let mut num_pow = Poly::one();
        for (j, q) in self.rows.iter().enumerate() {
            if !q.is_zero() {
                acc.add_assign(&q.mul(f, &num_pow).mul(f, &pows[dy - j]));
            }
            if j < dy {
                num_pow = num_pow.mul(f, r.num());
            }
        }
        RationalFn::new(f, acc, pows[dy].clone()).expect("nonzero denominator")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> Field {
        Field::with_default_poly(4).unwrap()
    }

    #[test]
    fn substitute_examples() {
        let f = gf16();
        let g = RationalFn::new(&f, Poly::from_values(&[3, 1]), Poly::from_values(&[1, 0, 5])).unwrap();
        // y - g with g = num/den  ->  den·y - num
        let q = BiPoly::linear_in_y(g.den().clone(), g.num().clone());
        assert!(q.substitute_rational(&f, &g).is_zero());
        // y^2 at u/v gives u^2/v^2
        let y2 = BiPoly::y_power(2);
        assert_eq!(y2.substitute_rational(&f, &g), g.square(&f));
    }

    #[test]
    fn planted_factor_vanishes() {
        let f = gf16();
        let u = Poly::from_values(&[1, 4, 9]);
        let v = Poly::from_values(&[7, 0, 2]);
        let t = BiPoly::from_terms(&[(0, 0, Gf(3)), (2, 1, Gf(5)), (1, 3, Gf(1))]);
        let q = BiPoly::linear_in_y(u.clone(), v.clone()).mul(&f, &t);
        let r = RationalFn::new(&f, v, u).unwrap();
        assert!(q.substitute_rational(&f, &r).is_zero());
    }

    #[test]
    fn hasse_examples() {
        let f = gf16();
        let x0 = Gf(6);
        let lin = BiPoly::from_x_poly(Poly::from_coeffs(vec![x0, Gf::ONE]));
        let sq = lin.mul(&f, &lin);
        for (r, s) in [(0, 0), (1, 0), (0, 1)] {
            assert!(sq.hasse(&f, r, s, x0, Gf(9)).is_zero());
        }
        assert!(!lin.hasse(&f, 1, 0, x0, Gf(9)).is_zero());
        // D^(0,0) is evaluation
        let q = BiPoly::from_terms(&[(3, 2, Gf(7)), (1, 0, Gf(2))]);
        assert_eq!(q.hasse(&f, 0, 0, Gf(5), Gf(11)), q.eval(&f, Gf(5), Gf(11)));
    }

    #[test]
    fn shift_and_reverse() {
        let f = gf16();
        let q = BiPoly::from_terms(&[(0, 0, Gf(1)), (1, 1, Gf(3)), (2, 2, Gf(4))]);
        let theta = Gf(9);
        let s = q.shift_y(&f, theta);
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(s.eval(&f, x, y), q.eval(&f, x, y + theta));
            }
        }
        assert_eq!(q.reverse_y().reverse_y(), q);
    }

    #[test]
    fn exact_division_roundtrip() {
        let f = gf16();
        let a = BiPoly::from_terms(&[(0, 0, Gf(1)), (2, 1, Gf(3)), (1, 2, Gf(4))]);
        let b = BiPoly::from_terms(&[(1, 0, Gf(5)), (0, 1, Gf(6))]);
        let p = a.mul(&f, &b);
        assert_eq!(p.div_exact(&f, &b).unwrap(), a);
        assert_eq!(p.div_exact(&f, &a).unwrap(), b);
    }

    proptest::proptest! {
        #[test]
        fn hasse_matches_definition(
            terms in proptest::collection::vec((0usize..12, 0usize..6, 1u16..16), 0..20),
            r in 0usize..5, s in 0usize..4, x0 in 0u16..16, y0 in 0u16..16,
        ) {
            let f = gf16();
            let t: Vec<(usize, usize, Gf)> = terms.iter().map(|&(i, j, c)| (i, j, Gf(c))).collect();
            let q = BiPoly::from_terms(&t);
            let (x0, y0) = (Gf(x0), Gf(y0));
            let mut want = Gf::ZERO;
            for (i, j, c) in q.terms() {
                if i >= r && j >= s && binom_mod2(i, r) && binom_mod2(j, s) {
                    want += f.mul(c, f.mul(f.pow(x0, (i - r) as i64), f.pow(y0, (j - s) as i64)));
                }
            }
            proptest::prop_assert_eq!(q.hasse(&f, r, s, x0, y0), want);
        }

        #[test]
        fn in_place_updates_match(
            a in proptest::collection::vec((0usize..8, 0usize..4, 1u16..16), 0..12),
            b in proptest::collection::vec((0usize..8, 0usize..4, 1u16..16), 0..12),
            c in 0u16..16, x0 in 0u16..16,
        ) {
            let f = gf16();
            let conv = |v: &Vec<(usize, usize, u16)>| BiPoly::from_terms(&v.iter().map(|&(i, j, c)| (i, j, Gf(c))).collect::<Vec<_>>());
            let (pa, pb) = (conv(&a), conv(&b));
            let mut m = pa.clone();
            m.add_scaled_assign(&f, Gf(c), &pb);
            proptest::prop_assert_eq!(&m, &pa.add(&pb.scale(&f, Gf(c))));
            let mut l = pa.clone();
            l.mul_x_minus_assign(&f, Gf(x0));
            proptest::prop_assert_eq!(l, pa.mul_x_minus(&f, Gf(x0)));
        }
    }
}
