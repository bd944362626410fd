//! R(x, z) = Res_y(Q1(x, z·y), Q2(x, y)) by fraction-free elimination.

use super::FactorError;
use crate::algebra::{BiPoly, Field};

/// The resultant as a polynomial in (x, z), z stored in the y slot of `BiPoly`.
pub fn resultant(f: &Field, q1: &BiPoly, q2: &BiPoly) -> Result<BiPoly, FactorError> {
    let (Some(d1), Some(d2)) = (q1.y_degree().finite(), q2.y_degree().finite()) else {
        return Err(FactorError::DegenerateResultant);
    };
    let size = d1 + d2;
    if size == 0 {
        return Ok(BiPoly::one());
    }
    // coefficient of y^j in Q1(x, zy) is q1_j(x) z^j
    let a: Vec<BiPoly> = (0..=d1)
        .map(|j| BiPoly::from_x_poly(q1.row(j).clone()).mul_y_power(j))
        .collect();
    let b: Vec<BiPoly> = (0..=d2).map(|j| BiPoly::from_x_poly(q2.row(j).clone())).collect();
    let mut m = vec![vec![BiPoly::zero(); size]; size];
    for i in 0..d2 {
        for (j, c) in a.iter().enumerate() {
            m[i][i + d1 - j] = c.clone();
        }
    }
    for i in 0..d1 {
        for (j, c) in b.iter().enumerate() {
            m[d2 + i][i + d2 - j] = c.clone();
        }
    }
    bareiss_det(f, m).and_then(|r| if r.is_zero() { Err(FactorError::DegenerateResultant) } else { Ok(r) })
}

/// Bareiss determinant; row swaps only flip the sign, which is invisible in characteristic 2.
fn bareiss_det(f: &Field, mut m: Vec<Vec<BiPoly>>) -> Result<BiPoly, FactorError> {
    let n = m.len();
    let mut prev = BiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(BiPoly::zero());
            };
            m.swap(k, p);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(f, &m[i][j]).add(&m[i][k].mul(f, &m[k][j]));
                m[i][j] = num.div_exact(f, &prev).map_err(|_| FactorError::InexactElimination)?;
            }
            m[i][k] = BiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(m[n - 1][n - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gf, Poly, RationalFn};

    #[test]
    fn linear_case_has_constant_ratio_root() {
        let f = Field::with_default_poly(4).unwrap();
        let z0 = Gf(7);
        let s = RationalFn::new(&f, Poly::from_values(&[3, 1]), Poly::from_values(&[1, 4])).unwrap();
        let zs = s.scale(&f, z0);
        let q1 = BiPoly::linear_in_y(zs.den().clone(), zs.num().clone());
        let q2 = BiPoly::linear_in_y(s.den().clone(), s.num().clone());
        // Q1(x, z·y) and Q2 share the root y = s exactly when z = z0
        let r = resultant(&f, &q1, &q2).unwrap();
        assert!(r.substitute_rational(&f, &RationalFn::constant(z0)).is_zero());
    }

    #[test]
    fn matches_naive_determinant_for_quadratics() {
        let f = Field::with_default_poly(3).unwrap();
        let q1 = BiPoly::from_terms(&[(0, 0, Gf(1)), (1, 1, Gf(3)), (0, 2, Gf(1))]);
        let q2 = BiPoly::from_terms(&[(2, 0, Gf(5)), (0, 1, Gf(1))]);
        let r = resultant(&f, &q1, &q2).unwrap();
        // Res_y(A(y), y + c) = A(c) up to sign, with c = 5x^2 and A(y) = 1 + 3x z y + z^2 y^2
        let c = BiPoly::from_terms(&[(2, 0, Gf(5))]);
        let z = BiPoly::y_power(1);
        let want = BiPoly::one()
            .add(&BiPoly::from_terms(&[(1, 0, Gf(3))]).mul(&f, &z).mul(&f, &c))
            .add(&z.mul(&f, &z).mul(&f, &c).mul(&f, &c));
        assert_eq!(r, want);
    }
}
