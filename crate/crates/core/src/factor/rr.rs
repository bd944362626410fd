//! Roth-Ruckenstein search for power-series y-roots of Q(x, y) at x = 0.
//!
//! Works on Q truncated mod x^P. When a branch needs more precision than P
//! provides, the whole search restarts with P doubled; once P exceeds the
//! largest x-degree any node can reach, no truncation happens at all.

use crate::algebra::{BiPoly, Field, Gf, Series};

struct NeedPrecision;

fn truncate_rows(q: &BiPoly, prec: usize) -> BiPoly {
    BiPoly::from_rows(q.rows().iter().map(|r| r.truncate(prec)).collect())
}

/// Q(x, x·y + γ), truncated mod x^prec.
fn descend(f: &Field, q: &BiPoly, gamma: Gf, prec: usize) -> BiPoly {
    let shifted = truncate_rows(&q.shift_y(f, gamma), prec);
    BiPoly::from_rows(
        shifted
            .rows()
            .iter()
            .enumerate()
            .map(|(j, r)| r.shift(j).truncate(prec))
            .collect(),
    )
}

fn search(
    f: &Field,
    q: &BiPoly,
    prec: usize,
    order: usize,
    prefix: &mut Vec<Gf>,
    out: &mut Vec<Series>,
) -> Result<(), NeedPrecision> {
    if prefix.len() == order {
        out.push(Series::new(prefix.clone(), order));
        return Ok(());
    }
    if q.is_zero() {
        return Err(NeedPrecision);
    }
    let (q, val) = q.strip_x_factors();
    let prec = prec - val;
    let at_zero = q.eval_x(f, Gf::ZERO);
    if at_zero.deg().finite() == Some(0) {
        return Ok(());
    }
    for gamma in at_zero.roots_in(f, f.elements()) {
        let next = descend(f, &q, gamma, prec);
        prefix.push(gamma);
        let res = search(f, &next, prec, order, prefix, out);
        prefix.pop();
        res?;
    }
    Ok(())
}

/// All power-series roots y(x) of Q, each truncated to `order` terms.
pub fn rr_series_roots(f: &Field, q: &BiPoly, order: usize) -> Vec<Series> {
    if q.is_zero() || order == 0 {
        return Vec::new();
    }
    let dy = q.y_degree().finite().unwrap_or(0);
    let dx = q.x_degree().finite().unwrap_or(0);
    let exact = dx + order * dy + 2;
    let mut prec = (2 * order + 4).min(exact);
    loop {
        let mut out = Vec::new();
        match search(f, &truncate_rows(q, prec), prec, order, &mut Vec::new(), &mut out) {
            Ok(()) => {
                out.dedup();
                return out;
            }
            Err(NeedPrecision) => {
                assert!(prec < exact, "untruncated search cannot run out of precision");
                prec = (2 * prec).min(exact);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Poly, RationalFn};

    #[test]
    fn linear_root() {
        let f = Field::with_default_poly(4).unwrap();
        // y - (1 + x)
        let q = BiPoly::linear_in_y(Poly::one(), Poly::from_values(&[1, 1]));
        let roots = rr_series_roots(&f, &q, 5);
        assert_eq!(roots, vec![Series::from_poly(&Poly::from_values(&[1, 1]), 5)]);
    }

    #[test]
    fn two_planted_series() {
        let f = Field::with_default_poly(4).unwrap();
        let s1 = Poly::from_values(&[3, 0, 7, 1]);
        let s2 = Poly::from_values(&[3, 5, 2]);
        let q = BiPoly::linear_in_y(Poly::one(), s1.clone())
            .mul(&f, &BiPoly::linear_in_y(Poly::one(), s2.clone()));
        let mut roots = rr_series_roots(&f, &q, 6);
        roots.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
        let mut want = vec![Series::from_poly(&s1, 6), Series::from_poly(&s2, 6)];
        want.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
        assert_eq!(roots, want);
    }

    #[test]
    fn rational_root_matches_series_division() {
        let f = Field::with_default_poly(4).unwrap();
        let u = Poly::from_values(&[1, 9, 4]);
        let v = Poly::from_values(&[6, 0, 11, 2]);
        let q = BiPoly::linear_in_y(u.clone(), v.clone());
        let roots = rr_series_roots(&f, &q, 12);
        let want = Series::from_rational(&f, &RationalFn::new(&f, v, u).unwrap(), 12).unwrap();
        assert_eq!(roots, vec![want]);
    }

    #[test]
    fn high_multiplicity_at_origin_forces_retry() {
        let f = Field::with_default_poly(3).unwrap();
        // x^20 (y - 1) + (y - 1)^2: precision must grow past 20 to separate terms
        let lin = BiPoly::linear_in_y(Poly::one(), Poly::one());
        let q = lin.mul_x_poly(&f, &Poly::monomial(20, Gf::ONE)).add(&lin.mul(&f, &lin));
        let roots = rr_series_roots(&f, &q, 4);
        assert!(roots.contains(&Series::from_poly(&Poly::one(), 4)));
    }
}
