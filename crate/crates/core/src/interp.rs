//! Weighted-degree-minimal bivariate interpolation with multiplicities.
//!
//! `interpolate` runs Kötter's incremental basis update over the candidates
//! y^0..y^cap; `nullspace_oracle` solves the same problem by Gaussian
//! elimination over monomials taken in order and exists for cross-checking.

use std::cmp::Ordering;

use crate::algebra::linalg::first_dependency;
use crate::algebra::{binom_mod2, BiPoly, Field, Gf};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InterpError {
    #[error("no nonzero polynomial with y-degree at most {cap}")]
    InfeasibleCap { cap: usize },
    #[error("first {budget} monomials do not admit a solution")]
    BudgetExceeded { budget: usize },
}

/// Monomial order by doubled weights (2·wx, 2·wy); ties go to the lower y-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightedOrder {
    pub wx2: i64,
    pub wy2: i64,
}

impl WeightedOrder {
    /// Weights (wx2/2, wy2/2). `wx2` must be positive.
    pub fn doubled(wx2: i64, wy2: i64) -> WeightedOrder {
        assert!(wx2 > 0, "x weight must be positive");
        WeightedOrder { wx2, wy2 }
    }

    /// Integer weights (1, wy).
    pub fn unit_x(wy: i64) -> WeightedOrder {
        WeightedOrder::doubled(2, 2 * wy)
    }

    /// Doubled weighted degree of x^i y^j.
    #[inline]
    pub fn degree2(&self, i: usize, j: usize) -> i64 {
        self.wx2 * i as i64 + self.wy2 * j as i64
    }

    #[inline]
    pub fn key(&self, i: usize, j: usize) -> (i64, usize) {
        (self.degree2(i, j), j)
    }

    pub fn cmp_monomials(&self, a: (usize, usize), b: (usize, usize)) -> Ordering {
        self.key(a.0, a.1).cmp(&self.key(b.0, b.1))
    }

    /// Leading monomial (i, j); `None` for zero.
    pub fn leading(&self, q: &BiPoly) -> Option<(usize, usize)> {
        q.rows()
            .iter()
            .enumerate()
            .filter_map(|(j, r)| r.deg().finite().map(|i| (i, j)))
            .max_by(|&a, &b| self.cmp_monomials(a, b))
    }

    /// Doubled weighted degree of q; `None` for zero.
    pub fn weighted_degree2(&self, q: &BiPoly) -> Option<i64> {
        self.leading(q).map(|(i, j)| self.degree2(i, j))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InterpPoint {
    pub x: Gf,
    pub y: Gf,
    pub mult: usize,
}

impl InterpPoint {
    pub fn new(x: Gf, y: Gf, mult: usize) -> InterpPoint {
        InterpPoint { x, y, mult }
    }

    /// Number of linear constraints, mult(mult+1)/2.
    pub fn constraints(&self) -> usize {
        self.mult * (self.mult + 1) / 2
    }
}

pub fn constraint_count(points: &[InterpPoint]) -> usize {
    points.iter().map(InterpPoint::constraints).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpResult {
    /// Minimal polynomial with pure y factors divided out.
    pub q: BiPoly,
    /// The minimal polynomial before stripping, monic in its leading monomial.
    pub minimal: BiPoly,
    /// Doubled weighted degree of `minimal`.
    pub degree2: i64,
    pub constraints: usize,
}

/// True iff every Hasse derivative of total order below the multiplicity vanishes.
pub fn hasse_check(f: &Field, q: &BiPoly, pt: &InterpPoint) -> bool {
    (0..pt.mult).all(|s| (0..pt.mult - s).all(|r| q.hasse(f, r, s, pt.x, pt.y).is_zero()))
}

fn finish(f: &Field, minimal: BiPoly, order: &WeightedOrder, constraints: usize) -> InterpResult {
    let (i, j) = order.leading(&minimal).expect("nonzero");
    let lc = minimal.coeff(i, j);
    let minimal = minimal.scale(f, f.inv(lc).expect("nonzero"));
    let degree2 = order.degree2(i, j);
    let (q, _) = minimal.strip_y_factors();
    InterpResult { q, minimal, degree2, constraints }
}

/// Kötter interpolation with y-degree at most `dy_cap`.
pub fn interpolate(
    f: &Field,
    points: &[InterpPoint],
    order: &WeightedOrder,
    dy_cap: usize,
) -> Result<InterpResult, InterpError> {
    let mut basis: Vec<BiPoly> = (0..=dy_cap).map(BiPoly::y_power).collect();
    let mut lm: Vec<(i64, usize)> = (0..=dy_cap).map(|j| order.key(0, j)).collect();
    let mut disc = vec![Gf::ZERO; dy_cap + 1];
    for pt in points {
        // (r, s) with s outer keeps each constraint's predecessor (r-1, s) earlier
        for s in 0..pt.mult {
            for r in 0..pt.mult - s {
                let mut best: Option<usize> = None;
                for (j, g) in basis.iter().enumerate() {
                    disc[j] = g.hasse(f, r, s, pt.x, pt.y);
                    if !disc[j].is_zero() && best.is_none_or(|b| lm[j] < lm[b]) {
                        best = Some(j);
                    }
                }
                let Some(b) = best else { continue };
                let pivot = basis[b].clone();
                let inv = f.inv(disc[b]).expect("nonzero");
                for j in 0..basis.len() {
                    if j != b && !disc[j].is_zero() {
                        // leading monomial of g_j is above that of the pivot, so it survives
                        basis[j].add_scaled_assign(f, f.mul(disc[j], inv), &pivot);
                    }
                }
                basis[b].mul_x_minus_assign(f, pt.x);
                lm[b] = {
                    let (i, j) = order.leading(&basis[b]).expect("nonzero");
                    order.key(i, j)
                };
            }
        }
    }
    let best = (0..basis.len())
        .min_by(|&a, &b| lm[a].cmp(&lm[b]))
        .expect("at least one candidate");
    if basis[best].is_zero() {
        return Err(InterpError::InfeasibleCap { cap: dy_cap });
    }
    let minimal = std::mem::take(&mut basis[best]);
    Ok(finish(f, minimal, order, constraint_count(points)))
}

/// The first `count` monomials x^i y^j (j ≤ dy_cap) in increasing order.
pub fn monomials_in_order(order: &WeightedOrder, dy_cap: usize, count: usize) -> Vec<(usize, usize)> {
    let mut all: Vec<(usize, usize)> = (0..=dy_cap)
        .flat_map(|j| (0..count).map(move |i| (i, j)))
        .collect();
    all.sort_by(|&a, &b| order.cmp_monomials(a, b));
    all.truncate(count);
    all
}

/// Hasse derivative D^(r,s) of x^i y^j at (x0, y0).
fn monomial_hasse(f: &Field, i: usize, j: usize, r: usize, s: usize, x0: Gf, y0: Gf) -> Gf {
    if !binom_mod2(i, r) || !binom_mod2(j, s) {
        return Gf::ZERO;
    }
    f.mul(f.pow(x0, (i - r) as i64), f.pow(y0, (j - s) as i64))
}

/// Minimal interpolation polynomial by linear algebra over the first
/// `monomial_budget` monomials in order.
pub fn nullspace_oracle(
    f: &Field,
    points: &[InterpPoint],
    order: &WeightedOrder,
    dy_cap: usize,
    monomial_budget: usize,
) -> Result<InterpResult, InterpError> {
    let monos = monomials_in_order(order, dy_cap, monomial_budget);
    let mut rows = Vec::new();
    for pt in points {
        for s in 0..pt.mult {
            for r in 0..pt.mult - s {
                rows.push(
                    monos
                        .iter()
                        .map(|&(i, j)| monomial_hasse(f, i, j, r, s, pt.x, pt.y))
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    let v = if rows.is_empty() {
        let mut v = vec![Gf::ZERO; monos.len()];
        if v.is_empty() {
            return Err(InterpError::BudgetExceeded { budget: monomial_budget });
        }
        v[0] = Gf::ONE;
        v
    } else {
        first_dependency(f, &rows, monos.len())
            .ok_or(InterpError::BudgetExceeded { budget: monomial_budget })?
    };
    let terms: Vec<(usize, usize, Gf)> = monos
        .iter()
        .zip(&v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(&(i, j), &c)| (i, j, c))
        .collect();
    Ok(finish(f, BiPoly::from_terms(&terms), order, constraint_count(points)))
}
