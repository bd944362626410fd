//! Dense Gaussian elimination over GF(2^m).

use super::{Field, Gf};

/// Row-reduce in place to reduced row echelon form; returns pivot columns.
pub fn rref(f: &Field, rows: &mut [Vec<Gf>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let k = row[c];
            for (v, &pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                *v += f.mul(k, pv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, rows: &[Vec<Gf>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Solve A·x = b. Free variables are set to zero. `None` if inconsistent.
pub fn solve(f: &Field, a: &[Vec<Gf>], b: &[Gf]) -> Option<Vec<Gf>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Gf>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Gf::ZERO; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][ncols];
    }
    Some(x)
}

/// The first column that depends on earlier ones, with the dependency
/// normalised so that column has coefficient one. Columns after it are zero.
pub fn first_dependency(f: &Field, a: &[Vec<Gf>], ncols: usize) -> Option<Vec<Gf>> {
    let mut m: Vec<Vec<Gf>> = a.to_vec();
    let pivots = rref(f, &mut m);
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Gf::ZERO; ncols];
    v[free] = Gf::ONE;
    for (r, &c) in pivots.iter().enumerate() {
        if c < free {
            v[c] = m[r][free];
        }
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_small_system() {
        let f = Field::with_default_poly(4).unwrap();
        let a = vec![vec![Gf(1), Gf(2)], vec![Gf(3), Gf(7)]];
        let x = vec![Gf(5), Gf(9)];
        let b: Vec<Gf> = a
            .iter()
            .map(|r| f.mul(r[0], x[0]) + f.mul(r[1], x[1]))
            .collect();
        assert_eq!(solve(&f, &a, &b).unwrap(), x);
    }

    #[test]
    fn dependency_is_in_kernel() {
        let f = Field::with_default_poly(3).unwrap();
        // third column = 2·first + second
        let a = vec![
            vec![Gf(1), Gf(0), Gf(2), Gf(1)],
            vec![Gf(3), Gf(1), f.mul(Gf(2), Gf(3)) + Gf(1), Gf(0)],
        ];
        let v = first_dependency(&f, &a, 4).unwrap();
        assert_eq!(v[2], Gf::ONE);
        assert_eq!(v[3], Gf::ZERO);
        for row in &a {
            let s = row.iter().zip(&v).fold(Gf::ZERO, |acc, (&x, &y)| acc + f.mul(x, y));
            assert!(s.is_zero());
        }
        assert_eq!(rank(&f, &a), 2);
    }
}
