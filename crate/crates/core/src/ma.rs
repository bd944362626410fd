//! Posterior matrices, greedy multiplicity assignment and the counting
//! conditions that decide whether the soft decoder is guaranteed to succeed.
//!
//! Column j of a posterior or multiplicity matrix stands for the error value
//! α^(-j), j = 1..n; the hard decision (error value 0) is kept separately.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::algebra::{Field, Gf};
use crate::keysolver::OrderedKeys;
use crate::rscode::ErrorPattern;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PosteriorError {
    #[error("expected {expected} rows, got {got}")]
    RowCount { expected: usize, got: usize },
    #[error("row {row}: expected {expected} entries, got {got}")]
    RowLength { row: usize, expected: usize, got: usize },
    #[error("row {row}: probability {value} outside [0, 1]")]
    OutOfRange { row: usize, value: f64 },
    #[error("row {row}: error-value mass {sum} exceeds 1")]
    MassExceedsOne { row: usize, sum: f64 },
}

/// Column index j of the error value e = α^(-j), in 1..=n.
pub fn error_index(f: &Field, e: Gf) -> usize {
    let n = f.order();
    let l = f.log(e).expect("error values are nonzero");
    match (n - l) % n {
        0 => n,
        j => j,
    }
}

/// The error value α^(-j) for column j.
pub fn error_value(f: &Field, j: usize) -> Gf {
    f.alpha_pow(-(j as i64))
}

/// Π(α^(-i), α^(-j)) for positions i and error values j, plus the hard-decision posterior.
#[derive(Clone, Debug, PartialEq)]
pub struct PosteriorMatrix {
    n: usize,
    probs: Vec<f64>,
    hard: Vec<f64>,
}

impl PosteriorMatrix {
    /// All error-value mass zero, hard decisions certain.
    pub fn certain(n: usize) -> PosteriorMatrix {
        PosteriorMatrix { n, probs: vec![0.0; n * n], hard: vec![1.0; n] }
    }

    /// Rows of error-value probabilities; the hard posterior of each row is
    /// the remaining mass.
    pub fn from_rows(n: usize, rows: Vec<Vec<f64>>) -> Result<PosteriorMatrix, PosteriorError> {
        if rows.len() != n {
            return Err(PosteriorError::RowCount { expected: n, got: rows.len() });
        }
        let mut probs = Vec::with_capacity(n * n);
        let mut hard = Vec::with_capacity(n);
        for (idx, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(PosteriorError::RowLength { row: idx + 1, expected: n, got: row.len() });
            }
            if let Some(&v) = row.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(PosteriorError::OutOfRange { row: idx + 1, value: v });
            }
            let sum: f64 = row.iter().sum();
            if sum > 1.0 + 1e-9 {
                return Err(PosteriorError::MassExceedsOne { row: idx + 1, sum });
            }
            hard.push((1.0 - sum).max(0.0));
            probs.extend(row);
        }
        Ok(PosteriorMatrix { n, probs, hard })
    }

    /// From per-position symbol posteriors (indexed by symbol value) and the
    /// hard decisions they are centred on.
    pub fn from_symbol_posteriors(f: &Field, hard_symbols: &[Gf], posts: &[Vec<f64>]) -> PosteriorMatrix {
        let n = f.order();
        let mut pm = PosteriorMatrix::certain(n);
        for (idx, (&z, post)) in hard_symbols.iter().zip(posts).enumerate() {
            let i = idx + 1;
            pm.hard[idx] = post[z.0 as usize];
            for j in 1..=n {
                let s = z + error_value(f, j);
                pm.set(i, j, post[s.0 as usize]);
            }
        }
        pm
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Π(α^(-i), α^(-j)), 1-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.probs[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, p: f64) {
        self.probs[(i - 1) * self.n + (j - 1)] = p;
    }

    pub fn hard(&self, i: usize) -> f64 {
        self.hard[i - 1]
    }

    pub fn set_hard(&mut self, i: usize, p: f64) {
        self.hard[i - 1] = p;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.probs[(i - 1) * self.n..i * self.n]
    }

    /// Posterior of error value e at position i, with e = 0 the hard decision.
    pub fn prob_of(&self, f: &Field, i: usize, e: Gf) -> f64 {
        if e.is_zero() {
            self.hard(i)
        } else {
            self.get(i, error_index(f, e))
        }
    }

    /// ⟨Π, Π⟩ over the error-value cells.
    pub fn self_inner(&self) -> f64 {
        self.probs.iter().map(|p| p * p).sum()
    }

    /// Re-centre position i on the hard decision ẑ_i - α^(-j): the chosen
    /// cell becomes the hard posterior and the old hard posterior moves to column j.
    pub fn flip(&self, f: &Field, i: usize, j: usize) -> PosteriorMatrix {
        let e0 = error_value(f, j);
        let mut out = self.clone();
        out.set_hard(i, self.get(i, j));
        for jj in 1..=self.n {
            let e = error_value(f, jj);
            let old = e0 + e;
            let p = if old.is_zero() { self.hard(i) } else { self.get(i, error_index(f, old)) };
            out.set(i, jj, p);
        }
        out
    }

    /// Σ_i ln Pr(error value at i) for the pattern separating `received` from `word`.
    pub fn log_score(&self, f: &Field, received: &[Gf], word: &[Gf]) -> f64 {
        received
            .iter()
            .zip(word)
            .enumerate()
            .map(|(idx, (&r, &c))| self.prob_of(f, idx + 1, r + c).max(1e-300).ln())
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    n: usize,
    m: Vec<u32>,
}

impl MultiplicityMatrix {
    pub fn zeros(n: usize) -> MultiplicityMatrix {
        MultiplicityMatrix { n, m: vec![0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.m[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.m[(i - 1) * self.n + (j - 1)] = v;
    }

    /// C = Σ M(M+1)/2.
    pub fn cost(&self) -> usize {
        self.m.iter().map(|&v| (v as usize) * (v as usize + 1) / 2).sum()
    }

    pub fn total(&self) -> usize {
        self.m.iter().map(|&v| v as usize).sum()
    }

    /// ⟨M, Π⟩
    pub fn inner(&self, pi: &PosteriorMatrix) -> f64 {
        self.m.iter().zip(&pi.probs).map(|(&m, &p)| m as f64 * p).sum()
    }

    /// Nonzero cells (i, j, M) in row-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.m
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(move |(k, &v)| (k / self.n + 1, k % self.n + 1, v))
    }

    /// Σ_{i∈I} M(α^(-i), e_i).
    pub fn score_on(&self, f: &Field, pattern: &ErrorPattern) -> usize {
        pattern
            .locations
            .iter()
            .zip(&pattern.values)
            .map(|(&i, &e)| self.get(i, error_index(f, e)) as usize)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    pub m: MultiplicityMatrix,
    pub cost: usize,
    pub dy: usize,
    /// Cells with M > D_Y, highest posterior first.
    pub over_cap: Vec<(usize, usize)>,
}

#[derive(PartialEq)]
struct Cand {
    ratio: f64,
    i: usize,
    j: usize,
}

impl Eq for Cand {}

impl Ord for Cand {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on ratio; among equal ratios the smallest (i, j) wins
        self.ratio
            .total_cmp(&other.ratio)
            .then_with(|| other.i.cmp(&self.i))
            .then_with(|| other.j.cmp(&self.j))
    }
}

impl PartialOrd for Cand {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `budget` unit increments, each to the cell maximizing Π/(M+1).
/// Cells with zero posterior are never incremented.
pub fn greedy_multiplicities(pi: &PosteriorMatrix, budget: usize) -> MultiplicityMatrix {
    let n = pi.n();
    let mut m = MultiplicityMatrix::zeros(n);
    let mut heap: BinaryHeap<Cand> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| pi.get(i, j) > 0.0)
        .map(|(i, j)| Cand { ratio: pi.get(i, j), i, j })
        .collect();
    for _ in 0..budget {
        let Some(c) = heap.pop() else { break };
        let v = m.get(c.i, c.j) + 1;
        m.set(c.i, c.j, v);
        heap.push(Cand { ratio: pi.get(c.i, c.j) / (v as f64 + 1.0), ..c });
    }
    m
}

/// Largest D with K·D(D+1) ≤ 4(C+1), where K = L_b + 1 - L_a.
pub fn dy_for_cost(cost: usize, k_factor: usize) -> usize {
    let k = k_factor.max(1);
    let mut d = 0;
    while k * (d + 1) * (d + 2) <= 4 * (cost + 1) {
        d += 1;
    }
    d
}

pub fn assign(pi: &PosteriorMatrix, budget: usize, keys: &OrderedKeys) -> Assignment {
    let m = greedy_multiplicities(pi, budget);
    let cost = m.cost();
    let dy = dy_for_cost(cost, keys.k_factor());
    let mut over_cap: Vec<(usize, usize)> = m
        .nonzero()
        .filter(|&(_, _, v)| v as usize > dy)
        .map(|(i, j, _)| (i, j))
        .collect();
    over_cap.sort_by(|a, b| pi.get(b.0, b.1).total_cmp(&pi.get(a.0, a.1)));
    Assignment { m, cost, dy, over_cap }
}

/// E[W(M)] = ((C+1)/(D_Y+1) - Σ Π·(M - D_Y)) / D_Y, the sum running over
/// the error-value cells.
pub fn expected_w(m: &MultiplicityMatrix, pi: &PosteriorMatrix, cost: usize, dy: usize) -> f64 {
    assert!(dy >= 1, "D_Y must be positive");
    let d = dy as f64;
    let sum: f64 = pi.probs.iter().zip(&m.m).map(|(&p, &v)| p * (v as f64 - d)).sum();
    ((cost as f64 + 1.0) / (d + 1.0) - sum) / d
}

/// The counting conditions guaranteeing that both soft interpolation
/// polynomials vanish at the true √g′, for a known error pattern:
/// w ≥ L_b,
/// 4(C+1) + D_Y(D_Y+1)(4w - 3L_a - L_b - 1) ≤ 4(D_Y+1)·Σ_{i∈I} M(α^(-i), e_i), and
/// (L_b+1-L_a)·D_Y(D_Y+1) ≤ 4(C+1).
pub fn soft_premise(
    f: &Field,
    m: &MultiplicityMatrix,
    cost: usize,
    dy: usize,
    keys: &OrderedKeys,
    pattern: &ErrorPattern,
) -> bool {
    let w = pattern.weight() as i64;
    let (la, lb) = (keys.l_a as i64, keys.l_b as i64);
    let (c, d) = (cost as i64, dy as i64);
    let score = m.score_on(f, pattern) as i64;
    if w < lb || d < 1 {
        return false;
    }
    let lhs = 4 * (c + 1) + d * (d + 1) * (4 * w - 3 * la - lb - 1);
    let rhs = 4 * (d + 1) * score;
    lhs <= rhs && (lb + 1 - la) * d * (d + 1) <= 4 * (c + 1)
}

/// w - L_a ≤ sqrt((L_b+1-L_a) / (2⟨Π,Π⟩)) · Σ_{i∈I} Π(α^(-i), e_i).
pub fn asymptotic_condition(f: &Field, pi: &PosteriorMatrix, keys: &OrderedKeys, pattern: &ErrorPattern) -> bool {
    if pattern.is_empty() {
        return true;
    }
    let lhs = pattern.weight() as f64 - keys.l_a as f64;
    let mass: f64 = pattern
        .locations
        .iter()
        .zip(&pattern.values)
        .map(|(&i, &e)| pi.prob_of(f, i, e))
        .sum();
    let pp = pi.self_inner();
    if pp == 0.0 {
        return lhs <= 0.0;
    }
    lhs <= (keys.k_factor() as f64 / (2.0 * pp)).sqrt() * mass
}
