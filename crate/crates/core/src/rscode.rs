//! Reed-Solomon code parameters, encoding, syndromes and erasure reconstruction.
//!
//! Position i (1-based) is tied to the evaluation point α^i and to the
//! error-locator root α^(-i). Syndromes are S_j = Σ_i r_i α^(ij) for
//! j = 0..n-k-1, so the code is the set of words whose first n-k Fourier
//! coefficients vanish. The encoder uses c_i = α^i·m(α^i) with deg m < k,
//! which is exactly that set.

use std::sync::Arc;

use crate::algebra::{lagrange_interpolate, AlgebraError, Field, Gf, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RsError {
    #[error("invalid code parameters: n = {n}, k = {k} (need 1 <= k < n = q - 1)")]
    InvalidParams { n: usize, k: usize },
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("symbol {value:#x} at position {position} is outside the field")]
    SymbolOutOfRange { position: usize, value: u16 },
    #[error("need at least {needed} known positions, got {got}")]
    TooFewPositions { needed: usize, got: usize },
    #[error("position {0} out of range")]
    BadPosition(usize),
    #[error("re-encoded word disagrees with supplied position {0}")]
    InconsistentErasure(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An (n, k) RS code over GF(q) with n = q - 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    field: Arc<Field>,
    n: usize,
    k: usize,
}

impl CodeParams {
    pub fn new(field: Field, k: usize) -> Result<CodeParams, RsError> {
        CodeParams::with_shared_field(Arc::new(field), k)
    }

    pub fn with_shared_field(field: Arc<Field>, k: usize) -> Result<CodeParams, RsError> {
        let n = field.order();
        if k == 0 || k >= n {
            return Err(RsError::InvalidParams { n, k });
        }
        Ok(CodeParams { field, n, k })
    }

    /// Code over GF(2^m) with the default primitive polynomial.
    pub fn standard(m: u32, k: usize) -> Result<CodeParams, RsError> {
        CodeParams::new(Field::with_default_poly(m)?, k)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shared_field(&self) -> Arc<Field> {
        Arc::clone(&self.field)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of syndromes, n - k.
    #[inline]
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// Classical unique-decoding radius floor((n-k)/2).
    #[inline]
    pub fn t(&self) -> usize {
        (self.n - self.k) / 2
    }

    /// Minimum distance n - k + 1.
    #[inline]
    pub fn d(&self) -> usize {
        self.n - self.k + 1
    }

    /// α^i for position i.
    #[inline]
    pub fn eval_point(&self, i: usize) -> Gf {
        self.field.alpha_pow(i as i64)
    }

    /// α^(-i), the locator root for position i.
    #[inline]
    pub fn locator_point(&self, i: usize) -> Gf {
        self.field.alpha_pow(-(i as i64))
    }

    /// Check length and symbol range of a word.
    pub fn check_word(&self, word: &[Gf]) -> Result<(), RsError> {
        if word.len() != self.n {
            return Err(RsError::LengthMismatch { expected: self.n, got: word.len() });
        }
        if let Some((i, s)) = word.iter().enumerate().find(|(_, s)| s.0 as usize >= self.field.size()) {
            return Err(RsError::SymbolOutOfRange { position: i + 1, value: s.0 });
        }
        Ok(())
    }
}

/// Error locations (1-based, ascending) with their nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ErrorPattern {
    pub locations: Vec<usize>,
    pub values: Vec<Gf>,
}

impl ErrorPattern {
    pub fn new(mut pairs: Vec<(usize, Gf)>) -> ErrorPattern {
        pairs.retain(|p| !p.1.is_zero());
        pairs.sort_by_key(|p| p.0);
        pairs.dedup_by_key(|p| p.0);
        let (locations, values) = pairs.into_iter().unzip();
        ErrorPattern { locations, values }
    }

    /// The pattern e = received - codeword (XOR in characteristic 2).
    pub fn between(received: &[Gf], codeword: &[Gf]) -> ErrorPattern {
        assert_eq!(received.len(), codeword.len());
        ErrorPattern::new(
            received
                .iter()
                .zip(codeword)
                .enumerate()
                .map(|(i, (&r, &c))| (i + 1, r + c))
                .collect(),
        )
    }

    pub fn weight(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }

    /// Λ(x) = Π_{i∈I} (1 + α^i x).
    pub fn locator(&self, params: &CodeParams) -> Poly {
        let f = params.field();
        self.locations.iter().fold(Poly::one(), |acc, &i| {
            acc.mul(f, &Poly::from_coeffs(vec![Gf::ONE, params.eval_point(i)]))
        })
    }

    /// Ω(x) = Σ_i e_i Π_{l≠i} (1 + α^l x), so that Λ·S ≡ Ω mod x^(n-k).
    pub fn evaluator(&self, params: &CodeParams) -> Poly {
        let f = params.field();
        let mut acc = Poly::zero();
        for (idx, &e) in self.values.iter().enumerate() {
            let mut term = Poly::constant(e);
            for (jdx, &l) in self.locations.iter().enumerate() {
                if jdx != idx {
                    term = term.mul(f, &Poly::from_coeffs(vec![Gf::ONE, params.eval_point(l)]));
                }
            }
            acc.add_assign(&term);
        }
        acc
    }

    /// Dense length-n error vector.
    pub fn to_vector(&self, n: usize) -> Vec<Gf> {
        let mut v = vec![Gf::ZERO; n];
        for (&i, &e) in self.locations.iter().zip(&self.values) {
            v[i - 1] = e;
        }
        v
    }

    /// word + e
    pub fn apply(&self, word: &[Gf]) -> Vec<Gf> {
        let mut out = word.to_vec();
        for (&i, &e) in self.locations.iter().zip(&self.values) {
            out[i - 1] += e;
        }
        out
    }
}

/// Evaluate the message polynomial at α^i and multiply by α^i.
pub fn encode(params: &CodeParams, message: &[Gf]) -> Result<Vec<Gf>, RsError> {
    if message.len() != params.k() {
        return Err(RsError::LengthMismatch { expected: params.k(), got: message.len() });
    }
    Ok(encode_poly(params, &Poly::from_coeffs(message.to_vec())))
}

fn encode_poly(params: &CodeParams, m: &Poly) -> Vec<Gf> {
    let f = params.field();
    (1..=params.n())
        .map(|i| {
            let x = params.eval_point(i);
            f.mul(x, m.eval(f, x))
        })
        .collect()
}

/// S(x) = Σ_{j<n-k} S_j x^j with S_j = Σ_i r_i α^(ij).
pub fn syndromes(params: &CodeParams, received: &[Gf]) -> Poly {
    let f = params.field();
    let n = params.n();
    let mut s = vec![Gf::ZERO; params.redundancy()];
    for (idx, &r) in received.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let lr = f.log(r).expect("nonzero");
        let i = idx + 1;
        for (j, sj) in s.iter_mut().enumerate() {
            *sj += f.alpha_pow((lr + (i * j) % n) as i64);
        }
    }
    Poly::from_coeffs(s)
}

pub fn is_codeword(params: &CodeParams, word: &[Gf]) -> bool {
    word.len() == params.n() && syndromes(params, word).is_zero()
}

/// True iff Λ·(S mod x^γ) ≡ Ω mod x^γ.
pub fn verify_key_equation(f: &Field, lambda: &Poly, omega: &Poly, s: &Poly, gamma: usize) -> bool {
    lambda.mul(f, &s.truncate(gamma)).truncate(gamma) == omega.truncate(gamma)
}

/// Reconstruct the codeword from positions assumed error-free.
///
/// Interpolates the message from the first k supplied positions, re-encodes,
/// and checks every supplied position.
pub fn erasure_decode(
    params: &CodeParams,
    received: &[Gf],
    known_good: &[usize],
) -> Result<Vec<Gf>, RsError> {
    params.check_word(received)?;
    if known_good.len() < params.k() {
        return Err(RsError::TooFewPositions { needed: params.k(), got: known_good.len() });
    }
    if let Some(&bad) = known_good.iter().find(|&&i| i == 0 || i > params.n()) {
        return Err(RsError::BadPosition(bad));
    }
    let f = params.field();
    let use_pos = &known_good[..params.k()];
    let xs: Vec<Gf> = use_pos.iter().map(|&i| params.eval_point(i)).collect();
    let ys: Vec<Gf> = use_pos
        .iter()
        .zip(&xs)
        .map(|(&i, &x)| f.div(received[i - 1], x))
        .collect::<Result<_, _>>()?;
    let m = lagrange_interpolate(f, &xs, &ys)?;
    let c = encode_poly(params, &m);
    if let Some(&bad) = known_good.iter().find(|&&i| c[i - 1] != received[i - 1]) {
        return Err(RsError::InconsistentErasure(bad));
    }
    Ok(c)
}

/// Subtract the claimed error values and keep the result only if it is a codeword.
pub fn apply_error_values(
    params: &CodeParams,
    received: &[Gf],
    locations: &[usize],
    values: &[Gf],
) -> Option<Vec<Gf>> {
    assert_eq!(locations.len(), values.len());
    let mut out = received.to_vec();
    for (&i, &e) in locations.iter().zip(values) {
        if i == 0 || i > params.n() {
            return None;
        }
        out[i - 1] += e;
    }
    is_codeword(params, &out).then_some(out)
}

/// Message polynomial of a codeword (inverse of `encode`).
pub fn message_of(params: &CodeParams, codeword: &[Gf]) -> Result<Vec<Gf>, RsError> {
    let all: Vec<usize> = (1..=params.n()).collect();
    let c = erasure_decode(params, codeword, &all)?;
    let f = params.field();
    let xs: Vec<Gf> = (1..=params.k()).map(|i| params.eval_point(i)).collect();
    let ys: Vec<Gf> = (1..=params.k())
        .map(|i| f.div(c[i - 1], params.eval_point(i)))
        .collect::<Result<_, _>>()?;
    let mut m = lagrange_interpolate(f, &xs, &ys)?.into_coeffs();
    m.resize(params.k(), Gf::ZERO);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs73() -> CodeParams {
        CodeParams::new(Field::new(3, 0xB).unwrap(), 3).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(CodeParams::standard(4, 0).is_err());
        assert!(CodeParams::standard(4, 15).is_err());
        let p = CodeParams::standard(4, 9).unwrap();
        assert_eq!((p.n(), p.k(), p.t(), p.d()), (15, 9, 3, 7));
    }

    #[test]
    fn zero_and_constant_messages() {
        let p = rs73();
        let z = encode(&p, &[Gf(0); 3]).unwrap();
        assert!(z.iter().all(|s| s.is_zero()));
        // constant message c encodes to c·α^i under the α^i column multiplier
        let c = Gf(5);
        let w = encode(&p, &[c, Gf(0), Gf(0)]).unwrap();
        for (idx, &s) in w.iter().enumerate() {
            assert_eq!(s, p.field().mul(c, p.eval_point(idx + 1)));
        }
        assert!(is_codeword(&p, &w));
    }

    #[test]
    fn every_rs73_message_is_a_codeword() {
        let p = rs73();
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    let w = encode(&p, &[Gf(a), Gf(b), Gf(c)]).unwrap();
                    assert!(syndromes(&p, &w).is_zero());
                    assert_eq!(message_of(&p, &w).unwrap(), vec![Gf(a), Gf(b), Gf(c)]);
                }
            }
        }
    }

    #[test]
    fn single_error_syndromes() {
        let p = CodeParams::standard(4, 9).unwrap();
        let f = p.field();
        let e = Gf(7);
        for i in 1..=15 {
            let mut r = vec![Gf::ZERO; 15];
            r[i - 1] = e;
            let s = syndromes(&p, &r);
            for j in 0..6 {
                assert_eq!(s.coeff(j), f.mul(e, f.alpha_pow((i * j) as i64)));
            }
        }
    }

    #[test]
    fn key_equation_oracle() {
        let p = CodeParams::standard(4, 9).unwrap();
        let f = p.field();
        assert!(verify_key_equation(f, &Poly::one(), &Poly::zero(), &Poly::zero(), 6));
        let e = ErrorPattern::new(vec![(2, Gf(3)), (9, Gf(11))]);
        let s = syndromes(&p, &e.to_vector(15));
        let (lam, om) = (e.locator(&p), e.evaluator(&p));
        assert!(verify_key_equation(f, &lam, &om, &s, 6));
        let bad = om.add(&Poly::monomial(0, Gf(1)));
        assert!(!verify_key_equation(f, &lam, &bad, &s, 6));
    }

    #[test]
    fn erasure_examples() {
        let p = rs73();
        let c = encode(&p, &[Gf(1), Gf(6), Gf(3)]).unwrap();
        let all: Vec<usize> = (1..=7).collect();
        assert_eq!(erasure_decode(&p, &c, &all).unwrap(), c);
        let e = ErrorPattern::new(vec![(1, Gf(2)), (3, Gf(5)), (4, Gf(1)), (6, Gf(7))]);
        let r = e.apply(&c);
        assert_eq!(erasure_decode(&p, &r, &[2, 5, 7]).unwrap(), c);
        assert_eq!(erasure_decode(&p, &r, &[2, 5, 7, 1]), Err(RsError::InconsistentErasure(1)));
        assert!(matches!(erasure_decode(&p, &r, &[2, 5]), Err(RsError::TooFewPositions { .. })));
    }

    #[test]
    fn apply_values_examples() {
        let p = rs73();
        let c = encode(&p, &[Gf(4), Gf(0), Gf(2)]).unwrap();
        assert_eq!(apply_error_values(&p, &c, &[], &[]), Some(c.clone()));
        let e = ErrorPattern::new(vec![(2, Gf(3)), (5, Gf(6))]);
        let r = e.apply(&c);
        assert_eq!(apply_error_values(&p, &r, &e.locations, &e.values), Some(c));
        assert_eq!(apply_error_values(&p, &r, &e.locations, &[Gf(3), Gf(7)]), None);
    }

    #[test]
    fn error_value_is_fourier_inverse_at_locator_root() {
        // e_i = Ω(α^-i) / (α^-i Λ'(α^-i))
        let p = CodeParams::standard(4, 9).unwrap();
        let f = p.field();
        let e = ErrorPattern::new(vec![(4, Gf(9)), (10, Gf(2)), (13, Gf(14))]);
        let (lam, om) = (e.locator(&p), e.evaluator(&p));
        let dl = lam.derivative();
        for (&i, &v) in e.locations.iter().zip(&e.values) {
            let x = p.locator_point(i);
            assert!(lam.eval(f, x).is_zero());
            let got = f.div(om.eval(f, x), f.mul(x, dl.eval(f, x))).unwrap();
            assert_eq!(got, v);
        }
    }
}
