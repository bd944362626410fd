//! Channel models producing hard decisions and posterior matrices.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::algebra::Gf;
use crate::ma::PosteriorMatrix;
use crate::rscode::{CodeParams, ErrorPattern};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChannelError {
    #[error("symbol error probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("SNR {0} dB is not finite")]
    BadSnr(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChannelSpec {
    /// q-ary symmetric channel: each symbol is replaced by a uniformly chosen
    /// different symbol with probability p.
    Qsc { p: f64 },
    /// BPSK over AWGN, m bits per symbol (least significant first, 0 -> +1),
    /// with the SNR given as Eb/N0 in dB.
    Awgn { snr_db: f64 },
}

impl ChannelSpec {
    pub fn validate(&self) -> Result<(), ChannelError> {
        match *self {
            ChannelSpec::Qsc { p } if !(0.0..=1.0).contains(&p) => Err(ChannelError::BadProbability(p)),
            ChannelSpec::Awgn { snr_db } if !snr_db.is_finite() => Err(ChannelError::BadSnr(snr_db)),
            _ => Ok(()),
        }
    }

    /// The sweep parameter: p or SNR in dB.
    pub fn param(&self) -> f64 {
        match *self {
            ChannelSpec::Qsc { p } => p,
            ChannelSpec::Awgn { snr_db } => snr_db,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReceivedWord {
    pub hard: Vec<Gf>,
    pub pi: PosteriorMatrix,
    /// Per-bit channel outputs for AWGN; empty for the symmetric channel.
    pub observations: Vec<f64>,
}

pub fn transmit<R: Rng + ?Sized>(
    params: &CodeParams,
    spec: &ChannelSpec,
    codeword: &[Gf],
    rng: &mut R,
) -> ReceivedWord {
    match *spec {
        ChannelSpec::Qsc { p } => qsc(params, p, codeword, rng),
        ChannelSpec::Awgn { snr_db } => awgn(params, snr_db, codeword, rng),
    }
}

fn qsc<R: Rng + ?Sized>(params: &CodeParams, p: f64, codeword: &[Gf], rng: &mut R) -> ReceivedWord {
    let f = params.field();
    let q = f.size() as u32;
    let hard: Vec<Gf> = codeword
        .iter()
        .map(|&c| {
            if rng.random::<f64>() < p {
                // uniform over the q - 1 other symbols
                c + Gf(rng.random_range(1..q) as u16)
            } else {
                c
            }
        })
        .collect();
    let n = params.n();
    let mut pi = PosteriorMatrix::certain(n);
    let each = p / (q - 1) as f64;
    for i in 1..=n {
        pi.set_hard(i, 1.0 - p);
        for j in 1..=n {
            pi.set(i, j, each);
        }
    }
    ReceivedWord { hard, pi, observations: Vec::new() }
}

/// Noise standard deviation for Eb/N0 = snr_db at code rate k/n.
pub fn awgn_sigma(params: &CodeParams, snr_db: f64) -> f64 {
    let rate = params.k() as f64 / params.n() as f64;
    (1.0 / (2.0 * rate * 10f64.powf(snr_db / 10.0))).sqrt()
}

fn awgn<R: Rng + ?Sized>(params: &CodeParams, snr_db: f64, codeword: &[Gf], rng: &mut R) -> ReceivedWord {
    let f = params.field();
    let m = f.m() as usize;
    let q = f.size();
    let sigma = awgn_sigma(params, snr_db);
    let noise = Normal::new(0.0, sigma).expect("finite sigma");
    let mut observations = Vec::with_capacity(codeword.len() * m);
    let mut hard = Vec::with_capacity(codeword.len());
    let mut posts = Vec::with_capacity(codeword.len());
    for &c in codeword {
        let ys: Vec<f64> = (0..m)
            .map(|b| {
                let s = if (c.0 >> b) & 1 == 0 { 1.0 } else { -1.0 };
                s + noise.sample(rng)
            })
            .collect();
        // log-likelihood of each symbol, then normalize
        let ll: Vec<f64> = (0..q)
            .map(|s| {
                (0..m)
                    .map(|b| {
                        let x = if (s >> b) & 1 == 0 { 1.0 } else { -1.0 };
                        -(ys[b] - x) * (ys[b] - x) / (2.0 * sigma * sigma)
                    })
                    .sum()
            })
            .collect();
        let max = ll.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut post: Vec<f64> = ll.iter().map(|&l| (l - max).exp()).collect();
        let total: f64 = post.iter().sum();
        post.iter_mut().for_each(|p| *p /= total);
        let best = (0..q)
            .max_by(|&a, &b| post[a].total_cmp(&post[b]).then(b.cmp(&a)))
            .expect("nonempty");
        hard.push(Gf(best as u16));
        posts.push(post);
        observations.extend(ys);
    }
    let pi = PosteriorMatrix::from_symbol_posteriors(f, &hard, &posts);
    ReceivedWord { hard, pi, observations }
}

/// Ground-truth pattern e = ẑ - c.
pub fn error_pattern_of(received: &[Gf], codeword: &[Gf]) -> ErrorPattern {
    ErrorPattern::between(received, codeword)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rscode::encode;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params() -> CodeParams {
        CodeParams::standard(4, 9).unwrap()
    }

    fn some_codeword(p: &CodeParams) -> Vec<Gf> {
        encode(p, &(0..9).map(|v| Gf(v as u16 + 1)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn qsc_zero_is_noiseless() {
        let p = params();
        let c = some_codeword(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rw = transmit(&p, &ChannelSpec::Qsc { p: 0.0 }, &c, &mut rng);
        assert_eq!(rw.hard, c);
        assert!((1..=15).all(|i| rw.pi.row(i).iter().all(|&v| v == 0.0)));
    }

    #[test]
    fn qsc_posterior_is_symmetric() {
        let p = params();
        let c = some_codeword(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rw = transmit(&p, &ChannelSpec::Qsc { p: 0.3 }, &c, &mut rng);
        for i in 1..=15 {
            assert!(rw.pi.row(i).iter().all(|&v| (v - 0.02).abs() < 1e-12));
            let total: f64 = rw.pi.row(i).iter().sum::<f64>() + rw.pi.hard(i);
            assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn qsc_empirical_rate_within_three_sigma() {
        let p = params();
        let c = some_codeword(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let prob = 0.1;
        let trials = 10_000 / 15 + 1;
        let mut errors = 0usize;
        for _ in 0..trials {
            let rw = transmit(&p, &ChannelSpec::Qsc { p: prob }, &c, &mut rng);
            errors += error_pattern_of(&rw.hard, &c).weight();
        }
        let total = (trials * 15) as f64;
        let rate = errors as f64 / total;
        let sd = (prob * (1.0 - prob) / total).sqrt();
        assert!((rate - prob).abs() < 3.0 * sd, "rate {rate}");
    }

    #[test]
    fn awgn_high_snr_and_normalization() {
        let p = params();
        let c = some_codeword(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let rw = transmit(&p, &ChannelSpec::Awgn { snr_db: 12.0 }, &c, &mut rng);
            assert_eq!(rw.hard, c);
            for i in 1..=15 {
                let total: f64 = rw.pi.row(i).iter().sum::<f64>() + rw.pi.hard(i);
                assert!((total - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn seeded_determinism() {
        let p = params();
        let c = some_codeword(&p);
        let spec = ChannelSpec::Awgn { snr_db: 3.0 };
        let a = transmit(&p, &spec, &c, &mut ChaCha8Rng::seed_from_u64(9));
        let b = transmit(&p, &spec, &c, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }

    #[test]
    fn pattern_of_examples() {
        let c = vec![Gf(1), Gf(2), Gf(3)];
        assert!(error_pattern_of(&c, &c).is_empty());
        let r = vec![Gf(1), Gf(7), Gf(3)];
        let e = error_pattern_of(&r, &c);
        assert_eq!((e.locations.clone(), e.values.clone()), (vec![2], vec![Gf(5)]));
    }
}
