use crate::algebra::Gf;
use crate::keysolver::berlekamp;
use crate::rscode::{apply_error_values, syndromes, CodeParams};

use super::{finalize, forney_values, locator_positions, DecodeResult, Scoring};

/// Unique decoding: Berlekamp, root scan of λ, Forney values.
pub fn bm_decode(params: &CodeParams, received: &[Gf]) -> DecodeResult {
    let words = bm_word(params, received).into_iter().collect();
    finalize(params, received, words, Scoring::Distance, false)
}

pub(crate) fn bm_word(params: &CodeParams, received: &[Gf]) -> Option<Vec<Gf>> {
    let f = params.field();
    let s = syndromes(params, received);
    if s.is_zero() {
        return Some(received.to_vec());
    }
    let ks = berlekamp(f, &s, params.redundancy());
    if ks.lambda.deg().finite() != Some(ks.l_lambda) {
        return None;
    }
    let locs = locator_positions(params, &ks.lambda)?;
    let vals = forney_values(params, &ks.lambda, &ks.omega, &locs)?;
    apply_error_values(params, received, &locs, &vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::DecodeStatus;
    use crate::rscode::{encode, is_codeword, ErrorPattern};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn clean_codeword() {
        let p = CodeParams::standard(4, 9).unwrap();
        let c = encode(&p, &[Gf(1); 9]).unwrap();
        let r = bm_decode(&p, &c);
        assert_eq!(r.status, DecodeStatus::Success);
        assert_eq!(r.candidates[0].codeword, c);
        assert!(r.candidates[0].locations.is_empty());
    }

    #[test]
    fn corrects_up_to_t_and_never_emits_invalid() {
        let p = CodeParams::standard(4, 9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..300 {
            let msg: Vec<Gf> = (0..9).map(|_| Gf(rng.random_range(0..16))).collect();
            let c = encode(&p, &msg).unwrap();
            let w = trial % 6;
            let mut locs: Vec<usize> = (1..=15).collect();
            for i in 0..w {
                let j = rng.random_range(i..15);
                locs.swap(i, j);
            }
            let e = ErrorPattern::new(locs[..w].iter().map(|&i| (i, Gf(rng.random_range(1..16)))).collect());
            let r = bm_decode(&p, &e.apply(&c));
            assert!(r.candidates.iter().all(|c| is_codeword(&p, &c.codeword)));
            if w <= 3 {
                assert_eq!(r.candidates[0].codeword, c);
            }
        }
    }
}
