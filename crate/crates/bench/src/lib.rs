//! Fixed workloads shared by the criterion benches in benches/.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ratdec_core::verify::{concentrated_posterior, plant};
use ratdec_core::{CodeParams, Gf, PosteriorMatrix};

pub struct Workload {
    pub params: CodeParams,
    pub received: Vec<Vec<Gf>>,
    pub posteriors: Vec<PosteriorMatrix>,
}

/// `count` RS(15,9) words with `weight` planted errors and posteriors that put
/// `mass` on each true error value.
pub fn rs159_workload(weight: usize, count: usize, mass: f64, seed: u64) -> Workload {
    let params = CodeParams::standard(4, 9).expect("valid code");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut received = Vec::with_capacity(count);
    let mut posteriors = Vec::with_capacity(count);
    for _ in 0..count {
        let inst = plant(&params, weight, &mut rng);
        posteriors.push(concentrated_posterior(&params, &inst.pattern, mass));
        received.push(inst.received);
    }
    Workload { params, received, posteriors }
}
