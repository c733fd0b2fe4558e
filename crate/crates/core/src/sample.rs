//! Seeded random factored integers for sweeps and property checks.

use rand::seq::index::sample;
use rand::Rng;

use crate::arith::FactoredInteger;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleConfig {
    pub min_r: usize,
    pub max_r: usize,
    pub max_prime: u64,
    pub max_exponent: u32,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            min_r: 2,
            max_r: 7,
            max_prime: 200,
            max_exponent: 5,
        }
    }
}

/// Draws `n = p_1^{n_1} ... p_r^{n_r}` with `r` uniform in the configured range.
///
/// Half of the draws use a run of consecutive primes starting near the
/// bottom of the list, where the interesting case splits live. Exponents
/// are `1` about half the time and otherwise uniform.
pub fn random_factored<R: Rng + ?Sized>(rng: &mut R, cfg: &SampleConfig) -> Result<FactoredInteger> {
    let primes: Vec<u64> = num_prime::nt_funcs::primes(cfg.max_prime + 1)
        .into_iter()
        .filter(|&p| p <= cfg.max_prime)
        .collect();
    if cfg.min_r == 0 || cfg.min_r > cfg.max_r || cfg.max_r > primes.len() || cfg.max_exponent == 0 {
        return Err(Error::Domain(format!("unusable sample configuration {cfg:?}")));
    }
    let r = rng.gen_range(cfg.min_r..=cfg.max_r);
    let chosen: Vec<u64> = if rng.gen_bool(0.5) {
        let start = rng.gen_range(0..=(primes.len() - r).min(3));
        primes[start..start + r].to_vec()
    } else {
        sample(rng, primes.len(), r).into_iter().map(|i| primes[i]).collect()
    };
    let pairs: Vec<(u64, u32)> = chosen
        .into_iter()
        .map(|p| {
            let e = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..=cfg.max_exponent) };
            (p, e)
        })
        .collect();
    FactoredInteger::from_u64_pairs(&pairs)
}
