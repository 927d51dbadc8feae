//! Monte Carlo ground truth for the closed forms.
//!
//! Samples are generated in fixed-size chunks. Chunk `i` draws from
//! ChaCha8 stream `i` of the master seed and chunk accumulators are merged
//! in index order, so results are bit-identical for a given
//! `(seed, n_samples, config)` whatever the execution mode or thread count.

mod frame;
#[cfg(test)]
mod oracle_tests;
mod stats;

pub use frame::{sample_channel, sir_mmse, ChannelDraw, MAX_GRAM_CONDITION};
pub use stats::{Accumulator, McEstimate};

use std::f64::consts::LN_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::secrecy::{capacity_eve, CsiError, PowerSplit, RateReport, RateSource, SystemConfig};

/// Draws per chunk (and per RNG substream).
pub const CHUNK: usize = 4096;
/// Smallest sample count the estimators accept.
pub const MIN_SAMPLES: usize = 1000;
// Give up if one chunk rejects this many Gram matrices in a row.
const MAX_CONSECUTIVE_REJECTS: u32 = 1000;

/// Generator for chunk `index` of the master `seed`.
pub fn chunk_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn chunk_bounds(n_samples: usize) -> impl Fn(usize) -> usize {
    move |i| CHUNK.min(n_samples - i * CHUNK)
}

/// Evaluates `f` on `n_samples` channel draws, returned in draw order.
pub fn sample_map<T, F>(
    cfg: &SystemConfig,
    n_samples: usize,
    seed: u64,
    exec: Execution,
    f: F,
) -> Vec<T>
where
    T: Send,
    F: Fn(&ChannelDraw) -> T + Sync + Send,
{
    let len = chunk_bounds(n_samples);
    exec.map_indexed(n_samples.div_ceil(CHUNK), |i| {
        let mut rng = chunk_rng(seed, i);
        (0..len(i))
            .map(|_| f(&sample_channel(cfg, &mut rng)))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Monte Carlo C₁ and C₂ with the number of resampled draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McCapacities {
    pub c1: McEstimate,
    pub c2: McEstimate,
    /// Draws discarded for an ill-conditioned eavesdropper Gram matrix.
    pub rejected: u64,
}

impl McCapacities {
    /// Secrecy rate from the two estimates. h and G are independent, so the
    /// standard errors add in quadrature.
    pub fn rate_report(&self) -> RateReport {
        let (c1, c2) = (self.c1.mean, self.c2.mean);
        RateReport {
            c1,
            c2,
            c: (c1 - c2).max(0.0),
            source: RateSource::MonteCarlo,
            stderr: Some(self.c1.stderr.hypot(self.c2.stderr)),
        }
    }
}

fn check_samples(n_samples: usize) -> Result<()> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::InvalidConfig(format!(
            "n_samples = {n_samples} must be at least {MIN_SAMPLES}"
        )));
    }
    Ok(())
}

/// Sample means of log₂(1 + φP‖h‖²) and log₂(1 + ((Nₐ−1)/(z−1))X).
pub fn mc_capacities(
    cfg: &SystemConfig,
    p: f64,
    split: &PowerSplit,
    n_samples: usize,
    seed: u64,
) -> Result<McCapacities> {
    mc_capacities_with(cfg, p, split, n_samples, seed, Execution::default())
}

pub fn mc_capacities_with(
    cfg: &SystemConfig,
    p: f64,
    split: &PowerSplit,
    n_samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<McCapacities> {
    check_samples(n_samples)?;
    let signal = split.signal_power(p);
    let sir_gain = (cfg.na() - 1) as f64 / split.z_minus_one();
    let len = chunk_bounds(n_samples);
    let chunks = exec.map_indexed(n_samples.div_ceil(CHUNK), |i| {
        let mut rng = chunk_rng(seed, i);
        let (mut c1, mut c2) = (Accumulator::default(), Accumulator::default());
        let mut rejected = 0u64;
        for _ in 0..len(i) {
            let mut streak = 0;
            let (draw, x) = loop {
                let draw = sample_channel(cfg, &mut rng);
                match sir_mmse(&draw) {
                    Ok(x) => break (draw, x),
                    Err(e) => {
                        rejected += 1;
                        streak += 1;
                        if streak >= MAX_CONSECUTIVE_REJECTS {
                            return Err(e);
                        }
                    }
                }
            };
            c1.push((signal * draw.bob_gain()).ln_1p() / LN_2);
            c2.push((sir_gain * x).ln_1p() / LN_2);
        }
        Ok((c1, c2, rejected))
    });
    let (mut c1, mut c2, mut rejected) = (Accumulator::default(), Accumulator::default(), 0);
    for chunk in chunks {
        let (a, b, r) = chunk?;
        c1.merge(&a);
        c2.merge(&b);
        rejected += r;
    }
    Ok(McCapacities {
        c1: McEstimate::from_accumulator(&c1, seed),
        c2: McEstimate::from_accumulator(&c2, seed),
        rejected,
    })
}

/// Secrecy-rate bound under channel-estimation error: Monte Carlo mean of
/// log₂(1 + φP‖ĥ‖²/(σ̃²P + 1)) with ĥ of per-entry variance 1 − σ̃², minus
/// the closed-form C₂, clamped at zero. The standard error is that of the
/// Bob term.
///
/// ĥ is a scaled standard draw, so runs sharing a seed are paired across σ̃².
pub fn mc_secrecy_rate_imperfect(
    cfg: &SystemConfig,
    p: f64,
    split: &PowerSplit,
    err: &CsiError,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    mc_secrecy_rate_imperfect_with(cfg, p, split, err, n_samples, seed, Execution::default())
}

pub fn mc_secrecy_rate_imperfect_with(
    cfg: &SystemConfig,
    p: f64,
    split: &PowerSplit,
    err: &CsiError,
    n_samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<McEstimate> {
    check_samples(n_samples)?;
    let gain = split.signal_power(p) * err.estimate_variance() / (err.sigma_tilde2() * p + 1.0);
    let len = chunk_bounds(n_samples);
    let chunks = exec.map_indexed(n_samples.div_ceil(CHUNK), |i| {
        let mut rng = chunk_rng(seed, i);
        let mut acc = Accumulator::default();
        for _ in 0..len(i) {
            let draw = sample_channel(cfg, &mut rng);
            acc.push((gain * draw.bob_gain()).ln_1p() / LN_2);
        }
        acc
    });
    let mut acc = Accumulator::default();
    chunks.iter().for_each(|c| acc.merge(c));
    let mut est = McEstimate::from_accumulator(&acc, seed);
    est.mean = (est.mean - capacity_eve(cfg, split)).max(0.0);
    Ok(est)
}
