//! Simulated flights in `D = 2m + 3` dimensions.
//!
//! Samples are drawn in fixed-size chunks. Chunk `c` uses a ChaCha8 stream
//! seeded with `seed` and stream id `c`, so the output depends only on
//! `(seed, count)`, never on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::FlightConfig;
use crate::error::{domain, Result};

const CHUNK: usize = 1 << 15;

/// Equal-width histogram of end-to-end distances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McHistogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub samples: u64,
    pub seed: u64,
}

impl McHistogram {
    /// Counts over equal-width bins spanning `[lo, hi]`; samples a hair
    /// outside land in the end bins.
    pub fn from_samples(samples: &[f64], lo: f64, hi: f64, bins: usize, seed: u64) -> Result<Self> {
        if bins == 0 {
            return domain("need at least one bin");
        }
        if !(hi > lo) {
            return domain(format!("empty histogram range [{lo}, {hi}]"));
        }
        let width = (hi - lo) / bins as f64;
        let bin_edges = (0..=bins).map(|i| lo + width * i as f64).collect();
        let mut counts = vec![0u64; bins];
        for &x in samples {
            let i = ((x - lo) / width).floor().clamp(0.0, (bins - 1) as f64) as usize;
            counts[i] += 1;
        }
        Ok(Self {
            bin_edges,
            counts,
            samples: samples.len() as u64,
            seed,
        })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    /// `count / (samples * width)` per bin.
    pub fn density(&self) -> Vec<f64> {
        self.counts
            .iter()
            .zip(self.bin_edges.windows(2))
            .map(|(&c, e)| c as f64 / (self.samples as f64 * (e[1] - e[0])))
            .collect()
    }
}

/// One end-to-end distance per simulated flight, in a reproducible order.
pub fn sample_distances(cfg: &FlightConfig, count: usize, seed: u64) -> Result<Vec<f64>> {
    if count == 0 {
        return domain("sample count must be >= 1");
    }
    let d = cfg.dimension();
    let chunks = count.div_ceil(CHUNK);
    let parts: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(count - c * CHUNK);
            let mut pos = vec![0.0; d];
            let mut dir = vec![0.0; d];
            (0..len)
                .map(|_| {
                    pos.iter_mut().for_each(|p| *p = 0.0);
                    for &r in cfg.lengths() {
                        random_direction(&mut rng, &mut dir);
                        for (p, u) in pos.iter_mut().zip(&dir) {
                            *p += r * u;
                        }
                    }
                    pos.iter().map(|p| p * p).sum::<f64>().sqrt()
                })
                .collect()
        })
        .collect();
    Ok(parts.concat())
}

fn random_direction<R: Rng>(rng: &mut R, out: &mut [f64]) {
    loop {
        let mut norm2 = 0.0;
        for u in out.iter_mut() {
            *u = rng.sample(StandardNormal);
            norm2 += *u * *u;
        }
        if norm2 > 0.0 {
            let inv = norm2.sqrt().recip();
            out.iter_mut().for_each(|u| *u *= inv);
            return;
        }
    }
}

/// Histogram of `count` simulated flights over `bins` bins spanning the
/// support interval.
pub fn sample_flight(cfg: &FlightConfig, count: usize, seed: u64, bins: usize) -> Result<McHistogram> {
    let samples = sample_distances(cfg, count, seed)?;
    histogram_for(cfg, &samples, seed, bins)
}

pub(crate) fn histogram_for(cfg: &FlightConfig, samples: &[f64], seed: u64, bins: usize) -> Result<McHistogram> {
    let s = cfg.support();
    let (lo, hi) = if s.r_max > s.r_min {
        (s.r_min, s.r_max)
    } else {
        (s.r_min - 0.5, s.r_max + 0.5)
    };
    McHistogram::from_samples(samples, lo, hi, bins, seed)
}

/// Kolmogorov–Smirnov distance between the empirical law of `samples` and `cdf`.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}
