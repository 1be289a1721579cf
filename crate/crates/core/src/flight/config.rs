use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::MAX_ORDER;

/// A random flight of fixed step lengths in `D = 2m + 3` dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlightConfig {
    m: usize,
    lengths: Vec<f64>,
}

impl FlightConfig {
    pub fn new(m: usize, lengths: Vec<f64>) -> Result<Self> {
        if lengths.is_empty() {
            return domain("a flight needs at least one step");
        }
        if let Some(r) = lengths.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
            return domain(format!("step lengths must be positive and finite, got {r}"));
        }
        if m + 1 > MAX_ORDER {
            return domain(format!("order m = {m} is above the supported range"));
        }
        Ok(Self { m, lengths })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        2 * self.m + 3
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    /// Number of steps.
    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    /// `S_n`, the sum of all step lengths.
    pub fn total_length(&self) -> f64 {
        self.lengths.iter().sum()
    }

    pub fn support(&self) -> SupportInterval {
        support_interval(self)
    }
}

/// Range of end-to-end distances a flight can reach.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportInterval {
    pub r_min: f64,
    pub r_max: f64,
}

impl SupportInterval {
    /// Strictly inside, where the polygon closes non-degenerately.
    pub fn contains(&self, r: f64) -> bool {
        r > self.r_min && r < self.r_max
    }
}

/// `[max(0, 2 max_i r_i - S_n), S_n]`: a polygon with sides `r, r_1, ..., r_n`
/// closes iff no side exceeds the sum of the others.
pub fn support_interval(cfg: &FlightConfig) -> SupportInterval {
    closure_range(cfg.lengths())
}

pub(crate) fn closure_range(sides: &[f64]) -> SupportInterval {
    let total: f64 = sides.iter().sum();
    let longest = sides.iter().copied().fold(0.0, f64::max);
    SupportInterval {
        r_min: (2.0 * longest - total).max(0.0),
        r_max: total,
    }
}

/// Every `|+-a_1 +- a_2 +- ...|`: the places where flight integrals over
/// these sides can have kinks or jumps.
pub(crate) fn signed_sums(sides: &[f64]) -> Vec<f64> {
    let mut sums = vec![0.0];
    for &a in sides {
        sums = sums.iter().flat_map(|&s| [s + a, s - a]).collect();
    }
    let mut out: Vec<f64> = sums.into_iter().map(f64::abs).collect();
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs().max(1.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_min(lengths: &[f64]) -> f64 {
        // minimise |sum of vectors| over a grid of planar angles (the minimum
        // over 3-D directions is attained in a plane)
        let steps: usize = if lengths.len() <= 3 { 720 } else { 90 };
        let mut best = f64::INFINITY;
        let n = lengths.len();
        let total = steps.pow((n - 1) as u32);
        for idx in 0..total {
            let (mut x, mut y) = (lengths[0], 0.0);
            let mut k = idx;
            for &r in &lengths[1..] {
                let th = (k % steps) as f64 / steps as f64 * std::f64::consts::TAU;
                k /= steps;
                x += r * th.cos();
                y += r * th.sin();
            }
            best = best.min((x * x + y * y).sqrt());
        }
        best
    }

    #[test]
    fn examples() {
        let s = support_interval(&FlightConfig::new(0, vec![1.0, 0.3]).unwrap());
        assert_eq!((s.r_min, s.r_max), (0.7, 1.3));
        let s = support_interval(&FlightConfig::new(0, vec![1.0, 1.0, 1.0]).unwrap());
        assert_eq!((s.r_min, s.r_max), (0.0, 3.0));
        let s = support_interval(&FlightConfig::new(0, vec![3.0, 1.0, 1.0]).unwrap());
        assert_eq!((s.r_min, s.r_max), (1.0, 5.0));
        let s = support_interval(&FlightConfig::new(1, vec![1.4]).unwrap());
        assert_eq!((s.r_min, s.r_max), (1.4, 1.4));
    }

    #[test]
    fn lower_bound_matches_brute_force() {
        for lengths in [
            vec![3.0, 1.0, 1.0],
            vec![0.5, 2.0],
            vec![1.0, 0.7, 0.4, 0.2],
            vec![2.5, 0.6, 0.9, 0.5],
            vec![1.0, 1.0, 1.5],
        ] {
            let cfg = FlightConfig::new(0, lengths.clone()).unwrap();
            let brute = brute_force_min(&lengths);
            assert!((cfg.support().r_min - brute).abs() < 2e-2, "{lengths:?}: {brute}");
        }
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(FlightConfig::new(0, vec![]).is_err());
        assert!(FlightConfig::new(0, vec![1.0, 0.0]).is_err());
        assert!(FlightConfig::new(0, vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn signed_sums_of_three() {
        assert_eq!(signed_sums(&[1.0, 2.0, 4.0]), vec![1.0, 3.0, 5.0, 7.0]);
    }
}
