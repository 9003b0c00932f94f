//! Seeded pseudo-random inputs for the randomized checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 42;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Log-uniform distribution on `[lo, hi]`, `0 < lo <= hi`.
#[derive(Debug, Clone, Copy)]
pub struct LogUniform {
    ln_lo: f64,
    ln_hi: f64,
}

impl LogUniform {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo > 0.0 && lo <= hi, "LogUniform needs 0 < lo <= hi");
        Self {
            ln_lo: lo.ln(),
            ln_hi: hi.ln(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let t: f64 = rng.random();
        (self.ln_lo + t * (self.ln_hi - self.ln_lo)).exp()
    }
}

/// `count` log-spaced points from `lo` to `hi` inclusive.
///
/// Spacing is uniform in `log10`, so decade-aligned grids hit powers of ten.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            let last = (count - 1) as f64;
            (0..count)
                .map(|i| match i {
                    0 => lo,
                    i if i == count - 1 => hi,
                    i => 10f64.powf(a + (b - a) * i as f64 / last),
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_exact() {
        let g = log_grid(1e-8, 1e8, 17);
        assert_eq!(g.len(), 17);
        assert_eq!(g[0], 1e-8);
        assert_eq!(g[16], 1e8);
        assert_eq!(g[8], 1.0);
        assert_eq!(log_grid(1e-2, 1e2, 9)[4], 1.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(log_grid(1.0, 1.0, 1), vec![1.0]);
    }

    #[test]
    fn samples_stay_in_range_and_repeat() {
        let d = LogUniform::new(1e-3, 1e3);
        let a: Vec<f64> = {
            let mut rng = seeded_rng(7);
            (0..100).map(|_| d.sample(&mut rng)).collect()
        };
        let mut rng = seeded_rng(7);
        let b: Vec<f64> = (0..100).map(|_| d.sample(&mut rng)).collect();
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|&x| (1e-3 * (1.0 - 1e-12)..=1e3 * (1.0 + 1e-12)).contains(&x)));
    }
}
