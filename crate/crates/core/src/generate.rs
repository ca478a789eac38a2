//! Seeded instance generators.
//!
//! All randomness comes from SplitMix64 (Steele, Lea and Flood) with the
//! standard constants below, so a given [`GenSpec`] always produces the
//! same instance. Budgets are drawn first, then qualities.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::market::Instance;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX_1: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX_2: u64 = 0x94D0_49BB_1331_11EB;

/// SplitMix64 pseudo-random generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(MIX_1);
        z = (z ^ (z >> 27)).wrapping_mul(MIX_2);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound` (multiply-shift; `bound` must be nonzero).
    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distribution {
    UniformReal,
    UniformInt,
    /// Values from a small grid of equally spaced points.
    TieHeavy,
    /// Everything at `low` except one entry at `high`.
    NearDegenerate,
}

impl Distribution {
    pub const ALL: [Distribution; 4] = [
        Distribution::UniformReal,
        Distribution::UniformInt,
        Distribution::TieHeavy,
        Distribution::NearDegenerate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Distribution::UniformReal => "uniform_real",
            Distribution::UniformInt => "uniform_int",
            Distribution::TieHeavy => "tie_heavy",
            Distribution::NearDegenerate => "near_degenerate",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Distribution::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or(Error::InvalidSpec("unknown distribution"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub distribution: Distribution,
    pub low: f64,
    pub high: f64,
    pub seed: u64,
    /// Grid size for `TieHeavy`; ignored otherwise.
    pub distinct_values: usize,
}

impl GenSpec {
    pub fn new(n: usize, distribution: Distribution, low: f64, high: f64, seed: u64) -> Self {
        GenSpec { n, distribution, low, high, seed, distinct_values: 2 }
    }

    pub fn with_distinct_values(mut self, distinct_values: usize) -> Self {
        self.distinct_values = distinct_values;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1"));
        }
        if !self.low.is_finite() || !self.high.is_finite() {
            return Err(Error::InvalidSpec("bounds must be finite"));
        }
        if self.low <= 0.0 {
            return Err(Error::InvalidSpec("low must be positive"));
        }
        if self.high < self.low {
            return Err(Error::InvalidSpec("high must be at least low"));
        }
        if self.distinct_values == 0 {
            return Err(Error::InvalidSpec("distinct_values must be at least 1"));
        }
        if self.distribution == Distribution::UniformInt && ceil_u64(self.low) > self.high as u64 {
            return Err(Error::InvalidSpec("no integer lies in [low, high]"));
        }
        Ok(())
    }
}

// `f64::ceil` lives in std; positive inputs only.
fn ceil_u64(x: f64) -> u64 {
    let t = x as u64;
    if (t as f64) < x {
        t + 1
    } else {
        t
    }
}

fn draw_side(spec: &GenSpec, rng: &mut SplitMix64) -> Vec<f64> {
    let (low, high) = (spec.low, spec.high);
    match spec.distribution {
        Distribution::UniformReal => (0..spec.n).map(|_| low + (high - low) * rng.next_f64()).collect(),
        Distribution::UniformInt => {
            let lo = ceil_u64(low);
            let span = high as u64 - lo + 1;
            (0..spec.n).map(|_| (lo + rng.below(span)) as f64).collect()
        }
        Distribution::TieHeavy => {
            let d = spec.distinct_values;
            let grid = |i: usize| {
                if d == 1 {
                    low
                } else {
                    low + (high - low) * i as f64 / (d - 1) as f64
                }
            };
            (0..spec.n).map(|_| grid(rng.below(d as u64) as usize)).collect()
        }
        Distribution::NearDegenerate => {
            let odd = rng.below(spec.n as u64) as usize;
            (0..spec.n).map(|i| if i == odd { high } else { low }).collect()
        }
    }
}

/// Draws an instance from `spec`; same spec, same instance.
pub fn generate(spec: &GenSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let budgets = draw_side(spec, &mut rng);
    let qualities = draw_side(spec, &mut rng);
    Instance::new(budgets, qualities)
}
