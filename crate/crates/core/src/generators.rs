//! Seeded instance generators.
//!
//! All sizes are drawn on the grid `{a/q : a integer}`, so sums stay exact
//! with bounded denominators. Randomness is fully specified so fixtures can
//! be regenerated bit-for-bit in any language:
//!
//! * **Generator**: xoshiro256\*\* (256-bit state), seeded from the 64-bit
//!   seed by four successive SplitMix64 outputs.
//! * **Uniform integer in `[0, m)`**: draw `x = next_u64()`; reject while
//!   `x < (2^64 - m) mod m`; return `x mod m`.
//! * **Shuffle**: Fisher-Yates from the back, `for i in (1..len).rev()`
//!   swap `i` with `uniform(i + 1)`.
//! * **Sample `k` distinct from `[0, m)`**: partial Fisher-Yates from the
//!   front over `0..m`, `for i in 0..k` swap `i` with `i + uniform(m - i)`,
//!   keep the first `k` in draw order.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_traits::ToPrimitive;

pub const DEFAULT_SHUFFLE_RETRIES: usize = 1000;

/// The portable random source used by every generator.
#[derive(Debug, Clone)]
pub struct GridRng {
    inner: Xoshiro256StarStar,
}

impl GridRng {
    pub fn new(seed: u64) -> Self {
        GridRng {
            inner: Xoshiro256StarStar::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `[0, bound)`. Panics if `bound == 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    pub fn shuffle<T>(&mut self, values: &mut [T]) {
        for i in (1..values.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            values.swap(i, j);
        }
    }

    /// `count` distinct values from `0..bound`, in draw order.
    pub fn sample_distinct(&mut self, bound: u64, count: usize) -> Vec<u64> {
        let mut pool: Vec<u64> = (0..bound).collect();
        for i in 0..count {
            let j = i + self.below(bound - i as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(count);
        pool
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig<S> {
    pub seed: u64,
    pub n: usize,
    /// Minimum item size `c`, in `(0, 1]`.
    pub min_size: S,
    pub distinct_sizes: Option<usize>,
    /// Denominator `q` of the size grid.
    pub grid: u64,
}

impl<S: Scalar> GeneratorConfig<S> {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.min_size <= S::zero() || self.min_size > S::one() {
            return bad(format!("min_size {} must lie in (0, 1]", self.min_size));
        }
        if self.grid == 0 {
            return bad("grid denominator must be at least 1".into());
        }
        if self.distinct_sizes == Some(0) {
            return bad("distinct_sizes must be at least 1".into());
        }
        if self.min_size.clone() * S::from_integer(grid_i64(self.grid)?) < S::one() {
            return bad(format!(
                "grid 1/{} cannot express min_size {}",
                self.grid, self.min_size
            ));
        }
        Ok(())
    }

    /// Numerators `ceil(c*q) ..= q` of the admissible grid values.
    fn grid_numerators(&self) -> Result<(u64, u64)> {
        self.validate()?;
        let lo = lowest_numerator(&self.min_size, self.grid)?;
        Ok((lo, self.grid))
    }
}

fn grid_i64(q: u64) -> Result<i64> {
    i64::try_from(q).map_err(|_| Error::InvalidConfig(format!("grid {q} too large")))
}

fn lowest_numerator<S: Scalar>(c: &S, q: u64) -> Result<u64> {
    (c.clone() * S::from_integer(grid_i64(q)?))
        .ceil_big()
        .to_u64()
        .ok_or_else(|| Error::InvalidConfig("grid numerator out of range".into()))
}

fn grid_value<S: Scalar>(numer: u64, q: u64) -> S {
    S::from_fraction(numer as i64, q as i64)
}

/// `n` sizes uniform over the grid values in `[c, 1]`.
pub fn gen_uniform<S: Scalar>(cfg: &GeneratorConfig<S>) -> Result<Vec<S>> {
    if cfg.distinct_sizes.is_some() {
        return Err(Error::InvalidConfig(
            "uniform generator does not take distinct_sizes".into(),
        ));
    }
    let (lo, hi) = cfg.grid_numerators()?;
    if lo > hi {
        return Err(Error::InvalidConfig("empty size grid".into()));
    }
    let mut rng = GridRng::new(cfg.seed);
    let span = hi - lo + 1;
    Ok((0..cfg.n)
        .map(|_| grid_value(lo + rng.below(span), cfg.grid))
        .collect())
}

/// Draws `b` distinct grid values in `[c, 1]`, then `n` sizes uniformly
/// among them.
pub fn gen_bounded<S: Scalar>(cfg: &GeneratorConfig<S>) -> Result<Vec<S>> {
    let b = cfg
        .distinct_sizes
        .ok_or_else(|| Error::InvalidConfig("bounded generator needs distinct_sizes".into()))?;
    let (lo, hi) = cfg.grid_numerators()?;
    let span = (hi + 1).saturating_sub(lo);
    if span < b as u64 {
        return Err(Error::InvalidConfig(format!(
            "grid has {span} values in [c, 1], fewer than {b} distinct sizes"
        )));
    }
    let mut rng = GridRng::new(cfg.seed);
    let values: Vec<u64> = rng
        .sample_distinct(span, b)
        .into_iter()
        .map(|off| lo + off)
        .collect();
    Ok((0..cfg.n)
        .map(|_| grid_value(values[rng.below(b as u64) as usize], cfg.grid))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// Small items of one batch together with their hidden two-way split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSmalls<S> {
    pub smalls: Vec<S>,
    pub sides: Vec<Side>,
}

/// True if some non-empty prefix of `items` sums to exactly 1.
pub fn has_unit_prefix<S: Scalar>(items: &[S]) -> bool {
    let one = S::one();
    let mut acc = S::zero();
    items.iter().any(|p| {
        acc = acc.clone() + p.clone();
        acc == one
    })
}

/// Uniform composition of `total` into `parts` integers, each `>= floor`
/// (stars and bars over the surplus).
fn composition(rng: &mut GridRng, total: u64, parts: usize, floor: u64) -> Vec<u64> {
    let surplus = total - floor * parts as u64;
    let slots = surplus + parts as u64 - 1;
    let mut bars = rng.sample_distinct(slots, parts - 1);
    bars.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev: i128 = -1;
    for &bar in bars.iter().chain(std::iter::once(&slots)) {
        out.push(floor + (bar as i128 - prev - 1) as u64);
        prev = bar as i128;
    }
    out
}

pub fn gen_partition_smalls<S: Scalar>(
    seed: u64,
    parts_per_side: usize,
    min_size: &S,
    grid: u64,
) -> Result<PartitionSmalls<S>> {
    gen_partition_smalls_with_retries(seed, parts_per_side, min_size, grid, DEFAULT_SHUFFLE_RETRIES)
}

/// Two random compositions of 1 (sides A and B) into `parts_per_side` grid
/// parts each at least `min_size`, interleaved by a shuffle that is redrawn
/// until no prefix sums to exactly 1.
pub fn gen_partition_smalls_with_retries<S: Scalar>(
    seed: u64,
    parts_per_side: usize,
    min_size: &S,
    grid: u64,
    max_retries: usize,
) -> Result<PartitionSmalls<S>> {
    if parts_per_side < 2 {
        return Err(Error::InvalidConfig("parts_per_side must be at least 2".into()));
    }
    let cfg = GeneratorConfig {
        seed,
        n: 0,
        min_size: min_size.clone(),
        distinct_sizes: None,
        grid,
    };
    cfg.validate()?;
    let lo = lowest_numerator(min_size, grid)?;
    if lo.checked_mul(parts_per_side as u64).is_none_or(|need| need > grid) {
        return Err(Error::InvalidConfig(format!(
            "{parts_per_side} parts of at least {min_size} do not fit in 1 on grid 1/{grid}"
        )));
    }

    let mut rng = GridRng::new(seed);
    let side_a = composition(&mut rng, grid, parts_per_side, lo);
    let side_b = composition(&mut rng, grid, parts_per_side, lo);
    let mut tagged: Vec<(u64, Side)> = side_a
        .into_iter()
        .map(|a| (a, Side::A))
        .chain(side_b.into_iter().map(|b| (b, Side::B)))
        .collect();

    for _ in 0..max_retries {
        rng.shuffle(&mut tagged);
        let mut acc = 0u64;
        let unit_prefix = tagged.iter().any(|(a, _)| {
            acc += a;
            acc == grid
        });
        if !unit_prefix {
            return Ok(PartitionSmalls {
                smalls: tagged.iter().map(|&(a, _)| grid_value(a, grid)).collect(),
                sides: tagged.iter().map(|&(_, s)| s).collect(),
            });
        }
    }
    Err(Error::RetriesExhausted {
        retries: max_retries,
    })
}
