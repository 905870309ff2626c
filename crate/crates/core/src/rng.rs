//! Seeded SplitMix64 generator.
//!
//! Output for a given seed is part of the on-disk contract (generated
//! instances, projection directions and sampled apexes are all reproducible
//! from a seed), so the algorithm is fixed here rather than borrowed from a
//! crate whose sampling routines may change between releases.
//!
//! Stepping: `state += 0x9E3779B97F4A7C15`, then the output is `state`
//! passed through the SplitMix64 finalizer (xor-shift 30, multiply
//! `0xBF58476D1CE4E5B9`, xor-shift 27, multiply `0x94D049BB133111EB`,
//! xor-shift 31). Bounded integers use rejection on the top of the range so
//! every value is exactly equiprobable.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent stream for sub-task `index` of a seeded job.
    pub fn derive(seed: u64, index: u64) -> Self {
        let mut base = SplitMix64::new(seed ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03));
        SplitMix64::new(base.next_u64())
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Uniform in the closed range `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        let span = (hi as i128 - lo as i128 + 1) as u128;
        if span > u64::MAX as u128 {
            return self.next_u64() as i64;
        }
        (lo as i128 + self.below(span as u64) as i128) as i64
    }
}
