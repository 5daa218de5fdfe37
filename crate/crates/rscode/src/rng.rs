//! SplitMix64: the fixed 64-bit generator behind every seeded feature
//! (error injection, trial batches, self-tests).
//!
//! Chosen for reproducibility, not quality: the update and the two xor-shift
//! multiplies below are pinned constants, so identical seeds give identical
//! streams on any platform or language. Range reduction is plain modulo for
//! the same reason.

/// Pinned-constant 64-bit generator (Steele, Lea & Flood's SplitMix64).
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `[0, n)` by modulo; `n` must be nonzero.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    /// Deterministic per-trial seed, independent of evaluation order; trial
    /// batches can run in parallel and still match sequential runs bit-exact.
    pub fn trial_seed(seed: u64, index: u64) -> u64 {
        SplitMix64::new(seed ^ index.wrapping_mul(0xA24B_AED4_963E_E407)).next_u64()
    }
}
