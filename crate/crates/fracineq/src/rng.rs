//! Deterministic pseudo-random stream for the fuzz harness.
//!
//! SplitMix64: the state advances by the Weyl constant 0x9E3779B97F4A7C15
//! and each output is the avalanche hash
//!
//! ```text
//! z  = state
//! z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
//! z ^= z >> 27;  z *= 0x94D049BB133111EB
//! z ^= z >> 31
//! ```
//!
//! The algorithm is pinned here (rather than delegating to a platform RNG)
//! so fuzz corpora replay bit-identically across implementations. Floats
//! are drawn as `(z >> 11) * 2^-53`, uniform on [0, 1).

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform on [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform on the half-open interval (0, 1], for parameters like m that
    /// must exclude zero.
    pub fn unit_right_closed(&mut self) -> f64 {
        1.0 - self.next_f64()
    }
}
