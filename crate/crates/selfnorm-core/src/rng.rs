//! Deterministic pseudo-random numbers for internal spot checks and
//! seeded sampling. SplitMix64: tiny, `no_std`, and reproducible across
//! platforms, which is all the crate needs (nothing here is cryptographic).

/// SplitMix64 generator (Steele, Lea, Flood 2014 mixing constants).
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (`bound > 0`), by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// Derives a stream seed from a master seed and a textual label, so that
/// independent sampling tasks get decorrelated but reproducible streams.
pub fn derive_seed(master: u64, label: &str) -> u64 {
    let mut h = master ^ 0x51ab_c0de_0000_0001;
    for &b in label.as_bytes() {
        h = (h ^ b as u64).wrapping_mul(0x100_0000_01b3);
        h ^= h >> 29;
    }
    h
}
