//! Counter-based 64-bit generator.
//!
//! The `i`-th output of a stream is a pure function of `(key, i)`: it is the
//! SplitMix64 finaliser applied to `key + (i + 1) * GAMMA`. Any language can
//! reproduce a stream from the key alone, and a batch of samples can be
//! evaluated in any order or on any number of workers.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the key of sample `index` of a labelled stream under `seed`.
///
/// `label` separates the streams of different consumers (an inequality id, a
/// tensor kind) so that they never share draws.
pub fn stream_key(seed: u64, label: &str, index: u64) -> u64 {
    // FNV-1a over the label keeps the derivation portable.
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    mix64(mix64(seed ^ mix64(h)).wrapping_add(index.wrapping_mul(GAMMA)))
}

#[derive(Clone, Debug)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(key: u64) -> Self {
        CounterRng { key, counter: 0 }
    }

    pub fn for_sample(seed: u64, label: &str, index: u64) -> Self {
        Self::new(stream_key(seed, label, index))
    }

    /// Random access into the stream.
    #[inline]
    pub fn at(key: u64, i: u64) -> u64 {
        mix64(key.wrapping_add(i.wrapping_add(1).wrapping_mul(GAMMA)))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let v = Self::at(self.key, self.counter);
        self.counter += 1;
        v
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    #[inline]
    pub fn symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        // Modulo bias is below 2^-50 for the small bounds used here.
        self.next_u64() % bound
    }
}
