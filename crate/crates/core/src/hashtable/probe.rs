//! Counter-based probe streams.
//!
//! The `j`-th probe of a key is a pure function of `(seed, key, j)`, so an
//! evicted key can resume its stream at any age without stored state.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stafford's variant 13 of the MurmurHash3 finalizer. Bijective on `u64`.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Random-probing sequence `h_1(key), h_2(key), ...` over `m` slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeStream {
    seed: u64,
    m: usize,
}

impl ProbeStream {
    pub fn new(seed: u64, m: usize) -> Self {
        assert!(m >= 1, "a probe stream needs at least one slot");
        ProbeStream { seed, m }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Raw 64-bit hash of `(seed, key, j)`.
    #[inline]
    pub fn hash(&self, key: u64, j: u32) -> u64 {
        let per_key = mix64(self.seed ^ mix64(key.wrapping_add(GOLDEN)));
        mix64(per_key.wrapping_add(u64::from(j).wrapping_mul(GOLDEN)))
    }

    /// Slot of the `j`-th probe (`j >= 1`), reduced by multiply-shift.
    #[inline]
    pub fn slot(&self, key: u64, j: u32) -> usize {
        ((u128::from(self.hash(key, j)) * self.m as u128) >> 64) as usize
    }
}
