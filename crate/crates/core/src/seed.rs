//! Stable seed derivation.
//!
//! Every random stream in the crate is keyed by a base seed plus a list of
//! labels, so that adding a column or a metric never shifts an unrelated
//! stream. The hash is FNV-1a over the label bytes finished with a
//! SplitMix64 mix, which is stable across platforms and compiler versions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// One component of a seed key.
#[derive(Debug, Clone, Copy)]
pub enum Key<'a> {
    Str(&'a str),
    Int(u64),
}

impl<'a> From<&'a str> for Key<'a> {
    fn from(s: &'a str) -> Self {
        Key::Str(s)
    }
}

impl<'a> From<&'a String> for Key<'a> {
    fn from(s: &'a String) -> Self {
        Key::Str(s.as_str())
    }
}

impl From<u64> for Key<'_> {
    fn from(v: u64) -> Self {
        Key::Int(v)
    }
}

impl From<usize> for Key<'_> {
    fn from(v: usize) -> Self {
        Key::Int(v as u64)
    }
}

pub fn derive_seed(base: u64, keys: &[Key<'_>]) -> u64 {
    let mut h = FNV_OFFSET;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(FNV_PRIME);
        }
    };
    eat(&base.to_le_bytes());
    for key in keys {
        match key {
            Key::Str(s) => {
                eat(&[0x01]);
                eat(&(s.len() as u64).to_le_bytes());
                eat(s.as_bytes());
            }
            Key::Int(v) => {
                eat(&[0x02]);
                eat(&v.to_le_bytes());
            }
        }
    }
    splitmix64(h)
}

/// Convenience wrapper: `seeded_rng(seed, &["noise".into()])`.
pub fn seeded_rng(base: u64, keys: &[Key<'_>]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, keys))
}
