//! Shared helpers: stable hashing, seeded RNG derivation, text
//! normalization.
//!
//! Everything here must stay byte-stable across releases — dedup reports,
//! balance decisions, and masked datasets are all keyed off these hashes.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unicode_normalization::UnicodeNormalization;

/// FNV-1a over raw bytes. Stable, dependency-free, good enough for
/// shingle identity; never use std's `DefaultHasher` here (its output is
/// not guaranteed across releases).
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// splitmix64 finalizer; breaks up FNV's weak avalanche on short inputs.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Stable seeded hash of a byte string, uniform on `[0, 2^64)`.
pub fn seeded_hash(bytes: &[u8], seed: u64) -> u64 {
    splitmix64(fnv1a(bytes) ^ splitmix64(seed))
}

/// Maps a seeded hash to a uniform fraction in `[0, 1)`.
pub fn hash_to_unit(h: u64) -> f64 {
    (h >> 11) as f64 / (1u64 << 53) as f64
}

/// Derives an independent RNG stream for item `ordinal` under `seed`.
/// Parallel generation with per-item streams must equal serial output.
pub fn stream_rng(seed: u64, ordinal: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&ordinal.to_le_bytes());
    key[16..24].copy_from_slice(&splitmix64(seed ^ ordinal).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// NFC normalization plus whitespace collapse. Case is preserved: Turkish
/// İ/ı distinctions are semantic and must survive normalization.
pub fn normalize(text: &str) -> String {
    let nfc: String = text.nfc().collect();
    let mut out = String::with_capacity(nfc.len());
    let mut first = true;
    for word in nfc.split_whitespace() {
        if !first {
            out.push(' ');
        }
        out.push_str(word);
        first = false;
    }
    out
}

/// Lowercased variant used by the dedup shingler, where case differences
/// should not defeat near-duplicate detection.
pub fn normalize_lower(text: &str) -> String {
    normalize(&text.to_lowercase())
}
