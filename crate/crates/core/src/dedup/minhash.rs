//! Character shingling and MinHash signatures.
//!
//! Shingles are hashes of character n-grams over normalized text
//! (lowercased, whitespace collapsed). Character shingles are robust to
//! Turkish agglutination; word shingles would under-detect suffix-varied
//! duplicates.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::util::{fnv1a, normalize_lower};

/// Mersenne prime 2^61 - 1; the permutation field for MinHash.
const MERSENNE_P: u64 = (1 << 61) - 1;

/// Set of 64-bit hashes of the distinct character n-grams of one text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShingleSet {
    pub shingles: BTreeSet<u64>,
    pub n: usize,
}

impl ShingleSet {
    pub fn len(&self) -> usize {
        self.shingles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shingles.is_empty()
    }
}

/// Hashes every distinct character n-gram of the normalized text.
/// Text shorter than `n` yields the empty set.
pub fn shingle(text: &str, n: usize) -> ShingleSet {
    assert!(n >= 1, "shingle width must be >= 1");
    let normalized = normalize_lower(text);
    let chars: Vec<char> = normalized.chars().collect();
    let mut shingles = BTreeSet::new();
    if chars.len() >= n {
        let mut buf = String::with_capacity(n * 4);
        for window in chars.windows(n) {
            buf.clear();
            buf.extend(window.iter());
            shingles.insert(fnv1a(buf.as_bytes()));
        }
    }
    ShingleSet { shingles, n }
}

/// Exact Jaccard similarity of two shingle sets. Empty-vs-empty is 1.0 by
/// the same convention their all-max signatures imply.
pub fn exact_jaccard(a: &ShingleSet, b: &ShingleSet) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let inter = a.shingles.intersection(&b.shingles).count();
    let union = a.shingles.len() + b.shingles.len() - inter;
    inter as f64 / union as f64
}

/// Dedup pipeline parameters.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct DedupConfig {
    pub num_perm: usize,
    pub threshold: f64,
    pub shingle_n: usize,
    pub seed: u64,
    /// Audit mode: verify candidates against exact Jaccard over shingle
    /// sets instead of the signature estimate.
    #[serde(default)]
    pub exact_verify: bool,
}

impl Default for DedupConfig {
    fn default() -> Self {
        Self {
            num_perm: 256,
            threshold: 0.90,
            shingle_n: 5,
            seed: 42,
            exact_verify: false,
        }
    }
}

impl DedupConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.threshold > 0.0 && self.threshold <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "threshold must be in (0, 1], got {}",
                self.threshold
            )));
        }
        if self.num_perm < 16 {
            return Err(Error::InvalidConfig(format!(
                "num_perm must be >= 16, got {}",
                self.num_perm
            )));
        }
        if self.shingle_n < 1 {
            return Err(Error::InvalidConfig("shingle_n must be >= 1".into()));
        }
        Ok(())
    }
}

/// The (a, b) coefficients of one affine permutation over Z_p.
#[derive(Debug, Clone)]
pub struct PermutationFamily {
    coeffs: Vec<(u64, u64)>,
    pub num_perm: usize,
    pub seed: u64,
}

impl PermutationFamily {
    /// Derives `num_perm` permutations h_i(x) = (a_i x + b_i) mod p from
    /// the seed.
    pub fn new(num_perm: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = (0..num_perm)
            .map(|_| {
                let a = rng.gen_range(1..MERSENNE_P);
                let b = rng.gen_range(0..MERSENNE_P);
                (a, b)
            })
            .collect();
        Self {
            coeffs,
            num_perm,
            seed,
        }
    }

    #[inline]
    fn permute(&self, i: usize, x: u64) -> u64 {
        let (a, b) = self.coeffs[i];
        let v = (a as u128 * (x % MERSENNE_P) as u128 + b as u128) % MERSENNE_P as u128;
        v as u64
    }
}

/// Vector of permutation minima for one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinHashSignature {
    pub minima: Vec<u64>,
    pub num_perm: usize,
    pub seed: u64,
}

impl MinHashSignature {
    pub fn comparable(&self, other: &Self) -> bool {
        self.num_perm == other.num_perm && self.seed == other.seed
    }
}

/// Computes the signature of a shingle set. The empty set maps to the
/// reserved all-max signature (u64::MAX exceeds the permutation field, so
/// it can never collide with a real minimum).
pub fn minhash_signature(set: &ShingleSet, perms: &PermutationFamily) -> MinHashSignature {
    let mut minima = vec![u64::MAX; perms.num_perm];
    for &shingle in &set.shingles {
        for (i, slot) in minima.iter_mut().enumerate() {
            let v = perms.permute(i, shingle);
            if v < *slot {
                *slot = v;
            }
        }
    }
    MinHashSignature {
        minima,
        num_perm: perms.num_perm,
        seed: perms.seed,
    }
}

/// Fraction of positions where the two signatures agree; the MinHash
/// estimator of Jaccard similarity.
pub fn estimate_jaccard(a: &MinHashSignature, b: &MinHashSignature) -> Result<f64> {
    if !a.comparable(b) {
        return Err(Error::IncomparableSignatures(format!(
            "num_perm {} vs {}, seed {} vs {}",
            a.num_perm, b.num_perm, a.seed, b.seed
        )));
    }
    let agree = a
        .minima
        .iter()
        .zip(&b.minima)
        .filter(|(x, y)| x == y)
        .count();
    Ok(agree as f64 / a.num_perm as f64)
}
