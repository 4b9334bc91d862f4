//! Corpus engineering and evaluation toolkit for legal-domain language
//! model pipelines.
//!
//! The crate covers the data side of building a domain-adapted masked
//! language model, end to end:
//!
//! - [`corpus`] — JSONL corpus ingestion, validation, and per-sub-domain
//!   statistics
//! - [`dedup`] — near-duplicate removal with MinHash signatures and LSH
//!   banding
//! - [`balance`] — deterministic down-/over-sampling to per-group byte
//!   targets
//! - [`tokenizer`] — WordPiece vocabulary training with seed-term
//!   injection, encoding, and fragmentation reporting
//! - [`transfer`] — vocabulary overlap analysis and mean-initialized
//!   embedding weight transfer
//! - [`masking`] — hybrid MLM example generation (whole-word, token-span,
//!   word-span, and keyword masking)
//! - [`cloze`] — fill-mask benchmark scoring with bootstrap confidence
//!   intervals
//! - [`seg`] — sliding-window splitting/merging and BIO segmentation
//!   metrics
//!
//! Every randomized stage takes an explicit seed and produces bit-identical
//! output regardless of thread count.

pub mod balance;
pub mod cloze;
pub mod corpus;
pub mod dedup;
pub mod error;
pub mod masking;
pub mod seg;
pub mod tokenizer;
pub mod transfer;
pub mod util;

pub use error::{Error, Result};

/// Version tag stamped into every JSON report this crate emits.
pub const SCHEMA_VERSION: &str = "1";
