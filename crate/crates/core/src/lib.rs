//! Polar-form linear codes on the binary erasure channel.
//!
//! Any binary linear code of length `2^m` can be written as a polar code
//! with dynamic frozen bits. On that representation this crate provides SC,
//! genie-aided SC, SC list, and SC inactivation decoding (the last one is
//! an exact MAP decoder), density evolution and the expected number of
//! inactivations, benchmark bounds, and a reproducible Monte-Carlo harness.
//!
//! Indices are 0-based throughout the API; the text spec format is 1-based.

pub mod analysis;
pub mod channel;
pub mod code;
pub mod construction;
pub mod decoders;
pub mod error;
pub mod field;
pub mod gf2;
pub mod sim;
pub mod textio;

pub use error::{Error, Result};
