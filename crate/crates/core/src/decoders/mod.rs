//! SC-family decoders for the BEC and two MAP reference decoders.
//!
//! | decoder | behaviour on an erased information bit |
//! |---|---|
//! | [`sc_decode`] | abort |
//! | [`sc_genie_decode`] | record the erasure, continue with the true bit |
//! | [`scl_decode`] | split every path |
//! | [`sc_inactivation_decode`] | introduce a dummy variable |
//!
//! [`map_oracle`] and [`brute_force_map`] solve the same problem by linear
//! algebra and by enumeration.

mod expr;
mod inactivation;
mod map;
mod sc;
mod scl;
mod tree;

pub use expr::{AffineExpr, EquationAccumulator, Insert};
pub use inactivation::{sc_inactivation_decode, Budget, InactivationOptions};
pub use map::{brute_force_map, map_oracle, MapDecoder};
pub use sc::{sc_decode, sc_genie_decode, GenieRecord};
pub use scl::{scl_decode, scl_decode_traced};

use crate::channel::{Ternary, TernaryWord};
use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::gf2::{reverse_bits, BitVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecodeStatus {
    Success,
    /// Plain SC met an erased information bit.
    ErasureAbort,
    /// More than one codeword is consistent with what was decoded.
    Ambiguous,
    /// The list size or inactivation budget was exceeded.
    ListOverflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InactivationStats {
    /// `G`, the total number of inactivations.
    pub total_inactivations: usize,
    /// `G_i`: unresolved inactivations after input `i` was decoded. Truncated
    /// if decoding stopped early.
    pub unresolved_after: Vec<usize>,
    /// Equations that raised the rank of the store.
    pub consolidations: usize,
    /// Equations produced by a variable node whose two inputs were known but
    /// syntactically different expressions.
    pub variable_node_equations: usize,
    /// Whether the bit-channel message for input `i` was an erasure.
    pub erased: Vec<bool>,
    /// Rank of the equation store when decoding ended.
    pub final_rank: usize,
}

impl InactivationStats {
    /// Information bits that were inactivated.
    pub fn inactivated(&self, spec: &CodeSpec) -> Vec<bool> {
        self.erased
            .iter()
            .enumerate()
            .map(|(i, &e)| e && spec.is_info(i))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    /// Present exactly when `status` is [`DecodeStatus::Success`].
    pub codeword: Option<BitVector>,
    pub stats: Option<InactivationStats>,
}

impl DecodeResult {
    pub(crate) fn failed(status: DecodeStatus) -> Self {
        DecodeResult {
            status,
            codeword: None,
            stats: None,
        }
    }

    pub fn is_success(&self) -> bool {
        self.status == DecodeStatus::Success
    }
}

pub(crate) fn check_len(spec: &CodeSpec, y: &TernaryWord) -> Result<()> {
    if y.len() != spec.n() {
        return Err(Error::DimensionMismatch {
            expected: spec.n(),
            got: y.len(),
        });
    }
    Ok(())
}

/// Received word in Kronecker order (bit-reversal undone).
pub(crate) fn kronecker_order(y: &TernaryWord) -> Vec<Ternary> {
    let n = y.len();
    let m = n.trailing_zeros();
    (0..n).map(|j| y.0[reverse_bits(j, m)]).collect()
}

/// Ternary message passing; a variable node with two conflicting known
/// inputs sets `conflict`, which only a wrong hypothesis can cause.
#[derive(Debug, Clone, Default)]
pub(crate) struct TernaryAlgebra {
    pub(crate) conflict: bool,
}

impl tree::Algebra for TernaryAlgebra {
    type Msg = Ternary;
    type Bit = bool;

    #[inline]
    fn check(&mut self, a: &Ternary, b: &Ternary) -> Ternary {
        match (a.bit(), b.bit()) {
            (Some(x), Some(y)) => Ternary::known(x ^ y),
            _ => Ternary::Erased,
        }
    }

    #[inline]
    fn var(&mut self, via: Ternary, direct: &Ternary) -> Ternary {
        match (via.bit(), direct.bit()) {
            (Some(x), Some(y)) => {
                if x != y {
                    self.conflict = true;
                }
                *direct
            }
            (Some(_), None) => via,
            _ => *direct,
        }
    }

    #[inline]
    fn add_bit(&self, m: &Ternary, b: &bool) -> Ternary {
        match m.bit() {
            Some(x) => Ternary::known(x ^ b),
            None => Ternary::Erased,
        }
    }

    #[inline]
    fn add_bits(&self, a: &bool, b: &bool) -> bool {
        a ^ b
    }
}

pub(crate) type TernaryTree = tree::ScTree<Ternary, bool>;

pub(crate) fn ternary_tree(y: &TernaryWord) -> TernaryTree {
    tree::ScTree::new(kronecker_order(y), Ternary::Erased, false)
}

/// XOR of the current decisions over a frozen bit's support.
#[inline]
pub(crate) fn frozen_value(support: &[usize], u: &[bool]) -> bool {
    support.iter().fold(false, |acc, &s| acc ^ u[s])
}
