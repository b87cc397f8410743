use super::{check_len, frozen_value, ternary_tree, DecodeResult, DecodeStatus, TernaryAlgebra};
use crate::channel::{Ternary, TernaryWord};
use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::gf2::{polar_transform, BitVector};

/// Plain SC decoding; aborts on the first erased information bit.
pub fn sc_decode(spec: &CodeSpec, y: &TernaryWord) -> Result<DecodeResult> {
    check_len(spec, y)?;
    let n = spec.n();
    let mut alg = TernaryAlgebra::default();
    let mut tree = ternary_tree(y);
    let mut u = vec![false; n];
    for i in 0..n {
        let msg = *tree.message(&mut alg, i);
        u[i] = match spec.frozen_support(i) {
            Some(support) => frozen_value(support, &u),
            None => match msg.bit() {
                Some(b) => b,
                None => return Ok(DecodeResult::failed(DecodeStatus::ErasureAbort)),
            },
        };
        tree.commit(&alg, i, u[i]);
    }
    let c = polar_transform(&BitVector::from_bools(u))?;
    Ok(DecodeResult {
        status: DecodeStatus::Success,
        codeword: Some(c),
        stats: None,
    })
}

/// Bit-channel outputs of the genie-aided SC decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenieRecord {
    /// `f_i(y, u_1^{i−1})` computed with the true prefix.
    pub outputs: Vec<Ternary>,
    /// Information indices where the output is not the true bit.
    pub error_indices: Vec<usize>,
}

impl GenieRecord {
    pub fn block_error(&self) -> bool {
        !self.error_indices.is_empty()
    }

    pub fn first_error(&self) -> Option<usize> {
        self.error_indices.first().copied()
    }

    pub fn erased(&self) -> Vec<bool> {
        self.outputs.iter().map(|t| t.is_erased()).collect()
    }
}

/// Runs the SC schedule with the true input bits fed back at every stage.
pub fn sc_genie_decode(spec: &CodeSpec, y: &TernaryWord, true_u: &BitVector) -> Result<GenieRecord> {
    check_len(spec, y)?;
    if !spec.satisfies_constraints(true_u) {
        return Err(Error::InvalidParameter(
            "genie input violates the frozen constraints".into(),
        ));
    }
    let n = spec.n();
    let mut alg = TernaryAlgebra::default();
    let mut tree = ternary_tree(y);
    let mut outputs = Vec::with_capacity(n);
    let mut error_indices = Vec::new();
    for i in 0..n {
        let msg = *tree.message(&mut alg, i);
        let ui = true_u.get(i);
        if spec.is_info(i) && msg.bit() != Some(ui) {
            error_indices.push(i);
        }
        outputs.push(msg);
        tree.commit(&alg, i, ui);
    }
    Ok(GenieRecord {
        outputs,
        error_indices,
    })
}
