use super::{
    check_len, frozen_value, ternary_tree, DecodeResult, DecodeStatus, TernaryAlgebra, TernaryTree,
};
use crate::channel::TernaryWord;
use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::gf2::{polar_transform, BitVector};

#[derive(Clone)]
struct Path {
    tree: TernaryTree,
    alg: TernaryAlgebra,
    u: Vec<bool>,
}

/// SC list decoding on the BEC with list cap `list_size`.
pub fn scl_decode(spec: &CodeSpec, y: &TernaryWord, list_size: usize) -> Result<DecodeResult> {
    scl_decode_traced(spec, y, list_size).map(|(r, _)| r)
}

/// Like [`scl_decode`], also returning the number of active paths after
/// each input index.
///
/// A path is dropped when one of its frozen bits decodes to a known value
/// that contradicts the constraint, or when one of its variable nodes
/// receives two conflicting known values.
pub fn scl_decode_traced(
    spec: &CodeSpec,
    y: &TernaryWord,
    list_size: usize,
) -> Result<(DecodeResult, Vec<usize>)> {
    check_len(spec, y)?;
    if list_size == 0 {
        return Err(Error::InvalidParameter("list size must be at least 1".into()));
    }
    let n = spec.n();
    let mut paths = vec![Path {
        tree: ternary_tree(y),
        alg: TernaryAlgebra::default(),
        u: vec![false; n],
    }];
    let mut trace = Vec::with_capacity(n);
    let mut msgs = Vec::new();
    for i in 0..n {
        msgs.clear();
        for p in paths.iter_mut() {
            msgs.push(*p.tree.message(&mut p.alg, i));
        }
        let mut next = Vec::with_capacity(paths.len() * 2);
        match spec.frozen_support(i) {
            Some(support) => {
                for (mut p, msg) in paths.drain(..).zip(msgs.iter()) {
                    if p.alg.conflict {
                        continue;
                    }
                    let expected = frozen_value(support, &p.u);
                    if msg.bit().is_some_and(|b| b != expected) {
                        continue;
                    }
                    p.u[i] = expected;
                    p.tree.commit(&p.alg, i, expected);
                    next.push(p);
                }
            }
            None => {
                let survivors: Vec<(Path, _)> = paths
                    .drain(..)
                    .zip(msgs.iter().copied())
                    .filter(|(p, _)| !p.alg.conflict)
                    .collect();
                let splits = survivors.iter().filter(|(_, m)| m.is_erased()).count();
                if survivors.len() + splits > list_size {
                    trace.push(survivors.len() + splits);
                    return Ok((DecodeResult::failed(DecodeStatus::ListOverflow), trace));
                }
                for (mut p, msg) in survivors {
                    match msg.bit() {
                        Some(b) => {
                            p.u[i] = b;
                            p.tree.commit(&p.alg, i, b);
                            next.push(p);
                        }
                        None => {
                            let mut q = p.clone();
                            p.tree.commit(&p.alg, i, false);
                            next.push(p);
                            q.u[i] = true;
                            q.tree.commit(&q.alg, i, true);
                            next.push(q);
                        }
                    }
                }
            }
        }
        if next.is_empty() {
            return Err(Error::Contradiction(format!(
                "every list path was eliminated at input {}",
                i + 1
            )));
        }
        trace.push(next.len());
        paths = next;
    }
    if paths.len() > 1 {
        return Ok((DecodeResult::failed(DecodeStatus::Ambiguous), trace));
    }
    let u = BitVector::from_bools(paths.pop().expect("one path").u);
    Ok((
        DecodeResult {
            status: DecodeStatus::Success,
            codeword: Some(polar_transform(&u)?),
            stats: None,
        },
        trace,
    ))
}
