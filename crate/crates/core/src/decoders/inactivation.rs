//! SC inactivation decoding.
//!
//! Follows the SC schedule, but an erased information bit becomes a dummy
//! variable instead of a failure. Messages are affine expressions in those
//! variables. Frozen bits whose message is known yield linear equations;
//! with consolidation on they are solved as they arrive, otherwise they are
//! solved once at the end. Decoding succeeds iff the equations pin down
//! every variable, which makes the decoder a MAP decoder.

use super::expr::{AffineExpr, EquationAccumulator, Insert};
use super::tree::{Algebra, ScTree};
use super::{check_len, frozen_value, ternary_tree, DecodeResult, DecodeStatus, InactivationStats, TernaryAlgebra};
use crate::channel::{Ternary, TernaryWord};
use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::gf2::{polar_transform, reverse_bits, BitVector};

/// Maximum number of unresolved inactivations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Budget {
    #[default]
    Unbounded,
    Max(usize),
}

impl Budget {
    fn exceeded_by(self, unresolved: usize) -> bool {
        match self {
            Budget::Unbounded => false,
            Budget::Max(g) => unresolved > g,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InactivationOptions {
    pub budget: Budget,
    pub consolidate: bool,
}

impl Default for InactivationOptions {
    fn default() -> Self {
        InactivationOptions {
            budget: Budget::Unbounded,
            consolidate: true,
        }
    }
}

type Msg = Option<AffineExpr>;

#[derive(Default)]
struct SymbolicAlgebra {
    /// Equations `a ⊕ b = 0` from variable nodes with two known inputs.
    pending: Vec<AffineExpr>,
}

impl Algebra for SymbolicAlgebra {
    type Msg = Msg;
    type Bit = AffineExpr;

    fn check(&mut self, a: &Msg, b: &Msg) -> Msg {
        match (a, b) {
            (Some(a), Some(b)) => Some(a.xor(b)),
            _ => None,
        }
    }

    fn var(&mut self, via: Msg, direct: &Msg) -> Msg {
        match (via, direct) {
            (Some(v), Some(d)) => {
                if v != *d {
                    self.pending.push(v.xor(d));
                }
                Some(d.clone())
            }
            (Some(v), None) => Some(v),
            (None, d) => d.clone(),
        }
    }

    fn add_bit(&self, m: &Msg, b: &AffineExpr) -> Msg {
        m.as_ref().map(|e| e.xor(b))
    }

    fn add_bits(&self, a: &AffineExpr, b: &AffineExpr) -> AffineExpr {
        a.xor(b)
    }
}

struct Equations {
    consolidate: bool,
    store: EquationAccumulator,
    deferred: Vec<AffineExpr>,
    consolidations: usize,
}

impl Equations {
    fn add(&mut self, eq: AffineExpr) -> Result<()> {
        if self.consolidate {
            if let Insert::Added { .. } = self.store.insert(&eq)? {
                self.consolidations += 1;
            }
        } else if eq.is_constant() {
            if eq.constant {
                return Err(Error::Contradiction("frozen bit decoded as 1 = 0".into()));
            }
        } else {
            self.deferred.push(eq);
        }
        Ok(())
    }

    fn unresolved(&self, inactivations: usize) -> usize {
        inactivations - self.store.rank()
    }
}

/// Plain ternary SC pass. If no information bit is erased the symbolic
/// decoder would see only constants, so this returns exactly what it would;
/// otherwise `None`.
fn without_inactivations(spec: &CodeSpec, y: &TernaryWord) -> Result<Option<DecodeResult>> {
    let n = spec.n();
    let mut alg = TernaryAlgebra::default();
    let mut tree = ternary_tree(y);
    let mut u = vec![false; n];
    let mut erased = Vec::with_capacity(n);
    for i in 0..n {
        let msg = *tree.message(&mut alg, i);
        erased.push(msg.is_erased());
        u[i] = match spec.frozen_support(i) {
            Some(support) => {
                let expected = frozen_value(support, &u);
                if msg.bit().is_some_and(|b| b != expected) {
                    return Err(Error::Contradiction("frozen bit decoded as 1 = 0".into()));
                }
                expected
            }
            None => match msg.bit() {
                Some(b) => b,
                None => return Ok(None),
            },
        };
        tree.commit(&alg, i, u[i]);
    }
    if alg.conflict {
        return Err(Error::Contradiction("variable node saw two different values".into()));
    }
    let c = polar_transform(&BitVector::from_bools(u))?;
    if !y.is_consistent_with(&c) {
        return Err(Error::Contradiction(
            "resolved codeword disagrees with the received word".into(),
        ));
    }
    Ok(Some(DecodeResult {
        status: DecodeStatus::Success,
        codeword: Some(c),
        stats: Some(InactivationStats {
            total_inactivations: 0,
            unresolved_after: vec![0; n],
            consolidations: 0,
            variable_node_equations: 0,
            erased,
            final_rank: 0,
        }),
    }))
}

/// Decodes `y` with inactivations.
///
/// Returns an error only if the received word contradicts the code, which
/// cannot happen for genuine BEC outputs of a codeword.
pub fn sc_inactivation_decode(
    spec: &CodeSpec,
    y: &TernaryWord,
    opts: InactivationOptions,
) -> Result<DecodeResult> {
    check_len(spec, y)?;
    if let Some(done) = without_inactivations(spec, y)? {
        return Ok(done);
    }
    let n = spec.n();
    let m = spec.m();
    let channel: Vec<Msg> = (0..n)
        .map(|j| match y.0[reverse_bits(j, m)] {
            Ternary::Erased => None,
            t => Some(AffineExpr::constant(t == Ternary::One)),
        })
        .collect();
    let mut tree = ScTree::new(channel, None, AffineExpr::default());
    let mut alg = SymbolicAlgebra::default();
    let mut eqs = Equations {
        consolidate: opts.consolidate,
        store: EquationAccumulator::new(n),
        deferred: Vec::new(),
        consolidations: 0,
    };
    let mut u_hat: Vec<AffineExpr> = vec![AffineExpr::default(); n];
    let mut stats = InactivationStats {
        total_inactivations: 0,
        unresolved_after: Vec::with_capacity(n),
        consolidations: 0,
        variable_node_equations: 0,
        erased: Vec::with_capacity(n),
        final_rank: 0,
    };

    for i in 0..n {
        let msg = tree.message(&mut alg, i).clone();
        for eq in alg.pending.drain(..) {
            stats.variable_node_equations += 1;
            eqs.add(eq)?;
        }
        stats.erased.push(msg.is_none());
        let decision = match (spec.frozen_support(i), msg) {
            (None, Some(e)) => e,
            (None, None) => {
                if opts
                    .budget
                    .exceeded_by(eqs.unresolved(stats.total_inactivations) + 1)
                {
                    stats.consolidations = eqs.consolidations;
                    stats.final_rank = eqs.store.rank();
                    return Ok(DecodeResult {
                        status: DecodeStatus::ListOverflow,
                        codeword: None,
                        stats: Some(stats),
                    });
                }
                stats.total_inactivations += 1;
                AffineExpr::var(i)
            }
            (Some(support), msg) => {
                let expected = support
                    .iter()
                    .fold(AffineExpr::default(), |acc, &s| acc.xor(&u_hat[s]));
                if let Some(e) = msg {
                    eqs.add(e.xor(&expected))?;
                }
                expected
            }
        };
        tree.commit(&alg, i, decision.clone());
        u_hat[i] = decision;
        stats
            .unresolved_after
            .push(eqs.unresolved(stats.total_inactivations));
    }

    for eq in std::mem::take(&mut eqs.deferred) {
        eqs.store.insert(&eq)?;
    }
    stats.consolidations = if opts.consolidate { eqs.consolidations } else { 0 };
    stats.final_rank = eqs.store.rank();
    if stats.final_rank < stats.total_inactivations {
        return Ok(DecodeResult {
            status: DecodeStatus::Ambiguous,
            codeword: None,
            stats: Some(stats),
        });
    }
    let store = &eqs.store;
    let u = BitVector::from_bools(u_hat.iter().map(|e| {
        e.eval(|v| store.value(v).expect("full rank resolves every variable"))
    }));
    let c = polar_transform(&u)?;
    if !y.is_consistent_with(&c) {
        return Err(Error::Contradiction(
            "resolved codeword disagrees with the received word".into(),
        ));
    }
    Ok(DecodeResult {
        status: DecodeStatus::Success,
        codeword: Some(c),
        stats: Some(stats),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::encode;
    use crate::construction::construct_rm;

    fn w(s: &str) -> TernaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn erasure_free_needs_no_inactivations() {
        let spec = construct_rm(4, 2).unwrap();
        let c = encode(&spec, &BitVector::from_u64(0x3a1, spec.k())).unwrap();
        let r = sc_inactivation_decode(&spec, &TernaryWord::from_bits(&c), Default::default()).unwrap();
        assert_eq!(r.codeword, Some(c));
        let stats = r.stats.unwrap();
        assert_eq!(stats.total_inactivations, 0);
        assert!(stats.unresolved_after.iter().all(|&g| g == 0));
    }

    #[test]
    fn single_consolidation_trace() {
        // info set {1}; c = (u1⊕u2⊕u3⊕u4, u3⊕u4, u2⊕u4, u4)
        let spec = CodeSpec::static_frozen(4, vec![0], "").unwrap();
        let r = sc_inactivation_decode(&spec, &w("10e0"), Default::default()).unwrap();
        assert_eq!(r.status, DecodeStatus::Success);
        assert_eq!(r.codeword.unwrap().to_bits(), vec![1, 0, 0, 0]);
        let stats = r.stats.unwrap();
        assert_eq!(stats.total_inactivations, 1);
        assert_eq!(stats.unresolved_after, vec![1, 0, 0, 0]);
        assert_eq!(stats.consolidations, 1);
    }

    #[test]
    fn unresolvable_is_ambiguous() {
        let full = CodeSpec::static_frozen(2, vec![0, 1], "").unwrap();
        let r = sc_inactivation_decode(&full, &w("0e"), Default::default()).unwrap();
        assert_eq!(r.status, DecodeStatus::Ambiguous);
        assert!(r.codeword.is_none());
        assert_eq!(r.stats.unwrap().total_inactivations, 1);
    }

    #[test]
    fn budget_overflow() {
        let full = CodeSpec::static_frozen(2, vec![0, 1], "").unwrap();
        let opts = InactivationOptions {
            budget: Budget::Max(0),
            consolidate: true,
        };
        let r = sc_inactivation_decode(&full, &w("0e"), opts).unwrap();
        assert_eq!(r.status, DecodeStatus::ListOverflow);
    }

    #[test]
    fn deferred_solving_matches_consolidation() {
        let spec = CodeSpec::static_frozen(4, vec![0], "").unwrap();
        let off = InactivationOptions {
            budget: Budget::Unbounded,
            consolidate: false,
        };
        let r = sc_inactivation_decode(&spec, &w("10e0"), off).unwrap();
        assert_eq!(r.codeword.unwrap().to_bits(), vec![1, 0, 0, 0]);
        assert_eq!(r.stats.unwrap().unresolved_after, vec![1, 1, 1, 1]);
    }

    #[test]
    fn contradictory_word_is_reported() {
        // RM(0,1) = {00, 11}; 01 is not a codeword
        let spec = CodeSpec::static_frozen(2, vec![1], "").unwrap();
        assert!(matches!(
            sc_inactivation_decode(&spec, &w("01"), Default::default()),
            Err(Error::Contradiction(_))
        ));
    }
}
