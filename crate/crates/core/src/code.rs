//! Polar-form description of a linear code: an information set plus one
//! frozen constraint per remaining input position.

use crate::error::{Error, Result};
use crate::gf2::{log2_exact, polar_transform, BitMatrix, BitVector};

/// `u[index] = ⊕ u[s] for s in support`; an empty support is a static zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrozenConstraint {
    pub index: usize,
    /// Sorted ascending, all information positions below `index`.
    pub support: Vec<usize>,
}

impl FrozenConstraint {
    pub fn is_static(&self) -> bool {
        self.support.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Role {
    Info,
    Frozen(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    n: usize,
    info_set: Vec<usize>,
    roles: Vec<Role>,
    label: String,
}

impl CodeSpec {
    /// Validates and builds a spec. `constraints` must cover exactly the
    /// complement of `info_set`.
    pub fn new(
        n: usize,
        info_set: Vec<usize>,
        constraints: Vec<FrozenConstraint>,
        label: impl Into<String>,
    ) -> Result<Self> {
        log2_exact(n)?;
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        let mut roles: Vec<Option<Role>> = vec![None; n];
        let mut info_set = info_set;
        info_set.sort_unstable();
        if info_set.is_empty() {
            return bad("information set is empty".into());
        }
        for &i in &info_set {
            if i >= n {
                return bad(format!("information index {} out of range", i + 1));
            }
            if roles[i].is_some() {
                return bad(format!("information index {} repeated", i + 1));
            }
            roles[i] = Some(Role::Info);
        }
        for c in constraints {
            if c.index >= n {
                return bad(format!("frozen index {} out of range", c.index + 1));
            }
            if roles[c.index].is_some() {
                return bad(format!("index {} assigned twice", c.index + 1));
            }
            let mut support = c.support;
            support.sort_unstable();
            if support.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("repeated support entry at frozen index {}", c.index + 1));
            }
            for &s in &support {
                if s >= c.index {
                    return bad(format!(
                        "support entry {} does not precede frozen index {}",
                        s + 1,
                        c.index + 1
                    ));
                }
                if info_set.binary_search(&s).is_err() {
                    return bad(format!(
                        "support entry {} of frozen index {} is not an information index",
                        s + 1,
                        c.index + 1
                    ));
                }
            }
            roles[c.index] = Some(Role::Frozen(support));
        }
        let roles = roles
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| Error::InvalidSpec(format!("index {} unassigned", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok(CodeSpec {
            n,
            info_set,
            roles,
            label: label.into(),
        })
    }

    /// Every non-information index is a static zero.
    pub fn static_frozen(n: usize, info_set: Vec<usize>, label: impl Into<String>) -> Result<Self> {
        let mut is_info = vec![false; n];
        for &i in &info_set {
            if i < n {
                is_info[i] = true;
            }
        }
        let constraints = (0..n)
            .filter(|&i| !is_info[i])
            .map(|index| FrozenConstraint {
                index,
                support: Vec::new(),
            })
            .collect();
        Self::new(n, info_set, constraints, label)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.info_set.len()
    }

    pub fn m(&self) -> u32 {
        self.n.trailing_zeros()
    }

    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn is_info(&self, i: usize) -> bool {
        matches!(self.roles[i], Role::Info)
    }

    /// Support of the frozen constraint at `i`, or `None` for an information index.
    #[inline]
    pub fn frozen_support(&self, i: usize) -> Option<&[usize]> {
        match &self.roles[i] {
            Role::Info => None,
            Role::Frozen(s) => Some(s),
        }
    }

    pub fn constraints(&self) -> impl Iterator<Item = FrozenConstraint> + '_ {
        self.roles.iter().enumerate().filter_map(|(index, r)| match r {
            Role::Info => None,
            Role::Frozen(s) => Some(FrozenConstraint {
                index,
                support: s.clone(),
            }),
        })
    }

    pub fn dynamic_count(&self) -> usize {
        self.roles
            .iter()
            .filter(|r| matches!(r, Role::Frozen(s) if !s.is_empty()))
            .count()
    }

    /// Information indices that appear in at least one dynamic constraint.
    pub fn defining_info_bits(&self) -> Vec<usize> {
        let mut used = vec![false; self.n];
        for r in &self.roles {
            if let Role::Frozen(s) = r {
                for &i in s {
                    used[i] = true;
                }
            }
        }
        (0..self.n).filter(|&i| used[i]).collect()
    }

    /// The full input vector `u` for a message placed on the information set.
    pub fn input_vector(&self, msg: &BitVector) -> Result<BitVector> {
        if msg.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                got: msg.len(),
            });
        }
        let mut u = BitVector::zeros(self.n);
        for (j, &i) in self.info_set.iter().enumerate() {
            if msg.get(j) {
                u.set(i, true);
            }
        }
        // supports precede their index, so one ascending pass suffices
        for (i, r) in self.roles.iter().enumerate() {
            if let Role::Frozen(s) = r {
                let v = s.iter().fold(false, |acc, &j| acc ^ u.get(j));
                u.set(i, v);
            }
        }
        Ok(u)
    }

    /// True if `u` satisfies every frozen constraint.
    pub fn satisfies_constraints(&self, u: &BitVector) -> bool {
        u.len() == self.n
            && self.roles.iter().enumerate().all(|(i, r)| match r {
                Role::Info => true,
                Role::Frozen(s) => s.iter().fold(false, |acc, &j| acc ^ u.get(j)) == u.get(i),
            })
    }

    /// The message carried by a constraint-satisfying input vector.
    pub fn message_of(&self, u: &BitVector) -> BitVector {
        BitVector::from_bools(self.info_set.iter().map(|&i| u.get(i)))
    }
}

/// Places `msg` on the information set, fills the frozen bits, and applies `G_n`.
pub fn encode(spec: &CodeSpec, msg: &BitVector) -> Result<BitVector> {
    polar_transform(&spec.input_vector(msg)?)
}

/// The `k × n` generator matrix; row `t` encodes the `t`-th unit message.
pub fn generator_matrix(spec: &CodeSpec) -> Result<BitMatrix> {
    let k = spec.k();
    let rows = (0..k)
        .map(|t| encode(spec, &BitVector::unit(k, t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BitMatrix::from_row_vectors(spec.n(), &rows))
}

/// All `2^k` codewords in message order. Intended for small `k`.
pub fn enumerate_codewords(spec: &CodeSpec) -> Result<Vec<BitVector>> {
    let k = spec.k();
    if k > 24 {
        return Err(Error::InvalidParameter(format!(
            "refusing to enumerate 2^{k} codewords"
        )));
    }
    (0..1u64 << k)
        .map(|x| encode(spec, &BitVector::from_u64(x, k)))
        .collect()
}
