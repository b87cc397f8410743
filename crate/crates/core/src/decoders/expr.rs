//! Affine expressions over inactivated dummy variables and the triangular
//! equation store that resolves them.

use std::fmt;

use crate::error::{Error, Result};

/// `constant ⊕ ⊕_{v ∈ support} ũ_v`. Variables are named by the input index
/// at which they were inactivated. The support is kept sorted and
/// duplicate-free, so equality is syntactic equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AffineExpr {
    pub constant: bool,
    support: Vec<u32>,
}

impl AffineExpr {
    pub fn constant(bit: bool) -> Self {
        AffineExpr {
            constant: bit,
            support: Vec::new(),
        }
    }

    pub fn var(v: usize) -> Self {
        AffineExpr {
            constant: false,
            support: vec![v as u32],
        }
    }

    /// Builds an expression from an arbitrary list; repeated variables cancel.
    pub fn from_vars(constant: bool, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut support: Vec<u32> = vars.into_iter().map(|v| v as u32).collect();
        support.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(support.len());
        for v in support {
            if out.last() == Some(&v) {
                out.pop();
            } else {
                out.push(v);
            }
        }
        AffineExpr {
            constant,
            support: out,
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.support.iter().map(|&v| v as usize)
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn is_constant(&self) -> bool {
        self.support.is_empty()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.support.last().map(|&v| v as usize)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.support.binary_search(&(v as u32)).is_ok()
    }

    /// Sorted symmetric difference of the supports, XOR of the constants.
    pub fn xor(&self, other: &AffineExpr) -> AffineExpr {
        if other.support.is_empty() {
            return AffineExpr {
                constant: self.constant ^ other.constant,
                support: self.support.clone(),
            };
        }
        if self.support.is_empty() {
            return AffineExpr {
                constant: self.constant ^ other.constant,
                support: other.support.clone(),
            };
        }
        let (a, b) = (&self.support, &other.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        AffineExpr {
            constant: self.constant ^ other.constant,
            support: out,
        }
    }

    pub fn xor_assign(&mut self, other: &AffineExpr) {
        *self = self.xor(other);
    }

    pub fn flip_constant(&mut self) {
        self.constant = !self.constant;
    }

    /// Evaluates with `value(v)` for each variable.
    pub fn eval(&self, mut value: impl FnMut(usize) -> bool) -> bool {
        self.support
            .iter()
            .fold(self.constant, |acc, &v| acc ^ value(v as usize))
    }

    fn without(&self, v: usize) -> AffineExpr {
        AffineExpr {
            constant: self.constant,
            support: self.support.iter().copied().filter(|&x| x as usize != v).collect(),
        }
    }
}

impl fmt::Debug for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.constant))?;
        for v in &self.support {
            write!(f, "+u{v}")?;
        }
        Ok(())
    }
}

/// Outcome of adding one linear equation to the store.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insert {
    /// Linearly independent; the rank went up by one.
    Added { pivot: usize },
    /// Already implied by the stored equations.
    Redundant,
}

/// Gauss–Jordan store of equations `ũ_p = rest_p`, one per pivot `p`, where
/// the pivot is the largest variable of the equation when it was added.
///
/// No stored `rest` mentions any pivot.
#[derive(Debug, Clone, Default)]
pub struct EquationAccumulator {
    rest: Vec<Option<AffineExpr>>,
    pivots: Vec<usize>,
}

impl EquationAccumulator {
    pub fn new(vars: usize) -> Self {
        EquationAccumulator {
            rest: vec![None; vars],
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, v: usize) -> bool {
        self.rest.get(v).is_some_and(|r| r.is_some())
    }

    /// Rewrites `e` so that it mentions no pivot.
    pub fn reduce(&self, e: &AffineExpr) -> AffineExpr {
        if !e.support().any(|v| self.is_pivot(v)) {
            return e.clone();
        }
        let mut out = AffineExpr::constant(e.constant);
        let mut free = Vec::new();
        for v in e.support() {
            match &self.rest[v] {
                Some(r) => out.xor_assign(r),
                None => free.push(v),
            }
        }
        out.xor(&AffineExpr::from_vars(false, free))
    }

    /// Adds the equation `e = 0`.
    ///
    /// A reduced equation `1 = 0` means the observations contradict each
    /// other, which genuine erasure-channel outputs never do.
    pub fn insert(&mut self, e: &AffineExpr) -> Result<Insert> {
        let r = self.reduce(e);
        let Some(p) = r.max_var() else {
            return if r.constant {
                Err(Error::Contradiction(format!(
                    "equation {e:?} reduces to 1 = 0"
                )))
            } else {
                Ok(Insert::Redundant)
            };
        };
        let rest_p = r.without(p);
        let sub = r; // p ⊕ rest_p
        for &q in &self.pivots {
            let rq = self.rest[q].as_mut().expect("pivot has an equation");
            if rq.contains(p) {
                rq.xor_assign(&sub);
            }
        }
        if p >= self.rest.len() {
            self.rest.resize(p + 1, None);
        }
        self.rest[p] = Some(rest_p);
        self.pivots.push(p);
        Ok(Insert::Added { pivot: p })
    }

    /// Value of variable `v` when the system is fully determined.
    pub fn value(&self, v: usize) -> Option<bool> {
        match self.rest.get(v)? {
            Some(r) if r.is_constant() => Some(r.constant),
            _ => None,
        }
    }
}
