//! GF(2^m) arithmetic and (extended) BCH parity-check matrices.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// A field element in polynomial basis: bit `j` is the coefficient of `x^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

/// GF(2^m) defined by a primitive polynomial, with log/antilog tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldConfig {
    m: u32,
    primitive_poly: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FieldConfig {
    /// `primitive_poly` includes the `x^m` term, e.g. `0b1011` for x³+x+1.
    pub fn new(m: u32, primitive_poly: u32) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "extension degree {m} outside 2..=16"
            )));
        }
        if primitive_poly >> m != 1 {
            return Err(Error::InvalidParameter(format!(
                "polynomial {primitive_poly:#b} does not have degree {m}"
            )));
        }
        let order = (1u32 << m) - 1;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; 1 << m];
        let mut a = 1u32;
        for e in 0..order {
            if log[a as usize] != u32::MAX {
                // x has order e < 2^m - 1
                return Err(Error::InvalidParameter(format!(
                    "polynomial {primitive_poly:#b} is not primitive (order of x is {e})"
                )));
            }
            log[a as usize] = e;
            exp.push(a);
            a <<= 1;
            if a >> m & 1 == 1 {
                a ^= primitive_poly;
            }
        }
        if a != 1 {
            return Err(Error::InvalidParameter(format!(
                "polynomial {primitive_poly:#b} is not primitive"
            )));
        }
        Ok(FieldConfig {
            m,
            primitive_poly,
            exp,
            log,
        })
    }

    /// Default primitive polynomials: x³+x+1, x⁴+x+1, x⁵+x²+1, x⁶+x+1,
    /// x⁷+x³+1, x⁸+x⁴+x³+x²+1, x⁹+x⁴+1, x¹⁰+x³+1.
    pub fn standard(m: u32) -> Result<Self> {
        let poly = match m {
            2 => 0b111,
            3 => 0b1011,
            4 => 0b1_0011,
            5 => 0b10_0101,
            6 => 0b100_0011,
            7 => 0b1000_1001,
            8 => 0b1_0001_1101,
            9 => 0b10_0001_0001,
            10 => 0b100_0000_1001,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "no default primitive polynomial for m = {m}"
                )))
            }
        };
        Self::new(m, poly)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn primitive_poly(&self) -> u32 {
        self.primitive_poly
    }

    /// Multiplicative order of the group, `2^m − 1`.
    pub fn order(&self) -> u32 {
        (1 << self.m) - 1
    }

    pub fn size(&self) -> usize {
        1 << self.m
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if (a.0 as usize) < self.size() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "element {:#b} does not belong to GF(2^{})",
                a.0, self.m
            )))
        }
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(FieldElement::ZERO);
        }
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % self.order();
        Ok(FieldElement(self.exp[e as usize]))
    }

    /// `α^e` with `α = x`; negative exponents wrap modulo `2^m − 1`.
    pub fn alpha_power(&self, e: i64) -> FieldElement {
        let e = e.rem_euclid(self.order() as i64) as usize;
        FieldElement(self.exp[e])
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Ok(if e == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            });
        }
        let l = self.log[a.0 as usize] as u64;
        Ok(FieldElement(
            self.exp[((l * (e % self.order() as u64)) % self.order() as u64) as usize],
        ))
    }

    /// Discrete log base α of a nonzero element.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() || (a.0 as usize) >= self.size() {
            None
        } else {
            Some(self.log[a.0 as usize])
        }
    }
}

/// Field multiplication as a free function.
pub fn field_mul(cfg: &FieldConfig, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
    cfg.mul(a, b)
}

pub fn alpha_power(cfg: &FieldConfig, e: i64) -> FieldElement {
    cfg.alpha_power(e)
}

/// Binary parity-check matrix of the narrow-sense BCH code of length
/// `n_prime = 2^m − 1` with zeros `α¹ … α^{delta−1}`.
///
/// Column `i` holds the m-bit expansions of `α^{j·i}` stacked over the
/// exponents `j`; dependent rows are dropped, keeping earlier rows.
pub fn bch_parity_check(cfg: &FieldConfig, n_prime: usize, delta: usize) -> Result<BitMatrix> {
    if n_prime != cfg.order() as usize {
        return Err(Error::InvalidParameter(format!(
            "BCH length {n_prime} must equal 2^m - 1 = {}",
            cfg.order()
        )));
    }
    if delta < 2 || delta > n_prime {
        return Err(Error::InvalidParameter(format!(
            "design distance {delta} outside 2..={n_prime}"
        )));
    }
    let m = cfg.m() as usize;
    let mut full = BitMatrix::zeros(0, n_prime);
    for j in 1..delta {
        let mut rows = vec![BitVector::zeros(n_prime); m];
        for i in 0..n_prime {
            let v = cfg.alpha_power((j * i) as i64).0;
            for (b, row) in rows.iter_mut().enumerate() {
                if v >> b & 1 == 1 {
                    row.set(i, true);
                }
            }
        }
        for r in &rows {
            full.push_row(r);
        }
    }
    Ok(full.independent_rows())
}

/// Parity-check matrix of the code extended by an overall parity bit:
/// the old rows padded with a zero column, plus an all-ones row.
pub fn extend_with_overall_parity(h: &BitMatrix) -> BitMatrix {
    let cols = h.cols() + 1;
    let mut out = BitMatrix::zeros(0, cols);
    for r in 0..h.rows() {
        let mut row = BitVector::zeros(cols);
        for c in h.row_ones(r) {
            row.set(c, true);
        }
        out.push_row(&row);
    }
    out.push_row(&BitVector::from_bits(&vec![1; cols]));
    out
}

/// Reorders the columns of an extended BCH parity-check matrix so that the
/// coordinate of field element `β` sits at position `β` read as an integer.
///
/// Cyclic position `i` is the element `α^i`; the appended parity position is
/// the zero element. In this order the extended code is invariant under the
/// affine group of GF(2)^m, which lines it up with the Kronecker structure of
/// `G_n` (it is sandwiched between two Reed–Muller codes).
pub fn field_element_order(cfg: &FieldConfig, h_ext: &BitMatrix) -> Result<BitMatrix> {
    let n = cfg.size();
    if h_ext.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: h_ext.cols(),
        });
    }
    let mut perm: Vec<usize> = (0..n - 1)
        .map(|i| cfg.alpha_power(i as i64).0 as usize)
        .collect();
    perm.push(0);
    h_ext.permute_columns(&perm)
}

/// Parity-check matrix of the length-`2^m` extended narrow-sense BCH code
/// with design distance `delta` (on the cyclic part), in field-element order.
pub fn ebch_parity_check(cfg: &FieldConfig, delta: usize) -> Result<BitMatrix> {
    let h = bch_parity_check(cfg, cfg.order() as usize, delta)?;
    field_element_order(cfg, &extend_with_overall_parity(&h))
}
