//! Binary erasure channel and deterministic per-trial random streams.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// A BEC output symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ternary {
    Zero,
    One,
    Erased,
}

impl Ternary {
    pub fn known(bit: bool) -> Self {
        if bit {
            Ternary::One
        } else {
            Ternary::Zero
        }
    }

    pub fn bit(self) -> Option<bool> {
        match self {
            Ternary::Zero => Some(false),
            Ternary::One => Some(true),
            Ternary::Erased => None,
        }
    }

    pub fn is_erased(self) -> bool {
        self == Ternary::Erased
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryWord(pub Vec<Ternary>);

impl TernaryWord {
    pub fn from_bits(c: &BitVector) -> Self {
        TernaryWord(c.iter().map(Ternary::known).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn erasures(&self) -> usize {
        self.0.iter().filter(|s| s.is_erased()).count()
    }

    /// True if `c` agrees with every non-erased symbol.
    pub fn is_consistent_with(&self, c: &BitVector) -> bool {
        c.len() == self.len()
            && self
                .0
                .iter()
                .enumerate()
                .all(|(i, s)| s.bit().is_none_or(|b| b == c.get(i)))
    }
}

impl fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Ternary::Zero => "0",
                Ternary::One => "1",
                Ternary::Erased => "e",
            })?;
        }
        Ok(())
    }
}

/// Parses words like `01e1`; whitespace is ignored, `e`/`E`/`?` are erasures.
impl FromStr for TernaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for (col, ch) in s.chars().enumerate() {
            match ch {
                '0' => out.push(Ternary::Zero),
                '1' => out.push(Ternary::One),
                'e' | 'E' | '?' => out.push(Ternary::Erased),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("unexpected character {c:?} at column {}", col + 1),
                    })
                }
            }
        }
        Ok(TernaryWord(out))
    }
}

/// BEC(ε).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelModel {
    epsilon: f64,
}

impl ChannelModel {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::InvalidParameter(format!(
                "erasure probability {epsilon} outside [0, 1]"
            )));
        }
        Ok(ChannelModel { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Erases each symbol independently with probability ε. Consumes exactly one
/// `f64` draw per symbol.
pub fn transmit<R: Rng + ?Sized>(c: &BitVector, ch: &ChannelModel, rng: &mut R) -> TernaryWord {
    TernaryWord(
        c.iter()
            .map(|b| {
                if rng.gen::<f64>() < ch.epsilon {
                    Ternary::Erased
                } else {
                    Ternary::known(b)
                }
            })
            .collect(),
    )
}

/// Erases exactly the listed (0-based) positions.
pub fn apply_pattern(c: &BitVector, erased: &[usize]) -> Result<TernaryWord> {
    let mut y = TernaryWord::from_bits(c);
    for &i in erased {
        if i >= c.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: c.len(),
            });
        }
        y.0[i] = Ternary::Erased;
    }
    Ok(y)
}

/// Erases the positions whose bit is set in `mask` (bit `i` ↔ position `i`).
pub fn apply_mask(c: &BitVector, mask: u64) -> TernaryWord {
    let mut y = TernaryWord::from_bits(c);
    for (i, s) in y.0.iter_mut().enumerate().take(64) {
        if mask >> i & 1 == 1 {
            *s = Ternary::Erased;
        }
    }
    y
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent stream for one trial, a pure function of its coordinates.
///
/// Results therefore do not depend on scheduling or worker count.
pub fn trial_stream(master_seed: u64, point: u64, trial: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    let words = [
        splitmix64(master_seed),
        splitmix64(master_seed ^ splitmix64(point)),
        splitmix64(trial ^ splitmix64(point.wrapping_add(1))),
        splitmix64(master_seed.wrapping_add(trial).wrapping_add(point << 32)),
    ];
    for (chunk, w) in seed.chunks_exact_mut(8).zip(words) {
        chunk.copy_from_slice(&w.to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transmit_boundaries() {
        let c = BitVector::from_bits(&[1, 0, 1, 1, 0, 0, 1, 0]);
        let mut rng = trial_stream(1, 0, 0);
        let clean = transmit(&c, &ChannelModel::new(0.0).unwrap(), &mut rng);
        assert_eq!(clean, TernaryWord::from_bits(&c));
        let gone = transmit(&c, &ChannelModel::new(1.0).unwrap(), &mut rng);
        assert_eq!(gone.erasures(), 8);
        assert!(ChannelModel::new(1.1).is_err());
        assert!(ChannelModel::new(-0.1).is_err());
    }

    #[test]
    fn transmit_is_deterministic_and_never_flips() {
        let c = BitVector::from_bits(&[1, 0, 1, 1, 0, 0, 1, 0]);
        let ch = ChannelModel::new(0.4).unwrap();
        let a = transmit(&c, &ch, &mut trial_stream(5, 2, 9));
        let b = transmit(&c, &ch, &mut trial_stream(5, 2, 9));
        assert_eq!(a, b);
        assert!(a.is_consistent_with(&c));
    }

    #[test]
    fn transmit_consumes_one_draw_per_symbol() {
        let c = BitVector::zeros(16);
        let ch = ChannelModel::new(0.3).unwrap();
        let mut a = trial_stream(3, 0, 0);
        let mut b = trial_stream(3, 0, 0);
        transmit(&c, &ch, &mut a);
        for _ in 0..16 {
            b.gen::<f64>();
        }
        assert_eq!(a.gen::<u64>(), b.gen::<u64>());
    }

    #[test]
    fn empirical_erasure_rate() {
        let n = 1_000_000usize;
        let eps = 0.37;
        let c = BitVector::zeros(n);
        let y = transmit(&c, &ChannelModel::new(eps).unwrap(), &mut trial_stream(42, 0, 0));
        let sd = (n as f64 * eps * (1.0 - eps)).sqrt();
        assert!((y.erasures() as f64 - n as f64 * eps).abs() < 4.0 * sd);
    }

    #[test]
    fn streams_differ_across_coordinates() {
        let mut seen = std::collections::HashSet::new();
        for p in 0..4 {
            for t in 0..64 {
                assert!(seen.insert(trial_stream(0, p, t).gen::<u64>()));
            }
        }
        assert_ne!(trial_stream(0, 0, 0).gen::<u64>(), trial_stream(1, 0, 0).gen::<u64>());
    }

    #[test]
    fn pattern_examples() {
        let c = BitVector::from_bits(&[1, 0]);
        assert_eq!(apply_pattern(&c, &[]).unwrap(), TernaryWord::from_bits(&c));
        assert_eq!(apply_pattern(&c, &[0, 1]).unwrap().erasures(), 2);
        assert_eq!(apply_pattern(&c, &[0]).unwrap().to_string(), "e0");
        assert!(apply_pattern(&c, &[2]).is_err());
        assert_eq!(apply_mask(&c, 0b10).to_string(), "1e");
    }

    #[test]
    fn parse_words() {
        let w: TernaryWord = "01e 1".parse().unwrap();
        assert_eq!(w.to_string(), "01e1");
        assert!("01x".parse::<TernaryWord>().is_err());
    }
}
