use super::{check_len, DecodeResult, DecodeStatus};
use crate::channel::TernaryWord;
use crate::code::{encode, enumerate_codewords, generator_matrix, CodeSpec};
use crate::error::{Error, Result};
use crate::gf2::{polar_generator, polar_transform, solve_linear_system, BitMatrix, BitVector, SolveStatus};

/// MAP decoding by Gaussian elimination over the input vector `u`.
///
/// The system stacks one row per frozen constraint (`u_i ⊕ support = 0`)
/// and one row per unerased position `j` (`u · G_n[:, j] = y_j`).
pub fn map_oracle(spec: &CodeSpec, y: &TernaryWord) -> Result<DecodeResult> {
    check_len(spec, y)?;
    let n = spec.n();
    let gt = polar_generator(n)?.transpose();
    let mut a = BitMatrix::zeros(0, n);
    let mut rhs = Vec::new();
    for c in spec.constraints() {
        let mut row = BitVector::unit(n, c.index);
        for s in c.support {
            row.set(s, true);
        }
        a.push_row(&row);
        rhs.push(false);
    }
    for (j, s) in y.0.iter().enumerate() {
        if let Some(b) = s.bit() {
            a.push_row(&gt.row(j));
            rhs.push(b);
        }
    }
    let out = solve_linear_system(&a, &BitVector::from_bools(rhs))?;
    match out.status {
        SolveStatus::Unique => {
            let u = out.solution.expect("unique solution present");
            Ok(DecodeResult {
                status: DecodeStatus::Success,
                codeword: Some(polar_transform(&u)?),
                stats: None,
            })
        }
        SolveStatus::Ambiguous => Ok(DecodeResult::failed(DecodeStatus::Ambiguous)),
        SolveStatus::Inconsistent => Err(Error::Contradiction(
            "received word is not consistent with any codeword".into(),
        )),
    }
}

/// MAP decoder with the generator matrix precomputed, for repeated decoding
/// of one code.
///
/// Works in the message domain: column `j` of the generator is the linear
/// form giving `c_j`, and `y` is decodable iff the unerased columns span
/// `GF(2)^k`.
#[derive(Debug, Clone)]
pub struct MapDecoder {
    spec: CodeSpec,
    words: usize,
    /// Column `j` of the generator, `words` limbs per column.
    columns: Vec<u64>,
}

impl MapDecoder {
    pub fn new(spec: &CodeSpec) -> Result<Self> {
        let g = generator_matrix(spec)?;
        let k = spec.k();
        let words = k.div_ceil(64);
        let mut columns = vec![0u64; spec.n() * words];
        for t in 0..k {
            for j in g.row_ones(t) {
                columns[j * words + t / 64] |= 1 << (t % 64);
            }
        }
        Ok(MapDecoder {
            spec: spec.clone(),
            words,
            columns,
        })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    fn column(&self, j: usize) -> &[u64] {
        &self.columns[j * self.words..(j + 1) * self.words]
    }

    /// Whether the unerased positions of `y` determine the message.
    pub fn recoverable(&self, y: &TernaryWord) -> Result<bool> {
        check_len(&self.spec, y)?;
        let k = self.spec.k();
        let w = self.words;
        // row with lowest set bit `b` lives at `table[b]`
        let mut table = vec![0u64; k * w];
        let mut filled = vec![false; k];
        let mut rank = 0;
        let mut v = vec![0u64; w];
        for (j, s) in y.0.iter().enumerate() {
            if s.is_erased() {
                continue;
            }
            v.copy_from_slice(self.column(j));
            while let Some(lead) = first_one(&v) {
                let row = &mut table[lead * w..(lead + 1) * w];
                if !filled[lead] {
                    row.copy_from_slice(&v);
                    filled[lead] = true;
                    rank += 1;
                    break;
                }
                for (a, b) in v.iter_mut().zip(row.iter()) {
                    *a ^= b;
                }
            }
            if rank == k {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Full MAP decoding: the unique consistent codeword, or `Ambiguous`.
    pub fn decode(&self, y: &TernaryWord) -> Result<DecodeResult> {
        check_len(&self.spec, y)?;
        let k = self.spec.k();
        // fully reduced rows with their right-hand sides
        let mut basis: Vec<(usize, Vec<u64>, bool)> = Vec::with_capacity(k);
        for (j, s) in y.0.iter().enumerate() {
            let Some(bit) = s.bit() else { continue };
            let mut v = self.column(j).to_vec();
            let mut rhs = bit;
            for (lead, row, b) in &basis {
                if v[lead / 64] >> (lead % 64) & 1 == 1 {
                    for (a, r) in v.iter_mut().zip(row) {
                        *a ^= r;
                    }
                    rhs ^= b;
                }
            }
            match first_one(&v) {
                None if rhs => {
                    return Err(Error::Contradiction(
                        "received word is not consistent with any codeword".into(),
                    ))
                }
                None => {}
                Some(lead) => {
                    for (_, row, b) in basis.iter_mut() {
                        if row[lead / 64] >> (lead % 64) & 1 == 1 {
                            for (a, r) in row.iter_mut().zip(&v) {
                                *a ^= r;
                            }
                            *b ^= rhs;
                        }
                    }
                    basis.push((lead, v, rhs));
                }
            }
        }
        if basis.len() < k {
            return Ok(DecodeResult::failed(DecodeStatus::Ambiguous));
        }
        let mut msg = BitVector::zeros(k);
        for (lead, _, b) in &basis {
            msg.set(*lead, *b);
        }
        Ok(DecodeResult {
            status: DecodeStatus::Success,
            codeword: Some(encode(&self.spec, &msg)?),
            stats: None,
        })
    }
}

fn first_one(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, &x)| x != 0)
        .map(|(i, x)| i * 64 + x.trailing_zeros() as usize)
}

/// Enumerates all `2^k` codewords; success iff exactly one agrees with `y`
/// on the unerased positions. Limited to `k ≤ 20`.
pub fn brute_force_map(spec: &CodeSpec, y: &TernaryWord) -> Result<DecodeResult> {
    check_len(spec, y)?;
    if spec.k() > 20 {
        return Err(Error::InvalidParameter(format!(
            "brute force needs k <= 20, got {}",
            spec.k()
        )));
    }
    let mut found = None;
    for c in enumerate_codewords(spec)? {
        if y.is_consistent_with(&c) {
            if found.is_some() {
                return Ok(DecodeResult::failed(DecodeStatus::Ambiguous));
            }
            found = Some(c);
        }
    }
    match found {
        Some(c) => Ok(DecodeResult {
            status: DecodeStatus::Success,
            codeword: Some(c),
            stats: None,
        }),
        None => Err(Error::Contradiction(
            "received word is not consistent with any codeword".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::apply_mask;
    use crate::construction::construct_rm;

    #[test]
    fn examples() {
        let rep = CodeSpec::static_frozen(2, vec![1], "").unwrap();
        let y: TernaryWord = "e1".parse().unwrap();
        for r in [map_oracle(&rep, &y).unwrap(), brute_force_map(&rep, &y).unwrap()] {
            assert_eq!(r.codeword.unwrap().to_bits(), vec![1, 1]);
        }

        let full = CodeSpec::static_frozen(2, vec![0, 1], "").unwrap();
        let y: TernaryWord = "0e".parse().unwrap();
        assert_eq!(brute_force_map(&full, &y).unwrap().status, DecodeStatus::Ambiguous);
        assert_eq!(map_oracle(&full, &y).unwrap().status, DecodeStatus::Ambiguous);

        let spec = construct_rm(3, 1).unwrap();
        let c = encode(&spec, &BitVector::from_bits(&[0, 1, 1, 0])).unwrap();
        let clean = TernaryWord::from_bits(&c);
        assert_eq!(map_oracle(&spec, &clean).unwrap().codeword, Some(c.clone()));
        assert_eq!(brute_force_map(&spec, &clean).unwrap().codeword, Some(c));
        let all: TernaryWord = "eeeeeeee".parse().unwrap();
        assert_eq!(brute_force_map(&spec, &all).unwrap().status, DecodeStatus::Ambiguous);
        assert_eq!(map_oracle(&spec, &all).unwrap().status, DecodeStatus::Ambiguous);
    }

    #[test]
    fn inconsistent_word_is_an_error() {
        let rep = CodeSpec::static_frozen(2, vec![1], "").unwrap();
        let y: TernaryWord = "01".parse().unwrap();
        assert!(matches!(map_oracle(&rep, &y), Err(Error::Contradiction(_))));
        assert!(matches!(brute_force_map(&rep, &y), Err(Error::Contradiction(_))));
    }

    #[test]
    fn prepared_decoder_agrees_with_oracle() {
        let spec = construct_rm(3, 1).unwrap();
        let dec = MapDecoder::new(&spec).unwrap();
        for x in [0u64, 5, 11] {
            let c = encode(&spec, &BitVector::from_u64(x, 4)).unwrap();
            for mask in 0..256u64 {
                let y = apply_mask(&c, mask);
                let a = map_oracle(&spec, &y).unwrap();
                let b = dec.decode(&y).unwrap();
                assert_eq!(a, b);
                assert_eq!(dec.recoverable(&y).unwrap(), a.is_success());
            }
        }
        let bad: TernaryWord = "10000000".parse().unwrap();
        assert!(dec.decode(&bad).is_err());
    }
}
