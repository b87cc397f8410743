//! Builders for every code family: polar, Reed–Muller, dynamic-frozen
//! representations of arbitrary linear codes (eBCH, random linear), subcodes,
//! and Reed–Muller codes with random dynamic frozen bits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::density_evolution;
use crate::code::{CodeSpec, FrozenConstraint};
use crate::error::{Error, Result};
use crate::field::{ebch_parity_check, FieldConfig};
use crate::gf2::{log2_exact, polar_generator, BitMatrix};

fn check_m(m: u32) -> Result<usize> {
    if m > 20 {
        return Err(Error::InvalidParameter(format!("m = {m} exceeds 20")));
    }
    Ok(1usize << m)
}

/// Reed–Muller code RM(r, m): rows of `G_n` of weight at least `2^{m−r}`.
pub fn construct_rm(m: u32, r: u32) -> Result<CodeSpec> {
    let n = check_m(m)?;
    if r > m {
        return Err(Error::InvalidParameter(format!("order r = {r} exceeds m = {m}")));
    }
    // row i of G_n has weight 2^{popcount(i)}
    let info = (0..n).filter(|&i| i.count_ones() >= m - r).collect();
    CodeSpec::static_frozen(n, info, format!("RM({r},{m}) ({n},{})", rm_dimension(m, r)))
}

/// `Σ_{i≤r} C(m, i)`.
pub fn rm_dimension(m: u32, r: u32) -> usize {
    let mut c = 1usize;
    let mut sum = 0;
    for i in 0..=r.min(m) as usize {
        sum += c;
        c = c * (m as usize - i) / (i + 1);
    }
    sum
}

/// Polar code: the `k` indices with the smallest bit-channel erasure
/// probability at `eps_design`; ties go to the smaller index.
pub fn construct_polar(m: u32, k: usize, eps_design: f64) -> Result<CodeSpec> {
    let n = check_m(m)?;
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("dimension {k} outside 1..={n}")));
    }
    let de = density_evolution(n, eps_design)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| de.eps_i[a].total_cmp(&de.eps_i[b]).then(a.cmp(&b)));
    let info = order[..k].to_vec();
    CodeSpec::static_frozen(n, info, format!("polar ({n},{k}) design eps {eps_design}"))
}

/// Represents the null space of a full-row-rank `H` as a polar code with
/// dynamic frozen bits.
///
/// `V = H·G_nᵀ` is brought into frozen form; each row's last nonzero column
/// is a frozen index and its remaining ones form the constraint support.
pub fn dynamic_frozen_from_parity(h: &BitMatrix) -> Result<CodeSpec> {
    let n = h.cols();
    log2_exact(n)?;
    if h.rows() >= n {
        return Err(Error::InvalidParameter(format!(
            "parity-check matrix with {} rows leaves no information bits",
            h.rows()
        )));
    }
    let g = polar_generator(n)?;
    let v = h.mul(&g.transpose())?;
    let v = v.row_reduce_frozen_form()?;
    let mut is_pivot = vec![false; n];
    let mut constraints = Vec::with_capacity(v.rows());
    for r in 0..v.rows() {
        let pivot = v.row_last_one(r).expect("full-rank rows are nonzero");
        is_pivot[pivot] = true;
        let support: Vec<usize> = v.row_ones(r).filter(|&c| c != pivot).collect();
        constraints.push(FrozenConstraint {
            index: pivot,
            support,
        });
    }
    let info = (0..n).filter(|&i| !is_pivot[i]).collect();
    CodeSpec::new(n, info, constraints, "")
}

/// The length-`2^m` extended BCH code with BCH design distance `delta`,
/// built on the standard primitive polynomial for `m`.
pub fn construct_ebch(m: u32, delta: usize) -> Result<CodeSpec> {
    let cfg = FieldConfig::standard(m)?;
    let h = ebch_parity_check(&cfg, delta)?;
    let spec = dynamic_frozen_from_parity(&h)?;
    let label = format!("eBCH ({},{}) delta {delta}", spec.n(), spec.k());
    Ok(spec.with_label(label))
}

/// Which extra information bits a subcode freezes.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtraFrozen {
    /// Explicit 0-based indices, all inside the base information set.
    Indices(Vec<usize>),
    /// The base information indices with the largest erasure probability at
    /// the given channel parameter.
    LeastReliable { epsilon: f64 },
}

/// Freezes `k' − k` information bits of `base` to zero.
///
/// Newly frozen bits are dropped from any dynamic support that used them.
pub fn ebch_polar_subcode(base: &CodeSpec, k: usize, extra: &ExtraFrozen) -> Result<CodeSpec> {
    let k_base = base.k();
    if k == 0 || k > k_base {
        return Err(Error::InvalidParameter(format!(
            "target dimension {k} outside 1..={k_base}"
        )));
    }
    let drop = k_base - k;
    let frozen: Vec<usize> = match extra {
        ExtraFrozen::Indices(list) => {
            let mut list = list.clone();
            list.sort_unstable();
            list.dedup();
            if list.len() != drop {
                return Err(Error::InvalidParameter(format!(
                    "need {drop} distinct extra frozen indices, got {}",
                    list.len()
                )));
            }
            if let Some(&bad) = list.iter().find(|&&i| i >= base.n() || !base.is_info(i)) {
                return Err(Error::InvalidParameter(format!(
                    "index {} is not in the base information set",
                    bad + 1
                )));
            }
            list
        }
        ExtraFrozen::LeastReliable { epsilon } => {
            let de = density_evolution(base.n(), *epsilon)?;
            let mut info = base.info_set().to_vec();
            info.sort_by(|&a, &b| de.eps_i[b].total_cmp(&de.eps_i[a]).then(a.cmp(&b)));
            info.truncate(drop);
            info.sort_unstable();
            info
        }
    };
    let mut newly = vec![false; base.n()];
    for &i in &frozen {
        newly[i] = true;
    }
    let info: Vec<usize> = base.info_set().iter().copied().filter(|&i| !newly[i]).collect();
    let mut constraints: Vec<FrozenConstraint> = base
        .constraints()
        .map(|mut c| {
            c.support.retain(|&s| !newly[s]);
            c
        })
        .collect();
    constraints.extend(frozen.iter().map(|&index| FrozenConstraint {
        index,
        support: Vec::new(),
    }));
    let n = base.n();
    CodeSpec::new(n, info, constraints, format!("subcode ({n},{k}) of {}", base.label()))
}

fn random_subset(rng: &mut ChaCha8Rng, candidates: &[usize]) -> Vec<usize> {
    candidates.iter().copied().filter(|_| rng.gen::<bool>()).collect()
}

/// RM(r, m) with every frozen bit replaced by a uniformly random subset-sum
/// of the information bits preceding it.
pub fn construct_drm(m: u32, r: u32, seed: u64) -> Result<CodeSpec> {
    let rm = construct_rm(m, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let info = rm.info_set().to_vec();
    let constraints = rm
        .constraints()
        .map(|c| {
            let before = &info[..info.partition_point(|&a| a < c.index)];
            FrozenConstraint {
                index: c.index,
                support: random_subset(&mut rng, before),
            }
        })
        .collect();
    let (n, k) = (rm.n(), rm.k());
    CodeSpec::new(n, info, constraints, format!("d-RM({r},{m}) ({n},{k}) seed {seed}"))
}

/// RM(r, m) where only the `d` largest frozen indices are dynamic, each a
/// uniformly random subset-sum of the first `s` information bits.
pub fn construct_limited_drm(m: u32, r: u32, d: usize, s: usize, seed: u64) -> Result<CodeSpec> {
    let rm = construct_rm(m, r)?;
    let info = rm.info_set().to_vec();
    let frozen: Vec<usize> = rm.constraints().map(|c| c.index).collect();
    if d > frozen.len() {
        return Err(Error::InvalidParameter(format!(
            "{d} dynamic bits requested but only {} frozen bits exist",
            frozen.len()
        )));
    }
    if s > info.len() {
        return Err(Error::InvalidParameter(format!(
            "{s} defining bits requested but k = {}",
            info.len()
        )));
    }
    let dynamic = &frozen[frozen.len() - d..];
    if d > 0 && s > 0 && dynamic[0] <= info[s - 1] {
        return Err(Error::InvalidParameter(format!(
            "dynamic frozen index {} does not follow information index {}",
            dynamic[0] + 1,
            info[s - 1] + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = &info[..s];
    let constraints = frozen
        .iter()
        .enumerate()
        .map(|(j, &index)| FrozenConstraint {
            index,
            support: if j >= frozen.len() - d {
                random_subset(&mut rng, first)
            } else {
                Vec::new()
            },
        })
        .collect();
    let (n, k) = (rm.n(), rm.k());
    CodeSpec::new(
        n,
        info,
        constraints,
        format!("{d}d-RM({r},{m}) ({n},{k}) s {s} seed {seed}"),
    )
}

/// Information on the first `k` positions; every frozen bit is a uniformly
/// random subset-sum of all information bits.
pub fn construct_random_linear(m: u32, k: usize, seed: u64) -> Result<CodeSpec> {
    let n = check_m(m)?;
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("dimension {k} outside 1..={n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let info: Vec<usize> = (0..k).collect();
    let constraints = (k..n)
        .map(|index| FrozenConstraint {
            index,
            support: random_subset(&mut rng, &info),
        })
        .collect();
    CodeSpec::new(n, info, constraints, format!("random ({n},{k}) seed {seed}"))
}
