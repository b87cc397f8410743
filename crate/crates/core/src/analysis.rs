//! Density evolution on the BEC, the expected number of inactivations, and
//! the Singleton / Berlekamp benchmark curves.

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::gf2::log2_exact;

/// Bit-channel erasure probabilities of the genie-aided SC decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct DeProfile {
    pub n: usize,
    pub epsilon: f64,
    /// `eps_i[i]` for input index `i` (0-based).
    pub eps_i: Vec<f64>,
}

impl DeProfile {
    /// Probability that the inactivation decoder inactivates bit `i` of `spec`:
    /// zero on frozen positions, `eps_i` on information positions.
    pub fn inactivation_probabilities(&self, spec: &CodeSpec) -> Vec<f64> {
        (0..self.n)
            .map(|i| if spec.is_info(i) { self.eps_i[i] } else { 0.0 })
            .collect()
    }
}

fn check_prob(eps: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "erasure probability {eps} outside [0, 1]"
        )))
    }
}

/// Runs `e → (2e − e², e²)` `log2 n` times starting from `[epsilon]`.
///
/// The output order matches `G_n = B_n K₂^⊗m`: the first split decides the
/// most significant bit of the input index.
pub fn density_evolution(n: usize, epsilon: f64) -> Result<DeProfile> {
    let m = log2_exact(n)?;
    check_prob(epsilon)?;
    let mut eps = vec![epsilon];
    for _ in 0..m {
        eps = eps
            .iter()
            .flat_map(|&e| [2.0 * e - e * e, e * e])
            .collect();
    }
    Ok(DeProfile {
        n,
        epsilon,
        eps_i: eps,
    })
}

/// `E[G] = Σ_{i∈𝒜} ε_i`. Depends only on the information set.
pub fn expected_inactivations(spec: &CodeSpec, epsilon: f64) -> Result<f64> {
    let de = density_evolution(spec.n(), epsilon)?;
    Ok(spec.info_set().iter().map(|&i| de.eps_i[i]).sum())
}

fn ln_choose_table(n: usize) -> Vec<f64> {
    // ln C(n, e) for e = 0..=n via ln Γ sums
    let mut ln_fact = vec![0.0; n + 1];
    for i in 1..=n {
        ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
    }
    (0..=n)
        .map(|e| ln_fact[n] - ln_fact[e] - ln_fact[n - e])
        .collect()
}

/// `C(n,e) ε^e (1−ε)^{n−e}` for all `e`, evaluated in log space.
fn binomial_pmf(n: usize, epsilon: f64) -> Vec<f64> {
    if epsilon == 0.0 {
        let mut p = vec![0.0; n + 1];
        p[0] = 1.0;
        return p;
    }
    if epsilon == 1.0 {
        let mut p = vec![0.0; n + 1];
        p[n] = 1.0;
        return p;
    }
    let ln_c = ln_choose_table(n);
    let (le, lq) = (epsilon.ln(), (-epsilon).ln_1p());
    (0..=n)
        .map(|e| (ln_c[e] + e as f64 * le + (n - e) as f64 * lq).exp())
        .collect()
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "dimension {k} outside 1..={n}"
        )));
    }
    Ok(())
}

/// Probability that more than `n − k` of `n` symbols are erased.
pub fn singleton_bound(n: usize, k: usize, epsilon: f64) -> Result<f64> {
    check_nk(n, k)?;
    check_prob(epsilon)?;
    let pmf = binomial_pmf(n, epsilon);
    Ok(pmf[n - k + 1..].iter().sum::<f64>().min(1.0))
}

/// Probability that `e` uniformly random columns of a uniformly random
/// `redundancy`-row binary matrix are linearly dependent.
pub fn random_dependence_probability(redundancy: usize, e: usize) -> f64 {
    if e > redundancy {
        return 1.0;
    }
    // 1 − Π_{i<e} (1 − 2^{i−r}), via expm1 so tiny values keep precision
    let ln_prod: f64 = (0..e)
        .map(|i| (-(2f64).powi(i as i32 - redundancy as i32)).ln_1p())
        .sum();
    -ln_prod.exp_m1()
}

/// Average block erasure probability of the ensemble of `(n, k)` codes with
/// uniformly random `(n−k) × n` parity-check matrices under MAP decoding.
pub fn berlekamp_rcb(n: usize, k: usize, epsilon: f64) -> Result<f64> {
    check_nk(n, k)?;
    check_prob(epsilon)?;
    let pmf = binomial_pmf(n, epsilon);
    let r = n - k;
    Ok(pmf
        .iter()
        .enumerate()
        .map(|(e, p)| p * random_dependence_probability(r, e))
        .sum::<f64>()
        .min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Singleton,
    Berlekamp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub kind: BoundKind,
    pub points: Vec<(f64, f64)>,
}

pub fn bound_curve(kind: BoundKind, n: usize, k: usize, grid: &[f64]) -> Result<BoundCurve> {
    let points = grid
        .iter()
        .map(|&eps| {
            let p = match kind {
                BoundKind::Singleton => singleton_bound(n, k, eps)?,
                BoundKind::Berlekamp => berlekamp_rcb(n, k, eps)?,
            };
            Ok((eps, p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundCurve { kind, points })
}
