//! Seeded Monte-Carlo harness.
//!
//! Every trial draws its message and erasure pattern from
//! [`trial_stream`]`(master_seed, point, trial)`, where `point` is the
//! position of ε in the grid. Trials run in parallel batches, but outcomes
//! are folded in trial order and the stopping rule is applied per trial, so
//! the statistics do not depend on the number of worker threads.

use rand::Rng;
use rayon::prelude::*;

use crate::channel::{transmit, trial_stream, ChannelModel, TernaryWord};
use crate::code::CodeSpec;
use crate::decoders::{
    sc_decode, sc_genie_decode, sc_inactivation_decode, scl_decode, DecodeResult, InactivationOptions,
    InactivationStats, MapDecoder,
};
use crate::error::{Error, Result};
use crate::gf2::{polar_transform, BitVector};

pub const DEFAULT_TARGET_ERRORS: u64 = 100;
pub const DEFAULT_MAX_TRIALS: u64 = 10_000_000;

const FIRST_BATCH: u64 = 64;
const MAX_BATCH: u64 = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    Sc,
    /// Genie-aided SC; a block error is any information bit whose
    /// bit-channel output is not the true bit.
    Genie,
    Scl { list_size: usize },
    Inactivation(InactivationOptions),
    MapOracle,
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub spec: CodeSpec,
    pub decoder: DecoderKind,
    pub epsilons: Vec<f64>,
    pub master_seed: u64,
    pub max_trials: u64,
    pub target_errors: u64,
}

impl SimConfig {
    /// Seed 0 and the default stopping rule.
    pub fn new(spec: CodeSpec, decoder: DecoderKind, epsilons: Vec<f64>) -> Self {
        SimConfig {
            spec,
            decoder,
            epsilons,
            master_seed: 0,
            max_trials: DEFAULT_MAX_TRIALS,
            target_errors: DEFAULT_TARGET_ERRORS,
        }
    }

    pub fn with_seed(mut self, master_seed: u64) -> Self {
        self.master_seed = master_seed;
        self
    }

    /// Stops a point after `max_trials` trials or `target_errors` block
    /// errors, whichever comes first.
    pub fn with_stopping(mut self, max_trials: u64, target_errors: u64) -> Self {
        self.max_trials = max_trials;
        self.target_errors = target_errors;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidParameter(s));
        if self.max_trials == 0 {
            return bad("max_trials must be at least 1".into());
        }
        if self.target_errors == 0 {
            return bad("target_errors must be at least 1".into());
        }
        if self.epsilons.is_empty() {
            return bad("the epsilon grid is empty".into());
        }
        if let Some(e) = self.epsilons.iter().find(|e| !(0.0..=1.0).contains(*e)) {
            return bad(format!("epsilon {e} is outside [0, 1]"));
        }
        if let DecoderKind::Scl { list_size: 0 } = self.decoder {
            return bad("list size must be at least 1".into());
        }
        Ok(())
    }
}

/// Results at one erasure probability.
#[derive(Debug, Clone, PartialEq)]
pub struct PointStats {
    pub epsilon: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub bler: f64,
    /// `sqrt(bler (1 − bler) / trials)`.
    pub std_err: f64,
    /// Mean total inactivations `G`; zero for the other decoders.
    pub mean_g: f64,
    pub se_g: f64,
    /// Estimate of `E[G_i]` for `i = 1..n`. A trial stopped by the
    /// inactivation budget holds its last value for the remaining indices.
    pub mean_unresolved: Vec<f64>,
    pub mean_consolidations: f64,
    /// Fraction of trials in which input `i` was inactivated.
    pub inactivation_frequency: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimStats {
    pub points: Vec<PointStats>,
}

struct Outcome {
    error: bool,
    stats: Option<InactivationStats>,
}

struct Accumulator {
    trials: u64,
    errors: u64,
    sum_g: u64,
    sum_g2: u128,
    consolidations: u64,
    unresolved: Vec<u64>,
    inactivated: Vec<u64>,
}

impl Accumulator {
    fn new(n: usize) -> Self {
        Accumulator {
            trials: 0,
            errors: 0,
            sum_g: 0,
            sum_g2: 0,
            consolidations: 0,
            unresolved: vec![0; n],
            inactivated: vec![0; n],
        }
    }

    fn add(&mut self, o: Outcome, spec: &CodeSpec) {
        self.trials += 1;
        self.errors += u64::from(o.error);
        let Some(s) = o.stats else { return };
        let g = s.total_inactivations as u64;
        self.sum_g += g;
        self.sum_g2 += u128::from(g) * u128::from(g);
        self.consolidations += s.consolidations as u64;
        let last = s.unresolved_after.last().copied().unwrap_or(0);
        for (i, slot) in self.unresolved.iter_mut().enumerate() {
            *slot += s.unresolved_after.get(i).copied().unwrap_or(last) as u64;
        }
        for (slot, hit) in self.inactivated.iter_mut().zip(s.inactivated(spec)) {
            *slot += u64::from(hit);
        }
    }

    fn finish(&self, epsilon: f64) -> PointStats {
        let n = self.trials as f64;
        let bler = self.errors as f64 / n;
        let mean_g = self.sum_g as f64 / n;
        let var_g = if self.trials > 1 {
            ((self.sum_g2 as f64 - n * mean_g * mean_g) / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        PointStats {
            epsilon,
            trials: self.trials,
            block_errors: self.errors,
            bler,
            std_err: (bler * (1.0 - bler) / n).sqrt(),
            mean_g,
            se_g: (var_g / n).sqrt(),
            mean_unresolved: self.unresolved.iter().map(|&s| s as f64 / n).collect(),
            mean_consolidations: self.consolidations as f64 / n,
            inactivation_frequency: self.inactivated.iter().map(|&s| s as f64 / n).collect(),
        }
    }
}

/// One transmission: the input vector, the codeword and the channel output.
pub struct Realization {
    pub u: BitVector,
    pub codeword: BitVector,
    pub received: TernaryWord,
}

/// Draws a uniform message, encodes it and passes it through the BEC, all
/// from the trial's own stream.
pub fn realize(spec: &CodeSpec, channel: &ChannelModel, master_seed: u64, point: u64, trial: u64) -> Result<Realization> {
    let mut rng = trial_stream(master_seed, point, trial);
    let msg = BitVector::from_bools((0..spec.k()).map(|_| rng.gen::<bool>()));
    let u = spec.input_vector(&msg)?;
    let codeword = polar_transform(&u)?;
    let received = transmit(&codeword, channel, &mut rng);
    Ok(Realization { u, codeword, received })
}

enum Prepared {
    Sc,
    Genie,
    Scl(usize),
    Inactivation(InactivationOptions),
    Map(MapDecoder),
}

fn wrong_codeword(r: &DecodeResult, c: &BitVector) -> Result<bool> {
    match &r.codeword {
        Some(d) if d != c => Err(Error::Contradiction(
            "decoder reported success with a wrong codeword".into(),
        )),
        _ => Ok(!r.is_success()),
    }
}

fn run_trial(
    cfg: &SimConfig,
    dec: &Prepared,
    channel: &ChannelModel,
    point: u64,
    trial: u64,
) -> Result<Outcome> {
    let spec = &cfg.spec;
    let r = realize(spec, channel, cfg.master_seed, point, trial)?;
    let plain = |error| Outcome { error, stats: None };
    Ok(match dec {
        Prepared::Sc => plain(wrong_codeword(&sc_decode(spec, &r.received)?, &r.codeword)?),
        Prepared::Genie => plain(sc_genie_decode(spec, &r.received, &r.u)?.block_error()),
        Prepared::Scl(l) => plain(wrong_codeword(&scl_decode(spec, &r.received, *l)?, &r.codeword)?),
        Prepared::Map(m) => plain(!m.recoverable(&r.received)?),
        Prepared::Inactivation(opts) => {
            let d = sc_inactivation_decode(spec, &r.received, *opts)?;
            Outcome {
                error: wrong_codeword(&d, &r.codeword)?,
                stats: d.stats,
            }
        }
    })
}

fn run_point(cfg: &SimConfig, dec: &Prepared, point: usize, epsilon: f64) -> Result<PointStats> {
    let channel = ChannelModel::new(epsilon)?;
    let mut acc = Accumulator::new(cfg.spec.n());
    let mut next = 0u64;
    let mut batch = FIRST_BATCH;
    while acc.trials < cfg.max_trials && acc.errors < cfg.target_errors {
        let end = (next + batch).min(cfg.max_trials);
        let outcomes = (next..end)
            .into_par_iter()
            .map(|t| run_trial(cfg, dec, &channel, point as u64, t))
            .collect::<Result<Vec<_>>>()?;
        for o in outcomes {
            acc.add(o, &cfg.spec);
            if acc.errors >= cfg.target_errors {
                break;
            }
        }
        next = end;
        batch = (batch * 2).min(MAX_BATCH);
    }
    Ok(acc.finish(epsilon))
}

/// Estimates the block error rate at every ε of the grid.
///
/// Runs on the current rayon pool; wrap the call in
/// `ThreadPool::install` to control the number of workers.
pub fn run_bler(cfg: &SimConfig) -> Result<SimStats> {
    cfg.validate()?;
    let dec = match cfg.decoder {
        DecoderKind::Sc => Prepared::Sc,
        DecoderKind::Genie => Prepared::Genie,
        DecoderKind::Scl { list_size } => Prepared::Scl(list_size),
        DecoderKind::Inactivation(o) => Prepared::Inactivation(o),
        DecoderKind::MapOracle => Prepared::Map(MapDecoder::new(&cfg.spec)?),
    };
    let points = cfg
        .epsilons
        .iter()
        .enumerate()
        .map(|(p, &e)| run_point(cfg, &dec, p, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimStats { points })
}

/// Averages the `G_i` trajectories and `G`; requires the inactivation
/// decoder with consolidation on.
pub fn run_inactivation_profile(cfg: &SimConfig) -> Result<SimStats> {
    match cfg.decoder {
        DecoderKind::Inactivation(InactivationOptions {
            consolidate: true, ..
        }) => run_bler(cfg),
        _ => Err(Error::InvalidParameter(
            "profiles need the inactivation decoder with consolidation".into(),
        )),
    }
}

/// Counts trials where plain SC and genie-aided SC disagree on whether a
/// block error happened. Both decoders see the same realization.
pub fn proposition1_check(spec: &CodeSpec, epsilon: f64, master_seed: u64, trials: u64) -> Result<u64> {
    let channel = ChannelModel::new(epsilon)?;
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let r = realize(spec, &channel, master_seed, 0, t)?;
            let sc = sc_decode(spec, &r.received)?;
            let genie = sc_genie_decode(spec, &r.received, &r.u)?;
            Ok(u64::from(sc.is_success() == genie.block_error()))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// [`proposition1_check`] over every message and every erasure pattern.
/// Limited to `n + k ≤ 28`.
pub fn proposition1_exhaustive(spec: &CodeSpec) -> Result<u64> {
    let (n, k) = (spec.n(), spec.k());
    if n + k > 28 {
        return Err(Error::InvalidParameter(format!(
            "exhaustive coupling needs n + k <= 28, got {}",
            n + k
        )));
    }
    (0..1u64 << k)
        .into_par_iter()
        .map(|x| {
            let u = spec.input_vector(&BitVector::from_u64(x, k))?;
            let c = polar_transform(&u)?;
            let mut mismatches = 0;
            for mask in 0..1u64 << n {
                let y = crate::channel::apply_mask(&c, mask);
                let sc = sc_decode(spec, &y)?;
                let genie = sc_genie_decode(spec, &y, &u)?;
                mismatches += u64::from(sc.is_success() == genie.block_error());
            }
            Ok(mismatches)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Counts trials where the set of inputs whose bit-channel output is erased
/// differs between genie-aided SC and the inactivation decoder.
pub fn erasure_coupling_check(spec: &CodeSpec, epsilon: f64, master_seed: u64, trials: u64) -> Result<u64> {
    let channel = ChannelModel::new(epsilon)?;
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let r = realize(spec, &channel, master_seed, 0, t)?;
            let genie = sc_genie_decode(spec, &r.received, &r.u)?;
            let d = sc_inactivation_decode(spec, &r.received, InactivationOptions::default())?;
            let erased = d.stats.map(|s| s.erased).unwrap_or_default();
            Ok(u64::from(erased != genie.erased()))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}
