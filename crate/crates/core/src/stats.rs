//! Statistical distance between model and quantum behaviours.
//!
//! The headline figure is the Kullback-Leibler divergence
//! D_KL(target ‖ model) in nats: with the model as the null hypothesis,
//! any test that rejects model data with 95% confidence needs at least
//! n₉₅ = −ln(0.05)/D_KL samples. Total variational distance is reported
//! alongside, and sweeps aggregate per-setting reports into quantiles.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use thiserror::Error;

use crate::bloch::BlochVector;
use crate::lhv::{estimate_behavior, sample_lhv, LhvError, Protocol};
use crate::qstate::{born_behavior, TwoQubitState};
use crate::stream;

/// Inputs to the divergence functions must be normalized within this.
pub const INPUT_NORMALIZATION_TOL: f64 = 1e-9;

/// −ln(0.05), the numerator of the 95%-confidence sample size.
pub const LN_20: f64 = 2.995732273553991;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("tables have different lengths: {target} vs {model}")]
    ShapeMismatch { target: usize, model: usize },
    #[error("input table sums to {sum}, not 1 within {INPUT_NORMALIZATION_TOL}")]
    NotNormalized { sum: f64 },
    #[error("input table has negative entry {0}")]
    NegativeEntry(f64),
    #[error("KL divergence cannot be negative, got {0}")]
    NegativeKl(f64),
    #[error("sweep needs at least one setting")]
    EmptySweep,
    #[error(transparent)]
    Estimator(#[from] LhvError),
}

fn check_table(t: &[f64]) -> Result<(), StatsError> {
    let mut sum = 0.0;
    for &v in t {
        if v < 0.0 {
            return Err(StatsError::NegativeEntry(v));
        }
        sum += v;
    }
    if (sum - 1.0).abs() > INPUT_NORMALIZATION_TOL {
        return Err(StatsError::NotNormalized { sum });
    }
    Ok(())
}

fn check_pair(target: &[f64], model: &[f64]) -> Result<(), StatsError> {
    if target.len() != model.len() {
        return Err(StatsError::ShapeMismatch {
            target: target.len(),
            model: model.len(),
        });
    }
    check_table(target)?;
    check_table(model)
}

/// D_KL(target ‖ model) = Σ t·ln(t/m) in nats, with 0·ln(0/m) := 0.
///
/// Returns +∞ when the model puts zero mass where the target does not;
/// infinity is reported honestly, never clamped. Use
/// [`kl_divergence_smoothed`] for Monte Carlo tables where empty cells are
/// sampling artifacts.
pub fn kl_divergence(target: &[f64], model: &[f64]) -> Result<f64, StatsError> {
    check_pair(target, model)?;
    let mut sum = 0.0;
    for (&t, &m) in target.iter().zip(model) {
        if t == 0.0 {
            continue;
        }
        if m == 0.0 {
            return Ok(f64::INFINITY);
        }
        sum += t * (t / m).ln();
    }
    // tiny negative values are rounding noise on identical tables
    Ok(sum.max(0.0))
}

/// KL divergence with the model floored at `eps` and renormalized first.
/// The smoothing must be declared in any report that uses it.
pub fn kl_divergence_smoothed(target: &[f64], model: &[f64], eps: f64) -> Result<f64, StatsError> {
    check_pair(target, model)?;
    let floored: Vec<f64> = model.iter().map(|&m| m.max(eps)).collect();
    let total: f64 = floored.iter().sum();
    let renorm: Vec<f64> = floored.iter().map(|&m| m / total).collect();
    let mut sum = 0.0;
    for (&t, &m) in target.iter().zip(&renorm) {
        if t > 0.0 {
            sum += t * (t / m).ln();
        }
    }
    Ok(sum.max(0.0))
}

/// Total variational distance ½ Σ |target − model| ∈ [0, 1].
pub fn tvd(target: &[f64], model: &[f64]) -> Result<f64, StatsError> {
    check_pair(target, model)?;
    Ok(0.5 * target.iter().zip(model).map(|(t, m)| (t - m).abs()).sum::<f64>())
}

/// Minimum sample size for 95%-confidence rejection: −ln(0.05)/kl.
/// +∞ at kl = 0, 0 as kl → ∞.
pub fn n95(kl: f64) -> Result<f64, StatsError> {
    if kl < 0.0 {
        return Err(StatsError::NegativeKl(kl));
    }
    if kl == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(LN_20 / kl)
}

/// [`n95`] as an integer sample requirement, rounded up and floored at 1.
pub fn n95_sample_count(kl: f64) -> Result<u64, StatsError> {
    let n = n95(kl)?;
    if n.is_infinite() {
        return Ok(u64::MAX);
    }
    Ok((n.ceil() as u64).max(1))
}

/// Optional model smoothing for Monte Carlo tables.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Smoothing {
    /// Report infinite KL as-is.
    #[default]
    None,
    /// Floor model entries at the given value and renormalize.
    Floor(f64),
}

/// Per-setting distances between a target and a model table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceReport {
    /// KL divergence in nats (may be +∞ without smoothing).
    pub kl: f64,
    /// Total variational distance in [0, 1].
    pub tvd: f64,
    /// Distinguishing sample size −ln(0.05)/kl (+∞ at kl = 0).
    pub n95: f64,
}

impl DivergenceReport {
    pub fn kl_is_infinite(&self) -> bool {
        self.kl.is_infinite()
    }

    /// Pinsker's inequality tvd ≤ sqrt(kl/2), with slack for rounding.
    pub fn satisfies_pinsker(&self, slack: f64) -> bool {
        if self.kl.is_infinite() {
            return true;
        }
        self.tvd <= (self.kl / 2.0).sqrt() + slack
    }
}

/// Compute KL/TVD/n95 for a target-model pair.
pub fn divergence_report(
    target: &[f64],
    model: &[f64],
    smoothing: Smoothing,
) -> Result<DivergenceReport, StatsError> {
    let kl = match smoothing {
        Smoothing::None => kl_divergence(target, model)?,
        Smoothing::Floor(eps) => kl_divergence_smoothed(target, model, eps)?,
    };
    Ok(DivergenceReport {
        kl,
        tvd: tvd(target, model)?,
        n95: n95(kl)?,
    })
}

/// Five-number summary of a metric across settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantiles {
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
}

impl Quantiles {
    /// Linear-interpolation quantiles of an unordered, non-empty sample.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted: Vec<f64> = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("metric values are ordered"));
        let at = |p: f64| -> f64 {
            let pos = p * (sorted.len() - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = pos.ceil() as usize;
            if lo == hi {
                sorted[lo]
            } else {
                let frac = pos - lo as f64;
                // interpolation involving ∞ stays ∞
                sorted[lo] * (1.0 - frac) + sorted[hi] * frac
            }
        };
        Some(Self {
            min: sorted[0],
            q25: at(0.25),
            median: at(0.5),
            q75: at(0.75),
            max: sorted[sorted.len() - 1],
        })
    }
}

/// Per-setting reports plus quantiles of each metric.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub per_setting: Vec<DivergenceReport>,
    pub kl: Quantiles,
    pub tvd: Quantiles,
    pub n95: Quantiles,
    pub smoothing: Smoothing,
}

impl SweepSummary {
    pub fn from_reports(
        per_setting: Vec<DivergenceReport>,
        smoothing: Smoothing,
    ) -> Result<Self, StatsError> {
        let field = |f: fn(&DivergenceReport) -> f64| -> Vec<f64> {
            per_setting.iter().map(f).collect()
        };
        let kl = Quantiles::from_values(&field(|r| r.kl)).ok_or(StatsError::EmptySweep)?;
        let tvd = Quantiles::from_values(&field(|r| r.tvd)).ok_or(StatsError::EmptySweep)?;
        let n95 = Quantiles::from_values(&field(|r| r.n95)).ok_or(StatsError::EmptySweep)?;
        Ok(Self {
            per_setting,
            kl,
            tvd,
            n95,
            smoothing,
        })
    }
}

/// Stream index of a setting pair: an FNV-1a hash of the coordinate bit
/// patterns. Keying the stream on the setting itself (rather than its list
/// position) makes sweep reports follow the setting under any permutation
/// or fan-out of the settings list.
pub fn setting_stream_id(a_hat: &BlochVector, b_hat: &BlochVector) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for v in [a_hat.x, a_hat.y, a_hat.z, b_hat.x, b_hat.y, b_hat.z] {
        for byte in v.to_bits().to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

/// Distance of the protocol's Monte Carlo estimate from the Born-rule
/// target at one setting pair, using the stream derived from
/// (master_seed, setting hash). The building block of [`sweep`]; callers
/// may fan settings out across workers and reassemble with
/// [`SweepSummary::from_reports`] — results do not depend on the fan-out.
pub fn sweep_setting<P: Protocol + ?Sized>(
    protocol: &P,
    state: &TwoQubitState,
    a_hat: &BlochVector,
    b_hat: &BlochVector,
    samples: usize,
    master_seed: u64,
    smoothing: Smoothing,
) -> Result<DivergenceReport, StatsError> {
    let mut rng = stream::stream_rng(master_seed, setting_stream_id(a_hat, b_hat));
    let model = estimate_behavior(protocol, a_hat, b_hat, samples, &mut rng)?;
    let target = born_behavior(state, a_hat, b_hat);
    divergence_report(target.table(), model.table(), smoothing)
}

/// Sweep a protocol over a list of measurement settings against the exact
/// quantum behaviour of `state`.
pub fn sweep<P: Protocol + ?Sized>(
    protocol: &P,
    state: &TwoQubitState,
    settings: &[(BlochVector, BlochVector)],
    samples: usize,
    master_seed: u64,
    smoothing: Smoothing,
) -> Result<SweepSummary, StatsError> {
    if settings.is_empty() {
        return Err(StatsError::EmptySweep);
    }
    let per_setting = settings
        .iter()
        .map(|(a, b)| sweep_setting(protocol, state, a, b, samples, master_seed, smoothing))
        .collect::<Result<Vec<_>, _>>()?;
    SweepSummary::from_reports(per_setting, smoothing)
}

/// `count` uniform measurement direction pairs from the reserved stream of
/// `master_seed`. The default sweep grid: random pairs avoid the artifacts
/// of a regular grid.
pub fn random_settings(count: usize, master_seed: u64) -> Vec<(BlochVector, BlochVector)> {
    let mut rng = stream::stream_rng(master_seed, stream::RESERVED_STREAM);
    (0..count)
        .map(|_| {
            let s = sample_lhv(&mut rng);
            (s.lambda1, s.lambda2)
        })
        .collect()
}
