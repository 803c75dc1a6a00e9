//! Water-translocation lag between humidity channels at two heights.
//!
//! After watering, the lower leaf's humidity rises first and the upper leaf
//! follows. The lag is the shift maximizing the correlation between the two
//! channels, each linearly detrended over the overlap at that shift, with the
//! upper channel delayed relative to the lower one. The equalization time is
//! how long after watering the channels, once they have diverged, come back
//! within tolerance and stay there.

use alloc::vec::Vec;

use crate::stats::detrend;
use crate::{Error, Result, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct LagConfig {
    /// Largest lag searched, s.
    pub max_lag: f64,
    /// |lower − upper| counted as equal, %RH.
    pub equal_tol: f64,
    /// Consecutive samples that must stay within tolerance.
    pub sustain: usize,
    /// Watering time, s; defaults to the start of the common span.
    pub watering_time: Option<f64>,
}

impl Default for LagConfig {
    fn default() -> Self {
        LagConfig {
            max_lag: 6.0 * 3600.0,
            equal_tol: 1.0,
            sustain: 3,
            watering_time: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagResult {
    /// Upper channel delay, s.
    pub lag: f64,
    /// Time from watering until the channels re-equalize, s.
    pub equalization_time: f64,
}

/// Both channels on one uniform grid covering their common span, spaced at
/// the lower channel's median sample period.
fn common_grid(lower: &TimeSeries, upper: &TimeSeries) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let too_short = |s: &TimeSeries| Error::InsufficientData {
        needed: 3,
        got: s.len(),
    };
    if lower.len() < 3 {
        return Err(too_short(lower));
    }
    if upper.len() < 3 {
        return Err(too_short(upper));
    }
    if lower.times() == upper.times() {
        return Ok((
            lower.times().to_vec(),
            lower.values().to_vec(),
            upper.values().to_vec(),
        ));
    }
    let dt = lower.median_spacing().unwrap_or(1.0);
    let start = lower.times()[0].max(upper.times()[0]);
    let end = lower
        .last_time()
        .unwrap_or(0.0)
        .min(upper.last_time().unwrap_or(0.0));
    if end <= start {
        return Err(Error::InsufficientData { needed: 3, got: 0 });
    }
    let n = libm::floor((end - start) / dt + 1e-9) as usize + 1;
    let times: Vec<f64> = (0..n).map(|k| start + k as f64 * dt).collect();
    let at = |s: &TimeSeries| times.iter().map(|&t| s.value_at(t).unwrap_or(0.0)).collect();
    let (l, u) = (at(lower), at(upper));
    Ok((times, l, u))
}

fn detrended_correlation(a: &[f64], b: &[f64]) -> Option<f64> {
    let idx: Vec<f64> = (0..a.len()).map(|i| i as f64).collect();
    let ra = detrend(&idx, a);
    let rb = detrend(&idx, b);
    let (mut ab, mut aa, mut bb) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        ab += x * y;
        aa += x * x;
        bb += y * y;
    }
    let scale = a.iter().chain(b).fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let floor = 1e-24 * scale * scale * a.len() as f64;
    if aa <= floor || bb <= floor {
        return None;
    }
    Some(ab / libm::sqrt(aa * bb))
}

fn equalization(times: &[f64], lower: &[f64], upper: &[f64], cfg: &LagConfig) -> Result<f64> {
    let marker = cfg.watering_time.unwrap_or(times[0]);
    let start = times.partition_point(|&t| t < marker);
    let within: Vec<bool> = lower
        .iter()
        .zip(upper)
        .map(|(l, u)| (l - u).abs() <= cfg.equal_tol)
        .collect();
    let Some(diverged) = (start..within.len()).find(|&i| !within[i]) else {
        return Ok(0.0);
    };
    let sustain = cfg.sustain.max(1);
    (diverged..within.len())
        .find(|&i| i + sustain <= within.len() && within[i..i + sustain].iter().all(|&w| w))
        .map(|i| times[i] - marker)
        .ok_or(Error::NoEqualization)
}

pub fn translocation_lag(lower: &TimeSeries, upper: &TimeSeries, cfg: &LagConfig) -> Result<LagResult> {
    if !(cfg.max_lag >= 0.0) {
        return Err(Error::InvalidConfig("max_lag must be >= 0"));
    }
    let (times, l, u) = common_grid(lower, upper)?;
    let equalization_time = equalization(&times, &l, &u, cfg)?;

    let n = times.len();
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    let max_k = (libm::floor(cfg.max_lag / dt + 1e-9) as usize).min(n.saturating_sub(3));
    let mut best: Option<(usize, f64)> = None;
    for k in 0..=max_k {
        let Some(c) = detrended_correlation(&l[..n - k], &u[k..]) else {
            continue;
        };
        if best.is_none_or(|(_, b)| c > b) {
            best = Some((k, c));
        }
    }
    let (k, _) = best.ok_or(Error::ZeroVariance)?;
    Ok(LagResult {
        lag: k as f64 * dt,
        equalization_time,
    })
}
