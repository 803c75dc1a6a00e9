//! Disturbance rejection for relative-resistance series.
//!
//! A centred rolling median is the baseline. Samples whose residual exceeds
//! `max(k_mad·1.4826·MAD, min_threshold)` are grouped into contiguous runs.
//! Runs no longer than `max_pulse_duration` are transient disturbances and are
//! replaced by the baseline; longer runs are kept as genuine shifts. The
//! median window shrinks symmetrically at the series ends, so a monotone
//! series is its own baseline and a step change is absorbed without being
//! flagged.

use alloc::vec::Vec;

use crate::stats::{mad, median_in_place};
use crate::{Error, Result, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct BaselineConfig {
    /// Rolling-median window, samples.
    pub window: usize,
    pub k_mad: f64,
    /// s
    pub max_pulse_duration: f64,
    /// Floor on the rejection threshold, in series units.
    pub min_threshold: f64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        BaselineConfig {
            window: 60,
            k_mad: 5.0,
            max_pulse_duration: 120.0,
            min_threshold: 0.005,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Disturbance,
    Shift,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Disturbance => "DISTURBANCE",
            EventKind::Shift => "SHIFT",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectedEvent {
    pub onset: f64,
    pub duration: f64,
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineCorrection {
    pub corrected: TimeSeries,
    pub baseline: TimeSeries,
    pub events: Vec<DetectedEvent>,
}

fn rolling_median(values: &[f64], half: usize) -> Vec<f64> {
    let n = values.len();
    let mut buf = Vec::with_capacity(2 * half + 1);
    (0..n)
        .map(|i| {
            let h = half.min(i).min(n - 1 - i);
            buf.clear();
            buf.extend_from_slice(&values[i - h..=i + h]);
            median_in_place(&mut buf)
        })
        .collect()
}

pub fn baseline_correct(series: &TimeSeries, cfg: &BaselineConfig) -> Result<BaselineCorrection> {
    if cfg.window < 3 {
        return Err(Error::InvalidConfig("baseline window must be >= 3 samples"));
    }
    let n = series.len();
    if n < cfg.window {
        return Err(Error::InsufficientData {
            needed: cfg.window,
            got: n,
        });
    }
    let values = series.values();
    let times = series.times();
    let baseline = rolling_median(values, cfg.window / 2);
    let residuals: Vec<f64> = values.iter().zip(&baseline).map(|(x, m)| x - m).collect();
    let scale = 1.4826 * mad(&residuals).unwrap_or(0.0);
    let threshold = (cfg.k_mad * scale).max(cfg.min_threshold);
    let period = series.median_spacing().unwrap_or(0.0);

    let mut corrected = values.to_vec();
    let mut events = Vec::new();
    let mut i = 0;
    while i < n {
        if residuals[i].abs() <= threshold {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && residuals[i].abs() > threshold {
            i += 1;
        }
        let onset = times[start];
        let duration = times[i - 1] - onset + period;
        let kind = if duration <= cfg.max_pulse_duration {
            corrected[start..i].copy_from_slice(&baseline[start..i]);
            EventKind::Disturbance
        } else {
            EventKind::Shift
        };
        events.push(DetectedEvent {
            onset,
            duration,
            kind,
        });
    }

    Ok(BaselineCorrection {
        corrected: TimeSeries::new(series.channel(), series.unit(), times.to_vec(), corrected)?,
        baseline: TimeSeries::new(series.channel(), series.unit(), times.to_vec(), baseline)?,
        events,
    })
}
