//! Response of flat and kirigami strain sensors to an off-axis mechanical
//! disturbance (an insect landing on the sensor, say).
//!
//! Both sensors are first-order lags on the applied relative-resistance
//! stimulus. The kirigami cut pattern spreads the load over several paths,
//! which shows up as a smaller peak and a slower rise.

use alloc::vec::Vec;

use crate::{Error, Result, TimeSeries, Unit};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisturbanceShape {
    Step,
    Pulse,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisturbanceEvent {
    /// s
    pub onset: f64,
    /// s
    pub duration: f64,
    /// ΔR/R₀ a flat sensor would settle at.
    pub magnitude: f64,
    pub shape: DisturbanceShape,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisturbanceResponse {
    /// Flat-sensor time constant, s.
    pub time_constant: f64,
    /// Kirigami peak relative to flat.
    pub attenuation: f64,
    /// Kirigami time constant relative to flat.
    pub rise_multiplier: f64,
    /// s
    pub sample_period: f64,
}

impl Default for DisturbanceResponse {
    fn default() -> Self {
        DisturbanceResponse {
            time_constant: 0.007,
            attenuation: 0.5,
            rise_multiplier: 2.0,
            sample_period: 0.001,
        }
    }
}

pub fn simulate_disturbance(
    kirigami: bool,
    ev: &DisturbanceEvent,
    resp: &DisturbanceResponse,
) -> Result<TimeSeries> {
    if !(ev.duration > 0.0) {
        return Err(Error::NonPositive("disturbance duration"));
    }
    if !ev.magnitude.is_finite() || !ev.onset.is_finite() {
        return Err(Error::NonFinite);
    }
    if !(resp.time_constant > 0.0 && resp.sample_period > 0.0 && resp.rise_multiplier > 0.0) {
        return Err(Error::InvalidConfig("response time constants must be positive"));
    }
    let (gain, tau) = if kirigami {
        (resp.attenuation, resp.time_constant * resp.rise_multiplier)
    } else {
        (1.0, resp.time_constant)
    };
    let target = gain * ev.magnitude;
    let off = ev.onset + ev.duration;
    let end = off + 8.0 * tau;
    let level_at_off = target * (1.0 - libm::exp(-ev.duration / tau));

    let n = libm::floor(end / resp.sample_period) as usize + 1;
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = k as f64 * resp.sample_period;
            let y = if t < ev.onset {
                0.0
            } else if t < off || ev.shape == DisturbanceShape::Step {
                target * (1.0 - libm::exp(-(t - ev.onset) / tau))
            } else {
                level_at_off * libm::exp(-(t - off) / tau)
            };
            (t, y)
        })
        .collect();
    TimeSeries::from_samples("disturbance", Unit::RelResistance, samples)
}

/// Largest |value| in the series.
pub fn peak_magnitude(series: &TimeSeries) -> f64 {
    series.values().iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// 10 %–90 % rise time of |value| toward its peak; `None` for a flat series.
pub fn rise_time(series: &TimeSeries) -> Option<f64> {
    let peak = peak_magnitude(series);
    if peak == 0.0 {
        return None;
    }
    let cross = |level: f64| {
        series
            .iter()
            .find(|(_, v)| v.abs() >= level * peak)
            .map(|(t, _)| t)
    };
    Some(cross(0.9)? - cross(0.1)?)
}
