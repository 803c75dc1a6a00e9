//! Forward (stimulus → signal → code) and inverse (code → stimulus) models
//! for the leaf temperature sensor, the MEG used as a humidity sensor, and the
//! voltage-divider / SAR ADC readout.

use alloc::vec::Vec;

use crate::meg::{default_voc_table, DEFAULT_VOC_ANCHOR};
use crate::units::check_rh;
use crate::{CalibrationTable, Direction, Error, Extrapolation, Result, TimeSeries, Unit};

/// Linear negative-temperature-coefficient resistor,
/// `R = r0·(1 + alpha·(t − t_ref))`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct TempSensorModel {
    /// Ω at `t_ref`. Only ratios matter for inversion.
    pub r0: f64,
    /// °C
    pub t_ref: f64,
    /// 1/°C, negative.
    pub alpha: f64,
    /// Calibrated range, °C.
    pub range_min: f64,
    pub range_max: f64,
    /// Relative band of the direction-dependent hysteresis.
    pub hysteresis_band: f64,
}

impl Default for TempSensorModel {
    fn default() -> Self {
        TempSensorModel {
            r0: 10_000.0,
            t_ref: 25.0,
            alpha: -0.0102,
            range_min: 15.0,
            range_max: 60.0,
            hysteresis_band: 0.0005,
        }
    }
}

impl TempSensorModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha < 0.0) {
            return Err(Error::InvalidConfig("alpha must be negative"));
        }
        if !(self.r0 > 0.0) {
            return Err(Error::NonPositive("r0"));
        }
        if !(self.range_min < self.range_max) {
            return Err(Error::InvalidConfig("range_min must be below range_max"));
        }
        // resistance must stay positive over the range
        if 1.0 + self.alpha * (self.range_max - self.t_ref) <= 0.0 {
            return Err(Error::InvalidConfig(
                "alpha drives resistance negative within range",
            ));
        }
        Ok(())
    }

    fn linear(&self, t: f64) -> f64 {
        self.r0 * (1.0 + self.alpha * (t - self.t_ref))
    }
}

pub fn temp_to_resistance(m: &TempSensorModel, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }
    if t < m.range_min || t > m.range_max {
        return Err(Error::TemperatureRange {
            value: t,
            min: m.range_min,
            max: m.range_max,
        });
    }
    Ok(m.linear(t))
}

pub fn resistance_to_temp(m: &TempSensorModel, r: f64) -> Result<f64> {
    if !r.is_finite() {
        return Err(Error::NonFinite);
    }
    let (r_min, r_max) = (m.linear(m.range_max), m.linear(m.range_min));
    let slack = 1e-12 * r_max;
    if r < r_min - slack || r > r_max + slack {
        return Err(Error::ResistanceRange {
            value: r,
            min: r_min,
            max: r_max,
        });
    }
    Ok(m.t_ref + (r / m.r0 - 1.0) / m.alpha)
}

/// Resistance along a temperature trajectory with a direction-dependent
/// band: `R(t)·(1 − band·sign(dT/dt))`. Holding temperature returns the
/// static curve, so any excursion that ends with a hold closes exactly.
pub fn hysteresis_envelope(m: &TempSensorModel, trajectory: &TimeSeries) -> Result<TimeSeries> {
    let mut out = Vec::with_capacity(trajectory.len());
    let mut prev: Option<f64> = None;
    for (t, temp) in trajectory.iter() {
        let r = temp_to_resistance(m, temp)?;
        let direction = match prev {
            Some(p) if temp > p => 1.0,
            Some(p) if temp < p => -1.0,
            _ => 0.0,
        };
        out.push((t, r * (1.0 - m.hysteresis_band * direction)));
        prev = Some(temp);
    }
    TimeSeries::from_samples(trajectory.channel(), Unit::Ohm, out)
}

/// MEG terminal voltage against humidity, with a linear temperature
/// correction of the derived humidity.
#[derive(Debug, Clone, PartialEq)]
pub struct HumiditySensorModel {
    pub curve: CalibrationTable,
    /// %RH per °C; 0 disables the correction.
    pub temp_coefficient: f64,
    /// °C
    pub t_reference: f64,
}

impl Default for HumiditySensorModel {
    fn default() -> Self {
        HumiditySensorModel {
            curve: default_voc_table(DEFAULT_VOC_ANCHOR, Extrapolation::Error),
            temp_coefficient: 0.0,
            t_reference: 25.0,
        }
    }
}

impl HumiditySensorModel {
    pub fn validate(&self) -> Result<()> {
        if self.curve.direction() != Direction::Increasing {
            return Err(Error::InvalidConfig("humidity curve must be increasing"));
        }
        Ok(())
    }

    /// Terminal voltage the sensor shows for a true humidity at a given leaf
    /// temperature (the exact inverse of [`rh_from_meg_voltage`]).
    pub fn voltage_for(&self, rh: f64, leaf_temp: f64) -> Result<f64> {
        let rh = check_rh(rh)?;
        let raw = rh - self.temp_coefficient * (leaf_temp - self.t_reference);
        self.curve.eval(raw)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhReading {
    /// Corrected humidity, clamped to [0, 100] when `clamped` is set.
    pub rh: f64,
    /// Humidity from the curve before temperature correction.
    pub raw_rh: f64,
    pub clamped: bool,
}

pub fn rh_from_meg_voltage(m: &HumiditySensorModel, v: f64, leaf_temp: f64) -> Result<RhReading> {
    let raw_rh = m.curve.invert(v)?;
    let corrected = raw_rh + m.temp_coefficient * (leaf_temp - m.t_reference);
    let rh = corrected.clamp(0.0, 100.0);
    Ok(RhReading {
        rh,
        raw_rh,
        clamped: rh != corrected,
    })
}

/// SAR ADC behind a resistive divider. The sensed resistor sits between the
/// ADC node and ground; `divider_fixed_resistor` connects the node to the
/// source voltage.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct AdcModel {
    pub bits: u32,
    /// V
    pub vref: f64,
    /// Ω
    pub divider_fixed_resistor: f64,
}

impl Default for AdcModel {
    fn default() -> Self {
        AdcModel {
            bits: 12,
            vref: 3.3,
            divider_fixed_resistor: 10_000.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdcSample {
    pub code: u64,
    /// Input was outside [0, vref] and was clamped.
    pub clamped: bool,
}

impl AdcModel {
    pub fn validate(&self) -> Result<()> {
        if !(1..=48).contains(&self.bits) {
            return Err(Error::InvalidConfig("bits must be in 1..=48"));
        }
        if !(self.vref > 0.0) {
            return Err(Error::NonPositive("vref"));
        }
        if !(self.divider_fixed_resistor > 0.0) {
            return Err(Error::NonPositive("divider_fixed_resistor"));
        }
        Ok(())
    }

    pub fn full_scale(&self) -> u64 {
        (1u64 << self.bits) - 1
    }

    /// Volts per code step.
    pub fn lsb(&self) -> f64 {
        self.vref / self.full_scale() as f64
    }

    pub fn code_to_voltage(&self, code: u64) -> f64 {
        code.min(self.full_scale()) as f64 * self.vref / self.full_scale() as f64
    }

    /// Node voltage of the divider for a sensed resistance.
    pub fn divider_voltage(&self, r_sense: f64, source: f64) -> f64 {
        source * r_sense / (r_sense + self.divider_fixed_resistor)
    }
}

/// Quantizes `v` with round-half-away-from-zero.
pub fn adc_read(a: &AdcModel, v: f64) -> AdcSample {
    let fs = a.full_scale() as f64;
    let clamped = !(0.0..=a.vref).contains(&v);
    let v = if v.is_nan() { 0.0 } else { v.clamp(0.0, a.vref) };
    let code = libm::round(v / a.vref * fs).clamp(0.0, fs) as u64;
    AdcSample { code, clamped }
}

/// Sensed resistance reconstructed from a divider code,
/// `R = R_fixed·v / (source − v)`.
pub fn divider_resistance(a: &AdcModel, code: u64, source: f64) -> Result<f64> {
    let v = a.code_to_voltage(code);
    if v >= source {
        return Err(Error::DividerSaturated { v, source_v: source });
    }
    Ok(a.divider_fixed_resistor * v / (source - v))
}
