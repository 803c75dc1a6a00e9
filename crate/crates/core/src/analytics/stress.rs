//! Abiotic-stress classification from VPD and stem-diameter trends.
//!
//! Water stress: stem shrinking while VPD climbs. Salinity stress: stem
//! shrinking while VPD falls. Healthy: stem not shrinking and VPD flat.
//! Thresholds are configurable; the defaults leave margin around the
//! ±0.01 mm/day diameter trends seen in field data.

use crate::stats::{diurnal_trend, linear_trend};
use crate::{Error, Result, TimeSeries, Unit, SECONDS_PER_DAY};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum StressClass {
    Healthy,
    WaterStress,
    SalinityStress,
    Indeterminate,
}

impl StressClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StressClass::Healthy => "HEALTHY",
            StressClass::WaterStress => "WATER_STRESS",
            StressClass::SalinityStress => "SALINITY_STRESS",
            StressClass::Indeterminate => "INDETERMINATE",
        }
    }
}

/// How the VPD slope is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TrendModel {
    /// Plain least-squares line.
    #[default]
    Linear,
    /// Line plus a 24 h harmonic, for sparse readings of a diurnal signal.
    Diurnal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct ClassifyConfig {
    /// s
    pub vpd_window: f64,
    /// s
    pub dia_window: f64,
    /// kPa/day
    pub vpd_threshold: f64,
    /// mm/day
    pub dia_threshold: f64,
    pub vpd_trend: TrendModel,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            vpd_window: 3.0 * SECONDS_PER_DAY,
            dia_window: 7.0 * SECONDS_PER_DAY,
            vpd_threshold: 0.02,
            dia_threshold: 0.003,
            vpd_trend: TrendModel::Linear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrendEvidence {
    /// kPa/day
    pub vpd_slope: f64,
    /// mm/day
    pub diameter_slope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressLabel {
    pub label: StressClass,
    pub evidence: TrendEvidence,
}

fn covered(series: &TimeSeries, window: f64) -> Result<()> {
    let span = match (series.first_time(), series.last_time()) {
        (Some(a), Some(b)) => b - a,
        _ => {
            return Err(Error::InsufficientData {
                needed: 2,
                got: series.len(),
            })
        }
    };
    if span < window {
        return Err(Error::WindowNotCovered { span, window });
    }
    Ok(())
}

pub fn classify_stress(vpd: &TimeSeries, diameter: &TimeSeries, cfg: &ClassifyConfig) -> Result<StressLabel> {
    let to_mm = match diameter.unit() {
        Unit::Millimetre => 1.0,
        Unit::Metre => 1e3,
        _ => return Err(Error::InvalidConfig("diameter series must be in m or mm")),
    };
    covered(vpd, cfg.vpd_window)?;
    covered(diameter, cfg.dia_window)?;
    let vpd_slope = match cfg.vpd_trend {
        TrendModel::Linear => linear_trend(vpd, cfg.vpd_window)?,
        TrendModel::Diurnal => diurnal_trend(vpd, cfg.vpd_window)?,
    };
    let diameter_slope = linear_trend(diameter, cfg.dia_window)? * to_mm;

    let shrinking = diameter_slope < -cfg.dia_threshold;
    let label = if shrinking && vpd_slope > cfg.vpd_threshold {
        StressClass::WaterStress
    } else if shrinking && vpd_slope < -cfg.vpd_threshold {
        StressClass::SalinityStress
    } else if !shrinking && vpd_slope.abs() <= cfg.vpd_threshold {
        StressClass::Healthy
    } else {
        StressClass::Indeterminate
    };
    Ok(StressLabel {
        label,
        evidence: TrendEvidence {
            vpd_slope,
            diameter_slope,
        },
    })
}
