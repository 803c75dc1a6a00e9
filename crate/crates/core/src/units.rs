//! Unit tags carried by every channel and calibration axis.
//!
//! Internal computation is in base units: °C, %RH, kPa, V, A, Ω, F, W, J,
//! m, s, degrees. Millimetres are accepted at I/O boundaries only and must be
//! tagged as such.

use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Unit {
    Celsius,
    PercentRh,
    Kilopascal,
    Volt,
    Ampere,
    Ohm,
    Farad,
    Watt,
    Joule,
    Metre,
    Millimetre,
    Second,
    Hertz,
    Degree,
    /// Dimensionless strain fraction.
    Strain,
    /// ΔR/R₀.
    RelResistance,
    /// Dimensionless gain or ratio.
    Ratio,
    /// ADC output code.
    Count,
}

impl Unit {
    pub const ALL: [Unit; 18] = [
        Unit::Celsius,
        Unit::PercentRh,
        Unit::Kilopascal,
        Unit::Volt,
        Unit::Ampere,
        Unit::Ohm,
        Unit::Farad,
        Unit::Watt,
        Unit::Joule,
        Unit::Metre,
        Unit::Millimetre,
        Unit::Second,
        Unit::Hertz,
        Unit::Degree,
        Unit::Strain,
        Unit::RelResistance,
        Unit::Ratio,
        Unit::Count,
    ];

    pub const fn as_str(self) -> &'static str {
        match self {
            Unit::Celsius => "degC",
            Unit::PercentRh => "pct_rh",
            Unit::Kilopascal => "kPa",
            Unit::Volt => "V",
            Unit::Ampere => "A",
            Unit::Ohm => "ohm",
            Unit::Farad => "F",
            Unit::Watt => "W",
            Unit::Joule => "J",
            Unit::Metre => "m",
            Unit::Millimetre => "mm",
            Unit::Second => "s",
            Unit::Hertz => "Hz",
            Unit::Degree => "deg",
            Unit::Strain => "strain",
            Unit::RelResistance => "rel_resistance",
            Unit::Ratio => "ratio",
            Unit::Count => "count",
        }
    }

    /// Factor converting a value in this unit to its internal base unit.
    /// Only length has a non-trivial factor.
    pub const fn to_base(self) -> f64 {
        match self {
            Unit::Millimetre => 1e-3,
            _ => 1.0,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownUnit;

impl fmt::Display for UnknownUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown unit tag")
    }
}

impl FromStr for Unit {
    type Err = UnknownUnit;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        Unit::ALL
            .iter()
            .copied()
            .find(|u| u.as_str().eq_ignore_ascii_case(s))
            .ok_or(UnknownUnit)
    }
}

/// Rejects relative humidity outside [0, 100] %RH instead of clipping it.
pub fn check_rh(rh: f64) -> Result<f64> {
    if !rh.is_finite() {
        return Err(Error::NonFinite);
    }
    if !(0.0..=100.0).contains(&rh) {
        return Err(Error::InvalidHumidity(rh));
    }
    Ok(rh)
}

pub fn mm_to_m(mm: f64) -> f64 {
    mm * 1e-3
}

pub fn m_to_mm(m: f64) -> f64 {
    m * 1e3
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_parse_back() {
        for u in Unit::ALL {
            assert_eq!(u.as_str().parse::<Unit>(), Ok(u));
        }
        assert!("furlong".parse::<Unit>().is_err());
    }

    #[test]
    fn humidity_outside_domain_is_rejected() {
        assert_eq!(check_rh(100.0), Ok(100.0));
        assert_eq!(check_rh(0.0), Ok(0.0));
        assert_eq!(check_rh(100.5), Err(Error::InvalidHumidity(100.5)));
        assert_eq!(check_rh(-1.0), Err(Error::InvalidHumidity(-1.0)));
        assert_eq!(check_rh(f64::NAN), Err(Error::NonFinite));
    }
}
