use crate::units::check_rh;
use crate::{Error, Result};

/// Saturation vapor pressure over water, kPa, at `t` °C (Tetens form with
/// base-10 exponent).
pub fn saturation_vapor_pressure(t: f64) -> f64 {
    0.6107 * libm::pow(10.0, 7.5 * t / (237.3 + t))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VpdInputs {
    /// Temperature beneath the leaf, °C.
    pub leaf_temp: f64,
    /// Open-air temperature, °C.
    pub air_temp: f64,
    /// Open-air relative humidity, %RH.
    pub air_rh: f64,
}

/// All pressures in kPa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VpdResult {
    pub vp_sat: f64,
    pub vp_air: f64,
    pub vpd: f64,
}

impl VpdResult {
    /// Air warmer and humid enough to out-pressure the leaf.
    pub fn is_negative(&self) -> bool {
        self.vpd < 0.0
    }
}

const TEMP_WINDOW: (f64, f64) = (-20.0, 60.0);

pub fn vapor_pressures(inp: &VpdInputs) -> Result<VpdResult> {
    for (t, name) in [(inp.leaf_temp, "leaf_temp"), (inp.air_temp, "air_temp")] {
        if !t.is_finite() {
            return Err(Error::NonFinite);
        }
        if t < TEMP_WINDOW.0 || t > TEMP_WINDOW.1 {
            return Err(Error::SanityRange(name));
        }
    }
    let rh = check_rh(inp.air_rh)?;
    let vp_sat = saturation_vapor_pressure(inp.leaf_temp);
    let vp_air = saturation_vapor_pressure(inp.air_temp) * (rh / 100.0);
    Ok(VpdResult {
        vp_sat,
        vp_air,
        vpd: vp_sat - vp_air,
    })
}
