//! Moist-electric generator as a humidity-dependent Thévenin source.
//!
//! Open-circuit voltage comes from a calibration table against relative
//! humidity, optionally scaled by a saturating membrane-thickness gain. The
//! internal resistance is constant and RH-independent; 20 Ω is the load at
//! which delivered power peaked during characterization.
//!
//! The default Voc table is synthesized from the 4.2 mV/%RH sensitivity with
//! an anchor of [`DEFAULT_VOC_ANCHOR`] volts at 30 %RH. Absolute Voc values
//! were never published, so the anchor is a placeholder to be replaced with
//! measured data.

use alloc::vec::Vec;

use crate::units::check_rh;
use crate::{CalibrationTable, Direction, Error, Extrapolation, Result, Unit};

/// Humidity sensitivity of the MEG terminal voltage, V per %RH.
pub const HUMIDITY_SENSITIVITY: f64 = 4.2e-3;
/// Synthesized Voc at 30 %RH (not a measured value).
pub const DEFAULT_VOC_ANCHOR: f64 = 0.2;
pub const DEFAULT_INTERNAL_RESISTANCE: f64 = 20.0;
/// 5 mm diameter disc, m².
pub const DEFAULT_ACTIVE_AREA: f64 = core::f64::consts::PI * 2.5e-3 * 2.5e-3;
/// Molar mass of water, g/mol.
pub const MOLAR_MASS_WATER: f64 = 18.015;
/// Heat of evaporation of water, J/mol.
pub const HEAT_OF_EVAPORATION: f64 = 44_000.0;

/// Default Voc(RH): a 4.2 mV/%RH line anchored at 30 %RH, knots every 10 %RH
/// over 0–100 %RH.
pub fn default_voc_table(anchor: f64, extrapolation: Extrapolation) -> CalibrationTable {
    let knots: Vec<f64> = (0..=10).map(|i| i as f64 * 10.0).collect();
    CalibrationTable::from_sensitivity(HUMIDITY_SENSITIVITY, 30.0, anchor, &knots, extrapolation)
        .expect("positive slope line is strictly monotone")
        .with_units(Unit::PercentRh, Unit::Volt)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MegConfig {
    pub voc_vs_rh: CalibrationTable,
    /// Ω
    pub internal_resistance: f64,
    /// m; only meaningful relative to the axis of `thickness_gain`.
    pub membrane_thickness: f64,
    /// Dimensionless gain vs thickness, saturating at 1. `None` means the
    /// membrane is at its optimal thickness (gain 1).
    pub thickness_gain: Option<CalibrationTable>,
    /// m²
    pub active_area: f64,
    pub converter_efficiency: f64,
}

impl Default for MegConfig {
    fn default() -> Self {
        MegConfig {
            voc_vs_rh: default_voc_table(DEFAULT_VOC_ANCHOR, Extrapolation::Clamp),
            internal_resistance: DEFAULT_INTERNAL_RESISTANCE,
            membrane_thickness: 0.0,
            thickness_gain: None,
            active_area: DEFAULT_ACTIVE_AREA,
            converter_efficiency: 0.8,
        }
    }
}

impl MegConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.internal_resistance > 0.0) {
            return Err(Error::NonPositive("internal_resistance"));
        }
        if !(self.active_area > 0.0) {
            return Err(Error::NonPositive("active_area"));
        }
        if !(self.converter_efficiency > 0.0 && self.converter_efficiency <= 1.0) {
            return Err(Error::InvalidConfig("converter_efficiency must be in (0, 1]"));
        }
        if let Some(gain) = &self.thickness_gain {
            if gain.direction() != Direction::Increasing {
                return Err(Error::InvalidConfig("thickness_gain must be non-decreasing"));
            }
            let (lo, hi) = gain.range();
            if lo < 0.0 || hi > 1.0 + 1e-12 {
                return Err(Error::InvalidConfig("thickness_gain must lie in [0, 1]"));
            }
        }
        Ok(())
    }

    fn thickness_factor(&self) -> Result<f64> {
        match &self.thickness_gain {
            None => Ok(1.0),
            // saturation plateau: clamp past the last knot
            Some(gain) => gain
                .clone()
                .with_extrapolation(Extrapolation::Clamp)
                .eval(self.membrane_thickness),
        }
    }
}

pub fn open_circuit_voltage(cfg: &MegConfig, rh: f64) -> Result<f64> {
    let rh = check_rh(rh)?;
    Ok(cfg.voc_vs_rh.eval(rh)? * cfg.thickness_factor()?)
}

/// A point on the source's load line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadPoint {
    pub load_resistance: f64,
    pub voltage: f64,
    pub current: f64,
    pub power: f64,
}

/// Thévenin division of `voc` across `load` (may be `f64::INFINITY`).
pub fn load_point(voc: f64, internal_resistance: f64, load: f64) -> LoadPoint {
    let (voltage, current) = if load.is_infinite() {
        (voc, 0.0)
    } else {
        let total = load + internal_resistance;
        (voc * load / total, voc / total)
    };
    LoadPoint {
        load_resistance: load,
        voltage,
        current,
        power: voltage * current,
    }
}

pub fn operating_point(cfg: &MegConfig, rh: f64, load: f64) -> Result<LoadPoint> {
    if !(load >= 0.0) {
        return Err(Error::InvalidConfig("load resistance must be >= 0"));
    }
    let voc = open_circuit_voltage(cfg, rh)?;
    Ok(load_point(voc, cfg.internal_resistance, load))
}

/// Power into a matched load, `Voc² / (4·R_int)`.
pub fn matched_power(voc: f64, internal_resistance: f64) -> f64 {
    voc * voc / (4.0 * internal_resistance)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxPowerPoint {
    pub load_resistance: f64,
    pub power: f64,
}

/// Grid search for the load maximizing delivered power. Ties go to the
/// smaller resistance.
pub fn find_mpp(cfg: &MegConfig, rh: f64, load_grid: &[f64]) -> Result<MaxPowerPoint> {
    if load_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if load_grid.iter().any(|&r| !(r > 0.0) || !r.is_finite()) {
        return Err(Error::NonPositive("load grid resistance"));
    }
    let voc = open_circuit_voltage(cfg, rh)?;
    let mut best: Option<MaxPowerPoint> = None;
    for &r in load_grid {
        let p = load_point(voc, cfg.internal_resistance, r).power;
        let better = match best {
            None => true,
            Some(b) => p > b.power || (p == b.power && r < b.load_resistance),
        };
        if better {
            best = Some(MaxPowerPoint {
                load_resistance: r,
                power: p,
            });
        }
    }
    Ok(best.expect("grid is non-empty"))
}

/// Power per active area, W/m².
pub fn power_density(power: f64, cfg: &MegConfig) -> Result<f64> {
    if !(power >= 0.0) {
        return Err(Error::InvalidConfig("power must be >= 0"));
    }
    Ok(power / cfg.active_area)
}

pub fn w_per_m2_to_uw_per_cm2(density: f64) -> f64 {
    // 1 W/m² = 1e6 µW / 1e4 cm²
    density * 100.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyInputs {
    /// J
    pub output_energy: f64,
    /// g
    pub evaporated_mass: f64,
    /// g/mol
    pub molar_mass_water: f64,
    /// J/mol
    pub heat_of_evaporation: f64,
}

impl EfficiencyInputs {
    pub fn new(output_energy: f64, evaporated_mass: f64) -> Self {
        EfficiencyInputs {
            output_energy,
            evaporated_mass,
            molar_mass_water: MOLAR_MASS_WATER,
            heat_of_evaporation: HEAT_OF_EVAPORATION,
        }
    }

    fn check(&self) -> Result<()> {
        let fields = [
            (self.output_energy, "output_energy"),
            (self.evaporated_mass, "evaporated_mass"),
            (self.molar_mass_water, "molar_mass_water"),
            (self.heat_of_evaporation, "heat_of_evaporation"),
        ];
        for (v, name) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::NonPositive(name));
            }
        }
        Ok(())
    }

    /// Latent heat carried off by the evaporated water, J.
    pub fn input_energy(&self) -> Result<f64> {
        self.check()?;
        Ok(self.evaporated_mass / self.molar_mass_water * self.heat_of_evaporation)
    }
}

pub fn evaporation_efficiency(inp: &EfficiencyInputs) -> Result<f64> {
    Ok(inp.output_energy / inp.input_energy()?)
}
