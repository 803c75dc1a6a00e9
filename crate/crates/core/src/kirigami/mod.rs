//! Kirigami strain sensor: piecewise gauge-factor model, wrap geometry and
//! the inverse pipeline from relative resistance to stem diameter.
//!
//! Two routes describe the same wrap. With a fixed arc length `S`, the
//! curvature angle `θ` gives `r = 360·S / (2π·θ)`; with film thickness `t`,
//! the bending strain gives `r_b = t / (2·ε)`. The diameter pipeline uses the
//! bending-strain route because the bending response is what gets
//! calibrated.

mod baseline;
mod disturbance;

pub use baseline::{baseline_correct, BaselineConfig, BaselineCorrection, DetectedEvent, EventKind};
pub use disturbance::{
    peak_magnitude, rise_time, simulate_disturbance, DisturbanceEvent, DisturbanceResponse, DisturbanceShape,
};

use alloc::vec::Vec;

use crate::{CalibrationTable, Error, Extrapolation, Result, Unit};

/// Relative resistance vs strain with a steeper low-strain regime. Above the
/// knee, `gf_high` is the incremental slope, which keeps the map continuous.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct GaugeModel {
    pub gf_low: f64,
    pub gf_high: f64,
    pub knee_strain: f64,
    pub max_strain: f64,
    /// Unstrained resistance, Ω.
    pub r_baseline: f64,
}

impl Default for GaugeModel {
    fn default() -> Self {
        GaugeModel {
            gf_low: 1.5,
            gf_high: 0.6,
            knee_strain: 0.5,
            max_strain: 2.5,
            r_baseline: 10_000.0,
        }
    }
}

impl GaugeModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.gf_low > self.gf_high && self.gf_high > 0.0) {
            return Err(Error::InvalidConfig("need gf_low > gf_high > 0"));
        }
        if !(0.0 < self.knee_strain && self.knee_strain < self.max_strain) {
            return Err(Error::InvalidConfig("need 0 < knee_strain < max_strain"));
        }
        if !(self.r_baseline > 0.0) {
            return Err(Error::NonPositive("r_baseline"));
        }
        Ok(())
    }

    fn at_knee(&self) -> f64 {
        self.gf_low * self.knee_strain
    }

    /// ΔR/R₀ at `max_strain`.
    pub fn max_rel_resistance(&self) -> f64 {
        self.at_knee() + self.gf_high * (self.max_strain - self.knee_strain)
    }
}

pub fn strain_to_rel_resistance(g: &GaugeModel, strain: f64) -> Result<f64> {
    if !(0.0..=g.max_strain).contains(&strain) {
        return Err(Error::StrainOutOfRange {
            value: strain,
            max: g.max_strain,
        });
    }
    Ok(if strain <= g.knee_strain {
        g.gf_low * strain
    } else {
        g.at_knee() + g.gf_high * (strain - g.knee_strain)
    })
}

pub fn rel_resistance_to_strain(g: &GaugeModel, y: f64) -> Result<f64> {
    let top = g.max_rel_resistance();
    if !(0.0..=top).contains(&y) {
        return Err(Error::OutOfRange {
            value: y,
            min: 0.0,
            max: top,
        });
    }
    let knee = g.at_knee();
    Ok(if y <= knee {
        y / g.gf_low
    } else {
        g.knee_strain + (y - knee) / g.gf_high
    })
}

/// Surface strain of a film of thickness `t` bent to radius `r_b`,
/// `ε = t / (2·r_b)`. An infinite radius (flat) gives zero.
pub fn bending_strain(thickness: f64, bending_radius: f64) -> Result<f64> {
    if !(bending_radius > 0.0) {
        return Err(Error::NonPositiveRadius);
    }
    Ok(thickness / (2.0 * bending_radius))
}

/// Radius of a wrap whose arc length `S` subtends `θ` degrees.
pub fn curvature_radius(arc_length: f64, angle_deg: f64) -> Result<f64> {
    if !(arc_length > 0.0) {
        return Err(Error::NonPositive("arc length"));
    }
    if !(angle_deg > 0.0) {
        return Err(Error::NonPositive("curvature angle"));
    }
    Ok(360.0 * arc_length / (2.0 * core::f64::consts::PI * angle_deg))
}

/// Sensor wrapped around a stem.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct StemGeometry {
    /// Sensor length along the stem circumference, m.
    pub arc_length: f64,
    /// Substrate plus functional layer, m.
    pub sensor_thickness: f64,
}

impl Default for StemGeometry {
    fn default() -> Self {
        StemGeometry {
            arc_length: 0.021,
            sensor_thickness: 205e-6,
        }
    }
}

/// Fully resolved wrap state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wrap {
    pub curvature_angle_deg: f64,
    pub curvature_radius: f64,
    pub bending_strain: f64,
}

impl Wrap {
    pub fn diameter(&self) -> f64 {
        2.0 * self.curvature_radius
    }
}

impl StemGeometry {
    pub fn validate(&self) -> Result<()> {
        if !(self.arc_length > 0.0) {
            return Err(Error::NonPositive("arc_length"));
        }
        if !(self.sensor_thickness > 0.0) {
            return Err(Error::NonPositive("sensor_thickness"));
        }
        Ok(())
    }

    pub fn wrap_from_angle(&self, angle_deg: f64) -> Result<Wrap> {
        let r = curvature_radius(self.arc_length, angle_deg)?;
        Ok(Wrap {
            curvature_angle_deg: angle_deg,
            curvature_radius: r,
            bending_strain: bending_strain(self.sensor_thickness, r)?,
        })
    }

    pub fn wrap_from_strain(&self, strain: f64) -> Result<Wrap> {
        if !(strain > 0.0) {
            return Err(Error::NonPositive("bending strain"));
        }
        let r = self.sensor_thickness / (2.0 * strain);
        Ok(Wrap {
            curvature_angle_deg: 360.0 * self.arc_length / (2.0 * core::f64::consts::PI * r),
            curvature_radius: r,
            bending_strain: strain,
        })
    }
}

/// Bending calibration (ΔR/R₀ vs bending strain) sampled from the gauge model
/// at strains 0.005–0.1, i.e. stems from about 2 mm to 41 mm across for the
/// default film. Replace with digitized data when available.
pub fn default_bend_curve(g: &GaugeModel) -> Result<CalibrationTable> {
    let points: Vec<(f64, f64)> = (1..=20)
        .map(|i| {
            let strain = i as f64 * 0.005;
            strain_to_rel_resistance(g, strain).map(|y| (strain, y))
        })
        .collect::<Result<_>>()?;
    Ok(CalibrationTable::new(points, Extrapolation::Error)?.with_units(Unit::Strain, Unit::RelResistance))
}

/// Relative resistance → bending strain → bending radius → diameter (m).
#[derive(Debug, Clone, PartialEq)]
pub struct DiameterPipeline {
    pub gauge: GaugeModel,
    pub geometry: StemGeometry,
    pub bend_curve: CalibrationTable,
}

impl DiameterPipeline {
    pub fn new(gauge: GaugeModel, geometry: StemGeometry) -> Result<Self> {
        gauge.validate()?;
        geometry.validate()?;
        Ok(DiameterPipeline {
            gauge,
            geometry,
            bend_curve: default_bend_curve(&gauge)?,
        })
    }

    pub fn with_bend_curve(mut self, curve: CalibrationTable) -> Self {
        self.bend_curve = curve;
        self
    }

    /// Diameter in metres; strictly decreasing in `y`.
    pub fn diameter_from_reading(&self, y: f64) -> Result<f64> {
        let strain = self.bend_curve.invert(y)?;
        Ok(self.geometry.wrap_from_strain(strain)?.diameter())
    }

    /// Forward model: ΔR/R₀ the sensor shows on a stem of `diameter` metres.
    pub fn reading_from_diameter(&self, diameter: f64) -> Result<f64> {
        if !(diameter > 0.0) {
            return Err(Error::NonPositive("diameter"));
        }
        let strain = bending_strain(self.geometry.sensor_thickness, diameter / 2.0)?;
        self.bend_curve.eval(strain)
    }

    /// Largest diameter the bend curve can represent.
    pub fn max_diameter(&self) -> f64 {
        self.geometry.sensor_thickness / self.bend_curve.domain().0
    }
}

pub fn diameter_from_reading(p: &DiameterPipeline, y: f64) -> Result<f64> {
    p.diameter_from_reading(y)
}
