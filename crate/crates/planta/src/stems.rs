//! Daily stem-diameter tables: one row per day, pristine and stretched
//! sensors for each of three plant conditions.

use std::path::Path;

use planta_core::scenario::Condition;
use planta_core::stats::ols;
use planta_core::{TimeSeries, Unit, SECONDS_PER_DAY};

use crate::csvio::Records;
use crate::data;
use crate::error::{CliError, Result};
use crate::fileio::read_to_string;

pub const STEM_HEADER: [&str; 7] = [
    "day",
    "unstressed_pristine",
    "unstressed_stretched",
    "water_pristine",
    "water_stretched",
    "salinity_pristine",
    "salinity_stretched",
];

/// Diameters outside this open interval (mm) are rejected.
pub const DIAMETER_BOUNDS_MM: (f64, f64) = (3.0, 15.0);

pub const CONDITIONS: [Condition; 3] = [
    Condition::Healthy,
    Condition::WaterStress,
    Condition::SalinityStress,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sensor {
    Pristine,
    Stretched,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StemRow {
    pub day: i64,
    /// mm, in header order after `day`.
    pub diameters: [f64; 6],
}

#[derive(Debug, Clone, PartialEq)]
pub struct StemTable {
    pub rows: Vec<StemRow>,
}

fn column_index(condition: Condition, sensor: Sensor) -> usize {
    let base = match condition {
        Condition::Healthy => 0,
        Condition::WaterStress => 2,
        Condition::SalinityStress => 4,
    };
    base + usize::from(sensor == Sensor::Stretched)
}

/// Short name used in report keys.
pub fn condition_key(c: Condition) -> &'static str {
    match c {
        Condition::Healthy => "unstressed",
        Condition::WaterStress => "water",
        Condition::SalinityStress => "salinity",
    }
}

impl StemTable {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let r = Records::parse(text, source)?;
        r.expect_header(&STEM_HEADER)?;
        let mut rows: Vec<StemRow> = Vec::with_capacity(r.rows.len());
        for (row, rec) in &r.rows {
            let raw = r.field(*row, rec, 0)?;
            let day: i64 = raw
                .parse()
                .map_err(|_| CliError::parse(source, *row, "day", format!("`{raw}` is not an integer")))?;
            if let Some(prev) = rows.last() {
                if day <= prev.day {
                    return Err(CliError::InvariantViolation(format!(
                        "{source}: row {row}: day {day} does not follow day {}",
                        prev.day
                    )));
                }
            }
            let mut diameters = [0.0; 6];
            for (i, d) in diameters.iter_mut().enumerate() {
                *d = r.number(*row, rec, i + 1)?;
                let (lo, hi) = DIAMETER_BOUNDS_MM;
                if !(*d > lo && *d < hi) {
                    return Err(CliError::InvariantViolation(format!(
                        "{source}: row {row}, column `{}`: diameter {d} mm outside ({lo}, {hi})",
                        STEM_HEADER[i + 1]
                    )));
                }
            }
            rows.push(StemRow { day, diameters });
        }
        if rows.is_empty() {
            return Err(CliError::parse(source, 2, "day", "table has no rows"));
        }
        Ok(StemTable { rows })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::parse(&read_to_string(path)?, &path.display().to_string())
    }

    /// The shipped field table (or its `PLANTA_DATA_DIR` override).
    pub fn builtin() -> Result<Self> {
        let (text, source) = data::load(data::STEM_DIAMETERS)?;
        Self::parse(&text, &source)
    }

    pub fn days(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.day as f64).collect()
    }

    pub fn column(&self, condition: Condition, sensor: Sensor) -> Vec<f64> {
        let i = column_index(condition, sensor);
        self.rows.iter().map(|r| r.diameters[i]).collect()
    }

    /// Diameter series in mm, day 1 at t = 0.
    pub fn series(&self, condition: Condition, sensor: Sensor) -> Result<TimeSeries> {
        let first = self.rows[0].day;
        let times = self
            .rows
            .iter()
            .map(|r| (r.day - first) as f64 * SECONDS_PER_DAY)
            .collect();
        Ok(TimeSeries::new(
            condition_key(condition),
            Unit::Millimetre,
            times,
            self.column(condition, sensor),
        )?)
    }

    /// Least-squares slope over all rows, mm/day.
    pub fn slope(&self, condition: Condition, sensor: Sensor) -> Result<f64> {
        Ok(ols(&self.days(), &self.column(condition, sensor))?.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffsetStats {
    /// mm
    pub mean: f64,
    /// mm
    pub max: f64,
    /// Largest |offset − mean|, mm.
    pub max_deviation: f64,
}

/// |pristine − stretched| per condition. Differences are taken in integer
/// micrometres, which is exact for tables given to 1 µm, so a constant
/// offset has zero spread.
pub fn stretched_offset_check(t: &StemTable) -> [(Condition, OffsetStats); 3] {
    let um = |mm: f64| (mm * 1000.0).round() as i64;
    CONDITIONS.map(|c| {
        let p = column_index(c, Sensor::Pristine);
        let s = column_index(c, Sensor::Stretched);
        let offsets: Vec<i64> = t
            .rows
            .iter()
            .map(|r| (um(r.diameters[p]) - um(r.diameters[s])).abs())
            .collect();
        let n = offsets.len() as f64;
        let sum: i64 = offsets.iter().sum();
        let mean_um = sum as f64 / n;
        let max_um = offsets.iter().copied().max().unwrap_or(0);
        let dev_um = offsets
            .iter()
            .map(|&o| (o as f64 - mean_um).abs())
            .fold(0.0, f64::max);
        (
            c,
            OffsetStats {
                mean: mean_um / 1000.0,
                max: max_um as f64 / 1000.0,
                max_deviation: dev_um / 1000.0,
            },
        )
    })
}
