//! CSV formats. All files are UTF-8 with a header row and `.` decimals;
//! timestamps are seconds since scenario start.

use std::fmt::Write as _;
use std::path::Path;

use planta_core::kirigami::DetectedEvent;
use planta_core::powerchain::ReadingEvent;
use planta_core::{CalibrationTable, Extrapolation, TimeSeries, Unit};

use crate::error::{CliError, Result};
use crate::fileio::read_to_string;

pub const CALIBRATION_HEADER: [&str; 4] = ["stimulus", "response", "unit_stimulus", "unit_response"];
pub const HARVEST_HEADER: [&str; 2] = ["t_seconds", "power_watts"];
pub const EVENT_HEADER: [&str; 3] = ["start_time", "completed", "energy_used_joules"];
pub const STRAIN_HEADER: [&str; 2] = ["t_seconds", "rel_resistance"];
pub const DISTURBANCE_HEADER: [&str; 3] = ["onset", "duration", "type"];
pub const VPD_REPORT_HEADER: [&str; 8] = [
    "t",
    "leaf_temp_c",
    "air_temp_c",
    "air_rh_pct",
    "vp_sat_kpa",
    "vp_air_kpa",
    "vpd_kpa",
    "power_source",
];

/// Parsed records with their 1-based file row (header is row 1).
pub struct Records {
    pub source: String,
    pub header: Vec<String>,
    pub rows: Vec<(usize, csv::StringRecord)>,
}

impl Records {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = reader
            .headers()
            .map_err(|e| CliError::parse(source, 1, "", e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for (i, rec) in reader.records().enumerate() {
            let row = i + 2;
            let rec = rec.map_err(|e| CliError::parse(source, row, "", e.to_string()))?;
            if rec.iter().all(str::is_empty) {
                continue;
            }
            rows.push((row, rec));
        }
        Ok(Records {
            source: source.to_string(),
            header,
            rows,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::parse(&read_to_string(path)?, &path.display().to_string())
    }

    pub fn expect_header(&self, expected: &[&str]) -> Result<()> {
        if self
            .header
            .iter()
            .map(String::as_str)
            .ne(expected.iter().copied())
        {
            return Err(CliError::parse(
                &self.source,
                1,
                "",
                format!(
                    "expected header `{}`, found `{}`",
                    expected.join(","),
                    self.header.join(",")
                ),
            ));
        }
        Ok(())
    }

    pub fn field<'a>(&self, row: usize, rec: &'a csv::StringRecord, col: usize) -> Result<&'a str> {
        rec.get(col)
            .ok_or_else(|| CliError::parse(&self.source, row, &self.header[col], "missing field"))
    }

    pub fn number(&self, row: usize, rec: &csv::StringRecord, col: usize) -> Result<f64> {
        let raw = self.field(row, rec, col)?;
        let v: f64 = raw.parse().map_err(|_| {
            CliError::parse(
                &self.source,
                row,
                &self.header[col],
                format!("`{raw}` is not a number"),
            )
        })?;
        if !v.is_finite() {
            return Err(CliError::parse(
                &self.source,
                row,
                &self.header[col],
                "value is not finite",
            ));
        }
        Ok(v)
    }

    pub fn unit(&self, row: usize, rec: &csv::StringRecord, col: usize) -> Result<Unit> {
        let raw = self.field(row, rec, col)?;
        raw.parse().map_err(|_| {
            CliError::parse(
                &self.source,
                row,
                &self.header[col],
                format!("unknown unit `{raw}`"),
            )
        })
    }

    /// Two numeric columns as a time series.
    pub fn series(&self, channel: &str, unit: Unit) -> Result<TimeSeries> {
        let mut times = Vec::with_capacity(self.rows.len());
        let mut values = Vec::with_capacity(self.rows.len());
        for (row, rec) in &self.rows {
            let t = self.number(*row, rec, 0)?;
            if times.last().is_some_and(|&prev| t <= prev) {
                return Err(CliError::parse(
                    &self.source,
                    *row,
                    &self.header[0],
                    "timestamps must increase",
                ));
            }
            times.push(t);
            values.push(self.number(*row, rec, 1)?);
        }
        Ok(TimeSeries::new(channel, unit, times, values)?)
    }
}

pub fn parse_calibration(text: &str, source: &str, policy: Extrapolation) -> Result<CalibrationTable> {
    let r = Records::parse(text, source)?;
    r.expect_header(&CALIBRATION_HEADER)?;
    let mut points = Vec::with_capacity(r.rows.len());
    let mut units = None;
    for (row, rec) in &r.rows {
        let x = r.number(*row, rec, 0)?;
        let y = r.number(*row, rec, 1)?;
        let pair = (r.unit(*row, rec, 2)?, r.unit(*row, rec, 3)?);
        if units.is_some_and(|u| u != pair) {
            return Err(CliError::parse(
                source,
                *row,
                "unit_stimulus",
                "units change between rows",
            ));
        }
        if points.last().is_some_and(|&(px, _)| x <= px) {
            return Err(CliError::parse(
                source,
                *row,
                "stimulus",
                "rows must be sorted by ascending stimulus",
            ));
        }
        units = Some(pair);
        points.push((x, y));
    }
    let (su, ru) = units.unwrap_or((Unit::Ratio, Unit::Ratio));
    let table = CalibrationTable::new(points, policy)
        .map_err(|e| CliError::parse(source, 0, "response", e.to_string()))?;
    Ok(table.with_units(su, ru))
}

pub fn read_calibration(path: &Path, policy: Extrapolation) -> Result<CalibrationTable> {
    parse_calibration(&read_to_string(path)?, &path.display().to_string(), policy)
}

pub fn calibration_csv(table: &CalibrationTable) -> String {
    let mut out = CALIBRATION_HEADER.join(",");
    out.push('\n');
    let (su, ru) = (table.stimulus_unit(), table.response_unit());
    for (x, y) in table.points() {
        let _ = writeln!(out, "{x},{y},{su},{ru}");
    }
    out
}

pub fn read_harvest(path: &Path) -> Result<TimeSeries> {
    let r = Records::from_path(path)?;
    r.expect_header(&HARVEST_HEADER)?;
    let s = r.series("harvest", Unit::Watt)?;
    if let Some(i) = s.values().iter().position(|&p| p < 0.0) {
        return Err(CliError::parse(
            &r.source,
            r.rows[i].0,
            "power_watts",
            "power must be >= 0",
        ));
    }
    Ok(s)
}

pub fn read_strain(path: &Path) -> Result<TimeSeries> {
    let r = Records::from_path(path)?;
    r.expect_header(&STRAIN_HEADER)?;
    r.series("strain", Unit::RelResistance)
}

/// Any `t_seconds,<value>` file, tagged with the given unit.
pub fn read_two_column(path: &Path, channel: &str, unit: Unit) -> Result<TimeSeries> {
    let r = Records::from_path(path)?;
    if r.header.len() != 2 || r.header[0] != "t_seconds" {
        return Err(CliError::parse(
            &r.source,
            1,
            "",
            "expected a `t_seconds,<value>` header",
        ));
    }
    r.series(channel, unit)
}

pub fn series_csv(columns: &[&str], series: &[&TimeSeries]) -> String {
    let mut out = columns.join(",");
    out.push('\n');
    if let Some(first) = series.first() {
        for (i, t) in first.times().iter().enumerate() {
            let _ = write!(out, "{t}");
            for s in series {
                let _ = write!(out, ",{}", s.values()[i]);
            }
            out.push('\n');
        }
    }
    out
}

pub fn events_csv(events: &[ReadingEvent]) -> String {
    let mut out = EVENT_HEADER.join(",");
    out.push('\n');
    for e in events {
        let _ = writeln!(out, "{},{},{}", e.start_time, e.completed, e.energy_used);
    }
    out
}

pub fn parse_events(text: &str, source: &str) -> Result<Vec<(f64, bool, f64)>> {
    let r = Records::parse(text, source)?;
    r.expect_header(&EVENT_HEADER)?;
    r.rows
        .iter()
        .map(|(row, rec)| {
            let completed = match r.field(*row, rec, 1)? {
                "true" => true,
                "false" => false,
                other => {
                    return Err(CliError::parse(
                        source,
                        *row,
                        "completed",
                        format!("`{other}` is not a boolean"),
                    ))
                }
            };
            Ok((r.number(*row, rec, 0)?, completed, r.number(*row, rec, 2)?))
        })
        .collect()
}

pub fn disturbances_csv(events: &[DetectedEvent]) -> String {
    let mut out = DISTURBANCE_HEADER.join(",");
    out.push('\n');
    for e in events {
        let _ = writeln!(out, "{},{},{}", e.onset, e.duration, e.kind.as_str());
    }
    out
}
