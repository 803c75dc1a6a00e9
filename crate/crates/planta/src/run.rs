//! `scenario run`: one output directory per plant.
//!
//! | file | columns |
//! |---|---|
//! | truth.csv | t_seconds, air_temp_c, air_rh_pct, leaf_temp_c, leaf_rh_pct, vpd_kpa, diameter_mm |
//! | harvest.csv | t_seconds, power_watts |
//! | events.csv | start_time, completed, energy_used_joules |
//! | sensed.csv | t_seconds, then one column per sensed channel (Ω or V) |
//! | digitized.csv | t_seconds, then the ADC code of each sensed channel |
//! | derived.csv | t_seconds, leaf_temp_c, air_temp_c, air_rh_pct, leaf_rh_pct, vpd_kpa, diameter_mm |
//! | strain.csv | t_seconds, rel_resistance |
//! | labels.csv | t_seconds, label, vpd_slope_kpa_per_day, diameter_slope_mm_per_day |
//! | vpd_report.csv | t, leaf_temp_c, air_temp_c, air_rh_pct, vp_sat_kpa, vp_air_kpa, vpd_kpa, power_source |
//! | scenario.toml | resolved plant and model sections |
//! | report.json | per-plant summary |

use std::fmt::Write as _;
use std::path::Path;

use planta_core::analytics::{day_night_split, vapor_pressures, VpdInputs};
use planta_core::scenario::{end_to_end, label, ModelConfigs, PlantScenario, RunOutput};
use planta_core::stats::{mean, ols};
use planta_core::{TimeSeries, Unit, SECONDS_PER_DAY};
use serde_json::{json, Value};

use crate::config::{echo_toml, ModelsSection, ScenarioFile};
use crate::csvio::{events_csv, series_csv, HARVEST_HEADER, STRAIN_HEADER, VPD_REPORT_HEADER};
use crate::error::{CliError, Result};
use crate::fileio::write_atomic;
use crate::report::Report;

const SUNRISE_HOUR: f64 = 6.0;
const SUNSET_HOUR: f64 = 18.0;

fn unit_suffix(u: Unit) -> &'static str {
    match u {
        Unit::Celsius => "c",
        Unit::PercentRh => "pct",
        Unit::Kilopascal => "kpa",
        Unit::Millimetre => "mm",
        Unit::Ohm => "ohm",
        Unit::Volt => "v",
        Unit::Count => "count",
        _ => "value",
    }
}

fn columns(series: &[TimeSeries]) -> Vec<String> {
    std::iter::once("t_seconds".to_string())
        .chain(
            series
                .iter()
                .map(|s| format!("{}_{}", s.channel(), unit_suffix(s.unit()))),
        )
        .collect()
}

fn table_csv(series: &[TimeSeries]) -> String {
    let cols = columns(series);
    let cols: Vec<&str> = cols.iter().map(String::as_str).collect();
    let refs: Vec<&TimeSeries> = series.iter().collect();
    series_csv(&cols, &refs)
}

fn channel<'a>(series: &'a [TimeSeries], name: &str) -> Result<&'a TimeSeries> {
    series
        .iter()
        .find(|s| s.channel() == name)
        .ok_or_else(|| CliError::Data(format!("run output lacks channel {name}")))
}

fn vpd_rows(out: &mut Vec<(f64, u8, String)>, series: &[TimeSeries], source: &str, rank: u8) -> Result<()> {
    let leaf = channel(series, "leaf_temp")?;
    let air = channel(series, "air_temp")?;
    let rh = channel(series, "air_rh")?;
    for (i, &t) in leaf.times().iter().enumerate() {
        let inp = VpdInputs {
            leaf_temp: leaf.values()[i],
            air_temp: air.values()[i],
            air_rh: rh.values()[i],
        };
        let r = vapor_pressures(&inp)?;
        let line = format!(
            "{t},{},{},{},{},{},{},{source}",
            inp.leaf_temp, inp.air_temp, inp.air_rh, r.vp_sat, r.vp_air, r.vpd
        );
        out.push((t, rank, line));
    }
    Ok(())
}

/// Derived and bench-supplied readings merged in time order.
pub fn vpd_report_csv(run: &RunOutput) -> Result<String> {
    let mut rows = Vec::new();
    vpd_rows(&mut rows, &run.derived, "self", 0)?;
    if !run.external.is_empty() {
        vpd_rows(&mut rows, &run.external, "external", 1)?;
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut text = VPD_REPORT_HEADER.join(",");
    text.push('\n');
    for (_, _, line) in rows {
        text.push_str(&line);
        text.push('\n');
    }
    Ok(text)
}

fn labels_csv(run: &RunOutput) -> String {
    let mut out = "t_seconds,label,vpd_slope_kpa_per_day,diameter_slope_mm_per_day\n".to_string();
    for (t, l) in &run.labels {
        let _ = writeln!(
            out,
            "{t},{},{},{}",
            l.label.as_str(),
            l.evidence.vpd_slope,
            l.evidence.diameter_slope
        );
    }
    out
}

fn strain_csv(run: &RunOutput, cfgs: &ModelConfigs) -> Result<String> {
    let stem = channel(&run.sensed, "stem")?;
    let r0 = cfgs.diameter.gauge.r_baseline;
    let rel = stem.map_values(|r| r / r0 - 1.0)?;
    Ok(series_csv(&STRAIN_HEADER, &[&rel]))
}

fn stats(values: &[f64]) -> Value {
    if values.is_empty() {
        return json!({"mean_kpa": null, "min_kpa": null, "max_kpa": null});
    }
    json!({
        "mean_kpa": mean(values),
        "min_kpa": values.iter().copied().fold(f64::INFINITY, f64::min),
        "max_kpa": values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

fn slope_per_day(s: &TimeSeries) -> Option<f64> {
    let days: Vec<f64> = s.times().iter().map(|t| t / SECONDS_PER_DAY).collect();
    ols(&days, s.values()).ok().map(|(slope, _, _)| slope)
}

/// Per-plant summary: labels, slopes, VPD statistics and the energy ledger.
pub fn summary(plant: &PlantScenario, run: &RunOutput, cfgs: &ModelConfigs) -> Result<Value> {
    let completed = run.events.iter().filter(|e| e.completed).count();
    let vpd = channel(&run.derived, "vpd")?;
    let (day, night) = day_night_split(vpd.times(), SUNRISE_HOUR, SUNSET_HOUR);
    let l = run.ledger;
    Ok(json!({
        "name": label(plant),
        "condition": plant.condition.as_str(),
        "seed": plant.seed.to_string(),
        "duration_s": plant.duration(),
        "readings_completed_count": completed,
        "readings_aborted_count": run.events.len() - completed,
        "final_label": run.final_label().map(|l| l.label.as_str()),
        "final_vpd_slope_kpa_per_day": run.final_label().map(|l| l.evidence.vpd_slope),
        "final_diameter_slope_mm_per_day": run.final_label().map(|l| l.evidence.diameter_slope),
        "diameter_slope_mm_per_day": channel(&run.derived, "diameter").ok().and_then(slope_per_day),
        "truth_diameter_slope_mm_per_day": slope_per_day(&run.truth.diameter_mm),
        "vpd": stats(vpd.values()),
        "truth_vpd": stats(run.truth.vpd.values()),
        "day_readings_count": day,
        "night_readings_count": night,
        "ledger": {
            "input_j": l.input,
            "harvested_j": l.harvested,
            "spilled_j": l.spilled,
            "delivered_j": l.delivered,
            "initial_stored_j": l.initial_stored,
            "final_stored_j": l.final_stored,
            "storage_imbalance_j": l.storage_imbalance(),
            "conversion_imbalance_j": l.conversion_imbalance(cfgs.power.converter_efficiency),
        },
    }))
}

/// Runs one plant and writes its directory.
pub fn run_plant(
    plant: &PlantScenario,
    models: &ModelsSection,
    cfgs: &ModelConfigs,
    dir: &Path,
) -> Result<Value> {
    let run = end_to_end(plant, cfgs)?;
    let echo = echo_toml(plant, models)?;
    let files: [(&str, String); 10] = [
        ("truth.csv", table_csv(&run.truth.channels().map(Clone::clone))),
        ("harvest.csv", series_csv(&HARVEST_HEADER, &[&run.harvest])),
        ("events.csv", events_csv(&run.events)),
        ("sensed.csv", table_csv(&run.sensed)),
        ("digitized.csv", table_csv(&run.digitized)),
        ("derived.csv", table_csv(&run.derived)),
        ("strain.csv", strain_csv(&run, cfgs)?),
        ("labels.csv", labels_csv(&run)),
        ("vpd_report.csv", vpd_report_csv(&run)?),
        ("scenario.toml", echo.clone()),
    ];
    for (name, text) in &files {
        write_atomic(&dir.join(name), text.as_bytes())?;
    }
    let result = summary(plant, &run, cfgs)?;
    let report = Report::new(
        "scenario run",
        json!({"seed": plant.seed.to_string(), "scenario_toml": echo}),
        result.clone(),
    )?;
    write_atomic(&dir.join("report.json"), report.to_json().as_bytes())?;
    Ok(result)
}

/// Directory name of plant `i`.
pub fn plant_dir_name(i: usize, plant: &PlantScenario) -> String {
    format!("plant{i:02}_{}", label(plant))
}

/// Runs every plant in parallel, then writes the combined report.
pub fn run_scenario_file(file: &ScenarioFile, base_seed: Option<u64>, out: &Path) -> Result<Report> {
    if file.plant.is_empty() {
        return Err(CliError::Data("scenario file defines no [[plant]] tables".into()));
    }
    let cfgs = file.model_configs()?;
    let plants = file.seeded_plants(base_seed);
    for p in &plants {
        p.validate()?;
    }
    let results: Vec<Result<Value>> = std::thread::scope(|scope| {
        let handles: Vec<_> = plants
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let dir = out.join(plant_dir_name(i, p));
                let cfgs = &cfgs;
                scope.spawn(move || run_plant(p, &file.models, cfgs, &dir))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(CliError::Data("plant worker panicked".into())))
            })
            .collect()
    });
    let plants_json = results.into_iter().collect::<Result<Vec<Value>>>()?;
    let config = json!({
        "plants_count": plants.len(),
        "base_seed": base_seed.map(|s| s.to_string()),
    });
    let report = Report::new("scenario run", config, json!({ "plants": plants_json }))?;
    write_atomic(&out.join("report.json"), report.to_json().as_bytes())?;
    Ok(report)
}
