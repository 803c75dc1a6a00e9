//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 data error, 4 infeasible. With
//! `--json` the report goes to stdout and errors go to stderr as
//! `{"error": {...}}`; otherwise both are `key: value` lines.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use planta_core::analytics::{
    classify_stress, translocation_lag, vapor_pressures, ClassifyConfig, LagConfig, TrendModel, VpdInputs,
};
use planta_core::kirigami::{baseline_correct, BaselineConfig};
use planta_core::meg::{
    find_mpp, load_point, open_circuit_voltage, power_density, w_per_m2_to_uw_per_cm2, EfficiencyInputs,
};
use planta_core::powerchain::{min_power_for_readings, simulate};
use planta_core::scenario::{generate, PlantScenario};
use planta_core::Unit;
use serde_json::{json, Value};

use crate::config::ScenarioFile;
use crate::csvio::{
    disturbances_csv, events_csv, read_harvest, read_strain, read_two_column, series_csv, STRAIN_HEADER,
};
use crate::error::{CliError, Result};
use crate::fileio::write_atomic;
use crate::numfmt;
use crate::report::Report;
use crate::run::run_scenario_file;
use crate::stems::{condition_key, stretched_offset_check, Sensor, StemTable, CONDITIONS};

#[derive(Debug, Parser)]
#[command(
    name = "planta",
    version,
    about = "Self-powered plant sensing: models, simulation and analysis"
)]
pub struct Cli {
    /// Print a JSON report on stdout and JSON errors on stderr.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vapor pressure deficit between leaf and air.
    Vpd {
        /// °C
        #[arg(long, allow_negative_numbers = true)]
        leaf_temp: f64,
        /// °C
        #[arg(long, allow_negative_numbers = true)]
        air_temp: f64,
        /// Air relative humidity, %RH.
        #[arg(long)]
        rh: f64,
    },
    /// Maximum power point of the moist-electric generator.
    Mpp {
        /// Scenario-format TOML; only `[models.meg]` is used.
        #[arg(long)]
        config: Option<PathBuf>,
        /// %RH
        #[arg(long)]
        rh: f64,
    },
    /// Moisture-to-electricity conversion efficiency.
    Efficiency {
        #[arg(long)]
        output_joules: f64,
        #[arg(long)]
        evaporated_grams: f64,
        /// J/mol
        #[arg(long, default_value_t = planta_core::meg::HEAT_OF_EVAPORATION)]
        heat_of_evaporation: f64,
        /// g/mol
        #[arg(long, default_value_t = planta_core::meg::MOLAR_MASS_WATER)]
        molar_mass: f64,
    },
    /// Replay a harvest profile through the power chain.
    SimulatePower {
        /// CSV `t_seconds,power_watts`, held between samples.
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        hours: f64,
        /// Scenario-format TOML; only `[models.power]` is used.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Also write the reading log as CSV.
        #[arg(long)]
        events_out: Option<PathBuf>,
    },
    /// Smallest constant harvest power for a number of readings.
    MinPower {
        #[arg(long)]
        readings: u64,
        #[arg(long)]
        hours: f64,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Stem diameter from a kirigami sensor reading.
    Diameter {
        /// ΔR/R₀
        #[arg(long)]
        rel_resistance: f64,
        /// Sensor arc length, m.
        #[arg(long, default_value_t = 0.021)]
        arc: f64,
        /// Sensor thickness, m.
        #[arg(long, default_value_t = 205e-6)]
        thickness: f64,
        /// ΔR/R₀-vs-strain calibration CSV.
        #[arg(long)]
        bend_curve: Option<PathBuf>,
    },
    /// Remove transient disturbances from a strain series.
    Baseline(BaselineArgs),
    /// Growth slopes, sensor offsets and stress labels for a stem table.
    AnalyzeStems {
        /// Defaults to the shipped field table.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Seed of the synthetic VPD paired with each condition.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Water-translocation lag between lower and upper leaf humidity.
    Lag {
        /// CSV `t_seconds,<rh>`.
        #[arg(long)]
        lower: PathBuf,
        #[arg(long)]
        upper: PathBuf,
        #[arg(long, default_value_t = 360.0)]
        max_lag_min: f64,
        /// Watering time, s; defaults to the start of the data.
        #[arg(long)]
        watering_time: Option<f64>,
        /// %RH
        #[arg(long, default_value_t = 1.0)]
        equal_tol: f64,
    },
    /// Synthetic end-to-end runs.
    #[command(subcommand)]
    Scenario(ScenarioCommand),
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    /// CSV `t_seconds,rel_resistance`.
    #[arg(long)]
    series: PathBuf,
    /// Corrected series, same format.
    #[arg(long)]
    out: PathBuf,
    /// Detected events as `onset,duration,type`.
    #[arg(long)]
    disturbances: Option<PathBuf>,
    /// Rolling-median window, samples.
    #[arg(long, default_value_t = BaselineConfig::default().window)]
    window: usize,
    #[arg(long, default_value_t = BaselineConfig::default().k_mad)]
    k_mad: f64,
    /// s
    #[arg(long, default_value_t = BaselineConfig::default().max_pulse_duration)]
    max_pulse: f64,
}

#[derive(Debug, Subcommand)]
pub enum ScenarioCommand {
    /// Run every plant in a scenario file.
    Run {
        #[arg(long)]
        file: PathBuf,
        /// Plant i uses seed + i; without it each plant keeps its own seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_file(config: &Option<PathBuf>) -> Result<ScenarioFile> {
    match config {
        Some(p) => ScenarioFile::from_path(p),
        None => Ok(ScenarioFile::default()),
    }
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("--{name} must be a positive number")))
    }
}

fn vpd(leaf_temp: f64, air_temp: f64, rh: f64) -> Result<Report> {
    let r = vapor_pressures(&VpdInputs {
        leaf_temp,
        air_temp,
        air_rh: rh,
    })?;
    Report::new(
        "vpd",
        json!({"leaf_temp_c": leaf_temp, "air_temp_c": air_temp, "air_rh_pct": rh}),
        json!({
            "vp_sat_kpa": r.vp_sat,
            "vp_air_kpa": r.vp_air,
            "vpd_kpa": r.vpd,
            "condensing": r.is_negative(),
        }),
    )
}

fn mpp(config: &Option<PathBuf>, rh: f64) -> Result<Report> {
    let file = load_file(config)?;
    let cfg = file.meg_config()?;
    let grid = file.load_grid();
    let best = find_mpp(&cfg, rh, &grid)?;
    let voc = open_circuit_voltage(&cfg, rh)?;
    let lp = load_point(voc, cfg.internal_resistance, best.load_resistance);
    let density = power_density(best.power, &cfg)?;
    Report::new(
        "mpp",
        json!({
            "rh_pct": rh,
            "internal_resistance_ohm": cfg.internal_resistance,
            "active_area_m2": cfg.active_area,
            "grid_points_count": grid.len(),
        }),
        json!({
            "load_resistance_ohm": best.load_resistance,
            "power_w": best.power,
            "voc_v": voc,
            "voltage_v": lp.voltage,
            "current_a": lp.current,
            "power_density_uw_per_cm2": w_per_m2_to_uw_per_cm2(density),
        }),
    )
}

fn efficiency(output: f64, grams: f64, heat: f64, molar: f64) -> Result<Report> {
    let inp = EfficiencyInputs {
        output_energy: output,
        evaporated_mass: grams,
        molar_mass_water: molar,
        heat_of_evaporation: heat,
    };
    let input = inp.input_energy()?;
    Report::new(
        "efficiency",
        json!({
            "output_energy_j": output,
            "evaporated_mass_g": grams,
            "molar_mass_g_per_mol": molar,
            "heat_of_evaporation_j_per_mol": heat,
        }),
        json!({"input_energy_j": input, "efficiency_ratio": output / input}),
    )
}

fn simulate_power(
    profile: &Path,
    hours: f64,
    config: &Option<PathBuf>,
    events_out: &Option<PathBuf>,
) -> Result<Report> {
    let hours = positive("hours", hours)?;
    let cfg = load_file(config)?.models.power;
    let harvest = read_harvest(profile)?;
    let sim = simulate(&cfg, &harvest, hours * 3600.0)?;
    if let Some(path) = events_out {
        write_atomic(path, events_csv(&sim.events).as_bytes())?;
    }
    let l = sim.ledger();
    let events: Vec<Value> = sim
        .events
        .iter()
        .map(|e| json!({"start_time_s": e.start_time, "completed": e.completed, "energy_used_j": e.energy_used}))
        .collect();
    let completed = sim.completed().count();
    Report::new(
        "simulate-power",
        json!({"horizon_h": hours, "capacitance_f": cfg.capacitance, "profile_samples_count": harvest.len()}),
        json!({
            "readings_completed_count": completed,
            "readings_aborted_count": sim.events.len() - completed,
            "events": events,
            "ledger": {
                "input_j": l.input,
                "harvested_j": l.harvested,
                "spilled_j": l.spilled,
                "delivered_j": l.delivered,
                "initial_stored_j": l.initial_stored,
                "final_stored_j": l.final_stored,
                "storage_imbalance_j": l.storage_imbalance(),
            },
        }),
    )
}

fn min_power(readings: u64, hours: f64, config: &Option<PathBuf>) -> Result<Report> {
    let hours = positive("hours", hours)?;
    let cfg = load_file(config)?.models.power;
    let p = min_power_for_readings(&cfg, readings, hours * 3600.0)?;
    Report::new(
        "min-power",
        json!({"readings_count": readings, "horizon_h": hours}),
        json!({"min_power_w": p, "tolerance_w": 1e-12}),
    )
}

fn diameter(y: f64, arc: f64, thickness: f64, bend_curve: &Option<PathBuf>) -> Result<Report> {
    let mut file = ScenarioFile::default();
    file.models.geometry.arc_length = positive("arc", arc)?;
    file.models.geometry.sensor_thickness = positive("thickness", thickness)?;
    file.models.bend_curve = bend_curve.clone();
    let pipeline = file.diameter_pipeline()?;
    let strain = pipeline.bend_curve.invert(y)?;
    let wrap = pipeline.geometry.wrap_from_strain(strain)?;
    Report::new(
        "diameter",
        json!({"rel_resistance_ratio": y, "arc_length_m": arc, "thickness_m": thickness}),
        json!({
            "diameter_mm": wrap.diameter() * 1e3,
            "bending_strain_ratio": strain,
            "curvature_radius_mm": wrap.curvature_radius * 1e3,
            "curvature_angle_deg": wrap.curvature_angle_deg,
        }),
    )
}

fn baseline(a: &BaselineArgs) -> Result<Report> {
    let cfg = BaselineConfig {
        window: a.window,
        k_mad: a.k_mad,
        max_pulse_duration: a.max_pulse,
        ..BaselineConfig::default()
    };
    let series = read_strain(&a.series)?;
    let bc = baseline_correct(&series, &cfg)?;
    write_atomic(&a.out, series_csv(&STRAIN_HEADER, &[&bc.corrected]).as_bytes())?;
    if let Some(p) = &a.disturbances {
        write_atomic(p, disturbances_csv(&bc.events).as_bytes())?;
    }
    let events: Vec<Value> = bc
        .events
        .iter()
        .map(|e| json!({"onset_s": e.onset, "duration_s": e.duration, "type": e.kind.as_str()}))
        .collect();
    Report::new(
        "baseline",
        json!({"window_count": cfg.window, "k_mad_ratio": cfg.k_mad, "max_pulse_s": cfg.max_pulse_duration}),
        json!({"samples_count": series.len(), "events": events}),
    )
}

/// Classifier settings for daily stem rows paired with dense synthetic VPD.
pub fn stem_classify_config() -> ClassifyConfig {
    ClassifyConfig {
        vpd_trend: TrendModel::Diurnal,
        ..ClassifyConfig::default()
    }
}

/// Synthetic VPD for `condition` over the span of the table.
pub fn synthetic_vpd(
    t: &StemTable,
    condition: planta_core::scenario::Condition,
    seed: u64,
) -> Result<planta_core::TimeSeries> {
    let span_days = (t.rows[t.rows.len() - 1].day - t.rows[0].day) as f64;
    let s = PlantScenario {
        duration_days: span_days,
        seed,
        external_period: 0.0,
        ..PlantScenario::with_condition(condition)
    };
    Ok(generate(&s)?.vpd)
}

fn analyze_stems(table: &Option<PathBuf>, seed: u64) -> Result<Report> {
    let t = match table {
        Some(p) => StemTable::from_path(p)?,
        None => StemTable::builtin()?,
    };
    let offsets = stretched_offset_check(&t);
    let classify = stem_classify_config();
    let mut per = serde_json::Map::new();
    for (c, off) in offsets {
        let dia = t.series(c, Sensor::Pristine)?;
        let label = match classify_stress(&synthetic_vpd(&t, c, seed)?, &dia, &classify) {
            Ok(l) => Some(l),
            Err(
                planta_core::Error::WindowNotCovered { .. } | planta_core::Error::InsufficientData { .. },
            ) => None,
            Err(e) => return Err(e.into()),
        };
        per.insert(
            condition_key(c).to_string(),
            json!({
                "slope_pristine_mm_per_day": t.slope(c, Sensor::Pristine).ok(),
                "slope_stretched_mm_per_day": t.slope(c, Sensor::Stretched).ok(),
                "offset_mean_mm": off.mean,
                "offset_max_mm": off.max,
                "offset_max_deviation_mm": off.max_deviation,
                "label": label.map(|l| l.label.as_str()),
                "vpd_slope_kpa_per_day": label.map(|l| l.evidence.vpd_slope),
                "diameter_slope_mm_per_day": label.map(|l| l.evidence.diameter_slope),
            }),
        );
    }
    debug_assert_eq!(per.len(), CONDITIONS.len());
    Report::new(
        "analyze-stems",
        json!({
            "table": table.as_ref().map_or("<builtin>".to_string(), |p| p.display().to_string()),
            "rows_count": t.rows.len(),
            "vpd_seed": seed.to_string(),
        }),
        Value::Object(per),
    )
}

fn lag(
    lower: &Path,
    upper: &Path,
    max_lag_min: f64,
    watering_time: Option<f64>,
    equal_tol: f64,
) -> Result<Report> {
    let l = read_two_column(lower, "lower", Unit::PercentRh)?;
    let u = read_two_column(upper, "upper", Unit::PercentRh)?;
    let cfg = LagConfig {
        max_lag: max_lag_min * 60.0,
        equal_tol,
        watering_time,
        ..LagConfig::default()
    };
    let r = translocation_lag(&l, &u, &cfg)?;
    Report::new(
        "lag",
        json!({"max_lag_min": max_lag_min, "equal_tol_pct": equal_tol, "watering_time_s": watering_time}),
        json!({
            "lag_min": r.lag / 60.0,
            "lag_s": r.lag,
            "equalization_time_s": r.equalization_time,
        }),
    )
}

fn scenario_run(file: &Path, seed: Option<u64>, out: &Path) -> Result<Report> {
    let f = ScenarioFile::from_path(file)?;
    run_scenario_file(&f, seed, out)
}

pub fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Vpd {
            leaf_temp,
            air_temp,
            rh,
        } => vpd(*leaf_temp, *air_temp, *rh),
        Command::Mpp { config, rh } => mpp(config, *rh),
        Command::Efficiency {
            output_joules,
            evaporated_grams,
            heat_of_evaporation,
            molar_mass,
        } => efficiency(
            *output_joules,
            *evaporated_grams,
            *heat_of_evaporation,
            *molar_mass,
        ),
        Command::SimulatePower {
            profile,
            hours,
            config,
            events_out,
        } => simulate_power(profile, *hours, config, events_out),
        Command::MinPower {
            readings,
            hours,
            config,
        } => min_power(*readings, *hours, config),
        Command::Diameter {
            rel_resistance,
            arc,
            thickness,
            bend_curve,
        } => diameter(*rel_resistance, *arc, *thickness, bend_curve),
        Command::Baseline(a) => baseline(a),
        Command::AnalyzeStems { table, seed } => analyze_stems(table, *seed),
        Command::Lag {
            lower,
            upper,
            max_lag_min,
            watering_time,
            equal_tol,
        } => lag(lower, upper, *max_lag_min, *watering_time, *equal_tol),
        Command::Scenario(ScenarioCommand::Run { file, seed, out }) => scenario_run(file, *seed, out),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), numfmt::display),
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

/// `key: value` lines; nested keys are dotted, arrays show their length.
pub fn human(v: &Value) -> String {
    fn walk(v: &Value, prefix: &str, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, item) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(item, &key, out);
                }
            }
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push_str(&format!("{prefix}: {} entries\n", items.len()));
            }
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
            }
            other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
        }
    }
    let mut out = String::new();
    walk(v, "", &mut out);
    out
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json_requested = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let err = CliError::Usage(e.to_string().trim_end().to_string());
            report_error(&err, json_requested, stderr);
            return err.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let text = if cli.json {
                report.to_json()
            } else {
                human(&report.result)
            };
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(err) => {
            report_error(&err, cli.json, stderr);
            err.exit_code()
        }
    }
}

fn report_error(err: &CliError, json: bool, stderr: &mut dyn Write) {
    if json {
        let _ = writeln!(stderr, "{}", err.to_json());
    } else {
        let _ = writeln!(stderr, "error: {err}");
    }
}
