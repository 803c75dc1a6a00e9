//! Synthetic plants: diurnal air conditions, leaf microclimate, stem growth
//! or shrinkage, composed with the sensor, power and analytics models into
//! field-deployment-shaped runs.
//!
//! Time zero is local midnight. Leaf offsets default to a cooler, more humid
//! under-leaf microclimate (−1.5 °C, +8 %RH); these are invented defaults,
//! not measurements. Stress conditions add a slow leaf-temperature and
//! air-humidity drift so that VPD trends up (water stress) or down
//! (salinity stress), and set the stem slope to the field trends.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::analytics::{
    classify_stress, vapor_pressures, ClassifyConfig, StressLabel, TrendModel, VpdInputs,
};
use crate::kirigami::DiameterPipeline;
use crate::meg::{matched_power, open_circuit_voltage, MegConfig};
use crate::powerchain::{simulate, EnergyLedger, PowerChainConfig, ReadingEvent};
use crate::transducers::{
    adc_read, divider_resistance, resistance_to_temp, rh_from_meg_voltage, temp_to_resistance, AdcModel,
    HumiditySensorModel, TempSensorModel,
};
use crate::{Error, Result, TimeSeries, Unit, SECONDS_PER_DAY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Condition {
    #[default]
    Healthy,
    WaterStress,
    SalinityStress,
}

impl Condition {
    pub fn as_str(self) -> &'static str {
        match self {
            Condition::Healthy => "HEALTHY",
            Condition::WaterStress => "WATER_STRESS",
            Condition::SalinityStress => "SALINITY_STRESS",
        }
    }

    /// Initial stem diameter (mm) and slope (mm/day).
    pub fn growth_defaults(self) -> (f64, f64) {
        match self {
            Condition::Healthy => (6.43, 0.0095),
            Condition::WaterStress => (6.87, -0.0103),
            Condition::SalinityStress => (6.52, -0.0095),
        }
    }

    /// Leaf temperature drift (°C/day) and air humidity drift (%RH/day).
    pub fn drift_defaults(self) -> (f64, f64) {
        match self {
            Condition::Healthy => (0.0, 0.0),
            Condition::WaterStress => (0.15, -0.3),
            Condition::SalinityStress => (-0.1, 0.4),
        }
    }
}

/// `mean + amplitude·cos(2π(h − peak_hour)/24)` plus Gaussian noise.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct DiurnalProfile {
    pub mean: f64,
    pub amplitude: f64,
    pub peak_hour: f64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub noise_sigma: f64,
}

impl DiurnalProfile {
    pub fn at(&self, t: f64) -> f64 {
        let hours = t / 3600.0 - self.peak_hour;
        self.mean + self.amplitude * libm::cos(2.0 * core::f64::consts::PI * hours / 24.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct GrowthModel {
    /// Overrides the condition default, mm.
    pub initial_diameter_mm: Option<f64>,
    /// Overrides the condition default, mm/day.
    pub slope_mm_per_day: Option<f64>,
    pub noise_sigma_mm: f64,
}

/// Under-leaf humidity bump after watering: `amplitude·(1 − e^(−Δt/τ_rise))·e^(−Δt/τ_decay)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct WateringResponse {
    /// %RH
    pub amplitude: f64,
    /// s
    pub rise_time: f64,
    /// s
    pub decay_time: f64,
}

impl Default for WateringResponse {
    fn default() -> Self {
        WateringResponse {
            amplitude: 10.0,
            rise_time: 1800.0,
            decay_time: 6.0 * 3600.0,
        }
    }
}

impl WateringResponse {
    fn at(&self, since: f64) -> f64 {
        if since < 0.0 {
            return 0.0;
        }
        self.amplitude * (1.0 - libm::exp(-since / self.rise_time)) * libm::exp(-since / self.decay_time)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)
)]
pub enum HarvestModel {
    Constant {
        power_watts: f64,
    },
    /// `scale × matched power` of the MEG at the under-leaf humidity.
    Meg {
        scale: f64,
    },
}

impl Default for HarvestModel {
    fn default() -> Self {
        HarvestModel::Constant { power_watts: 0.25e-6 }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct PlantScenario {
    pub duration_days: f64,
    pub condition: Condition,
    pub seed: u64,
    /// Truth grid spacing, s.
    pub sample_period: f64,
    /// °C
    pub air_temp: DiurnalProfile,
    /// %RH
    pub air_rh: DiurnalProfile,
    /// °C
    pub leaf_temp_offset: f64,
    /// %RH
    pub leaf_rh_offset: f64,
    /// Overrides the condition default, °C/day.
    pub leaf_temp_drift: Option<f64>,
    /// Overrides the condition default, %RH/day.
    pub air_rh_drift: Option<f64>,
    pub growth: GrowthModel,
    /// s
    pub watering_times: Vec<f64>,
    pub watering: WateringResponse,
    /// Salinity dosing markers (100 mL of 1 M NaCl each), s.
    pub salinity_doses: Vec<f64>,
    pub harvest: HarvestModel,
    /// Spacing of the bench-powered reference readings, s; 0 disables them.
    pub external_period: f64,
}

impl Default for PlantScenario {
    fn default() -> Self {
        PlantScenario {
            duration_days: 14.0,
            condition: Condition::Healthy,
            seed: 0,
            sample_period: 600.0,
            air_temp: DiurnalProfile {
                mean: 25.0,
                amplitude: 4.0,
                peak_hour: 14.0,
                noise_sigma: 0.05,
            },
            air_rh: DiurnalProfile {
                mean: 55.0,
                amplitude: 10.0,
                peak_hour: 2.0,
                noise_sigma: 0.3,
            },
            leaf_temp_offset: -1.5,
            leaf_rh_offset: 8.0,
            leaf_temp_drift: None,
            air_rh_drift: None,
            growth: GrowthModel {
                noise_sigma_mm: 0.003,
                ..GrowthModel::default()
            },
            watering_times: Vec::new(),
            watering: WateringResponse::default(),
            salinity_doses: Vec::new(),
            harvest: HarvestModel::default(),
            external_period: 3600.0,
        }
    }
}

impl PlantScenario {
    pub fn healthy() -> Self {
        Self::default()
    }

    pub fn with_condition(condition: Condition) -> Self {
        PlantScenario {
            condition,
            ..Self::default()
        }
    }

    pub fn duration(&self) -> f64 {
        self.duration_days * SECONDS_PER_DAY
    }

    pub fn initial_diameter_mm(&self) -> f64 {
        self.growth
            .initial_diameter_mm
            .unwrap_or(self.condition.growth_defaults().0)
    }

    pub fn diameter_slope(&self) -> f64 {
        self.growth
            .slope_mm_per_day
            .unwrap_or(self.condition.growth_defaults().1)
    }

    fn drifts(&self) -> (f64, f64) {
        let (dt, drh) = self.condition.drift_defaults();
        (
            self.leaf_temp_drift.unwrap_or(dt),
            self.air_rh_drift.unwrap_or(drh),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.duration_days >= 0.0) || !self.duration_days.is_finite() {
            return Err(Error::InvalidConfig("duration_days must be finite and >= 0"));
        }
        if !(self.sample_period > 0.0) {
            return Err(Error::NonPositive("sample_period"));
        }
        let sigmas = [
            self.air_temp.noise_sigma,
            self.air_rh.noise_sigma,
            self.growth.noise_sigma_mm,
        ];
        if sigmas.iter().any(|s| !(*s >= 0.0) || !s.is_finite()) {
            return Err(Error::InvalidConfig("noise sigmas must be finite and >= 0"));
        }
        if !(self.external_period >= 0.0) || !self.external_period.is_finite() {
            return Err(Error::InvalidConfig("external_period must be finite and >= 0"));
        }
        if !(self.watering.rise_time > 0.0 && self.watering.decay_time > 0.0) {
            return Err(Error::NonPositive("watering time constants"));
        }
        let d0 = self.initial_diameter_mm();
        let d1 = d0 + self.diameter_slope() * self.duration_days;
        if !(d0 > 3.0 && d0 < 15.0 && d1 > 3.0 && d1 < 15.0) {
            return Err(Error::InvalidConfig(
                "diameter trajectory must stay within (3, 15) mm",
            ));
        }
        let (HarvestModel::Constant { power_watts: p } | HarvestModel::Meg { scale: p }) = self.harvest;
        if !(p >= 0.0) || !p.is_finite() {
            return Err(Error::InvalidConfig("harvest parameters must be finite and >= 0"));
        }
        Ok(())
    }
}

/// Noise-inclusive ground truth on the scenario grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Truth {
    pub air_temp: TimeSeries,
    pub air_rh: TimeSeries,
    pub leaf_temp: TimeSeries,
    pub leaf_rh: TimeSeries,
    pub vpd: TimeSeries,
    pub diameter_mm: TimeSeries,
}

impl Truth {
    pub fn channels(&self) -> [&TimeSeries; 6] {
        [
            &self.air_temp,
            &self.air_rh,
            &self.leaf_temp,
            &self.leaf_rh,
            &self.vpd,
            &self.diameter_mm,
        ]
    }
}

struct NoiseStream(Option<(ChaCha8Rng, Normal<f64>)>);

impl NoiseStream {
    /// One independent stream per channel, all keyed by the scenario seed.
    fn new(seed: u64, stream: u64, sigma: f64) -> Self {
        if sigma == 0.0 {
            return NoiseStream(None);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        NoiseStream(Normal::new(0.0, sigma).ok().map(|n| (rng, n)))
    }

    fn next(&mut self) -> f64 {
        match &mut self.0 {
            Some((rng, normal)) => normal.sample(rng),
            None => 0.0,
        }
    }
}

pub fn generate(s: &PlantScenario) -> Result<Truth> {
    s.validate()?;
    let n = if s.duration_days == 0.0 {
        0
    } else {
        libm::floor(s.duration() / s.sample_period + 1e-9) as usize + 1
    };
    let times: Vec<f64> = (0..n).map(|k| k as f64 * s.sample_period).collect();
    let (temp_drift, rh_drift) = s.drifts();
    let (d0, slope) = (s.initial_diameter_mm(), s.diameter_slope());

    let mut temp_noise = NoiseStream::new(s.seed, 0, s.air_temp.noise_sigma);
    let mut rh_noise = NoiseStream::new(s.seed, 1, s.air_rh.noise_sigma);
    let mut dia_noise = NoiseStream::new(s.seed, 2, s.growth.noise_sigma_mm);

    let cap = Vec::with_capacity(n);
    let (mut air_t, mut air_rh, mut leaf_t, mut leaf_rh, mut vpd, mut dia) = (
        cap.clone(),
        cap.clone(),
        cap.clone(),
        cap.clone(),
        cap.clone(),
        cap,
    );
    for &t in &times {
        let day = t / SECONDS_PER_DAY;
        let ta = s.air_temp.at(t) + temp_noise.next();
        let rha = (s.air_rh.at(t) + rh_drift * day + rh_noise.next()).clamp(0.0, 100.0);
        let tl = ta + s.leaf_temp_offset + temp_drift * day;
        let watering: f64 = s.watering_times.iter().map(|&w| s.watering.at(t - w)).sum();
        let rhl = (rha + s.leaf_rh_offset + watering).clamp(0.0, 100.0);
        let v = vapor_pressures(&VpdInputs {
            leaf_temp: tl,
            air_temp: ta,
            air_rh: rha,
        })?;
        air_t.push(ta);
        air_rh.push(rha);
        leaf_t.push(tl);
        leaf_rh.push(rhl);
        vpd.push(v.vpd);
        dia.push(d0 + slope * day + dia_noise.next());
    }
    let series = |name: &str, unit, values| TimeSeries::new(name, unit, times.clone(), values);
    Ok(Truth {
        air_temp: series("air_temp", Unit::Celsius, air_t)?,
        air_rh: series("air_rh", Unit::PercentRh, air_rh)?,
        leaf_temp: series("leaf_temp", Unit::Celsius, leaf_t)?,
        leaf_rh: series("leaf_rh", Unit::PercentRh, leaf_rh)?,
        vpd: series("vpd", Unit::Kilopascal, vpd)?,
        diameter_mm: series("diameter", Unit::Millimetre, dia)?,
    })
}

/// Every model the end-to-end run composes.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfigs {
    pub power: PowerChainConfig,
    pub meg: MegConfig,
    pub humidity: HumiditySensorModel,
    pub temperature: TempSensorModel,
    /// Shared by the temperature and humidity channels.
    pub adc: AdcModel,
    /// Strain bridge converter. 12 bits resolve the stem only to about
    /// 0.15 mm, far coarser than a day's growth, so the default is a 24-bit
    /// sigma-delta class part.
    pub strain_adc: AdcModel,
    pub diameter: DiameterPipeline,
    pub classify: ClassifyConfig,
}

impl Default for ModelConfigs {
    fn default() -> Self {
        let gauge = crate::kirigami::GaugeModel::default();
        ModelConfigs {
            power: PowerChainConfig::default(),
            meg: MegConfig::default(),
            humidity: HumiditySensorModel::default(),
            temperature: TempSensorModel::default(),
            adc: AdcModel::default(),
            strain_adc: AdcModel {
                bits: 24,
                divider_fixed_resistor: gauge.r_baseline,
                ..AdcModel::default()
            },
            diameter: DiameterPipeline::new(gauge, crate::kirigami::StemGeometry::default())
                .expect("default gauge and geometry are valid"),
            classify: ClassifyConfig {
                vpd_trend: TrendModel::Diurnal,
                ..ClassifyConfig::default()
            },
        }
    }
}

pub const SENSED_CHANNELS: [(&str, Unit); 5] = [
    ("leaf_temp", Unit::Ohm),
    ("air_temp", Unit::Ohm),
    ("air_rh", Unit::Volt),
    ("leaf_rh", Unit::Volt),
    ("stem", Unit::Ohm),
];

pub const DERIVED_CHANNELS: [(&str, Unit); 6] = [
    ("leaf_temp", Unit::Celsius),
    ("air_temp", Unit::Celsius),
    ("air_rh", Unit::PercentRh),
    ("leaf_rh", Unit::PercentRh),
    ("vpd", Unit::Kilopascal),
    ("diameter", Unit::Millimetre),
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub truth: Truth,
    /// Harvested power fed to the power chain, W.
    pub harvest: TimeSeries,
    pub events: Vec<ReadingEvent>,
    pub ledger: EnergyLedger,
    /// Analog sensor outputs at each completed reading, in
    /// [`SENSED_CHANNELS`] order.
    pub sensed: Vec<TimeSeries>,
    /// ADC codes for the sensed channels.
    pub digitized: Vec<TimeSeries>,
    /// Reconstructed quantities, in [`DERIVED_CHANNELS`] order.
    pub derived: Vec<TimeSeries>,
    /// Stress label at every reading where the trend windows are covered.
    pub labels: Vec<(f64, StressLabel)>,
    /// The same pipeline on a bench supply, read every `external_period`
    /// regardless of harvest, in [`DERIVED_CHANNELS`] order.
    pub external: Vec<TimeSeries>,
}

impl RunOutput {
    pub fn derived(&self, name: &str) -> Option<&TimeSeries> {
        self.derived.iter().find(|s| s.channel() == name)
    }

    pub fn sensed(&self, name: &str) -> Option<&TimeSeries> {
        self.sensed.iter().find(|s| s.channel() == name)
    }

    pub fn final_label(&self) -> Option<&StressLabel> {
        self.labels.last().map(|(_, l)| l)
    }
}

fn harvest_profile(s: &PlantScenario, truth: &Truth, meg: &MegConfig) -> Result<TimeSeries> {
    let times = truth.leaf_rh.times().to_vec();
    let values = match s.harvest {
        HarvestModel::Constant { power_watts } => alloc::vec![power_watts; times.len()],
        HarvestModel::Meg { scale } => truth
            .leaf_rh
            .values()
            .iter()
            .map(|&rh| Ok(scale * matched_power(open_circuit_voltage(meg, rh)?, meg.internal_resistance)))
            .collect::<Result<_>>()?,
    };
    TimeSeries::new("harvest", Unit::Watt, times, values)
}

struct Reading {
    sensed: [f64; 5],
    codes: [u64; 5],
    derived: [f64; 6],
}

fn temperature_channel(cfg: &ModelConfigs, t: f64) -> Result<(f64, u64, f64)> {
    let r = temp_to_resistance(&cfg.temperature, t)?;
    let code = adc_read(&cfg.adc, cfg.adc.divider_voltage(r, cfg.adc.vref)).code;
    let t_back = resistance_to_temp(
        &cfg.temperature,
        divider_resistance(&cfg.adc, code, cfg.adc.vref)?,
    )?;
    Ok((r, code, t_back))
}

fn humidity_channel(cfg: &ModelConfigs, rh: f64, t_true: f64, t_sensed: f64) -> Result<(f64, u64, f64)> {
    let v = cfg.humidity.voltage_for(rh, t_true)?;
    let code = adc_read(&cfg.adc, v).code;
    // The sensor saturates at the ends of its calibrated span.
    let (lo, hi) = cfg.humidity.curve.range();
    let v_back = cfg.adc.code_to_voltage(code).clamp(lo, hi);
    Ok((v, code, rh_from_meg_voltage(&cfg.humidity, v_back, t_sensed)?.rh))
}

fn stem_channel(cfg: &ModelConfigs, diameter_mm: f64) -> Result<(f64, u64, f64)> {
    let r0 = cfg.diameter.gauge.r_baseline;
    let adc = &cfg.strain_adc;
    let r = r0 * (1.0 + cfg.diameter.reading_from_diameter(diameter_mm * 1e-3)?);
    let code = adc_read(adc, adc.divider_voltage(r, adc.vref)).code;
    let y = divider_resistance(adc, code, adc.vref)? / r0 - 1.0;
    Ok((r, code, cfg.diameter.diameter_from_reading(y)? * 1e3))
}

fn take_reading(cfg: &ModelConfigs, truth: &Truth, t: f64) -> Result<Reading> {
    let at = |s: &TimeSeries| s.value_at(t).ok_or(Error::InsufficientData { needed: 1, got: 0 });
    let (air_t, air_rh, leaf_t, leaf_rh, dia) = (
        at(&truth.air_temp)?,
        at(&truth.air_rh)?,
        at(&truth.leaf_temp)?,
        at(&truth.leaf_rh)?,
        at(&truth.diameter_mm)?,
    );
    let (r_leaf, c_leaf, leaf_t_s) = temperature_channel(cfg, leaf_t)?;
    let (r_air, c_air, air_t_s) = temperature_channel(cfg, air_t)?;
    let (v_air, c_air_rh, air_rh_s) = humidity_channel(cfg, air_rh, air_t, air_t_s)?;
    let (v_leaf, c_leaf_rh, leaf_rh_s) = humidity_channel(cfg, leaf_rh, leaf_t, leaf_t_s)?;
    let (r_stem, c_stem, dia_s) = stem_channel(cfg, dia)?;
    let vpd = vapor_pressures(&VpdInputs {
        leaf_temp: leaf_t_s,
        air_temp: air_t_s,
        air_rh: air_rh_s,
    })?
    .vpd;
    Ok(Reading {
        sensed: [r_leaf, r_air, v_air, v_leaf, r_stem],
        codes: [c_leaf, c_air, c_air_rh, c_leaf_rh, c_stem],
        derived: [leaf_t_s, air_t_s, air_rh_s, leaf_rh_s, vpd, dia_s],
    })
}

fn is_window_shortfall(e: &Error) -> bool {
    matches!(e, Error::WindowNotCovered { .. } | Error::InsufficientData { .. })
}

pub fn end_to_end(s: &PlantScenario, cfg: &ModelConfigs) -> Result<RunOutput> {
    cfg.power.validate()?;
    cfg.adc.validate()?;
    cfg.strain_adc.validate()?;
    cfg.temperature.validate()?;
    cfg.humidity.validate()?;
    let truth = generate(s)?;
    let harvest = harvest_profile(s, &truth, &cfg.meg)?;
    let sim = simulate(&cfg.power, &harvest, s.duration())?;

    let mut events = sim.events;
    let mut times = Vec::new();
    let mut readings = Vec::new();
    for ev in events.iter_mut().filter(|e| e.completed) {
        let r = take_reading(cfg, &truth, ev.start_time)?;
        for ((name, unit), v) in DERIVED_CHANNELS.iter().zip(r.derived) {
            let key = [*name, "_", unit.as_str()].concat();
            ev.measurements.insert(key, v);
        }
        times.push(ev.start_time);
        readings.push(r);
    }

    let build = |name: &str, unit: Unit, f: &dyn Fn(&Reading) -> f64| {
        TimeSeries::new(
            name.to_string(),
            unit,
            times.clone(),
            readings.iter().map(f).collect(),
        )
    };
    let mut sensed = Vec::new();
    let mut digitized = Vec::new();
    for (i, (name, unit)) in SENSED_CHANNELS.iter().enumerate() {
        sensed.push(build(name, *unit, &|r| r.sensed[i])?);
        digitized.push(build(name, Unit::Count, &|r| r.codes[i] as f64)?);
    }
    let derived = DERIVED_CHANNELS
        .iter()
        .enumerate()
        .map(|(i, (name, unit))| build(name, *unit, &|r| r.derived[i]))
        .collect::<Result<Vec<_>>>()?;

    let labels = stress_labels(&derived[4], &derived[5], &cfg.classify)?;

    let mut ext_times = Vec::new();
    let mut ext = Vec::new();
    if s.external_period > 0.0 && !truth.air_temp.is_empty() {
        let mut k = 0u64;
        loop {
            let t = k as f64 * s.external_period;
            if t > s.duration() {
                break;
            }
            ext_times.push(t);
            ext.push(take_reading(cfg, &truth, t)?.derived);
            k += 1;
        }
    }
    let external = DERIVED_CHANNELS
        .iter()
        .enumerate()
        .map(|(i, (name, unit))| {
            TimeSeries::new(
                *name,
                *unit,
                ext_times.clone(),
                ext.iter().map(|r| r[i]).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RunOutput {
        truth,
        harvest,
        events,
        ledger: sim.final_state.ledger(),
        sensed,
        digitized,
        derived,
        labels,
        external,
    })
}

/// Classifies at every reading using only the data up to that reading.
pub fn stress_labels(
    vpd: &TimeSeries,
    diameter: &TimeSeries,
    cfg: &ClassifyConfig,
) -> Result<Vec<(f64, StressLabel)>> {
    let mut labels = Vec::new();
    for &t in vpd.times() {
        match classify_stress(&vpd.until(t), &diameter.until(t), cfg) {
            Ok(label) => labels.push((t, label)),
            Err(e) if is_window_shortfall(&e) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(labels)
}

/// Scenario name for output directories and reports.
pub fn label(s: &PlantScenario) -> String {
    [s.condition.as_str(), "_seed", &u64_to_string(s.seed)].concat()
}

fn u64_to_string(v: u64) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    let _ = write!(out, "{v}");
    out
}
