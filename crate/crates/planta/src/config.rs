//! Scenario files: TOML with any number of `[[plant]]` tables and optional
//! `[models.*]` sections. Every key is optional; omitted keys take the
//! library defaults. Calibration CSV paths are relative to the file.
//!
//! ```toml
//! [[plant]]
//! condition = "WATER_STRESS"
//! duration_days = 14
//! harvest = { kind = "constant", power_watts = 2.5e-7 }
//!
//! [models.power]
//! capacitance = 880e-6
//!
//! [models.humidity]
//! curve = "my_rh_curve.csv"
//! ```

use std::path::{Path, PathBuf};

use planta_core::analytics::{ClassifyConfig, TrendModel};
use planta_core::kirigami::{DiameterPipeline, GaugeModel, StemGeometry};
use planta_core::meg::{
    default_voc_table, MegConfig, DEFAULT_ACTIVE_AREA, DEFAULT_INTERNAL_RESISTANCE, DEFAULT_VOC_ANCHOR,
};
use planta_core::powerchain::PowerChainConfig;
use planta_core::scenario::{ModelConfigs, PlantScenario};
use planta_core::transducers::{AdcModel, HumiditySensorModel, TempSensorModel};
use planta_core::Extrapolation;
use serde::{Deserialize, Serialize};

use crate::csvio::read_calibration;
use crate::error::{CliError, Result};
use crate::fileio::read_to_string;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HumiditySection {
    /// Voltage-vs-RH calibration CSV.
    pub curve: Option<PathBuf>,
    /// Voc at 30 %RH of the synthesized default curve, V.
    pub voc_anchor: f64,
    pub temp_coefficient: f64,
    pub t_reference: f64,
}

impl Default for HumiditySection {
    fn default() -> Self {
        let d = HumiditySensorModel::default();
        HumiditySection {
            curve: None,
            voc_anchor: DEFAULT_VOC_ANCHOR,
            temp_coefficient: d.temp_coefficient,
            t_reference: d.t_reference,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MegSection {
    /// Voc-vs-RH calibration CSV.
    pub voc_table: Option<PathBuf>,
    pub voc_anchor: f64,
    pub internal_resistance: f64,
    pub active_area: f64,
    pub converter_efficiency: f64,
    /// Load grid for the maximum power search, Ω.
    pub loads: Option<Vec<f64>>,
}

impl Default for MegSection {
    fn default() -> Self {
        MegSection {
            voc_table: None,
            voc_anchor: DEFAULT_VOC_ANCHOR,
            internal_resistance: DEFAULT_INTERNAL_RESISTANCE,
            active_area: DEFAULT_ACTIVE_AREA,
            converter_efficiency: MegConfig::default().converter_efficiency,
            loads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelsSection {
    pub power: PowerChainConfig,
    pub adc: AdcModel,
    /// Defaults to a 24-bit converter with the gauge's baseline resistance
    /// as the divider resistor.
    pub strain_adc: Option<AdcModel>,
    pub temperature: TempSensorModel,
    pub gauge: GaugeModel,
    pub geometry: StemGeometry,
    /// ΔR/R₀-vs-strain calibration CSV.
    pub bend_curve: Option<PathBuf>,
    /// Defaults to the diurnal VPD trend model.
    pub classify: Option<ClassifyConfig>,
    pub humidity: HumiditySection,
    pub meg: MegSection,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioFile {
    pub plant: Vec<PlantScenario>,
    pub models: ModelsSection,
    /// Directory relative calibration paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl ScenarioFile {
    pub fn parse(text: &str, source: &str, base_dir: &Path) -> Result<Self> {
        let mut f: ScenarioFile = toml::from_str(text)
            .map_err(|e| CliError::Data(format!("{source}: {}", e.to_string().trim_end())))?;
        f.base_dir = base_dir.to_path_buf();
        Ok(f)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&read_to_string(path)?, &path.display().to_string(), &base)
    }

    fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn meg_config(&self) -> Result<MegConfig> {
        let m = &self.models.meg;
        let voc_vs_rh = match &m.voc_table {
            Some(p) => read_calibration(&self.resolve(p), Extrapolation::Clamp)?,
            None => default_voc_table(m.voc_anchor, Extrapolation::Clamp),
        };
        let cfg = MegConfig {
            voc_vs_rh,
            internal_resistance: m.internal_resistance,
            active_area: m.active_area,
            converter_efficiency: m.converter_efficiency,
            ..MegConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// The configured grid, or a 20-per-decade grid over 1 Ω to 1 MΩ plus
    /// the internal resistance.
    pub fn load_grid(&self) -> Vec<f64> {
        if let Some(loads) = &self.models.meg.loads {
            return loads.clone();
        }
        let mut grid: Vec<f64> = (0..=120).map(|k| 10f64.powf(k as f64 / 20.0)).collect();
        grid.push(self.models.meg.internal_resistance);
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        grid
    }

    pub fn humidity_model(&self) -> Result<HumiditySensorModel> {
        let h = &self.models.humidity;
        let curve = match &h.curve {
            Some(p) => read_calibration(&self.resolve(p), Extrapolation::Error)?,
            None => default_voc_table(h.voc_anchor, Extrapolation::Error),
        };
        let m = HumiditySensorModel {
            curve,
            temp_coefficient: h.temp_coefficient,
            t_reference: h.t_reference,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn diameter_pipeline(&self) -> Result<DiameterPipeline> {
        let p = DiameterPipeline::new(self.models.gauge, self.models.geometry)?;
        Ok(match &self.models.bend_curve {
            Some(path) => p.with_bend_curve(read_calibration(&self.resolve(path), Extrapolation::Error)?),
            None => p,
        })
    }

    pub fn model_configs(&self) -> Result<ModelConfigs> {
        let m = &self.models;
        let strain_adc = m.strain_adc.unwrap_or(AdcModel {
            bits: 24,
            divider_fixed_resistor: m.gauge.r_baseline,
            ..AdcModel::default()
        });
        let classify = m.classify.unwrap_or(ClassifyConfig {
            vpd_trend: TrendModel::Diurnal,
            ..ClassifyConfig::default()
        });
        m.power.validate()?;
        m.temperature.validate()?;
        m.adc.validate()?;
        strain_adc.validate()?;
        Ok(ModelConfigs {
            power: m.power,
            meg: self.meg_config()?,
            humidity: self.humidity_model()?,
            temperature: m.temperature,
            adc: m.adc,
            strain_adc,
            diameter: self.diameter_pipeline()?,
            classify,
        })
    }

    /// Plants with seeds assigned: `base + i` when a base seed is given.
    pub fn seeded_plants(&self, base_seed: Option<u64>) -> Vec<PlantScenario> {
        self.plant
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut p = p.clone();
                if let Some(base) = base_seed {
                    p.seed = base.wrapping_add(i as u64);
                }
                p
            })
            .collect()
    }
}

/// Resolved scenario and model sections, as echoed into run outputs. The
/// echo is itself a valid scenario file.
#[derive(Debug, Serialize)]
pub struct Echo<'a> {
    pub plant: [&'a PlantScenario; 1],
    pub models: &'a ModelsSection,
}

pub fn echo_toml(plant: &PlantScenario, models: &ModelsSection) -> Result<String> {
    toml::to_string(&Echo {
        plant: [plant],
        models,
    })
    .map_err(|e| CliError::Data(format!("scenario echo: {e}")))
}
