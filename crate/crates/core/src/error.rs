use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the models and pipelines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("stimulus {value} outside calibrated domain [{min}, {max}]")]
    OutOfDomain { value: f64, min: f64, max: f64 },
    #[error("response {value} outside calibrated range [{min}, {max}]")]
    OutOfRange { value: f64, min: f64, max: f64 },
    #[error("calibration table must have strictly increasing stimuli and strictly monotone responses")]
    NonMonotone,
    #[error("calibration table needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("value is not finite")]
    NonFinite,
    #[error("timestamps must be strictly increasing (index {0})")]
    NonIncreasingTime(usize),
    #[error("series lengths differ: {0} timestamps vs {1} values")]
    LengthMismatch(usize, usize),
    #[error("relative humidity {0} %RH outside [0, 100]")]
    InvalidHumidity(f64),
    #[error("insufficient data: need at least {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("mean is zero; coefficient of variation undefined")]
    ZeroMean,
    #[error("series spans {span} s, shorter than the {window} s window")]
    WindowNotCovered { span: f64, window: f64 },
    #[error("series has zero variance")]
    ZeroVariance,
    #[error("load grid is empty")]
    EmptyGrid,
    #[error("{0} must be strictly positive")]
    NonPositive(&'static str),
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("temperature {value} °C outside sensor range [{min}, {max}]")]
    TemperatureRange { value: f64, min: f64, max: f64 },
    #[error("resistance {value} Ω outside the sensor's calibrated image [{min}, {max}]")]
    ResistanceRange { value: f64, min: f64, max: f64 },
    #[error("strain {value} outside [0, {max}]")]
    StrainOutOfRange { value: f64, max: f64 },
    #[error("bending radius must be positive")]
    NonPositiveRadius,
    #[error("input outside sanity window: {0}")]
    SanityRange(&'static str),
    #[error("channels never equalize within tolerance")]
    NoEqualization,
    #[error("AC current is zero")]
    ZeroCurrent,
    #[error("divider node voltage {v} V at or above source {source_v} V")]
    DividerSaturated { v: f64, source_v: f64 },
    #[error("infeasible: {0}")]
    Infeasible(&'static str),
}
