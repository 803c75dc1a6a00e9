//! Plant-level quantities derived from sensor channels.

mod impedance;
mod lag;
mod stress;
mod vpd;

pub use impedance::{impedance, impedance_sweep, measured_impedance, ImpedanceCircuit};
pub use lag::{translocation_lag, LagConfig, LagResult};
pub use stress::{classify_stress, ClassifyConfig, StressClass, StressLabel, TrendEvidence, TrendModel};
pub use vpd::{saturation_vapor_pressure, vapor_pressures, VpdInputs, VpdResult};

use crate::SECONDS_PER_DAY;

/// Counts timestamps falling in daytime `[sunrise, sunset)` and at night.
/// Hours are local scenario time; t = 0 is midnight.
pub fn day_night_split(times: &[f64], sunrise_hour: f64, sunset_hour: f64) -> (usize, usize) {
    let day = times
        .iter()
        .filter(|&&t| {
            let hour = (libm::fmod(t, SECONDS_PER_DAY) + SECONDS_PER_DAY) % SECONDS_PER_DAY / 3600.0;
            (sunrise_hour..sunset_hour).contains(&hour)
        })
        .count();
    (day, times.len() - day)
}
