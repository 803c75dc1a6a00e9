//! Leaf–tattoo interface impedance: series resistance plus one parallel
//! charge-transfer / double-layer branch,
//! `Z(f) = R_s + R_ct / (1 + j·2πf·R_ct·C_dl)`.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ImpedanceCircuit {
    /// Ω
    pub r_series: f64,
    /// Ω
    pub r_ct: f64,
    /// F
    pub c_dl: f64,
}

impl ImpedanceCircuit {
    pub fn validate(&self) -> Result<()> {
        for (v, name) in [
            (self.r_series, "r_series"),
            (self.r_ct, "r_ct"),
            (self.c_dl, "c_dl"),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::NonPositive(name));
            }
        }
        Ok(())
    }
}

pub fn impedance(circuit: &ImpedanceCircuit, f: f64) -> Result<Complex64> {
    circuit.validate()?;
    if !(f >= 0.0) {
        return Err(Error::InvalidConfig("frequency must be >= 0"));
    }
    if f.is_infinite() {
        return Ok(Complex64::new(circuit.r_series, 0.0));
    }
    let omega_tau = 2.0 * core::f64::consts::PI * f * circuit.r_ct * circuit.c_dl;
    Ok(Complex64::new(circuit.r_series, 0.0) + circuit.r_ct / Complex64::new(1.0, omega_tau))
}

/// `|Z| = V_AC / I_AC` from measured amplitudes.
pub fn measured_impedance(v_ac: f64, i_ac: f64) -> Result<f64> {
    if i_ac == 0.0 {
        return Err(Error::ZeroCurrent);
    }
    Ok(v_ac / i_ac)
}

/// `n` log-spaced points over `[f_min, f_max]`.
pub fn impedance_sweep(
    circuit: &ImpedanceCircuit,
    f_min: f64,
    f_max: f64,
    n: usize,
) -> Result<Vec<(f64, Complex64)>> {
    if !(f_min > 0.0 && f_max > f_min) || n < 2 {
        return Err(Error::InvalidConfig("sweep needs 0 < f_min < f_max and n >= 2"));
    }
    let (a, b) = (libm::log10(f_min), libm::log10(f_max));
    (0..n)
        .map(|i| {
            let f = libm::pow(10.0, a + (b - a) * i as f64 / (n - 1) as f64);
            impedance(circuit, f).map(|z| (f, z))
        })
        .collect()
}
