//! Invertible piecewise-linear calibration tables.
//!
//! A table maps a physical stimulus (humidity, strain, temperature, ...) to an
//! electrical response. Stimuli are strictly increasing and responses strictly
//! monotone, so the map is a bijection on its knots' span and inversion is
//! exact up to rounding. Interpolation is linear between knots.

use alloc::vec::Vec;

use crate::{Error, Result, Unit};

/// Behaviour outside the knot span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Extrapolation {
    /// Hold the end response (forward simulation sources).
    Clamp,
    /// Continue the first/last segment.
    LinearExtend,
    /// Reject (default; inverse maps).
    #[default]
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationTable {
    stimuli: Vec<f64>,
    responses: Vec<f64>,
    direction: Direction,
    extrapolation: Extrapolation,
    stimulus_unit: Unit,
    response_unit: Unit,
}

impl CalibrationTable {
    pub fn new(points: Vec<(f64, f64)>, extrapolation: Extrapolation) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints(points.len()));
        }
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::NonFinite);
        }
        let (stimuli, responses): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        if stimuli.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::NonMonotone);
        }
        let direction = if responses[1] > responses[0] {
            Direction::Increasing
        } else {
            Direction::Decreasing
        };
        let monotone = responses.windows(2).all(|w| match direction {
            Direction::Increasing => w[1] > w[0],
            Direction::Decreasing => w[1] < w[0],
        });
        if !monotone {
            return Err(Error::NonMonotone);
        }
        Ok(CalibrationTable {
            stimuli,
            responses,
            direction,
            extrapolation,
            stimulus_unit: Unit::Ratio,
            response_unit: Unit::Ratio,
        })
    }

    /// Straight line `response = anchor_response + slope·(x − anchor_stimulus)`
    /// sampled at `knots`. Used to synthesize default tables from a stated
    /// sensitivity when no digitized curve is available.
    pub fn from_sensitivity(
        slope: f64,
        anchor_stimulus: f64,
        anchor_response: f64,
        knots: &[f64],
        extrapolation: Extrapolation,
    ) -> Result<Self> {
        let points = knots
            .iter()
            .map(|&x| (x, anchor_response + slope * (x - anchor_stimulus)))
            .collect();
        Self::new(points, extrapolation)
    }

    pub fn with_units(mut self, stimulus: Unit, response: Unit) -> Self {
        self.stimulus_unit = stimulus;
        self.response_unit = response;
        self
    }

    pub fn with_extrapolation(mut self, extrapolation: Extrapolation) -> Self {
        self.extrapolation = extrapolation;
        self
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn extrapolation(&self) -> Extrapolation {
        self.extrapolation
    }

    pub fn stimulus_unit(&self) -> Unit {
        self.stimulus_unit
    }

    pub fn response_unit(&self) -> Unit {
        self.response_unit
    }

    pub fn len(&self) -> usize {
        self.stimuli.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = (f64, f64)> + '_ {
        self.stimuli.iter().copied().zip(self.responses.iter().copied())
    }

    /// `(min, max)` stimulus.
    pub fn domain(&self) -> (f64, f64) {
        (self.stimuli[0], self.stimuli[self.len() - 1])
    }

    /// `(min, max)` response.
    pub fn range(&self) -> (f64, f64) {
        let (a, b) = (self.responses[0], self.responses[self.len() - 1]);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn eval(&self, stimulus: f64) -> Result<f64> {
        if !stimulus.is_finite() {
            return Err(Error::NonFinite);
        }
        let (min, max) = self.domain();
        if stimulus < min || stimulus > max {
            match self.extrapolation {
                Extrapolation::Error => {
                    return Err(Error::OutOfDomain {
                        value: stimulus,
                        min,
                        max,
                    })
                }
                Extrapolation::Clamp => {
                    let end = if stimulus < min { 0 } else { self.len() - 1 };
                    return Ok(self.responses[end]);
                }
                Extrapolation::LinearExtend => {}
            }
        }
        Ok(interpolate(&self.stimuli, &self.responses, stimulus, true))
    }

    pub fn invert(&self, response: f64) -> Result<f64> {
        if !response.is_finite() {
            return Err(Error::NonFinite);
        }
        let (min, max) = self.range();
        if response < min || response > max {
            match self.extrapolation {
                Extrapolation::Error => {
                    return Err(Error::OutOfRange {
                        value: response,
                        min,
                        max,
                    })
                }
                Extrapolation::Clamp => {
                    let low_end = response < min;
                    let first_is_low = self.direction == Direction::Increasing;
                    let end = if low_end == first_is_low {
                        0
                    } else {
                        self.len() - 1
                    };
                    return Ok(self.stimuli[end]);
                }
                Extrapolation::LinearExtend => {}
            }
        }
        let increasing = self.direction == Direction::Increasing;
        Ok(interpolate(&self.responses, &self.stimuli, response, increasing))
    }

    /// Same knots with every response multiplied by `factor` (> 0).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::NonPositive("scale factor"));
        }
        let points = self.points().map(|(x, y)| (x, y * factor)).collect();
        Ok(Self::new(points, self.extrapolation)?.with_units(self.stimulus_unit, self.response_unit))
    }
}

/// Piecewise-linear lookup of `k` on `keys` (monotone in the stated sense),
/// returning the matching value. Exact at knots; extends end segments.
fn interpolate(keys: &[f64], vals: &[f64], k: f64, increasing: bool) -> f64 {
    let n = keys.len();
    // number of keys on the "before" side of k
    let before = if increasing {
        keys.partition_point(|&x| x <= k)
    } else {
        keys.partition_point(|&x| x >= k)
    };
    if before > 0 && keys[before - 1] == k {
        return vals[before - 1];
    }
    let hi = before.clamp(1, n - 1);
    let lo = hi - 1;
    let (k0, k1) = (keys[lo], keys[hi]);
    let (v0, v1) = (vals[lo], vals[hi]);
    // anchor on the nearer knot to keep cancellation small
    if (k - k0).abs() <= (k1 - k).abs() {
        v0 + (k - k0) * (v1 - v0) / (k1 - k0)
    } else {
        v1 - (k1 - k) * (v1 - v0) / (k1 - k0)
    }
}
