use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result, Unit};

/// A named, unit-tagged channel of `(timestamp, value)` samples.
///
/// Timestamps are seconds (since epoch or scenario start) and strictly
/// increasing; every value is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    channel: String,
    unit: Unit,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(channel: impl Into<String>, unit: Unit, times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::LengthMismatch(times.len(), values.len()));
        }
        if times.iter().chain(values.iter()).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if let Some(i) = times.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::NonIncreasingTime(i + 1));
        }
        Ok(TimeSeries {
            channel: channel.into(),
            unit,
            times,
            values,
        })
    }

    pub fn from_samples(
        channel: impl Into<String>,
        unit: Unit,
        samples: impl IntoIterator<Item = (f64, f64)>,
    ) -> Result<Self> {
        let (times, values) = samples.into_iter().unzip();
        Self::new(channel, unit, times, values)
    }

    pub fn empty(channel: impl Into<String>, unit: Unit) -> Self {
        TimeSeries {
            channel: channel.into(),
            unit,
            times: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn channel(&self) -> &str {
        &self.channel
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }

    pub fn first_time(&self) -> Option<f64> {
        self.times.first().copied()
    }

    pub fn last_time(&self) -> Option<f64> {
        self.times.last().copied()
    }

    /// Linear interpolation between samples, holding the end values outside
    /// the sampled span.
    pub fn value_at(&self, t: f64) -> Option<f64> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        if t <= self.times[0] {
            return Some(self.values[0]);
        }
        if t >= self.times[n - 1] {
            return Some(self.values[n - 1]);
        }
        let hi = self.times.partition_point(|&x| x <= t);
        let lo = hi - 1;
        let (t0, t1) = (self.times[lo], self.times[hi]);
        let (v0, v1) = (self.values[lo], self.values[hi]);
        Some(v0 + (t - t0) * (v1 - v0) / (t1 - t0))
    }

    /// Zero-order hold: the latest sample at or before `t`, or the first
    /// sample when `t` precedes the series.
    pub fn hold_at(&self, t: f64) -> Option<f64> {
        if self.is_empty() {
            return None;
        }
        let idx = self.times.partition_point(|&x| x <= t);
        Some(self.values[idx.saturating_sub(1)])
    }

    /// Samples with `t >= last_time - window`. A sample sitting on the
    /// window edge stays in even after rounding from a time shift.
    pub fn trailing(&self, window: f64) -> (&[f64], &[f64]) {
        match self.last_time() {
            None => (&[], &[]),
            Some(end) => {
                let slack = 1e-12 * (end.abs() + window.abs());
                let start = self.times.partition_point(|&t| t < end - window - slack);
                (&self.times[start..], &self.values[start..])
            }
        }
    }

    /// Prefix of the series with `t <= end`.
    pub fn until(&self, end: f64) -> TimeSeries {
        let n = self.times.partition_point(|&t| t <= end);
        TimeSeries {
            channel: self.channel.clone(),
            unit: self.unit,
            times: self.times[..n].to_vec(),
            values: self.values[..n].to_vec(),
        }
    }

    pub fn shift_time(&self, dt: f64) -> Result<TimeSeries> {
        TimeSeries::new(
            self.channel.clone(),
            self.unit,
            self.times.iter().map(|t| t + dt).collect(),
            self.values.clone(),
        )
    }

    pub fn map_values(&self, mut f: impl FnMut(f64) -> f64) -> Result<TimeSeries> {
        TimeSeries::new(
            self.channel.clone(),
            self.unit,
            self.times.clone(),
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    pub fn with_unit(mut self, unit: Unit) -> Self {
        self.unit = unit;
        self
    }

    pub fn renamed(mut self, channel: impl Into<String>) -> Self {
        self.channel = channel.into();
        self
    }

    /// Median spacing between consecutive timestamps.
    pub fn median_spacing(&self) -> Option<f64> {
        if self.len() < 2 {
            return None;
        }
        let mut dts: Vec<f64> = self.times.windows(2).map(|w| w[1] - w[0]).collect();
        Some(crate::stats::median_in_place(&mut dts))
    }
}
