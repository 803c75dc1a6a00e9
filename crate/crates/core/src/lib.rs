//! Digital twin of a self-powered plant sensing suite.
//!
//! The crate models a moist-electric generator (MEG) as a Thévenin source,
//! simulates the intermittent power chain that lets it run a duty-cycled
//! readout, and implements the forward and inverse sensor models needed to
//! turn digitized readings back into leaf temperature, humidity, vapor
//! pressure deficit and stem diameter. Everything here is `no_std` with
//! `alloc`; file formats and the command-line front end live in the `planta`
//! crate.
//!
//! Units are SI base units internally (see [`units`]); millimetres only appear
//! where a channel is explicitly tagged with [`Unit::Millimetre`].

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analytics;
pub mod calibration;
mod error;
pub mod kirigami;
pub mod meg;
pub mod powerchain;
pub mod scenario;
pub mod series;
pub mod stats;
pub mod transducers;
pub mod units;

pub use calibration::{CalibrationTable, Direction, Extrapolation};
pub use error::{Error, Result};
pub use series::TimeSeries;
pub use units::Unit;

/// Seconds per day; trend slopes are reported per day.
pub const SECONDS_PER_DAY: f64 = 86_400.0;
