//! Long-range memory evolution and multi-scale cyclicity detection for
//! regular monthly count series.
//!
//! The crate provides:
//! - a monthly series data model with CSV ingestion, differencing,
//!   descriptive moments and correlation functions ([`series`]);
//! - a hypothesis-test battery for normality, stationarity, seasonality,
//!   long memory and nonlinearity ([`stats`]);
//! - point Hurst estimation, the expanding-window (chronological) Hurst
//!   path and its three-regime segmentation ([`hurst`]);
//! - a Morlet continuous wavelet transform with red-noise significance,
//!   ridges, global spectra and dominant-period detection ([`wavelet`]);
//! - seedable generators of fractional Gaussian noise, fractional Brownian
//!   motion and AR(1) series used as estimator oracles ([`synth`]);
//! - the bundled US CDER monthly drug-approvals dataset ([`bundled`]).
//!
//! Heavy inner loops run on rayon when the default `parallel` feature is
//! enabled and fall back to sequential execution without it.

pub mod bundled;
pub mod error;
pub mod hurst;
pub mod numeric;
pub mod par;
pub mod series;
pub mod stats;
pub mod synth;
pub mod wavelet;

pub use error::{Error, Result};
pub use series::{
    aggregate_events, correlation_function, descriptive_stats, difference, load_monthly_csv,
    ndiffs, CalendarDate, CorrelationFunction, CorrelationKind, DescriptiveStats, GapPolicy,
    MonthYear, MonthlySeries, ValueDomain,
};
