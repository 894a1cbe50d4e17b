//! Current-mode interconnect delay modelling.
//!
//! A distributed rc line driven through a source resistance and terminated
//! in a resistive load is reduced to a single dominant pole, giving a
//! closed-form delay that covers the voltage-mode (open) and current-mode
//! (shorted) limits. Around that model the crate provides:
//!
//! - [`params`]: line parameters, terminations, CSV ingestion
//! - [`delay`]: the closed-form pipeline (coefficients, series, pole, delay)
//! - [`exact`]: the exact s-domain transfer function and frequency response
//! - [`merit`]: damping factor, energy per bit, throughput
//! - [`ladder`]: an RLC ladder transient simulator used as an independent check
//! - [`harness`]: scenario files, sweeps, table reproduction and CSV output

pub mod delay;
pub mod error;
pub mod exact;
pub mod harness;
pub mod ladder;
pub mod merit;
pub mod params;
pub mod units;

pub use error::{Error, Result};
