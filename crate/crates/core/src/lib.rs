//! Timing, overhead and detection-accuracy models for NR beam management at
//! mmWave frequencies.
//!
//! The analytic modules work in exact rational milliseconds ([`time::Millis`]),
//! so delays such as `740.11608125` ms come out without rounding. The
//! [`channel`] module estimates misdetection probability by Monte Carlo.

pub mod beams;
pub mod channel;
pub mod cli;
pub mod error;
pub mod format;
pub mod ia;
pub mod numerology;
pub mod overhead;
pub mod time;
pub mod tracking;

pub use error::{Error, Result};
pub use time::Millis;
