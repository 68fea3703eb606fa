//! Gap and density statistics of strictly increasing integer sequences.
//!
//! Terms are held either as exact big integers or as high-precision natural
//! logarithms. Estimators turn a finite prefix into tail-window surrogates
//! for the limsup/liminf quantities; the verifier checks the inequalities
//! relating them; the series probe brackets the exponent of convergence.

pub mod cli;
pub mod error;
pub mod estimators;
pub mod generators;
pub mod par;
pub mod report;
pub mod sequence;
pub mod series;
pub mod table;
pub mod textfmt;
pub mod verifier;

pub use error::{Error, Result};
