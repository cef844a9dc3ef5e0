//! Medicine-strip image identification toolkit.
//!
//! Two feature extractors — 2-D cepstral coefficients ([`cepstrum`]) and
//! color-gradient-and-pill-shape statistics ([`cgpf`]) — feed three
//! multiclass classifiers ([`classify`]: KNN, linear SVM, logistic
//! regression). [`synth`] generates a deterministic strip benchmark and
//! [`evalx`] runs splits, accuracy reports, data-size sweeps and the
//! near-duplicate separation statistic.

pub mod cepstrum;
pub mod cgpf;
pub mod classify;
mod error;
pub mod evalx;
pub mod imaging;
mod seeds;
pub mod synth;

pub use error::{Error, Result};
