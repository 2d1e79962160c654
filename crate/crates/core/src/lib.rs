//! Generalization error bounds for a trained classifier that uses all
//! in-sample data for training.
//!
//! Two validation routes are compared:
//!
//! * SVOOSH, simultaneous validation over every hypothesis in the class, with
//!   bound range `eps_v = sqrt((ln(1/delta) + ln m(n)) / (2n))`;
//! * WAG (withhold and gap), which validates a holdout classifier on `v`
//!   withheld examples and adds the holdout/full-data disagreement rate,
//!   giving `eps_w = Delta + sqrt(ln(1/delta) / (2v))`.
//!
//! [`bounds`] holds the closed-form calculus and bound inversion numerics,
//! [`lab`] the synthetic learning tasks used to check coverage by simulation,
//! and [`cli`] the `wagbound` command-line front end.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod format;
pub mod lab;
pub mod sweep;

pub use error::{Error, Result};
