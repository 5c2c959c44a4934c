//! Link-level simulation of a two-user downlink NOMA pair served through an
//! intelligent reflecting surface (IRS).
//!
//! The crate compares a conventional log-distance path-loss model against a
//! frequency-distance model dedicated to IRS links, on identical Rayleigh
//! fading draws, and reports received power, far-user SINR and near-user
//! post-SIC SNR over a distance sweep.
//!
//! ```
//! use irs_noma::sim::{compare_models, Scenario};
//! use irs_noma::{noma::User, sim::ModelKind};
//!
//! let mut scn = Scenario::default();
//! scn.trials = 100;
//! scn.sweep.points = 2;
//! let records = compare_models(&scn).unwrap();
//! let first = &records[0];
//! let modified = first.get(ModelKind::Modified, User::U1).unwrap();
//! let conventional = first.get(ModelKind::Conventional, User::U1).unwrap();
//! assert!(modified.rx_power_w.mean > conventional.rx_power_w.mean);
//! ```

pub mod channel;
pub mod error;
pub mod geometry;
pub mod noma;
pub mod pathloss;
pub mod rng;
pub mod sim;
pub mod units;

pub use error::{Error, Result};
