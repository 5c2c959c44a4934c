//! Two-user power-domain NOMA: superposition power split, received power,
//! far-user SINR and near-user SNR after ideal SIC.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::PowerWatts;

/// Tolerance on `a1² + a2² = 1` accepted from configuration.
pub const SPLIT_SUM_TOLERANCE: f64 = 1e-9;

/// Superposition amplitude coefficients, `a2 > a1`, `a1² + a2² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit {
    a1: f64,
    a2: f64,
}

impl PowerSplit {
    /// Near-user amplitude coefficient.
    pub fn a1(&self) -> f64 {
        self.a1
    }

    /// Far-user amplitude coefficient.
    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn a1_sq(&self) -> f64 {
        self.a1 * self.a1
    }

    pub fn a2_sq(&self) -> f64 {
        self.a2 * self.a2
    }
}

/// Builds a split from power shares. The shares are renormalized so the
/// returned amplitudes satisfy the unit-sum constraint to rounding.
pub fn validate_split(a1_sq: f64, a2_sq: f64) -> Result<PowerSplit> {
    for v in [a1_sq, a2_sq] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::domain("power share", format!("{v} is outside (0, 1)")));
        }
    }
    let sum = a1_sq + a2_sq;
    if (sum - 1.0).abs() > SPLIT_SUM_TOLERANCE {
        return Err(Error::SplitSum { sum });
    }
    if a2_sq <= a1_sq {
        return Err(Error::SplitOrder { a1_sq, a2_sq });
    }
    Ok(PowerSplit {
        a1: (a1_sq / sum).sqrt(),
        a2: (a2_sq / sum).sqrt(),
    })
}

/// Power shares as written in a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitParams {
    pub a1_sq: f64,
    pub a2_sq: f64,
}

impl Default for SplitParams {
    fn default() -> Self {
        SplitParams {
            a1_sq: 0.2,
            a2_sq: 0.8,
        }
    }
}

impl SplitParams {
    pub fn power_split(&self) -> Result<PowerSplit> {
        validate_split(self.a1_sq, self.a2_sq)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum User {
    /// Near user, decodes with SIC.
    U1,
    /// Far user, treats the near user's message as interference.
    U2,
}

impl User {
    pub const BOTH: [User; 2] = [User::U1, User::U2];

    pub fn index(self) -> usize {
        match self {
            User::U1 => 0,
            User::U2 => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            User::U1 => "u1",
            User::U2 => "u2",
        }
    }
}

/// Interference term used in the far-user SINR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SinrMode {
    /// Interference evaluated on the near user's channel and path loss.
    #[default]
    AsPrinted,
    /// Interference evaluated on the far user's own channel and path loss.
    OwnChannel,
}

/// Channel state of one trial for one path-loss model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkState {
    pub h1: Complex64,
    pub h2: Complex64,
    /// Linear end-to-end loss of the near user.
    pub l1: f64,
    /// Linear end-to-end loss of the far user.
    pub l2: f64,
    pub rho: PowerWatts,
    pub noise_w: PowerWatts,
}

impl LinkState {
    pub fn validate(&self) -> Result<()> {
        if !(self.l1 > 0.0 && self.l2 > 0.0) {
            return Err(Error::domain("path loss", "must be positive"));
        }
        if self.noise_w.watts() <= 0.0 {
            return Err(Error::domain("noise power", "must be positive"));
        }
        Ok(())
    }

    /// `power · |h_u|² / l_u`, multiplied before dividing so that a unit
    /// channel yields exactly `power / l_u`.
    fn through(&self, user: User, power: f64) -> f64 {
        match user {
            User::U1 => power * self.h1.norm_sqr() / self.l1,
            User::U2 => power * self.h2.norm_sqr() / self.l2,
        }
    }
}

/// Total superimposed-signal power arriving at `user`: `ρ |h|² / L`.
pub fn received_power_w(link: &LinkState, user: User) -> PowerWatts {
    PowerWatts::new_unchecked(link.through(user, link.rho.watts()))
}

/// Received power of the near and far messages at `user`, in that order.
pub fn message_powers(link: &LinkState, user: User, split: &PowerSplit) -> (f64, f64) {
    let total = received_power_w(link, user).watts();
    (split.a1_sq() * total, split.a2_sq() * total)
}

pub fn sinr_far(link: &LinkState, split: &PowerSplit, mode: SinrMode) -> f64 {
    let rho = link.rho.watts();
    let signal = link.through(User::U2, rho * split.a2_sq());
    let interferer = match mode {
        SinrMode::AsPrinted => User::U1,
        SinrMode::OwnChannel => User::U2,
    };
    signal / (link.through(interferer, rho * split.a1_sq()) + link.noise_w.watts())
}

/// Near-user SNR once the far user's message has been cancelled.
pub fn snr_near(link: &LinkState, split: &PowerSplit) -> f64 {
    link.through(User::U1, link.rho.watts() * split.a1_sq()) / link.noise_w.watts()
}
