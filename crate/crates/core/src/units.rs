//! Decibel, dBm, watt and wavelength conversions.
//!
//! Everything inside the simulator runs in the linear domain; these helpers
//! are used at the configuration and reporting edges.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Speed of light in vacuum, m/s (exact SI value).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// A dimensionless ratio expressed in dB.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Decibel(pub f64);

impl Decibel {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn to_linear(self) -> Result<f64> {
        db_to_linear(self)
    }
}

impl std::ops::Add for Decibel {
    type Output = Decibel;
    fn add(self, rhs: Decibel) -> Decibel {
        Decibel(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Decibel {
    type Output = Decibel;
    fn sub(self, rhs: Decibel) -> Decibel {
        Decibel(self.0 - rhs.0)
    }
}

/// An absolute power level in dBm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dbm(pub f64);

/// Power in watts, never negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PowerWatts(f64);

impl PowerWatts {
    pub fn new(watts: f64) -> Result<Self> {
        let watts = ensure_finite("power", watts)?;
        if watts < 0.0 {
            return Err(Error::domain("power", format!("{watts} W is negative")));
        }
        Ok(PowerWatts(watts))
    }

    /// Caller guarantees `watts` is finite and non-negative.
    pub(crate) fn new_unchecked(watts: f64) -> Self {
        debug_assert!(watts.is_finite() && watts >= 0.0);
        PowerWatts(watts)
    }

    pub fn watts(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PowerWatts {
    type Error = Error;
    fn try_from(watts: f64) -> Result<Self> {
        PowerWatts::new(watts)
    }
}

impl From<PowerWatts> for f64 {
    fn from(p: PowerWatts) -> f64 {
        p.0
    }
}

/// Carrier frequency in Hz, strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Frequency(f64);

impl Frequency {
    pub fn new(hz: f64) -> Result<Self> {
        let hz = ensure_finite("frequency", hz)?;
        if hz <= 0.0 {
            return Err(Error::domain("frequency", format!("{hz} Hz is not positive")));
        }
        Ok(Frequency(hz))
    }

    pub fn hz(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Frequency {
    type Error = Error;
    fn try_from(hz: f64) -> Result<Self> {
        Frequency::new(hz)
    }
}

impl From<Frequency> for f64 {
    fn from(f: Frequency) -> f64 {
        f.0
    }
}

pub fn db_to_linear(x: Decibel) -> Result<f64> {
    let db = ensure_finite("decibel value", x.0)?;
    Ok(10f64.powf(db / 10.0))
}

pub fn linear_to_db(r: f64) -> Result<Decibel> {
    let r = ensure_finite("linear ratio", r)?;
    if r <= 0.0 {
        return Err(Error::domain("linear ratio", format!("{r} is not positive")));
    }
    Ok(Decibel(10.0 * r.log10()))
}

pub fn dbm_to_watts(x: Dbm) -> Result<PowerWatts> {
    let dbm = ensure_finite("dBm value", x.0)?;
    Ok(PowerWatts(10f64.powf((dbm - 30.0) / 10.0)))
}

pub fn watts_to_dbm(p: PowerWatts) -> Result<Dbm> {
    Ok(Dbm(linear_to_db(p.0)?.0 + 30.0))
}

/// Free-space wavelength in metres.
pub fn wavelength(f: Frequency) -> f64 {
    SPEED_OF_LIGHT / f.0
}
