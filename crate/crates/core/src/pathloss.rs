//! Large-scale attenuation: the log-distance model used by the conventional
//! link and the frequency-distance model dedicated to IRS links.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::units::{db_to_linear, wavelength, Decibel, Frequency};

/// Intercept of the log-distance model, dB at 1 m.
pub const LOG_DISTANCE_INTERCEPT_DB: f64 = 35.1;
/// Slope of the log-distance model, dB per decade.
pub const LOG_DISTANCE_SLOPE_DB: f64 = 36.7;

/// Reflecting panel geometry and material.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IrsPanel {
    /// Transmitting element count.
    pub m_elems: u32,
    /// Receiving element count.
    pub n_elems: u32,
    /// Element length, m.
    pub dx: f64,
    /// Element width, m.
    pub dy: f64,
    /// Amplitude reflection coefficient in (0, 1].
    pub reflection_a: f64,
}

impl Default for IrsPanel {
    fn default() -> Self {
        IrsPanel {
            m_elems: 64,
            n_elems: 64,
            dx: 0.0038,
            dy: 0.0038,
            reflection_a: 0.9,
        }
    }
}

impl IrsPanel {
    pub fn validate(&self) -> Result<()> {
        if self.m_elems == 0 {
            return Err(Error::config("panel.m_elems", "must be at least 1"));
        }
        if self.n_elems == 0 {
            return Err(Error::config("panel.n_elems", "must be at least 1"));
        }
        if !(self.dx.is_finite() && self.dx > 0.0) {
            return Err(Error::config("panel.dx", "must be positive"));
        }
        if !(self.dy.is_finite() && self.dy > 0.0) {
            return Err(Error::config("panel.dy", "must be positive"));
        }
        if !(self.reflection_a > 0.0 && self.reflection_a <= 1.0) {
            return Err(Error::config("panel.reflection_a", "must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// Incidence and reflection angles, degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IncidenceAngles {
    pub theta_t: f64,
    pub theta_r: f64,
}

impl Default for IncidenceAngles {
    fn default() -> Self {
        IncidenceAngles {
            theta_t: 45.0,
            theta_r: 45.0,
        }
    }
}

impl IncidenceAngles {
    pub fn validate(&self) -> Result<()> {
        for (key, v) in [("angles.theta_t", self.theta_t), ("angles.theta_r", self.theta_r)] {
            if !(v > -90.0 && v < 90.0) {
                return Err(Error::config(key, format!("{v} deg is outside (-90, 90)")));
            }
        }
        Ok(())
    }
}

/// Transmit and receive antenna gains. Both fields are required in a
/// scenario file since the three gain sets have different defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntennaGains {
    pub gt_db: Decibel,
    pub gr_db: Decibel,
}

impl AntennaGains {
    pub const fn symmetric(db: f64) -> Self {
        AntennaGains {
            gt_db: Decibel(db),
            gr_db: Decibel(db),
        }
    }

    pub fn total(&self) -> Decibel {
        self.gt_db + self.gr_db
    }
}

/// How antenna gains enter the two-segment log-distance link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConventionalGainMode {
    /// Gains applied once for the end-to-end link.
    #[default]
    PerLink,
    /// Gains subtracted inside each segment's loss (counted twice).
    PerSegment,
}

fn check_distance(d: f64) -> Result<f64> {
    let d = ensure_finite("distance", d)?;
    if d <= 0.0 {
        return Err(Error::domain("distance", format!("{d} m is not positive")));
    }
    if d < 1.0 {
        log::warn!("distance {d} m is below 1 m; path-loss models are far-field");
    }
    Ok(d)
}

/// `35.1 + 36.7·log10(d)` dB, gains excluded.
pub fn conventional_segment_db(d: f64) -> Result<Decibel> {
    let d = check_distance(d)?;
    Ok(Decibel(LOG_DISTANCE_INTERCEPT_DB + LOG_DISTANCE_SLOPE_DB * d.log10()))
}

/// End-to-end loss of the two-segment conventional link with gains applied once.
pub fn conventional_link_db(d1: f64, d2: f64, gains: AntennaGains) -> Result<Decibel> {
    conventional_link_db_with_mode(d1, d2, gains, ConventionalGainMode::PerLink)
}

pub fn conventional_link_db_with_mode(
    d1: f64,
    d2: f64,
    gains: AntennaGains,
    mode: ConventionalGainMode,
) -> Result<Decibel> {
    let segments = conventional_segment_db(d1)? + conventional_segment_db(d2)?;
    let g = gains.total();
    Ok(match mode {
        ConventionalGainMode::PerLink => segments - g,
        ConventionalGainMode::PerSegment => segments - g - g,
    })
}

/// Aperture gain of one element: `4π·dx·dy / λ²`.
pub fn scattering_gain(panel: &IrsPanel, lambda: f64) -> Result<f64> {
    let lambda = ensure_finite("wavelength", lambda)?;
    if lambda <= 0.0 {
        return Err(Error::domain("wavelength", format!("{lambda} m is not positive")));
    }
    Ok(4.0 * PI * panel.dx * panel.dy / (lambda * lambda))
}

/// Linear path loss of the reflected BS -> IRS -> user link:
///
/// ```text
///                 64 π³ (d1 d2)²
/// L = ---------------------------------------------
///     M² N² λ² A² G Gt Gr dx dy cos(θt) cos(θr)
/// ```
///
/// with `G` the element scattering gain. The value is returned as computed,
/// even if extreme parameters push it below 1.
pub fn irs_pathloss_linear(
    d1: f64,
    d2: f64,
    panel: &IrsPanel,
    angles: &IncidenceAngles,
    gains: AntennaGains,
    f: Frequency,
) -> Result<f64> {
    let d1 = check_distance(d1)?;
    let d2 = check_distance(d2)?;
    for theta in [angles.theta_t, angles.theta_r] {
        if !(theta.abs() < 90.0) {
            return Err(Error::domain(
                "incidence angle",
                format!("{theta} deg gives a non-positive cosine"),
            ));
        }
    }
    let cos_t = angles.theta_t.to_radians().cos();
    let cos_r = angles.theta_r.to_radians().cos();
    if !(cos_t > 0.0 && cos_r > 0.0) {
        return Err(Error::domain(
            "incidence angle",
            format!(
                "cos(theta_t)={cos_t}, cos(theta_r)={cos_r}; both must be positive"
            ),
        ));
    }
    let lambda = wavelength(f);
    let g = scattering_gain(panel, lambda)?;
    let gt = db_to_linear(gains.gt_db)?;
    let gr = db_to_linear(gains.gr_db)?;
    let (m, n) = (f64::from(panel.m_elems), f64::from(panel.n_elems));
    let a = panel.reflection_a;

    let num = 64.0 * PI.powi(3) * (d1 * d2).powi(2);
    let den = m * m * n * n * lambda * lambda * a * a * g * gt * gr * panel.dx * panel.dy * cos_t * cos_r;
    Ok(num / den)
}

/// A fully parameterized path-loss model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathLossModel {
    Conventional {
        gains: AntennaGains,
        mode: ConventionalGainMode,
    },
    IrsSpecific {
        panel: IrsPanel,
        angles: IncidenceAngles,
        gains: AntennaGains,
        carrier: Frequency,
    },
}

impl PathLossModel {
    /// Linear end-to-end loss for BS-IRS distance `d1` and IRS-user distance `d2`.
    pub fn linear(&self, d1: f64, d2: f64) -> Result<f64> {
        match self {
            PathLossModel::Conventional { gains, mode } => {
                db_to_linear(conventional_link_db_with_mode(d1, d2, *gains, *mode)?)
            }
            PathLossModel::IrsSpecific {
                panel,
                angles,
                gains,
                carrier,
            } => irs_pathloss_linear(d1, d2, panel, angles, *gains, *carrier),
        }
    }

    pub fn gains(&self) -> AntennaGains {
        match self {
            PathLossModel::Conventional { gains, .. } | PathLossModel::IrsSpecific { gains, .. } => {
                *gains
            }
        }
    }
}
