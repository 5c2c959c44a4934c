use serde::{Deserialize, Serialize};

use crate::channel::FadingModel;
use crate::error::{Error, Result};
use crate::geometry::{Layout, LayoutParams};
use crate::noma::{PowerSplit, SinrMode, SplitParams, User};
use crate::pathloss::{
    AntennaGains, ConventionalGainMode, IncidenceAngles, IrsPanel, PathLossModel,
};
use crate::units::{dbm_to_watts, Dbm, Frequency, PowerWatts};

/// The three link models compared by the simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Log-distance loss with the baseline gains.
    Conventional,
    /// Log-distance loss with horn-antenna gains.
    ConventionalEnhanced,
    /// IRS-specific frequency-distance loss.
    Modified,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [
        ModelKind::Conventional,
        ModelKind::ConventionalEnhanced,
        ModelKind::Modified,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Conventional => "conventional",
            ModelKind::ConventionalEnhanced => "conventional_enhanced",
            ModelKind::Modified => "modified",
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ModelKind::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown model `{s}`"))
    }
}

/// Which user the shared surface configuration is matched to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhasePolicy {
    #[default]
    CoherentFar,
    CoherentNear,
    Random,
}

/// Linear sweep of the near-user distance; the far user sits at twice it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepParams {
    pub d_near_start: f64,
    pub d_near_stop: f64,
    pub points: usize,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            d_near_start: 10.0,
            d_near_stop: 100.0,
            points: 10,
        }
    }
}

impl SweepParams {
    pub fn d_near(&self, index: usize) -> f64 {
        if self.points <= 1 {
            return self.d_near_start;
        }
        let step = (self.d_near_stop - self.d_near_start) / (self.points - 1) as f64;
        self.d_near_start + step * index as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(Error::config("sweep.points", "must be at least 1"));
        }
        if !(self.d_near_start.is_finite() && self.d_near_start > 0.0) {
            return Err(Error::config("sweep.d_near_start", "must be positive"));
        }
        if !(self.d_near_stop.is_finite() && self.d_near_stop >= self.d_near_start) {
            return Err(Error::config("sweep.d_near_stop", "must be >= d_near_start"));
        }
        Ok(())
    }
}

/// Complete experiment configuration. [`Scenario::default`] is the reference
/// parameter set (90 GHz, 6 W, -94 dBm noise, 64-element panel, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scenario {
    /// Carrier frequency, Hz.
    pub carrier: Frequency,
    /// Base-station transmit power, W.
    pub tx_power: PowerWatts,
    pub noise_dbm: Dbm,
    pub split: SplitParams,
    pub panel: IrsPanel,
    /// Length of the fading vectors and of the phase configuration.
    pub k_elements: usize,
    pub angles: IncidenceAngles,
    pub layout: LayoutParams,
    pub gains_modified: AntennaGains,
    pub gains_conventional: AntennaGains,
    pub gains_enhanced: AntennaGains,
    pub sweep: SweepParams,
    pub trials: usize,
    pub master_seed: u64,
    pub fading: FadingModel,
    pub phase_policy: PhasePolicy,
    pub sinr_mode: SinrMode,
    pub conventional_gain_mode: ConventionalGainMode,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            carrier: Frequency::new(90e9).expect("positive"),
            tx_power: PowerWatts::new(6.0).expect("non-negative"),
            noise_dbm: Dbm(-94.0),
            split: SplitParams::default(),
            panel: IrsPanel::default(),
            k_elements: 64,
            angles: IncidenceAngles::default(),
            layout: LayoutParams::default(),
            gains_modified: AntennaGains::symmetric(5.0),
            gains_conventional: AntennaGains::symmetric(10.0),
            gains_enhanced: AntennaGains::symmetric(20.0),
            sweep: SweepParams::default(),
            trials: 10_000,
            master_seed: 42,
            fading: FadingModel::RayleighUnit,
            phase_policy: PhasePolicy::CoherentFar,
            sinr_mode: SinrMode::AsPrinted,
            conventional_gain_mode: ConventionalGainMode::PerLink,
        }
    }
}

/// Geometry and path losses of one sweep point, shared by all its trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointContext {
    pub index: usize,
    pub d_near: f64,
    pub d_far: f64,
    pub layout: Layout,
    losses: [[f64; 2]; 3],
}

impl PointContext {
    /// Linear end-to-end loss of `user` under `model`.
    pub fn loss(&self, model: ModelKind, user: User) -> f64 {
        self.losses[model.index()][user.index()]
    }
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if !self.noise_dbm.0.is_finite() {
            return Err(Error::config("noise_dbm", "must be finite"));
        }
        self.split
            .power_split()
            .map_err(|e| Error::config("split", e))?;
        self.panel.validate()?;
        if self.k_elements == 0 {
            return Err(Error::config("k_elements", "must be at least 1"));
        }
        self.angles.validate()?;
        self.layout.validate()?;
        for (key, g) in [
            ("gains_modified", self.gains_modified),
            ("gains_conventional", self.gains_conventional),
            ("gains_enhanced", self.gains_enhanced),
        ] {
            if !(g.gt_db.0.is_finite() && g.gr_db.0.is_finite()) {
                return Err(Error::config(key, "gains must be finite"));
            }
        }
        self.sweep.validate()?;
        if self.trials == 0 {
            return Err(Error::config("trials", "must be at least 1"));
        }
        Ok(())
    }

    pub fn power_split(&self) -> Result<PowerSplit> {
        self.split.power_split()
    }

    pub fn noise_power(&self) -> Result<PowerWatts> {
        dbm_to_watts(self.noise_dbm)
    }

    pub fn gains(&self, model: ModelKind) -> AntennaGains {
        match model {
            ModelKind::Conventional => self.gains_conventional,
            ModelKind::ConventionalEnhanced => self.gains_enhanced,
            ModelKind::Modified => self.gains_modified,
        }
    }

    pub fn path_loss_model(&self, model: ModelKind) -> PathLossModel {
        match model {
            ModelKind::Conventional | ModelKind::ConventionalEnhanced => {
                PathLossModel::Conventional {
                    gains: self.gains(model),
                    mode: self.conventional_gain_mode,
                }
            }
            ModelKind::Modified => PathLossModel::IrsSpecific {
                panel: self.panel,
                angles: self.angles,
                gains: self.gains_modified,
                carrier: self.carrier,
            },
        }
    }

    /// Places the users for sweep point `index` and evaluates every model's
    /// path loss there.
    pub fn point_context(&self, index: usize) -> Result<PointContext> {
        if index >= self.sweep.points {
            return Err(Error::domain(
                "sweep point",
                format!("index {index} >= {} points", self.sweep.points),
            ));
        }
        let at_point = |e: Error| Error::AtPoint {
            index,
            source: Box::new(e),
        };
        let d_near = self.sweep.d_near(index);
        let layout = self.layout.layout(d_near).map_err(at_point)?;
        let d1 = layout.d_bs_irs();
        let d_users = [layout.d_irs_near(), layout.d_irs_far()];
        let mut losses = [[0.0; 2]; 3];
        for model in ModelKind::ALL {
            let pl = self.path_loss_model(model);
            for user in User::BOTH {
                losses[model.index()][user.index()] =
                    pl.linear(d1, d_users[user.index()]).map_err(at_point)?;
            }
        }
        Ok(PointContext {
            index,
            d_near,
            d_far: 2.0 * d_near,
            layout,
            losses,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::linear_to_db;

    #[test]
    fn default_scenario_is_valid() {
        Scenario::default().validate().unwrap();
    }

    #[test]
    fn sweep_grid() {
        let s = SweepParams::default();
        let grid: Vec<f64> = (0..s.points).map(|i| s.d_near(i)).collect();
        assert_eq!(grid.first(), Some(&10.0));
        assert_eq!(grid.last(), Some(&100.0));
        assert_eq!(grid[3], 40.0);
        let single = SweepParams {
            points: 1,
            ..s
        };
        assert_eq!(single.d_near(0), 10.0);
    }

    #[test]
    fn validation_names_the_key() {
        let mut scn = Scenario::default();
        scn.split = SplitParams {
            a1_sq: 0.9,
            a2_sq: 0.1,
        };
        let err = scn.validate().unwrap_err();
        assert!(err.is_validation());
        let msg = err.to_string();
        assert!(msg.contains("split") && msg.contains("power_split"), "{msg}");

        let scn = Scenario {
            trials: 0,
            ..Default::default()
        };
        assert!(scn.validate().unwrap_err().to_string().contains("trials"));

        let mut scn = Scenario::default();
        scn.sweep.d_near_start = 0.0;
        assert!(scn.validate().unwrap_err().to_string().contains("sweep.d_near_start"));
    }

    #[test]
    fn first_point_losses() {
        let ctx = Scenario::default().point_context(0).unwrap();
        assert_eq!(ctx.layout.d_bs_irs(), 50.0);
        let modified = linear_to_db(ctx.loss(ModelKind::Modified, User::U1)).unwrap().0;
        assert!((modified - 94.45).abs() < 0.05);
        let conv = linear_to_db(ctx.loss(ModelKind::Conventional, User::U1)).unwrap().0;
        assert!((conv - 149.252).abs() < 0.01);
        let enh = linear_to_db(ctx.loss(ModelKind::ConventionalEnhanced, User::U1))
            .unwrap()
            .0;
        assert!((conv - enh - 20.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_point_is_indexed() {
        let mut scn = Scenario::default();
        scn.sweep.d_near_start = 5.0; // below the 8.5 m height difference
        let err = scn.point_context(0).unwrap_err();
        assert!(matches!(err, Error::AtPoint { index: 0, .. }));
        assert!(!err.is_validation());
        assert!(scn.point_context(99).is_err());
    }

    #[test]
    fn model_names_round_trip() {
        for m in ModelKind::ALL {
            assert_eq!(m.as_str().parse::<ModelKind>().unwrap(), m);
        }
        assert!("ding".parse::<ModelKind>().is_err());
    }
}
