use num_complex::Complex64;

use super::exec::{map_indices, Execution};
use super::scenario::{ModelKind, PhasePolicy, PointContext, Scenario};
use super::stats::Stat;
use crate::channel::{
    cascaded_gain, coherent_phases, random_phases, sample_fading, FadingModel, PhaseConfig,
};
use crate::error::{Error, Result};
use crate::noma::{received_power_w, sinr_far, snr_near, LinkState, PowerSplit, User};
use crate::pathloss::AntennaGains;
use crate::rng::{Hop, Substream};
use crate::units::PowerWatts;

/// Per-user metrics of one model in one trial. `sinr[0]` is the near user's
/// post-SIC SNR, `sinr[1]` the far user's SINR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelMetrics {
    pub rx_power_w: [f64; 2],
    pub sinr: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialMetrics {
    /// Cascaded channel of the near and far user.
    pub h: [Complex64; 2],
    models: [ModelMetrics; 3],
}

impl TrialMetrics {
    pub fn model(&self, model: ModelKind) -> &ModelMetrics {
        &self.models[model.index()]
    }
}

/// Trial-invariant quantities resolved once per sweep.
struct Prepared {
    split: PowerSplit,
    noise: PowerWatts,
}

impl Prepared {
    fn new(scn: &Scenario) -> Result<Self> {
        scn.validate()?;
        Ok(Prepared {
            split: scn.power_split()?,
            noise: scn.noise_power()?,
        })
    }
}

fn evaluate_trial(
    scn: &Scenario,
    prep: &Prepared,
    ctx: &PointContext,
    trial: usize,
) -> Result<TrialMetrics> {
    let stream = Substream::new(scn.master_seed, ctx.index as u64, trial as u64, Hop::BsIrs);
    let k = scn.k_elements;
    let g0 = sample_fading(&stream, k, scn.fading)?;
    let g1 = sample_fading(&stream.with_hop(Hop::IrsNear), k, scn.fading)?;
    let g2 = sample_fading(&stream.with_hop(Hop::IrsFar), k, scn.fading)?;
    // one surface serves both users
    let theta: PhaseConfig = match scn.phase_policy {
        PhasePolicy::CoherentFar => coherent_phases(&g2, &g0)?,
        PhasePolicy::CoherentNear => coherent_phases(&g1, &g0)?,
        PhasePolicy::Random => random_phases(&stream.with_hop(Hop::Phases), k)?,
    };
    let h1 = cascaded_gain(&g1, &theta, &g0)?;
    let h2 = cascaded_gain(&g2, &theta, &g0)?;

    let mut models = [ModelMetrics {
        rx_power_w: [0.0; 2],
        sinr: [0.0; 2],
    }; 3];
    for model in ModelKind::ALL {
        let link = LinkState {
            h1,
            h2,
            l1: ctx.loss(model, User::U1),
            l2: ctx.loss(model, User::U2),
            rho: scn.tx_power,
            noise_w: prep.noise,
        };
        models[model.index()] = ModelMetrics {
            rx_power_w: [
                received_power_w(&link, User::U1).watts(),
                received_power_w(&link, User::U2).watts(),
            ],
            sinr: [
                snr_near(&link, &prep.split),
                sinr_far(&link, &prep.split, scn.sinr_mode),
            ],
        };
    }
    Ok(TrialMetrics {
        h: [h1, h2],
        models,
    })
}

/// Evaluates one trial of one sweep point. Deterministic in its arguments.
pub fn run_trial(scn: &Scenario, point_index: usize, trial_index: usize) -> Result<TrialMetrics> {
    let prep = Prepared::new(scn)?;
    if trial_index >= scn.trials {
        return Err(Error::domain(
            "trial index",
            format!("{trial_index} >= {} trials", scn.trials),
        ));
    }
    let ctx = scn.point_context(point_index)?;
    evaluate_trial(scn, &prep, &ctx, trial_index)
}

/// Aggregated statistics of one (model, user) pair at one sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserStats {
    pub model: ModelKind,
    pub user: User,
    pub gains: AntennaGains,
    /// Linear end-to-end path loss used for this pair.
    pub path_loss: f64,
    pub rx_power_w: Stat,
    /// SNR for the near user, SINR for the far user (linear).
    pub sinr: Stat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub d_near: f64,
    pub d_far: f64,
    pub d_bs_irs: f64,
    /// `|h_1|²` and `|h_2|²` over the trials.
    pub channel_gain: [Stat; 2],
    /// Sorted by (model, user).
    pub stats: Vec<UserStats>,
}

impl SweepRecord {
    pub fn get(&self, model: ModelKind, user: User) -> Option<&UserStats> {
        self.stats.iter().find(|s| s.model == model && s.user == user)
    }
}

fn aggregate(
    scn: &Scenario,
    ctx: &PointContext,
    trials: &[TrialMetrics],
    models: &[ModelKind],
) -> SweepRecord {
    let channel_gain =
        [0, 1].map(|u| Stat::from_samples(trials.iter().map(move |t| t.h[u].norm_sqr())));
    let mut models = models.to_vec();
    models.sort();
    models.dedup();
    let stats = models
        .iter()
        .flat_map(|&model| {
            User::BOTH.into_iter().map(move |user| {
                let u = user.index();
                UserStats {
                    model,
                    user,
                    gains: scn.gains(model),
                    path_loss: ctx.loss(model, user),
                    rx_power_w: Stat::from_samples(
                        trials.iter().map(move |t| t.model(model).rx_power_w[u]),
                    ),
                    sinr: Stat::from_samples(trials.iter().map(move |t| t.model(model).sinr[u])),
                }
            })
        })
        .collect();
    SweepRecord {
        d_near: ctx.d_near,
        d_far: ctx.d_far,
        d_bs_irs: ctx.layout.d_bs_irs(),
        channel_gain,
        stats,
    }
}

/// Runs the full sweep and reports statistics for `models`.
pub fn sweep_models(
    scn: &Scenario,
    models: &[ModelKind],
    exec: Execution,
) -> Result<Vec<SweepRecord>> {
    let prep = Prepared::new(scn)?;
    (0..scn.sweep.points)
        .map(|point| {
            let ctx = scn.point_context(point)?;
            let trials = map_indices(scn.trials, exec, |t| evaluate_trial(scn, &prep, &ctx, t))
                .map_err(|e| match e {
                    e @ Error::AtPoint { .. } => e,
                    e => Error::AtPoint {
                        index: point,
                        source: Box::new(e),
                    },
                })?;
            Ok(aggregate(scn, &ctx, &trials, models))
        })
        .collect()
}

/// Baseline comparison: conventional model at the conventional gains
/// against the IRS-specific model at its own gains.
pub fn run_sweep(scn: &Scenario) -> Result<Vec<SweepRecord>> {
    sweep_models(
        scn,
        &[ModelKind::Conventional, ModelKind::Modified],
        Execution::default(),
    )
}

/// Three-way comparison including the conventional model with enhanced gains.
pub fn compare_models(scn: &Scenario) -> Result<Vec<SweepRecord>> {
    sweep_models(scn, &ModelKind::ALL, Execution::default())
}

/// Surface configuration used by [`mean_cascaded_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseDesign {
    Random,
    Coherent,
}

/// Monte-Carlo statistics of `|g_userᵀ Θ g_bs|²` over `trials` independent
/// Rayleigh draws of `k` elements.
pub fn mean_cascaded_power(
    k: usize,
    design: PhaseDesign,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<Stat> {
    if trials == 0 {
        return Err(Error::domain("trials", "must be at least 1"));
    }
    let powers = map_indices(trials, exec, |t| {
        let stream = Substream::new(seed, 0, t as u64, Hop::BsIrs);
        let g0 = sample_fading(&stream, k, FadingModel::RayleighUnit)?;
        let g = sample_fading(&stream.with_hop(Hop::IrsNear), k, FadingModel::RayleighUnit)?;
        let theta = match design {
            PhaseDesign::Random => random_phases(&stream.with_hop(Hop::Phases), k)?,
            PhaseDesign::Coherent => coherent_phases(&g, &g0)?,
        };
        Ok(cascaded_gain(&g, &theta, &g0)?.norm_sqr())
    })?;
    Ok(Stat::from_samples(powers.iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::FadingModel;
    use crate::pathloss::irs_pathloss_linear;

    fn small(trials: usize) -> Scenario {
        let mut scn = Scenario::default();
        scn.trials = trials;
        scn.sweep.points = 3;
        scn
    }

    #[test]
    fn trial_is_deterministic() {
        let scn = small(4);
        assert_eq!(run_trial(&scn, 1, 2).unwrap(), run_trial(&scn, 1, 2).unwrap());
        assert_ne!(run_trial(&scn, 1, 2).unwrap(), run_trial(&scn, 1, 3).unwrap());
    }

    #[test]
    fn trial_bounds_checked() {
        let scn = small(4);
        assert!(run_trial(&scn, 3, 0).is_err());
        assert!(run_trial(&scn, 0, 4).is_err());
    }

    #[test]
    fn coherent_far_aligns_far_user() {
        let scn = small(8);
        let prep = Prepared::new(&scn).unwrap();
        let ctx = scn.point_context(0).unwrap();
        for t in 0..8 {
            let m = evaluate_trial(&scn, &prep, &ctx, t).unwrap();
            let s = Substream::new(scn.master_seed, 0, t as u64, Hop::BsIrs);
            let g0 = sample_fading(&s, 64, scn.fading).unwrap();
            let g2 = sample_fading(&s.with_hop(Hop::IrsFar), 64, scn.fading).unwrap();
            let expected: f64 = g2
                .coeffs()
                .iter()
                .zip(g0.coeffs())
                .map(|(a, b)| a.norm() * b.norm())
                .sum();
            assert!((m.h[1].norm() - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn unit_fading_closes_the_link_budget() {
        let mut scn = small(1);
        scn.fading = FadingModel::Unit;
        scn.k_elements = 1;
        let m = run_trial(&scn, 0, 0).unwrap();
        assert_eq!(m.h, [Complex64::new(1.0, 0.0); 2]);
        let layout = scn.layout.layout(10.0).unwrap();
        let loss = irs_pathloss_linear(
            layout.d_bs_irs(),
            layout.d_irs_near(),
            &scn.panel,
            &scn.angles,
            scn.gains_modified,
            scn.carrier,
        )
        .unwrap();
        assert_eq!(
            m.model(ModelKind::Modified).rx_power_w[0],
            scn.tx_power.watts() / loss
        );
    }

    #[test]
    fn single_point_single_trial() {
        let mut scn = small(1);
        scn.sweep.points = 1;
        let recs = run_sweep(&scn).unwrap();
        assert_eq!(recs.len(), 1);
        let trial = run_trial(&scn, 0, 0).unwrap();
        let rec = &recs[0];
        assert_eq!(rec.stats.len(), 4);
        let s = rec.get(ModelKind::Modified, User::U2).unwrap();
        assert_eq!(s.rx_power_w.mean, trial.model(ModelKind::Modified).rx_power_w[1]);
        assert_eq!(s.rx_power_w.std, 0.0);
        assert_eq!(s.sinr.n, 1);
        assert!(rec.get(ModelKind::ConventionalEnhanced, User::U1).is_none());
    }

    #[test]
    fn longer_runs_extend_shorter_ones() {
        let short = small(5);
        let long = small(10);
        for t in 0..5 {
            assert_eq!(run_trial(&short, 2, t).unwrap(), run_trial(&long, 2, t).unwrap());
        }
    }

    #[test]
    fn record_layout() {
        let recs = compare_models(&small(16)).unwrap();
        assert_eq!(recs.len(), 3);
        for r in &recs {
            assert_eq!(r.d_far, 2.0 * r.d_near);
            assert_eq!(r.stats.len(), 6);
            assert!(r.stats.iter().all(|s| s.rx_power_w.n == 16));
            let keys: Vec<_> = r.stats.iter().map(|s| (s.model, s.user)).collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted);
        }
    }

    #[test]
    fn execution_modes_agree() {
        let scn = small(64);
        let seq = sweep_models(&scn, &ModelKind::ALL, Execution::Sequential).unwrap();
        let par = sweep_models(&scn, &ModelKind::ALL, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn infeasible_sweep_reports_point() {
        let mut scn = small(2);
        scn.sweep.d_near_start = 4.0;
        scn.sweep.d_near_stop = 12.0;
        assert!(matches!(
            run_sweep(&scn),
            Err(Error::AtPoint { index: 0, .. })
        ));
    }
}
