//! Subcommand implementations, independent of argument parsing.

use std::path::{Path, PathBuf};

use irs_noma::sim::{compare_models, run_sweep, Scenario, SweepParams, SweepRecord};
use serde::Serialize;

use crate::config::{self, Overrides};
use crate::error::CliError;
use crate::plot::{self, Metric};
use crate::results::{rows_from_records, to_db, write_csv};

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Results CSV for the baseline models.
pub fn sweep_csv(scn: &Scenario) -> Result<String, CliError> {
    let records = run_sweep(scn)?;
    Ok(write_csv(&rows_from_records(&records, scn.master_seed)))
}

/// Results CSV for all three models.
pub fn compare_csv(scn: &Scenario) -> Result<String, CliError> {
    let records = compare_models(scn)?;
    Ok(write_csv(&rows_from_records(&records, scn.master_seed)))
}

pub fn cmd_sweep(config: Option<&Path>, out: &Path, overrides: Overrides) -> Result<(), CliError> {
    let scn = config::load(config, overrides)?;
    write_file(out, &sweep_csv(&scn)?)
}

pub fn cmd_compare(config: Option<&Path>, out: &Path, overrides: Overrides) -> Result<(), CliError> {
    let scn = config::load(config, overrides)?;
    write_file(out, &compare_csv(&scn)?)
}

/// Path of the `.dat` sidecar written next to a plot.
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("dat")
}

pub fn cmd_plot(in_csv: &Path, out: &Path, metric: Metric, user: &str) -> Result<(), CliError> {
    let text = std::fs::read_to_string(in_csv).map_err(|e| CliError::io(in_csv, e))?;
    let (svg, dat) = plot::render(&text, metric, user)?;
    write_file(out, &svg)?;
    write_file(&sidecar_path(out), &dat)
}

#[derive(Debug, Serialize)]
struct PointEntry {
    model: &'static str,
    user: &'static str,
    gt_db: f64,
    gr_db: f64,
    path_loss_db: f64,
    rx_power_dbm_mean: f64,
    rx_power_dbm_std: f64,
    sinr_db_mean: f64,
    sinr_db_std: f64,
}

#[derive(Debug, Serialize)]
struct PointReport {
    d_near_m: f64,
    d_far_m: f64,
    d_bs_irs_m: f64,
    mean_channel_gain_u1: f64,
    mean_channel_gain_u2: f64,
    n_trials: usize,
    master_seed: u64,
    entries: Vec<PointEntry>,
}

fn point_report(scn: &Scenario, rec: &SweepRecord) -> PointReport {
    // TOML has no -inf literal for a zero spread; report it as the most
    // negative finite value instead.
    let db = |x: f64| to_db(x).max(f64::MIN);
    PointReport {
        d_near_m: rec.d_near,
        d_far_m: rec.d_far,
        d_bs_irs_m: rec.d_bs_irs,
        mean_channel_gain_u1: rec.channel_gain[0].mean,
        mean_channel_gain_u2: rec.channel_gain[1].mean,
        n_trials: scn.trials,
        master_seed: scn.master_seed,
        entries: rec
            .stats
            .iter()
            .map(|s| PointEntry {
                model: s.model.as_str(),
                user: s.user.as_str(),
                gt_db: s.gains.gt_db.0,
                gr_db: s.gains.gr_db.0,
                path_loss_db: db(s.path_loss),
                rx_power_dbm_mean: db(s.rx_power_w.mean) + 30.0,
                rx_power_dbm_std: db(s.rx_power_w.std) + 30.0,
                sinr_db_mean: db(s.sinr.mean),
                sinr_db_std: db(s.sinr.std),
            })
            .collect(),
    }
}

/// Evaluates every model at a single near-user distance and returns the
/// report as a TOML document.
pub fn point_text(scn: &Scenario, d_near: f64) -> Result<String, CliError> {
    if !(d_near.is_finite() && d_near > 0.0) {
        return Err(CliError::Config(format!(
            "invalid `d_near`: {d_near} m must be positive"
        )));
    }
    let mut scn = scn.clone();
    scn.sweep = SweepParams {
        d_near_start: d_near,
        d_near_stop: d_near,
        points: 1,
    };
    let records = compare_models(&scn)?;
    let report = point_report(&scn, &records[0]);
    toml::to_string(&report).map_err(|e| CliError::Config(e.to_string()))
}

pub fn cmd_point(config: Option<&Path>, d_near: f64, overrides: Overrides) -> Result<String, CliError> {
    let scn = config::load(config, overrides)?;
    point_text(&scn, d_near)
}
