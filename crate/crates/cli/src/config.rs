//! Scenario files.
//!
//! A scenario is a TOML document whose keys mirror [`Scenario`] field for
//! field. Missing keys take the reference defaults, unknown keys are
//! rejected, and an empty file is the default scenario.

use std::path::Path;

use irs_noma::sim::Scenario;

use crate::error::CliError;

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
}

impl Overrides {
    pub fn apply(&self, scn: &mut Scenario) {
        if let Some(seed) = self.seed {
            scn.master_seed = seed;
        }
        if let Some(trials) = self.trials {
            scn.trials = trials;
        }
    }
}

/// Parses and validates a scenario document.
pub fn parse(text: &str) -> Result<Scenario, CliError> {
    let scn: Scenario = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    scn.validate()?;
    Ok(scn)
}

/// Loads the scenario at `path` (defaults when `None`) and applies `overrides`.
pub fn load(path: Option<&Path>, overrides: Overrides) -> Result<Scenario, CliError> {
    let mut scn = match path {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            parse(&text)?
        }
        None => Scenario::default(),
    };
    overrides.apply(&mut scn);
    scn.validate()?;
    Ok(scn)
}

/// The fully resolved scenario as a TOML document.
pub fn render(scn: &Scenario) -> String {
    toml::to_string_pretty(scn).expect("scenario serializes to TOML")
}

#[cfg(test)]
mod tests {
    use super::*;
    use irs_noma::sim::PhasePolicy;

    #[test]
    fn empty_document_is_the_default_scenario() {
        assert_eq!(parse("").unwrap(), Scenario::default());
    }

    #[test]
    fn rendered_config_parses_back() {
        let scn = Scenario::default();
        assert_eq!(parse(&render(&scn)).unwrap(), scn);
    }

    #[test]
    fn partial_tables_fill_defaults() {
        let scn = parse(
            "trials = 12\nphase_policy = \"random\"\n[panel]\nm_elems = 8\n[sweep]\npoints = 3\n",
        )
        .unwrap();
        assert_eq!(scn.trials, 12);
        assert_eq!(scn.phase_policy, PhasePolicy::Random);
        assert_eq!(scn.panel.m_elems, 8);
        assert_eq!(scn.panel.n_elems, 64);
        assert_eq!(scn.sweep.points, 3);
        assert_eq!(scn.sweep.d_near_start, 10.0);
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = parse("trails = 3\n").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("trails"), "{err}");
        assert!(parse("[panel]\nrows = 3\n").is_err());
    }

    #[test]
    fn invalid_values_name_the_key() {
        let err = parse("[split]\na1_sq = 0.9\na2_sq = 0.1\n").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("power_split"), "{err}");

        let err = parse("carrier = -5.0\n").unwrap_err();
        assert!(err.to_string().contains("carrier"), "{err}");

        let err = parse("[angles]\ntheta_t = 95.0\n").unwrap_err();
        assert!(err.to_string().contains("angles.theta_t"), "{err}");
    }

    #[test]
    fn gains_require_both_fields() {
        assert!(parse("[gains_enhanced]\ngt_db = 30.0\n").is_err());
        let scn = parse("[gains_enhanced]\ngt_db = 30.0\ngr_db = 25.0\n").unwrap();
        assert_eq!(scn.gains_enhanced.gt_db.0, 30.0);
    }

    #[test]
    fn overrides_apply() {
        let scn = load(
            None,
            Overrides {
                seed: Some(7),
                trials: Some(3),
            },
        )
        .unwrap();
        assert_eq!((scn.master_seed, scn.trials), (7, 3));
        let err = load(
            None,
            Overrides {
                seed: None,
                trials: Some(0),
            },
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load(Some(Path::new("/nonexistent/scenario.toml")), Overrides::default())
            .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
