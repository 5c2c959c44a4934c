use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the simulator.
///
/// [`Error::is_validation`] separates configuration problems (bad user input)
/// from numeric domain failures discovered while evaluating the models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("{what} out of domain: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("dimension mismatch: {left} vs {right} elements")]
    Dimension { left: usize, right: usize },

    #[error("power_split constraint violated: a1_sq + a2_sq = {sum} (must equal 1)")]
    SplitSum { sum: f64 },

    #[error("power_split ordering violated: far-user share a2_sq={a2_sq} must exceed near-user share a1_sq={a1_sq}")]
    SplitOrder { a1_sq: f64, a2_sq: f64 },

    #[error("infeasible geometry: near-user distance {d_near} m is shorter than the IRS-user height difference {height_diff} m")]
    InfeasibleGeometry { d_near: f64, height_diff: f64 },

    #[error("invalid `{key}`: {msg}")]
    Config { key: String, msg: String },

    #[error("sweep point {index}: {source}")]
    AtPoint {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn config(key: impl Into<String>, msg: impl std::fmt::Display) -> Self {
        Error::Config {
            key: key.into(),
            msg: msg.to_string(),
        }
    }

    /// True for input/configuration errors, false for numeric domain errors.
    pub fn is_validation(&self) -> bool {
        match self {
            Error::NonFinite { .. }
            | Error::SplitSum { .. }
            | Error::SplitOrder { .. }
            | Error::Config { .. } => true,
            Error::Domain { .. } | Error::Dimension { .. } | Error::InfeasibleGeometry { .. } => {
                false
            }
            Error::AtPoint { source, .. } => source.is_validation(),
        }
    }
}

pub(crate) fn ensure_finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what, value })
    }
}
