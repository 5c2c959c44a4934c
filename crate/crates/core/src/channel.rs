//! Small-scale fading, surface phase configurations and the cascaded
//! BS -> IRS -> user channel.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Substream;

/// Per-element complex amplitude gains of one hop.
#[derive(Debug, Clone, PartialEq)]
pub struct FadingVector(Vec<Complex64>);

impl FadingVector {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("fading vector", "needs at least one element"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("fading vector", "entries must be finite"));
        }
        Ok(FadingVector(coeffs))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Diagonal of the surface phase-shift matrix, radians in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseConfig(Vec<f64>);

impl PhaseConfig {
    /// Wraps every angle into `[0, 2π)`.
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::domain("phase config", "needs at least one element"));
        }
        if thetas.iter().any(|t| !t.is_finite()) {
            return Err(Error::domain("phase config", "angles must be finite"));
        }
        Ok(PhaseConfig(thetas.into_iter().map(wrap_phase).collect()))
    }

    /// All-zero phases (identity reflection).
    pub fn zeros(k: usize) -> Result<Self> {
        PhaseConfig::new(vec![0.0; k])
    }

    pub fn thetas(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn wrap_phase(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FadingModel {
    /// i.i.d. circularly-symmetric complex Gaussian, unit mean power.
    #[default]
    RayleighUnit,
    /// Every coefficient is exactly `1 + 0j`. Useful for checking the link
    /// budget without fading.
    Unit,
}

pub fn sample_fading(stream: &Substream, k: usize, model: FadingModel) -> Result<FadingVector> {
    if k == 0 {
        return Err(Error::domain("element count", "must be at least 1"));
    }
    let coeffs = match model {
        FadingModel::RayleighUnit => {
            let mut rng = stream.rng();
            (0..k)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
                })
                .collect()
        }
        FadingModel::Unit => vec![Complex64::new(1.0, 0.0); k],
    };
    Ok(FadingVector(coeffs))
}

/// `g_userᵀ · diag(e^{jθ}) · g_bs`, evaluated as a sum over elements.
pub fn cascaded_gain(
    g_user: &FadingVector,
    phases: &PhaseConfig,
    g_bs: &FadingVector,
) -> Result<Complex64> {
    check_len(g_user.len(), phases.len())?;
    check_len(g_user.len(), g_bs.len())?;
    Ok(g_user
        .0
        .iter()
        .zip(&phases.0)
        .zip(&g_bs.0)
        .map(|((gu, &theta), gb)| {
            let (sin, cos) = theta.sin_cos();
            gu * Complex64::new(cos, sin) * gb
        })
        .sum())
}

/// Phases that co-phase every element of the cascaded channel for one user,
/// making the gain real and equal to `Σ |g_user[k]|·|g_bs[k]|`.
pub fn coherent_phases(g_user: &FadingVector, g_bs: &FadingVector) -> Result<PhaseConfig> {
    check_len(g_user.len(), g_bs.len())?;
    let thetas = g_user
        .0
        .iter()
        .zip(&g_bs.0)
        .map(|(gu, gb)| wrap_phase(-(gu * gb).arg()))
        .collect();
    Ok(PhaseConfig(thetas))
}

pub fn random_phases(stream: &Substream, k: usize) -> Result<PhaseConfig> {
    if k == 0 {
        return Err(Error::domain("element count", "must be at least 1"));
    }
    let mut rng = stream.rng();
    let thetas = (0..k).map(|_| wrap_phase(rng.random::<f64>() * TAU)).collect();
    Ok(PhaseConfig(thetas))
}

fn check_len(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::Dimension { left, right })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Hop;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn stream(trial: u64, hop: Hop) -> Substream {
        Substream::new(7, 0, trial, hop)
    }

    #[test]
    fn sampling_is_deterministic() {
        let s = stream(1, Hop::BsIrs);
        let a = sample_fading(&s, 16, FadingModel::RayleighUnit).unwrap();
        let b = sample_fading(&s, 16, FadingModel::RayleighUnit).unwrap();
        assert_eq!(a, b);
        assert_eq!(sample_fading(&s, 3, FadingModel::RayleighUnit).unwrap().len(), 3);
    }

    #[test]
    fn zero_elements_rejected() {
        let s = stream(0, Hop::BsIrs);
        assert!(sample_fading(&s, 0, FadingModel::RayleighUnit).is_err());
        assert!(random_phases(&s, 0).is_err());
    }

    #[test]
    fn rayleigh_unit_power() {
        // 64 elements x 15625 vectors = 10^6 entries
        let total: f64 = (0..15_625)
            .map(|t| {
                sample_fading(&stream(t, Hop::IrsNear), 64, FadingModel::RayleighUnit)
                    .unwrap()
                    .coeffs()
                    .iter()
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
            })
            .sum();
        let mean = total / 1e6;
        assert!((mean - 1.0).abs() < 0.01, "mean |g|^2 = {mean}");
    }

    #[test]
    fn unit_fading_is_all_ones() {
        let g = sample_fading(&stream(0, Hop::BsIrs), 4, FadingModel::Unit).unwrap();
        assert!(g.coeffs().iter().all(|z| *z == c(1.0, 0.0)));
    }

    #[test]
    fn cascaded_gain_examples() {
        let ones = FadingVector::new(vec![c(1.0, 0.0); 4]).unwrap();
        let zeros = PhaseConfig::zeros(4).unwrap();
        assert_eq!(cascaded_gain(&ones, &zeros, &ones).unwrap(), c(4.0, 0.0));

        let gu = FadingVector::new(vec![c(0.0, 1.0)]).unwrap();
        let gb = FadingVector::new(vec![c(1.0, 0.0)]).unwrap();
        let theta = PhaseConfig::new(vec![FRAC_PI_2]).unwrap();
        let h = cascaded_gain(&gu, &theta, &gb).unwrap();
        assert!((h - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cascaded_gain_dimension_mismatch() {
        let a = FadingVector::new(vec![c(1.0, 0.0); 3]).unwrap();
        let b = FadingVector::new(vec![c(1.0, 0.0); 4]).unwrap();
        let p3 = PhaseConfig::zeros(3).unwrap();
        assert_eq!(
            cascaded_gain(&a, &p3, &b),
            Err(Error::Dimension { left: 3, right: 4 })
        );
        assert!(coherent_phases(&a, &b).is_err());
    }

    #[test]
    fn coherent_examples() {
        let pos = FadingVector::new(vec![c(0.5, 0.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(coherent_phases(&pos, &pos).unwrap().thetas(), &[0.0, 0.0]);

        let gu = FadingVector::new(vec![c(0.0, 1.0)]).unwrap();
        let gb = FadingVector::new(vec![c(1.0, 0.0)]).unwrap();
        let theta = coherent_phases(&gu, &gb).unwrap();
        assert!((theta.thetas()[0] - 3.0 * FRAC_PI_2).abs() < 1e-15);
        let h = cascaded_gain(&gu, &theta, &gb).unwrap();
        assert!((h - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn coherent_gain_is_sum_of_magnitudes() {
        for t in 0..50 {
            let gu = sample_fading(&stream(t, Hop::IrsFar), 32, FadingModel::RayleighUnit).unwrap();
            let gb = sample_fading(&stream(t, Hop::BsIrs), 32, FadingModel::RayleighUnit).unwrap();
            let h = cascaded_gain(&gu, &coherent_phases(&gu, &gb).unwrap(), &gb).unwrap();
            let expected: f64 = gu
                .coeffs()
                .iter()
                .zip(gb.coeffs())
                .map(|(a, b)| a.norm() * b.norm())
                .sum();
            assert!(h.re >= 0.0);
            assert!(h.im.abs() < 1e-12);
            assert!((h.re - expected).abs() < 1e-12 * expected);
        }
    }

    #[test]
    fn random_phase_range_and_mean() {
        let one = random_phases(&stream(0, Hop::Phases), 1).unwrap();
        assert!((0.0..TAU).contains(&one.thetas()[0]));
        assert_eq!(
            random_phases(&stream(5, Hop::Phases), 8).unwrap(),
            random_phases(&stream(5, Hop::Phases), 8).unwrap()
        );
        let mut sum = 0.0;
        let mut n = 0usize;
        for t in 0..100_000 / 64 + 1 {
            for th in random_phases(&stream(t, Hop::Phases), 64).unwrap().thetas() {
                assert!((0.0..TAU).contains(th));
                sum += th;
                n += 1;
            }
        }
        let mean = sum / n as f64;
        assert!((mean - PI).abs() < 0.02, "mean theta {mean}");
    }

    #[test]
    fn phase_wrapping() {
        let p = PhaseConfig::new(vec![-FRAC_PI_2, TAU, 5.0 * PI, -1e-18]).unwrap();
        let t = p.thetas();
        assert!((t[0] - 3.0 * FRAC_PI_2).abs() < 1e-15);
        assert_eq!(t[1], 0.0);
        assert!((t[2] - PI).abs() < 1e-14);
        assert!(t[3] < TAU);
    }
}
