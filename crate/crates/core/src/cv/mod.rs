//! Single-mode squeezed thermal states (STS).
//!
//! Variances are in shot-noise units: the vacuum has `<Δx²> = <Δp²> = 1`. A
//! state is described either by its squeezing factor `s = e^{2r}` and purity
//! `mu`, or by its diagonal covariance matrix `diag(s/mu, 1/(mu s))`.

pub mod fock;

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

/// Slack on the uncertainty relation `det σ ≥ 1` absorbed as rounding.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Largest off-diagonal element accepted when reading a covariance matrix
/// back as an STS.
pub const STS_CROSS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StsParams {
    /// Squeezing factor `e^{2r}`.
    pub s: f64,
    /// Purity `Tr[ρ²]`.
    pub mu: f64,
}

impl StsParams {
    pub fn new(s: f64, mu: f64) -> Result<Self> {
        let p = StsParams { s, mu };
        p.validate()?;
        Ok(p)
    }

    pub fn vacuum() -> Self {
        StsParams { s: 1.0, mu: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s > 0.0 && self.s.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "squeezing factor must be positive, got {}",
                self.s
            )));
        }
        if !(self.mu > 0.0 && self.mu <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "purity must lie in (0, 1], got {}",
                self.mu
            )));
        }
        Ok(())
    }

    pub fn n_th(&self) -> f64 {
        0.5 * (1.0 / self.mu - 1.0)
    }

    pub fn r(&self) -> f64 {
        0.5 * self.s.ln()
    }

    pub fn n_s(&self) -> f64 {
        self.r().sinh().powi(2)
    }

    pub fn energy(&self) -> EnergyBudget {
        let (n_th, n_s) = (self.n_th(), self.n_s());
        EnergyBudget {
            n_th,
            n_s,
            n_tot: n_th + n_s + 2.0 * n_th * n_s,
        }
    }

    /// Quadrature variance `<Δx_θ²>` at local-oscillator phase `theta`.
    pub fn quadrature_variance(&self, theta: f64) -> f64 {
        let (c, s) = (theta.cos(), theta.sin());
        (self.s * c * c + s * s / self.s) / self.mu
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovarianceMatrix2 {
    pub vxx: f64,
    pub vpp: f64,
    pub vxp: f64,
}

impl CovarianceMatrix2 {
    pub fn diag(vxx: f64, vpp: f64) -> Self {
        CovarianceMatrix2 { vxx, vpp, vxp: 0.0 }
    }

    pub fn det(&self) -> f64 {
        self.vxx * self.vpp - self.vxp * self.vxp
    }

    pub fn check_physical(&self) -> Result<()> {
        if !(self.vxx > 0.0 && self.vpp > 0.0) {
            return Err(Error::Unphysical(format!(
                "non-positive variance in ({}, {})",
                self.vxx, self.vpp
            )));
        }
        if self.det() < 1.0 - PHYSICALITY_TOL {
            return Err(Error::Unphysical(format!(
                "det σ = {} violates the uncertainty relation",
                self.det()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBudget {
    pub n_th: f64,
    pub n_s: f64,
    pub n_tot: f64,
}

pub fn cm_from_params(p: StsParams) -> Result<CovarianceMatrix2> {
    p.validate()?;
    Ok(CovarianceMatrix2::diag(p.s / p.mu, 1.0 / (p.mu * p.s)))
}

pub fn params_from_cm(c: CovarianceMatrix2) -> Result<StsParams> {
    if !(c.vxx > 0.0 && c.vpp > 0.0) {
        return Err(Error::Unphysical(format!(
            "non-positive variance in ({}, {})",
            c.vxx, c.vpp
        )));
    }
    if c.vxp.abs() > STS_CROSS_TOL {
        return Err(Error::NotStsForm(c.vxp));
    }
    c.check_physical()?;
    let s = (c.vxx / c.vpp).sqrt();
    // Rounding can push det σ a hair below one.
    let mu = (1.0 / (c.vxx * c.vpp).sqrt()).min(1.0);
    Ok(StsParams { s, mu })
}

pub fn total_energy(n_th: f64, n_s: f64) -> Result<f64> {
    if !(n_th >= 0.0 && n_s >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "photon numbers must be non-negative, got n_th={n_th}, n_s={n_s}"
        )));
    }
    Ok(n_th + n_s + 2.0 * n_th * n_s)
}

/// Squeezed-quadrature attenuation `1 + 2n_s − 2√(n_s + n_s²)`, i.e. `s ≤ 1`
/// for a state carrying `n_s` squeezing photons.
pub fn squeezing_factor_from_photons(n_s: f64) -> f64 {
    1.0 + 2.0 * n_s - 2.0 * (n_s + n_s * n_s).sqrt()
}

/// Position and momentum variances of an STS with total energy `n_tot` of
/// which `n_s` are squeezing photons (squeezing along `x`).
pub fn variances_from_energy(n_tot: f64, n_s: f64) -> Result<(f64, f64)> {
    if !(n_s >= 0.0 && n_tot >= n_s) {
        return Err(Error::InvalidParameter(format!(
            "need n_tot ≥ n_s ≥ 0, got n_tot={n_tot}, n_s={n_s}"
        )));
    }
    let thermal = 1.0 + 2.0 * (n_tot - n_s) / (2.0 * n_s + 1.0);
    let g = squeezing_factor_from_photons(n_s);
    Ok((thermal * g, thermal / g))
}

/// A STS has a singular Glauber P-function iff `s < mu` or `s > 1/mu`.
pub fn is_nonclassical(p: StsParams) -> bool {
    p.s < p.mu || p.s > 1.0 / p.mu
}

/// Fidelity between two zero-mean single-mode Gaussian states, squared
/// (Uhlmann) convention, shot-noise units.
pub fn gaussian_fidelity(c1: CovarianceMatrix2, c2: CovarianceMatrix2) -> Result<f64> {
    c1.check_physical()?;
    c2.check_physical()?;
    let sum = CovarianceMatrix2 {
        vxx: c1.vxx + c2.vxx,
        vpp: c1.vpp + c2.vpp,
        vxp: c1.vxp + c2.vxp,
    };
    let big = 0.25 * sum.det();
    let small = (0.25 * (c1.det() - 1.0) * (c2.det() - 1.0)).max(0.0);
    let f = 1.0 / ((big + small).sqrt() - small.sqrt());
    Ok(f.min(1.0))
}

fn check_fidelity(f: f64) -> Result<()> {
    if (0.0..=1.0).contains(&f) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("fidelity {f} outside [0, 1]")))
    }
}

pub fn bures_distance(f: f64) -> Result<f64> {
    check_fidelity(f)?;
    Ok((2.0 * (1.0 - f.sqrt())).sqrt())
}

/// Lower and upper bounds on the trace distance `½||ρ1 − ρ2||₁` implied by
/// the fidelity.
pub fn trace_distance_bounds(f: f64) -> Result<(f64, f64)> {
    check_fidelity(f)?;
    Ok((1.0 - f.sqrt(), (1.0 - f).sqrt()))
}

/// Draws one coherent amplitude from the Glauber P-function of a thermal
/// state: `|α|²` exponential with mean `n_th`, phase uniform.
pub fn sample_thermal_amplitude<R: Rng + ?Sized>(n_th: f64, rng: &mut R) -> Result<C64> {
    if !(n_th > 0.0 && n_th.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "thermal photon number must be positive, got {n_th}"
        )));
    }
    let e: f64 = Exp1.sample(rng);
    let modulus = (n_th * e).sqrt();
    let phase = rng.random::<f64>() * 2.0 * PI;
    Ok(C64::from_polar(modulus, phase))
}

/// Squeezing in dB, `10·|log10 s|` (so `s < 1` gives `−10·log10 s`).
pub fn squeezing_db(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "squeezing factor must be positive, got {s}"
        )));
    }
    Ok(10.0 * s.log10().abs())
}
