//! Two-qubit polarization states in the `{HH, HV, VH, VV}` product basis:
//! Bell and Werner states, Uhlmann fidelity, the partial-transpose
//! separability test and quantum discord.

mod discord;

pub use discord::{discord_analytic_werner, discord_numeric, DiscordResult};

use nalgebra::{allocator::Allocator, DefaultAllocator, Dim, DimDiff, DimSub, OMatrix, Vector4, U1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, Mat2, Mat4, C64};
use crate::optim::golden_section_max;

/// Tolerance on Hermiticity, trace and negative eigenvalues of a valid state.
pub const STATE_TOL: f64 = 1e-10;

pub const WERNER_MIN: f64 = -1.0 / 3.0;
pub const WERNER_MAX: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(Mat4);

impl DensityMatrix4 {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: Mat4) -> Result<Self> {
        let herm = linalg::max_abs_diff(&m, &m.adjoint());
        if herm > STATE_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}")));
        }
        let mut h = m;
        linalg::hermitize(&mut h);
        let min = linalg::hermitian_eigenvalues(&h)[0];
        if min < -STATE_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(DensityMatrix4(h))
    }

    /// Wraps a matrix known to be a state by construction (only Hermitized).
    pub(crate) fn from_trusted(mut m: Mat4) -> Self {
        linalg::hermitize(&mut m);
        DensityMatrix4(m)
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix4(Mat4::identity() * c(0.25, 0.0))
    }

    pub fn from_pure(v: &Vector4<C64>) -> Result<Self> {
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let u = v / C64::new(norm, 0.0);
        Ok(DensityMatrix4::from_trusted(u * u.adjoint()))
    }

    pub fn product(a: &Mat2, b: &Mat2) -> Result<Self> {
        DensityMatrix4::new(linalg::kron2(a, b))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.0)
    }

    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    /// Arithmetic mean of a set of states.
    pub fn mean<'a>(states: impl IntoIterator<Item = &'a DensityMatrix4>) -> Result<Self> {
        let mut acc = Mat4::zeros();
        let mut n = 0usize;
        for s in states {
            acc += s.0;
            n += 1;
        }
        if n == 0 {
            return Err(Error::Degenerate("mean of an empty set of states".into()));
        }
        Ok(DensityMatrix4::from_trusted(acc / c(n as f64, 0.0)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

pub fn bell_vector(which: Bell) -> Vector4<C64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (a, b) = (c(h, 0.0), c(0.0, 0.0));
    match which {
        Bell::PhiPlus => Vector4::new(a, b, b, a),
        Bell::PhiMinus => Vector4::new(a, b, b, -a),
        Bell::PsiPlus => Vector4::new(b, a, a, b),
        Bell::PsiMinus => Vector4::new(b, a, -a, b),
    }
}

pub fn bell_state(which: Bell) -> DensityMatrix4 {
    let v = bell_vector(which);
    DensityMatrix4::from_trusted(v * v.adjoint())
}

/// Werner mixing parameter, `−1/3 ≤ p ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct WernerParam(f64);

impl WernerParam {
    pub fn new(p: f64) -> Result<Self> {
        if (WERNER_MIN - 1e-15..=WERNER_MAX).contains(&p) {
            Ok(WernerParam(p.max(WERNER_MIN)))
        } else {
            Err(Error::InvalidParameter(format!(
                "Werner parameter {p} outside [−1/3, 1]"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `p |Ψ−⟩⟨Ψ−| + (1 − p)/4 I`
pub fn werner(p: f64) -> Result<DensityMatrix4> {
    let p = WernerParam::new(p)?.value();
    let psi = bell_state(Bell::PsiMinus).0;
    Ok(DensityMatrix4::from_trusted(
        psi * c(p, 0.0) + Mat4::identity() * c((1.0 - p) / 4.0, 0.0),
    ))
}

/// Werner state assembled as an optical mixture of `ρ_λ = λ Ψ− + (1−λ) Ψ+`
/// (weight `f₁ = (1+p)/2`) and `ρ_mix = (Φ+ + Φ−)/2` (weight `f₂ = (1−p)/2`).
///
/// Equality with [`werner`] fixes `λ = (1+3p) / (2(1+p))`; see
/// [`mixing_weights`].
pub fn werner_from_mixing(p: f64) -> Result<DensityMatrix4> {
    let (f1, f2, lambda) = mixing_weights(p)?;
    let rho_lambda = bell_state(Bell::PsiMinus).0 * c(lambda, 0.0) + bell_state(Bell::PsiPlus).0 * c(1.0 - lambda, 0.0);
    let rho_mix = (bell_state(Bell::PhiPlus).0 + bell_state(Bell::PhiMinus).0) * c(0.5, 0.0);
    DensityMatrix4::new(rho_lambda * c(f1, 0.0) + rho_mix * c(f2, 0.0))
}

/// `(f₁, f₂, λ)` for the two-source mixture. `λ ∈ [0, 1]` exactly when
/// `p ∈ [−1/3, 1]`.
pub fn mixing_weights(p: f64) -> Result<(f64, f64, f64)> {
    if !(p > -1.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "mixing construction needs p in (−1, 1], got {p}"
        )));
    }
    let lambda = (1.0 + 3.0 * p) / (2.0 * (1.0 + p));
    if !(0.0..=1.0 + 1e-15).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "mixing weight λ = {lambda} outside [0, 1] at p = {p}"
        )));
    }
    Ok(((1.0 + p) / 2.0, (1.0 - p) / 2.0, lambda.min(1.0)))
}

/// `√ρ_w` in closed form: the Werner state is diagonal in the Bell basis.
fn werner_sqrt(p: f64) -> Mat4 {
    let psi = bell_state(Bell::PsiMinus).0;
    let rest = Mat4::identity() - psi;
    psi * c(((1.0 + 3.0 * p) / 4.0).max(0.0).sqrt(), 0.0) + rest * c(((1.0 - p) / 4.0).max(0.0).sqrt(), 0.0)
}

/// Uhlmann fidelity `(Tr √(√ρ₁ ρ₂ √ρ₁))²`.
pub fn uhlmann_fidelity(r1: &DensityMatrix4, r2: &DensityMatrix4) -> Result<f64> {
    linalg::uhlmann(&r1.0, &r2.0)
}

/// `½ ||ρ₁ − ρ₂||₁`
pub fn trace_distance(r1: &DensityMatrix4, r2: &DensityMatrix4) -> f64 {
    0.5 * linalg::trace_norm(&(r1.0 - r2.0))
}

/// Fidelity between `r` and `werner(p)` using the closed-form Werner root.
pub fn werner_fidelity(r: &DensityMatrix4, p: f64) -> Result<f64> {
    let s = werner_sqrt(p);
    let mut inner = s * r.0 * s;
    linalg::hermitize(&mut inner);
    let tr: f64 = linalg::hermitian_eigenvalues(&inner)
        .into_iter()
        .map(|l| {
            if l >= 0.0 {
                Ok(l.sqrt())
            } else if l >= linalg::NEG_EIG_CLAMP {
                Ok(0.0)
            } else {
                Err(Error::Unphysical(format!("negative eigenvalue {l:e}")))
            }
        })
        .sum::<Result<f64>>()?;
    Ok((tr * tr).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Subsystem {
    #[default]
    A,
    B,
}

/// Reduced state of the kept qubit.
pub fn partial_trace(r: &Mat4, keep: Subsystem) -> Mat2 {
    Mat2::from_fn(|i, j| match keep {
        Subsystem::A => r[(2 * i, 2 * j)] + r[(2 * i + 1, 2 * j + 1)],
        Subsystem::B => r[(i, j)] + r[(i + 2, j + 2)],
    })
}

/// Transpose on one qubit: `⟨ij|ρ^{T_B}|kl⟩ = ⟨il|ρ|kj⟩` for `side = B`.
pub fn partial_transpose(r: &Mat4, side: Subsystem) -> Mat4 {
    Mat4::from_fn(|row, col| {
        let (i, j) = (row / 2, row % 2);
        let (k, l) = (col / 2, col % 2);
        match side {
            Subsystem::B => r[(2 * i + l, 2 * k + j)],
            Subsystem::A => r[(2 * k + j, 2 * i + l)],
        }
    })
}

/// Smallest eigenvalue of the partial transpose (over the second qubit);
/// negative iff the state is entangled.
pub fn min_ppt_eigenvalue(r: &DensityMatrix4) -> f64 {
    linalg::hermitian_eigenvalues(&partial_transpose(&r.0, Subsystem::B))[0]
}

/// von Neumann entropy in bits.
pub fn entropy<D>(r: &OMatrix<C64, D, D>) -> f64
where
    D: Dim + DimSub<U1>,
    DefaultAllocator: Allocator<D, D> + Allocator<DimDiff<D, U1>> + Allocator<D> + Allocator<D, DimDiff<D, U1>>,
{
    linalg::entropy_bits(linalg::hermitian_eigenvalues(r))
}

/// Werner parameter maximizing the fidelity to `r`, with that fidelity.
///
/// A 41-point scan brackets the maximum and golden-section search polishes
/// it to `|Δp| < 1e-7`. If the scan shows more than one local maximum the
/// scan is refined to `Δp = 1e-3` first.
pub fn closest_werner(r: &DensityMatrix4) -> Result<(f64, f64)> {
    let scan = |n: usize| -> Result<Vec<(f64, f64)>> {
        (0..=n)
            .map(|i| {
                let p = WERNER_MIN + (WERNER_MAX - WERNER_MIN) * i as f64 / n as f64;
                Ok((p, werner_fidelity(r, p)?))
            })
            .collect()
    };
    let mut grid = scan(40)?;
    let local_maxima = (0..grid.len())
        .filter(|&i| {
            let left = i == 0 || grid[i - 1].1 < grid[i].1;
            let right = i + 1 == grid.len() || grid[i + 1].1 <= grid[i].1;
            left && right
        })
        .count();
    if local_maxima > 1 {
        grid = scan(1333)?;
    }
    let best = (0..grid.len())
        .max_by(|&a, &b| grid[a].1.total_cmp(&grid[b].1))
        .unwrap_or(0);
    let lo = grid[best.saturating_sub(1)].0;
    let hi = grid[(best + 1).min(grid.len() - 1)].0;
    let (p, f) = golden_section_max(|p| werner_fidelity(r, p).unwrap_or(f64::NEG_INFINITY), lo, hi, 1e-7);
    let p = p.clamp(WERNER_MIN, WERNER_MAX);
    Ok((p, f.max(grid[best].1)))
}
