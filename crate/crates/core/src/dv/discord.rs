//! Quantum discord with projective measurements on one qubit.

use serde::{Deserialize, Serialize};

use super::{entropy, partial_trace, DensityMatrix4, Subsystem};
use crate::error::{Error, Result};
use crate::linalg::{self, c, Mat2, Mat4};
use crate::optim::{nelder_mead, NelderMeadOptions};

const GRID_THETA: usize = 32;
const GRID_PHI: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscordResult {
    pub value: f64,
    /// Bloch angles `(θ, φ)` of the optimal projective measurement.
    pub optimal_angles: (f64, f64),
    pub mutual_info: f64,
    pub classical_corr: f64,
    pub measured: Subsystem,
}

/// Closed form for `p |Ψ−⟩⟨Ψ−| + (1−p)/4 I` on `p ∈ [0, 1]`; negative `p`
/// is handled by [`discord_numeric`].
pub fn discord_analytic_werner(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "analytic Werner discord needs p in [0, 1], got {p}"
        )));
    }
    let xlog = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    Ok(0.25 * xlog(1.0 + 3.0 * p) - 0.5 * xlog(1.0 + p) + 0.25 * xlog(1.0 - p))
}

fn swap_qubits(r: &Mat4) -> Mat4 {
    let perm = [0usize, 2, 1, 3];
    Mat4::from_fn(|i, j| r[(perm[i], perm[j])])
}

/// `T_k = Tr_A[(σ_k ⊗ I) ρ]` for `k = x, y, z`.
fn correlation_blocks(r: &Mat4) -> [Mat2; 3] {
    let p = linalg::paulis();
    let mut out = [Mat2::zeros(); 3];
    for (k, t) in out.iter_mut().enumerate() {
        let op = linalg::kron2(&p[k + 1], &Mat2::identity());
        *t = partial_trace(&(op * r), Subsystem::B);
    }
    out
}

fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

fn conditional_entropy(rho_b: &Mat2, t: &[Mat2; 3], n: [f64; 3]) -> f64 {
    let nt = t[0] * c(n[0], 0.0) + t[1] * c(n[1], 0.0) + t[2] * c(n[2], 0.0);
    [1.0, -1.0]
        .iter()
        .map(|&sign| {
            let m = (rho_b + nt * c(sign, 0.0)) * c(0.5, 0.0);
            let prob = m.trace().re;
            if prob <= 1e-15 {
                return 0.0;
            }
            let ev = linalg::eigenvalues2(&(m / c(prob, 0.0)));
            prob * linalg::entropy_bits(ev)
        })
        .sum()
}

/// Discord `I(A:B) − J(B|A)` with the measurement on `measured`.
///
/// The conditional entropy is minimized over the Bloch sphere: a
/// 32 × 64 grid in `(θ, φ)` followed by Nelder–Mead from the best node.
pub fn discord_numeric(r: &DensityMatrix4, measured: Subsystem) -> Result<DiscordResult> {
    let m = match measured {
        Subsystem::A => *r.matrix(),
        Subsystem::B => swap_qubits(r.matrix()),
    };
    let rho_a = partial_trace(&m, Subsystem::A);
    let rho_b = partial_trace(&m, Subsystem::B);
    let s_a = linalg::entropy_bits(linalg::eigenvalues2(&rho_a));
    let s_b = linalg::entropy_bits(linalg::eigenvalues2(&rho_b));
    let s_ab = entropy(&m);
    let t = correlation_blocks(&m);

    let cost = |x: &[f64]| conditional_entropy(&rho_b, &t, direction(x[0], x[1]));
    let mut best = (f64::INFINITY, [0.0, 0.0]);
    for i in 0..=GRID_THETA {
        let theta = std::f64::consts::PI * i as f64 / GRID_THETA as f64;
        for j in 0..GRID_PHI {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / GRID_PHI as f64;
            let v = cost(&[theta, phi]);
            if v < best.0 {
                best = (v, [theta, phi]);
            }
        }
    }
    let step = [
        std::f64::consts::PI / GRID_THETA as f64,
        std::f64::consts::PI / GRID_PHI as f64,
    ];
    let polished = nelder_mead(
        cost,
        &best.1,
        &step,
        NelderMeadOptions {
            xtol: 1e-9,
            ftol: 1e-14,
            max_iter: 2000,
        },
    );
    if !polished.converged {
        return Err(Error::NonConvergence(format!(
            "measurement search stopped after {} iterations at ({:.6}, {:.6})",
            polished.iterations, polished.x[0], polished.x[1]
        )));
    }
    let (cond, angles) = if polished.f < best.0 {
        (polished.f, [polished.x[0], polished.x[1]])
    } else {
        best
    };

    let mutual = s_a + s_b - s_ab;
    let classical = s_b - cond;
    let raw = mutual - classical;
    if raw < -1e-6 {
        return Err(Error::Unphysical(format!("negative discord {raw:e}")));
    }
    Ok(DiscordResult {
        value: raw.max(0.0),
        optimal_angles: (angles[0], angles[1]),
        mutual_info: mutual,
        classical_corr: classical,
        measured,
    })
}
