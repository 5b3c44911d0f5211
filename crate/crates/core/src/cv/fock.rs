//! Fock-basis density matrices of squeezed thermal states.
//!
//! These give an independent route to fidelities and trace distances of
//! Gaussian states (plain matrix functions on truncated density matrices),
//! against which the closed-form covariance-matrix expressions are checked.

use nalgebra::DMatrix;

use super::StsParams;
use crate::error::{Error, Result};
use crate::linalg::{self, C64};

/// Truncation is accepted once the retained trace is this close to one.
pub const MAX_TRACE_DEFICIT: f64 = 1e-8;

const MIN_CUTOFF: usize = 30;
const MAX_CUTOFF: usize = 400;

#[derive(Debug, Clone)]
pub struct FockState {
    /// Density matrix on photon numbers `0..=n_max`.
    pub rho: DMatrix<f64>,
    pub n_max: usize,
    pub trace_deficit: f64,
}

impl FockState {
    pub fn complex(&self) -> DMatrix<C64> {
        self.rho.map(|x| C64::new(x, 0.0))
    }
}

/// `S(r) ν(n_th) S†(r)` truncated to photon numbers `0..=n_max`.
///
/// The squeezing unitary is exponentiated in a larger space so that the kept
/// block is unaffected by the truncation of the generator.
pub fn sts_density_matrix(p: StsParams, n_max: usize) -> Result<DMatrix<f64>> {
    p.validate()?;
    let big = 2 * (n_max + 1) + 40;
    let r = p.r();
    let n_th = p.n_th();

    // Generator r/2 (a†² − a²) is real antisymmetric.
    let mut gen = DMatrix::<f64>::zeros(big, big);
    for n in 0..big - 2 {
        let amp = 0.5 * r * (((n + 1) * (n + 2)) as f64).sqrt();
        gen[(n + 2, n)] = amp;
        gen[(n, n + 2)] = -amp;
    }
    let squeeze = gen.exp();

    let thermal = DMatrix::from_fn(big, big, |i, j| {
        if i == j {
            (n_th / (1.0 + n_th)).powi(i as i32) / (1.0 + n_th)
        } else {
            0.0
        }
    });
    let full = &squeeze * thermal * squeeze.transpose();
    Ok(full.view((0, 0), (n_max + 1, n_max + 1)).into_owned())
}

/// Truncated density matrix with a dynamic cutoff: start from
/// `max(30, ceil(10 (N_tot + 1)))` and grow until the trace deficit is below
/// [`MAX_TRACE_DEFICIT`].
pub fn sts_fock_state(p: StsParams) -> Result<FockState> {
    p.validate()?;
    let n_tot = p.energy().n_tot;
    let mut n_max = ((10.0 * (n_tot + 1.0)).ceil() as usize).max(MIN_CUTOFF);
    loop {
        let rho = sts_density_matrix(p, n_max)?;
        let trace_deficit = 1.0 - rho.trace();
        if trace_deficit.abs() < MAX_TRACE_DEFICIT {
            return Ok(FockState {
                rho,
                n_max,
                trace_deficit,
            });
        }
        n_max += 10;
        if n_max > MAX_CUTOFF {
            return Err(Error::NonConvergence(format!(
                "Fock truncation did not reach trace deficit {MAX_TRACE_DEFICIT:e} below {MAX_CUTOFF} photons"
            )));
        }
    }
}

/// Brings two truncated states to a common cutoff.
pub fn common_pair(a: StsParams, b: StsParams) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    let n = sts_fock_state(a)?.n_max.max(sts_fock_state(b)?.n_max);
    let to_c = |m: DMatrix<f64>| m.map(|x| C64::new(x, 0.0));
    Ok((to_c(sts_density_matrix(a, n)?), to_c(sts_density_matrix(b, n)?)))
}

/// Uhlmann fidelity of two STS evaluated on truncated Fock matrices.
pub fn fock_fidelity(a: StsParams, b: StsParams) -> Result<f64> {
    let (ra, rb) = common_pair(a, b)?;
    linalg::uhlmann(&ra, &rb)
}

/// Trace distance `½||ρ_a − ρ_b||₁` on truncated Fock matrices.
pub fn fock_trace_distance(a: StsParams, b: StsParams) -> Result<f64> {
    let (ra, rb) = common_pair(a, b)?;
    Ok(0.5 * linalg::trace_norm(&(ra - rb)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_is_ground_state() {
        let rho = sts_density_matrix(StsParams::vacuum(), 10).unwrap();
        assert!((rho[(0, 0)] - 1.0).abs() < 1e-14);
        assert!(rho.iter().skip(1).all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn quadrature_moments_match_cm() {
        let p = StsParams { s: 0.41, mu: 0.53 };
        let st = sts_fock_state(p).unwrap();
        let n = st.n_max + 1;
        // x = a + a†, p = i(a† − a)
        let mut x2 = 0.0;
        let mut p2 = 0.0;
        let mut num = 0.0;
        for k in 0..n {
            let d = st.rho[(k, k)];
            num += k as f64 * d;
            // <x²> = Σ ρ_kk (2k+1) + 2 Re Σ ρ_{k,k+2} √((k+1)(k+2))
            x2 += d * (2 * k + 1) as f64;
            p2 += d * (2 * k + 1) as f64;
            if k + 2 < n {
                let off = st.rho[(k, k + 2)] * (((k + 1) * (k + 2)) as f64).sqrt();
                x2 += 2.0 * off;
                p2 -= 2.0 * off;
            }
        }
        assert!((x2 - 0.41 / 0.53).abs() < 1e-6, "x2={x2}");
        assert!((p2 - 1.0 / (0.41 * 0.53)).abs() < 1e-6, "p2={p2}");
        assert!((num - p.energy().n_tot).abs() < 1e-6);
    }

    #[test]
    fn cutoff_meets_deficit() {
        let st = sts_fock_state(StsParams { s: 0.4, mu: 0.4 }).unwrap();
        assert!(st.n_max >= 30);
        assert!(st.trace_deficit.abs() < MAX_TRACE_DEFICIT);
    }
}
