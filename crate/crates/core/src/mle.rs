//! Sixteen-projector polarization tomography: count simulation and
//! maximum-likelihood reconstruction with `ρ = T†T / Tr[T†T]`.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen, Vector2, Vector4};
use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::dv::DensityMatrix4;
use crate::error::{Error, Result};
use crate::linalg::{self, c, Mat4, C64};
use crate::optim::{bfgs, BfgsOptions};
use crate::rng;

/// Probability floor in likelihood denominators.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

/// Number of counts entering the normalization `𝒩`.
pub const NORMALIZATION_TERMS: usize = 4;

pub const STANDARD_SET_ID: &str = "standard16";

#[derive(Debug, Clone)]
pub struct ProjectorSet {
    id: String,
    labels: Vec<String>,
    kets: Vec<Vector4<C64>>,
}

impl ProjectorSet {
    /// Builds a set from normalized two-qubit kets. Fails unless the 16
    /// projectors span the Hermitian operator space.
    pub fn new(id: impl Into<String>, labels: Vec<String>, kets: Vec<Vector4<C64>>) -> Result<Self> {
        if kets.len() != 16 || labels.len() != 16 {
            return Err(Error::InvalidParameter(format!(
                "projector set needs 16 kets and labels, got {} and {}",
                kets.len(),
                labels.len()
            )));
        }
        let kets: Vec<_> = kets
            .into_iter()
            .map(|k| {
                let n = k.norm();
                if n == 0.0 {
                    Err(Error::InvalidParameter("zero projector ket".into()))
                } else {
                    Ok(k / c(n, 0.0))
                }
            })
            .collect::<Result<_>>()?;
        let set = ProjectorSet {
            id: id.into(),
            labels,
            kets,
        };
        let cond = set.gram_condition();
        if !cond.is_finite() || cond > 1e12 {
            return Err(Error::InvalidParameter(format!(
                "projector set is not tomographically complete (Gram condition {cond:e})"
            )));
        }
        Ok(set)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn kets(&self) -> &[Vector4<C64>] {
        &self.kets
    }

    pub fn projectors(&self) -> Vec<Mat4> {
        self.kets.iter().map(|k| k * k.adjoint()).collect()
    }

    /// `⟨ψ_j|ρ|ψ_j⟩` for every projector.
    pub fn probabilities(&self, r: &Mat4) -> Vec<f64> {
        self.kets.iter().map(|k| k.dotc(&(r * k)).re).collect()
    }

    /// Gram matrix `G_ij = Tr[P_i P_j] = |⟨ψ_i|ψ_j⟩|²`.
    pub fn gram(&self) -> DMatrix<f64> {
        DMatrix::from_fn(16, 16, |i, j| self.kets[i].dotc(&self.kets[j]).norm_sqr())
    }

    /// Ratio of extreme eigenvalues of the Gram matrix (infinite if singular).
    pub fn gram_condition(&self) -> f64 {
        let ev = SymmetricEigen::new(self.gram()).eigenvalues;
        let max = ev.iter().cloned().fold(f64::MIN, f64::max);
        let min = ev.iter().cloned().fold(f64::MAX, f64::min);
        if min <= 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }

    /// Linear map `r ↦ probabilities` in the Pauli-product basis
    /// `ρ = Σ_k r_k σ_a⊗σ_b / 4`.
    fn pauli_design(&self) -> DMatrix<f64> {
        let paulis = linalg::paulis();
        DMatrix::from_fn(16, 16, |j, k| {
            let op = linalg::kron2(&paulis[k / 4], &paulis[k % 4]);
            0.25 * self.kets[j].dotc(&(op * self.kets[j])).re
        })
    }
}

fn single(label: char) -> Vector2<C64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match label {
        'H' => Vector2::new(c(1.0, 0.0), c(0.0, 0.0)),
        'V' => Vector2::new(c(0.0, 0.0), c(1.0, 0.0)),
        'D' => Vector2::new(c(h, 0.0), c(h, 0.0)),
        'L' => Vector2::new(c(h, 0.0), c(0.0, h)),
        'R' => Vector2::new(c(h, 0.0), c(0.0, -h)),
        _ => unreachable!("unknown polarization {label}"),
    }
}

/// Two-qubit ket `|ab⟩` from polarization letters in `{H, V, D, L, R}`.
pub fn polarization_ket(label: &str) -> Result<Vector4<C64>> {
    let chars: Vec<char> = label.chars().collect();
    if chars.len() != 2 || !chars.iter().all(|ch| "HVDLR".contains(*ch)) {
        return Err(Error::InvalidParameter(format!(
            "polarization label must be two of H, V, D, L, R: {label:?}"
        )));
    }
    let (a, b) = (single(chars[0]), single(chars[1]));
    Ok(Vector4::new(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]))
}

pub const STANDARD_LABELS: [&str; 16] = [
    "HH", "HV", "VV", "VH", "RH", "RV", "DV", "DH", "DR", "DD", "RD", "HD", "VD", "VL", "HL", "RL",
];

/// The canonical 16-setting set; the first four span the `H/V` basis.
pub fn standard_projector_set() -> ProjectorSet {
    let kets = STANDARD_LABELS
        .iter()
        .map(|l| polarization_ket(l).expect("static labels"))
        .collect();
    let labels = STANDARD_LABELS.iter().map(|s| s.to_string()).collect();
    ProjectorSet::new(STANDARD_SET_ID, labels, kets).expect("standard set is complete")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcquisitionMeta {
    pub window_s: f64,
    pub repetitions: u32,
}

impl Default for AcquisitionMeta {
    fn default() -> Self {
        AcquisitionMeta {
            window_s: 1.0,
            repetitions: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRecord {
    pub labels: Vec<String>,
    pub counts: Vec<f64>,
    pub meta: AcquisitionMeta,
}

impl CountRecord {
    pub fn new(labels: Vec<String>, counts: Vec<f64>, meta: AcquisitionMeta) -> Result<Self> {
        if counts.len() != 16 || labels.len() != 16 {
            return Err(Error::InvalidParameter(format!(
                "count record needs 16 entries, got {}",
                counts.len()
            )));
        }
        if let Some(bad) = counts.iter().find(|n| !(n.is_finite() && **n >= 0.0)) {
            return Err(Error::InvalidParameter(format!("invalid count {bad}")));
        }
        let rec = CountRecord { labels, counts, meta };
        if rec.normalization() <= 0.0 {
            return Err(Error::InvalidParameter(
                "normalization (sum of the first four counts) must be positive".into(),
            ));
        }
        Ok(rec)
    }

    /// `𝒩 = Σ_{j<4} n_j`
    pub fn normalization(&self) -> f64 {
        self.counts[..NORMALIZATION_TERMS].iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum NoiseModel {
    #[default]
    Poisson,
    None,
}

/// Counts with means `n_scale ⟨ψ_j|ρ|ψ_j⟩`.
pub fn simulate_counts<R: Rng + ?Sized>(
    r: &DensityMatrix4,
    ps: &ProjectorSet,
    n_scale: f64,
    noise: NoiseModel,
    rng: &mut R,
) -> Result<CountRecord> {
    if !(n_scale > 0.0 && n_scale.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "n_scale must be positive, got {n_scale}"
        )));
    }
    let counts = ps
        .probabilities(r.matrix())
        .into_iter()
        .map(|q| {
            let mu = n_scale * q.max(0.0);
            match noise {
                NoiseModel::None => Ok(mu),
                NoiseModel::Poisson if mu == 0.0 => Ok(0.0),
                NoiseModel::Poisson => Poisson::new(mu)
                    .map(|d| d.sample(rng))
                    .map_err(|e| Error::InvalidParameter(format!("Poisson mean {mu}: {e}"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CountRecord::new(ps.labels().to_vec(), counts, AcquisitionMeta::default())
}

/// Real parameters of the lower-triangular `T`: entries `0..4` are the
/// diagonal, then `(re, im)` pairs for `(1,0), (2,0), (2,1), (3,0), (3,1), (3,2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CholeskiParams {
    pub t: [f64; 16],
}

const LOWER: [(usize, usize); 6] = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];

impl CholeskiParams {
    pub fn identity() -> Self {
        let mut t = [0.0; 16];
        t[..4].fill(1.0);
        CholeskiParams { t }
    }

    pub fn matrix(&self) -> Mat4 {
        let mut m = Mat4::zeros();
        for i in 0..4 {
            m[(i, i)] = c(self.t[i], 0.0);
        }
        for (k, &(i, j)) in LOWER.iter().enumerate() {
            m[(i, j)] = c(self.t[4 + 2 * k], self.t[5 + 2 * k]);
        }
        m
    }

    fn from_matrix(m: &Mat4) -> Self {
        let mut t = [0.0; 16];
        for i in 0..4 {
            t[i] = m[(i, i)].re;
        }
        for (k, &(i, j)) in LOWER.iter().enumerate() {
            t[4 + 2 * k] = m[(i, j)].re;
            t[5 + 2 * k] = m[(i, j)].im;
        }
        CholeskiParams { t }
    }

    /// Parameters reproducing a full-rank state, scaled to `Tr[T†T] = 1`.
    ///
    /// With `J` the exchange matrix, `JρJ = L L†` gives `ρ = U U†` for the
    /// upper-triangular `U = J L J`, and `T = U†`.
    pub fn from_state(r: &Mat4) -> Result<Self> {
        let j = Mat4::from_fn(|a, b| if a + b == 3 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let l = Cholesky::new(j * r * j)
            .ok_or_else(|| Error::Degenerate("state is not positive definite".into()))?
            .unpack();
        let t = (j * l * j).adjoint();
        let norm = t.norm();
        Ok(CholeskiParams::from_matrix(&(t / c(norm, 0.0))))
    }

    /// Random `T` with independent standard-normal entries.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut t = [0.0; 16];
        for v in t.iter_mut() {
            *v = StandardNormal.sample(rng);
        }
        CholeskiParams { t }
    }
}

/// `T†T / Tr[T†T]`; positive and unit-trace for every nonzero `t`.
pub fn rho_from_choleski(t: &CholeskiParams) -> Result<DensityMatrix4> {
    let m = t.matrix();
    let z = m.norm_squared();
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Degenerate("Choleski parameters are all zero".into()));
    }
    DensityMatrix4::new(m.adjoint() * m / c(z, 0.0))
}

/// `Σ_j (𝒩 q_j − n_j)² / (2 𝒩 max(q_j, ε))` with `q_j = ⟨ψ_j|ρ(T)|ψ_j⟩`.
pub fn likelihood(t: &CholeskiParams, counts: &CountRecord, ps: &ProjectorSet) -> Result<f64> {
    let mut g = [0.0; 16];
    likelihood_and_gradient(&t.t, counts, ps, &mut g)
}

/// Likelihood with its gradient with respect to the 16 parameters.
pub fn likelihood_and_gradient(t: &[f64], counts: &CountRecord, ps: &ProjectorSet, grad: &mut [f64]) -> Result<f64> {
    let nn = counts.normalization();
    if !(nn > 0.0) {
        return Err(Error::InvalidParameter("normalization must be positive".into()));
    }
    let params = CholeskiParams {
        t: t.try_into()
            .map_err(|_| Error::InvalidParameter("need 16 parameters".into()))?,
    };
    let m = params.matrix();
    let z = m.norm_squared();
    if !(z > 0.0) {
        return Err(Error::Degenerate("Choleski parameters are all zero".into()));
    }
    grad.fill(0.0);
    let mut value = 0.0;
    for (psi, &n) in ps.kets().iter().zip(&counts.counts) {
        let v = m * psi;
        let q = v.norm_squared() / z;
        let (term, dterm) = if q >= PROBABILITY_FLOOR {
            let r = nn * q - n;
            (r * r / (2.0 * nn * q), 0.5 * nn - n * n / (2.0 * nn * q * q))
        } else {
            let r = nn * q - n;
            (r * r / (2.0 * nn * PROBABILITY_FLOOR), r / PROBABILITY_FLOOR)
        };
        value += term;
        // dq/dθ = (da/dθ − q dZ/dθ) / Z with a = |Tψ|², Z = Σ|T_kl|².
        for i in 0..4 {
            let da = 2.0 * (v[i].conj() * psi[i]).re;
            grad[i] += dterm * (da - q * 2.0 * t[i]) / z;
        }
        for (k, &(i, j)) in LOWER.iter().enumerate() {
            let w = v[i].conj() * psi[j];
            let (re, im) = (4 + 2 * k, 5 + 2 * k);
            grad[re] += dterm * (2.0 * w.re - q * 2.0 * t[re]) / z;
            grad[im] += dterm * (-2.0 * w.im - q * 2.0 * t[im]) / z;
        }
    }
    Ok(value)
}

/// Linear-inversion estimate, Hermitian with unit trace but possibly
/// non-positive.
pub fn linear_inversion(counts: &CountRecord, ps: &ProjectorSet) -> Result<Mat4> {
    let nn = counts.normalization();
    let a = ps.pauli_design();
    let b = DVector::from_iterator(16, counts.counts.iter().map(|n| n / nn));
    let r = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::Degenerate("projector design is singular".into()))?;
    let paulis = linalg::paulis();
    let mut m = Mat4::zeros();
    for k in 0..16 {
        m += linalg::kron2(&paulis[k / 4], &paulis[k % 4]) * c(r[k] / 4.0, 0.0);
    }
    linalg::hermitize(&mut m);
    let tr = m.trace().re;
    if !(tr.abs() > 1e-12) {
        return Err(Error::Degenerate("linear inversion has zero trace".into()));
    }
    Ok(m / c(tr, 0.0))
}

/// Closest state in Frobenius norm: eigenvalues projected onto the simplex.
pub fn project_to_physical(m: &Mat4) -> DensityMatrix4 {
    let mut h = *m;
    linalg::hermitize(&mut h);
    let eig = SymmetricEigen::new(h);
    let lam: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let proj = simplex_projection(&lam);
    let mut out = Mat4::zeros();
    for (k, w) in proj.iter().enumerate() {
        let v = eig.eigenvectors.column(k);
        out += v * v.adjoint() * c(*w, 0.0);
    }
    DensityMatrix4::from_trusted(out)
}

fn simplex_projection(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, &x) in u.iter().enumerate() {
        cum += x;
        let t = (cum - 1.0) / (k + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MleOptions {
    /// Random starts in addition to the linear-inversion start.
    pub restarts: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Gradient tolerance relative to `𝒩`.
    pub rel_gtol: f64,
}

impl Default for MleOptions {
    fn default() -> Self {
        MleOptions {
            restarts: 2,
            seed: 0,
            max_iter: 3000,
            rel_gtol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartOutcome {
    pub likelihood: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    pub likelihood: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub restarts: usize,
    pub best_start: usize,
    pub starts: Vec<StartOutcome>,
    pub projector_set: String,
    pub params: CholeskiParams,
}

/// Maximum-likelihood state with default options.
pub fn mle_fit(
    counts: &CountRecord,
    ps: &ProjectorSet,
    init: Option<CholeskiParams>,
) -> Result<(DensityMatrix4, FitDiagnostics)> {
    mle_fit_with(counts, ps, init, MleOptions::default())
}

/// Minimizes the likelihood over `T` by BFGS from several starts: `init` (or
/// the projected linear inversion) first, then `opts.restarts` random `T`
/// drawn from streams of `opts.seed`. The lowest converged minimum wins.
pub fn mle_fit_with(
    counts: &CountRecord,
    ps: &ProjectorSet,
    init: Option<CholeskiParams>,
    opts: MleOptions,
) -> Result<(DensityMatrix4, FitDiagnostics)> {
    let nn = counts.normalization();
    if !(nn > 0.0) {
        return Err(Error::InvalidParameter("normalization must be positive".into()));
    }
    let first = match init {
        Some(t) => t,
        None => {
            let seed_state = project_to_physical(&linear_inversion(counts, ps)?);
            let mixed = seed_state.matrix() * c(0.98, 0.0) + Mat4::identity() * c(0.005, 0.0);
            CholeskiParams::from_state(&mixed)?
        }
    };
    let starts = std::iter::once(first)
        .chain((0..opts.restarts).map(|i| CholeskiParams::random(&mut rng::child(opts.seed, i as u64))));

    let bopts = BfgsOptions {
        gtol: opts.rel_gtol * nn.max(1.0),
        f_target: 0.0,
        max_iter: opts.max_iter,
    };
    let mut outcomes = Vec::new();
    let mut best: Option<(usize, crate::optim::Minimum)> = None;
    let mut evaluations = 0;
    for (k, start) in starts.enumerate() {
        let mut failure = None;
        let m = bfgs(
            |x, g| match likelihood_and_gradient(x, counts, ps, g) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::INFINITY
                }
            },
            &start.t,
            bopts,
        );
        evaluations += m.evaluations;
        outcomes.push(StartOutcome {
            likelihood: m.f,
            iterations: m.iterations,
            converged: m.converged && m.f.is_finite(),
        });
        if !(m.converged && m.f.is_finite()) {
            continue;
        }
        if best.as_ref().is_none_or(|(_, b)| m.f < b.f) {
            best = Some((k, m));
        }
    }
    let (best_start, m) = best.ok_or_else(|| {
        Error::NonConvergence(format!(
            "all {} likelihood starts failed: {:?}",
            outcomes.len(),
            outcomes
        ))
    })?;
    let params = CholeskiParams {
        t: m.x.as_slice().try_into().expect("16 parameters"),
    };
    let rho = rho_from_choleski(&params)?;
    Ok((
        rho,
        FitDiagnostics {
            likelihood: m.f,
            iterations: m.iterations,
            evaluations,
            restarts: opts.restarts,
            best_start,
            starts: outcomes,
            projector_set: ps.id().to_string(),
            params,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dv::{bell_state, uhlmann_fidelity, werner, Bell};

    fn noiseless(r: &DensityMatrix4, n: f64) -> CountRecord {
        simulate_counts(r, &standard_projector_set(), n, NoiseModel::None, &mut rng::master(0)).unwrap()
    }

    #[test]
    fn standard_set_is_complete() {
        let ps = standard_projector_set();
        for p in ps.projectors() {
            assert!(linalg::max_abs_diff(&(p * p), &p) < 1e-12);
            assert!((p.trace().re - 1.0).abs() < 1e-12);
        }
        let cond = ps.gram_condition();
        assert!(cond.is_finite() && cond < 1e4, "{cond}");
        assert!(ps.gram().determinant().abs() > 1e-10);
    }

    #[test]
    fn count_examples() {
        let c = noiseless(&DensityMatrix4::maximally_mixed(), 1000.0);
        assert!(c.counts.iter().all(|n| (n - 250.0).abs() < 1e-9));
        let c = noiseless(&werner(1.0).unwrap(), 1000.0);
        assert!(c.counts[0].abs() < 1e-9 && (c.counts[1] - 500.0).abs() < 1e-9);
        assert!((c.normalization() - 1000.0).abs() < 1e-9);
        assert!(simulate_counts(
            &werner(1.0).unwrap(),
            &standard_projector_set(),
            0.0,
            NoiseModel::None,
            &mut rng::master(0)
        )
        .is_err());
    }

    #[test]
    fn poisson_counts_are_integral_and_reproducible() {
        let ps = standard_projector_set();
        let w = werner(0.44).unwrap();
        let a = simulate_counts(&w, &ps, 3300.0, NoiseModel::Poisson, &mut rng::master(5)).unwrap();
        let b = simulate_counts(&w, &ps, 3300.0, NoiseModel::Poisson, &mut rng::master(5)).unwrap();
        assert_eq!(a, b);
        assert!(a.counts.iter().all(|n| n.fract() == 0.0));
    }

    #[test]
    fn choleski_examples() {
        let r = rho_from_choleski(&CholeskiParams::identity()).unwrap();
        assert!(linalg::max_abs_diff(r.matrix(), DensityMatrix4::maximally_mixed().matrix()) < 1e-15);
        let mut t = [0.0; 16];
        t[0] = 1.0;
        let r = rho_from_choleski(&CholeskiParams { t }).unwrap();
        assert!((r.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!(rho_from_choleski(&CholeskiParams { t: [0.0; 16] }).is_err());
    }

    #[test]
    fn from_state_round_trips() {
        let w = werner(0.3).unwrap();
        let t = CholeskiParams::from_state(w.matrix()).unwrap();
        let back = rho_from_choleski(&t).unwrap();
        assert!(linalg::max_abs_diff(back.matrix(), w.matrix()) < 1e-12);
    }

    #[test]
    fn perfect_fit_has_zero_likelihood() {
        let t = CholeskiParams::random(&mut rng::master(3));
        let r = rho_from_choleski(&t).unwrap();
        let c = noiseless(&r, 1234.0);
        let l = likelihood(&t, &c, &standard_projector_set()).unwrap();
        assert!(l.abs() < 1e-18, "{l}");
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let ps = standard_projector_set();
        let c = simulate_counts(
            &werner(0.4).unwrap(),
            &ps,
            2000.0,
            NoiseModel::Poisson,
            &mut rng::master(1),
        )
        .unwrap();
        let t = CholeskiParams::random(&mut rng::master(2));
        let mut g = [0.0; 16];
        likelihood_and_gradient(&t.t, &c, &ps, &mut g).unwrap();
        for (i, gi) in g.iter().enumerate() {
            let h = 1e-6;
            let mut up = t;
            let mut dn = t;
            up.t[i] += h;
            dn.t[i] -= h;
            let fd = (likelihood(&up, &c, &ps).unwrap() - likelihood(&dn, &c, &ps).unwrap()) / (2.0 * h);
            assert!((fd - gi).abs() <= 1e-5 * fd.abs().max(1.0), "{i}: {fd} vs {gi}");
        }
    }

    #[test]
    fn linear_inversion_is_exact_without_noise() {
        let w = werner(0.44).unwrap();
        let est = linear_inversion(&noiseless(&w, 1e4), &standard_projector_set()).unwrap();
        assert!(linalg::max_abs_diff(&est, w.matrix()) < 1e-12);
    }

    #[test]
    fn noiseless_recovery() {
        let ps = standard_projector_set();
        let w = werner(0.44).unwrap();
        let (r, d) = mle_fit(&noiseless(&w, 1e4), &ps, None).unwrap();
        assert!(uhlmann_fidelity(&r, &w).unwrap() >= 0.9999);
        assert!(d.likelihood < 1e-8, "{}", d.likelihood);

        let bell = bell_state(Bell::PsiMinus);
        let (r, _) = mle_fit(&noiseless(&bell, 1e4), &ps, None).unwrap();
        assert!(uhlmann_fidelity(&r, &bell).unwrap() >= 0.999);
    }

    #[test]
    fn simplex_projection_examples() {
        let p = simplex_projection(&[0.6, 0.5, 0.0, -0.1]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!((p[0] - 0.55).abs() < 1e-15 && (p[1] - 0.45).abs() < 1e-15 && p[3] == 0.0);
    }
}
