//! Hermitian-matrix helpers shared by the continuous- and discrete-variable
//! code: spectral square roots, Uhlmann fidelity, trace norms and entropies.

use nalgebra::allocator::Allocator;
use nalgebra::{
    Complex, DefaultAllocator, Dim, DimDiff, DimSub, Matrix2, Matrix4, OMatrix, OVector, SymmetricEigen, U1,
};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;

/// Eigenvalues above this (negative) value are treated as rounding noise and
/// clamped to zero before taking square roots.
pub const NEG_EIG_CLAMP: f64 = -1e-10;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// Eigenvalues (ascending) of a Hermitian matrix.
pub fn hermitian_eigenvalues<D>(m: &OMatrix<C64, D, D>) -> Vec<f64>
where
    D: Dim + DimSub<U1>,
    DefaultAllocator: Allocator<D, D> + Allocator<DimDiff<D, U1>> + Allocator<D> + Allocator<D, DimDiff<D, U1>>,
{
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Principal square root of a positive-semidefinite Hermitian matrix.
///
/// Fails if any eigenvalue is below [`NEG_EIG_CLAMP`].
pub fn psd_sqrt<D>(m: &OMatrix<C64, D, D>) -> Result<OMatrix<C64, D, D>>
where
    D: Dim + DimSub<U1>,
    DefaultAllocator: Allocator<D, D> + Allocator<DimDiff<D, U1>> + Allocator<D> + Allocator<D, DimDiff<D, U1>>,
{
    let eig = SymmetricEigen::new(m.clone());
    let roots = clamped_roots(&eig.eigenvalues)?;
    let mut scaled = eig.eigenvectors.clone();
    for (j, r) in roots.iter().enumerate() {
        scaled.column_mut(j).scale_mut(*r);
    }
    Ok(scaled * eig.eigenvectors.adjoint())
}

fn clamped_roots<D>(ev: &OVector<f64, D>) -> Result<Vec<f64>>
where
    D: Dim,
    DefaultAllocator: Allocator<D>,
{
    ev.iter()
        .map(|&l| {
            if l >= 0.0 {
                Ok(l.sqrt())
            } else if l >= NEG_EIG_CLAMP {
                Ok(0.0)
            } else {
                Err(Error::Unphysical(format!(
                    "negative eigenvalue {l:e} in square-root argument"
                )))
            }
        })
        .collect()
}

/// Uhlmann fidelity in the squared convention, `(Tr sqrt(sqrt(a) b sqrt(a)))^2`.
pub fn uhlmann<D>(a: &OMatrix<C64, D, D>, b: &OMatrix<C64, D, D>) -> Result<f64>
where
    D: Dim + DimSub<U1>,
    DefaultAllocator: Allocator<D, D> + Allocator<DimDiff<D, U1>> + Allocator<D> + Allocator<D, DimDiff<D, U1>>,
{
    let sa = psd_sqrt(a)?;
    let mut inner = &sa * b * &sa;
    hermitize(&mut inner);
    let eig = inner.symmetric_eigenvalues();
    let tr: f64 = clamped_roots(&eig)?.iter().sum();
    Ok((tr * tr).clamp(0.0, 1.0))
}

/// Trace norm `||m||_1` of a Hermitian matrix.
pub fn trace_norm<D>(m: &OMatrix<C64, D, D>) -> f64
where
    D: Dim + DimSub<U1>,
    DefaultAllocator: Allocator<D, D> + Allocator<DimDiff<D, U1>> + Allocator<D> + Allocator<D, DimDiff<D, U1>>,
{
    m.clone().symmetric_eigenvalues().iter().map(|l| l.abs()).sum()
}

/// Replace `m` by `(m + m†)/2`.
pub fn hermitize<D>(m: &mut OMatrix<C64, D, D>)
where
    D: Dim,
    DefaultAllocator: Allocator<D, D>,
{
    let adj = m.adjoint();
    *m += adj;
    m.scale_mut(0.5);
}

/// Shannon entropy in bits of a spectrum, with `0 log 0 = 0` and tiny negative
/// eigenvalues ignored.
pub fn entropy_bits(spectrum: impl IntoIterator<Item = f64>) -> f64 {
    spectrum
        .into_iter()
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Closed-form eigenvalues of a 2x2 Hermitian matrix, ascending.
pub fn eigenvalues2(m: &Mat2) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let rad = (half * half + m[(0, 1)].norm_sqr()).sqrt();
    [mean - rad, mean + rad]
}

pub fn max_abs_diff<D>(a: &OMatrix<C64, D, D>, b: &OMatrix<C64, D, D>) -> f64
where
    D: Dim,
    DefaultAllocator: Allocator<D, D>,
{
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Kronecker product of two single-qubit operators.
pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

/// The identity and the three Pauli matrices.
pub fn paulis() -> [Mat2; 4] {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        Mat2::new(one, o, o, one),
        Mat2::new(o, one, one, o),
        Mat2::new(o, -i, i, o),
        Mat2::new(one, o, o, -one),
    ]
}
