//! Dense complex matrix helpers.
//!
//! Every operator and superoperator in this crate is carried by an
//! `ndarray::Array2<Complex64>`. Equality checks always take an explicit
//! absolute tolerance; there is no `==` on matrices anywhere downstream.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = Array2<Complex64>;
pub type CVector = Array1<Complex64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

pub fn identity(n: usize) -> CMatrix {
    Array2::from_diag_elem(n, ONE)
}

/// Conjugate transpose.
pub fn dagger(m: &CMatrix) -> CMatrix {
    m.t().mapv(|z| z.conj())
}

/// Frobenius norm.
pub fn fro_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_norm(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise absolute difference.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.dim(), b.dim(), "max_abs_diff: shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Entrywise equality with an explicit absolute tolerance.
pub fn approx_eq(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    a.dim() == b.dim() && max_abs_diff(a, b) <= tol
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.dot(b) - b.dot(a)
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.dot(b) + b.dot(a)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    ndarray::linalg::kron(a, b)
}

pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// ‖M − M†‖ / max(‖M‖, 1).
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let d = max_abs_diff(m, &dagger(m));
    d / fro_norm(m).max(1.0)
}

pub fn check_square(m: &CMatrix, what: &str) -> Result<usize> {
    let (r, c) = m.dim();
    if r != c {
        return Err(Error::DimensionMismatch(format!("{what} is {r}x{c}, expected square")));
    }
    Ok(r)
}

pub fn check_same_dim(a: &CMatrix, b: &CMatrix, what: &str) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{what}: {:?} vs {:?}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

/// Column-stacking vectorization: vec(X)[c*d + r] = X[r, c].
///
/// The whole crate relies on the identity vec(AXB) = (Bᵀ ⊗ A) vec(X) in
/// exactly this convention.
pub fn vectorize(m: &CMatrix) -> CVector {
    m.t().iter().cloned().collect()
}

/// Inverse of [`vectorize`] for a d×d matrix.
pub fn unvectorize(v: &CVector, d: usize) -> Result<CMatrix> {
    if v.len() != d * d {
        return Err(Error::DimensionMismatch(format!(
            "unvectorize: vector of length {} cannot form a {d}x{d} matrix",
            v.len()
        )));
    }
    Ok(Array2::from_shape_fn((d, d), |(r, c)| v[c * d + r]))
}

/// Trace of a square matrix.
pub fn trace(m: &CMatrix) -> Complex64 {
    m.diag().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectorize_is_column_stacking() {
        let m = ndarray::array![
            [ONE, Complex64::new(2.0, 0.0)],
            [Complex64::new(3.0, 0.0), Complex64::new(4.0, 1.0)]
        ];
        let v = vectorize(&m);
        assert_eq!(v[0], ONE);
        assert_eq!(v[1], Complex64::new(3.0, 0.0));
        assert_eq!(v[2], Complex64::new(2.0, 0.0));
        assert_eq!(v[3], Complex64::new(4.0, 1.0));
        let back = unvectorize(&v, 2).unwrap();
        assert!(approx_eq(&m, &back, 0.0));
    }

    #[test]
    fn vec_of_product_identity() {
        // vec(AXB) = (Bᵀ ⊗ A) vec(X)
        let a = Array2::from_shape_fn((3, 3), |(i, j)| Complex64::new((i + j) as f64, i as f64));
        let b = Array2::from_shape_fn((3, 3), |(i, j)| Complex64::new(i as f64, (2 * j) as f64));
        let x = Array2::from_shape_fn((3, 3), |(i, j)| Complex64::new((i * j) as f64, 1.0));
        let lhs = vectorize(&a.dot(&x).dot(&b));
        let rhs = kron(&b.t().to_owned(), &a).dot(&vectorize(&x));
        let diff: f64 = lhs.iter().zip(rhs.iter()).map(|(p, q)| (p - q).norm()).sum();
        assert!(diff < 1e-12, "diff = {diff}");
    }
}
