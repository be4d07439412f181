//! Vectorized Lindbladian superoperators: spectrum, gap, steady state, and
//! density-matrix evolution.
//!
//! Dissipator convention (factor 2, no 1/2): D[L]ρ = 2LρL† − L†Lρ − ρL†L.
//! With this normalization the decay-rate formulas quoted elsewhere in the
//! crate (e.g. the gap 2κ|⟨m_z⟩| in the fully broken phase) hold without
//! rescaling. Vectorization is column-stacking throughout, so
//! vec(AXB) = (Bᵀ ⊗ A) vec(X).

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, EigValsh, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{self, CMatrix, CVector, I, ONE, ZERO};
use crate::rk::{self, Tolerances};
use crate::spinops::{SpinBasis, SpinModel};

/// Default cap on the superoperator dimension d² (d = 2S+1): S ≤ 49.
pub const DENSE_LIMIT: usize = 10_000;

#[derive(Debug, Clone)]
pub struct Superoperator {
    /// d²×d² matrix acting on column-stacked vec(ρ).
    pub matrix: CMatrix,
    pub basis: SpinBasis,
}

#[derive(Debug, Clone)]
pub struct SpectralSummary {
    /// All eigenvalues, sorted by descending real part.
    pub eigenvalues: Vec<Complex64>,
    /// |Re λ| of the slowest-decaying eigenvalue with |λ| > λ_tol.
    pub gap: f64,
    /// Number of eigenvalues with |λ| < λ_tol.
    pub steady_count: usize,
}

#[derive(Debug, Clone)]
pub struct SteadyState {
    pub rho: CMatrix,
    /// Set when more than one eigenvalue fell below λ_tol; the returned ρ is
    /// the one closest to zero.
    pub degenerate: bool,
}

#[derive(Debug, Clone)]
pub struct DensityTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<CMatrix>,
}

pub fn build_liouvillian(model: &SpinModel) -> Result<Superoperator> {
    build_liouvillian_with_limit(model, DENSE_LIMIT)
}

pub fn build_liouvillian_with_limit(model: &SpinModel, limit: usize) -> Result<Superoperator> {
    let d = model.basis.dim();
    let dim = d * d;
    if dim > limit {
        return Err(Error::DenseLimit { dim, limit });
    }

    let eye = matrix::identity(d);
    let h = &model.hamiltonian;
    // −i (I⊗H − Hᵀ⊗I)
    let mut sup = (matrix::kron(&eye, h) - matrix::kron(&h.t().to_owned(), &eye))
        .mapv(|z| z * (-I));
    for l in &model.jumps {
        let ld = matrix::dagger(l);
        let ldl = ld.dot(l);
        let lconj = l.mapv(|z| z.conj());
        sup = sup + matrix::kron(&lconj, l).mapv(|z| z * 2.0)
            - matrix::kron(&eye, &ldl)
            - matrix::kron(&ldl.t().to_owned(), &eye);
    }

    let sup = Superoperator { matrix: sup, basis: model.basis };
    let tp = trace_preservation_defect(&sup);
    debug_assert!(tp < 1e-10, "trace-preservation defect {tp}");
    Ok(sup)
}

/// ‖vec(I)† · L̂‖ / ‖L̂‖: zero for any GKSL generator.
pub fn trace_preservation_defect(sup: &Superoperator) -> f64 {
    let d = sup.basis.dim();
    let left = matrix::vectorize(&matrix::identity(d));
    let mut acc = Array1::from_elem(d * d, ZERO);
    for (r, z) in left.iter().enumerate() {
        let w = z.conj();
        for c in 0..d * d {
            acc[c] += w * sup.matrix[(r, c)];
        }
    }
    matrix::vec_norm(&acc) / matrix::fro_norm(&sup.matrix).max(1e-300)
}

pub fn spectrum(sup: &Superoperator, lambda_tol: f64) -> Result<SpectralSummary> {
    let (vals, _) = sup
        .matrix
        .eig()
        .map_err(|e| Error::Eigensolver(format!("superoperator eig: {e}")))?;
    let mut eigenvalues: Vec<Complex64> = vals.to_vec();
    if eigenvalues.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Eigensolver("non-finite eigenvalue".into()));
    }
    eigenvalues.sort_by(|a, b| b.re.partial_cmp(&a.re).unwrap());
    let steady_count = eigenvalues.iter().filter(|z| z.norm() < lambda_tol).count();
    let gap = eigenvalues
        .iter()
        .filter(|z| z.norm() > lambda_tol)
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max)
        .abs();
    Ok(SpectralSummary { eigenvalues, gap, steady_count })
}

/// Default λ_tol: 1e-8 relative to ‖L̂‖.
pub fn default_lambda_tol(sup: &Superoperator) -> f64 {
    1e-8 * matrix::fro_norm(&sup.matrix)
}

pub fn steady_state(sup: &Superoperator, lambda_tol: f64) -> Result<SteadyState> {
    let (vals, vecs) = sup
        .matrix
        .eig()
        .map_err(|e| Error::Eigensolver(format!("superoperator eig: {e}")))?;
    let mut null: Vec<(f64, usize)> = vals
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() < lambda_tol)
        .map(|(k, z)| (z.norm(), k))
        .collect();
    if null.is_empty() {
        return Err(Error::NoSteadyState(lambda_tol));
    }
    null.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let degenerate = null.len() > 1;

    let d = sup.basis.dim();
    let v: CVector = vecs.column(null[0].1).to_owned();
    let raw = matrix::unvectorize(&v, d)?;
    let mut rho = (&raw + &matrix::dagger(&raw)).mapv(|z| z * 0.5);
    let tr = matrix::trace(&rho);
    if tr.norm() < 1e-14 {
        return Err(Error::InvalidState("null eigenvector has zero trace".into()));
    }
    rho.mapv_inplace(|z| z / tr);

    let evals = rho
        .eigvalsh(UPLO::Lower)
        .map_err(|e| Error::Eigensolver(format!("steady-state eigvalsh: {e}")))?;
    let min = evals.iter().cloned().fold(f64::INFINITY, f64::min);
    if min < -1e-8 {
        return Err(Error::InvalidState(format!(
            "steady state not positive semidefinite: min eigenvalue {min:.3e}"
        )));
    }
    Ok(SteadyState { rho, degenerate })
}

/// tr(Oρ).
pub fn expectation(rho: &CMatrix, o: &CMatrix) -> Result<Complex64> {
    matrix::check_same_dim(rho, o, "expectation")?;
    Ok(matrix::trace(&o.dot(rho)))
}

fn pack(rho: &CMatrix, out: &mut [f64]) {
    let n = rho.len();
    for (k, z) in rho.iter().enumerate() {
        out[k] = z.re;
        out[n + k] = z.im;
    }
}

fn unpack(y: &[f64], d: usize) -> CMatrix {
    let n = d * d;
    Array2::from_shape_fn((d, d), |(r, c)| {
        let k = r * d + c;
        Complex64::new(y[k], y[n + k])
    })
}

/// Integrate ∂_t ρ = 𝓛ρ in operator form (matrix products, never the d²×d²
/// superoperator), sampling every `stride`. Hermiticity is enforced by
/// symmetrization on each accepted step; trace drift beyond 1e-8 aborts.
pub fn evolve_density(
    model: &SpinModel,
    rho0: &CMatrix,
    t_end: f64,
    tol: &Tolerances,
    stride: f64,
) -> Result<DensityTrajectory> {
    let d = model.basis.dim();
    let n = matrix::check_square(rho0, "rho0")?;
    if n != d {
        return Err(Error::DimensionMismatch(format!(
            "rho0 dim {n} does not match basis dim {d}"
        )));
    }
    if matrix::hermiticity_defect(rho0) > 1e-10 {
        return Err(Error::InvalidState("rho0 is not Hermitian".into()));
    }
    if (matrix::trace(rho0) - ONE).norm() > 1e-10 {
        return Err(Error::InvalidState("rho0 does not have unit trace".into()));
    }
    let evals = rho0
        .eigvalsh(UPLO::Lower)
        .map_err(|e| Error::Eigensolver(format!("rho0 eigvalsh: {e}")))?;
    if evals.iter().cloned().fold(f64::INFINITY, f64::min) < -1e-10 {
        return Err(Error::InvalidState("rho0 is not positive semidefinite".into()));
    }

    let h = model.hamiltonian.clone();
    let jumps: Vec<(CMatrix, CMatrix, CMatrix)> = model
        .jumps
        .iter()
        .map(|l| {
            let ld = matrix::dagger(l);
            let ldl = ld.dot(l);
            (l.clone(), ld, ldl)
        })
        .collect();

    let rhs = move |_t: f64, y: &[f64], dy: &mut [f64]| -> crate::error::Result<()> {
        let rho = unpack(y, d);
        let mut drho = matrix::commutator(&h, &rho).mapv(|z| z * (-I));
        for (l, ld, ldl) in &jumps {
            drho = drho + l.dot(&rho).dot(ld).mapv(|z| z * 2.0)
                - ldl.dot(&rho)
                - rho.dot(ldl);
        }
        pack(&drho, dy);
        Ok(())
    };

    let hermitize = |y: &mut [f64]| {
        let n = d * d;
        for r in 0..d {
            for c in (r + 1)..d {
                let a = r * d + c;
                let b = c * d + r;
                let re = 0.5 * (y[a] + y[b]);
                let im = 0.5 * (y[n + a] - y[n + b]);
                y[a] = re;
                y[b] = re;
                y[n + a] = im;
                y[n + b] = -im;
            }
            y[n + r * d + r] = 0.0;
        }
    };

    let mut y0 = vec![0.0; 2 * d * d];
    pack(rho0, &mut y0);
    let (times, raw) = rk::integrate_adaptive(rhs, 0.0, &y0, t_end, tol, stride, hermitize)?;

    let states: Vec<CMatrix> = raw.iter().map(|y| unpack(y, d)).collect();
    for rho in &states {
        let drift = (matrix::trace(rho) - ONE).norm();
        if drift > 1e-8 {
            return Err(Error::ConservationDrift { name: "trace".into(), drift });
        }
    }
    Ok(DensityTrajectory { times, states })
}

/// Density matrix of the spin-coherent state polarized along +x,
/// |ψ⟩ = 2^{-S} Σ_m √C(2S, S−m) |S,m⟩.
pub fn coherent_x_density(basis: SpinBasis) -> CMatrix {
    let d = basis.dim();
    let two_s = basis.twice_spin() as usize;
    // ln C(2S, k) via ln Γ to stay finite at large S.
    let ln_choose = |k: usize| -> f64 {
        ln_factorial(two_s) - ln_factorial(k) - ln_factorial(two_s - k)
    };
    let mut psi = Array1::from_elem(d, ZERO);
    for i in 0..d {
        // basis index i has m = S − i, so S − m = i
        let amp = (0.5 * ln_choose(i) - two_s as f64 * 0.5 * std::f64::consts::LN_2).exp();
        psi[i] = Complex64::new(amp, 0.0);
    }
    let norm = matrix::vec_norm(&psi);
    psi.mapv_inplace(|z| z / norm);
    Array2::from_shape_fn((d, d), |(r, c)| psi[r] * psi[c].conj())
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}
