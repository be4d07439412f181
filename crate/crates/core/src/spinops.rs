//! Collective-spin operators in the Dicke basis, parity, and PT symmetry.
//!
//! The basis is |S, m⟩ with m running from +S down to −S, so row/column 0 is
//! the maximally polarized state. Operators are the *normalized* collective
//! spins m_α = S_α / S, which makes the mean-field limit live on the unit
//! sphere and reduces to Pauli matrices at S = 1/2.
//!
//! The antiunitary T is entrywise complex conjugation in this fixed basis, so
//! PT(O) = P T O† (PT)⁻¹ collapses to P · Oᵀ · P (P is real with P² = I).

use ndarray::Array2;
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{self, CMatrix, ONE, ZERO};

/// Spin size stored as the integer 2S, so half-integer spins are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinBasis {
    twice_spin: u32,
}

impl SpinBasis {
    pub fn new(twice_spin: u32) -> Result<Self> {
        if twice_spin == 0 {
            return Err(Error::InvalidInput("spin must be at least 1/2".into()));
        }
        Ok(SpinBasis { twice_spin })
    }

    /// Basis from an integer spin quantum number S.
    pub fn from_spin(s: u32) -> Result<Self> {
        SpinBasis::new(2 * s)
    }

    pub fn twice_spin(&self) -> u32 {
        self.twice_spin
    }

    /// S as a float.
    pub fn spin(&self) -> f64 {
        self.twice_spin as f64 / 2.0
    }

    /// Hilbert-space dimension 2S + 1.
    pub fn dim(&self) -> usize {
        self.twice_spin as usize + 1
    }

    /// m value of basis index i (m = S, S−1, ..., −S).
    fn m_of(&self, i: usize) -> f64 {
        self.spin() - i as f64
    }
}

/// The normalized operator set m_α = S_α / S.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub m_x: CMatrix,
    pub m_y: CMatrix,
    pub m_z: CMatrix,
    pub m_plus: CMatrix,
    pub m_minus: CMatrix,
}

pub fn build_spin_operators(basis: SpinBasis) -> SpinOperators {
    let d = basis.dim();
    let s = basis.spin();

    let mut m_z = Array2::from_elem((d, d), ZERO);
    for i in 0..d {
        m_z[(i, i)] = Complex64::new(basis.m_of(i) / s, 0.0);
    }

    // S_+|S,m⟩ = √(S(S+1) − m(m+1)) |S,m+1⟩; |S,m+1⟩ sits one row above.
    let mut m_plus = Array2::from_elem((d, d), ZERO);
    for col in 1..d {
        let m = basis.m_of(col);
        let amp = (s * (s + 1.0) - m * (m + 1.0)).sqrt();
        m_plus[(col - 1, col)] = Complex64::new(amp / s, 0.0);
    }
    let m_minus = matrix::dagger(&m_plus);

    let m_x = (&m_plus + &m_minus).mapv(|z| z * 0.5);
    let m_y = (&m_plus - &m_minus).mapv(|z| z * Complex64::new(0.0, -0.5));

    SpinOperators { m_x, m_y, m_z, m_plus, m_minus }
}

/// Parity P = i^{2S} exp(iπ S_x): the π rotation about x, phased so that
/// P² = I and P is real-symmetric in the Dicke basis.
pub fn build_parity(basis: SpinBasis) -> CMatrix {
    let ops = build_spin_operators(basis);
    let s_x = ops.m_x.mapv(|z| z * basis.spin());
    let (evals, evecs) = s_x
        .eigh(UPLO::Lower)
        .expect("S_x is Hermitian by construction; eigh cannot fail");

    // exp(iπ S_x) = V diag(e^{iπλ}) V†, then the i^{2S} phase.
    let phase = match basis.twice_spin % 4 {
        0 => ONE,
        1 => matrix::I,
        2 => -ONE,
        _ => -matrix::I,
    };
    let d = basis.dim();
    let mut rot = Array2::from_elem((d, d), ZERO);
    for (k, lam) in evals.iter().enumerate() {
        let w = phase * Complex64::new(0.0, std::f64::consts::PI * lam).exp();
        let v = evecs.column(k);
        for r in 0..d {
            for c in 0..d {
                rot[(r, c)] += w * v[r] * v[c].conj();
            }
        }
    }

    // Hard-symmetrize: P is exactly Hermitian and (in this basis) real, so
    // scrub the numerical dust from the eigendecomposition.
    let mut p = (&rot + &matrix::dagger(&rot)).mapv(|z| z * 0.5);
    let im_norm = p.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
    if im_norm < 1e-10 {
        p.mapv_inplace(|z| Complex64::new(z.re, 0.0));
    }
    p
}

/// PT(O) = P · Oᵀ · P, using P⁻¹ = P and T = entrywise conjugation.
pub fn pt_transform(o: &CMatrix, p: &CMatrix) -> Result<CMatrix> {
    matrix::check_same_dim(o, p, "pt_transform")?;
    Ok(p.dot(&o.t().to_owned()).dot(p))
}

/// A finite-S Lindbladian: Hamiltonian plus jump operators on a shared basis.
#[derive(Debug, Clone)]
pub struct SpinModel {
    pub basis: SpinBasis,
    pub hamiltonian: CMatrix,
    pub jumps: Vec<CMatrix>,
    pub label: String,
}

impl SpinModel {
    pub fn new(
        basis: SpinBasis,
        hamiltonian: CMatrix,
        jumps: Vec<CMatrix>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let d = basis.dim();
        let n = matrix::check_square(&hamiltonian, "hamiltonian")?;
        if n != d {
            return Err(Error::DimensionMismatch(format!(
                "hamiltonian dim {n} does not match basis dim {d}"
            )));
        }
        let defect = matrix::hermiticity_defect(&hamiltonian);
        if defect > 1e-12 {
            return Err(Error::NonHermitian { deviation: defect });
        }
        for (k, l) in jumps.iter().enumerate() {
            let n = matrix::check_square(l, "jump operator")?;
            if n != d {
                return Err(Error::DimensionMismatch(format!(
                    "jump operator {k} dim {n} does not match basis dim {d}"
                )));
            }
        }
        if !matrix::all_finite(&hamiltonian) || jumps.iter().any(|l| !matrix::all_finite(l)) {
            return Err(Error::InvalidState("model matrices contain non-finite entries".into()));
        }
        Ok(SpinModel { basis, hamiltonian, jumps, label: label.into() })
    }

    /// Add a jump operator (e.g. an unwanted-dissipation channel √rate · m_α).
    pub fn with_jump(mut self, jump: CMatrix) -> Result<Self> {
        let n = matrix::check_square(&jump, "jump operator")?;
        if n != self.basis.dim() {
            return Err(Error::DimensionMismatch(format!(
                "jump operator dim {n} does not match basis dim {}",
                self.basis.dim()
            )));
        }
        self.jumps.push(jump);
        Ok(self)
    }
}

fn scaled(m: &CMatrix, factor: f64) -> CMatrix {
    m.mapv(|z| z * factor)
}

/// Generalized driven Dicke model: H = S(2g·m_x + ω·m_z²), L = √(κS)·m_−.
pub fn ddm_model(basis: SpinBasis, g: f64, omega: f64, kappa: f64) -> Result<SpinModel> {
    let s = basis.spin();
    let ops = build_spin_operators(basis);
    let h = scaled(&ops.m_x, 2.0 * g * s) + scaled(&ops.m_z.dot(&ops.m_z), omega * s);
    let l = scaled(&ops.m_minus, (kappa * s).sqrt());
    SpinModel::new(basis, h, vec![l], "ddm")
}

/// Dissipative LMG model: H = (gS/2)(m_+² + m_−²), L = √(κS)·m_−.
pub fn lmg_model(basis: SpinBasis, g: f64, kappa: f64) -> Result<SpinModel> {
    let s = basis.spin();
    let ops = build_spin_operators(basis);
    let h = scaled(
        &(ops.m_plus.dot(&ops.m_plus) + ops.m_minus.dot(&ops.m_minus)),
        0.5 * g * s,
    );
    let l = scaled(&ops.m_minus, (kappa * s).sqrt());
    SpinModel::new(basis, h, vec![l], "lmg")
}

/// Waveguide-emitter model: H = S(2g·m_x − ωγ{m_x, m_y}), with the two jump
/// channels L₁ = √(γS/2)((2ω+1)m_x − i·m_y) and L₂ = √(γS/2)·m_−.
pub fn waveguide_model(basis: SpinBasis, g: f64, omega: f64, gamma: f64) -> Result<SpinModel> {
    let s = basis.spin();
    let ops = build_spin_operators(basis);
    let h = scaled(&ops.m_x, 2.0 * g * s)
        - scaled(&matrix::anticommutator(&ops.m_x, &ops.m_y), omega * gamma * s);
    let amp = (gamma * s / 2.0).sqrt();
    let l1 = (scaled(&ops.m_x, 2.0 * omega + 1.0)
        - ops.m_y.mapv(|z| z * matrix::I))
    .mapv(|z| z * amp);
    let l2 = scaled(&ops.m_minus, amp);
    SpinModel::new(basis, h, vec![l1, l2], "waveguide")
}

#[derive(Debug, Clone, Copy)]
pub struct LptCheck {
    pub residual: f64,
    pub symmetric: bool,
}

/// Check L-PT symmetry at the superoperator level: build the Lindbladian for
/// {PT(H); PT(L_μ)} and for {H; L_μ} and compare. Summing the dissipators
/// over μ makes any allowed permutation of the jump set irrelevant.
pub fn check_lpt_symmetry(model: &SpinModel, tol: f64) -> Result<LptCheck> {
    if model.basis.twice_spin() > 120 {
        return Err(Error::DenseLimit {
            dim: model.basis.dim() * model.basis.dim(),
            limit: 121 * 121,
        });
    }
    let p = build_parity(model.basis);
    let h_pt = pt_transform(&model.hamiltonian, &p)?;
    let jumps_pt = model
        .jumps
        .iter()
        .map(|l| pt_transform(l, &p))
        .collect::<Result<Vec<_>>>()?;
    let transformed = SpinModel::new(model.basis, h_pt, jumps_pt, model.label.clone())?;

    let sup = crate::liouville::build_liouvillian(model)?;
    let sup_pt = crate::liouville::build_liouvillian(&transformed)?;
    let norm = matrix::fro_norm(&sup.matrix);
    let residual = matrix::fro_norm(&(&sup_pt.matrix - &sup.matrix)) / norm.max(1e-300);
    Ok(LptCheck { residual, symmetric: residual < tol })
}
