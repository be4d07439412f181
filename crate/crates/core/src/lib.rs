//! Lindbladian PT symmetry and critical exceptional points for dissipative
//! collective-spin models, at two levels of description:
//!
//! * **Finite size** ([`spinops`], [`liouville`]): collective-spin operators
//!   in the Dicke basis, the parity/PT transforms, dense Lindbladian
//!   superoperators, their spectra, gaps, steady states, and density-matrix
//!   evolution.
//! * **Mean field** ([`meanfield`], [`stability`]): the nonlinear flows on
//!   the Bloch sphere (and the bipartite polar lattice), n-PT symmetry
//!   checks, fixed points, reduced Jacobians, center/CEP classification, and
//!   phase diagrams (PT / PPTB / FPTB).
//!
//! Conventions that everything else hangs off:
//!
//! * Dissipator with the factor-2 normalization,
//!   D[L]ρ = 2LρL† − L†Lρ − ρL†L.
//! * Column-stacking vectorization, vec(AXB) = (Bᵀ ⊗ A) vec(X).
//! * Normalized spin operators m_α = S_α/S (Pauli matrices at S = 1/2).
//!
//! # Example: a PT-symmetric Lindbladian and its mean-field limit
//!
//! ```
//! use ptspin::spinops::{ddm_model, check_lpt_symmetry, SpinBasis};
//! use ptspin::meanfield::{MeanFieldModel, npt_residual};
//!
//! // Finite size: the driven Dicke model is L-PT symmetric...
//! let model = ddm_model(SpinBasis::from_spin(5)?, 2.0, 1.0, 1.0)?;
//! let check = check_lpt_symmetry(&model, 1e-12)?;
//! assert!(check.symmetric);
//!
//! // ...and its mean-field flow has the matching n-PT symmetry.
//! let mf = MeanFieldModel::Ddm { g: 2.0, omega: 1.0, kappa: 1.0 };
//! let q = [0.6, 0.48, 0.64];
//! assert!(npt_residual(&mf, &q)? < 1e-12);
//! # Ok::<(), ptspin::error::Error>(())
//! ```
//!
//! # Example: phases and the critical exceptional points
//!
//! ```
//! use ptspin::meanfield::MeanFieldModel;
//! use ptspin::stability::{find_phase_boundaries, phase_classify, CepFlag, PhaseLabel};
//!
//! let ddm = |kappa| MeanFieldModel::Ddm { g: 2.0, omega: 1.0, kappa };
//! assert_eq!(phase_classify(&ddm(1.0))?.phase, PhaseLabel::Pt);
//! assert_eq!(phase_classify(&ddm(2.5))?.phase, PhaseLabel::Fptb);
//!
//! let bounds = find_phase_boundaries(ddm, 1.0, 2.5, 31, 1e-12, &Default::default())?;
//! assert_eq!(bounds.len(), 2);
//! assert!((bounds[0].param - 3.0_f64.sqrt()).abs() < 0.01);
//! assert!((bounds[1].param - 2.0).abs() < 0.01);
//! // both transitions happen at critical exceptional points
//! assert!(bounds.iter().all(|b| b.cep.unwrap().flag == CepFlag::Cep));
//! # Ok::<(), ptspin::error::Error>(())
//! ```

pub mod error;
pub mod liouville;
pub mod matrix;
pub mod meanfield;
pub mod rk;
pub mod spinops;
pub mod stability;

pub use error::{Error, Result};

// Compile and run every Rust snippet in the guide as a doc-test, so the book
// can never drift away from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/lindbladians.md")]
    mod lindbladians {}
    #[doc = include_str!("../../../book/src/meanfield.md")]
    mod meanfield {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
}
