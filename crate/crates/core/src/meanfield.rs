//! Mean-field vector fields, adaptive integration with conservation monitors,
//! numeric n-PT symmetry checks, and the Schwinger-boson coordinate map.
//!
//! All shipped flows are real and three-dimensional. Spin models live on the
//! unit Bloch sphere with parity P̃ = diag(1,1,−1); the bipartite lattice
//! model lives in polar coordinates (r_A, r_B, Δθ) on r_A²+r_B² = 1 with
//! parity swapping the sublattices (Δθ unchanged).

use crate::error::{Error, Result};
use crate::rk::{self, Tolerances};

/// How far a conserved quantity may drift before [`integrate`] aborts. The
/// integrator's own accuracy target is three orders tighter (< 1e-9 over
/// t = 100 at default tolerances); crossing this line means the model or the
/// initial state is broken, not merely imprecise.
pub const DRIFT_ABORT: f64 = 1e-6;

/// Generalized driven Dicke model, Bloch coordinates (m_x, m_y, m_z).
pub fn ddm_rhs(m: &[f64; 3], g: f64, omega: f64, kappa: f64) -> [f64; 3] {
    let [mx, my, mz] = *m;
    [
        2.0 * (-omega * my * mz + kappa * mx * mz),
        2.0 * (omega * mx * mz - g * mz + kappa * my * mz),
        2.0 * (g * my - kappa * (1.0 - mz * mz)),
    ]
}

/// Dissipative LMG model.
pub fn lmg_rhs(m: &[f64; 3], g: f64, kappa: f64) -> [f64; 3] {
    let [mx, my, mz] = *m;
    [
        2.0 * (-g * my * mz + kappa * mx * mz),
        2.0 * (-g * mx * mz + kappa * my * mz),
        2.0 * (2.0 * g * mx * my - kappa * (mx * mx + my * my)),
    ]
}

/// Waveguide-emitter model; the effective decay ratio is κ = 2ω + 1.
pub fn waveguide_rhs(m: &[f64; 3], g: f64, omega: f64, gamma: f64) -> [f64; 3] {
    let [mx, my, mz] = *m;
    let kappa = 2.0 * omega + 1.0;
    [
        2.0 * gamma * mx * mz,
        2.0 * (-g * mz + gamma * kappa * my * mz),
        2.0 * (g * my - gamma * mx * mx - gamma * kappa * my * my),
    ]
}

/// Bipartite boson lattice in polar coordinates (r_A, r_B, Δθ); `d` is the
/// lattice dimension (each site has 2d neighbors on the other sublattice).
pub fn lattice_rhs(q: &[f64; 3], g: f64, omega: f64, kappa: f64, d: u32) -> Result<[f64; 3]> {
    let [ra, rb, dtheta] = *q;
    if ra.abs() < 1e-12 {
        return Err(Error::PolarSingularity(ra.abs()));
    }
    if rb.abs() < 1e-12 {
        return Err(Error::PolarSingularity(rb.abs()));
    }
    let twod = 2.0 * d as f64;
    let (sin, cos) = dtheta.sin_cos();
    Ok([
        -twod * (kappa * ra * rb * rb + g * rb * sin),
        twod * (kappa * ra * ra * rb + g * ra * sin),
        -twod * (g * (rb / ra - ra / rb) * cos + omega * (ra * ra - rb * rb)),
    ])
}

/// A registered mean-field model with fixed parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanFieldModel {
    Ddm { g: f64, omega: f64, kappa: f64 },
    Lmg { g: f64, kappa: f64 },
    Waveguide { g: f64, omega: f64, gamma: f64 },
    Lattice { g: f64, omega: f64, kappa: f64, d: u32 },
    /// DDM with an explicit n-PT-violating term +ε·(0,0,m_z); a negative
    /// control for symmetry checks.
    DdmBroken { g: f64, omega: f64, kappa: f64, epsilon: f64 },
}

impl MeanFieldModel {
    pub fn name(&self) -> &'static str {
        match self {
            MeanFieldModel::Ddm { .. } => "ddm",
            MeanFieldModel::Lmg { .. } => "lmg",
            MeanFieldModel::Waveguide { .. } => "waveguide",
            MeanFieldModel::Lattice { .. } => "lattice",
            MeanFieldModel::DdmBroken { .. } => "ddm-broken",
        }
    }

    pub fn dim(&self) -> usize {
        3
    }

    pub fn is_polar(&self) -> bool {
        matches!(self, MeanFieldModel::Lattice { .. })
    }

    pub fn rhs(&self, q: &[f64], dq: &mut [f64]) -> Result<()> {
        let q3: &[f64; 3] = q.try_into().map_err(|_| {
            Error::DimensionMismatch(format!("state has length {}, expected 3", q.len()))
        })?;
        let out = match *self {
            MeanFieldModel::Ddm { g, omega, kappa } => ddm_rhs(q3, g, omega, kappa),
            MeanFieldModel::Lmg { g, kappa } => lmg_rhs(q3, g, kappa),
            MeanFieldModel::Waveguide { g, omega, gamma } => waveguide_rhs(q3, g, omega, gamma),
            MeanFieldModel::Lattice { g, omega, kappa, d } => lattice_rhs(q3, g, omega, kappa, d)?,
            MeanFieldModel::DdmBroken { g, omega, kappa, epsilon } => {
                let mut v = ddm_rhs(q3, g, omega, kappa);
                v[2] += epsilon * q3[2];
                v
            }
        };
        dq.copy_from_slice(&out);
        Ok(())
    }

    /// Apply the parity P̃: diag(1,1,−1) for spin models, the sublattice swap
    /// r_A ↔ r_B (Δθ fixed) for the lattice model. P̃² = I exactly.
    pub fn apply_parity(&self, q: &[f64; 3]) -> [f64; 3] {
        if self.is_polar() {
            [q[1], q[0], q[2]]
        } else {
            [q[0], q[1], -q[2]]
        }
    }

    pub fn conserved_name(&self) -> &'static str {
        if self.is_polar() {
            "r_A^2 + r_B^2"
        } else {
            "|m|^2"
        }
    }

    /// The conserved scalar: |m|² on the sphere, r_A² + r_B² in polar form.
    /// Both equal 1 on the physical manifold.
    pub fn conserved(&self, q: &[f64; 3]) -> f64 {
        if self.is_polar() {
            q[0] * q[0] + q[1] * q[1]
        } else {
            q[0] * q[0] + q[1] * q[1] + q[2] * q[2]
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<[f64; 3]>,
    /// max_t |conserved(q(t)) − conserved(q0)| over the sampled points.
    pub max_conserved_drift: f64,
}

impl Trajectory {
    pub fn last(&self) -> &[f64; 3] {
        self.states.last().expect("trajectory always holds the initial state")
    }
}

/// Integrate the flow from `q0` to `t_end`, sampling every `stride`.
/// Conservation is monitored, never projected: the drift is a genuine
/// accuracy diagnostic, and drift beyond [`DRIFT_ABORT`] is an error.
pub fn integrate(
    model: &MeanFieldModel,
    q0: &[f64; 3],
    t_end: f64,
    tol: &Tolerances,
    stride: f64,
) -> Result<Trajectory> {
    let c0 = model.conserved(q0);
    if (c0 - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidState(format!(
            "initial state violates {} = 1 by {:.3e}",
            model.conserved_name(),
            (c0 - 1.0).abs()
        )));
    }
    let (times, raw) = rk::integrate_adaptive(
        |_t, y, dy| model.rhs(y, dy),
        0.0,
        q0,
        t_end,
        tol,
        stride,
        |_| {},
    )?;
    let states: Vec<[f64; 3]> = raw
        .iter()
        .map(|y| [y[0], y[1], y[2]])
        .collect();
    let mut max_drift: f64 = 0.0;
    for q in &states {
        max_drift = max_drift.max((model.conserved(q) - c0).abs());
    }
    if max_drift > DRIFT_ABORT {
        return Err(Error::ConservationDrift {
            name: model.conserved_name().into(),
            drift: max_drift,
        });
    }
    Ok(Trajectory { times, states, max_conserved_drift: max_drift })
}

/// n-PT residual ‖P̃ f(q) + f(P̃ q)‖ at a single state. Zero (to round-off)
/// for every shipped model; the time reversal of the symmetry shows up as
/// the plus sign (the derivative flips under t → −t).
pub fn npt_residual(model: &MeanFieldModel, q: &[f64; 3]) -> Result<f64> {
    let mut fq = [0.0; 3];
    model.rhs(q, &mut fq)?;
    let pq = model.apply_parity(q);
    let mut fpq = [0.0; 3];
    model.rhs(&pq, &mut fpq)?;
    let pfq = model.apply_parity(&fq);
    let mut acc = 0.0;
    for i in 0..3 {
        let v = pfq[i] + fpq[i];
        acc += v * v;
    }
    Ok(acc.sqrt())
}

#[derive(Debug, Clone)]
pub struct PtConjugateCheck {
    pub forward: Trajectory,
    /// P̃-image of the late-time (t ≥ t_end/2) forward segment: the
    /// PT-conjugate solution reparametrized onto forward time.
    pub mapped: Trajectory,
    /// Symmetric (Hausdorff) point-set distance between the late-time
    /// forward segment and its PT conjugate.
    pub attractor_distance: f64,
}

/// Compare the long-time attractor with its PT conjugate.
///
/// By n-PT symmetry, t ↦ P̃ q(−t + t₀) is again a solution; the set it traces
/// is the P̃-image of the forward orbit. In the PT phase the attractor is
/// P̃-invariant and the distance vanishes; in the broken phase the stable
/// fixed point maps to its unstable partner and the distance is O(1).
///
/// Note: literally re-integrating the time-reversed field −P̃ f(P̃ ·) from
/// P̃ q0 reproduces the forward trajectory identically (that is exactly what
/// the symmetry asserts), so it cannot distinguish the phases; the point-set
/// comparison below is the meaningful test.
pub fn pt_conjugate_trajectory(
    model: &MeanFieldModel,
    q0: &[f64; 3],
    t_end: f64,
    tol: &Tolerances,
    stride: f64,
) -> Result<PtConjugateCheck> {
    let forward = integrate(model, q0, t_end, tol, stride)?;
    let half = t_end / 2.0;
    let mut late_times = Vec::new();
    let mut late_states = Vec::new();
    let mut mapped_states = Vec::new();
    for (t, q) in forward.times.iter().zip(forward.states.iter()) {
        if *t >= half {
            late_times.push(*t);
            late_states.push(*q);
            mapped_states.push(model.apply_parity(q));
        }
    }
    let attractor_distance = hausdorff(&late_states, &mapped_states);
    let mapped = Trajectory {
        times: late_times,
        states: mapped_states,
        max_conserved_drift: forward.max_conserved_drift,
    };
    Ok(PtConjugateCheck { forward, mapped, attractor_distance })
}

/// Symmetric Hausdorff distance between two sampled curves, measuring each
/// point against the other curve's polyline (not just its samples) so the
/// result is not dominated by the sampling stride.
fn hausdorff(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    let point_to_segment = |p: &[f64; 3], s0: &[f64; 3], s1: &[f64; 3]| -> f64 {
        let d = [s1[0] - s0[0], s1[1] - s0[1], s1[2] - s0[2]];
        let w = [p[0] - s0[0], p[1] - s0[1], p[2] - s0[2]];
        let len2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        let t = if len2 > 0.0 {
            ((w[0] * d[0] + w[1] * d[1] + w[2] * d[2]) / len2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        ((w[0] - t * d[0]).powi(2) + (w[1] - t * d[1]).powi(2) + (w[2] - t * d[2]).powi(2)).sqrt()
    };
    let one_sided = |from: &[[f64; 3]], to: &[[f64; 3]]| -> f64 {
        from.iter()
            .map(|p| {
                if to.len() == 1 {
                    return point_to_segment(p, &to[0], &to[0]);
                }
                to.windows(2)
                    .map(|seg| point_to_segment(p, &seg[0], &seg[1]))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarState {
    pub r_a: f64,
    pub r_b: f64,
    pub dtheta: f64,
}

/// Schwinger-boson coordinates of a unit Bloch vector:
/// m_z = r_A² − r_B², m_x = 2 r_A r_B cos Δθ, m_y = −2 r_A r_B sin Δθ.
/// At the poles m = (0,0,±1) the phase Δθ is undefined; it is returned as 0
/// with the degeneracy flag set.
pub fn schwinger_map(m: &[f64; 3]) -> Result<(PolarState, bool)> {
    let norm2 = m[0] * m[0] + m[1] * m[1] + m[2] * m[2];
    if (norm2 - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidState(format!(
            "schwinger_map needs |m| = 1, got |m|² = {norm2}"
        )));
    }
    let r_a = ((1.0 + m[2]) / 2.0).max(0.0).sqrt();
    let r_b = ((1.0 - m[2]) / 2.0).max(0.0).sqrt();
    let transverse = 2.0 * r_a * r_b;
    if transverse < 1e-12 {
        return Ok((PolarState { r_a, r_b, dtheta: 0.0 }, true));
    }
    let dtheta = (-m[1]).atan2(m[0]);
    Ok((PolarState { r_a, r_b, dtheta }, false))
}

pub fn schwinger_inverse(q: &PolarState) -> [f64; 3] {
    let t = 2.0 * q.r_a * q.r_b;
    [t * q.dtheta.cos(), -t * q.dtheta.sin(), q.r_a * q.r_a - q.r_b * q.r_b]
}

/// Push a Bloch-space velocity through the Schwinger map: given m on the
/// sphere (away from the poles) and ṁ tangent to it, return (ṙ_A, ṙ_B, Δθ̇).
pub fn polar_pushforward(m: &[f64; 3], mdot: &[f64; 3]) -> Result<[f64; 3]> {
    let (q, degenerate) = schwinger_map(m)?;
    if degenerate {
        return Err(Error::PolarSingularity(2.0 * q.r_a * q.r_b));
    }
    let transverse2 = m[0] * m[0] + m[1] * m[1];
    Ok([
        mdot[2] / (4.0 * q.r_a),
        -mdot[2] / (4.0 * q.r_b),
        (m[1] * mdot[0] - m[0] * mdot[1]) / transverse2,
    ])
}
