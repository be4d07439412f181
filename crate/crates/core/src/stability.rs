//! Fixed points, reduced Jacobians, stability classification, and critical
//! exceptional points of the mean-field flows.
//!
//! All shipped flows are constrained to a 2-sphere (or its polar image), so
//! linearization happens in a two-dimensional chart: spin models eliminate
//! m_x through the sphere constraint and work in the (m_y, m_z) plane, polar
//! models eliminate r_A. Around a PT-symmetric fixed point the reduced
//! Jacobian has zero diagonal, J = [[0, α], [β, 0]], with eigenvalues
//! λ = ±√(αβ): a center when αβ < 0, a saddle when αβ > 0, and a critical
//! exceptional point when exactly one of α, β crosses zero (the eigenmodes
//! coalesce onto a zero mode). When α and β vanish together there is no CEP;
//! that case is reported as degenerate.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::meanfield::{self, MeanFieldModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPointSource {
    ClosedForm,
    Newton,
}

#[derive(Debug, Clone)]
pub struct FixedPoint {
    pub coords: [f64; 3],
    pub residual: f64,
    /// coords = P̃·coords within 1e-9.
    pub pt_symmetric: bool,
    pub source: FixedPointSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Center,
    Stable,
    Unstable,
    Saddle,
    Degenerate,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Center => "center",
            Classification::Stable => "stable",
            Classification::Unstable => "unstable",
            Classification::Saddle => "saddle",
            Classification::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobianMethod {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CepFlag {
    /// Eigenvector coalescence onto a (near-)zero mode.
    Cep,
    /// α and β vanished simultaneously: no CEP at this transition.
    NoCepDegenerate,
    None,
}

#[derive(Debug, Clone, Copy)]
pub struct CepReport {
    /// |⟨v₁, v₂⟩| for unit eigenvectors; 1 means coalesced.
    pub metric: f64,
    pub max_abs_eigenvalue: f64,
    pub jacobian_norm: f64,
    pub flag: CepFlag,
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyConfig {
    /// Relative tolerance (to ‖J‖) separating zero from nonzero eigenvalue
    /// parts.
    pub rel_tol: f64,
    /// ‖J‖ below this is the α=β=0 degenerate case.
    pub degenerate_norm: f64,
    /// Eigenvector-overlap threshold for declaring coalescence.
    pub cep_threshold: f64,
    /// |λ| below this fraction of ‖J‖ counts as a zero mode.
    pub cep_eig_rel: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            rel_tol: 1e-7,
            degenerate_norm: 1e-6,
            cep_threshold: 0.999,
            cep_eig_rel: 0.05,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub jacobian: [[f64; 2]; 2],
    pub eigenvalues: [Complex64; 2],
    pub eigenvectors: [[Complex64; 2]; 2],
    pub classification: Classification,
    /// J₁₂ when the diagonal vanishes (PT-symmetric structure), else None.
    pub alpha: Option<f64>,
    /// J₂₁ under the same condition.
    pub beta: Option<f64>,
    pub cep: CepReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseLabel {
    Pt,
    Pptb,
    Fptb,
}

impl PhaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            PhaseLabel::Pt => "PT",
            PhaseLabel::Pptb => "PPTB",
            PhaseLabel::Fptb => "FPTB",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PhasePoint {
    pub phase: PhaseLabel,
    pub fixed_points: Vec<FixedPoint>,
}

// ---------------------------------------------------------------------------
// Fixed points
// ---------------------------------------------------------------------------

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn rhs_norm(model: &MeanFieldModel, q: &[f64; 3]) -> Result<f64> {
    let mut f = [0.0; 3];
    model.rhs(q, &mut f)?;
    Ok(norm3(&f))
}

fn closed_form_candidates(model: &MeanFieldModel) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    match *model {
        MeanFieldModel::Ddm { g, omega, kappa }
        | MeanFieldModel::DdmBroken { g, omega, kappa, .. } => {
            ddm_candidates(&mut out, g, omega, kappa);
        }
        MeanFieldModel::Lmg { g, kappa } => {
            let ratio = kappa / g;
            if ratio <= 1.0 {
                let disc = (1.0 - ratio * ratio).sqrt();
                let mp = ((1.0 + disc) / 2.0).sqrt();
                let mm = ((1.0 - disc) / 2.0).sqrt();
                out.push([mp, mm, 0.0]);
                out.push([-mp, -mm, 0.0]);
                out.push([mm, mp, 0.0]);
                out.push([-mm, -mp, 0.0]);
            }
            out.push([0.0, 0.0, 1.0]);
            out.push([0.0, 0.0, -1.0]);
        }
        MeanFieldModel::Waveguide { g, omega, gamma } => {
            // PT-symmetric: m_z = 0 with 2γω m_y² − g m_y + γ = 0.
            let mut roots = Vec::new();
            let a = 2.0 * gamma * omega;
            if a.abs() < 1e-14 {
                roots.push(gamma / g);
            } else {
                let disc = g * g - 4.0 * a * gamma;
                if disc >= 0.0 {
                    let sq = disc.sqrt();
                    roots.push((g - sq) / (2.0 * a));
                    roots.push((g + sq) / (2.0 * a));
                }
            }
            for my in roots {
                if my * my <= 1.0 {
                    let mx = (1.0 - my * my).sqrt();
                    out.push([mx, my, 0.0]);
                    out.push([-mx, my, 0.0]);
                }
            }
            // PT-broken: m_x = 0, m_y = g/(γκ) with κ = 2ω + 1.
            let kappa = 2.0 * omega + 1.0;
            let my = g / (gamma * kappa);
            if my * my <= 1.0 {
                let mz = (1.0 - my * my).sqrt();
                out.push([0.0, my, mz]);
                out.push([0.0, my, -mz]);
            }
        }
        MeanFieldModel::Lattice { g, omega, kappa, .. } => {
            // Fixed points coincide with those of the DDM at (g, ω/2, κ/2)
            // under the Schwinger map (the flows agree up to the positive
            // factor 2d).
            let mut bloch = Vec::new();
            ddm_candidates(&mut bloch, g, omega / 2.0, kappa / 2.0);
            for m in bloch {
                if let Ok((q, false)) = meanfield::schwinger_map(&m) {
                    out.push([q.r_a, q.r_b, q.dtheta]);
                }
            }
        }
    }
    out
}

fn ddm_candidates(out: &mut Vec<[f64; 3]>, g: f64, omega: f64, kappa: f64) {
    let ratio = kappa / g;
    if ratio <= 1.0 {
        let mx = (1.0 - ratio * ratio).sqrt();
        out.push([mx, ratio, 0.0]);
        out.push([-mx, ratio, 0.0]);
    }
    let d = kappa * kappa + omega * omega;
    if d >= g * g {
        let mz = (1.0 - g * g / d).sqrt();
        out.push([g * omega / d, g * kappa / d, mz]);
        out.push([g * omega / d, g * kappa / d, -mz]);
    }
}

fn newton_seeds(model: &MeanFieldModel) -> Vec<[f64; 3]> {
    if model.is_polar() {
        let mut seeds = Vec::with_capacity(12);
        for &rb in &[0.3f64, 0.5, 0.7, 0.9] {
            let ra = (1.0 - rb * rb).sqrt();
            for &dtheta in &[-2.0, 0.5, 2.0] {
                seeds.push([ra, rb, dtheta]);
            }
        }
        seeds
    } else {
        // 12-point Fibonacci lattice on the sphere.
        let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
        (0..12)
            .map(|k| {
                let z = 1.0 - 2.0 * (k as f64 + 0.5) / 12.0;
                let r = (1.0 - z * z).sqrt();
                let phi = golden * k as f64;
                [r * phi.cos(), r * phi.sin(), z]
            })
            .collect()
    }
}

/// Augmented residual (f(q), c(q) − 1) for the constrained Newton solve.
fn augmented(model: &MeanFieldModel, q: &[f64; 3]) -> Result<[f64; 4]> {
    let mut f = [0.0; 3];
    model.rhs(q, &mut f)?;
    Ok([f[0], f[1], f[2], model.conserved(q) - 1.0])
}

fn augmented_norm(r: &[f64; 4]) -> f64 {
    r.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Solve the 3×3 system M x = b by Cramer's rule (M is AᵀA, small and dense).
fn solve3(m: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let det = |a: &[[f64; 3]; 3]| -> f64 {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det(m);
    if d.abs() < 1e-300 {
        return None;
    }
    let mut x = [0.0; 3];
    for col in 0..3 {
        let mut mc = *m;
        for row in 0..3 {
            mc[row][col] = b[row];
        }
        x[col] = det(&mc) / d;
    }
    Some(x)
}

/// Damped Gauss–Newton on the augmented system; `None` when a seed fails to
/// converge (seeds are disposable, closed forms are not).
fn newton_refine(model: &MeanFieldModel, seed: &[f64; 3]) -> Option<[f64; 3]> {
    let mut q = *seed;
    let mut res = augmented(model, &q).ok()?;
    for _ in 0..50 {
        let rn = augmented_norm(&res);
        if rn < 1e-12 {
            return Some(q);
        }
        // 4×3 Jacobian of the augmented residual by central differences.
        let mut a = [[0.0; 3]; 4];
        for j in 0..3 {
            let h = 1e-7 * q[j].abs().max(1.0);
            let mut qp = q;
            qp[j] += h;
            let mut qm = q;
            qm[j] -= h;
            let rp = augmented(model, &qp).ok()?;
            let rm = augmented(model, &qm).ok()?;
            for i in 0..4 {
                a[i][j] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        // Normal equations AᵀA x = Aᵀr.
        let mut ata = [[0.0; 3]; 3];
        let mut atr = [0.0; 3];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] = (0..4).map(|k| a[k][i] * a[k][j]).sum();
            }
            atr[i] = (0..4).map(|k| a[k][i] * res[k]).sum();
        }
        let step = solve3(&ata, &atr)?;
        // Backtracking damping.
        let mut lambda = 1.0;
        let mut advanced = false;
        for _ in 0..10 {
            let trial = [q[0] - lambda * step[0], q[1] - lambda * step[1], q[2] - lambda * step[2]];
            if let Ok(tr) = augmented(model, &trial) {
                if augmented_norm(&tr) < rn {
                    q = trial;
                    res = tr;
                    advanced = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !advanced {
            return None;
        }
    }
    (augmented_norm(&res) < 1e-10).then_some(q)
}

fn is_pt_symmetric(model: &MeanFieldModel, q: &[f64; 3]) -> bool {
    let p = model.apply_parity(q);
    let d = ((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2) + (q[2] - p[2]).powi(2)).sqrt();
    d < 1e-9
}

fn canonicalize(model: &MeanFieldModel, q: &[f64; 3]) -> [f64; 3] {
    let mut q = *q;
    if model.is_polar() {
        // Δθ lives on the circle.
        q[2] = q[2].rem_euclid(2.0 * std::f64::consts::PI);
        if q[2] > std::f64::consts::PI {
            q[2] -= 2.0 * std::f64::consts::PI;
        }
    }
    q
}

/// Closed-form fixed points (where available) refined by a Newton sweep from
/// a 12-seed grid on the constraint manifold, deduplicated at distance 1e-6.
/// Closed-form candidates failing their residual check are a hard error;
/// non-converging Newton seeds are silently dropped.
pub fn find_fixed_points(model: &MeanFieldModel) -> Result<Vec<FixedPoint>> {
    let mut points: Vec<FixedPoint> = Vec::new();
    let mut push_unique = |fp: FixedPoint| {
        for existing in points.iter() {
            let d = ((existing.coords[0] - fp.coords[0]).powi(2)
                + (existing.coords[1] - fp.coords[1]).powi(2)
                + (existing.coords[2] - fp.coords[2]).powi(2))
            .sqrt();
            if d < 1e-6 {
                return; // closed forms are inserted first, so they win ties
            }
        }
        points.push(fp);
    };

    for cand in closed_form_candidates(model) {
        let cand = canonicalize(model, &cand);
        let residual = rhs_norm(model, &cand)?;
        if residual >= 1e-10 {
            return Err(Error::ClosedFormResidual(residual));
        }
        push_unique(FixedPoint {
            coords: cand,
            residual,
            pt_symmetric: is_pt_symmetric(model, &cand),
            source: FixedPointSource::ClosedForm,
        });
    }

    for seed in newton_seeds(model) {
        if let Some(q) = newton_refine(model, &seed) {
            let q = canonicalize(model, &q);
            let residual = match rhs_norm(model, &q) {
                Ok(r) => r,
                Err(_) => continue,
            };
            if residual < 1e-10 {
                push_unique(FixedPoint {
                    coords: q,
                    residual,
                    pt_symmetric: is_pt_symmetric(model, &q),
                    source: FixedPointSource::Newton,
                });
            }
        }
    }

    Ok(points)
}

// ---------------------------------------------------------------------------
// Reduced Jacobians
// ---------------------------------------------------------------------------

/// Which coordinate the chart eliminates via the constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Chart {
    /// Spin models: (m_y, m_z) plane, m_x = σ√(1 − m_y² − m_z²).
    SpinEliminateX,
    /// Spin models: (m_x, m_y) plane, m_z = σ√(1 − m_x² − m_y²). Used
    /// internally where the default chart hits its pole (e.g. the LMG
    /// PT-broken points at m = (0,0,±1)).
    SpinEliminateZ,
    /// Polar models: (r_B, Δθ) with r_A = √(1 − r_B²).
    PolarEliminateRa,
}

impl Chart {
    fn default_for(model: &MeanFieldModel) -> Chart {
        if model.is_polar() {
            Chart::PolarEliminateRa
        } else {
            Chart::SpinEliminateX
        }
    }

    /// Chart coordinates of a point.
    fn project(&self, q: &[f64; 3]) -> [f64; 2] {
        match self {
            Chart::SpinEliminateX => [q[1], q[2]],
            Chart::SpinEliminateZ => [q[0], q[1]],
            Chart::PolarEliminateRa => [q[1], q[2]],
        }
    }

    /// Reconstruct the full state; `sigma` is the branch sign of the
    /// eliminated coordinate.
    fn embed(&self, u: &[f64; 2], sigma: f64) -> [f64; 3] {
        match self {
            Chart::SpinEliminateX => {
                let mx = sigma * (1.0 - u[0] * u[0] - u[1] * u[1]).max(0.0).sqrt();
                [mx, u[0], u[1]]
            }
            Chart::SpinEliminateZ => {
                let mz = sigma * (1.0 - u[0] * u[0] - u[1] * u[1]).max(0.0).sqrt();
                [u[0], u[1], mz]
            }
            Chart::PolarEliminateRa => {
                let ra = (1.0 - u[0] * u[0]).max(0.0).sqrt();
                [ra, u[0], u[1]]
            }
        }
    }

    fn eliminated(&self, q: &[f64; 3]) -> f64 {
        match self {
            Chart::SpinEliminateX => q[0],
            Chart::SpinEliminateZ => q[2],
            Chart::PolarEliminateRa => q[0],
        }
    }

    fn coord_name(&self) -> &'static str {
        match self {
            Chart::SpinEliminateX => "m_x",
            Chart::SpinEliminateZ => "m_z",
            Chart::PolarEliminateRa => "r_A",
        }
    }
}

fn fd_jacobian_in_chart(
    model: &MeanFieldModel,
    chart: Chart,
    q: &[f64; 3],
) -> Result<[[f64; 2]; 2]> {
    let sigma = if chart.eliminated(q) >= 0.0 { 1.0 } else { -1.0 };
    let u0 = chart.project(q);
    let reduced = |u: &[f64; 2]| -> Result<[f64; 2]> {
        let full = chart.embed(u, sigma);
        let mut f = [0.0; 3];
        model.rhs(&full, &mut f)?;
        Ok(chart.project(&f))
    };
    // Central differences at step h and h/2, combined by one Richardson
    // extrapolation step: (4 D(h/2) − D(h)) / 3.
    let diff = |h: f64| -> Result<[[f64; 2]; 2]> {
        let mut j = [[0.0; 2]; 2];
        for col in 0..2 {
            let mut up = u0;
            up[col] += h;
            let mut um = u0;
            um[col] -= h;
            let fp = reduced(&up)?;
            let fm = reduced(&um)?;
            for row in 0..2 {
                j[row][col] = (fp[row] - fm[row]) / (2.0 * h);
            }
        }
        Ok(j)
    };
    let h = 1e-6;
    let d1 = diff(h)?;
    let d2 = diff(h / 2.0)?;
    let mut j = [[0.0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            j[r][c] = (4.0 * d2[r][c] - d1[r][c]) / 3.0;
        }
    }
    Ok(j)
}

fn analytic_jacobian(model: &MeanFieldModel, q: &[f64; 3]) -> Result<[[f64; 2]; 2]> {
    let [mx, my, mz] = *q;
    match *model {
        MeanFieldModel::Ddm { g, omega, kappa } => Ok([
            [
                2.0 * mz * (kappa - omega * my / mx),
                2.0 * (omega * mx - omega * mz * mz / mx - g + kappa * my),
            ],
            [2.0 * g, 4.0 * kappa * mz],
        ]),
        MeanFieldModel::Lmg { g, kappa } => Ok([
            [
                2.0 * mz * (kappa + g * my / mx),
                2.0 * (-g * mx + g * mz * mz / mx + kappa * my),
            ],
            [
                4.0 * g * (mx * mx - my * my) / mx,
                4.0 * mz * (kappa - g * my / mx),
            ],
        ]),
        MeanFieldModel::Waveguide { g, omega, gamma } => {
            let kappa = 2.0 * omega + 1.0;
            Ok([
                [2.0 * gamma * kappa * mz, 2.0 * (-g + gamma * kappa * my)],
                [2.0 * (g - 4.0 * gamma * omega * my), 4.0 * gamma * mz],
            ])
        }
        _ => Err(Error::InvalidInput(format!(
            "no analytic Jacobian registered for model `{}`",
            model.name()
        ))),
    }
}

/// Jacobian of the flow restricted to the constraint manifold, in the default
/// chart ((m_y, m_z) for spin models, (r_B, Δθ) for polar ones).
pub fn reduced_jacobian(
    model: &MeanFieldModel,
    fp: &FixedPoint,
    method: JacobianMethod,
) -> Result<[[f64; 2]; 2]> {
    if fp.residual >= 1e-10 {
        return Err(Error::InvalidInput(format!(
            "fixed-point residual {:.3e} too large for linearization",
            fp.residual
        )));
    }
    let chart = Chart::default_for(model);
    let eliminated = chart.eliminated(&fp.coords);
    if eliminated.abs() < 1e-8 {
        return Err(Error::ChartPole { coord: chart.coord_name(), value: eliminated.abs() });
    }
    match method {
        JacobianMethod::Analytic => analytic_jacobian(model, &fp.coords),
        JacobianMethod::FiniteDifference => fd_jacobian_in_chart(model, chart, &fp.coords),
    }
}

/// Like [`reduced_jacobian`] but with an automatic chart fallback for points
/// sitting at the default chart's pole (always finite-difference there).
fn jacobian_any_chart(model: &MeanFieldModel, fp: &FixedPoint) -> Result<[[f64; 2]; 2]> {
    let chart = Chart::default_for(model);
    if chart.eliminated(&fp.coords).abs() >= 1e-8 {
        return reduced_jacobian(model, fp, JacobianMethod::FiniteDifference);
    }
    if model.is_polar() {
        return Err(Error::ChartPole { coord: chart.coord_name(), value: 0.0 });
    }
    let fallback = Chart::SpinEliminateZ;
    if fallback.eliminated(&fp.coords).abs() < 1e-8 {
        return Err(Error::ChartPole { coord: fallback.coord_name(), value: 0.0 });
    }
    fd_jacobian_in_chart(model, fallback, &fp.coords)
}

// ---------------------------------------------------------------------------
// Classification and CEP detection
// ---------------------------------------------------------------------------

fn jac_norm(j: &[[f64; 2]; 2]) -> f64 {
    j.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

/// Eigenvalues of a real 2×2 matrix.
pub fn eigenvalues_2x2(j: &[[f64; 2]; 2]) -> [Complex64; 2] {
    let tr = j[0][0] + j[1][1];
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let disc = tr * tr / 4.0 - det;
    if disc >= 0.0 {
        let s = disc.sqrt();
        [Complex64::new(tr / 2.0 + s, 0.0), Complex64::new(tr / 2.0 - s, 0.0)]
    } else {
        let s = (-disc).sqrt();
        [Complex64::new(tr / 2.0, s), Complex64::new(tr / 2.0, -s)]
    }
}

/// Unit eigenvector of J for eigenvalue λ.
fn eigenvector_2x2(j: &[[f64; 2]; 2], lambda: Complex64) -> [Complex64; 2] {
    let b = j[0][1];
    let c = j[1][0];
    let scale = jac_norm(j).max(1e-300);
    let mut v = if b.abs() > 1e-14 * scale {
        [Complex64::new(b, 0.0), lambda - j[0][0]]
    } else if c.abs() > 1e-14 * scale {
        [lambda - j[1][1], Complex64::new(c, 0.0)]
    } else {
        // Diagonal matrix: coordinate eigenvectors.
        if (lambda - j[0][0]).norm() <= (lambda - j[1][1]).norm() {
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
        } else {
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
        }
    };
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    v[0] /= n;
    v[1] /= n;
    v
}

#[derive(Debug, Clone)]
pub struct ClassifiedJacobian {
    pub classification: Classification,
    pub eigenvalues: [Complex64; 2],
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
}

pub fn classify_fixed_point(j: &[[f64; 2]; 2], cfg: &ClassifyConfig) -> ClassifiedJacobian {
    let norm = jac_norm(j);
    let eigenvalues = eigenvalues_2x2(j);
    // α, β are defined by the Eq.-(5) structure, i.e. when the diagonal
    // vanishes relative to ‖J‖ (trivially true for the zero matrix).
    let diag_zero = j[0][0].abs() < 1e-8 * norm.max(1e-300) && j[1][1].abs() < 1e-8 * norm.max(1e-300)
        || norm == 0.0;
    let (alpha, beta) = if diag_zero { (Some(j[0][1]), Some(j[1][0])) } else { (None, None) };

    let classification = if norm < cfg.degenerate_norm {
        Classification::Degenerate
    } else {
        let tol = cfg.rel_tol * norm;
        let re_zero = eigenvalues.iter().all(|l| l.re.abs() < tol);
        let im_nonzero = eigenvalues.iter().all(|l| l.im.abs() > tol);
        if re_zero && im_nonzero {
            Classification::Center
        } else if eigenvalues.iter().all(|l| l.re < -tol) {
            Classification::Stable
        } else if eigenvalues.iter().all(|l| l.re > tol) {
            Classification::Unstable
        } else if eigenvalues.iter().all(|l| l.im.abs() < tol)
            && eigenvalues[0].re * eigenvalues[1].re < -tol * tol
        {
            Classification::Saddle
        } else {
            // Marginal cases (e.g. a coalesced zero mode at a CEP).
            Classification::Degenerate
        }
    };
    ClassifiedJacobian { classification, eigenvalues, alpha, beta }
}

/// Eigenvector-coalescence metric |⟨v₁, v₂⟩| plus the CEP decision: the flag
/// needs coalescence, (near-)zero eigenvalues, and a non-degenerate Jacobian
/// (when α and β vanish together there is no exceptional point).
pub fn cep_report(j: &[[f64; 2]; 2], cfg: &ClassifyConfig) -> CepReport {
    let norm = jac_norm(j);
    if norm < cfg.degenerate_norm {
        return CepReport {
            metric: 0.0,
            max_abs_eigenvalue: 0.0,
            jacobian_norm: norm,
            flag: CepFlag::NoCepDegenerate,
        };
    }
    let ev = eigenvalues_2x2(j);
    let v1 = eigenvector_2x2(j, ev[0]);
    let v2 = eigenvector_2x2(j, ev[1]);
    let metric = (v1[0].conj() * v2[0] + v1[1].conj() * v2[1]).norm();
    let max_abs = ev[0].norm().max(ev[1].norm());
    let flag = if metric > cfg.cep_threshold && max_abs < cfg.cep_eig_rel * norm {
        CepFlag::Cep
    } else {
        CepFlag::None
    };
    CepReport { metric, max_abs_eigenvalue: max_abs, jacobian_norm: norm, flag }
}

/// Convenience for [`cep_report`] when only the overlap is needed.
pub fn cep_metric(j: &[[f64; 2]; 2]) -> f64 {
    cep_report(j, &ClassifyConfig::default()).metric
}

/// Full linearization record for one fixed point. Uses the default chart
/// when possible and falls back to the m_z-elimination chart at its pole.
pub fn stability_report(
    model: &MeanFieldModel,
    fp: &FixedPoint,
    method: JacobianMethod,
    cfg: &ClassifyConfig,
) -> Result<StabilityReport> {
    let chart = Chart::default_for(model);
    let jacobian = if chart.eliminated(&fp.coords).abs() >= 1e-8 {
        reduced_jacobian(model, fp, method)?
    } else {
        jacobian_any_chart(model, fp)?
    };
    let classified = classify_fixed_point(&jacobian, cfg);
    let cep = cep_report(&jacobian, cfg);
    let eigenvectors = [
        eigenvector_2x2(&jacobian, classified.eigenvalues[0]),
        eigenvector_2x2(&jacobian, classified.eigenvalues[1]),
    ];
    Ok(StabilityReport {
        jacobian,
        eigenvalues: classified.eigenvalues,
        eigenvectors,
        classification: classified.classification,
        alpha: classified.alpha,
        beta: classified.beta,
        cep,
    })
}

// ---------------------------------------------------------------------------
// PT-broken pairs, phases, boundaries
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct PtBrokenPair {
    /// The P̃-related pair, ordered (upper, lower) by the parity-odd
    /// coordinate.
    pub pair: (FixedPoint, FixedPoint),
    /// Reduced-Jacobian eigenvalues of (upper, lower).
    pub eigenvalues: ([Complex64; 2], [Complex64; 2]),
    /// True when the pair splits into one linearly stable and one unstable
    /// member (the physically realizable configuration of SM-type pair
    /// analysis: γ₁γ₂ > αβ).
    pub physical: bool,
}

pub fn pt_broken_pair_analysis(
    model: &MeanFieldModel,
    cfg: &ClassifyConfig,
) -> Result<PtBrokenPair> {
    let points = find_fixed_points(model)?;
    let broken: Vec<&FixedPoint> = points.iter().filter(|p| !p.pt_symmetric).collect();
    if broken.is_empty() {
        return Err(Error::NoPtBrokenPoints);
    }
    // Find a P̃-related pair.
    let mut pair: Option<(FixedPoint, FixedPoint)> = None;
    'outer: for (i, p) in broken.iter().enumerate() {
        let image = model.apply_parity(&p.coords);
        for q in broken.iter().skip(i + 1) {
            let d = ((image[0] - q.coords[0]).powi(2)
                + (image[1] - q.coords[1]).powi(2)
                + (image[2] - q.coords[2]).powi(2))
            .sqrt();
            if d < 1e-9 {
                // order by the parity-odd coordinate (m_z, or r_A − r_B)
                let key = |f: &FixedPoint| {
                    if model.is_polar() {
                        f.coords[0] - f.coords[1]
                    } else {
                        f.coords[2]
                    }
                };
                let (upper, lower) = if key(p) >= key(q) {
                    ((*p).clone(), (*q).clone())
                } else {
                    ((*q).clone(), (*p).clone())
                };
                pair = Some((upper, lower));
                break 'outer;
            }
        }
    }
    let (upper, lower) = pair.ok_or(Error::NoPtBrokenPoints)?;

    let j_up = jacobian_any_chart(model, &upper)?;
    let j_lo = jacobian_any_chart(model, &lower)?;
    let c_up = classify_fixed_point(&j_up, cfg);
    let c_lo = classify_fixed_point(&j_lo, cfg);
    let stable_unstable = |a: &ClassifiedJacobian, b: &ClassifiedJacobian| {
        a.classification == Classification::Stable
            && matches!(b.classification, Classification::Unstable | Classification::Saddle)
    };
    let physical = stable_unstable(&c_up, &c_lo) || stable_unstable(&c_lo, &c_up);
    Ok(PtBrokenPair {
        pair: (upper, lower),
        eigenvalues: (c_up.eigenvalues, c_lo.eigenvalues),
        physical,
    })
}

/// Phase label from the fixed-point inventory: PT when only PT-symmetric
/// points exist, FPTB when only broken ones do, PPTB when both.
pub fn phase_classify(model: &MeanFieldModel) -> Result<PhasePoint> {
    let fixed_points = find_fixed_points(model)?;
    if fixed_points.is_empty() {
        return Err(Error::NoFixedPoints);
    }
    let n_sym = fixed_points.iter().filter(|p| p.pt_symmetric).count();
    let n_broken = fixed_points.len() - n_sym;
    let phase = match (n_sym > 0, n_broken > 0) {
        (true, false) => PhaseLabel::Pt,
        (false, true) => PhaseLabel::Fptb,
        (true, true) => PhaseLabel::Pptb,
        (false, false) => unreachable!("non-empty inventory"),
    };
    Ok(PhasePoint { phase, fixed_points })
}

#[derive(Debug, Clone)]
pub struct PhaseBoundary {
    /// Parameter value of the transition, bracketed to `width`.
    pub param: f64,
    pub from: PhaseLabel,
    pub to: PhaseLabel,
    /// CEP diagnostics at the PT-symmetric fixed point adjacent to the
    /// boundary (evaluated on whichever side still has one), taking the
    /// most-coalesced point.
    pub cep: Option<CepReport>,
}

/// Scan a 1-D parameter ray for phase-label changes and bisect each bracket
/// down to `width`. `model_at` maps the swept parameter to a model.
pub fn find_phase_boundaries<F>(
    model_at: F,
    lo: f64,
    hi: f64,
    n_scan: usize,
    width: f64,
    cfg: &ClassifyConfig,
) -> Result<Vec<PhaseBoundary>>
where
    F: Fn(f64) -> MeanFieldModel,
{
    if !(hi > lo) || n_scan < 2 {
        return Err(Error::InvalidInput("need hi > lo and at least 2 scan points".into()));
    }
    let label_at = |x: f64| -> Result<PhaseLabel> { Ok(phase_classify(&model_at(x))?.phase) };
    let mut boundaries = Vec::new();
    let step = (hi - lo) / (n_scan - 1) as f64;
    let mut prev_x = lo;
    let mut prev_label = label_at(lo)?;
    for k in 1..n_scan {
        let x = lo + step * k as f64;
        let label = label_at(x)?;
        if label != prev_label {
            let (mut a, mut b) = (prev_x, x);
            let (la, mut lb) = (prev_label, label);
            while b - a > width {
                let mid = 0.5 * (a + b);
                let lm = label_at(mid)?;
                if lm == la {
                    a = mid;
                } else {
                    b = mid;
                    lb = lm;
                }
            }
            let cep = boundary_cep(&model_at, a, b, cfg);
            boundaries.push(PhaseBoundary { param: 0.5 * (a + b), from: la, to: lb, cep });
        }
        prev_x = x;
        prev_label = label;
    }
    Ok(boundaries)
}

fn boundary_cep<F>(model_at: &F, a: f64, b: f64, cfg: &ClassifyConfig) -> Option<CepReport>
where
    F: Fn(f64) -> MeanFieldModel,
{
    let mut best: Option<CepReport> = None;
    for x in [a, b] {
        let model = model_at(x);
        let Ok(points) = find_fixed_points(&model) else { continue };
        for fp in points.iter().filter(|p| p.pt_symmetric) {
            let Ok(j) = reduced_jacobian(&model, fp, JacobianMethod::FiniteDifference) else {
                continue;
            };
            let report = cep_report(&j, cfg);
            let better = match &best {
                None => true,
                Some(prev) => {
                    report.flag == CepFlag::NoCepDegenerate
                        && prev.flag != CepFlag::Cep
                        || report.metric > prev.metric && prev.flag != CepFlag::NoCepDegenerate
                }
            };
            if better {
                best = Some(report);
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// 2×2 gain–loss demo
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtRegime {
    Unbroken,
    Broken,
    ExceptionalPoint,
}

#[derive(Debug, Clone, Copy)]
pub struct NonHermitianDemo {
    pub eigenvalues: (Complex64, Complex64),
    pub regime: PtRegime,
}

/// The textbook balanced gain–loss two-level Hamiltonian
/// H = [[−iΓ, g], [g, iΓ]] with eigenvalues ±√(g² − Γ²): real (PT-unbroken)
/// for Γ < g, imaginary (broken) for Γ > g, coalescing at the exceptional
/// point Γ = g.
pub fn nonhermitian_pt_demo(g: f64, gamma: f64) -> NonHermitianDemo {
    let disc = g * g - gamma * gamma;
    if (gamma - g).abs() < 1e-12 * g.max(f64::MIN_POSITIVE) {
        return NonHermitianDemo {
            eigenvalues: (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
            regime: PtRegime::ExceptionalPoint,
        };
    }
    if disc > 0.0 {
        let s = disc.sqrt();
        NonHermitianDemo {
            eigenvalues: (Complex64::new(s, 0.0), Complex64::new(-s, 0.0)),
            regime: PtRegime::Unbroken,
        }
    } else {
        let s = (-disc).sqrt();
        NonHermitianDemo {
            eigenvalues: (Complex64::new(0.0, s), Complex64::new(0.0, -s)),
            regime: PtRegime::Broken,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ddm(kappa: f64) -> MeanFieldModel {
        MeanFieldModel::Ddm { g: 2.0, omega: 1.0, kappa }
    }

    #[test]
    fn ddm_fixed_point_inventory() {
        // κ = 1: only the two PT-symmetric points (κ² + ω² < g²).
        let pts = find_fixed_points(&ddm(1.0)).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|p| p.pt_symmetric));

        // κ = 1.9: 2 + 2.
        let pts = find_fixed_points(&ddm(1.9)).unwrap();
        assert_eq!(pts.len(), 4);
        assert_eq!(pts.iter().filter(|p| p.pt_symmetric).count(), 2);

        // κ = 2.5: only the broken pair.
        let pts = find_fixed_points(&ddm(2.5)).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|p| !p.pt_symmetric));
    }

    #[test]
    fn lmg_six_fixed_points() {
        let model = MeanFieldModel::Lmg { g: 1.0, kappa: 0.8 };
        let pts = find_fixed_points(&model).unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts.iter().filter(|p| p.pt_symmetric).count(), 4);
    }

    #[test]
    fn fixed_point_set_closed_under_parity() {
        for model in [
            ddm(1.9),
            MeanFieldModel::Lmg { g: 1.0, kappa: 0.8 },
            MeanFieldModel::Waveguide { g: 1.0, omega: 0.3, gamma: 0.5 },
        ] {
            let pts = find_fixed_points(&model).unwrap();
            for p in &pts {
                let image = model.apply_parity(&p.coords);
                let matched = pts.iter().any(|q| {
                    ((image[0] - q.coords[0]).powi(2)
                        + (image[1] - q.coords[1]).powi(2)
                        + (image[2] - q.coords[2]).powi(2))
                    .sqrt()
                        < 1e-9
                });
                assert!(matched, "{:?} has no parity partner", p.coords);
            }
        }
    }

    #[test]
    fn zero_diagonal_at_pt_symmetric_points() {
        let grid: Vec<f64> = (1..=10).map(|k| 0.18 * k as f64).collect();
        for kappa in grid {
            for model in [ddm(kappa), MeanFieldModel::Lmg { g: 1.0, kappa: kappa / 2.0 }] {
                let pts = find_fixed_points(&model).unwrap();
                for fp in pts.iter().filter(|p| p.pt_symmetric) {
                    let Ok(j) = reduced_jacobian(&model, fp, JacobianMethod::Analytic) else {
                        continue; // chart pole at the κ = g merger
                    };
                    let n = jac_norm(&j);
                    assert!(j[0][0].abs() < 1e-8 * n.max(1e-12), "J11 {}", j[0][0]);
                    assert!(j[1][1].abs() < 1e-8 * n.max(1e-12), "J22 {}", j[1][1]);
                }
            }
        }
    }

    #[test]
    fn ddm_pt_spectra_match_closed_form() {
        let (g, omega): (f64, f64) = (2.0, 1.0);
        for k in 1..=20 {
            let kappa = 1.6 * k as f64 / 20.0; // inside the PT phase (κ < √3)
            let model = ddm(kappa);
            let pts = find_fixed_points(&model).unwrap();
            for fp in pts.iter().filter(|p| p.pt_symmetric) {
                let j = reduced_jacobian(&model, fp, JacobianMethod::Analytic).unwrap();
                let ev = eigenvalues_2x2(&j);
                let root = (g * g - kappa * kappa).sqrt();
                // sign of m_x selects the ∓ω branch
                let inner = if fp.coords[0] > 0.0 { root - omega } else { root + omega };
                let want = 2.0 * root.sqrt() * inner.abs().sqrt();
                if inner > 0.0 {
                    // center: ±i·want
                    assert!((ev[0].im.abs() - want).abs() < 1e-8, "{} vs {want}", ev[0].im);
                    assert!(ev[0].re.abs() < 1e-8);
                } else {
                    assert!((ev[0].re.abs() - want).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn ddm_pt_broken_spectra_match_closed_form() {
        let (g, omega): (f64, f64) = (2.0, 1.0);
        for kappa in [1.8f64, 2.2, 3.0, 4.0] {
            let model = ddm(kappa);
            let pts = find_fixed_points(&model).unwrap();
            for fp in pts.iter().filter(|p| !p.pt_symmetric) {
                let j = reduced_jacobian(&model, fp, JacobianMethod::Analytic).unwrap();
                let ev = eigenvalues_2x2(&j);
                let mz = fp.coords[2];
                let want = Complex64::new(2.0 * kappa * mz, 2.0 * omega * mz);
                let got = if ev[0].im * want.im >= 0.0 { ev[0] } else { ev[1] };
                assert!((got - want).norm() < 1e-8, "κ={kappa}: {got} vs {want}");
            }
            let _ = g;
        }
    }

    #[test]
    fn classify_canonical_matrices() {
        let cfg = ClassifyConfig::default();
        let center = classify_fixed_point(&[[0.0, -1.0], [1.0, 0.0]], &cfg);
        assert_eq!(center.classification, Classification::Center);
        assert_eq!(center.alpha, Some(-1.0));
        assert_eq!(center.beta, Some(1.0));

        let saddle = classify_fixed_point(&[[0.0, 1.0], [1.0, 0.0]], &cfg);
        assert_eq!(saddle.classification, Classification::Saddle);

        let zero = classify_fixed_point(&[[0.0, 0.0], [0.0, 0.0]], &cfg);
        assert_eq!(zero.classification, Classification::Degenerate);

        let stable = classify_fixed_point(&[[-1.0, 0.5], [-0.5, -1.0]], &cfg);
        assert_eq!(stable.classification, Classification::Stable);
        assert_eq!(stable.alpha, None);
    }

    #[test]
    fn cep_metric_canonical_matrices() {
        assert!((cep_metric(&[[0.0, 1.0], [0.0, 0.0]]) - 1.0).abs() < 1e-12);
        assert!(cep_metric(&[[0.0, -1.0], [1.0, 0.0]]) < 1e-12);
        let cfg = ClassifyConfig::default();
        let jordan = cep_report(&[[0.0, 1.0], [0.0, 0.0]], &cfg);
        assert_eq!(jordan.flag, CepFlag::Cep);
        let degenerate = cep_report(&[[0.0, 1e-9], [1e-9, 0.0]], &cfg);
        assert_eq!(degenerate.flag, CepFlag::NoCepDegenerate);
    }

    #[test]
    fn analytic_and_fd_jacobians_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let mut tested = 0;
        while tested < 50 {
            let which = rng.gen_range(0..3);
            let model = match which {
                0 => MeanFieldModel::Ddm {
                    g: rng.gen_range(0.5..3.0),
                    omega: rng.gen_range(0.1..2.0),
                    kappa: rng.gen_range(0.1..3.0),
                },
                1 => MeanFieldModel::Lmg {
                    g: rng.gen_range(0.5..3.0),
                    kappa: rng.gen_range(0.1..3.0),
                },
                _ => MeanFieldModel::Waveguide {
                    g: rng.gen_range(0.5..3.0),
                    omega: rng.gen_range(0.1..1.0),
                    gamma: rng.gen_range(0.1..1.0),
                },
            };
            let Ok(pts) = find_fixed_points(&model) else { continue };
            for fp in &pts {
                let Ok(a) = reduced_jacobian(&model, fp, JacobianMethod::Analytic) else {
                    continue;
                };
                let f = reduced_jacobian(&model, fp, JacobianMethod::FiniteDifference).unwrap();
                for r in 0..2 {
                    for c in 0..2 {
                        assert!(
                            (a[r][c] - f[r][c]).abs() < 1e-6,
                            "{model:?} {:?}: J[{r}][{c}] {} vs {}",
                            fp.coords,
                            a[r][c],
                            f[r][c]
                        );
                    }
                }
                tested += 1;
            }
        }
    }

    #[test]
    fn chart_pole_is_an_error() {
        let model = MeanFieldModel::Lmg { g: 1.0, kappa: 0.8 };
        let pole = FixedPoint {
            coords: [0.0, 0.0, 1.0],
            residual: 0.0,
            pt_symmetric: false,
            source: FixedPointSource::ClosedForm,
        };
        assert!(matches!(
            reduced_jacobian(&model, &pole, JacobianMethod::FiniteDifference),
            Err(Error::ChartPole { coord: "m_x", .. })
        ));
        // but the full report falls back to the (m_x, m_y) chart
        let report =
            stability_report(&model, &pole, JacobianMethod::FiniteDifference, &Default::default())
                .unwrap();
        // λ = 2(κ ± g) m_z at the poles
        let mut got: Vec<f64> = report.eigenvalues.iter().map(|l| l.re).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((got[0] - 2.0 * (0.8 - 1.0)).abs() < 1e-6);
        assert!((got[1] - 2.0 * (0.8 + 1.0)).abs() < 1e-6);
    }

    #[test]
    fn ddm_broken_pair_stability() {
        let pair = pt_broken_pair_analysis(&ddm(2.5), &Default::default()).unwrap();
        assert!(pair.physical);
        // upper (m_z > 0) is unstable, lower stable
        assert!(pair.eigenvalues.0.iter().all(|l| l.re > 0.0));
        assert!(pair.eigenvalues.1.iter().all(|l| l.re < 0.0));
    }

    #[test]
    fn lmg_broken_pair_eigenvalues() {
        let cfg = ClassifyConfig::default();
        // κ > g: lower pole stable with λ = {−2(κ+g), −2(κ−g)}.
        let pair =
            pt_broken_pair_analysis(&MeanFieldModel::Lmg { g: 1.0, kappa: 1.5 }, &cfg).unwrap();
        assert!(pair.physical);
        let mut lower: Vec<f64> = pair.eigenvalues.1.iter().map(|l| l.re).collect();
        lower.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((lower[0] + 5.0).abs() < 1e-6, "{lower:?}");
        assert!((lower[1] + 1.0).abs() < 1e-6, "{lower:?}");

        // κ < g: the formula gives 2(g−κ) > 0 at the lower pole — not stable.
        let pair =
            pt_broken_pair_analysis(&MeanFieldModel::Lmg { g: 1.0, kappa: 0.5 }, &cfg).unwrap();
        let lower_max = pair.eigenvalues.1.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
        assert!((lower_max - 1.0).abs() < 1e-6, "{lower_max}");
        assert!(!pair.physical);
    }

    #[test]
    fn phase_labels_ddm() {
        assert_eq!(phase_classify(&ddm(1.0)).unwrap().phase, PhaseLabel::Pt);
        assert_eq!(phase_classify(&ddm(1.9)).unwrap().phase, PhaseLabel::Pptb);
        assert_eq!(phase_classify(&ddm(2.5)).unwrap().phase, PhaseLabel::Fptb);
    }

    #[test]
    fn ddm_boundaries_and_ceps() {
        let cfg = ClassifyConfig::default();
        let bounds = find_phase_boundaries(
            |kappa| ddm(kappa),
            1.0,
            2.5,
            31,
            1e-12,
            &cfg,
        )
        .unwrap();
        assert_eq!(bounds.len(), 2);
        assert!((bounds[0].param - 3.0f64.sqrt()).abs() < 0.01, "κ1c = {}", bounds[0].param);
        assert_eq!(bounds[0].from, PhaseLabel::Pt);
        assert_eq!(bounds[0].to, PhaseLabel::Pptb);
        assert!((bounds[1].param - 2.0).abs() < 0.01, "κ2c = {}", bounds[1].param);
        assert_eq!(bounds[1].to, PhaseLabel::Fptb);
        for b in &bounds {
            let cep = b.cep.expect("PT point adjacent to each DDM boundary");
            assert_eq!(cep.flag, CepFlag::Cep, "metric {}", cep.metric);
            assert!(cep.metric > 0.999);
        }
    }

    #[test]
    fn lmg_degenerate_transition() {
        let cfg = ClassifyConfig::default();
        // Exactly at κ = g the merged PT point has J = 0: α = β = 0.
        let model = MeanFieldModel::Lmg { g: 1.0, kappa: 1.0 };
        let pts = find_fixed_points(&model).unwrap();
        let merged = pts
            .iter()
            .find(|p| p.pt_symmetric)
            .expect("merged PT point exists at the transition");
        let j = reduced_jacobian(&model, merged, JacobianMethod::Analytic).unwrap();
        let classified = classify_fixed_point(&j, &cfg);
        assert_eq!(classified.classification, Classification::Degenerate);
        assert!(classified.alpha.unwrap().abs() < 1e-6);
        assert!(classified.beta.unwrap().abs() < 1e-6);
        assert_eq!(cep_report(&j, &cfg).flag, CepFlag::NoCepDegenerate);

        // The label flips discontinuously at κ = g.
        let bounds = find_phase_boundaries(
            |kappa| MeanFieldModel::Lmg { g: 1.0, kappa },
            0.5,
            1.5,
            21,
            1e-6,
            &cfg,
        )
        .unwrap();
        assert_eq!(bounds.len(), 1);
        assert!((bounds[0].param - 1.0).abs() < 0.05);
        assert_eq!(bounds[0].from, PhaseLabel::Pptb);
        assert_eq!(bounds[0].to, PhaseLabel::Fptb);
    }

    #[test]
    fn lattice_fixed_points_track_ddm() {
        let model = MeanFieldModel::Lattice { g: 2.0, omega: 2.0, kappa: 3.8, d: 2 };
        let pts = find_fixed_points(&model).unwrap();
        assert!(!pts.is_empty());
        for p in &pts {
            assert!(p.residual < 1e-10);
            let c = p.coords[0] * p.coords[0] + p.coords[1] * p.coords[1];
            assert!((c - 1.0).abs() < 1e-9);
        }
        // equal-amplitude points are the PT-symmetric ones
        assert!(pts.iter().any(|p| p.pt_symmetric));
    }

    #[test]
    fn demo_regimes() {
        let d = nonhermitian_pt_demo(1.0, 0.0);
        assert_eq!(d.regime, PtRegime::Unbroken);
        assert!((d.eigenvalues.0.re - 1.0).abs() < 1e-15);

        let d = nonhermitian_pt_demo(1.0, 1.0);
        assert_eq!(d.regime, PtRegime::ExceptionalPoint);
        assert_eq!(d.eigenvalues.0.norm(), 0.0);

        let d = nonhermitian_pt_demo(1.0, 2.0);
        assert_eq!(d.regime, PtRegime::Broken);
        assert!((d.eigenvalues.0.im - 3.0f64.sqrt()).abs() < 1e-15);
    }
}
