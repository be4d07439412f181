//! Adaptive embedded Runge–Kutta integration (Dormand–Prince 5(4)).
//!
//! One stepper serves both the mean-field flows (state = 3 reals) and
//! density-matrix evolution (state = flattened complex matrix). Sampling is
//! done by capping the step so the integrator lands exactly on the sample
//! grid; no interpolation is involved, so sampled states carry full
//! integration accuracy.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { abs: 1e-13, rel: 1e-13 }
    }
}

// Dormand–Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// 5th order minus 4th order weights (error estimator).
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

/// Integrate `dy/dt = f(t, y)` from `t0` to `t_end`, recording the state at
/// `t0` and every `stride` thereafter (and at `t_end`).
///
/// `post_step` runs on each accepted state; it may project the state back
/// onto a constraint set (e.g. re-Hermitize a density matrix).
pub fn integrate_adaptive<F, P>(
    mut f: F,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    tol: &Tolerances,
    stride: f64,
    mut post_step: P,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
    P: FnMut(&mut [f64]),
{
    if !(t_end > t0) {
        return Err(Error::InvalidInput(format!("t_end {t_end} must exceed t0 {t0}")));
    }
    if !(stride > 0.0) {
        return Err(Error::InvalidInput(format!("sample stride {stride} must be positive")));
    }
    let n = y0.len();
    let mut y = y0.to_vec();
    let mut t = t0;
    let mut times = vec![t0];
    let mut states = vec![y.clone()];

    let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
    f(t, &y, &mut k[0])?;

    let mut h = initial_step(&y, &k[0], tol, t_end - t0);
    let mut sample_idx: usize = 1;
    let mut ytmp = vec![0.0; n];
    let mut ynew = vec![0.0; n];

    loop {
        let next_sample = (t0 + sample_idx as f64 * stride).min(t_end);
        if t >= t_end - 1e-14 * t_end.abs().max(1.0) {
            break;
        }
        let h_max = next_sample - t;
        let mut h_try = h.min(h_max);
        if h_try < 1e-14 * t.abs().max(1.0) {
            // already at the sample boundary to round-off
            h_try = h_max;
        }

        // FSAL: k[0] holds f(t, y).
        for s in 0..6 {
            for i in 0..n {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s + 1) {
                    acc += A[s][j] * kj[i];
                }
                ytmp[i] = y[i] + h_try * acc;
            }
            f(t + C[s] * h_try, &ytmp, &mut k[s + 1])?;
        }
        // Stage 6 state (A row 5 with the 5th-order weights) is y_{n+1}.
        for i in 0..n {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate().take(6) {
                acc += A[5][j] * kj[i];
            }
            ynew[i] = y[i] + h_try * acc;
        }

        // Scaled RMS error.
        let mut err_sq = 0.0;
        for i in 0..n {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= h_try;
            let sc = tol.abs + tol.rel * y[i].abs().max(ynew[i].abs());
            err_sq += (e / sc) * (e / sc);
        }
        let err = (err_sq / n as f64).sqrt();

        if err <= 1.0 {
            t += h_try;
            y.copy_from_slice(&ynew);
            post_step(&mut y);
            // FSAL stage becomes the first stage of the next step; recompute
            // after post_step so projections feed back into the derivative.
            f(t, &y, &mut k[0])?;

            if (t - next_sample).abs() <= 1e-12 * next_sample.abs().max(1.0) {
                times.push(next_sample);
                states.push(y.clone());
                sample_idx += 1;
            }
        }

        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h_try * factor).min(t_end - t0);
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepUnderflow(t));
        }
    }

    Ok((times, states))
}

fn initial_step(y: &[f64], dy: &[f64], tol: &Tolerances, span: f64) -> f64 {
    let ynorm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    let dnorm = dy.iter().map(|v| v * v).sum::<f64>().sqrt();
    let h = if dnorm > 1e-12 {
        0.01 * (ynorm.max(tol.abs) / dnorm)
    } else {
        span * 1e-3
    };
    h.min(span * 0.1).max(1e-10)
}
