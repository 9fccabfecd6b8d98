//! Shared oracles: direct Riemann sums that bypass the transform pipeline,
//! so the integration tests compare two genuinely independent routes.

#![allow(dead_code)]

use num_complex::Complex64;

use bjq_core::fourier::bandlimited_eval;
use bjq_core::{PhaseFunction, SampledSignal};

/// τ-Wigner integrand summed directly on an 8× oversampled y-grid,
/// zero-extending the signals outside the window:
/// `(2πħ)^{-1} ∫ e^{-ipy/ħ} ψ(x+τy) conj(φ(x-(1-τ)y)) dy`.
pub fn wigner_tau_point(
    psi: &SampledSignal,
    phi: &SampledSignal,
    tau: f64,
    x: f64,
    p: f64,
) -> Complex64 {
    let g = psi.grid();
    let hbar = g.hbar();
    let limit = g.half_length();
    let dy = g.dx() / 8.0;
    let m = (4.0 * limit / dy).round() as i64;
    let ys: Vec<f64> = (0..m).map(|k| -2.0 * limit + k as f64 * dy).collect();
    let first_args: Vec<f64> = ys.iter().map(|y| x + tau * y).collect();
    let second_args: Vec<f64> = ys.iter().map(|y| x - (1.0 - tau) * y).collect();
    let first = masked_eval(psi, &first_args, limit);
    let second = masked_eval(phi, &second_args, limit);
    let mut acc = Complex64::new(0.0, 0.0);
    for ((y, a), b) in ys.iter().zip(&first).zip(&second) {
        acc += Complex64::from_polar(1.0, -p * y / hbar) * a * b.conj();
    }
    acc * dy / (2.0 * std::f64::consts::PI * hbar)
}

fn masked_eval(signal: &SampledSignal, points: &[f64], limit: f64) -> Vec<Complex64> {
    let vals = bandlimited_eval(signal, points);
    points
        .iter()
        .zip(vals)
        .map(|(&t, v)| if t.abs() <= limit { v } else { Complex64::new(0.0, 0.0) })
        .collect()
}

/// 20 phase points spread over the concentrated middle of the window.
pub fn probe_points(scale_x: f64, scale_p: f64) -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for i in 0..5 {
        for j in 0..4 {
            let x = (i as f64 - 2.0) * scale_x / 2.0;
            let p = (j as f64 - 1.5) * scale_p / 1.5;
            pts.push((x, p));
        }
    }
    pts
}

pub fn l2_relative(a: &PhaseFunction, b: &PhaseFunction) -> f64 {
    a.sub(b).unwrap().l2_norm() / b.l2_norm()
}

/// L¹-relative distance between a complex-valued marginal and a real
/// reference density.
pub fn l1_relative(got: &[Complex64], want: &[f64], du: f64) -> f64 {
    let err: f64 = got
        .iter()
        .zip(want)
        .map(|(g, w)| (g - Complex64::new(*w, 0.0)).norm())
        .sum::<f64>()
        * du;
    let base: f64 = want.iter().map(|w| w.abs()).sum::<f64>() * du;
    err / base
}
