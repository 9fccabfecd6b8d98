//! Phase-space distributions: the τ-Wigner family, its Born–Jordan average,
//! the Rihaczek form, the ambiguity transform, and the sinc filter that
//! connects the last two.
//!
//! The τ-parametrized cross distribution is
//! `Wig_τ(ψ,φ)(x,p) = (2πħ)^{-1} ∫ e^{-ipy/ħ} ψ(x+τy) conj(φ)(x-(1-τ)y) dy`,
//! evaluated here by band-limited translation of the signals followed by a
//! centered transform in y. Translation by a multiple of dx is an exact
//! index move, so commensurate τ (including the symmetric case τ = 1/2 on
//! an even grid) incurs no interpolation error at all; generic τ falls back
//! to the trigonometric interpolant on the same code path.
//!
//! The Born–Jordan distribution is the τ-average over [0,1]. Two
//! independent routes compute it: a quadrature sum of `Wig_τ` over
//! Gauss–Legendre nodes, and the spectral route
//! `Wig_BJ = F_σ(Θ · Amb)` with `Θ(z) = sinc(px/2ħ)`,
//! which follows from `F_σ Wig_τ = e^{i(2τ-1)px/2ħ} · Amb` and
//! `∫₀¹ e^{i(2τ-1)u/2} dτ = sinc(u/2)`. Their agreement is part of the
//! acceptance surface.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier::{centered_forward, hbar_fourier, shifted_from_spectrum, symplectic_fourier};
use crate::grid::{Grid1D, PhaseFunction, PhaseGrid, SampledSignal};
use crate::quadrature::QuadratureRule;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

fn check_pair(psi: &SampledSignal, phi: &SampledSignal, what: &str) -> Result<()> {
    psi.grid().check_same(phi.grid(), what)
}

/// Correlation column `ψ(x + fa·s) · conj(φ(x + fb·s))` averaged over the
/// listed separation branches. The extreme separation -L is congruent to +L
/// on the circle; averaging the two keeps the τ ↔ 1-τ mirror exact on even
/// grids, where -L has no mirror partner of its own.
fn averaged_correlation(
    psi_spec: &[Complex64],
    phi_spec: &[Complex64],
    grid: &Grid1D,
    fa: f64,
    fb: f64,
    seps: &[f64],
) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); grid.n()];
    for &s in seps {
        let a = shifted_from_spectrum(psi_spec, grid, fa * s);
        let b = shifted_from_spectrum(phi_spec, grid, fb * s);
        for ((o, u), v) in out.iter_mut().zip(a.values()).zip(b.values()) {
            *o += u * v.conj();
        }
    }
    let w = 1.0 / seps.len() as f64;
    for o in out.iter_mut() {
        *o *= w;
    }
    out
}

/// τ-parametrized cross distribution of `psi` against `phi` on the grid's
/// phase plane. Requires τ ∈ [0, 1].
pub fn cross_wigner_tau(
    psi: &SampledSignal,
    phi: &SampledSignal,
    tau: f64,
) -> Result<PhaseFunction> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidInput(format!("tau must lie in [0, 1], got {tau}")));
    }
    check_pair(psi, phi, "cross_wigner_tau")?;
    let grid = *psi.grid();
    let n = grid.n();
    let dx = grid.dx();
    let hbar = grid.hbar();
    let half = (n / 2) as f64;

    let psi_spec = centered_forward(psi.values(), dx, hbar);
    let phi_spec = centered_forward(phi.values(), dx, hbar);

    // Columns of the correlation product, one per separation y_m.
    let cols: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|m| {
            let y = (m as f64 - half) * dx;
            let seps: &[f64] = if m == 0 { &[y, -y] } else { &[y] };
            averaged_correlation(&psi_spec, &phi_spec, &grid, tau, -(1.0 - tau), seps)
        })
        .collect();

    let scale = INV_SQRT_2PI / hbar.sqrt();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let g_row: Vec<Complex64> = (0..n).map(|m| cols[m][i]).collect();
            let mut t = centered_forward(&g_row, dx, hbar);
            for v in t.iter_mut() {
                *v *= scale;
            }
            t
        })
        .collect();

    PhaseFunction::from_values(grid.phase_grid(), rows.concat())
}

/// Symmetric (τ = 1/2) cross distribution.
pub fn cross_wigner(psi: &SampledSignal, phi: &SampledSignal) -> Result<PhaseFunction> {
    cross_wigner_tau(psi, phi, 0.5)
}

/// Wigner distribution of a single signal; real up to rounding.
pub fn wigner(psi: &SampledSignal) -> Result<PhaseFunction> {
    cross_wigner(psi, psi)
}

/// Rihaczek distribution
/// `(2πħ)^{-1/2} e^{-ipx/ħ} ψ(x) conj(Fφ)(p)`.
/// Computed from the product formula directly; coincides with
/// [`cross_wigner_tau`] at τ = 0, which the test surface checks through an
/// entirely different evaluation path.
pub fn rihaczek(psi: &SampledSignal, phi: &SampledSignal) -> Result<PhaseFunction> {
    check_pair(psi, phi, "rihaczek")?;
    let grid = *psi.grid();
    let pg = grid.phase_grid();
    let n = grid.n();
    let hbar = grid.hbar();
    let spec = hbar_fourier(phi);
    let scale = INV_SQRT_2PI / hbar.sqrt();
    let mut values = Vec::with_capacity(n * n);
    for j in 0..n {
        let x = pg.x(j);
        let psi_x = psi.values()[j];
        for l in 0..n {
            let p = pg.p(l);
            let phase = Complex64::from_polar(scale, -p * x / hbar);
            values.push(phase * psi_x * spec.values()[l].conj());
        }
    }
    PhaseFunction::from_values(pg, values)
}

/// Ambiguity transform
/// `Amb(ψ,φ)(x,p) = (2πħ)^{-1} ∫ e^{-ipx'/ħ} ψ(x'+x/2) conj(φ)(x'-x/2) dx'`.
/// At the origin it returns `(2πħ)^{-1} ⟨ψ, φ⟩`.
pub fn ambiguity(psi: &SampledSignal, phi: &SampledSignal) -> Result<PhaseFunction> {
    check_pair(psi, phi, "ambiguity")?;
    let grid = *psi.grid();
    let n = grid.n();
    let dx = grid.dx();
    let hbar = grid.hbar();
    let half = (n / 2) as f64;

    let psi_spec = centered_forward(psi.values(), dx, hbar);
    let phi_spec = centered_forward(phi.values(), dx, hbar);
    let scale = INV_SQRT_2PI / hbar.sqrt();

    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let x = (j as f64 - half) * dx;
            let seps: &[f64] = if j == 0 { &[x, -x] } else { &[x] };
            let prod = averaged_correlation(&psi_spec, &phi_spec, &grid, 0.5, -0.5, seps);
            let mut t = centered_forward(&prod, dx, hbar);
            for v in t.iter_mut() {
                *v *= scale;
            }
            t
        })
        .collect();

    PhaseFunction::from_values(grid.phase_grid(), rows.concat())
}

/// The Born–Jordan filter `Θ(z) = sinc(px/2ħ)`, equal to 1 on both axes.
pub fn theta_filter(pg: PhaseGrid) -> PhaseFunction {
    let hbar = pg.hbar();
    PhaseFunction::from_fn(pg, |x, p| Complex64::new(sinc(p * x / (2.0 * hbar)), 0.0))
}

pub(crate) fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// Born–Jordan distribution through the spectral route
/// `F_σ(Θ · Amb(ψ,φ))`.
pub fn bjw_filtered(psi: &SampledSignal, phi: &SampledSignal) -> Result<PhaseFunction> {
    let amb = ambiguity(psi, phi)?;
    let theta = theta_filter(*amb.grid());
    Ok(symplectic_fourier(&amb.pointwise_mul(&theta)?))
}

/// Born–Jordan distribution as a quadrature average of `Wig_τ` over the
/// given rule on [0, 1]. Independent of the filter route.
pub fn bjw_quadrature(
    psi: &SampledSignal,
    phi: &SampledSignal,
    rule: &QuadratureRule,
) -> Result<PhaseFunction> {
    if rule.is_empty() {
        return Err(Error::InvalidInput("empty quadrature rule".into()));
    }
    check_pair(psi, phi, "bjw_quadrature")?;
    let terms: Vec<Result<PhaseFunction>> = rule
        .nodes()
        .par_iter()
        .zip(rule.weights().par_iter())
        .map(|(&t, &w)| cross_wigner_tau(psi, phi, t).map(|f| f.scale(Complex64::new(w, 0.0))))
        .collect();
    let mut acc = PhaseFunction::zeros(psi.grid().phase_grid());
    for t in terms {
        acc = acc.add(&t?)?;
    }
    Ok(acc)
}

/// dp-weighted and dx-weighted line sums:
/// `(∫ f dp)(x_j)` and `(∫ f dx)(p_l)`.
pub fn marginals(f: &PhaseFunction) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = f.grid().n();
    let dp = f.grid().dp();
    let dx = f.grid().dx();
    let mut mx = vec![Complex64::new(0.0, 0.0); n];
    let mut mp = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        for l in 0..n {
            let v = f.at(j, l);
            mx[j] += v * dp;
            mp[l] += v * dx;
        }
    }
    (mx, mp)
}

/// Axis-aligned phase-space window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceRegion {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
}

impl InterferenceRegion {
    pub fn contains(&self, x: f64, p: f64) -> bool {
        x >= self.x_min && x <= self.x_max && p >= self.p_min && p <= self.p_max
    }
}

/// `∬_region |f|² dz`: energy of the distribution inside the window.
pub fn interference_energy(f: &PhaseFunction, region: &InterferenceRegion) -> f64 {
    let pg = f.grid();
    let n = pg.n();
    let mut acc = 0.0;
    for j in 0..n {
        let x = pg.x(j);
        for l in 0..n {
            if region.contains(x, pg.p(l)) {
                acc += f.at(j, l).norm_sqr();
            }
        }
    }
    acc * pg.dz()
}
