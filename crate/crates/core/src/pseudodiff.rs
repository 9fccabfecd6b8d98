//! Operator matrices built from phase-space symbols.
//!
//! The τ-kernel quantization of a symbol `a` is the integral operator
//! `(A_τ ψ)(x) = (2πħ)^{-1} ∬ e^{ip(x-y)/ħ} a(τx + (1-τ)y, p) ψ(y) dp dy`,
//! discretized row by row on the grid with the momentum integral as the
//! exact dual sum. The Born–Jordan operator averages the first kernel slot
//! over τ with a quadrature rule on [0, 1]. An independent route builds the
//! same operators from Heisenberg–Weyl translations,
//! `A = (2πħ)^{-1} ∬ a_σ(z) [Θ(z)] T(z) dz`,
//! with `a_σ` the symplectic Fourier transform of the symbol and the sinc
//! filter `Θ` inserted exactly for the Born–Jordan case; grid-aligned
//! translations make every `T(z)` a phase-dressed index shift, so the twist
//! sum collapses to one inverse transform per translation column.
//!
//! Matrices act with the quadrature convention
//! `(Aψ)_i = Σ_j A[i,j] ψ_j dx`, under which the conjugate transpose is the
//! L² adjoint and the identity has entries `δ_ij/dx`.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier::{centered_forward, centered_inverse, shifted};
use crate::grid::{inner_product, PhaseFunction, PhaseGrid, SampledSignal};
use crate::grid::Grid1D;
use crate::quadrature::QuadratureRule;

/// Numeric quantization scheme selector.
#[derive(Debug, Clone, PartialEq)]
pub enum OpScheme {
    Tau(f64),
    Weyl,
    BornJordan,
}

/// A symbol, either a closed-form callback (evaluated exactly wherever the
/// kernel needs it) or grid samples (evaluated off-grid by band-limited
/// interpolation along the position slot).
#[derive(Clone)]
pub enum SymbolSource {
    Analytic(Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>),
    Sampled(PhaseFunction),
}

impl SymbolSource {
    pub fn analytic(f: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static) -> Self {
        SymbolSource::Analytic(Arc::new(f))
    }

    pub fn sampled(values: PhaseFunction) -> Self {
        SymbolSource::Sampled(values)
    }

    /// Grid samples of the symbol.
    pub fn sample(&self, pg: PhaseGrid) -> Result<PhaseFunction> {
        match self {
            SymbolSource::Analytic(f) => Ok(PhaseFunction::from_fn(pg, |x, p| f(x, p))),
            SymbolSource::Sampled(v) => {
                v.grid().space().check_same(pg.space(), "SymbolSource::sample")?;
                Ok(v.clone())
            }
        }
    }
}

/// Dense operator on grid signals, row-major, with the dx-weighted action.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    grid: Grid1D,
    data: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, data: vec![Complex64::new(0.0, 0.0); grid.n() * grid.n()] }
    }

    /// Identity under the dx-weighted action: entries `δ_ij/dx`.
    pub fn identity(grid: Grid1D) -> Self {
        let mut m = Self::zeros(grid);
        let inv = 1.0 / grid.dx();
        for i in 0..grid.n() {
            m.set(i, i, Complex64::new(inv, 0.0));
        }
        m
    }

    /// Multiplication operator by the given diagonal samples.
    pub fn diagonal(grid: Grid1D, values: &[Complex64]) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::InvalidInput("diagonal length mismatch".into()));
        }
        let mut m = Self::zeros(grid);
        let inv = 1.0 / grid.dx();
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v * inv);
        }
        Ok(m)
    }

    pub fn from_rows(grid: Grid1D, rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = grid.n();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("row shape mismatch".into()));
        }
        Ok(Self { grid, data: rows.concat() })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.grid.n() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        let n = self.grid.n();
        self.data[i * n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        let n = self.grid.n();
        &self.data[i * n..(i + 1) * n]
    }

    pub fn apply(&self, psi: &SampledSignal) -> Result<SampledSignal> {
        self.grid.check_same(psi.grid(), "OperatorMatrix::apply")?;
        let dx = self.grid.dx();
        let out: Vec<Complex64> = self
            .data
            .par_chunks(self.grid.n())
            .map(|row| {
                let s: Complex64 = row.iter().zip(psi.values()).map(|(a, b)| a * b).sum();
                s * dx
            })
            .collect();
        SampledSignal::from_values(self.grid, out)
    }

    /// Operator composition `self ∘ other` under the dx convention.
    pub fn compose(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.grid.check_same(&other.grid, "OperatorMatrix::compose")?;
        let n = self.grid.n();
        let dx = self.grid.dx();
        let data: Vec<Complex64> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let row = self.row(i);
                (0..n)
                    .map(|j| {
                        let mut s = Complex64::new(0.0, 0.0);
                        for k in 0..n {
                            s += row[k] * other.data[k * n + j];
                        }
                        s * dx
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        Ok(OperatorMatrix { grid: self.grid, data })
    }

    /// Conjugate transpose; the L² adjoint under the dx-weighted action.
    pub fn adjoint(&self) -> OperatorMatrix {
        let n = self.grid.n();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        OperatorMatrix { grid: self.grid, data }
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.grid.check_same(&other.grid, "OperatorMatrix::add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(OperatorMatrix { grid: self.grid, data })
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.grid.check_same(&other.grid, "OperatorMatrix::sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(OperatorMatrix { grid: self.grid, data })
    }

    pub fn scale(&self, c: Complex64) -> OperatorMatrix {
        OperatorMatrix { grid: self.grid, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Conjugate transpose as a free function, for symmetry with the rest of
/// the operator vocabulary.
pub fn matrix_adjoint(m: &OperatorMatrix) -> OperatorMatrix {
    m.adjoint()
}

/// `‖a - b‖_F / ‖b‖_F`.
pub fn relative_frobenius_distance(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<f64> {
    Ok(a.sub(b)?.frobenius_norm() / b.frobenius_norm())
}

/// Row of symbol values `a(u, p_l)` for all grid momenta, with the first
/// slot averaged over the kernel's τ nodes and the listed separation
/// branches: `|seps|^{-1} Σ_m Σ_k w_k a(fold(y + τ_k·sep_m), p_l)`.
/// A single τ is the one-node rule; `fold` reduces the argument into the
/// periodic window.
#[allow(clippy::too_many_arguments)]
fn averaged_symbol_row(
    f: &dyn Fn(f64, f64) -> Complex64,
    pg: &PhaseGrid,
    y: f64,
    seps: &[f64],
    nodes: &[f64],
    weights: &[f64],
    fold: &impl Fn(f64) -> f64,
    buf: &mut [Complex64],
) {
    let n = pg.n();
    for v in buf.iter_mut() {
        *v = Complex64::new(0.0, 0.0);
    }
    let share = 1.0 / seps.len() as f64;
    for sep in seps {
        for (t, w) in nodes.iter().zip(weights) {
            let u = fold(y + t * sep);
            let ws = w * share;
            for l in 0..n {
                buf[l] += ws * f(u, pg.p(l));
            }
        }
    }
}

/// Kernel construction shared by every scheme: `nodes`/`weights` describe
/// the τ-average in the first symbol slot.
fn kernel_averaged(
    symbol: &SymbolSource,
    grid: Grid1D,
    nodes: &[f64],
    weights: &[f64],
) -> Result<OperatorMatrix> {
    let pg = grid.phase_grid();
    let n = grid.n();
    let dx = grid.dx();
    let dp = pg.dp();
    let hbar = grid.hbar();
    let scale = dp / (2.0 * std::f64::consts::PI * hbar);
    // Twiddle table over the wrapped difference index:
    // T[d][l] = scale · e^{2πi (l - n/2) d / n}.
    let twiddle: Vec<Vec<Complex64>> = (0..n)
        .map(|d| {
            (0..n)
                .map(|l| {
                    let arg =
                        2.0 * std::f64::consts::PI * (l as f64 - (n / 2) as f64) * d as f64 / n as f64;
                    Complex64::from_polar(scale, arg)
                })
                .collect()
        })
        .collect();

    // The row-column separation lives on the circle; the principal branch
    // d in [-n/2, n/2) keeps the first-slot offset τ·d·dx local, matching
    // the wrapped translations of the twist route. The symbol's first slot
    // is folded into the window (the sampled route is periodic anyway),
    // and the ambiguous half-period diagonal averages both branches, which
    // keeps the adjoint identity exact.
    let wrap = |i: usize, j: usize| -> i64 {
        ((i as i64 - j as i64 + (n / 2) as i64).rem_euclid(n as i64)) - (n / 2) as i64
    };
    let period = n as f64 * dx;
    let fold = move |u: f64| (u + period / 2.0).rem_euclid(period) - period / 2.0;
    let branch_seps = |d: i64| -> Vec<f64> {
        if d == -((n / 2) as i64) {
            vec![d as f64 * dx, -d as f64 * dx]
        } else {
            vec![d as f64 * dx]
        }
    };
    match symbol {
        SymbolSource::Analytic(f) => {
            let rows: Vec<Vec<Complex64>> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut row = vec![Complex64::new(0.0, 0.0); n];
                    let mut sym = vec![Complex64::new(0.0, 0.0); n];
                    for j in 0..n {
                        let d = wrap(i, j);
                        averaged_symbol_row(
                            f.as_ref(),
                            &pg,
                            grid.x(j),
                            &branch_seps(d),
                            nodes,
                            weights,
                            &fold,
                            &mut sym,
                        );
                        let tw = &twiddle[d.rem_euclid(n as i64) as usize];
                        row[j] = tw.iter().zip(&sym).map(|(a, b)| a * b).sum();
                    }
                    row
                })
                .collect();
            OperatorMatrix::from_rows(grid, rows)
        }
        SymbolSource::Sampled(a) => {
            a.grid().space().check_same(&grid, "kernel symbol grid")?;
            // Spectra of the symbol columns along x, reused for every
            // band-limited shift of the first slot.
            let col_spectra: Vec<Vec<Complex64>> = (0..n)
                .into_par_iter()
                .map(|l| {
                    let col: Vec<Complex64> = (0..n).map(|j| a.at(j, l)).collect();
                    centered_forward(&col, dx, hbar)
                })
                .collect();
            let half = (n / 2) as f64;
            // One output tile per principal-branch difference d = i - j;
            // its entries are disjoint across d.
            let tiles: Vec<(i64, Vec<Complex64>)> = (-((n / 2) as i64)..(n / 2) as i64)
                .into_par_iter()
                .map(|d| {
                    let seps = branch_seps(d);
                    let share = 1.0 / seps.len() as f64;
                    // Combined translation multiplier for the τ-average and
                    // branch average: Σ_m Σ_k w_k e^{i ξ τ_k sep_m / ħ} / |seps|
                    // per x-frequency ξ.
                    let mult: Vec<Complex64> = (0..n)
                        .map(|kf| {
                            let xi = (kf as f64 - half) * dp;
                            let mut m = Complex64::new(0.0, 0.0);
                            for sep in &seps {
                                for (t, w) in nodes.iter().zip(weights) {
                                    m += w
                                        * share
                                        * Complex64::from_polar(1.0, xi * t * sep / hbar);
                                }
                            }
                            m
                        })
                        .collect();
                    let tw = &twiddle[d.rem_euclid(n as i64) as usize];
                    // Shift every column's first slot by τ·sep, then take
                    // the momentum sum for every j on this diagonal.
                    let mut shifted_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
                    for l in 0..n {
                        let spec: Vec<Complex64> = col_spectra[l]
                            .iter()
                            .zip(&mult)
                            .map(|(s, m)| s * m)
                            .collect();
                        shifted_cols.push(centered_inverse(&spec, dp, hbar));
                    }
                    let vals: Vec<Complex64> = (0..n)
                        .map(|j| (0..n).map(|l| tw[l] * shifted_cols[l][j]).sum())
                        .collect();
                    (d, vals)
                })
                .collect();
            let mut m = OperatorMatrix::zeros(grid);
            for (d, vals) in tiles {
                for (j, v) in vals.into_iter().enumerate() {
                    let i = (j as i64 + d).rem_euclid(n as i64) as usize;
                    m.set(i, j, v);
                }
            }
            Ok(m)
        }
    }
}

/// τ-kernel operator for a fixed τ in [0, 1].
pub fn kernel_tau(symbol: &SymbolSource, tau: f64, grid: Grid1D) -> Result<OperatorMatrix> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidInput(format!("tau must lie in [0, 1], got {tau}")));
    }
    kernel_averaged(symbol, grid, &[tau], &[1.0])
}

/// Symmetric kernel operator (τ = 1/2).
pub fn kernel_weyl(symbol: &SymbolSource, grid: Grid1D) -> Result<OperatorMatrix> {
    kernel_averaged(symbol, grid, &[0.5], &[1.0])
}

/// Born–Jordan kernel operator: the first symbol slot averaged over τ with
/// the given rule on [0, 1].
pub fn kernel_bj(
    symbol: &SymbolSource,
    grid: Grid1D,
    rule: &QuadratureRule,
) -> Result<OperatorMatrix> {
    if rule.is_empty() {
        return Err(Error::InvalidInput("empty quadrature rule".into()));
    }
    kernel_averaged(symbol, grid, rule.nodes(), rule.weights())
}

/// Builds the operator for any scheme through the kernel route.
pub fn operator_for(
    symbol: &SymbolSource,
    scheme: &OpScheme,
    grid: Grid1D,
    rule: &QuadratureRule,
) -> Result<OperatorMatrix> {
    match scheme {
        OpScheme::Tau(t) => kernel_tau(symbol, *t, grid),
        OpScheme::Weyl => kernel_weyl(symbol, grid),
        OpScheme::BornJordan => kernel_bj(symbol, grid, rule),
    }
}

/// Heisenberg–Weyl translation
/// `(T_τ(z₀)ψ)(x) = e^{(i/ħ)(p₀x - (1-τ)p₀x₀)} ψ(x - x₀)`;
/// τ = 1/2 is the symmetric translation `T(z₀)`. Off-grid `x₀` uses the
/// band-limited translate.
pub fn heisenberg_weyl(z0: (f64, f64), tau: f64, grid: Grid1D) -> Result<OperatorMatrix> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidInput(format!("tau must lie in [0, 1], got {tau}")));
    }
    let (x0, p0) = z0;
    let n = grid.n();
    let dx = grid.dx();
    let hbar = grid.hbar();
    let global = Complex64::from_polar(1.0, -(1.0 - tau) * p0 * x0 / hbar);
    // Columns: the translate applied to each dx-normalized basis impulse.
    let cols: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut e = SampledSignal::zeros(grid);
            e.values_mut()[j] = Complex64::new(1.0 / dx, 0.0);
            shifted(&e, -x0).into_values()
        })
        .collect();
    let mut m = OperatorMatrix::zeros(grid);
    for i in 0..n {
        let phase = global * Complex64::from_polar(1.0, p0 * grid.x(i) / hbar);
        for j in 0..n {
            m.set(i, j, phase * cols[j][i]);
        }
    }
    Ok(m)
}

/// Operator from the translation ("twist") integral
/// `A = (2πħ)^{-1} ∬ a_σ(z) [Θ(z)] T(z) dz`, the filter present exactly
/// for the Born–Jordan scheme. Errors if the twisted symbol `a_σ` carries
/// more than 1e-3 of its peak on the grid boundary, since the wrapped
/// translations would then be meaningless.
pub fn op_from_twist(
    symbol: &SymbolSource,
    scheme: &OpScheme,
    grid: Grid1D,
) -> Result<OperatorMatrix> {
    let pg = grid.phase_grid();
    let sampled = symbol.sample(pg)?;
    let mut twisted = crate::fourier::symplectic_fourier(&sampled);
    let ratio = twisted.boundary_mass_ratio();
    if ratio > 1e-3 {
        return Err(Error::BoundaryMass { ratio, limit: 1e-3 });
    }
    if let OpScheme::BornJordan = scheme {
        twisted = twisted.pointwise_mul(&crate::distributions::theta_filter(pg))?;
    } else if let OpScheme::Tau(t) = scheme {
        if (t - 0.5).abs() > 1e-12 {
            return Err(Error::InvalidInput(
                "twist construction covers the symmetric and Born–Jordan schemes".into(),
            ));
        }
    }
    let n = grid.n();
    let dp = pg.dp();
    let hbar = grid.hbar();
    let half = (n / 2) as f64;
    let inv_sqrt = 1.0 / (2.0 * std::f64::consts::PI * hbar).sqrt();
    // For each translation offset x_a the z-integral over p collapses to
    // one inverse transform evaluated at x_i - x_a/2:
    // K[i, j(i,a)] += (2πħ)^{-1} Σ_b a_σ(x_a, p_b) e^{i p_b (x_i - x_a/2)/ħ} dp,
    // with j(i,a) = i - a + n/2 (mod n).
    let contribs: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let xa = grid.x(a);
            let row: Vec<Complex64> = (0..n)
                .map(|b| {
                    let p = (b as f64 - half) * dp;
                    twisted.at(a, b) * Complex64::from_polar(1.0, -p * xa / (2.0 * hbar))
                })
                .collect();
            let inv = centered_inverse(&row, dp, hbar);
            inv.into_iter().map(|v| v * inv_sqrt).collect()
        })
        .collect();
    let mut m = OperatorMatrix::zeros(grid);
    for a in 0..n {
        for i in 0..n {
            let j = (i + n + n / 2 - a) % n;
            let cur = m.at(i, j);
            m.set(i, j, cur + contribs[a][i]);
        }
    }
    Ok(m)
}

/// Exact position operator: multiplication by x.
pub fn position_operator(grid: Grid1D) -> OperatorMatrix {
    let vals: Vec<Complex64> = grid.xs().map(|x| Complex64::new(x, 0.0)).collect();
    OperatorMatrix::diagonal(grid, &vals).expect("length matches")
}

/// Exact momentum operator `-iħ d/dx`, diagonal in the transform domain.
pub fn momentum_operator(grid: Grid1D) -> OperatorMatrix {
    let n = grid.n();
    let dx = grid.dx();
    let dp = grid.dp();
    let hbar = grid.hbar();
    let half = (n / 2) as f64;
    let cols: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0 / dx, 0.0);
            let mut spec = centered_forward(&e, dx, hbar);
            for (k, v) in spec.iter_mut().enumerate() {
                *v *= (k as f64 - half) * dp;
            }
            centered_inverse(&spec, dp, hbar)
        })
        .collect();
    let mut m = OperatorMatrix::zeros(grid);
    for j in 0..n {
        for i in 0..n {
            m.set(i, j, cols[j][i]);
        }
    }
    m
}

/// Both sides of the symbol/distribution duality
/// `⟨A ψ, φ⟩ = ⟨a, Wig_scheme(ψ, φ)⟩`:
/// the left as the signal inner product after applying the operator, the
/// right as the bilinear phase-space pairing against the matching
/// distribution.
pub fn pairing_check(
    symbol: &SymbolSource,
    scheme: &OpScheme,
    psi: &SampledSignal,
    phi: &SampledSignal,
    rule: &QuadratureRule,
) -> Result<(Complex64, Complex64)> {
    let grid = *psi.grid();
    grid.check_same(phi.grid(), "pairing_check")?;
    let op = operator_for(symbol, scheme, grid, rule)?;
    let lhs = inner_product(&op.apply(psi)?, phi)?;
    let dist = match scheme {
        OpScheme::Tau(t) => crate::distributions::cross_wigner_tau(psi, phi, *t)?,
        OpScheme::Weyl => crate::distributions::cross_wigner(psi, phi)?,
        OpScheme::BornJordan => crate::distributions::bjw_quadrature(psi, phi, rule)?,
    };
    let sampled = symbol.sample(grid.phase_grid())?;
    let rhs = crate::grid::phase_pairing(&sampled, &dist)?;
    Ok((lhs, rhs))
}
