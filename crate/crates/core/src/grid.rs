//! Symmetric position grid, its discrete dual, and sampled containers.
//!
//! The position grid has `n` (even) points `x_j = (j - n/2)·dx`, so index
//! `n/2` sits exactly at the origin and `x_min = -half_length`. The momentum
//! grid is the exact discrete dual: `dp = 2πħ/(n·dx)`, `p_l = (l - n/2)·dp`.
//! With this pairing `p_l · x_j / ħ = 2π (l - n/2)(j - n/2) / n`, which is
//! what makes the centered transforms in [`crate::fourier`] exactly unitary
//! on the grid.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Even-length symmetric position grid together with the value of ħ.
///
/// ħ lives here because the dual spacing depends on it; two grids with the
/// same geometry but different ħ are deliberately incompatible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    n: usize,
    dx: f64,
    hbar: f64,
}

impl Grid1D {
    pub fn new(n: usize, half_length: f64, hbar: f64) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("n must be even and >= 2, got {n}")));
        }
        if !half_length.is_finite() || half_length <= 0.0 {
            return Err(Error::InvalidInput(format!("half_length must be positive, got {half_length}")));
        }
        if !hbar.is_finite() || hbar <= 0.0 {
            return Err(Error::InvalidInput(format!("hbar must be positive, got {hbar}")));
        }
        Ok(Self { n, dx: 2.0 * half_length / n as f64, hbar })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn half_length(&self) -> f64 {
        self.dx * (self.n / 2) as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        (j as f64 - (self.n / 2) as f64) * self.dx
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.x(j))
    }

    /// Dual spacing `2πħ/(n·dx)`.
    pub fn dp(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.hbar / (self.n as f64 * self.dx)
    }

    pub fn phase_grid(&self) -> PhaseGrid {
        PhaseGrid { space: *self }
    }

    pub fn check_same(&self, other: &Grid1D, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "{what}: (n={}, dx={:.6e}, hbar={:.6e}) vs (n={}, dx={:.6e}, hbar={:.6e})",
                self.n, self.dx, self.hbar, other.n, other.dx, other.hbar
            )))
        }
    }
}

/// Position grid paired with its discrete dual momentum grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid {
    space: Grid1D,
}

/// Builds the phase grid for `n` points on `[-half_length, half_length)`.
pub fn make_phase_grid(n: usize, half_length: f64, hbar: f64) -> Result<PhaseGrid> {
    Ok(Grid1D::new(n, half_length, hbar)?.phase_grid())
}

impl PhaseGrid {
    pub fn space(&self) -> &Grid1D {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn dx(&self) -> f64 {
        self.space.dx
    }

    pub fn dp(&self) -> f64 {
        self.space.dp()
    }

    pub fn hbar(&self) -> f64 {
        self.space.hbar
    }

    pub fn x(&self, j: usize) -> f64 {
        self.space.x(j)
    }

    pub fn p(&self, l: usize) -> f64 {
        (l as f64 - (self.n() / 2) as f64) * self.dp()
    }

    /// Area element of one phase-space cell.
    pub fn dz(&self) -> f64 {
        self.dx() * self.dp()
    }
}

/// Complex samples on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn from_values(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::InvalidInput(format!(
                "signal length {} does not match grid n = {}",
                values.len(),
                grid.n()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.xs().map(f).collect();
        Self { grid, values }
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.n()] }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// L² norm with the dx quadrature weight.
    pub fn norm(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (s * self.grid.dx()).sqrt()
    }

    /// Rescales to unit L² norm. No-op on the zero signal.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        let values = self.values.iter().map(|v| v / n).collect();
        Self { grid: self.grid, values }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Edge amplitude relative to the peak amplitude. The periodic
    /// transforms silently wrap anything living here, so callers treat
    /// ratios above ~1e-6 as a sign the window is too small.
    pub fn boundary_mass_ratio(&self) -> f64 {
        let peak = self.max_abs();
        if peak == 0.0 {
            return 0.0;
        }
        let edge = self.values[0].norm().max(self.values[self.grid.n() - 1].norm());
        edge / peak
    }
}

/// Conjugate-linear-in-the-second-slot inner product `∫ f(x) conj(g(x)) dx`.
pub fn inner_product(f: &SampledSignal, g: &SampledSignal) -> Result<Complex64> {
    f.grid.check_same(&g.grid, "inner_product")?;
    let s: Complex64 = f.values.iter().zip(&g.values).map(|(a, b)| a * b.conj()).sum();
    Ok(s * f.grid.dx())
}

/// Complex samples on a [`PhaseGrid`], row-major with x as the outer index:
/// entry `(j, l)` holds the value at `(x_j, p_l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFunction {
    grid: PhaseGrid,
    values: Vec<Complex64>,
}

impl PhaseFunction {
    pub fn from_values(grid: PhaseGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n() * grid.n() {
            return Err(Error::InvalidInput(format!(
                "phase function length {} does not match n^2 = {}",
                values.len(),
                grid.n() * grid.n()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: PhaseGrid, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let n = grid.n();
        let mut values = Vec::with_capacity(n * n);
        for j in 0..n {
            let x = grid.x(j);
            for l in 0..n {
                values.push(f(x, grid.p(l)));
            }
        }
        Self { grid, values }
    }

    pub fn zeros(grid: PhaseGrid) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.n() * grid.n()] }
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn at(&self, j: usize, l: usize) -> Complex64 {
        self.values[j * self.grid.n() + l]
    }

    pub fn set(&mut self, j: usize, l: usize, v: Complex64) {
        let n = self.grid.n();
        self.values[j * n + l] = v;
    }

    pub fn row(&self, j: usize) -> &[Complex64] {
        let n = self.grid.n();
        &self.values[j * n..(j + 1) * n]
    }

    /// `∬ f dz` as a plain Riemann sum over the grid.
    pub fn integral(&self) -> Complex64 {
        let s: Complex64 = self.values.iter().sum();
        s * self.grid.dz()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_im(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_re(&self) -> f64 {
        self.values.iter().map(|v| v.re.abs()).fold(0.0, f64::max)
    }

    /// L² norm over phase space with the dz weight.
    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (s * self.grid.dz()).sqrt()
    }

    /// Largest amplitude on the outermost ring of grid points.
    pub fn boundary_mass_ratio(&self) -> f64 {
        let peak = self.max_abs();
        if peak == 0.0 {
            return 0.0;
        }
        let n = self.grid.n();
        let mut edge: f64 = 0.0;
        for j in 0..n {
            edge = edge.max(self.at(j, 0).norm()).max(self.at(j, n - 1).norm());
            edge = edge.max(self.at(0, j).norm()).max(self.at(n - 1, j).norm());
        }
        edge / peak
    }

    /// Pointwise map.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| f(*v)).collect() }
    }

    /// Pointwise product with another phase function on the same grid.
    pub fn pointwise_mul(&self, other: &PhaseFunction) -> Result<Self> {
        self.grid.space().check_same(other.grid.space(), "pointwise_mul")?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(Self { grid: self.grid, values })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &PhaseFunction) -> Result<Self> {
        self.grid.space().check_same(other.grid.space(), "add")?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { grid: self.grid, values })
    }

    pub fn sub(&self, other: &PhaseFunction) -> Result<Self> {
        self.grid.space().check_same(other.grid.space(), "sub")?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(Self { grid: self.grid, values })
    }
}

/// Bilinear phase-space pairing `∬ a(z) f(z) dz`. No conjugation on either
/// slot; conjugation is always written explicitly at call sites.
pub fn phase_pairing(a: &PhaseFunction, f: &PhaseFunction) -> Result<Complex64> {
    a.grid.space().check_same(f.grid.space(), "phase_pairing")?;
    let s: Complex64 = a.values.iter().zip(&f.values).map(|(u, v)| u * v).sum();
    Ok(s * a.grid.dz())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_symmetric_and_dual() {
        let g = Grid1D::new(256, 10.0, 1.0).unwrap();
        assert_eq!(g.x(128), 0.0);
        assert_eq!(g.x(0), -10.0);
        assert!((g.dx() - 0.078125).abs() < 1e-15);
        let pg = g.phase_grid();
        // dp * dx * n = 2 pi hbar exactly
        let res = pg.dp() * g.dx() * 256.0 - 2.0 * std::f64::consts::PI;
        assert!(res.abs() < 1e-12);
        assert_eq!(pg.p(128), 0.0);
    }

    #[test]
    fn odd_or_tiny_n_rejected() {
        assert!(Grid1D::new(255, 10.0, 1.0).is_err());
        assert!(Grid1D::new(0, 10.0, 1.0).is_err());
        assert!(Grid1D::new(256, -1.0, 1.0).is_err());
        assert!(Grid1D::new(256, 10.0, 0.0).is_err());
    }

    #[test]
    fn mismatched_grids_refuse_to_pair() {
        let a = Grid1D::new(64, 10.0, 1.0).unwrap();
        let b = Grid1D::new(64, 10.0, 0.5).unwrap();
        let f = SampledSignal::zeros(a);
        let g = SampledSignal::zeros(b);
        assert!(matches!(inner_product(&f, &g), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn boundary_ratio_flags_wide_signals() {
        let g = Grid1D::new(128, 4.0, 1.0).unwrap();
        let narrow = SampledSignal::from_fn(g, |x| Complex64::new((-x * x).exp(), 0.0));
        assert!(narrow.boundary_mass_ratio() < 1e-6);
        let wide = SampledSignal::from_fn(g, |x| Complex64::new((-x * x / 64.0).exp(), 0.0));
        assert!(wide.boundary_mass_ratio() > 1e-2);
    }

    #[test]
    fn pairing_is_bilinear_not_sesquilinear() {
        let g = Grid1D::new(16, 4.0, 1.0).unwrap().phase_grid();
        let a = PhaseFunction::from_fn(g, |_, _| Complex64::new(0.0, 1.0));
        let b = PhaseFunction::from_fn(g, |_, _| Complex64::new(0.0, 1.0));
        let v = phase_pairing(&a, &b).unwrap();
        // i * i = -1 times the cell area total
        assert!(v.re < 0.0);
        assert!(v.im.abs() < 1e-12);
    }
}
