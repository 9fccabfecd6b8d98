//! Reference signals used throughout the test surface and the CLI.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Grid1D, SampledSignal};

/// Normalized Gaussian wave packet centered at `(x0, p0)` with width `sigma`
/// (in units of `sqrt(ħ)`): `(πħ)^{-1/4} σ^{-1/2} e^{-(x-x0)²/(2σ²ħ)} e^{i p0 x/ħ}`.
pub fn gaussian(grid: Grid1D, x0: f64, p0: f64, sigma: f64) -> Result<SampledSignal> {
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::InvalidInput(format!("sigma must be positive, got {sigma}")));
    }
    let h = grid.hbar();
    let c = (std::f64::consts::PI * h).powf(-0.25) / sigma.sqrt();
    Ok(SampledSignal::from_fn(grid, |x| {
        let u = x - x0;
        let mag = c * (-u * u / (2.0 * sigma * sigma * h)).exp();
        mag * Complex64::from_polar(1.0, p0 * x / h)
    }))
}

/// k-th Hermite function
/// `h_k(x) = (πħ)^{-1/4} (2^k k!)^{-1/2} H_k(x/√ħ) e^{-x²/2ħ}`,
/// evaluated with the three-term recurrence for the physicists' polynomials.
pub fn hermite(grid: Grid1D, k: usize) -> SampledSignal {
    let h = grid.hbar();
    let norm = {
        let mut f = 1.0f64;
        for j in 1..=k {
            f *= 2.0 * j as f64;
        }
        (std::f64::consts::PI * h).powf(-0.25) / f.sqrt()
    };
    SampledSignal::from_fn(grid, |x| {
        let u = x / h.sqrt();
        let mut hm1 = 0.0f64;
        let mut hk = 1.0f64;
        for j in 0..k {
            let next = 2.0 * u * hk - 2.0 * j as f64 * hm1;
            hm1 = hk;
            hk = next;
        }
        Complex64::new(norm * hk * (-u * u / 2.0).exp(), 0.0)
    })
}

/// Normalized chirped Gaussian `(πħ)^{-1/4} e^{-(1 + i·rate) x²/(2ħ)}`.
/// The quadratic phase tilts the distribution in phase space without
/// changing `|ψ|²`.
pub fn chirp(grid: Grid1D, rate: f64) -> SampledSignal {
    let h = grid.hbar();
    let c = (std::f64::consts::PI * h).powf(-0.25);
    SampledSignal::from_fn(grid, |x| {
        let arg = Complex64::new(1.0, rate) * (-x * x / (2.0 * h));
        c * arg.exp()
    })
}

/// Two opposite momentum tones under a common Gaussian envelope,
/// `g(x)(e^{i p0 x/ħ} + e^{-i p0 x/ħ})`, normalized. Its Wigner transform
/// carries a ghost beat near p = 0 between the two genuine tones.
pub fn two_tone(grid: Grid1D, p0: f64, sigma: f64) -> Result<SampledSignal> {
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::InvalidInput(format!("sigma must be positive, got {sigma}")));
    }
    let h = grid.hbar();
    let c = (std::f64::consts::PI * h).powf(-0.25) / sigma.sqrt();
    let raw = SampledSignal::from_fn(grid, |x| {
        let mag = c * (-x * x / (2.0 * sigma * sigma * h)).exp();
        Complex64::new(mag * 2.0 * (p0 * x / h).cos(), 0.0)
    });
    Ok(raw.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::inner_product;

    #[test]
    fn gaussian_is_normalized() {
        let g = Grid1D::new(256, 10.0, 1.0).unwrap();
        for (x0, p0, s) in [(0.0, 0.0, 1.0), (1.5, -2.0, 0.7), (-0.5, 3.0, 1.4)] {
            let psi = gaussian(g, x0, p0, s).unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hermites_are_orthonormal() {
        let g = Grid1D::new(256, 10.0, 1.0).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                let ha = hermite(g, a);
                let hb = hermite(g, b);
                let ip = inner_product(&ha, &hb).unwrap();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ip.re - expect).abs() < 1e-10, "({a},{b}) -> {ip}");
                assert!(ip.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hermite_zero_is_unit_gaussian() {
        let g = Grid1D::new(128, 8.0, 0.5).unwrap();
        let h0 = hermite(g, 0);
        let gauss = gaussian(g, 0.0, 0.0, 1.0).unwrap();
        for (a, b) in h0.values().iter().zip(gauss.values()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn chirp_and_two_tone_are_normalized() {
        let g = Grid1D::new(256, 10.0, 1.0).unwrap();
        assert!((chirp(g, 1.0).norm() - 1.0).abs() < 1e-12);
        assert!((two_tone(g, 3.0, 1.0).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_widths_rejected() {
        let g = Grid1D::new(64, 8.0, 1.0).unwrap();
        assert!(gaussian(g, 0.0, 0.0, 0.0).is_err());
        assert!(two_tone(g, 3.0, -1.0).is_err());
    }
}
