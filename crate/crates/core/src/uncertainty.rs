//! Mixed states and the second-moment inequalities they obey.
//!
//! A mixture is a convex combination of orthonormal sampled states, so
//! every trace reduces to a finite weighted sum over the mixture and all
//! statistics are plain inner products against operator matrices. The
//! product inequality `Var(A)Var(B) >= Cov_sym^2 - (1/4)<[A,B]>^2` is
//! evaluated on those numbers, and its compact matrix form adds the
//! rotation generator to the covariance matrix and inspects the lowest
//! eigenvalue.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::distributions::{bjw_filtered, cross_wigner_tau, wigner};
use crate::error::{Error, Result};
use crate::grid::{inner_product, phase_pairing, Grid1D, PhaseFunction, SampledSignal};
use crate::pseudodiff::{
    momentum_operator, position_operator, relative_frobenius_distance, OpScheme, OperatorMatrix,
    SymbolSource,
};

const WEIGHT_SUM_TOL: f64 = 1e-10;
const GRAM_TOL: f64 = 1e-8;
const HERMITIAN_TOL: f64 = 1e-8;

/// Convex combination of orthonormal sampled states.
#[derive(Clone)]
pub struct MixedState {
    weights: Vec<f64>,
    states: Vec<SampledSignal>,
}

impl MixedState {
    /// Validates the invariants instead of assuming them: nonnegative
    /// weights with unit sum, and a Gram matrix within [`GRAM_TOL`] of
    /// the identity.
    pub fn new(weights: Vec<f64>, states: Vec<SampledSignal>) -> Result<Self> {
        if weights.is_empty() || weights.len() != states.len() {
            return Err(Error::InvalidInput(
                "mixture needs matching nonempty weight and state lists".into(),
            ));
        }
        let grid = *states[0].grid();
        for s in &states[1..] {
            grid.check_same(s.grid(), "MixedState::new")?;
        }
        if weights.iter().any(|w| *w < 0.0) {
            return Err(Error::InvalidInput("mixture weights must be nonnegative".into()));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidInput(format!(
                "mixture weights sum to {sum:.12}, not 1"
            )));
        }
        let mut residual = 0.0_f64;
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let g = inner_product(a, b)?;
                let target = if i == j { 1.0 } else { 0.0 };
                residual = residual.max((g - target).norm());
            }
        }
        if residual > GRAM_TOL {
            return Err(Error::InvalidInput(format!(
                "mixture states are not orthonormal, Gram residual {residual:.3e}"
            )));
        }
        Ok(Self { weights, states })
    }

    /// Single-state mixture with the signal normalized first.
    pub fn pure(psi: &SampledSignal) -> Result<Self> {
        if psi.norm() == 0.0 {
            return Err(Error::InvalidInput("cannot normalize the zero signal".into()));
        }
        Self::new(vec![1.0], vec![psi.normalized()])
    }

    /// Builds a valid mixture out of a merely independent family by
    /// modified Gram-Schmidt with a second sweep, then re-checks the
    /// invariants. A dependent family surfaces as a vanishing remainder
    /// and is rejected.
    pub fn orthonormalized(weights: Vec<f64>, states: Vec<SampledSignal>) -> Result<Self> {
        let mut ortho: Vec<SampledSignal> = Vec::with_capacity(states.len());
        for raw in states {
            let mut v = raw;
            for _ in 0..2 {
                for u in &ortho {
                    let c = inner_product(&v, u)?;
                    let uv = u.values();
                    for (a, b) in v.values_mut().iter_mut().zip(uv) {
                        *a -= c * b;
                    }
                }
            }
            if v.norm() < 1e-6 {
                return Err(Error::InvalidInput(
                    "mixture states are linearly dependent".into(),
                ));
            }
            ortho.push(v.normalized());
        }
        Self::new(weights, ortho)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[SampledSignal] {
        &self.states
    }

    pub fn grid(&self) -> &Grid1D {
        self.states[0].grid()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Operator matrix tagged with whether it passed the self-adjointness
/// test at construction.
#[derive(Clone)]
pub struct Observable {
    matrix: OperatorMatrix,
    hermitian: bool,
}

impl Observable {
    pub fn new(matrix: OperatorMatrix) -> Self {
        let hermitian = matrix.frobenius_norm() == 0.0
            || relative_frobenius_distance(&matrix.adjoint(), &matrix)
                .map(|d| d <= HERMITIAN_TOL)
                .unwrap_or(false);
        Self { matrix, hermitian }
    }

    /// Like [`Observable::new`] but refuses a matrix that fails the
    /// self-adjointness test.
    pub fn hermitian(matrix: OperatorMatrix) -> Result<Self> {
        let o = Self::new(matrix);
        if !o.hermitian {
            return Err(Error::InvalidInput("matrix is not hermitian".into()));
        }
        Ok(o)
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }
}

/// `Σ_j λ_j (A ψ_j, ψ_j)`. Real within roundoff for hermitian input.
pub fn expectation(state: &MixedState, a: &Observable) -> Result<Complex64> {
    state.grid().check_same(a.matrix.grid(), "expectation")?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (w, psi) in state.weights.iter().zip(&state.states) {
        acc += w * inner_product(&a.matrix.apply(psi)?, psi)?;
    }
    Ok(acc)
}

/// `<A^2> - <A>^2` with the square taken as a dense matrix product.
pub fn variance(state: &MixedState, a: &Observable) -> Result<f64> {
    if !a.hermitian {
        return Err(Error::InvalidInput("variance needs a hermitian observable".into()));
    }
    let squared = Observable::new(a.matrix.compose(&a.matrix)?);
    let mean = expectation(state, a)?.re;
    Ok(expectation(state, &squared)?.re - mean * mean)
}

/// `Cov(A,B) = <AB> - <A><B>`, complex in general.
pub fn covariance(state: &MixedState, a: &Observable, b: &Observable) -> Result<Complex64> {
    let product = Observable::new(a.matrix.compose(&b.matrix)?);
    Ok(expectation(state, &product)? - expectation(state, a)? * expectation(state, b)?)
}

/// Real part of the symmetrized covariance `(Cov(A,B) + Cov(B,A))/2`.
pub fn sym_covariance(state: &MixedState, a: &Observable, b: &Observable) -> Result<f64> {
    let ab = covariance(state, a, b)?;
    let ba = covariance(state, b, a)?;
    Ok(((ab + ba) / 2.0).re)
}

/// Everything the product inequality touches, in one report.
///
/// `lhs = Var(A)·Var(B)` and `rhs = Cov_sym^2 - (1/4)<[A,B]>^2`,
/// the last term entering with a plus sign once the purely imaginary
/// commutator expectation is squared.
#[derive(Clone, Debug)]
pub struct CovarianceReport {
    pub var_a: f64,
    pub var_b: f64,
    pub cov: Complex64,
    pub cov_sym: f64,
    pub commutator_expectation: Complex64,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

pub fn rs_check(state: &MixedState, a: &Observable, b: &Observable) -> Result<CovarianceReport> {
    if !a.hermitian || !b.hermitian {
        return Err(Error::InvalidInput(
            "the product inequality is stated for hermitian observables".into(),
        ));
    }
    let var_a = variance(state, a)?;
    let var_b = variance(state, b)?;
    let cov = covariance(state, a, b)?;
    let cov_ba = covariance(state, b, a)?;
    let cov_sym = ((cov + cov_ba) / 2.0).re;
    // <A><B> cancels between the two orderings.
    let comm = cov - cov_ba;
    let lhs = var_a * var_b;
    let rhs = cov_sym * cov_sym - 0.25 * (comm * comm).re;
    let scale = 1.0_f64.max(lhs.abs()).max(rhs.abs());
    Ok(CovarianceReport {
        var_a,
        var_b,
        cov,
        cov_sym,
        commutator_expectation: comm,
        lhs,
        rhs,
        satisfied: lhs >= rhs - 1e-8 * scale,
    })
}

/// Position-momentum covariance matrix `[[Var X, Cov_sym], [Cov_sym, Var P]]`.
pub fn covariance_matrix(state: &MixedState) -> Result<[[f64; 2]; 2]> {
    let g = *state.grid();
    let x = Observable::hermitian(position_operator(g))?;
    let p = Observable::hermitian(momentum_operator(g))?;
    let vx = variance(state, &x)?;
    let vp = variance(state, &p)?;
    let c = sym_covariance(state, &x, &p)?;
    Ok([[vx, c], [c, vp]])
}

/// Lowest eigenvalue of `Σ + (iħ/2)J` and whether it clears the
/// positivity threshold `-1e-10·tr Σ`. The matrix is hermitian with the
/// off-diagonal `b + iħ/2`, so the eigenvalues are
/// `(a+c)/2 ∓ sqrt((a-c)^2/4 + b^2 + ħ^2/4)`.
pub fn rs_matrix_check(sigma: [[f64; 2]; 2], hbar: f64) -> Result<(f64, bool)> {
    let skew = (sigma[0][1] - sigma[1][0]).abs();
    let scale = 1.0_f64.max(sigma[0][1].abs()).max(sigma[1][0].abs());
    if skew > 1e-12 * scale {
        return Err(Error::InvalidInput("covariance matrix must be symmetric".into()));
    }
    let (a, b, c) = (sigma[0][0], sigma[0][1], sigma[1][1]);
    let radius = ((a - c) * (a - c) / 4.0 + b * b + hbar * hbar / 4.0).sqrt();
    let min_eig = (a + c) / 2.0 - radius;
    Ok((min_eig, min_eig >= -1e-10 * (a + c)))
}

/// Phase-space symbol of the density matrix under the given scheme:
/// `(2πħ) Σ_j λ_j W_scheme(ψ_j)`. Real for the symmetric schemes.
pub fn state_symbol(state: &MixedState, scheme: &OpScheme) -> Result<PhaseFunction> {
    let hbar = state.grid().hbar();
    let mut acc: Option<PhaseFunction> = None;
    for (w, psi) in state.weights.iter().zip(&state.states) {
        let dist = match scheme {
            OpScheme::Tau(t) => cross_wigner_tau(psi, psi, *t)?,
            OpScheme::Weyl => wigner(psi)?,
            OpScheme::BornJordan => bjw_filtered(psi, psi)?,
        };
        let term = dist.scale(Complex64::new(2.0 * PI * hbar * w, 0.0));
        acc = Some(match acc {
            None => term,
            Some(f) => f.add(&term)?,
        });
    }
    Ok(acc.expect("mixture is nonempty"))
}

/// Expectation through the phase-space pairing `∫ a·ρ dz / (2πħ)`.
/// Agrees with the operator route for the matching scheme.
pub fn expectation_via_symbol(
    state: &MixedState,
    a: &SymbolSource,
    scheme: &OpScheme,
) -> Result<f64> {
    let rho = state_symbol(state, scheme)?;
    let sampled = a.sample(*rho.grid())?;
    let hbar = state.grid().hbar();
    Ok((phase_pairing(&sampled, &rho)? / (2.0 * PI * hbar)).re)
}

/// Image of the mixture under a unitary matrix: each component state is
/// mapped and the weights kept, which is conjugation of the density
/// matrix. The orthonormality check runs again on the images.
pub fn conjugate_state(state: &MixedState, s: &OperatorMatrix) -> Result<MixedState> {
    let mapped: Result<Vec<SampledSignal>> =
        state.states.iter().map(|psi| s.apply(psi)).collect();
    MixedState::new(state.weights.clone(), mapped?)
}
