//! Cross-route checks for the operator builders: the symbolic ordering
//! results against the numeric kernel machinery, and the symbol pairing
//! identity across schemes.

mod common;

use bjq_core::algebra::{quantize_monomial, OpPoly, QuantScheme};
use bjq_core::grid::inner_product;
use bjq_core::pseudodiff::{
    momentum_operator, operator_for, pairing_check, position_operator, OperatorMatrix, OpScheme,
    SymbolSource,
};
use bjq_core::quadrature::gauss_legendre;
use bjq_core::signals;
use bjq_core::{Grid1D, SampledSignal};
use num_complex::Complex64;

fn grid() -> Grid1D {
    Grid1D::new(128, 9.0, 1.0).unwrap()
}

/// Matrix realization of a normal-ordered polynomial: each word X^a P^b
/// becomes pos^a · mom^b with its numeric coefficient.
fn realize(poly: &OpPoly, grid: Grid1D) -> OperatorMatrix {
    let pos = position_operator(grid);
    let mom = momentum_operator(grid);
    let hbar = grid.hbar();
    let mut out = OperatorMatrix::zeros(grid);
    for ((a, b), _) in poly.terms() {
        let (re, im) = poly.coeff_at(a, b, hbar);
        let mut word = OperatorMatrix::identity(grid);
        for _ in 0..b {
            word = mom.compose(&word).unwrap();
        }
        for _ in 0..a {
            word = pos.compose(&word).unwrap();
        }
        out = out.add(&word.scale(Complex64::new(re, im))).unwrap();
    }
    out
}

fn expectation(m: &OperatorMatrix, psi: &SampledSignal) -> Complex64 {
    inner_product(&m.apply(psi).unwrap(), psi).unwrap()
}

/// The quartic x²p² separates the orderings by a pure constant. Both the
/// exact algebra and the sampled kernels must see the same gap, and the
/// kernel-route operators must agree with the realized normal forms on
/// concentrated states.
#[test]
fn quartic_ordering_gap_bridges_the_symbolic_and_kernel_routes() {
    let g = grid();
    let hbar = g.hbar();
    let rule = gauss_legendre(32).unwrap();
    let symbol = SymbolSource::analytic(|x, p| Complex64::new(x * x * p * p, 0.0));

    let bj_poly = quantize_monomial(2, 2, &QuantScheme::BornJordan).unwrap();
    let weyl_poly = quantize_monomial(2, 2, &QuantScheme::Weyl).unwrap();
    let gap_poly = bj_poly.sub(&weyl_poly);
    // The difference is a multiple of the identity: -ħ²/6.
    let terms: Vec<_> = gap_poly.terms().map(|(w, _)| w).collect();
    assert_eq!(terms, vec![(0, 0)]);
    let (gap_re, gap_im) = gap_poly.coeff_at(0, 0, hbar);
    assert!((gap_re + hbar * hbar / 6.0).abs() < 1e-15);
    assert_eq!(gap_im, 0.0);

    let op_bj = operator_for(&symbol, &OpScheme::BornJordan, g, &rule).unwrap();
    let op_weyl = operator_for(&symbol, &OpScheme::Weyl, g, &rule).unwrap();
    let diff = op_bj.sub(&op_weyl).unwrap();

    // The ladder state's e^{-x²/2} tails reach the periodic wrap against
    // the operator's slowly decaying far rows, so it gets a looser bound
    // than the tighter gaussian.
    let states = [
        (signals::gaussian(g, 0.3, -0.4, 0.8).unwrap(), 1e-10),
        (signals::hermite(g, 2), 5e-6),
    ];
    for (psi, tol) in &states {
        let norm2 = psi.norm().powi(2);
        let got = expectation(&diff, psi) / norm2;
        let err = (got - Complex64::new(gap_re, gap_im)).norm();
        assert!(err < *tol, "numeric gap off by {err:.3e}");

        // Kernel route against the realized exact normal form, per scheme.
        for (op, poly) in [(&op_bj, &bj_poly), (&op_weyl, &weyl_poly)] {
            let via_kernel = expectation(op, psi);
            let via_algebra = expectation(&realize(poly, g), psi);
            let rel = (via_kernel - via_algebra).norm() / via_algebra.norm();
            assert!(rel < *tol, "bridge gap {rel:.3e}");
        }
    }
}

/// `⟨Op(a)ψ, φ⟩ = ⟨⟨a, Wig_scheme(ψ,φ)⟩⟩` across symbols, pairs, and the
/// three scheme families. Operator and distribution sides are built by
/// unrelated code paths.
#[test]
fn pairing_identity_holds_across_schemes_symbols_and_pairs() {
    let g = grid();
    let rule = gauss_legendre(32).unwrap();
    let symbols = [
        SymbolSource::analytic(|x, p| {
            Complex64::new((-(x * x + p * p) / 2.0).exp(), 0.0)
        }),
        SymbolSource::analytic(|x, p| {
            Complex64::new(x * p * (-(x * x + p * p) / 4.0).exp(), 0.0)
        }),
        SymbolSource::analytic(|x, p| {
            Complex64::new(x, p) * (-(x * x + p * p) / 6.0).exp()
        }),
    ];
    // The last pair is offset so that no symbol/pair combination vanishes
    // by parity; each pairing is then O(0.01..1) and a plain relative
    // comparison is meaningful.
    let pairs = [
        (signals::gaussian(g, 0.4, -0.6, 0.9).unwrap(), signals::hermite(g, 1)),
        (signals::hermite(g, 2), signals::gaussian(g, -0.5, 0.7, 1.1).unwrap()),
        (
            signals::two_tone(g, 2.0, 0.8).unwrap(),
            signals::gaussian(g, 0.3, 0.5, 1.0).unwrap(),
        ),
    ];
    for symbol in &symbols {
        for (psi, phi) in &pairs {
            for scheme in [OpScheme::Tau(0.3), OpScheme::Weyl, OpScheme::BornJordan] {
                let (lhs, rhs) = pairing_check(symbol, &scheme, psi, phi, &rule).unwrap();
                assert!(lhs.norm() > 1e-3, "degenerate fixture: |lhs| = {:.3e}", lhs.norm());
                let rel = (lhs - rhs).norm() / lhs.norm().max(rhs.norm());
                assert!(rel < 1e-6, "{scheme:?}: rel = {rel:.3e}");
            }
        }
    }
}
