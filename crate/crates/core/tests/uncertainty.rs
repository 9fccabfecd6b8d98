//! Randomized mixtures against the second-moment inequalities. The states
//! are random ladder combinations pushed through the orthonormalizing
//! constructor, so every draw is a legitimate density matrix; both the
//! scalar product inequality and the matrix form must hold on all of them.

use bjq_core::grid::SampledSignal;
use bjq_core::pseudodiff::{momentum_operator, position_operator};
use bjq_core::signals;
use bjq_core::uncertainty::{
    covariance_matrix, rs_check, rs_matrix_check, MixedState, Observable,
};
use bjq_core::Grid1D;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_state(rng: &mut ChaCha8Rng, basis: &[SampledSignal], grid: Grid1D) -> SampledSignal {
    let mut out = SampledSignal::zeros(grid);
    for b in basis {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        for (o, v) in out.values_mut().iter_mut().zip(b.values()) {
            *o += c * v;
        }
    }
    out
}

#[test]
fn randomized_mixtures_respect_both_inequality_forms() {
    let g = Grid1D::new(128, 9.0, 1.0).unwrap();
    let basis: Vec<SampledSignal> = (0..6).map(|k| signals::hermite(g, k)).collect();
    let x_op = Observable::hermitian(position_operator(g)).unwrap();
    let p_op = Observable::hermitian(momentum_operator(g)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    for trial in 0..20 {
        let m = rng.gen_range(1..=3);
        let states: Vec<SampledSignal> =
            (0..m).map(|_| random_state(&mut rng, &basis, g)).collect();
        let mut weights: Vec<f64> = (0..m).map(|_| rng.gen_range(0.1..1.0)).collect();
        let total: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= total;
        }
        let state = MixedState::orthonormalized(weights, states).unwrap();

        let report = rs_check(&state, &x_op, &p_op).unwrap();
        assert!(
            report.satisfied,
            "trial {trial}: lhs = {:.6e} < rhs = {:.6e}",
            report.lhs, report.rhs
        );
        // The commutator term alone already bounds the product from below.
        assert!(report.lhs >= 0.25 * g.hbar().powi(2) - 1e-8);

        let sigma = covariance_matrix(&state).unwrap();
        let (min_eig, passed) = rs_matrix_check(sigma, g.hbar()).unwrap();
        assert!(passed, "trial {trial}: min eigenvalue {min_eig:.6e}");
    }
}
