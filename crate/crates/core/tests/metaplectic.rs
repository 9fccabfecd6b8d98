//! Conjugating a phase-space translation by a metaplectic realization must
//! translate by the projected symplectic image of the displacement. This
//! ties the unitary realizations to the same matrices that the symbol
//! pullbacks use, through an operator family built in another module.

use bjq_core::metaplectic::{meta_matrix, meta_matrix_inverse, project, MetaGenerator};
use bjq_core::pseudodiff::heisenberg_weyl;
use bjq_core::signals;
use bjq_core::Grid1D;

#[test]
fn conjugated_translations_follow_the_projected_displacement() {
    let g = Grid1D::new(128, 9.0, 1.0).unwrap();
    let z = (0.8, -0.6);
    // The quarter turn wants Fourier-self-dual widths so neither the state
    // nor its transform clips the window; the scaling generator instead
    // wants room for a dilation by two. Pick the suite per generator.
    let self_dual = [
        signals::gaussian(g, 0.2, -0.3, 1.0).unwrap(),
        signals::gaussian(g, -0.1, 0.4, 1.0).unwrap(),
    ];
    let narrow = [
        signals::gaussian(g, 0.2, -0.3, 0.64).unwrap(),
        signals::gaussian(g, -0.1, 0.4, 0.64).unwrap(),
    ];
    let gens = [
        MetaGenerator::J,
        MetaGenerator::ML { l: 2.0, m: 0 },
        MetaGenerator::VP { p: 1.0 },
    ];
    for gen in &gens {
        let states =
            if matches!(gen, MetaGenerator::ML { .. }) { &narrow } else { &self_dual };
        let m = meta_matrix(gen, g).unwrap();
        let m_inv = meta_matrix_inverse(gen, g).unwrap();
        let translate = heisenberg_weyl(z, 0.5, g).unwrap();
        let (zx, zp) = project(gen).apply(z.0, z.1);
        let moved = heisenberg_weyl((zx, zp), 0.5, g).unwrap();
        let lhs = m.compose(&translate).unwrap().compose(&m_inv).unwrap();
        for psi in states {
            let a = lhs.apply(psi).unwrap();
            let b = moved.apply(psi).unwrap();
            let num: f64 = a
                .values()
                .iter()
                .zip(b.values())
                .map(|(u, v)| (u - v).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let den: f64 =
                b.values().iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            let rel = num / den;
            assert!(rel < 1e-6, "{gen:?}: rel = {rel:.3e}");
        }
    }
}
