//! Randomized structural laws for the exact operator algebra: rewrite
//! confluence, printer/parser inversion, adjoint algebra, and the adjoint
//! symmetry of the quantization schemes.

use bjq_core::algebra::{
    format_op, normal_order_word, normal_order_word_with, parse_op, quantize_monomial, GaussRat,
    HbarPoly, Letter, OpPoly, QuantScheme,
};
use num::BigRational;
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::X), Just(Letter::P)]
}

fn gauss_rat() -> impl Strategy<Value = GaussRat> {
    ((-6i64..=6), (1i64..=4), (-6i64..=6), (1i64..=4)).prop_map(|(rn, rd, im_n, im_d)| {
        let re = GaussRat::from_ratio(rn, rd);
        let im = GaussRat::i().mul(&GaussRat::from_ratio(im_n, im_d));
        re.add(&im)
    })
}

fn op_poly() -> impl Strategy<Value = OpPoly> {
    prop::collection::vec(((0u32..4), (0u32..4), (0u32..3), gauss_rat()), 0..5).prop_map(
        |terms| {
            let mut out = OpPoly::zero();
            for (xe, pe, he, c) in terms {
                out.add_assign(&OpPoly::monomial(xe, pe, HbarPoly::term(c, he)));
            }
            out
        },
    )
}

proptest! {
    /// Any rewrite order reaches the one normal form.
    #[test]
    fn word_rewriting_is_confluent(
        word in prop::collection::vec(letter(), 0..10),
        picks in prop::collection::vec(0usize..7, 64),
    ) {
        let reference = normal_order_word(&word).unwrap();
        let mut at = 0usize;
        let randomized = normal_order_word_with(&word, |count| {
            let pick = picks[at % picks.len()];
            at += 1;
            pick % count.max(1)
        })
        .unwrap();
        prop_assert_eq!(reference, randomized);
    }

    /// The canonical printed form parses back to the same polynomial.
    #[test]
    fn printing_then_parsing_is_the_identity(op in op_poly()) {
        let text = format_op(&op);
        let back = parse_op(&text).unwrap();
        prop_assert_eq!(op, back);
    }

    /// The adjoint is an involution and reverses products.
    #[test]
    fn adjoint_is_an_involutive_antihomomorphism(a in op_poly(), b in op_poly()) {
        prop_assert_eq!(a.formal_adjoint().formal_adjoint(), a.clone());
        let lhs = a.mul(&b).unwrap().formal_adjoint();
        let rhs = b.formal_adjoint().mul(&a.formal_adjoint()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Weyl and the τ-average are adjoint-symmetric on real monomials;
    /// a general τ flips to 1-τ.
    #[test]
    fn quantized_monomials_conjugate_by_reflecting_tau(
        m in 0u32..5,
        n in 0u32..5,
        num in 0i64..=8,
    ) {
        let bj = quantize_monomial(m, n, &QuantScheme::BornJordan).unwrap();
        prop_assert_eq!(bj.formal_adjoint(), bj.clone());
        let weyl = quantize_monomial(m, n, &QuantScheme::Weyl).unwrap();
        prop_assert_eq!(weyl.formal_adjoint(), weyl.clone());

        let tau = BigRational::new(num.into(), 8.into());
        let one_minus = BigRational::from_integer(1.into()) - tau.clone();
        let fwd = quantize_monomial(m, n, &QuantScheme::Tau(tau)).unwrap();
        let refl = quantize_monomial(m, n, &QuantScheme::Tau(one_minus)).unwrap();
        prop_assert_eq!(fwd.formal_adjoint(), refl);
    }
}
