//! Current algebras `g ⊗ A` and their central extensions by function cocycles.

mod algebra;
mod appendix;
mod lie;

pub use algebra::{
    jacobi_check, reductive_counterexample, CurrentAlgebra, CurrentCocycle, CurrentElement, ExtendedElement,
    TripleFailure, TripleReport,
};
pub use appendix::{fixture_check, fixture_pair, FixtureReport};
pub use lie::FinDimLie;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{all_tuples, check_cocycle_properties, CocycleEvaluator, CycleSpec, Property};
    use crate::exact::{q, Rat, RatFunc, RiemannPoint};
    use crate::forms::{expand_in_basis, BasisIndex, Form, KnContext, MarkedConfig};
    use crate::ops::multiply_forms;

    const E: usize = 0;
    const H: usize = 1;
    const F: usize = 2;

    fn a(n: i64, p: usize) -> BasisIndex {
        BasisIndex::a(n, p)
    }

    fn t(i: usize, n: i64, p: usize) -> CurrentElement {
        CurrentElement::tensor(i, a(n, p)).unwrap()
    }

    fn classical_sl2() -> (CurrentAlgebra, CocycleEvaluator) {
        let ctx = KnContext::new(MarkedConfig::classical()).unwrap();
        let gs = CocycleEvaluator::function(&ctx, &CycleSpec::separating(1));
        (CurrentAlgebra::new(FinDimLie::sl2(), &ctx), gs)
    }

    #[test]
    fn brackets_classical() {
        let (alg, gs) = classical_sl2();
        assert_eq!(alg.bracket(&t(E, 1, 1), &t(F, -1, 1)).unwrap(), t(H, 0, 1));
        assert!(alg.bracket(&t(E, 2, 1), &t(E, -5, 1)).unwrap().is_zero());
        let ext = alg
            .extended_bracket(&t(E, 1, 1).into(), &t(F, -1, 1).into(), &gs)
            .unwrap();
        assert_eq!(ext, ExtendedElement::new(t(H, 0, 1), q(-1)));
        let tt = ExtendedElement::t();
        assert!(alg.extended_bracket(&tt, &t(H, 3, 1).into(), &gs).unwrap().is_zero());
        for n in -4..=4 {
            for m in -4..=4 {
                for (x, y) in [(E, F), (H, H), (F, E), (E, H)] {
                    let c = alg.central_term(&gs, &t(x, n, 1), &t(y, m, 1)).unwrap();
                    let want = if n + m == 0 { alg.lie().form(x, y) * q(m) } else { q(0) };
                    assert_eq!(c, want, "({x}, {n}) ({y}, {m})");
                }
            }
        }
        assert_eq!(t(E, 1, 1).add(&t(F, 2, 1).scale(&q(-2))).display(alg.lie()).to_string(), "e⊗A[1,1] - 2 f⊗A[2,1]");
    }

    #[test]
    fn two_point_bracket_matches_expansion() {
        let ctx = KnContext::new(MarkedConfig::from_ints(&[0, 1], &[]).unwrap()).unwrap();
        let alg = CurrentAlgebra::new(FinDimLie::sl2(), &ctx);
        let got = alg.bracket(&t(E, 1, 1), &t(F, 1, 2)).unwrap();
        let want = t(H, 3, 1).scale(&q(-1)).add(&t(H, 3, 2));
        assert_eq!(got, want);
        let fg = multiply_forms(&ctx.basis(a(1, 1)).unwrap(), &ctx.basis(a(1, 2)).unwrap());
        let mut oracle = CurrentElement::zero();
        for (idx, c) in expand_in_basis(&ctx, &fg).unwrap() {
            oracle.add_term(H, idx, c).unwrap();
        }
        assert_eq!(got, oracle);
        let z = Form::function(RatFunc::z());
        assert!(!alg.element(E, &z).unwrap().is_zero());
        assert!(alg.element(E, &Form::vector_field(RatFunc::z())).is_err());
        let other = KnContext::new(MarkedConfig::classical()).unwrap();
        let gs = CocycleEvaluator::function(&other, &CycleSpec::separating(1));
        assert!(alg.central_term(&gs, &t(E, 0, 1), &t(F, 0, 1)).is_err());
        let gv = CocycleEvaluator::geometric(&ctx, crate::cocycle::CocycleKind::Vector, &CycleSpec::separating(2)).unwrap();
        assert!(alg.central_term(&gv, &t(E, 0, 1), &t(F, 0, 1)).is_err());
    }

    #[test]
    fn jacobi_of_extensions() {
        let (alg, gs) = classical_sl2();
        let triples = alg.homogeneous_triples((-4, 4));
        let rep = jacobi_check(&alg, &gs.scaled(q(3)), &triples).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures.first());
        assert_eq!(rep.checked, triples.len());

        let mut form = alg.lie().form_matrix().to_vec();
        form[H][H] = q(1);
        let bad = CurrentAlgebra::new(alg.lie().with_form(form).unwrap(), alg.context());
        let rep = jacobi_check(&bad, &gs, &bad.homogeneous_triples((-2, 2))).unwrap();
        assert!(!rep.passed());
        let w = &rep.failures[0];
        assert!(!w.current_nonzero && !w.residual.is_zero());

        let gl2 = CurrentAlgebra::new(FinDimLie::gl(2), alg.context());
        let rep = jacobi_check(&gl2, &gs, &gl2.homogeneous_triples((-2, 2))).unwrap();
        assert!(rep.passed());
        let affine = CurrentCocycle::affine(&gl2, gs.clone()).unwrap();
        assert!(affine.check(&gl2.homogeneous_triples((-2, 2))).unwrap().passed());
    }

    #[test]
    fn reductive_counterexample_passes_current_check() {
        let ctx = KnContext::new(MarkedConfig::classical()).unwrap();
        let alg = CurrentAlgebra::new(FinDimLie::gl(2), &ctx);
        let psi = [((a(0, 1), a(3, 1)), q(1)), ((a(3, 1), a(0, 1)), q(-1))];
        let cex = reductive_counterexample(&alg, psi.clone()).unwrap();
        let rep = cex.check(&alg.homogeneous_triples((-2, 3))).unwrap();
        assert!(rep.passed());
        let id = t(0, 0, 1).add(&t(3, 0, 1));
        let id3 = t(0, 3, 1).add(&t(3, 3, 1));
        assert_eq!(cex.eval(&id, &id3).unwrap(), q(4));
        assert_eq!(cex.eval(&t(0, 0, 1), &t(0, 3, 1)).unwrap(), q(1));
        // traceless arguments
        let h = t(0, 0, 1).add(&t(3, 0, 1).scale(&q(-1)));
        for x in [h.clone(), t(1, 0, 1), t(2, 3, 1)] {
            for y in [h.clone(), t(0, 3, 1), id3.clone()] {
                assert_eq!(cex.eval(&x, &y).unwrap(), q(0));
            }
        }
        let mult = check_cocycle_properties(cex.psi(), Property::Multiplicative, &all_tuples(&[0, 0, 0], (0, 3), 1)).unwrap();
        assert!(!mult.passed());
        let w = &mult.failures[0];
        assert_eq!(w.args, vec![a(0, 1), a(0, 1), a(3, 1)]);
        assert_eq!(w.residual, q(-1));
        let bad = [((a(0, 1), a(3, 1)), q(1)), ((a(3, 1), a(0, 1)), q(1))];
        assert!(reductive_counterexample(&alg, bad).is_err());
        let sl2 = CurrentAlgebra::new(FinDimLie::sl2(), &ctx);
        let zero = reductive_counterexample(&sl2, psi).unwrap();
        assert_eq!(zero.eval(&t(E, 0, 1), &t(F, 3, 1)).unwrap(), q(0));
    }

    #[test]
    fn appendix_fixture() {
        let rep = fixture_check(30).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        let (zero, one) = (RiemannPoint::finite(0), RiemannPoint::finite(1));
        for n in [1, 2, 7] {
            let (g, e) = fixture_pair(n);
            assert_eq!(g.order_at(&zero), Some(-n));
            assert_eq!(g.order_at(&one), Some(n));
            assert_eq!(g.order_at(&RiemannPoint::Infinity), Some(0));
            assert_eq!(e.order_at(&zero), Some(n));
            assert_eq!(e.order_at(&one), Some(1 - n));
            // pointwise: e_n(x) n (x-1)^{n-1} x^{-n-1} = n / x
            for x in [Rat::from_int(2), Rat::new(-1, 3), Rat::new(5, 7)] {
                let dg = Rat::from_int(n) * (x.clone() - Rat::one()).pow(n - 1).unwrap() * x.pow(-n - 1).unwrap();
                let lhs = e.func.eval(&x).unwrap() * dg;
                assert_eq!(lhs, Rat::from_int(n) * x.recip().unwrap());
            }
        }
    }
}
