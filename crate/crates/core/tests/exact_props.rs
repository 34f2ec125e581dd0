//! Property tests for rationals, polynomials, rational functions and residues.

use knc_core::{q, Poly, Rat, RatFunc, RiemannPoint};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, d)| Rat::new(p, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..=max_deg + 1).prop_map(|c| Poly::from_ints(&c))
}

const POLES: [i64; 4] = [0, 1, -1, 2];

/// `c (z - a)^k ...` with poles and zeros among a fixed small set.
fn factored() -> impl Strategy<Value = RatFunc> {
    (rat(), prop::collection::vec(-3i64..=3, 4)).prop_map(|(c, ks)| {
        let pts: Vec<Rat> = POLES.iter().map(|&p| q(p)).collect();
        RatFunc::from_factors(&c, pts.iter().zip(ks))
    })
}

/// A sum of two factored functions, so that numerators are not products of linear factors.
fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (factored(), factored(), poly(3)).prop_map(|(a, b, p)| &(&a + &b) + &RatFunc::from_poly(p))
}

fn away_from_poles() -> impl Strategy<Value = Rat> {
    rat().prop_filter("avoid the pole set", |x| POLES.iter().all(|&p| *x != q(p)))
}

proptest! {
    #[test]
    fn rat_parse_round_trip(x in rat()) {
        let back: Rat = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn rat_field(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), Rat::one());
        }
    }

    #[test]
    fn poly_eval_is_a_ring_map(a in poly(5), b in poly(5), x in rat()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn poly_division(a in poly(7), d in poly(4)) {
        prop_assume!(!d.is_zero());
        let (quo, rem) = a.div_rem(&d).unwrap();
        prop_assert_eq!(&(&quo * &d) + &rem, a.clone());
        prop_assert!(rem.is_zero() || rem.degree() < d.degree());
    }

    #[test]
    fn poly_gcd_divides(a in poly(4), b in poly(4), c in poly(2)) {
        prop_assume!(!c.is_zero());
        let (x, y) = (&a * &c, &b * &c);
        let g = x.gcd(&y);
        prop_assume!(!g.is_zero());
        prop_assert!(x.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(y.div_rem(&g).unwrap().1.is_zero());
        // c divides both, so it divides the gcd
        prop_assert!(g.div_rem(&c).unwrap().1.is_zero());
    }

    #[test]
    fn poly_leibniz_and_shift(a in poly(5), b in poly(5), s in rat(), x in rat()) {
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
        prop_assert_eq!(a.taylor_shift(&s).eval(&x), a.eval(&(&x + &s)));
    }

    #[test]
    fn ratfunc_eval_is_a_ring_map(f in ratfunc(), g in ratfunc(), x in away_from_poles()) {
        prop_assert_eq!((&f * &g).eval(&x).unwrap(), f.eval(&x).unwrap() * g.eval(&x).unwrap());
        prop_assert_eq!((&f - &g).eval(&x).unwrap(), f.eval(&x).unwrap() - g.eval(&x).unwrap());
    }

    #[test]
    fn ratfunc_is_normalized(f in ratfunc()) {
        prop_assert!(f.den().leading().is_one());
        prop_assert!(f.num().gcd(f.den()).is_constant());
    }

    #[test]
    fn ratfunc_quotient_rule(f in ratfunc(), g in ratfunc()) {
        prop_assume!(!g.is_zero());
        let h = f.checked_div(&g).unwrap();
        prop_assert_eq!(&h * &g, f.clone());
        let lhs = &h.derivative() * &(&g * &g);
        let rhs = &(&f.derivative() * &g) - &(&f * &g.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orders_add(f in ratfunc(), g in ratfunc(), i in 0usize..5) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let p = if i == 4 { RiemannPoint::Infinity } else { RiemannPoint::finite(POLES[i]) };
        let (a, b) = (f.order_at(&p).unwrap(), g.order_at(&p).unwrap());
        prop_assert_eq!((&f * &g).order_at(&p), Some(a + b));
        let s = f.laurent_leading(&p, 1);
        prop_assert_eq!(s.first_exponent, a);
        prop_assert!(!s.coefficients[0].is_zero());
    }

    #[test]
    fn residues_sum_to_zero(f in ratfunc()) {
        let mut total = f.residue_1form(&RiemannPoint::Infinity);
        for p in POLES {
            total += f.residue_1form(&RiemannPoint::finite(p));
        }
        prop_assert_eq!(total, Rat::zero());
    }

    #[test]
    fn exact_differentials_have_no_residue(f in ratfunc(), i in 0usize..5) {
        let p = if i == 4 { RiemannPoint::Infinity } else { RiemannPoint::finite(POLES[i]) };
        prop_assert_eq!(f.derivative().residue_1form(&p), Rat::zero());
    }

    #[test]
    fn laurent_product(f in ratfunc(), g in ratfunc(), i in 0usize..5) {
        let p = if i == 4 { RiemannPoint::Infinity } else { RiemannPoint::finite(POLES[i]) };
        // no pole here is worse than order 12, so nothing is lost below -16
        let (a, b) = (f.laurent_coeffs(&p, -16, 32), g.laurent_coeffs(&p, -16, 32));
        let fg = (&f * &g).laurent_coeffs(&p, -32, 32);
        let prod = a.mul(&b);
        prop_assert_eq!(prod.first_exponent, -32);
        for k in -32..0 {
            prop_assert_eq!(prod.coeff(k), fg.coeff(k));
        }
    }
}
