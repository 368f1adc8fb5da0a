use proptest::prelude::*;

use lowfact::divres::{divides, pseudo_quotient, ExactPit};
use lowfact::engine::{all_low_degree_factors, candidate_factors_mult_one, verify_factor, EngineConfig};
use lowfact::formula::Formula;
use lowfact::hensel::iterate_lift;
use lowfact::poly::{parse_poly, Monomial};
use lowfact::rational::{from_frac, from_int};
use lowfact::uni::{factor_univariate, xgcd, UniPoly};
use lowfact::{Rational, SparsePoly};

const N: usize = 3;

fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, N), -9i64..=9, 1i64..=3),
        0..=max_terms,
    )
    .prop_map(|terms| {
        SparsePoly::from_terms(
            N,
            terms
                .into_iter()
                .map(|(e, p, q)| (Monomial::new(e), from_frac(p, q))),
        )
    })
}

fn nonconstant(max_deg: u32, max_terms: usize) -> impl Strategy<Value = SparsePoly> {
    poly(max_deg, max_terms).prop_filter("nonconstant", |p| p.degree() >= 1)
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-7i64..=7, 1i64..=4).prop_map(|(p, q)| from_frac(p, q)), N)
}

/// Linear form with a nonzero coefficient on some variable.
fn linear() -> impl Strategy<Value = SparsePoly> {
    (prop::collection::vec(-4i64..=4, N), -5i64..=5)
        .prop_filter("nonconstant", |(c, _)| c.iter().any(|&v| v != 0))
        .prop_map(|(c, k)| {
            let mut p = SparsePoly::constant(N, from_int(k));
            for (i, v) in c.into_iter().enumerate() {
                p = &p + &SparsePoly::var(N, i).scale(&from_int(v));
            }
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(3, 5), b in poly(3, 5), c in poly(2, 4)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(3, 5), b in poly(3, 5), x in point()) {
        let prod = (&a * &b).evaluate(&x).unwrap();
        prop_assert_eq!(prod, a.evaluate(&x).unwrap() * b.evaluate(&x).unwrap());
    }

    #[test]
    fn text_round_trip(a in poly(4, 6)) {
        prop_assert_eq!(parse_poly(&a.to_string(), Some(N)).unwrap(), a);
    }

    #[test]
    fn translation_inverts(a in poly(3, 5), c in point()) {
        let back: Vec<Rational> = c.iter().map(|v| -v).collect();
        prop_assert_eq!(a.translate(&c).unwrap().translate(&back).unwrap(), a);
    }

    #[test]
    fn homogeneous_parts_sum_back(a in poly(4, 6)) {
        let d = a.degree().max(0) as u32;
        let mut sum = SparsePoly::zero(N);
        for k in 0..=d {
            sum = &sum + &a.hom_component(k);
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn exact_quotients(g in nonconstant(2, 4), q in poly(2, 4)) {
        prop_assume!(!q.is_zero());
        let f = &g * &q;
        prop_assert_eq!(f.lex_divide(&g).unwrap(), Some(q));
        prop_assert!(divides(&f, &g, &ExactPit).unwrap());
    }

    #[test]
    fn divides_agrees_with_long_division(f in poly(3, 5), g in nonconstant(2, 3)) {
        prop_assume!(!f.is_zero());
        prop_assert_eq!(divides(&f, &g, &ExactPit).unwrap(), f.lex_divide(&g).unwrap().is_some());
    }

    #[test]
    fn pseudo_quotient_is_quotient_when_divisible(g in nonconstant(2, 3), q in poly(2, 3), k in 1i64..5) {
        prop_assume!(!q.is_zero());
        let g = &g.hom_component_leq(2) - &SparsePoly::constant(N, g.constant_term() - from_int(k));
        let f = &g * &q;
        prop_assert_eq!(pseudo_quotient(&f, &g).unwrap().q, q);
    }

    #[test]
    fn univariate_multiply_back(c in prop::collection::vec(-30i64..=30, 1..8)) {
        let p = UniPoly::from_ints(&c);
        prop_assume!(!p.is_zero());
        let fact = factor_univariate(&p).unwrap();
        prop_assert_eq!(fact.expand(), p);
        for (g, _) in &fact.factors {
            prop_assert!(g.is_monic());
        }
    }

    #[test]
    fn bezout_identity(a in prop::collection::vec(-9i64..=9, 1..6), b in prop::collection::vec(-9i64..=9, 1..6)) {
        let (a, b) = (UniPoly::from_ints(&a), UniPoly::from_ints(&b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (u, v, g) = xgcd(&a, &b).unwrap();
        prop_assert_eq!(&(&u * &a) + &(&v * &b), g.clone());
        prop_assert!(a.exact_div(&g).unwrap().is_some() && b.exact_div(&g).unwrap().is_some());
    }

    #[test]
    fn formula_from_sparse_expands_back(a in poly(3, 5), x in point()) {
        let f = Formula::from_sparse(&a);
        prop_assert_eq!(f.evaluate(&x).unwrap(), a.evaluate(&x).unwrap());
        prop_assert_eq!(f.expand().unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Lifting `y − ℓ(x)` out of `(y − ℓ)(y² + c)` recovers it exactly.
    #[test]
    fn lift_recovers_linear_factor(l in linear(), c in 1i64..9) {
        let n = N + 1;
        let y = SparsePoly::var(n, N);
        let l = l.extend_arity(1);
        let shift = l.constant_term();
        let g = &y - &(&l - &SparsePoly::constant(n, shift.clone()));
        let h = &y.pow(2) + &SparsePoly::constant(n, from_int(c));
        let f = &g * &h;
        let g0 = UniPoly::y();
        let h0 = &UniPoly::y().pow(2) + &UniPoly::constant(from_int(c));
        let (lifted, _) = iterate_lift(&f, &g0, &h0, 1).unwrap();
        prop_assert_eq!(lifted, g);
    }

    #[test]
    fn constructed_factors_are_found(a in linear(), b in linear(), e in 1u32..=3) {
        let a = a.canonical_normalize().unwrap();
        let b = b.canonical_normalize().unwrap();
        prop_assume!(a != b);
        let q = &(&SparsePoly::var(N, 0).pow(2) + &SparsePoly::var(N, 1).pow(2)) + &SparsePoly::one(N);
        let f = &(&a.pow(e) * &b) * &q;
        let report = all_low_degree_factors(&f, &EngineConfig::guaranteed(1)).unwrap();
        let expected = [(a.clone(), e), (b.clone(), 1)];
        prop_assert_eq!(report.factors.entries.len(), 2);
        for (g, m) in &expected {
            prop_assert!(report.factors.entries.contains(&(g.clone(), *m)));
            prop_assert!(verify_factor(&f, g, *m).unwrap());
        }
        prop_assert!(!report.complete_product);
        let simple = &(&a * &b) * &q;
        let list = candidate_factors_mult_one(&simple, &EngineConfig::guaranteed(1)).unwrap();
        prop_assert!(list.contains(&a) && list.contains(&b));
    }
}

#[test]
fn zero_and_one_are_identities() {
    let a = parse_poly("x1^2 - 3*x2 + 1/2", Some(N)).unwrap();
    assert_eq!(&a * &SparsePoly::one(N), a);
    assert_eq!(&a + &SparsePoly::zero(N), a);
}
