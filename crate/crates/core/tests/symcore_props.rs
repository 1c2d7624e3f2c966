use std::sync::Arc;

use oscillab::symcore::{
    gap_intervals, gap_verify, rat, var_list, MultiPoly, PolyVectorField, Rational,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring() -> Arc<[String]> {
    var_list(&["x", "y", "z"])
}

fn poly_strategy(max_deg: u16) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_deg, 3),
            -9i64..=9,
            1i64..=4,
        ),
        0..6,
    )
    .prop_map(|terms| {
        let v = ring();
        MultiPoly::from_terms(&v, terms.into_iter().map(|(e, n, d)| (e, rat(n, d))))
    })
}

fn field_strategy() -> impl Strategy<Value = PolyVectorField> {
    prop::collection::vec(poly_strategy(2), 3)
        .prop_map(|cs| PolyVectorField::new(&ring(), cs).unwrap())
}

/// Brute-force oracle: differentiate monomial by monomial without the library's diff.
fn oracle_diff(p: &MultiPoly, i: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(p.vars());
    for (e, c) in p.terms() {
        if e[i] == 0 {
            continue;
        }
        let mut f = e.clone();
        f[i] -= 1;
        out = &out + &MultiPoly::monomial(p.vars(), f, c * Rational::from_integer(e[i].into()));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn differentiation_is_linear_and_leibniz(a in poly_strategy(3), b in poly_strategy(3), i in 0usize..3) {
        prop_assert_eq!(a.diff(i), oracle_diff(&a, i));
        prop_assert_eq!((&a + &b).diff(i), &a.diff(i) + &b.diff(i));
        prop_assert_eq!((&a * &b).diff(i), &(&a.diff(i) * &b) + &(&a * &b.diff(i)));
    }

    #[test]
    fn exact_division_roundtrip(a in poly_strategy(2), b in poly_strategy(2)) {
        prop_assume!(!b.is_zero());
        let p = &a * &b;
        prop_assert_eq!(p.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn field_application_is_leibniz(v in field_strategy(), a in poly_strategy(3), b in poly_strategy(3)) {
        let lhs = v.apply(&(&a * &b)).unwrap();
        let rhs = &(&v.apply(&a).unwrap() * &b) + &(&a * &v.apply(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_commutator(v in field_strategy(), w in field_strategy(), p in poly_strategy(3)) {
        let lhs = v.bracket(&w).unwrap().apply(&p).unwrap();
        let rhs = &v.apply(&w.apply(&p).unwrap()).unwrap() - &w.apply(&v.apply(&p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_antisymmetric_bilinear_jacobi(u in field_strategy(), v in field_strategy(), w in field_strategy()) {
        let uv = u.bracket(&v).unwrap();
        prop_assert_eq!(uv.scale(&rat(-1, 1)), v.bracket(&u).unwrap());
        let sum = u.checked_add(&v).unwrap();
        prop_assert_eq!(
            sum.bracket(&w).unwrap(),
            u.bracket(&w).unwrap().checked_add(&v.bracket(&w).unwrap()).unwrap()
        );
        let j = u.bracket(&v.bracket(&w).unwrap()).unwrap()
            .checked_add(&v.bracket(&w.bracket(&u).unwrap()).unwrap()).unwrap()
            .checked_add(&w.bracket(&u.bracket(&v).unwrap()).unwrap()).unwrap();
        prop_assert!(j.is_zero());
    }
}

#[test]
fn gap_lemma_on_random_dyadic_windows() {
    let mut rng = ChaCha8Rng::seed_from_u64(20260);
    for _ in 0..100 {
        let m: u32 = rng.random_range(1..=4);
        let count = rng.random_range(1..=m as usize + 1);
        let mut idx: Vec<u32> = (0..=m).collect();
        for k in (1..idx.len()).rev() {
            let s = rng.random_range(0..=k);
            idx.swap(k, s);
        }
        let coeffs: Vec<(u32, f64)> = idx[..count]
            .iter()
            .map(|&i| {
                let l: i32 = rng.random_range(0..=8);
                let a = 2f64.powf(-(l as f64) + rng.random_range(-2.0..=2.0));
                (i, a)
            })
            .collect();
        let g = gap_intervals(&coeffs, m).unwrap();
        let r = gap_verify(&coeffs, &g, 1e-5, m);
        assert!(r.pass, "{coeffs:?} -> {g:?} -> {r:?}");
        assert!(g.intervals.len() as f64 <= 10f64.powi(m as i32));
    }
}
