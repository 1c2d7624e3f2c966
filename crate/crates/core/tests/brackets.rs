use num_traits::{One, Zero};
use oscillab::brackets::*;
use oscillab::symcore::{int, parse_poly, rat, var_list, MultiPoly, PolyVectorField, Rational};
use proptest::prelude::*;

fn br(a: &LieSeries, b: &LieSeries) -> LieSeries {
    a.bracket(b).unwrap()
}

fn lin(terms: &[(Rational, &LieSeries)]) -> LieSeries {
    let mut s = terms[0].1.scale(&Rational::zero());
    for (c, t) in terms {
        s = s.checked_add(&t.scale(c)).unwrap();
    }
    s
}

#[test]
fn bch_commuting_and_step_two() {
    let g = LieSeries::generators(2, 1);
    assert_eq!(bch(&g[0], &g[1], 1).unwrap(), g[0].checked_add(&g[1]).unwrap());
    let g = LieSeries::generators(2, 2);
    let want = lin(&[(int(1), &g[0]), (int(1), &g[1]), (rat(1, 2), &br(&g[0], &g[1]))]);
    assert_eq!(bch(&g[0], &g[1], 2).unwrap(), want);
}

#[test]
fn bch_low_order_coefficients() {
    let g = LieSeries::generators(2, 4);
    let (a, b) = (&g[0], &g[1]);
    let ab = br(a, b);
    let want = lin(&[
        (int(1), a),
        (int(1), b),
        (rat(1, 2), &ab),
        (rat(1, 12), &br(a, &ab)),
        (rat(-1, 12), &br(b, &ab)),
        (rat(-1, 48), &br(a, &br(b, &ab))),
        (rat(-1, 48), &br(b, &br(a, &ab))),
    ]);
    assert_eq!(bch(a, b, 4).unwrap(), want);
}

#[test]
fn bch_capability_bound() {
    let g = LieSeries::generators(2, 6);
    assert!(matches!(bch(&g[0], &g[1], 6), Err(BracketError::Capability(_))));
}

fn xs(n: usize) -> Vec<LieSeries> {
    let w = curve_weights(n);
    (0..n).map(|i| LieSeries::generator(&w, n as u32, i).unwrap()).collect()
}

#[test]
fn corrected_fields_closed_form() {
    let x = xs(5);
    let got = xhat_formal(5).unwrap();
    let want = [
        x[0].clone(),
        x[1].clone(),
        lin(&[(int(1), &x[2]), (rat(-1, 6), &br(&x[0], &x[1]))]),
        lin(&[
            (int(1), &x[3]),
            (rat(-1, 4), &br(&x[0], &x[2])),
            (rat(1, 24), &br(&x[0], &br(&x[0], &x[1]))),
        ]),
        lin(&[
            (int(1), &x[4]),
            (rat(-3, 10), &br(&x[0], &x[3])),
            (rat(-1, 10), &br(&x[1], &x[2])),
            (rat(1, 15), &br(&x[0], &br(&x[0], &x[2]))),
            (rat(1, 30), &br(&x[1], &br(&x[0], &x[1]))),
            (rat(-1, 120), &br(&x[0], &br(&x[0], &br(&x[0], &x[1])))),
        ]),
    ];
    for (i, (g, w)) in got.iter().zip(&want).enumerate() {
        assert_eq!(g, w, "X̂{}", i + 1);
    }
    assert_eq!(xhat_formal(3).unwrap()[2].to_string(), "X3 - 1/6*[X1,X2]");
}

#[test]
fn pullback_expansion_identity() {
    for n in 3..=5 {
        let x = xhat_formal(n).unwrap();
        assert_eq!(gamma_r_from_xhat(&x).unwrap(), gamma_r_from_bch(n).unwrap());
    }
}

fn random_series(n: usize, step: u32, coeffs: &[i64]) -> LieSeries {
    let w = vec![1; n];
    let basis = lyndon_basis(&w, step);
    let g = LieSeries::generators(n, step);
    let mut s = LieSeries::zero(&w, step);
    for (word, c) in basis.iter().zip(coeffs.iter().cycle()) {
        let mut e = g[word[0] as usize].clone();
        for &l in &word[1..] {
            e = br(&e, &g[l as usize]);
        }
        s = s.checked_add(&e.scale(&int(*c))).unwrap();
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bch_inverse(cs in prop::collection::vec(-3i64..=3, 1..8), step in 1u32..=5) {
        let a = random_series(2, step, &cs);
        prop_assert!(bch(&a, &a.scale(&-Rational::one()), step).unwrap().is_zero());
    }

    #[test]
    fn bch_associative(ca in prop::collection::vec(-2i64..=2, 1..5),
                       cb in prop::collection::vec(-2i64..=2, 1..5),
                       cc in prop::collection::vec(-2i64..=2, 1..5),
                       step in 1u32..=4) {
        let a = random_series(2, step, &ca);
        let b = random_series(2, step, &cb);
        let c = random_series(2, step, &cc);
        let l = bch(&bch(&a, &b, step).unwrap(), &c, step).unwrap();
        let r = bch(&a, &bch(&b, &c, step).unwrap(), step).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn jacobi_and_antisymmetry(ca in prop::collection::vec(-3i64..=3, 1..6),
                               cb in prop::collection::vec(-3i64..=3, 1..6),
                               cc in prop::collection::vec(-3i64..=3, 1..6)) {
        let (a, b, c) = (random_series(3, 4, &ca), random_series(3, 4, &cb), random_series(3, 4, &cc));
        prop_assert_eq!(br(&a, &b), br(&b, &a).scale(&-Rational::one()));
        let j = br(&a, &br(&b, &c))
            .checked_add(&br(&b, &br(&c, &a))).unwrap()
            .checked_add(&br(&c, &br(&a, &b))).unwrap();
        prop_assert!(j.is_zero());
    }
}

fn params() -> std::sync::Arc<[String]> {
    var_list(&["alpha", "beta"])
}

fn p(src: &str) -> MultiPoly {
    parse_poly(src, &params()).unwrap()
}

fn curve_ring() -> std::sync::Arc<[String]> {
    var_list(&["t", "alpha", "beta"])
}

fn q(src: &str) -> MultiPoly {
    parse_poly(src, &curve_ring()).unwrap()
}

#[test]
fn group_laws_and_differential() {
    for g in [GroupModel::heisenberg(), GroupModel::mizohata(), GroupModel::abelian(4)] {
        g.check_axioms().unwrap();
    }
    // Jacobian of the law against the closed form, all 16 entries
    let jac = GroupModel::mizohata().right_translation_differential();
    let closed = mizohata_dr();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(jac[i][j], closed[i][j], "entry ({},{})", i + 1, j + 1);
        }
    }
    let yr = var_list(&["y1", "y2", "y3", "y4"]);
    assert_eq!(closed[2][0], parse_poly("y2/2", &yr).unwrap());
    assert_eq!(closed[2][1], parse_poly("-y1/2", &yr).unwrap());
    assert_eq!(closed[3][0], parse_poly("(6*y3 - y1*y2)/12", &yr).unwrap());
    assert_eq!(closed[3][1], parse_poly("y1^2/12", &yr).unwrap());
}

#[test]
fn mizohata_right_log_derivative() {
    let curve = monomial_curve(&curve_ring(), &[q("1"), q("1"), q("alpha"), q("beta")]);
    let g = group_g_r(&GroupModel::mizohata(), &curve, 8).unwrap();
    let want = [q("1"), q("2*t"), q("(6*alpha + 1)/2*t^2"), q("(alpha + 4*beta + 1/6)*t^3")];
    assert_eq!(g.components, want);
    let mut locus: Vec<String> = g.locus.iter().map(|f| f.to_string()).collect();
    locus.sort();
    assert_eq!(locus.len(), 2);
    assert!(g.residual.is_constant());
    for (a, b, bad) in [
        (rat(-1, 6), int(0), true),
        (int(1), rat(-7, 24), true),
        (int(0), int(0), false),
        (int(1), int(1), false),
    ] {
        let ind = g.independence_at(&[("alpha", a.clone()), ("beta", b.clone())]).unwrap();
        assert_eq!(ind == Independence::Degenerate, bad, "alpha={a} beta={b}");
    }
    let v = g
        .vanishing_factors(&[("alpha", rat(-1, 6)), ("beta", int(0))])
        .unwrap();
    assert_eq!(v.len(), 2);
}

#[test]
fn heisenberg_right_log_derivative() {
    let ring = var_list(&["t", "alpha"]);
    let r = |s: &str| parse_poly(s, &ring).unwrap();
    let curve = monomial_curve(&ring, &[r("1"), r("1"), r("alpha")]);
    let g = group_g_r(&GroupModel::heisenberg(), &curve, 8).unwrap();
    // direct from the law: (DR)^{-1}γ' has third entry 3αt² + ½t²
    assert_eq!(g.components, vec![r("1"), r("2*t"), r("(3*alpha + 1/2)*t^2")]);
    assert_eq!(g.locus, vec![r("alpha + 1/6")]);
    assert_eq!(
        g.independence_at(&[("alpha", rat(-1, 6))]).unwrap(),
        Independence::Degenerate
    );
}

#[test]
fn abelian_moment_curve() {
    let ring = var_list(&["t"]);
    let r = |s: &str| parse_poly(s, &ring).unwrap();
    let curve = vec![r("t"), r("t^2"), r("t^3")];
    let g = group_g_r(&GroupModel::abelian(3), &curve, 8).unwrap();
    assert_eq!(g.components, vec![r("1"), r("2*t"), r("3*t^2")]);
    assert_eq!(g.wronskian, r("12"));
    let degenerate = vec![r("t"), r("t^2"), r("t^2")];
    let g = group_g_r(&GroupModel::abelian(3), &degenerate, 8).unwrap();
    assert!(g.wronskian.is_zero());
}

#[test]
fn non_unipotent_law_is_rejected() {
    let r = var_list(&["x1", "y1"]);
    let law = parse_poly("x1 + y1 + x1*y1", &r).unwrap();
    let g = GroupModel::new("affine", 1, vec![law]).unwrap();
    let ring = var_list(&["t"]);
    let curve = vec![parse_poly("t", &ring).unwrap()];
    assert!(matches!(group_g_r(&g, &curve, 4), Err(BracketError::Model(_))));
}

#[test]
fn pullback_route_matches_group_route() {
    // Γ_R(0,t) = −G_R(t): ν-th derivatives at t = 0 from the family x·γ(t)^{-1}
    let model = GroupModel::mizohata();
    let coeffs = [p("1"), p("1"), p("alpha"), p("beta")];
    let family = model.translation_family(&coeffs).unwrap();
    let rep = check_conditions(&family, &[int(0), int(0), int(0), int(0)]).unwrap();
    let curve = monomial_curve(&curve_ring(), &[q("1"), q("1"), q("alpha"), q("beta")]);
    let g = group_g_r(&model, &curve, 8).unwrap();
    for nu in 0..4u32 {
        for j in 0..4 {
            let d = g.components[j].diff_n(0, nu).partial_eval(0, &Rational::zero());
            let d = MultiPoly::from_terms(&params(), d.terms().iter().map(|(e, c)| (e[1..].to_vec(), -c.clone())));
            assert_eq!(rep.pullback_vectors[nu as usize][j], d, "nu={nu} j={j}");
        }
    }
}

#[test]
fn conditions_on_coordinate_fields() {
    for n in 1..=5 {
        let rep = check_conditions(&CurveFamilySpec::coordinate(n), &vec![int(1); n]).unwrap();
        assert!(rep.p_r && rep.b_r && rep.agree, "n={n}");
    }
}

#[test]
fn conditions_on_mizohata_family() {
    let model = GroupModel::mizohata();
    let family = model
        .translation_family(&[p("1"), p("1"), p("alpha"), p("beta")])
        .unwrap();
    let pt = [int(1), rat(-1, 2), int(2), int(3)];
    let rep = check_conditions(&family, &pt).unwrap();
    assert!(rep.p_r && rep.b_r && rep.agree);
    let want = p("(alpha + 1/6)*(alpha + 4*beta + 1/6)");
    assert!(rep.bracket_det.div_exact(&want).unwrap().is_constant());
    for (a, b) in [(rat(-1, 6), int(2)), (int(1), rat(-7, 24))] {
        let f = family.with_params(&[("alpha", a.clone()), ("beta", b.clone())]).unwrap();
        let r = check_conditions(&f, &pt).unwrap();
        assert!(!r.p_r && !r.b_r && r.agree, "alpha={a} beta={b}");
    }
}

#[test]
fn conditions_on_heisenberg_family() {
    let pr = var_list(&["alpha"]);
    let family = GroupModel::heisenberg()
        .translation_family(&[
            MultiPoly::one(&pr),
            MultiPoly::one(&pr),
            MultiPoly::var(&pr, 0),
        ])
        .unwrap();
    let rep = check_conditions(&family, &[int(2), int(-1), int(0)]).unwrap();
    assert!(rep.agree && rep.p_r);
    let f = family.with_params(&[("alpha", rat(-1, 6))]).unwrap();
    let r = check_conditions(&f, &[int(2), int(-1), int(0)]).unwrap();
    assert!(!r.p_r && !r.b_r);
}

#[test]
fn third_field_from_bracket_fails() {
    // X3 = 1/6 [X1,X2] cancels the correction exactly
    let fr = var_list(&["x1", "x2", "x3"]);
    let v = |s: &[&str]| {
        PolyVectorField::new(&fr, s.iter().map(|c| parse_poly(c, &fr).unwrap()).collect()).unwrap()
    };
    let x1 = v(&["1", "0", "0"]);
    let x2 = v(&["0", "1", "x1"]);
    let x3 = x1.bracket(&x2).unwrap().scale(&rat(1, 6));
    let family = CurveFamilySpec::new(vec![x1, x2, x3], 3).unwrap();
    let xh = xhat_fields(&family).unwrap();
    assert!(xh.concrete[2].is_zero());
    let rep = check_conditions(&family, &[int(0), int(0), int(0)]).unwrap();
    assert!(!rep.b_r && !rep.p_r && rep.agree);
}

#[test]
fn family_preconditions() {
    let fr = var_list(&["x1", "x2"]);
    assert!(CurveFamilySpec::new(vec![PolyVectorField::zero(&fr)], 2).is_err());
    assert!(CurveFamilySpec::new(vec![], 2).is_err());
    assert!(matches!(
        xhat_fields(&CurveFamilySpec::coordinate(6)),
        Err(BracketError::Capability(_))
    ));
}

fn field_from(fr: &std::sync::Arc<[String]>, cs: &[i64], shift: usize) -> PolyVectorField {
    // lower-triangular polynomial field: component i depends on x_1..x_{i-1}
    let n = fr.len();
    let mut comps = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = MultiPoly::constant(fr, int(cs[(i + shift) % cs.len()]));
        for j in 0..i {
            let k = cs[(i * 3 + j + shift) % cs.len()];
            c = &c + &MultiPoly::var(fr, j).scale(&int(k));
        }
        comps.push(c);
    }
    PolyVectorField::new(fr, comps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn pullback_iff_bracket(cs in prop::collection::vec(-2i64..=2, 6..12), n in 2usize..=4,
                            pt in prop::collection::vec(-2i64..=2, 4)) {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let fr = var_list(&names);
        let mut fields: Vec<PolyVectorField> = (0..n).map(|k| field_from(&fr, &cs, k)).collect();
        if fields[0].is_zero() {
            fields[0] = PolyVectorField::coordinate(&fr, 0);
        }
        let family = CurveFamilySpec::new(fields, n).unwrap();
        let point: Vec<Rational> = pt[..n].iter().map(|&v| int(v)).collect();
        let rep = check_conditions(&family, &point).unwrap();
        prop_assert!(rep.agree);
        prop_assert_eq!(rep.pullback_rank, rep.bracket_rank);
    }
}
