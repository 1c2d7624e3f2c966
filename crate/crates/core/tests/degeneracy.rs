use oscillab::degeneracy::{
    classify, conormal_vars, curve_flag_check, flag_manifold, hessian_and_kernel_fields,
    interleaving_values, mixed_types, morin_classify, newton_predict, one_sided_type,
    predicted_decay, rotational_curvature, side_charts, DegeneracyError, MorinClass, PhaseSpec,
    Prediction, Side, TypeOrder,
};
use oscillab::symcore::{int, parse_poly, rat, var_list, MultiPoly, PolyVectorField, Rational};
use proptest::prelude::*;

fn zeros(n: usize) -> Vec<Rational> {
    vec![int(0); n]
}

#[test]
fn identity_hessian_has_coordinate_kernel_fields() {
    for d in 1..=3usize {
        let phi: Vec<String> = (1..=d).map(|i| format!("x{i}*z{i}")).collect();
        let p = PhaseSpec::oscillatory(d, &phi.join(" + ")).unwrap();
        let k = hessian_and_kernel_fields(&p, &zeros(2 * d)).unwrap();
        let v = k.h.vars().clone();
        assert_eq!(k.h, MultiPoly::one(&v));
        assert_eq!(k.v_left, PolyVectorField::coordinate(&v, 2 * d - 1));
        assert_eq!(k.v_right, PolyVectorField::coordinate(&v, d - 1));
    }
}

#[test]
fn one_dimensional_quadratic_phase() {
    let p = PhaseSpec::oscillatory(1, "x1*z1^2/2").unwrap();
    let k = hessian_and_kernel_fields(&p, &zeros(2)).unwrap();
    let v = k.h.vars().clone();
    // oracle: ∂_x ∂_z (x z²/2) = z
    assert_eq!(k.h, MultiPoly::var(&v, 1));
    assert_eq!(k.v_left, PolyVectorField::coordinate(&v, 1));
    assert_eq!(k.v_right, PolyVectorField::coordinate(&v, 0));
}

#[test]
fn kernel_fields_annihilate_the_hessian_rows() {
    // Φ_xz · (V_L z-components) = h e_d and (V_R x-components) · Φ_xz = h e_d
    let p = PhaseSpec::oscillatory(2, "x1*z1 + x2*z2^2/2 + x1*z2^3 + x2^2*z1*z2").unwrap();
    let k = hessian_and_kernel_fields(&p, &zeros(4)).unwrap();
    let phi = p.phi().unwrap();
    let m: Vec<Vec<MultiPoly>> = (0..2)
        .map(|i| (0..2).map(|j| phi.diff(i).diff(2 + j)).collect())
        .collect();
    for i in 0..2 {
        let mut s = MultiPoly::zero(phi.vars());
        let mut t = MultiPoly::zero(phi.vars());
        for j in 0..2 {
            s = &s + &(&m[i][j] * k.v_left.coeff(2 + j));
            t = &t + &(k.v_right.coeff(j) * &m[j][i]);
        }
        if i == 0 {
            assert!(s.is_zero());
            assert!(t.is_zero());
        } else {
            assert_eq!(s, k.h);
            assert_eq!(t, k.h);
        }
    }
    // V_L differentiates only right variables and V_R only left ones
    assert!(k.v_left.coeff(0).is_zero() && k.v_left.coeff(1).is_zero());
    assert!(k.v_right.coeff(2).is_zero() && k.v_right.coeff(3).is_zero());
}

#[test]
fn singular_block_is_reported() {
    let p = PhaseSpec::oscillatory(2, "x1*z2 + x2*z1").unwrap();
    let err = hessian_and_kernel_fields(&p, &zeros(4)).unwrap_err();
    assert!(matches!(err, DegeneracyError::SingularBlock { ref block } if block.contains("x'z'")));
}

#[test]
fn corank_two_is_rejected() {
    let p = PhaseSpec::oscillatory(2, "x1*z1^2 + x2*z2^2").unwrap();
    let err = one_sided_type(&p, &zeros(4), Side::Left, 4).unwrap_err();
    assert_eq!(err, DegeneracyError::Corank(2));
}

fn rigid3() -> (PhaseSpec, Vec<Rational>) {
    let p = PhaseSpec::rigid_xray(&["a", "a^2/2"]).unwrap();
    // (x1, x2, x3, tau1, tau2, y3) with τ·γ'(x3) = 0
    let pt = vec![int(0), int(0), int(0), int(0), int(1), int(0)];
    (p, pt)
}

#[test]
fn rigid_kernel_fields() {
    let (p, pt) = rigid3();
    let k = hessian_and_kernel_fields(&p, &pt).unwrap();
    let v = k.h.vars().clone();
    assert_eq!(v[5], "y3");
    assert_eq!(k.v_left, PolyVectorField::coordinate(&v, 5));
    // blowdown witness: V_L h ≡ 0
    assert!(k.v_left.apply(&k.h).unwrap().is_zero());
    let (_, right) = side_charts(&p, &pt).unwrap();
    let right = right.unwrap();
    assert_eq!(right.germ.vars()[5], "x3");
    assert_eq!(right.kernel, PolyVectorField::coordinate(right.germ.vars(), 5));
}

#[test]
fn one_sided_monomial_types() {
    for r in 1..=4u32 {
        let p = PhaseSpec::oscillatory(1, &format!("x1*z1^{}/{}", r + 1, r + 1)).unwrap();
        let l = one_sided_type(&p, &zeros(2), Side::Left, 8).unwrap();
        let rt = one_sided_type(&p, &zeros(2), Side::Right, 8).unwrap();
        // oracle: h = z^r, r z-derivatives reach r!
        assert_eq!(l.order, TypeOrder::Finite(r));
        assert_eq!(rt.order, TypeOrder::Exceeds(8));
        assert_eq!(l.simple_rank_drop, r == 1);
    }
}

fn curve_mn(m: u32, n: u32) -> PhaseSpec {
    PhaseSpec::curve_average(&[&format!("a^{m}/{m}"), &format!("a^{n}/{n}")]).unwrap()
}

/// (x1, x2, x3, xi2, xi3, y1)
fn curve_point(x1: Rational, y1: Rational, xi2: Rational, xi3: Rational) -> Vec<Rational> {
    vec![x1, int(0), int(0), xi2, xi3, y1]
}

#[test]
fn curve_fold_at_singular_point() {
    let p = curve_mn(2, 3);
    let pt = curve_point(int(0), int(0), int(0), int(1));
    let t = one_sided_type(&p, &pt, Side::Left, 6).unwrap();
    assert_eq!(t.order, TypeOrder::Finite(1));
}

#[test]
fn curve_type_bounded_by_n_minus_two() {
    for (m, n) in [(2u32, 3u32), (2, 4), (2, 5), (3, 4), (3, 5), (4, 6)] {
        let p = curve_mn(m, n);
        for u in [rat(0, 1), rat(1, 2), rat(-1, 3), int(2)] {
            // choose ξ on S_1: (m−1)u^{m−2} ξ2 + (n−1)u^{n−2} ξ3 = 0
            let xi3 = int(1);
            let xi2 = if u == int(0) {
                int(0)
            } else {
                let num = int(n as i64 - 1) * pow(&u, n - 2);
                let den = int(m as i64 - 1) * pow(&u, m - 2);
                -(num / den)
            };
            let pt = curve_point(int(0), u.clone(), xi2, xi3);
            let t = one_sided_type(&p, &pt, Side::Left, 10).unwrap();
            let k = t.order.finite().expect("finite type");
            assert!(k >= 1 && k <= n - 2, "m={m} n={n} u={u} type={k}");
        }
    }
}

fn pow(r: &Rational, e: u32) -> Rational {
    (0..e).fold(int(1), |acc, _| acc * r)
}

#[test]
fn conormal_mixed_types() {
    // S_{x2} = y1 must not vanish at the base point
    let p = PhaseSpec::conormal("x1 + x2*y1").unwrap();
    assert!(mixed_types(&p, &zeros(3), 8).is_err());
    assert_eq!(mixed_types(&p, &[int(0), int(0), int(1)], 8).unwrap(), vec![(0, 0)]);
    for n in 2..=6u32 {
        let p = PhaseSpec::conormal(&format!("x2 + (x1 - y1)^{n}/{n}")).unwrap();
        let got = mixed_types(&p, &zeros(3), 8).unwrap();
        // oracle: Δ = −(n−1)u^{n−2} with u = x1 − y1, and X^j Y^k act as ±∂_u^{j+k}
        let v = var_list(&["u"]);
        let mut delta = parse_poly(&format!("-({})*u^{}", n - 1, n - 2), &v).unwrap();
        let mut order = 0;
        while delta.eval(&[int(0)]) == int(0) {
            delta = delta.diff(0);
            order += 1;
        }
        let want: Vec<(u32, u32)> = (0..=order).map(|j| (j, order - j)).collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, want, "n={n}");
    }
}

#[test]
fn mixed_pairs_survive_phase_scaling() {
    for src in ["(x1 - z1)^4", "x1*z1^3/3 + x1^2*z1^2", "x1*z1 + x2*z2^3 + x1*x2*z2^2"] {
        let d = if src.contains("x2") { 2 } else { 1 };
        let base = PhaseSpec::oscillatory(d, src).unwrap();
        let want = mixed_types(&base, &zeros(2 * d), 8).unwrap();
        for c in ["2", "-3", "1/5"] {
            let p = PhaseSpec::oscillatory(d, &format!("{c}*({src})")).unwrap();
            assert_eq!(mixed_types(&p, &zeros(2 * d), 8).unwrap(), want, "{src} × {c}");
        }
    }
}

#[test]
fn mixed_exceeds_max_order() {
    let p = PhaseSpec::oscillatory(1, "x1*z1^10/10").unwrap();
    assert_eq!(
        mixed_types(&p, &zeros(2), 3).unwrap_err(),
        DegeneracyError::ExceedsMaxOrder(3)
    );
}

#[test]
fn morin_normal_forms_classify() {
    for r in 1..=3usize {
        let n = r;
        let mut src = format!("t{n}^{}", r + 1);
        for i in 1..r {
            src.push_str(&format!(" + t{i}*t{n}^{i}"));
        }
        let p = PhaseSpec::germ(n, &src).unwrap();
        let rep = classify(&p, &zeros(n), 8).unwrap();
        assert_eq!(rep.morin_left, MorinClass::Morin(r as u32), "{src}");
        assert_eq!(rep.type_left, Some(TypeOrder::Finite(r as u32)));
    }
}

#[test]
fn curve_goldens() {
    let pt = curve_point(int(0), int(0), int(0), int(1));
    let fold = classify(&curve_mn(2, 3), &pt, 8).unwrap();
    assert_eq!(fold.morin_left, MorinClass::Morin(1));
    assert_eq!(fold.morin_right, MorinClass::Morin(1));
    assert_eq!(fold.type_left, Some(TypeOrder::Finite(1)));

    let cusp = classify(&curve_mn(2, 4), &pt, 8).unwrap();
    assert_eq!(cusp.morin_left, MorinClass::Morin(2));
    assert_eq!(cusp.type_left, Some(TypeOrder::Finite(2)));
    let (left, _) = side_charts(&curve_mn(2, 4), &pt).unwrap();
    let s11 = flag_manifold(&left.germ, 2);
    let v = left.germ.vars().clone();
    let diag = parse_poly("x1 - y1", &v).unwrap();
    let cof = s11[1].div_exact(&diag).unwrap();
    assert_ne!(cof.eval(&pt), int(0));

    let ns = classify(&curve_mn(3, 4), &pt, 8).unwrap();
    assert_eq!(ns.morin_left, MorinClass::NotSmoothSingularVariety);
    assert!(!ns.simple_rank_drop);
}

#[test]
fn rigid_goldens() {
    let (p, pt) = rigid3();
    let rep = classify(&p, &pt, 8).unwrap();
    assert_eq!(rep.morin_left, MorinClass::Blowdown);
    assert!(rep.blowdown_left);
    assert_eq!(rep.morin_right, MorinClass::Morin(1));
    assert_eq!(rep.type_right, Some(TypeOrder::Finite(1)));
    assert!(matches!(rep.type_left, Some(TypeOrder::Exceeds(_))));
    // strong Morin on the right: (γ, −1) and its derivatives span
    let v = var_list(&["a"]);
    let psi: Vec<MultiPoly> = ["a", "a^2/2", "-1"]
        .iter()
        .map(|s| parse_poly(s, &v).unwrap())
        .collect();
    assert!(curve_flag_check(&psi, &int(0), 3).unwrap().independent);
}

#[test]
fn flag_check_on_curve_derivatives() {
    let v = var_list(&["a"]);
    let dg: Vec<MultiPoly> = ["1", "a", "a^2"]
        .iter()
        .map(|s| parse_poly(s, &v).unwrap())
        .collect();
    let fc = curve_flag_check(&dg, &int(0), 3).unwrap();
    assert!(fc.independent);
    assert_eq!(fc.determinant, Some(int(2)));
}

#[test]
fn blowdown_germ_has_exact_divisibility() {
    let v = var_list(&["t1", "t2"]);
    let h = parse_poly("t1*t2 + t1^2*t2", &v).unwrap();
    let out = morin_classify(&h, &zeros(2), 4).unwrap();
    assert!(out.blowdown);
}

#[test]
fn predictions() {
    let nd = PhaseSpec::oscillatory(1, "x1*z1").unwrap();
    let rep = classify(&nd, &zeros(2), 8).unwrap();
    assert_eq!(predicted_decay(&nd, &rep).value(), Some(&rat(-1, 2)));

    let os = PhaseSpec::oscillatory(1, "x1*z1^3/3").unwrap();
    let rep = classify(&os, &zeros(2), 8).unwrap();
    let pr = predicted_decay(&os, &rep);
    assert_eq!(pr.value(), Some(&rat(-1, 6)));
    assert_eq!(pr.governing(), Some("one-sided-type"));

    let ts = PhaseSpec::oscillatory(1, "(x1 - z1)^4").unwrap();
    let rep = classify(&ts, &zeros(2), 8).unwrap();
    assert_eq!(predicted_decay(&ts, &rep).value(), Some(&rat(-1, 4)));

    let t3 = PhaseSpec::oscillatory(1, "(x1 - z1)^3").unwrap();
    let rep = classify(&t3, &zeros(2), 8).unwrap();
    assert_eq!(predicted_decay(&t3, &rep).value(), Some(&rat(-1, 3)));

    let o5 = PhaseSpec::oscillatory(1, "x1*z1^5/5").unwrap();
    let rep = classify(&o5, &zeros(2), 8).unwrap();
    let pr = predicted_decay(&o5, &rep);
    assert_eq!(pr.value(), Some(&rat(-1, 10)));
    assert!(pr.is_conjectural());

    let n2 = PhaseSpec::oscillatory(2, "x1*z1 + x2*z2").unwrap();
    let rep = classify(&n2, &zeros(4), 8).unwrap();
    assert_eq!(predicted_decay(&n2, &rep).value(), Some(&int(-1)));

    let cn = PhaseSpec::conormal("x2 + (x1 - y1)^3/3").unwrap();
    let rep = classify(&cn, &zeros(3), 8).unwrap();
    assert_eq!(predicted_decay(&cn, &rep).value(), Some(&rat(-5, 6)));

    let fr = PhaseSpec::frequency(1, 1, "x1*z1 + th1^2/2").unwrap();
    let rep = classify(&fr, &zeros(3), 8).unwrap();
    assert_eq!(predicted_decay(&fr, &rep).value(), Some(&int(-1)));

    let g = PhaseSpec::germ(1, "t1^2").unwrap();
    let rep = classify(&g, &zeros(1), 8).unwrap();
    assert!(matches!(predicted_decay(&g, &rep), Prediction::NoPrediction { .. }));

    let (rx, pt) = rigid3();
    let rep = classify(&rx, &pt, 8).unwrap();
    assert_eq!(predicted_decay(&rx, &rep).value(), Some(&rat(-1, 2)));

    let pt = curve_point(int(0), int(0), int(0), int(1));
    let rep = classify(&curve_mn(2, 3), &pt, 8).unwrap();
    assert_eq!(predicted_decay(&curve_mn(2, 3), &rep).value(), Some(&rat(-1, 3)));
    let rep = classify(&curve_mn(2, 4), &pt, 8).unwrap();
    assert!(predicted_decay(&curve_mn(2, 4), &rep).value().is_none());
}

#[test]
fn conormal_rejects_y2() {
    assert!(PhaseSpec::conormal("x1 + y2").is_err());
}

// ---------- properties ----------

fn cubic_terms(max_deg: u16) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for a in 0..=max_deg {
        for b in 0..=max_deg - a {
            for c in 0..=max_deg - a - b {
                out.push(vec![a, b, c, 0]);
            }
        }
    }
    out
}

fn random_s(coeffs: &[(i64, i64)], min_deg: u16, max_deg: u16) -> MultiPoly {
    let v = conormal_vars();
    let monos: Vec<Vec<u16>> = cubic_terms(max_deg)
        .into_iter()
        .filter(|e| e.iter().sum::<u16>() >= min_deg)
        .collect();
    MultiPoly::from_terms(
        &v,
        monos
            .into_iter()
            .zip(coeffs.iter())
            .map(|(e, &(n, d))| (e, rat(n, d))),
    )
}

fn pair_strategy(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-4i64..=4, 1i64..=3), n)
}

fn binomial(n: u32, k: u32) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

fn staircase_oracle(e: &[(u32, u32)]) -> Rational {
    // LP on the diagonal: the optimum uses at most two of the points
    let pts: Vec<(Rational, Rational)> = e
        .iter()
        .map(|&(j, k)| (int(j as i64 + 1), int(k as i64 + 1)))
        .collect();
    let mut best: Option<Rational> = None;
    let mut consider = |t: Rational| {
        if best.as_ref().is_none_or(|b| &t < b) {
            best = Some(t);
        }
    };
    for p in &pts {
        consider(p.0.clone().max(p.1.clone()));
    }
    for p in &pts {
        for q in &pts {
            // t = s p + (1−s) q with both coordinates equal, 0 ≤ s ≤ 1
            let fp = &p.0 - &p.1;
            let fq = &q.0 - &q.1;
            if fp == fq {
                continue;
            }
            let s = -fq.clone() / (&fp - &fq);
            if s >= int(0) && s <= int(1) {
                consider(&s * &p.0 + (int(1) - &s) * &q.0);
            }
        }
    }
    best.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn rotational_curvature_identity(c in pair_strategy(20)) {
        let s = random_s(&c, 0, 3);
        let r = rotational_curvature(&s).unwrap();
        prop_assert!(r.agree(), "S = {}", s);
    }

    #[test]
    fn conormal_interleavings_agree(c in pair_strategy(20), n in 3u32..=5) {
        let v = conormal_vars();
        let mut s = random_s(&c, 4, 5);
        s = &s + &parse_poly(&format!("x2 + (x1 - y1)^{n}/{n}"), &v).unwrap();
        let p = PhaseSpec { d_left: 2, d_right: 2, kind: oscillab::degeneracy::PhaseKind::Conormal2d { s } };
        let table = interleaving_values(&p, &zeros(3), 6).unwrap();
        for ((j, k), vals) in table {
            prop_assert_eq!(vals.len(), binomial(j + k, j));
            prop_assert!(vals.iter().all(|x| x == &vals[0] && *x != int(0)));
        }
    }

    #[test]
    fn oscillatory_interleavings_agree(c in pair_strategy(20)) {
        // Φ = x1 z1 + cubic and higher terms: corank 1 at the origin
        let ring = oscillab::degeneracy::oscillatory_vars(2);
        let mut monos = Vec::new();
        for a in 0..=2u16 { for b in 0..=2u16 { for e in 0..=2u16 { for f in 0..=2u16 {
            let deg = a + b + e + f;
            if (3..=4).contains(&deg) && a + b >= 1 && e + f >= 1 { monos.push(vec![a, b, e, f]); }
        }}}}
        let mut phi = MultiPoly::from_terms(&ring, monos.into_iter().zip(c.iter()).map(|(m, &(n, d))| (m, rat(n, d))));
        phi = &phi + &parse_poly("x1*z1", &ring).unwrap();
        let p = PhaseSpec { d_left: 2, d_right: 2, kind: oscillab::degeneracy::PhaseKind::Oscillatory { phi } };
        if let Ok(table) = interleaving_values(&p, &zeros(4), 5) {
            for ((j, k), vals) in table {
                prop_assert_eq!(vals.len(), binomial(j + k, j));
                prop_assert!(vals.iter().all(|x| x == &vals[0] && *x != int(0)));
            }
        }
    }

    #[test]
    fn newton_polygon_properties(e in prop::collection::vec((0u32..6, 0u32..6), 1..6), extra in (0u32..6, 0u32..6)) {
        let r = newton_predict(&e);
        prop_assert_eq!(&r.t_c, &staircase_oracle(&e));
        prop_assert_eq!(&r.alpha, &(int(1) / (int(2) * &r.t_c)));
        // convex staircase: x ascending, y descending, slopes turning counterclockwise
        let v = &r.polygon_vertices;
        for w in v.windows(2) {
            prop_assert!(w[0].0 < w[1].0 && w[0].1 > w[1].1);
        }
        for w in v.windows(3) {
            let cr = (&w[1].0 - &w[0].0) * (&w[2].1 - &w[0].1) - (&w[1].1 - &w[0].1) * (&w[2].0 - &w[0].0);
            prop_assert!(cr > int(0));
        }
        // (t_c, t_c) is a boundary point: inside the hull but no smaller diagonal point is
        let t = &r.t_c;
        let on_ray = v.iter().any(|p| &p.0 <= t && &p.1 <= t);
        let on_edge = v.windows(2).any(|w| {
            let fa = &w[0].0 - &w[0].1;
            let fb = &w[1].0 - &w[1].1;
            fa <= int(0) && fb >= int(0)
        });
        prop_assert!(on_ray || on_edge);
        // growing E can only move the diagonal point inward
        let mut bigger = e.clone();
        bigger.push(extra);
        let rb = newton_predict(&bigger);
        prop_assert!(rb.t_c <= r.t_c);
        prop_assert!(rb.alpha >= r.alpha);
        if e.len() == 1 {
            let (j, k) = e[0];
            prop_assert_eq!(&r.t_c, &int(j.max(k) as i64 + 1));
        }
    }
}

#[test]
fn type_zero_one_region_vertex() {
    let r = newton_predict(&[(0, 1)]);
    assert!(r.lp_region_vertices.contains(&(rat(1, 3), rat(1, 3))));
}

#[test]
fn conormal_newton_from_mixed_types() {
    for n in 2..=5u32 {
        let p = PhaseSpec::conormal(&format!("x2 + (x1 - y1)^{n}/{n}")).unwrap();
        let e = mixed_types(&p, &zeros(3), 8).unwrap();
        let r = newton_predict(&e);
        assert_eq!(r.t_c, rat(n as i64, 2));
        assert_eq!(r.alpha, rat(1, n as i64));
    }
}
