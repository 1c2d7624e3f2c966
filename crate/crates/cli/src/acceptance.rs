//! The acceptance suite: thirteen criteria, each checked against values fixed here rather than
//! against the library's own catalog, with independent oracles where a value is derived.

use std::time::Instant;

use num_traits::Zero;
use oscillab::brackets::{
    bch, gamma_r_from_bch, gamma_r_from_xhat, group_g_r, monomial_curve, xhat_formal, curve_weights, GroupModel,
    Independence, LieSeries,
};
use oscillab::degeneracy::{
    classify, curve_flag_check, flag_manifold, mixed_types, newton_predict, side_charts, MorinClass, DEFAULT_MAX_ORDER,
};
use oscillab::experiments::{decay_sweep, find_entry, localized_sweep, DecayRun, NumericSetup, SweepOptions, Verdict};
use oscillab::numerics::{assemble_kernel, operator_norm_with, AssembleOptions, GridSpec, NormOptions, ResolutionRule};
use oscillab::symcore::{gap_intervals, gap_verify, int, parse_poly, rat, var_list, MultiPoly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Entries, ExperimentConfig, Job};

/// Criteria that cannot pass as literally stated; they are reported but do not decide the status.
pub const KNOWN_FAILURES: &[u32] = &[3];

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub pass: bool,
    pub known_failure: bool,
    pub seconds: f64,
    pub detail: String,
}

impl Criterion {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} {}: {}{} ({:.1}s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            if self.known_failure && !self.pass { " [known failure]" } else { "" },
            self.seconds
        )
    }
}

type Check = (bool, String);

fn timed(id: u32, title: &'static str, f: impl FnOnce() -> Check) -> Criterion {
    let t = Instant::now();
    let (pass, detail) = match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (false, format!("error: {msg}"))
        }
    };
    Criterion { id, title, pass, known_failure: KNOWN_FAILURES.contains(&id), seconds: t.elapsed().as_secs_f64(), detail }
}

/// Runs every criterion in order, calling `progress` as each one finishes.
pub fn run_suite(progress: &mut dyn FnMut(&Criterion)) -> Vec<Criterion> {
    let mut out = Vec::new();
    let mut push = |c: Criterion| {
        progress(&c);
        out.push(c);
    };
    push(timed(1, "CH coefficients", c1_bch));
    push(timed(2, "corrected fields", c2_xhat));
    push(timed(3, "Heisenberg and Mizohata G_R", c3_groups));
    push(timed(4, "classification goldens", c4_classification));
    push(timed(5, "Newton polygon", c5_newton));
    push(timed(6, "gap lemma", c6_gap));
    let mut runs: Vec<DecayRun> = Vec::new();
    let mut sweep = |names: &[&str]| -> Vec<DecayRun> {
        let got: Vec<DecayRun> = names
            .par_iter()
            .map(|n| {
                let e = find_entry(n).expect("catalog entry");
                let l = e.numeric.as_ref().expect("numeric setup").lambdas().values();
                decay_sweep(&e, &l, &SweepOptions::default()).expect("sweep runs")
            })
            .collect();
        runs.extend(got.iter().cloned());
        got
    };
    push(timed(7, "nondegenerate_1d slope", || {
        let r = sweep(&["nondegenerate_1d"]);
        c7_nd1(&r[0])
    }));
    push(timed(8, "nondegenerate_2d slope", || {
        let r = sweep(&["nondegenerate_2d"]);
        c8_nd2(&r[0])
    }));
    push(timed(9, "one-sided slopes", || {
        let r = sweep(&["onesided_1", "onesided_2", "onesided_3", "onesided_4"]);
        c9_onesided(&r)
    }));
    push(timed(10, "two-sided slopes", || {
        let r = sweep(&["twosided_3", "twosided_4"]);
        c10_twosided(&r)
    }));
    push(timed(11, "multiplier slopes", || {
        let r = sweep(&["moment_curve_2", "moment_curve_3", "rigid_xray_3"]);
        c11_multipliers(&r)
    }));
    push(timed(12, "localized bound", c12_localized));
    push(timed(13, "oracle equivalence and reproducibility", || c13_oracles(&runs)));
    out
}

fn all_ok(parts: &[(&str, bool)]) -> Check {
    let bad: Vec<&str> = parts.iter().filter(|p| !p.1).map(|p| p.0).collect();
    if bad.is_empty() {
        (true, format!("{} checks exact", parts.len()))
    } else {
        (false, format!("mismatch in {}", bad.join(", ")))
    }
}

fn lin(terms: &[(Rational, &LieSeries)]) -> LieSeries {
    let mut s = terms[0].1.scale(&Rational::zero());
    for (c, t) in terms {
        s = s.checked_add(&t.scale(c)).expect("same algebra");
    }
    s
}

fn br(a: &LieSeries, b: &LieSeries) -> LieSeries {
    a.bracket(b).expect("same algebra")
}

fn c1_bch() -> Check {
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
    let got = bch(a, b, 4).expect("step 4 supported");
    all_ok(&[("log(e^A e^B) through weight 4", got == want)])
}

fn c2_xhat() -> Check {
    let w = curve_weights(5);
    let x: Vec<LieSeries> = (0..5).map(|i| LieSeries::generator(&w, 5, i).expect("generator")).collect();
    let want = [
        x[0].clone(),
        x[1].clone(),
        lin(&[(int(1), &x[2]), (rat(-1, 6), &br(&x[0], &x[1]))]),
        lin(&[(int(1), &x[3]), (rat(-1, 4), &br(&x[0], &x[2])), (rat(1, 24), &br(&x[0], &br(&x[0], &x[1])))]),
        lin(&[
            (int(1), &x[4]),
            (rat(-3, 10), &br(&x[0], &x[3])),
            (rat(-1, 10), &br(&x[1], &x[2])),
            (rat(1, 15), &br(&x[0], &br(&x[0], &x[2]))),
            (rat(1, 30), &br(&x[1], &br(&x[0], &x[1]))),
            (rat(-1, 120), &br(&x[0], &br(&x[0], &br(&x[0], &x[1])))),
        ]),
    ];
    let got = xhat_formal(5).expect("n = 5 supported");
    let names = ["X^1", "X^2", "X^3", "X^4", "X^5"];
    let mut parts: Vec<(&str, bool)> = names.iter().zip(got.iter().zip(&want)).map(|(n, (g, w))| (*n, g == w)).collect();
    let third = xhat_formal(3).map(|v| v[2].to_string()).unwrap_or_default();
    parts.push(("X^3 text", third == "X3 - 1/6*[X1,X2]"));
    for (n, label) in [(3, "identity n=3"), (4, "identity n=4"), (5, "identity n=5")] {
        let ok = match (xhat_formal(n), gamma_r_from_bch(n)) {
            (Ok(xh), Ok(g)) => gamma_r_from_xhat(&xh).map(|s| s == g).unwrap_or(false),
            _ => false,
        };
        parts.push((label, ok));
    }
    all_ok(&parts)
}

fn c3_groups() -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    // Heisenberg, as quoted
    let ring = var_list(&["t", "alpha"]);
    let r = |s: &str| parse_poly(s, &ring).expect("parses");
    let curve = monomial_curve(&ring, &[r("1"), r("1"), r("alpha")]);
    let h = group_g_r(&GroupModel::heisenberg(), &curve, 8).expect("heisenberg G_R");
    let quoted = vec![r("1"), r("2*t"), r("(3*alpha + 1/6)*t^2")];
    if h.components != quoted {
        ok = false;
        let got: Vec<String> = h.components.iter().map(|c| c.to_string()).collect();
        notes.push(format!("Heisenberg G_R = ({}) differs from the quoted (1, 2*t, (3*alpha + 1/6)*t^2)", got.join(", ")));
    }
    let h_locus = h.locus == vec![r("alpha + 1/6")];
    let h_deg = h.independence_at(&[("alpha", rat(-1, 6))]).ok() == Some(Independence::Degenerate);
    if !(h_locus && h_deg) {
        ok = false;
        notes.push("Heisenberg degeneracy is not exactly alpha = -1/6".into());
    } else {
        notes.push("Heisenberg degenerate exactly at alpha = -1/6".into());
    }
    // Mizohata
    let ring = var_list(&["t", "alpha", "beta"]);
    let q = |s: &str| parse_poly(s, &ring).expect("parses");
    let curve = monomial_curve(&ring, &[q("1"), q("1"), q("alpha"), q("beta")]);
    let m = group_g_r(&GroupModel::mizohata(), &curve, 8).expect("mizohata G_R");
    let want = vec![q("1"), q("2*t"), q("(6*alpha + 1)/2*t^2"), q("(alpha + 4*beta + 1/6)*t^3")];
    let m_comp = m.components == want;
    let mut locus: Vec<MultiPoly> = m.locus.clone();
    locus.sort_by_key(|f| f.to_string());
    let mut want_locus = vec![q("alpha + 1/6"), q("alpha + 4*beta + 1/6")];
    want_locus.sort_by_key(|f| f.to_string());
    let m_locus = locus == want_locus && m.residual.is_constant();
    // DR_y displayed entry by entry
    let yr = var_list(&["y1", "y2", "y3", "y4"]);
    let y = |s: &str| parse_poly(s, &yr).expect("parses");
    let display = [
        ["1", "0", "0", "0"],
        ["0", "1", "0", "0"],
        ["y2/2", "-y1/2", "1", "0"],
        ["(6*y3 - y1*y2)/12", "y1^2/12", "-y1/2", "1"],
    ];
    let dr = GroupModel::mizohata().right_translation_differential();
    let m_dr = (0..4).all(|i| (0..4).all(|j| dr[i][j] == y(display[i][j])));
    if !(m_comp && m_locus && m_dr) {
        ok = false;
    }
    notes.push(format!("Mizohata components {m_comp}, locus {m_locus}, DR_y {m_dr}"));
    (ok, notes.join("; "))
}

fn c4_classification() -> Check {
    let mut parts: Vec<(String, bool)> = Vec::new();
    let e23 = find_entry("curve_mn:2,3").expect("entry");
    let r23 = classify(&e23.phase, &e23.point, DEFAULT_MAX_ORDER).expect("classify");
    parts.push(("curve_mn(2,3) fold".into(), r23.morin_left == MorinClass::Morin(1) && r23.morin_right == MorinClass::Morin(1)));

    let e24 = find_entry("curve_mn:2,4").expect("entry");
    let r24 = classify(&e24.phase, &e24.point, DEFAULT_MAX_ORDER).expect("classify");
    let cusp = r24.morin_left == MorinClass::Morin(2) && r24.morin_right == MorinClass::Morin(2);
    let s11 = side_charts(&e24.phase, &e24.point)
        .ok()
        .map(|(left, _)| {
            let f = flag_manifold(&left.germ, 2);
            let diag = parse_poly("x1 - y1", left.germ.vars()).expect("parses");
            // S_{1,1} = S_1 ∩ {V h = 0}; the second condition is (x1 − y1)·(unit)
            match f.get(1).and_then(|g| g.div_exact(&diag).ok()) {
                Some(cof) => !cof.eval(&left.point).is_zero(),
                None => false,
            }
        })
        .unwrap_or(false);
    parts.push(("curve_mn(2,4) cusp".into(), cusp));
    parts.push(("curve_mn(2,4) S11 = {x1 = y1}".into(), s11));

    let e34 = find_entry("curve_mn:3,4").expect("entry");
    let r34 = classify(&e34.phase, &e34.point, DEFAULT_MAX_ORDER).expect("classify");
    parts.push((
        "curve_mn(3,4) not smooth".into(),
        r34.morin_left == MorinClass::NotSmoothSingularVariety && r34.morin_right == MorinClass::NotSmoothSingularVariety,
    ));

    let rx = find_entry("rigid_xray_3").expect("entry");
    let rr = classify(&rx.phase, &rx.point, DEFAULT_MAX_ORDER).expect("classify");
    let vl_h_zero = side_charts(&rx.phase, &rx.point)
        .ok()
        .and_then(|(left, _)| left.kernel.apply(&left.det).ok())
        .map(|v| v.is_zero())
        .unwrap_or(false);
    parts.push(("rigid_xray(3) pi_L blowdown".into(), rr.morin_left == MorinClass::Blowdown && rr.blowdown_left));
    parts.push(("rigid_xray(3) V_L h = 0".into(), vl_h_zero));
    let a = var_list(&["a"]);
    let psi: Vec<MultiPoly> = ["a", "a^2/2", "-1"].iter().map(|s| parse_poly(s, &a).expect("parses")).collect();
    let strong = curve_flag_check(&psi, &int(0), 3).map(|f| f.independent).unwrap_or(false);
    parts.push(("rigid_xray(3) pi_R strong Morin".into(), strong && rr.morin_right == MorinClass::Morin(1)));

    for r in 1..=3u32 {
        let e = find_entry(&format!("morin_normal:{r}")).expect("entry");
        let rep = classify(&e.phase, &e.point, DEFAULT_MAX_ORDER).expect("classify");
        parts.push((format!("normal form r={r}"), rep.morin_left == MorinClass::Morin(r)));
    }
    let view: Vec<(&str, bool)> = parts.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    all_ok(&view)
}

/// Smallest t with (t,t) in the hull of the quadrants at (j+1, k+1): the optimum on the diagonal
/// uses at most two of the corner points.
fn diagonal_oracle(e: &[(u32, u32)]) -> Rational {
    let pts: Vec<(Rational, Rational)> = e.iter().map(|&(j, k)| (int(j as i64 + 1), int(k as i64 + 1))).collect();
    let mut best: Option<Rational> = None;
    let mut consider = |t: Rational| {
        if best.as_ref().is_none_or(|b| &t < b) {
            best = Some(t);
        }
    };
    for p in &pts {
        consider(p.0.clone().max(p.1.clone()));
        for q in &pts {
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
    best.expect("nonempty")
}

fn c5_newton() -> Check {
    let mut parts: Vec<(String, bool)> = Vec::new();
    for n in 2..=5u32 {
        let e = find_entry(&format!("conormal_t:{n}")).expect("entry");
        let pairs = match mixed_types(&e.phase, &e.point, DEFAULT_MAX_ORDER) {
            Ok(p) => p,
            Err(_) => {
                parts.push((format!("n={n} mixed types"), false));
                continue;
            }
        };
        let rep = newton_predict(&pairs);
        let oracle = diagonal_oracle(&pairs);
        parts.push((
            format!("n={n}"),
            rep.t_c == rat(n as i64, 2) && rep.alpha == rat(1, n as i64) && oracle == rep.t_c,
        ));
    }
    let region = newton_predict(&[(0, 1)]);
    parts.push(("type (0,1) region vertex (1/3,1/3)".into(), region.lp_region_vertices.contains(&(rat(1, 3), rat(1, 3)))));
    let view: Vec<(&str, bool)> = parts.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    all_ok(&view)
}

/// min over sign patterns of |Σ ± a_i h^i| against the largest term, on the grid off the intervals.
fn gap_oracle(coeffs: &[(u32, f64)], intervals: &[(f64, f64)], c: f64) -> bool {
    let n = coeffs.len();
    let steps = 100_000usize;
    for s in 0..=steps {
        let h = s as f64 / steps as f64;
        if intervals.iter().any(|&(lo, hi)| h >= lo && h <= hi) {
            continue;
        }
        let terms: Vec<f64> = coeffs.iter().map(|&(i, a)| a * h.powi(i as i32)).collect();
        let top = terms.iter().cloned().fold(0.0, f64::max);
        if top == 0.0 {
            continue;
        }
        for mask in 0..(1u32 << (n - 1)) {
            let mut v = terms[0];
            for (k, t) in terms.iter().enumerate().skip(1) {
                v += if mask >> (k - 1) & 1 == 1 { -t } else { *t };
            }
            if v.abs() * c < top * (1.0 - 1e-9) {
                return false;
            }
        }
    }
    true
}

fn c6_gap() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 1.0f64;
    for case in 0..100 {
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
                (i, 2f64.powf(-(l as f64) + rng.random_range(-2.0..=2.0)))
            })
            .collect();
        let g = match gap_intervals(&coeffs, m) {
            Ok(g) => g,
            Err(e) => return (false, format!("family {case}: {e}")),
        };
        let rep = gap_verify(&coeffs, &g, 1e-5, m);
        let count_ok = g.intervals.len() as f64 <= 10f64.powi(m as i32);
        let ratio_ok = g.intervals.iter().all(|&(lo, hi)| hi <= g.lower_bound_constant * lo * (1.0 + 1e-12));
        let oracle = gap_oracle(&coeffs, &g.intervals, g.lower_bound_constant);
        if !(rep.pass && count_ok && ratio_ok && oracle) {
            return (
                false,
                format!("family {case} {coeffs:?}: verify {} count {count_ok} ratio {ratio_ok} oracle {oracle}", rep.pass),
            );
        }
        worst = worst.max(g.lower_bound_constant);
    }
    (true, format!("100 families, largest C = {worst:.3}"))
}

fn slope_check(run: &DecayRun, target: f64, tol: f64) -> (bool, String) {
    let diag = run.all_diagnostics_pass();
    let ok = diag && run.slope.is_some_and(|s| (s - target).abs() <= tol);
    let s = run.slope.map(|s| format!("{s:.4}")).unwrap_or_else(|| "none".into());
    (ok, format!("{} {s} (target {target:.4} +- {tol}{})", run.entry, if diag { "" } else { ", diagnostics failed" }))
}

fn c7_nd1(run: &DecayRun) -> Check {
    let dyadic = run.lambdas() == (6..=13).map(|e| (e as f64).exp2()).collect::<Vec<_>>();
    let max_diag = run.points.iter().map(|p| p.diagnostic).fold(0.0, f64::max);
    let (ok, d) = slope_check(run, -0.5, 0.05);
    (ok && dyadic && max_diag < 0.01, format!("{d}, max doubling change {max_diag:.2e}"))
}

fn c8_nd2(run: &DecayRun) -> Check {
    let l = run.lambdas();
    let range = (l[0] - 4.0).abs() < 1e-9 && (l[l.len() - 1] - 48.0).abs() < 1e-6;
    let (ok, d) = slope_check(run, -1.0, 0.1);
    (ok && range, format!("{d}, lambda {}..{:.0} ({} points)", l[0], l[l.len() - 1], l.len()))
}

fn c9_onesided(runs: &[DecayRun]) -> Check {
    let targets = [(-0.25, 0.05), (-1.0 / 6.0, 0.04), (-0.125, 0.04), (-0.1, 0.04)];
    let mut ok = true;
    let mut notes = Vec::new();
    for (i, (run, &(t, tol))) in runs.iter().zip(&targets).enumerate() {
        let (pass, d) = slope_check(run, t, tol);
        if i < 3 {
            ok &= pass;
            notes.push(d);
        } else {
            let conj = run.conjectural;
            ok &= conj;
            notes.push(format!("{d} conjectural, {}", if pass { "agrees" } else { "exception" }));
        }
    }
    (ok, notes.join("; "))
}

fn c10_twosided(runs: &[DecayRun]) -> Check {
    let (a, da) = slope_check(&runs[0], -1.0 / 3.0, 0.05);
    let (b, db) = slope_check(&runs[1], -0.25, 0.05);
    (a && b, format!("{da}; {db}"))
}

fn c11_multipliers(runs: &[DecayRun]) -> Check {
    let dyadic: Vec<f64> = (4..=12).map(|e| (e as f64).exp2()).collect();
    let range = runs.iter().all(|r| r.lambdas() == dyadic);
    let (a, da) = slope_check(&runs[0], -0.5, 0.05);
    let (b, db) = slope_check(&runs[1], -1.0 / 3.0, 0.05);
    let (c, dc) = slope_check(&runs[2], -0.5, 0.07);
    (a && b && c && range, format!("{da}; {db}; {dc}"))
}

fn c12_localized() -> Check {
    let e = find_entry("twosided_4").expect("entry");
    let ls: Vec<u32> = (1..=5).collect();
    let run = match localized_sweep(&e, 1024.0, &ls, None, &SweepOptions::default()) {
        Ok(r) => r,
        Err(err) => return (false, err.to_string()),
    };
    let ratios: Vec<String> = run.points.iter().map(|p| format!("{:.3}", p.ratio / run.calibration)).collect();
    let ok = run.l_max == 5 && run.holds && run.verdict == Verdict::Pass;
    (ok, format!("l = 1..5 at lambda 1024, norm/bound relative to calibration [{}] <= {}", ratios.join(", "), run.slack))
}

fn c13_oracles(runs: &[DecayRun]) -> Check {
    // recorded cross-checks from the sweeps above
    let mut gaps = 0usize;
    let mut worst = 0.0f64;
    for r in runs {
        for p in &r.points {
            if let Some(g) = p.cross_check_gap {
                gaps += 1;
                worst = worst.max(g);
            }
        }
    }
    // fresh dense SVDs against Krylov-only estimates on every operator entry's small-λ kernels
    let mut fresh = 0usize;
    let rule = ResolutionRule::default();
    for name in ["nondegenerate_1d", "nondegenerate_2d", "onesided_1", "onesided_4", "twosided_3", "twosided_4"] {
        let e = find_entry(name).expect("entry");
        let Some(NumericSetup::Operator { amplitude, lambdas, .. }) = &e.numeric else { continue };
        let phi = e.phase.phi().expect("scalar phase");
        for lam in lambdas.values() {
            let grid = GridSpec::resolved(&phi, amplitude, lam, &rule);
            if grid.rows().max(grid.cols()) > 512 {
                continue;
            }
            let k = match assemble_kernel(&e.phase, amplitude, lam, &grid, &AssembleOptions::default()) {
                Ok(k) => k,
                Err(err) => return (false, format!("{name} at {lam}: {err}")),
            };
            let mut o = NormOptions::new(1e-8);
            o.svd_side_limit = 0;
            let krylov = operator_norm_with(&k, &o).map(|n| n.value).unwrap_or(f64::NAN);
            let svd = k.to_dense().singular_values().max();
            worst = worst.max((krylov - svd).abs() / svd);
            fresh += 1;
        }
    }
    let agree = worst < 1e-6 && gaps + fresh > 0;
    let repro = reproducible();
    (
        agree && repro.0,
        format!("{gaps} recorded and {fresh} fresh comparisons, worst gap {worst:.1e}; {}", repro.1),
    )
}

/// Runs one small decay config twice into separate directories and compares the files.
fn reproducible() -> Check {
    let base = std::env::temp_dir().join(format!("oscillab-acceptance-{}", std::process::id()));
    let mut dirs = Vec::new();
    for tag in ["a", "b"] {
        let dir = base.join(tag);
        let cfg = ExperimentConfig {
            job: Some(Job::Decay),
            entry: Some(Entries::One("twosided_3".into())),
            lambda_min: Some(16.0),
            lambda_max: Some(256.0),
            svg: true,
            out: Some(dir.clone()),
            ..ExperimentConfig::default()
        };
        let written = crate::jobs::run(&cfg).and_then(|r| crate::output::write_outputs(&r, &dir));
        if let Err(e) = written {
            return (false, format!("config run failed: {e}"));
        }
        dirs.push(dir);
    }
    let mut same = true;
    for f in ["results.csv", "summary.csv", "config.json", "twosided_3.svg"] {
        let a = std::fs::read(dirs[0].join(f));
        let b = std::fs::read(dirs[1].join(f));
        same &= matches!((a, b), (Ok(a), Ok(b)) if a == b);
    }
    let _ = std::fs::remove_dir_all(&base);
    (same, if same { "repeat run byte-identical".into() } else { "repeat run differs".into() })
}
