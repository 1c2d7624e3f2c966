use num_traits::Zero;

use crate::degeneracy::hessian_and_kernel_fields;
use crate::numerics::{assemble_kernel, operator_norm_with, AssembleOptions, Cutoff, GridSpec, NormOptions};
use crate::symcore::Rational;

use super::{fit_slope, CatalogEntry, ExperimentError, NumericSetup, SweepOptions, Verdict};

/// Allowance on top of the constant calibrated at the smallest l.
pub const LOCALIZED_SLACK: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct LocalizedPoint {
    pub l: u32,
    pub counts: Vec<usize>,
    pub norm: f64,
    pub diagnostic: f64,
    pub diag_pass: bool,
    /// min{2^{l/2}λ^{−1/2}, 2^{−(l+j+k)/2}}·λ^{−(d−1)/2}
    pub bound: f64,
    pub ratio: f64,
    pub within: bool,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct LocalizedRun {
    pub entry: String,
    pub lambda: f64,
    pub windows: Option<(u32, u32)>,
    /// l₀ = ⌊log₂ √λ⌋
    pub l_max: u32,
    pub points: Vec<LocalizedPoint>,
    /// norm/bound at the smallest l ≥ 1.
    pub calibration: f64,
    pub slack: f64,
    /// Slope of log₂ norm against l over l ≥ 1.
    pub l_slope: Option<f64>,
    /// l where the two branches of the envelope meet.
    pub crossover: f64,
    /// l ≥ 1 with the smallest norm/bound.
    pub argmin_ratio: Option<u32>,
    pub holds: bool,
    pub verdict: Verdict,
}

fn normalized(p: &crate::symcore::MultiPoly) -> crate::symcore::MultiPoly {
    match p.leading_term() {
        Some((_, c)) if !c.is_zero() => p.scale(&(Rational::from_integer(1.into()) / c)),
        _ => p.clone(),
    }
}

/// Norms of T_λ with σ·β₁(2^l h) (and optionally β_j(2^{l/2}V_R h)·β_k(2^{l/2}V_L h)), checked
/// one-sidedly against the calibrated envelope. `l = 0` measures the unlocalized operator.
///
/// h is det Φ_xz scaled to a monic leading term; the entry's own cutoffs are dropped so that the
/// dyadic pieces alone localize near {h = 0}.
pub fn localized_sweep(
    entry: &CatalogEntry,
    lambda: f64,
    ls: &[u32],
    windows: Option<(u32, u32)>,
    opts: &SweepOptions,
) -> Result<LocalizedRun, ExperimentError> {
    let Some(NumericSetup::Operator { amplitude, .. }) = &entry.numeric else {
        return Err(ExperimentError::Unsupported(format!("{} has no operator setup", entry.name)));
    };
    if !(lambda.is_finite() && lambda >= 4.0) {
        return Err(ExperimentError::Argument(format!("lambda must be at least 4, got {lambda}")));
    }
    let l_max = (lambda.sqrt().log2() + 1e-12).floor() as u32;
    if ls.is_empty() {
        return Err(ExperimentError::Argument("l list is empty".into()));
    }
    if let Some(&bad) = ls.iter().find(|&&l| l > l_max) {
        return Err(ExperimentError::Argument(format!(
            "l = {bad} is out of range: 2^l must not exceed sqrt(lambda), so l <= {l_max}"
        )));
    }
    if ls.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ExperimentError::Argument("l list must be strictly increasing".into()));
    }
    if !ls.iter().any(|&l| l >= 1) {
        return Err(ExperimentError::Argument("at least one l >= 1 is needed for calibration".into()));
    }
    let kd = hessian_and_kernel_fields(&entry.phase, &entry.point)?;
    let h = normalized(&kd.h);
    let vr = kd.v_right.apply(&h)?;
    let vl = kd.v_left.apply(&h)?;
    let d = entry.phase.d_left as f64;
    let phi = entry.phase.phi().expect("operator setups carry a scalar phase");
    let mut base = amplitude.clone();
    base.cutoffs.clear();
    let aopts = AssembleOptions { strict: opts.strict, rule: opts.rule, ..AssembleOptions::default() };
    let mut nopts = NormOptions::new(opts.tol);
    nopts.seed = opts.seed;
    let (j, k) = windows.unwrap_or((0, 0));
    let envelope = |l: u32| {
        let l = l as f64;
        let a = (l / 2.0).exp2() / lambda.sqrt();
        let b = (-(l + (j + k) as f64) / 2.0).exp2();
        a.min(b) * lambda.powf(-(d - 1.0) / 2.0)
    };

    let mut points = Vec::with_capacity(ls.len());
    for &l in ls {
        let mut amp = base.clone();
        if l > 0 {
            amp = amp.with_cutoff(Cutoff::new(h.clone(), (l as f64).exp2(), 1));
        }
        if let Some((j, k)) = windows {
            let s = (l as f64 / 2.0).exp2();
            amp = amp.with_cutoff(Cutoff::new(vr.clone(), s, j)).with_cutoff(Cutoff::new(vl.clone(), s, k));
        }
        let grid = GridSpec::resolved(&phi, &amp, lambda, &opts.rule);
        let kern = assemble_kernel(&entry.phase, &amp, lambda, &grid, &aopts)?;
        let norm = operator_norm_with(&kern, &nopts)?.value;
        let fine = operator_norm_with(&assemble_kernel(&entry.phase, &amp, lambda, &grid.doubled(), &aopts)?, &nopts)?.value;
        let diagnostic = if norm > 0.0 { (fine - norm).abs() / norm } else { fine };
        let bound = envelope(l);
        points.push(LocalizedPoint {
            l,
            counts: grid.counts(),
            norm,
            diagnostic,
            diag_pass: diagnostic < opts.doubling_threshold && !grid.under_resolved,
            bound,
            ratio: norm / bound,
            within: true,
        });
    }

    let checked: Vec<usize> = (0..points.len()).filter(|&i| points[i].l >= 1).collect();
    let calibration = points[checked[0]].ratio;
    let limit = LOCALIZED_SLACK * calibration;
    for &i in &checked {
        points[i].within = points[i].ratio <= limit;
    }
    let holds = checked.iter().all(|&i| points[i].within);
    let argmin_ratio = checked
        .iter()
        .min_by(|&&a, &&b| points[a].ratio.total_cmp(&points[b].ratio))
        .map(|&i| points[i].l);
    let xy: Vec<(f64, f64)> = checked
        .iter()
        .filter(|&&i| points[i].norm > 0.0)
        .map(|&i| (points[i].l as f64, points[i].norm.log2()))
        .collect();
    let l_slope = fit_slope(&xy).ok().map(|(s, _)| s);
    let verdict = if !points.iter().all(|p| p.diag_pass) {
        Verdict::Inconclusive
    } else if holds {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(LocalizedRun {
        entry: entry.name.clone(),
        lambda,
        windows,
        l_max,
        points,
        calibration,
        slack: LOCALIZED_SLACK,
        l_slope,
        crossover: (lambda.log2() - (j + k) as f64) / 2.0,
        argmin_ratio,
        holds,
        verdict,
    })
}
