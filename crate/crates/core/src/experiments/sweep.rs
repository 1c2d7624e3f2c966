use crate::numerics::{
    assemble_kernel, multiplier_sup, operator_norm_with, AssembleOptions, GridSpec, MultiplierModel, NormOptions,
    ResolutionRule, SupSearch, DEFAULT_SEED,
};

use super::{CatalogEntry, ExperimentError, NumericSetup, Verdict};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepOptions {
    /// Relative tolerance of the norm estimate.
    pub tol: f64,
    pub strict: bool,
    pub seed: u64,
    pub rule: ResolutionRule,
    /// Largest relative change under grid doubling that still passes.
    pub doubling_threshold: f64,
    /// Largest relative gap between refined and coarse multiplier sups that still passes.
    pub refinement_threshold: f64,
    pub search: SupSearch,
    /// Overrides the entry's slope tolerance.
    pub slope_tolerance: Option<f64>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            tol: 1e-7,
            strict: false,
            seed: DEFAULT_SEED,
            rule: ResolutionRule::default(),
            doubling_threshold: 0.01,
            refinement_threshold: 0.05,
            search: SupSearch::default(),
            slope_tolerance: None,
        }
    }
}

/// One λ of a sweep.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct DecayPoint {
    pub lambda: f64,
    /// Grid counts per axis, or the number of coarse directions for multipliers.
    pub counts: Vec<usize>,
    pub method: String,
    pub value: f64,
    pub iterations: usize,
    /// |dense SVD − Krylov| / SVD when both were computed.
    pub cross_check_gap: Option<f64>,
    pub diagnostic: f64,
    pub diag_pass: bool,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct DecayRun {
    pub entry: String,
    pub points: Vec<DecayPoint>,
    /// Inclusive index range used for the fit.
    pub window: Option<(usize, usize)>,
    pub slope: Option<f64>,
    pub stderr: Option<f64>,
    pub predicted: f64,
    pub predicted_exact: String,
    pub tolerance: f64,
    pub conjectural: bool,
    pub verdict: Verdict,
    pub tol: f64,
    pub seed: u64,
}

impl DecayRun {
    pub fn lambdas(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.lambda).collect()
    }

    pub fn all_diagnostics_pass(&self) -> bool {
        self.points.iter().all(|p| p.diag_pass)
    }
}

/// Least squares slope and its standard error.
pub fn fit_slope(points: &[(f64, f64)]) -> Result<(f64, f64), ExperimentError> {
    let n = points.len();
    if n < 3 {
        return Err(ExperimentError::Argument(format!("fit_slope needs at least 3 points, got {n}")));
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if !(sxx > 1e-12 * (1.0 + mx * mx) * nf) {
        return Err(ExperimentError::Argument("fit_slope: abscissas are degenerate".into()));
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let ssr: f64 = points.iter().map(|p| (p.1 - icept - slope * p.0).powi(2)).sum();
    let stderr = if n > 2 { (ssr / (nf - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok((slope, stderr))
}

/// Longest run of passing flags with at least `min_len` members; ties go to larger λ.
pub fn passing_window(pass: &[bool], min_len: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut start = 0;
    for i in 0..=pass.len() {
        if i == pass.len() || !pass[i] {
            if i > start && i - start >= min_len {
                let len = i - start;
                if best.is_none_or(|(a, b)| len >= b - a + 1) {
                    best = Some((start, i - 1));
                }
            }
            start = i + 1;
        }
    }
    best
}

fn check_geometric(lambdas: &[f64]) -> Result<(), ExperimentError> {
    if lambdas.len() < 5 {
        return Err(ExperimentError::Argument(format!(
            "a decay sweep needs at least 5 values of lambda, got {}",
            lambdas.len()
        )));
    }
    if lambdas.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return Err(ExperimentError::Argument("lambda values must be positive".into()));
    }
    let r = lambdas[1] / lambdas[0];
    if r <= 1.0 || lambdas.windows(2).any(|w| ((w[1] / w[0]) / r - 1.0).abs() > 1e-9) {
        return Err(ExperimentError::Argument("lambda list must be increasing and geometric".into()));
    }
    Ok(())
}

fn operator_point(
    entry: &CatalogEntry,
    amp: &crate::numerics::AmplitudeSpec,
    lambda: f64,
    opts: &SweepOptions,
) -> Result<DecayPoint, ExperimentError> {
    let phi = entry
        .phase
        .phi()
        .ok_or_else(|| ExperimentError::Unsupported(format!("{} has no scalar phase", entry.name)))?;
    let aopts = AssembleOptions { strict: opts.strict, rule: opts.rule, ..AssembleOptions::default() };
    let mut nopts = NormOptions::new(opts.tol);
    nopts.seed = opts.seed;
    let grid = GridSpec::resolved(&phi, amp, lambda, &opts.rule);
    let k = assemble_kernel(&entry.phase, amp, lambda, &grid, &aopts)?;
    let est = operator_norm_with(&k, &nopts)?;
    let method = k.method();
    let k2 = assemble_kernel(&entry.phase, amp, lambda, &grid.doubled(), &aopts)?;
    let fine = operator_norm_with(&k2, &nopts)?;
    let diagnostic = (fine.value - est.value).abs() / est.value.max(f64::MIN_POSITIVE);
    Ok(DecayPoint {
        lambda,
        counts: grid.counts(),
        method: format!("{method}/{}", est.method),
        value: est.value,
        iterations: est.iterations,
        cross_check_gap: est.cross_check_gap(),
        diag_pass: diagnostic < opts.doubling_threshold && !grid.under_resolved,
        diagnostic,
    })
}

fn multiplier_point(model: &MultiplierModel, lambda: f64, opts: &SweepOptions) -> Result<DecayPoint, ExperimentError> {
    let s = multiplier_sup(model, lambda, &opts.search)?;
    let diagnostic = (s.value - s.coarse_value) / s.value.max(f64::MIN_POSITIVE);
    Ok(DecayPoint {
        lambda,
        counts: vec![s.coarse_directions],
        method: "multiplier-sup".into(),
        value: s.value,
        iterations: 0,
        cross_check_gap: None,
        diag_pass: diagnostic < opts.refinement_threshold,
        diagnostic,
    })
}

/// Measures the entry at every λ and fits log₂(value) against log₂λ.
pub fn decay_sweep(entry: &CatalogEntry, lambdas: &[f64], opts: &SweepOptions) -> Result<DecayRun, ExperimentError> {
    check_geometric(lambdas)?;
    if !(1e-8..=1e-3).contains(&opts.tol) {
        return Err(ExperimentError::Argument(format!("tol must lie in [1e-8, 1e-3], got {:e}", opts.tol)));
    }
    let setup = entry
        .numeric
        .as_ref()
        .ok_or_else(|| ExperimentError::Unsupported(format!("{} has no numeric setup", entry.name)))?;
    let predicted = entry
        .predicted_f64()
        .ok_or_else(|| ExperimentError::Unsupported(format!("{} has no predicted exponent", entry.name)))?;
    let points = match setup {
        NumericSetup::Operator { amplitude, .. } => lambdas
            .iter()
            .map(|&l| operator_point(entry, amplitude, l, opts))
            .collect::<Result<Vec<_>, _>>()?,
        NumericSetup::Multiplier { cutoff, .. } => {
            let model = MultiplierModel::from_phase(&entry.phase, cutoff.clone())?;
            lambdas
                .iter()
                .map(|&l| multiplier_point(&model, l, opts))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let tolerance = opts.slope_tolerance.unwrap_or(setup.tolerance());
    let pass: Vec<bool> = points.iter().map(|p| p.diag_pass).collect();
    let window = passing_window(&pass, 3);
    let (slope, stderr) = match window {
        Some((a, b)) => {
            let xy: Vec<(f64, f64)> = points[a..=b].iter().map(|p| (p.lambda.log2(), p.value.log2())).collect();
            let (s, e) = fit_slope(&xy)?;
            (Some(s), Some(e))
        }
        None => (None, None),
    };
    let verdict = match slope {
        _ if !pass.iter().all(|&p| p) => Verdict::Inconclusive,
        Some(s) if (s - predicted).abs() <= tolerance => Verdict::Pass,
        Some(_) => Verdict::Fail,
        None => Verdict::Inconclusive,
    };
    Ok(DecayRun {
        entry: entry.name.clone(),
        points,
        window,
        slope,
        stderr,
        predicted,
        predicted_exact: entry.predicted.as_ref().map(|p| p.to_string()).unwrap_or_default(),
        tolerance,
        conjectural: entry.conjectural,
        verdict,
        tol: opts.tol,
        seed: opts.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = (0..6).map(|k| (k as f64, -0.5 * k as f64 + 3.0)).collect();
        let (s, e) = fit_slope(&pts).unwrap();
        assert!((s + 0.5).abs() < 1e-14);
        assert!(e < 1e-14);
    }

    #[test]
    fn fit_rejects_short_or_degenerate() {
        assert!(fit_slope(&[(0.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(fit_slope(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]).is_err());
    }

    #[test]
    fn window_selection() {
        assert_eq!(passing_window(&[true; 5], 3), Some((0, 4)));
        assert_eq!(passing_window(&[true, false, true, true, true], 3), Some((2, 4)));
        assert_eq!(passing_window(&[true, true, true, false, true, true, true], 3), Some((4, 6)));
        assert_eq!(passing_window(&[true, true, false, true, true], 3), None);
        assert_eq!(passing_window(&[], 3), None);
    }

    #[test]
    fn geometric_check() {
        assert!(check_geometric(&[1.0, 2.0, 4.0, 8.0, 16.0]).is_ok());
        assert!(check_geometric(&[1.0, 2.0, 4.0, 8.0]).is_err());
        assert!(check_geometric(&[1.0, 2.0, 4.0, 8.0, 15.0]).is_err());
        assert!(check_geometric(&[16.0, 8.0, 4.0, 2.0, 1.0]).is_err());
    }
}
