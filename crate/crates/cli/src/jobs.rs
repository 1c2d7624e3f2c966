use std::fmt::Write as _;

use oscillab::brackets::{check_conditions, group_g_r, monomial_curve, GroupModel};
use oscillab::degeneracy::{newton_predict, TypeReport, DEFAULT_MAX_ORDER};
use oscillab::experiments::{
    catalog, decay_sweep, find_entry, inline_entry, localized_sweep, CatalogEntry, DecayRun, LambdaGrid, LocalizedRun,
    NumericSetup, RunOutcome, Verdict,
};
use oscillab::symcore::rational::parse_rational;
use oscillab::symcore::{var_list, MultiPoly, Rational};
use rayon::prelude::*;

use crate::acceptance;
use crate::config::{ExperimentConfig, Job};
use crate::output::{fmt_f, fmt_opt, Table};
use crate::svg::render_svg;
use crate::CliError;

/// Everything a job produces; nothing is written until `write_outputs`.
#[derive(Clone, Debug)]
pub struct JobReport {
    pub job: Job,
    pub text: String,
    pub outcomes: Vec<RunOutcome>,
    pub results: Table,
    pub summary: Table,
    /// (file name, contents)
    pub svgs: Vec<(String, String)>,
    /// The configuration with every default filled in.
    pub config: ExperimentConfig,
}

pub fn run(cfg: &ExperimentConfig) -> Result<JobReport, CliError> {
    cfg.validate()?;
    let job = cfg.job()?;
    match job {
        Job::Classify => classify_job(cfg),
        Job::Decay | Job::Multiplier => decay_job(cfg, job),
        Job::Localized => localized_job(cfg),
        Job::Brackets => brackets_job(cfg),
        Job::Catalog => catalog_job(cfg),
        Job::Acceptance => acceptance_job(cfg),
    }
}

fn entry_error(e: oscillab::experiments::ExperimentError) -> CliError {
    CliError::Config(format!("entry: {e}"))
}

fn parse_point(src: &[String]) -> Result<Vec<Rational>, CliError> {
    src.iter()
        .map(|s| parse_rational(s).map_err(|e| CliError::Config(format!("point: {e}"))))
        .collect()
}

fn resolve_entries(cfg: &ExperimentConfig) -> Result<Vec<CatalogEntry>, CliError> {
    if let Some(phi) = &cfg.phase {
        let point = cfg.point.as_deref().map(parse_point).transpose()?;
        let e = inline_entry(phi, point).map_err(|e| CliError::Config(format!("phase: {e}")))?;
        return Ok(vec![e]);
    }
    cfg.entries().iter().map(|n| find_entry(n).map_err(entry_error)).collect()
}

fn point_text(p: &[Rational]) -> String {
    let v: Vec<String> = p.iter().map(|q| q.to_string()).collect();
    format!("({})", v.join(", "))
}

fn type_text(t: Option<oscillab::degeneracy::TypeOrder>) -> String {
    t.map(|t| t.to_string()).unwrap_or_else(|| "n/a".into())
}

fn pairs_text(v: &[(u32, u32)]) -> String {
    let s: Vec<String> = v.iter().map(|(j, k)| format!("({j},{k})")).collect();
    s.join(" ")
}

fn report_text(e: &CatalogEntry, r: &TypeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "entry: {}", e.name);
    let _ = writeln!(s, "kind: {}", r.kind);
    let _ = writeln!(s, "point: {}", point_text(&r.point));
    let _ = writeln!(s, "corank: {}", r.corank);
    if r.type_left == r.type_right {
        let _ = writeln!(s, "type: {} (both sides)", type_text(r.type_left));
    } else {
        let _ = writeln!(s, "type: {} (left), {} (right)", type_text(r.type_left), type_text(r.type_right));
    }
    let _ = writeln!(s, "mixed types: {}", if r.mixed_pairs.is_empty() { "none".into() } else { pairs_text(&r.mixed_pairs) });
    let _ = writeln!(s, "pi_L: {}{}", r.morin_left, if r.blowdown_left { " (blowdown)" } else { "" });
    let _ = writeln!(s, "pi_R: {}{}", r.morin_right, if r.blowdown_right { " (blowdown)" } else { "" });
    let _ = writeln!(s, "simple rank drop: {}", r.simple_rank_drop);
    if r.kind == "conormal-2d" && !r.mixed_pairs.is_empty() {
        let n = newton_predict(&r.mixed_pairs);
        let _ = writeln!(s, "newton polygon: t_c = {}, alpha = {}", n.t_c, n.alpha);
    }
    match (&e.predicted, e.governing) {
        (Some(p), Some(g)) => {
            let _ = writeln!(s, "predicted exponent: {p} ({g}{})", if e.conjectural { ", conjectural" } else { "" });
        }
        _ => {
            let _ = writeln!(s, "predicted exponent: none");
        }
    }
    s
}

const CLASSIFY_HEADER: &[&str] = &[
    "entry",
    "kind",
    "point",
    "corank",
    "type_left",
    "type_right",
    "mixed_pairs",
    "morin_left",
    "morin_right",
    "simple_rank_drop",
    "blowdown_left",
    "blowdown_right",
    "predicted",
    "governing",
    "conjectural",
];

fn classify_row(e: &CatalogEntry, r: &TypeReport) -> Vec<String> {
    vec![
        e.name.clone(),
        r.kind.to_string(),
        point_text(&r.point),
        r.corank.to_string(),
        type_text(r.type_left),
        type_text(r.type_right),
        pairs_text(&r.mixed_pairs),
        r.morin_left.to_string(),
        r.morin_right.to_string(),
        r.simple_rank_drop.to_string(),
        r.blowdown_left.to_string(),
        r.blowdown_right.to_string(),
        e.predicted.as_ref().map(|p| p.to_string()).unwrap_or_default(),
        e.governing.unwrap_or("").to_string(),
        e.conjectural.to_string(),
    ]
}

fn classify_job(cfg: &ExperimentConfig) -> Result<JobReport, CliError> {
    let entries = resolve_entries(cfg)?;
    let mut text = String::new();
    let mut results = Table::new(CLASSIFY_HEADER);
    let mut summary = Table::new(&["entry", "job", "consistent", "max_order"]);
    for e in &entries {
        let r = e.validate().map_err(entry_error)?;
        text.push_str(&report_text(e, &r));
        results.push(classify_row(e, &r));
        summary.push(vec![e.name.clone(), "classify".into(), "true".into(), DEFAULT_MAX_ORDER.to_string()]);
    }
    Ok(JobReport { job: Job::Classify, text, outcomes: Vec::new(), results, summary, svgs: Vec::new(), config: cfg.clone() })
}

fn lambdas_for(cfg: &ExperimentConfig, grid: &LambdaGrid) -> Result<Vec<f64>, CliError> {
    if let Some(v) = &cfg.lambdas {
        return Ok(v.clone());
    }
    if cfg.lambda_min.is_none() && cfg.lambda_max.is_none() && cfg.lambda_ratio.is_none() {
        return Ok(grid.values());
    }
    let ratio = cfg.lambda_ratio.unwrap_or(grid.ratio);
    let lo = cfg.lambda_min.unwrap_or(grid.start);
    let hi = cfg.lambda_max.unwrap_or(grid.values().last().copied().unwrap_or(grid.start));
    if hi <= lo {
        return Err(CliError::Config(format!("lambda_max: must exceed lambda_min ({lo}), got {hi}")));
    }
    Ok(LambdaGrid::between(lo, hi, ratio).values())
}

pub const RESULTS_HEADER: &[&str] = &[
    "entry",
    "lambda",
    "grid_counts",
    "norm",
    "diag_pass",
    "method",
    "iterations",
    "cross_check_gap",
    "diagnostic",
    "tol",
    "seed",
];

pub const SUMMARY_HEADER: &[&str] = &[
    "entry",
    "job",
    "lambda_min",
    "lambda_max",
    "lambda_ratio",
    "points",
    "window_start",
    "window_end",
    "slope",
    "stderr",
    "predicted",
    "predicted_exact",
    "tolerance",
    "conjectural",
    "verdict",
    "tol",
    "seed",
    "strict_resolution",
    "doubling_threshold",
    "refinement_threshold",
];

fn counts_text(c: &[usize]) -> String {
    let v: Vec<String> = c.iter().map(|n| n.to_string()).collect();
    v.join("x")
}

pub fn decay_rows(run: &DecayRun, results: &mut Table) {
    for p in &run.points {
        results.push(vec![
            run.entry.clone(),
            fmt_f(p.lambda),
            counts_text(&p.counts),
            fmt_f(p.value),
            p.diag_pass.to_string(),
            p.method.clone(),
            p.iterations.to_string(),
            fmt_opt(p.cross_check_gap),
            fmt_f(p.diagnostic),
            fmt_f(run.tol),
            run.seed.to_string(),
        ]);
    }
}

pub fn decay_summary_row(run: &DecayRun, job: Job, cfg: &ExperimentConfig) -> Vec<String> {
    let l = run.lambdas();
    let ratio = if l.len() > 1 { l[1] / l[0] } else { f64::NAN };
    vec![
        run.entry.clone(),
        job.to_string(),
        fmt_f(l[0]),
        fmt_f(*l.last().unwrap()),
        fmt_f(ratio),
        l.len().to_string(),
        run.window.map(|w| w.0.to_string()).unwrap_or_default(),
        run.window.map(|w| w.1.to_string()).unwrap_or_default(),
        fmt_opt(run.slope),
        fmt_opt(run.stderr),
        fmt_f(run.predicted),
        run.predicted_exact.clone(),
        fmt_f(run.tolerance),
        run.conjectural.to_string(),
        run.verdict.to_string(),
        fmt_f(run.tol),
        run.seed.to_string(),
        cfg.strict_resolution.to_string(),
        fmt_f(cfg.doubling_threshold),
        fmt_f(cfg.refinement_threshold),
    ]
}

fn run_text(run: &DecayRun) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", run.entry);
    for p in &run.points {
        let _ = writeln!(
            s,
            "  lambda {:>10}  norm {:.6e}  grid {:>9}  diag {:.2e} {}",
            fmt_f(p.lambda),
            p.value,
            counts_text(&p.counts),
            p.diagnostic,
            if p.diag_pass { "ok" } else { "FAIL" }
        );
    }
    let _ = writeln!(
        s,
        "  slope {} +- {}  predicted {} ({:.4}) +- {}  verdict {}{}",
        run.slope.map(|v| format!("{v:.4}")).unwrap_or_else(|| "none".into()),
        run.stderr.map(|v| format!("{v:.4}")).unwrap_or_else(|| "none".into()),
        run.predicted_exact,
        run.predicted,
        run.tolerance,
        run.verdict,
        if run.conjectural { " (conjectural)" } else { "" }
    );
    s
}

fn decay_job(cfg: &ExperimentConfig, job: Job) -> Result<JobReport, CliError> {
    let entries = resolve_entries(cfg)?;
    let mut plans = Vec::new();
    for e in entries {
        let grid = match (&e.numeric, job) {
            (Some(NumericSetup::Operator { lambdas, .. }), Job::Decay) => *lambdas,
            (Some(NumericSetup::Multiplier { lambdas, .. }), Job::Multiplier) => *lambdas,
            (Some(NumericSetup::Operator { .. }), _) => {
                return Err(CliError::Config(format!("entry: {} is an operator entry; use the decay job", e.name)))
            }
            (Some(NumericSetup::Multiplier { .. }), _) => {
                return Err(CliError::Config(format!("entry: {} is a multiplier entry; use the multiplier job", e.name)))
            }
            (None, _) => return Err(CliError::Config(format!("entry: {} has no numeric setup", e.name))),
        };
        if e.predicted.is_none() {
            return Err(CliError::Config(format!("entry: {} has no predicted exponent to test", e.name)));
        }
        let l = lambdas_for(cfg, &grid)?;
        plans.push((e, l));
    }
    let opts = cfg.sweep_options();
    // independent runs in parallel, reported in input order
    let runs: Vec<DecayRun> = plans
        .par_iter()
        .map(|(e, l)| decay_sweep(e, l, &opts))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Config(format!("lambda: {e}")))?;
    let mut results = Table::new(RESULTS_HEADER);
    let mut summary = Table::new(SUMMARY_HEADER);
    let mut text = String::new();
    let mut svgs = Vec::new();
    for r in &runs {
        decay_rows(r, &mut results);
        summary.push(decay_summary_row(r, job, cfg));
        text.push_str(&run_text(r));
        if cfg.svg {
            svgs.push((format!("{}.svg", r.entry), render_svg(r)));
        }
    }
    let mut config = cfg.clone();
    if plans.len() == 1 && config.lambdas.is_none() {
        config.lambdas = Some(plans[0].1.clone());
    }
    Ok(JobReport {
        job,
        text,
        outcomes: runs.iter().map(RunOutcome::from).collect(),
        results,
        summary,
        svgs,
        config,
    })
}

pub const LOCALIZED_RESULTS_HEADER: &[&str] = &[
    "entry",
    "lambda",
    "l",
    "j",
    "k",
    "grid_counts",
    "norm",
    "bound",
    "ratio",
    "within",
    "diagnostic",
    "diag_pass",
    "tol",
    "seed",
];

pub const LOCALIZED_SUMMARY_HEADER: &[&str] = &[
    "entry",
    "job",
    "lambda",
    "l_max",
    "j",
    "k",
    "calibration",
    "slack",
    "l_slope",
    "crossover",
    "argmin_ratio",
    "holds",
    "verdict",
    "tol",
    "seed",
    "strict_resolution",
    "doubling_threshold",
];

fn localized_job(cfg: &ExperimentConfig) -> Result<JobReport, CliError> {
    let name = cfg.entries().into_iter().next().unwrap_or_else(|| "twosided_4".into());
    let entry = find_entry(&name).map_err(entry_error)?;
    let lambda = cfg.lambda.unwrap_or(1024.0);
    if lambda < 4.0 {
        return Err(CliError::Config(format!("lambda: must be at least 4, got {lambda}")));
    }
    let l_max = (lambda.sqrt().log2() + 1e-12).floor() as u32;
    let ls = cfg.l.clone().unwrap_or_else(|| (0..=l_max).collect());
    let windows = cfg.j.zip(cfg.k);
    let opts = cfg.sweep_options();
    let run = localized_sweep(&entry, lambda, &ls, windows, &opts).map_err(|e| match e {
        oscillab::experiments::ExperimentError::Argument(m) => CliError::Config(format!("l: {m}")),
        other => entry_error(other),
    })?;
    let (j, k) = windows.unwrap_or((0, 0));
    let mut results = Table::new(LOCALIZED_RESULTS_HEADER);
    localized_rows(&run, cfg, &mut results);
    let mut summary = Table::new(LOCALIZED_SUMMARY_HEADER);
    summary.push(vec![
        run.entry.clone(),
        "localized".into(),
        fmt_f(lambda),
        run.l_max.to_string(),
        j.to_string(),
        k.to_string(),
        fmt_f(run.calibration),
        fmt_f(run.slack),
        fmt_opt(run.l_slope),
        fmt_f(run.crossover),
        run.argmin_ratio.map(|v| v.to_string()).unwrap_or_default(),
        run.holds.to_string(),
        run.verdict.to_string(),
        fmt_f(cfg.tol),
        cfg.seed.to_string(),
        cfg.strict_resolution.to_string(),
        fmt_f(cfg.doubling_threshold),
    ]);
    let mut text = String::new();
    let _ = writeln!(text, "{} at lambda {} (l_max {}, windows j={j} k={k})", run.entry, fmt_f(lambda), run.l_max);
    for p in &run.points {
        let _ = writeln!(
            text,
            "  l {:>2}  norm {:.6e}  bound {:.6e}  ratio {:.4}  {}  diag {:.2e}",
            p.l,
            p.norm,
            p.bound,
            p.ratio,
            if p.l == 0 { "unlocalized" } else if p.within { "within" } else { "EXCEEDS" },
            p.diagnostic
        );
    }
    let _ = writeln!(
        text,
        "  calibration {:.4} x slack {}  crossover {:.2}  argmin {}  verdict {}",
        run.calibration,
        run.slack,
        run.crossover,
        run.argmin_ratio.map(|v| v.to_string()).unwrap_or_else(|| "none".into()),
        run.verdict
    );
    let mut config = cfg.clone();
    config.entry = Some(crate::config::Entries::One(run.entry.clone()));
    config.lambda = Some(lambda);
    config.l = Some(ls);
    Ok(JobReport {
        job: Job::Localized,
        text,
        outcomes: vec![RunOutcome::from(&run)],
        results,
        summary,
        svgs: Vec::new(),
        config,
    })
}

pub fn localized_rows(run: &LocalizedRun, cfg: &ExperimentConfig, results: &mut Table) {
    let (j, k) = run.windows.unwrap_or((0, 0));
    for p in &run.points {
        results.push(vec![
            run.entry.clone(),
            fmt_f(run.lambda),
            p.l.to_string(),
            j.to_string(),
            k.to_string(),
            counts_text(&p.counts),
            fmt_f(p.norm),
            fmt_f(p.bound),
            fmt_f(p.ratio),
            p.within.to_string(),
            fmt_f(p.diagnostic),
            p.diag_pass.to_string(),
            fmt_f(cfg.tol),
            cfg.seed.to_string(),
        ]);
    }
}

/// Group model, parameter names and the monomial curve (t, t², α t³[, β t⁴]).
fn bracket_model(group: &str) -> Result<(GroupModel, Vec<&'static str>), CliError> {
    match group {
        "heisenberg" => Ok((GroupModel::heisenberg(), vec!["alpha"])),
        "mizohata" => Ok((GroupModel::mizohata(), vec!["alpha", "beta"])),
        other => Err(CliError::Config(format!("entry: unknown group '{other}' (heisenberg or mizohata)"))),
    }
}

fn brackets_job(cfg: &ExperimentConfig) -> Result<JobReport, CliError> {
    let spec = cfg.entries().into_iter().next().unwrap_or_else(|| "mizohata".into());
    let (group, inline) = match spec.split_once(':') {
        Some((g, a)) => (g.trim().to_string(), Some(a.to_string())),
        None => (spec.trim().to_string(), None),
    };
    let (model, names) = bracket_model(&group)?;
    let mut values: Vec<Option<String>> = vec![None; names.len()];
    if let Some(a) = inline {
        let parts: Vec<&str> = a.split(',').collect();
        if parts.len() != names.len() {
            return Err(CliError::Config(format!("entry: {group} takes {} parameter(s), got {}", names.len(), parts.len())));
        }
        for (v, p) in values.iter_mut().zip(parts) {
            *v = Some(p.trim().to_string());
        }
    }
    if let Some(a) = &cfg.alpha {
        values[0] = Some(a.clone());
    }
    if let Some(b) = &cfg.beta {
        if names.len() < 2 {
            return Err(CliError::Config(format!("beta: the {group} family has no beta")));
        }
        values[1] = Some(b.clone());
    }
    let mut fixed: Vec<(&str, Rational)> = Vec::new();
    for (n, v) in names.iter().zip(&values) {
        if let Some(s) = v {
            let q = parse_rational(s).map_err(|e| CliError::Config(format!("{n}: {e}")))?;
            fixed.push((n, q));
        }
    }
    if !fixed.is_empty() && fixed.len() != names.len() {
        let missing = names.iter().zip(&values).find(|(_, v)| v.is_none()).map(|(n, _)| *n).unwrap_or("alpha");
        return Err(CliError::Config(format!("{missing}: give every parameter of the {group} family or none")));
    }

    let mut ring_names = vec!["t"];
    ring_names.extend(&names);
    let ring = var_list(&ring_names);
    let mut coeffs = vec![MultiPoly::one(&ring), MultiPoly::one(&ring)];
    for (i, _) in names.iter().enumerate() {
        coeffs.push(MultiPoly::var(&ring, i + 1));
    }
    let curve = monomial_curve(&ring, &coeffs);
    let g = group_g_r(&model, &curve, 8).map_err(|e| CliError::Config(format!("entry: {e}")))?;

    let mut text = String::new();
    let _ = writeln!(text, "group: {group} (n = {})", model.dim());
    let curve_txt: Vec<String> = curve.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(text, "curve: ({})", curve_txt.join(", "));
    let comps: Vec<String> = g.components.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(text, "G_R(t) = ({})", comps.join(", "));
    let _ = writeln!(text, "wronskian: {}", g.wronskian);
    let locus: Vec<String> = g.locus.iter().map(|f| f.to_string()).collect();
    let _ = writeln!(text, "degeneracy locus: {}", if locus.is_empty() { "none".into() } else { locus.join(" ; ") });

    let mut results = Table::new(&["group", "item", "value"]);
    for (i, c) in comps.iter().enumerate() {
        results.push(vec![group.clone(), format!("g_r_{}", i + 1), c.clone()]);
    }
    results.push(vec![group.clone(), "wronskian".into(), g.wronskian.to_string()]);
    for (i, f) in locus.iter().enumerate() {
        results.push(vec![group.clone(), format!("locus_{}", i + 1), f.clone()]);
    }
    results.push(vec![group.clone(), "residual".into(), g.residual.to_string()]);

    let mut summary = Table::new(&["group", "parameters", "independence", "vanishing_factors", "p_r", "b_r", "locus"]);
    let params_txt: Vec<String> = fixed.iter().map(|(n, q)| format!("{n}={q}")).collect();
    if fixed.is_empty() {
        summary.push(vec![group.clone(), String::new(), String::new(), String::new(), String::new(), String::new(), locus.join(" ; ")]);
    } else {
        let ind = g.independence_at(&fixed).map_err(|e| CliError::Config(format!("alpha: {e}")))?;
        let van: Vec<String> = g
            .vanishing_factors(&fixed)
            .map_err(|e| CliError::Config(format!("alpha: {e}")))?
            .iter()
            .map(|f| f.to_string())
            .collect();
        // the bracket route at the base point, as a cross-check
        let pr = var_list(&names);
        let mut fc = vec![MultiPoly::one(&pr), MultiPoly::one(&pr)];
        for i in 0..names.len() {
            fc.push(MultiPoly::var(&pr, i));
        }
        let family = model
            .translation_family(&fc)
            .and_then(|f| f.with_params(&fixed))
            .map_err(|e| CliError::Config(format!("entry: {e}")))?;
        let zero = vec![Rational::from_integer(0.into()); model.dim()];
        let cond = check_conditions(&family, &zero).map_err(|e| CliError::Config(format!("entry: {e}")))?;
        let _ = writeln!(text, "at {}: {ind}", params_txt.join(", "));
        if !van.is_empty() {
            let _ = writeln!(text, "vanishing locus factors: {}", van.join(" ; "));
        }
        let _ = writeln!(text, "(P)_R {}  (B)_R {}  agree {}", cond.p_r, cond.b_r, cond.agree);
        summary.push(vec![
            group.clone(),
            params_txt.join(" "),
            ind.to_string(),
            van.join(" ; "),
            cond.p_r.to_string(),
            cond.b_r.to_string(),
            locus.join(" ; "),
        ]);
    }
    let mut config = cfg.clone();
    config.entry = Some(crate::config::Entries::One(group));
    Ok(JobReport { job: Job::Brackets, text, outcomes: Vec::new(), results, summary, svgs: Vec::new(), config })
}

fn catalog_job(cfg: &ExperimentConfig) -> Result<JobReport, CliError> {
    let mut header = CLASSIFY_HEADER.to_vec();
    header.extend(["numeric", "lambda_start", "lambda_ratio", "lambda_count", "tolerance"]);
    let mut results = Table::new(&header);
    let mut text = String::new();
    let mut summary = Table::new(&["entries", "validated"]);
    let all = catalog();
    for e in &all {
        let r = e.validate().map_err(entry_error)?;
        let mut row = classify_row(e, &r);
        let (kind, g, tol) = match &e.numeric {
            Some(NumericSetup::Operator { lambdas, tolerance, .. }) => ("operator", Some(*lambdas), Some(*tolerance)),
            Some(NumericSetup::Multiplier { lambdas, tolerance, .. }) => ("multiplier", Some(*lambdas), Some(*tolerance)),
            None => ("none", None, None),
        };
        row.push(kind.into());
        row.push(g.map(|g| fmt_f(g.start)).unwrap_or_default());
        row.push(g.map(|g| fmt_f(g.ratio)).unwrap_or_default());
        row.push(g.map(|g| g.count.to_string()).unwrap_or_default());
        row.push(fmt_opt(tol));
        results.push(row);
        let _ = writeln!(
            text,
            "{:<18} {:<12} type {:>7}/{:<7} {:<28} predicted {:<8} {}",
            e.name,
            r.kind,
            type_text(r.type_left),
            type_text(r.type_right),
            format!("{}/{}", r.morin_left, r.morin_right),
            e.predicted.as_ref().map(|p| p.to_string()).unwrap_or_else(|| "-".into()),
            kind
        );
    }
    summary.push(vec![all.len().to_string(), "true".into()]);
    Ok(JobReport { job: Job::Catalog, text, outcomes: Vec::new(), results, summary, svgs: Vec::new(), config: cfg.clone() })
}

fn acceptance_job(cfg: &ExperimentConfig) -> Result<JobReport, CliError> {
    let crits = acceptance::run_suite(&mut |c| eprintln!("{}", c.line()));
    let mut results = Table::new(&["criterion", "title", "status", "known_failure", "detail"]);
    let mut text = String::new();
    let mut outcomes = Vec::new();
    for c in &crits {
        results.push(vec![
            c.id.to_string(),
            c.title.to_string(),
            if c.pass { "PASS".into() } else { "FAIL".into() },
            c.known_failure.to_string(),
            c.detail.clone(),
        ]);
        let _ = writeln!(text, "{}", c.line());
        let v = if c.pass { Verdict::Pass } else { Verdict::Fail };
        outcomes.push(RunOutcome::new(format!("criterion {}", c.id), v, c.known_failure));
    }
    let s = oscillab::experiments::verdict_report(&outcomes);
    let mut summary = Table::new(&["passed", "failed", "known_failures", "status"]);
    summary.push(vec![
        s.passed.to_string(),
        s.failed.to_string(),
        s.conjectural_exceptions.join(" ; "),
        s.status.to_string(),
    ]);
    let _ = writeln!(text, "status: {}", s.status);
    Ok(JobReport { job: Job::Acceptance, text, outcomes, results, summary, svgs: Vec::new(), config: cfg.clone() })
}
