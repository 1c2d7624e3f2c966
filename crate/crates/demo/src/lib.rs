//! Browser bindings: classify a phase, sweep an operator norm over λ, fit a log-log slope.

use std::fmt::Write as _;

use oscillab::degeneracy::PhaseKind;
use oscillab::experiments::{
    decay_sweep, find_entry, fit_slope as fit, inline_entry, CatalogEntry, LambdaGrid, SweepOptions,
};
use wasm_bindgen::prelude::*;

fn resolve(spec: &str) -> Result<CatalogEntry, String> {
    let spec = spec.trim();
    match find_entry(spec) {
        Ok(e) => Ok(e),
        Err(_) if spec.contains(['x', 'z']) && !spec.contains(':') => inline_entry(spec, None).map_err(|e| e.to_string()),
        Err(e) => Err(e.to_string()),
    }
}

/// Catalogue names, one per line.
#[wasm_bindgen]
pub fn entry_names() -> String {
    oscillab::experiments::catalog().iter().map(|e| e.name.as_str()).collect::<Vec<_>>().join("\n")
}

/// Classification of a catalogue entry or an inline phase in x1..xd, z1..zd.
#[wasm_bindgen]
pub fn classify(spec: &str) -> Result<String, String> {
    let e = resolve(spec)?;
    let r = e.validate().map_err(|e| e.to_string())?;
    let mut s = String::new();
    let _ = writeln!(s, "entry: {}", e.name);
    if let PhaseKind::Oscillatory { phi } = &e.phase.kind {
        let _ = writeln!(s, "phase: {phi}");
    }
    let _ = writeln!(s, "kind: {}", r.kind);
    let ty = |t: Option<oscillab::degeneracy::TypeOrder>| t.map(|t| t.to_string()).unwrap_or_else(|| "n/a".into());
    let _ = writeln!(s, "type: {} (left), {} (right)", ty(r.type_left), ty(r.type_right));
    let _ = writeln!(s, "pi_L: {}", r.morin_left);
    let _ = writeln!(s, "pi_R: {}", r.morin_right);
    match &e.predicted {
        Some(p) => {
            let _ = writeln!(s, "predicted exponent: {p}{}", if e.conjectural { " (conjectural)" } else { "" });
        }
        None => s.push_str("predicted exponent: none\n"),
    }
    Ok(s)
}

/// Norm sweep over a geometric λ grid; JSON with the points, the fitted slope and the verdict.
#[wasm_bindgen]
pub fn decay(spec: &str, lambda_min: f64, lambda_max: f64, ratio: f64) -> Result<String, String> {
    let e = resolve(spec)?;
    if !(lambda_min > 0.0 && lambda_max > lambda_min && ratio > 1.0) {
        return Err(format!("need 0 < lambda_min < lambda_max and ratio > 1, got {lambda_min}, {lambda_max}, {ratio}"));
    }
    let lambdas = LambdaGrid::between(lambda_min, lambda_max, ratio).values();
    let run = decay_sweep(&e, &lambdas, &SweepOptions::default()).map_err(|e| e.to_string())?;
    serde_json::to_string(&run).map_err(|e| e.to_string())
}

/// Least-squares slope of log2(value) against log2(lambda).
#[wasm_bindgen]
pub fn fit_slope(lambdas: &[f64], values: &[f64]) -> Result<f64, String> {
    if lambdas.len() != values.len() {
        return Err(format!("{} lambdas but {} values", lambdas.len(), values.len()));
    }
    if lambdas.iter().chain(values).any(|v| !(*v > 0.0)) {
        return Err("lambdas and values must be positive".into());
    }
    let pts: Vec<(f64, f64)> = lambdas.iter().zip(values).map(|(l, v)| (l.log2(), v.log2())).collect();
    fit(&pts).map(|(s, _)| s).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_catalog_and_inline() {
        let t = classify("curve_mn:2,4").unwrap();
        assert!(t.contains("cusp"), "{t}");
        let t = classify("x1*z1^3/3").unwrap();
        assert!(t.contains("predicted exponent"), "{t}");
        assert!(classify("nope").is_err());
    }

    #[test]
    fn slope_of_power_law() {
        let l = [4.0, 8.0, 16.0, 32.0];
        let v: Vec<f64> = l.iter().map(|x: &f64| 3.0 * x.powf(-0.25)).collect();
        assert!((fit_slope(&l, &v).unwrap() + 0.25).abs() < 1e-12);
        assert!(fit_slope(&l, &v[..2]).is_err());
    }

    #[test]
    fn decay_json() {
        let j = decay("nondegenerate_1d", 64.0, 1024.0, 2.0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["points"].as_array().unwrap().len(), 5);
        assert!(decay("nondegenerate_1d", 64.0, 32.0, 2.0).is_err());
    }
}
