use serde::Serialize;

use super::SymError;

/// Excluded intervals and lower-bound constant for a one-variable polynomial family on [0,1].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapIntervalSet {
    pub intervals: Vec<(f64, f64)>,
    pub lower_bound_constant: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub pass: bool,
    pub min_ratio: f64,
    pub worst_h: f64,
    pub ordered: bool,
    pub ratio_bounded: bool,
    pub count_ok: bool,
    pub points_checked: usize,
}

fn validate(coeffs: &[(u32, f64)], m: u32) -> Result<(), SymError> {
    if coeffs.is_empty() {
        return Err(SymError::Argument("empty coefficient list".into()));
    }
    for (k, &(i, a)) in coeffs.iter().enumerate() {
        if !(a > 0.0 && a.is_finite()) {
            return Err(SymError::Argument(format!(
                "magnitude for index {i} must be positive, got {a}"
            )));
        }
        if i > m {
            return Err(SymError::Argument(format!("index {i} exceeds M={m}")));
        }
        if coeffs[..k].iter().any(|&(j, _)| j == i) {
            return Err(SymError::Argument(format!("index {i} repeated")));
        }
    }
    Ok(())
}

/// Cancellation zones of Σ ± |a_i| h^i on [0,1] and the constant of the lower bound off them.
///
/// Two terms can only cancel where their sizes are comparable, i.e. near the crossing
/// h_ij = (|a_i|/|a_j|)^{1/(j-i)}.  Outside a multiplicative neighbourhood of radius
/// K^{1/(j-i)} every pair differs by a factor K = 2(#terms-1), so the largest term beats
/// the sum of the others by a factor two for every sign pattern.
pub fn gap_intervals(coeffs: &[(u32, f64)], m: u32) -> Result<GapIntervalSet, SymError> {
    validate(coeffs, m)?;
    let n = coeffs.len();
    let k = (2 * (n.max(2) - 1)) as f64;
    let mut raw: Vec<(f64, f64)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (i, ai) = coeffs[a];
            let (j, aj) = coeffs[b];
            if j <= i {
                continue;
            }
            let delta = (j - i) as f64;
            let cross = (ai / aj).powf(1.0 / delta);
            let spread = k.powf(1.0 / delta);
            let lo = cross / spread;
            let hi = cross * spread;
            if lo >= 1.0 {
                continue;
            }
            raw.push((lo, hi.min(1.0)));
        }
    }
    raw.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite"));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in raw {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    let provisional = GapIntervalSet {
        intervals: merged,
        lower_bound_constant: 1.0,
    };
    let measured = scan(coeffs, &provisional, 1e-5);
    let c_iii = if measured.min_ratio > 0.0 {
        1.0 / measured.min_ratio
    } else {
        f64::INFINITY
    };
    let c_ii = provisional
        .intervals
        .iter()
        .map(|&(lo, hi)| hi / lo)
        .fold(1.0, f64::max);
    Ok(GapIntervalSet {
        lower_bound_constant: c_iii.max(c_ii).max(1.0),
        ..provisional
    })
}

struct Scan {
    min_ratio: f64,
    worst_h: f64,
    points: usize,
}

fn scan(coeffs: &[(u32, f64)], g: &GapIntervalSet, step: f64) -> Scan {
    let n = coeffs.len();
    let patterns = 1usize << (n - 1);
    let steps = (1.0 / step).round() as usize;
    let mut min_ratio = f64::INFINITY;
    let mut worst_h = 0.0;
    let mut points = 0;
    let mut sizes = vec![0.0; n];
    for s in 0..=steps {
        let h = (s as f64 * step).min(1.0);
        if g.intervals.iter().any(|&(lo, hi)| h >= lo && h <= hi) {
            continue;
        }
        let mut top = 0.0f64;
        for (t, &(i, a)) in coeffs.iter().enumerate() {
            sizes[t] = a * h.powi(i as i32);
            top = top.max(sizes[t]);
        }
        if top == 0.0 {
            continue;
        }
        points += 1;
        for pat in 0..patterns {
            let mut v = sizes[0];
            for (t, sz) in sizes.iter().enumerate().skip(1) {
                if pat >> (t - 1) & 1 == 1 {
                    v -= sz;
                } else {
                    v += sz;
                }
            }
            let r = v.abs() / top;
            if r < min_ratio {
                min_ratio = r;
                worst_h = h;
            }
        }
    }
    if points == 0 {
        min_ratio = 1.0;
    }
    Scan {
        min_ratio,
        worst_h,
        points,
    }
}

/// Checks items (i)–(iii) of the interval lemma for every sign pattern of the coefficients.
pub fn gap_verify(coeffs: &[(u32, f64)], g: &GapIntervalSet, grid_step: f64, m: u32) -> GapReport {
    let fail = |reason_h: f64| GapReport {
        pass: false,
        min_ratio: 0.0,
        worst_h: reason_h,
        ordered: false,
        ratio_bounded: false,
        count_ok: false,
        points_checked: 0,
    };
    if coeffs.is_empty() || !(grid_step > 0.0 && grid_step <= 1e-3) {
        return fail(f64::NAN);
    }
    let c = g.lower_bound_constant;
    let mut ordered = true;
    let mut prev = 0.0;
    for &(lo, hi) in &g.intervals {
        if !(lo >= prev && lo <= hi && hi <= 1.0) {
            ordered = false;
        }
        prev = hi;
    }
    let ratio_bounded = g.intervals.iter().all(|&(lo, hi)| hi <= c * lo * (1.0 + 1e-12));
    let count_ok = (g.intervals.len() as f64) <= 10f64.powi(m as i32);
    let s = scan(coeffs, g, grid_step);
    let bound_ok = s.min_ratio * c >= 1.0 - 1e-9;
    GapReport {
        pass: ordered && ratio_bounded && count_ok && bound_ok,
        min_ratio: s.min_ratio,
        worst_h: s.worst_h,
        ordered,
        ratio_bounded,
        count_ok,
        points_checked: s.points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_oracle_min(coeffs: &[(u32, f64)], signs: &[f64], skip: &[(f64, f64)]) -> (f64, f64) {
        let mut best = (f64::INFINITY, 0.0);
        for s in 0..=100_000 {
            let h = s as f64 * 1e-5;
            if skip.iter().any(|&(a, b)| h >= a && h <= b) {
                continue;
            }
            let v: f64 = coeffs
                .iter()
                .zip(signs)
                .map(|(&(i, a), sg)| sg * a * h.powi(i as i32))
                .sum();
            let top = coeffs
                .iter()
                .map(|&(i, a)| a * h.powi(i as i32))
                .fold(0.0, f64::max);
            if top > 0.0 && v.abs() / top < best.0 {
                best = (v.abs() / top, h);
            }
        }
        best
    }

    #[test]
    fn single_term_has_no_intervals() {
        let g = gap_intervals(&[(1, 1.0)], 1).unwrap();
        assert!(g.intervals.is_empty());
        let r = gap_verify(&[(1, 1.0)], &g, 1e-5, 1);
        assert!(r.pass);
        assert!(r.min_ratio >= 0.5);
    }

    #[test]
    fn h_minus_h_squared_excludes_near_one() {
        let c = [(1, 1.0), (2, 1.0)];
        // oracle: without exclusions |h-h^2| / max(h,h^2) hits zero at h=1
        let (r, h) = grid_oracle_min(&c, &[1.0, -1.0], &[]);
        assert!(r < 1e-4 && (h - 1.0).abs() < 1e-4);
        let g = gap_intervals(&c, 2).unwrap();
        assert_eq!(g.intervals.len(), 1);
        let (lo, hi) = g.intervals[0];
        assert!(lo < 1.0 && hi == 1.0);
        assert!(gap_verify(&c, &g, 1e-5, 2).pass);
    }

    #[test]
    fn small_root_is_isolated() {
        let a = 2f64.powi(-5);
        let c = [(2, 1.0), (1, a)];
        let (r, h) = grid_oracle_min(&c, &[1.0, -1.0], &[]);
        assert!(r < 1e-3 && (h - a).abs() < 1e-4);
        let g = gap_intervals(&c, 2).unwrap();
        assert_eq!(g.intervals.len(), 1);
        let (lo, hi) = g.intervals[0];
        assert!(lo < a && a < hi && hi < 0.1);
        assert!(gap_verify(&c, &g, 1e-5, 2).pass);
    }

    #[test]
    fn deleting_an_interval_is_caught_near_the_root() {
        let c = [(1, 1.0), (2, 1.0)];
        let g = gap_intervals(&c, 2).unwrap();
        let broken = GapIntervalSet {
            intervals: vec![],
            ..g
        };
        let r = gap_verify(&c, &broken, 1e-5, 2);
        assert!(!r.pass);
        assert!((r.worst_h - 1.0).abs() < 1e-3);
    }

    #[test]
    fn argument_errors() {
        assert!(gap_intervals(&[], 2).is_err());
        assert!(gap_intervals(&[(1, 0.0)], 2).is_err());
        assert!(gap_intervals(&[(1, 1.0), (1, 2.0)], 2).is_err());
        assert!(gap_intervals(&[(3, 1.0)], 2).is_err());
    }
}
