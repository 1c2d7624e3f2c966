use crate::symcore::linalg::{det_rational, rank_rational};
use crate::symcore::{MultiPoly, Rational};

use super::DegeneracyError;

#[derive(Clone, Debug, PartialEq)]
pub struct FlagCheck {
    pub independent: bool,
    /// rank of {ψ(t0), …, ψ^{(k)}(t0)} for k = 0..d−1
    pub rank_profile: Vec<usize>,
    /// Wronskian-type determinant when ψ has exactly d components.
    pub determinant: Option<Rational>,
}

/// Rank of the first d derivatives ψ, ψ′, …, ψ^{(d−1)} at t0, exactly.
pub fn curve_flag_check(
    psi: &[MultiPoly],
    t0: &Rational,
    d: usize,
) -> Result<FlagCheck, DegeneracyError> {
    if d == 0 || psi.len() < d {
        return Err(DegeneracyError::Argument(format!(
            "need at least {d} components, got {}",
            psi.len()
        )));
    }
    if let Some(p) = psi.iter().find(|p| p.nvars() != 1) {
        return Err(DegeneracyError::Argument(format!(
            "curve components must be univariate, got {} variables",
            p.nvars()
        )));
    }
    let at = std::slice::from_ref(t0);
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(d);
    let mut cur: Vec<MultiPoly> = psi.to_vec();
    let mut profile = Vec::with_capacity(d);
    for _ in 0..d {
        rows.push(cur.iter().map(|p| p.eval(at)).collect());
        profile.push(rank_rational(&rows));
        cur = cur.iter().map(|p| p.diff(0)).collect();
    }
    let determinant = (psi.len() == d).then(|| det_rational(&rows));
    Ok(FlagCheck {
        independent: profile[d - 1] == d,
        rank_profile: profile,
        determinant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::{int, parse_poly, var_list};

    fn curve(src: &[&str]) -> Vec<MultiPoly> {
        let v = var_list(&["t"]);
        src.iter().map(|s| parse_poly(s, &v).unwrap()).collect()
    }

    #[test]
    fn moment_curve() {
        let psi = curve(&["1", "t", "t^2/2", "t^3/6"]);
        let out = curve_flag_check(&psi, &int(0), 4).unwrap();
        assert!(out.independent);
        assert_eq!(out.determinant, Some(int(1)));
        assert_eq!(out.rank_profile, vec![1, 2, 3, 4]);
    }

    #[test]
    fn dependent_second_derivative() {
        // ψ′(0) is parallel to ψ(0)
        let psi = curve(&["1 + 2*t", "1 + 2*t", "t^3"]);
        let out = curve_flag_check(&psi, &int(0), 3).unwrap();
        assert!(!out.independent);
    }

    #[test]
    fn too_few_components() {
        let psi = curve(&["1", "t"]);
        assert!(curve_flag_check(&psi, &int(0), 3).is_err());
    }
}
