use crate::degeneracy::{
    classify, oscillatory_vars, predicted_decay, MorinClass, PhaseSpec, Prediction, TypeOrder, TypeReport,
    DEFAULT_MAX_ORDER,
};
use crate::numerics::{AmplitudeSpec, AxisProfile, Cutoff};
use crate::symcore::{int, parse_poly, rat, Rational};

use super::ExperimentError;

/// The TypeReport fields an entry commits to.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedClass {
    pub corank: usize,
    pub type_left: Option<TypeOrder>,
    pub type_right: Option<TypeOrder>,
    pub mixed_pairs: Vec<(u32, u32)>,
    pub morin_left: MorinClass,
    pub morin_right: MorinClass,
    pub simple_rank_drop: bool,
    pub blowdown_left: bool,
    pub blowdown_right: bool,
}

impl ExpectedClass {
    fn nondegenerate() -> Self {
        ExpectedClass {
            corank: 0,
            type_left: Some(TypeOrder::Finite(0)),
            type_right: Some(TypeOrder::Finite(0)),
            mixed_pairs: vec![(0, 0)],
            morin_left: MorinClass::Nondegenerate,
            morin_right: MorinClass::Nondegenerate,
            simple_rank_drop: false,
            blowdown_left: false,
            blowdown_right: false,
        }
    }

    /// Corank one with equal types k on both sides and mixed pairs on the antidiagonal.
    /// The rank drops simply for folds and, more generally, whenever S₁ is a Morin stratum.
    fn symmetric(k: u32, morin: MorinClass) -> Self {
        ExpectedClass {
            corank: 1,
            type_left: Some(TypeOrder::Finite(k)),
            type_right: Some(TypeOrder::Finite(k)),
            mixed_pairs: (0..=k).map(|i| (i, k - i)).collect(),
            morin_left: morin,
            morin_right: morin,
            simple_rank_drop: k == 1 || matches!(morin, MorinClass::Morin(_)),
            blowdown_left: false,
            blowdown_right: false,
        }
    }

    /// Field-by-field differences against a computed report.
    pub fn mismatches(&self, r: &TypeReport) -> Vec<String> {
        let mut out = Vec::new();
        macro_rules! cmp {
            ($f:ident) => {
                if self.$f != r.$f {
                    out.push(format!("{}: expected {:?}, got {:?}", stringify!($f), self.$f, r.$f));
                }
            };
        }
        cmp!(corank);
        cmp!(type_left);
        cmp!(type_right);
        cmp!(mixed_pairs);
        cmp!(morin_left);
        cmp!(morin_right);
        cmp!(simple_rank_drop);
        cmp!(blowdown_left);
        cmp!(blowdown_right);
        out
    }
}

/// Geometric λ list start·ratio^k, k < count.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct LambdaGrid {
    pub start: f64,
    pub ratio: f64,
    pub count: usize,
}

impl LambdaGrid {
    pub fn dyadic(lo: u32, hi: u32) -> Self {
        LambdaGrid { start: (lo as f64).exp2(), ratio: 2.0, count: (hi - lo + 1) as usize }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.start * self.ratio.powi(k as i32)).collect()
    }

    /// Ratio-2 list covering [lo, hi]; hi is kept only if it lands on the list.
    pub fn between(lo: f64, hi: f64, ratio: f64) -> Self {
        let count = ((hi / lo).ln() / ratio.ln() + 1e-9).floor() as usize + 1;
        LambdaGrid { start: lo, ratio, count }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NumericSetup {
    /// Operator-norm sweep of T_λ with the given amplitude.
    Operator { amplitude: AmplitudeSpec, lambdas: LambdaGrid, tolerance: f64 },
    /// Sup of the Fourier multiplier over |ξ| = λ.
    Multiplier { cutoff: AxisProfile, lambdas: LambdaGrid, tolerance: f64 },
}

impl NumericSetup {
    pub fn lambdas(&self) -> &LambdaGrid {
        match self {
            NumericSetup::Operator { lambdas, .. } | NumericSetup::Multiplier { lambdas, .. } => lambdas,
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            NumericSetup::Operator { tolerance, .. } | NumericSetup::Multiplier { tolerance, .. } => *tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub phase: PhaseSpec,
    pub point: Vec<Rational>,
    pub expected: ExpectedClass,
    /// Predicted exponent, None when no theorem applies.
    pub predicted: Option<Rational>,
    pub governing: Option<&'static str>,
    pub conjectural: bool,
    pub numeric: Option<NumericSetup>,
}

impl CatalogEntry {
    /// Re-derives classification and prediction and compares them with the stored ones.
    pub fn validate(&self) -> Result<TypeReport, ExperimentError> {
        let rep = classify(&self.phase, &self.point, DEFAULT_MAX_ORDER)?;
        let mut bad = self.expected.mismatches(&rep);
        let pred = predicted_decay(&self.phase, &rep);
        let (value, governing, conj) = match &pred {
            Prediction::Exponent { value, governing, conjectural } => (Some(value.clone()), Some(*governing), *conjectural),
            Prediction::NoPrediction { .. } => (None, None, false),
        };
        if value != self.predicted {
            bad.push(format!("predicted: expected {:?}, got {pred}", self.predicted.as_ref().map(|v| v.to_string())));
        }
        if governing != self.governing {
            bad.push(format!("governing: expected {:?}, got {governing:?}", self.governing));
        }
        if conj != self.conjectural {
            bad.push(format!("conjectural: expected {}, got {conj}", self.conjectural));
        }
        if bad.is_empty() {
            Ok(rep)
        } else {
            Err(ExperimentError::Catalog { entry: self.name.clone(), mismatches: bad })
        }
    }

    pub fn predicted_f64(&self) -> Option<f64> {
        self.predicted.as_ref().map(crate::symcore::rational::to_f64)
    }
}

fn zeros(n: usize) -> Vec<Rational> {
    vec![int(0); n]
}

fn flat_box(d: usize, halfwidth: f64) -> AmplitudeSpec {
    AmplitudeSpec::uniform(d, AxisProfile::flat_top(halfwidth))
}

pub fn nondegenerate(d: usize) -> Result<CatalogEntry, ExperimentError> {
    let (phi, numeric) = match d {
        1 => ("x1*z1", NumericSetup::Operator {
            amplitude: flat_box(1, 1.0),
            lambdas: LambdaGrid::dyadic(6, 13),
            tolerance: 0.05,
        }),
        // ratio 12^{1/6}: seven points from 4 to 48
        2 => ("x1*z1 + x2*z2", NumericSetup::Operator {
            amplitude: flat_box(2, 2.0),
            lambdas: LambdaGrid { start: 4.0, ratio: 12f64.powf(1.0 / 6.0), count: 7 },
            tolerance: 0.10,
        }),
        _ => return Err(ExperimentError::Argument(format!("nondegenerate: d must be 1 or 2, got {d}"))),
    };
    Ok(CatalogEntry {
        name: format!("nondegenerate_{d}d"),
        phase: PhaseSpec::oscillatory(d, phi)?,
        point: zeros(2 * d),
        expected: ExpectedClass::nondegenerate(),
        predicted: Some(rat(-(d as i64), 2)),
        governing: Some("nondegenerate"),
        conjectural: false,
        numeric: Some(numeric),
    })
}

/// Φ = x z^{r+1}/(r+1): Φ_xz = z^r, type r through the left kernel field, blowdown on the right.
pub fn onesided(r: u32) -> Result<CatalogEntry, ExperimentError> {
    if !(1..DEFAULT_MAX_ORDER).contains(&r) {
        return Err(ExperimentError::Argument(format!("onesided: r must lie in 1..{DEFAULT_MAX_ORDER}, got {r}")));
    }
    let phase = PhaseSpec::oscillatory(1, &format!("x1*z1^{}/{}", r + 1, r + 1))?;
    Ok(CatalogEntry {
        name: format!("onesided_{r}"),
        phase,
        point: zeros(2),
        expected: ExpectedClass {
            corank: 1,
            type_left: Some(TypeOrder::Finite(r)),
            type_right: Some(TypeOrder::Exceeds(DEFAULT_MAX_ORDER)),
            mixed_pairs: vec![(0, r)],
            morin_left: if r == 1 { MorinClass::Morin(1) } else { MorinClass::NotSmoothSingularVariety },
            morin_right: MorinClass::Blowdown,
            simple_rank_drop: r == 1,
            blowdown_left: false,
            blowdown_right: true,
        },
        predicted: Some(-rat(1, 2 * r as i64 + 2)),
        governing: Some("one-sided-type"),
        conjectural: r > 3,
        numeric: Some(NumericSetup::Operator {
            amplitude: AmplitudeSpec::product(vec![AxisProfile::flat_top(0.5)], vec![AxisProfile::flat_top(1.0)]),
            lambdas: LambdaGrid::dyadic(6, 13),
            tolerance: if r == 1 { 0.05 } else { 0.04 },
        }),
    })
}

/// Φ = (x−z)^k: Φ_xz ∝ (x−z)^{k−2}, type k−2 on both sides.
pub fn twosided(k: u32) -> Result<CatalogEntry, ExperimentError> {
    if !(3..DEFAULT_MAX_ORDER + 2).contains(&k) {
        return Err(ExperimentError::Argument(format!(
            "twosided: k must lie in 3..{}, got {k}",
            DEFAULT_MAX_ORDER + 2
        )));
    }
    let t = k - 2;
    let (predicted, governing, conjectural) = match t {
        1 => (-rat(1, 3), "two-sided-fold", false),
        2 => (-rat(1, 4), "two-sided-type-2", false),
        _ => (-rat(1, 2 * t as i64 + 2), "one-sided-type", t > 3),
    };
    let v = oscillatory_vars(1);
    let window = Cutoff::new(parse_poly("x1 - z1", &v)?, 2.0, 0);
    Ok(CatalogEntry {
        name: format!("twosided_{k}"),
        phase: PhaseSpec::oscillatory(1, &format!("(x1 - z1)^{k}"))?,
        point: zeros(2),
        expected: ExpectedClass::symmetric(
            t,
            if t == 1 { MorinClass::Morin(1) } else { MorinClass::NotSmoothSingularVariety },
        ),
        predicted: Some(predicted),
        governing: Some(governing),
        conjectural,
        numeric: Some(NumericSetup::Operator {
            amplitude: flat_box(1, 1.0).with_cutoff(window),
            lambdas: LambdaGrid::dyadic(6, 13),
            tolerance: 0.05,
        }),
    })
}

/// (x1, x2, x3, ξ2, ξ3, y1) at the origin with ξ = (0, 1).
fn curve3_point() -> Vec<Rational> {
    vec![int(0), int(0), int(0), int(0), int(1), int(0)]
}

/// Γ(a) = (a, a^m/m, a^n/n) in ℝ³.
pub fn curve_mn(m: u32, n: u32) -> Result<CatalogEntry, ExperimentError> {
    let (expected, predicted) = match (m, n) {
        (2, 3) => (ExpectedClass::symmetric(1, MorinClass::Morin(1)), Some(-rat(1, 3))),
        (2, 4) => (ExpectedClass::symmetric(2, MorinClass::Morin(2)), None),
        (3, 4) => (ExpectedClass::symmetric(2, MorinClass::NotSmoothSingularVariety), None),
        _ => {
            return Err(ExperimentError::Argument(format!(
                "curve_mn: (m,n) must be one of (2,3), (2,4), (3,4), got ({m},{n})"
            )))
        }
    };
    let governing = predicted.as_ref().map(|_| "curve-average-multiplier");
    Ok(CatalogEntry {
        name: format!("curve_mn_{m}_{n}"),
        phase: PhaseSpec::curve_average(&[&format!("a^{m}/{m}"), &format!("a^{n}/{n}")])?,
        point: curve3_point(),
        expected,
        predicted,
        governing,
        conjectural: false,
        numeric: None,
    })
}

fn moment_components(d: usize) -> Vec<String> {
    let mut fact = 1u64;
    (2..=d as u64)
        .map(|k| {
            fact *= k;
            format!("a^{k}/{fact}")
        })
        .collect()
}

/// Γ(a) = (a, a²/2!, …, a^d/d!).
pub fn moment_curve(d: usize) -> Result<CatalogEntry, ExperimentError> {
    let (point, expected) = match d {
        // (x1, x2, ξ2, y1)
        2 => (vec![int(0), int(0), int(1), int(0)], ExpectedClass::nondegenerate()),
        3 => (curve3_point(), ExpectedClass::symmetric(1, MorinClass::Morin(1))),
        _ => return Err(ExperimentError::Argument(format!("moment_curve: d must be 2 or 3, got {d}"))),
    };
    let comps = moment_components(d);
    let refs: Vec<&str> = comps.iter().map(String::as_str).collect();
    Ok(CatalogEntry {
        name: format!("moment_curve_{d}"),
        phase: PhaseSpec::curve_average(&refs)?,
        point,
        expected,
        predicted: Some(-rat(1, d as i64)),
        governing: Some("curve-average-multiplier"),
        conjectural: false,
        numeric: Some(NumericSetup::Multiplier {
            cutoff: AxisProfile::flat_top(1.0),
            lambdas: LambdaGrid::dyadic(4, 12),
            tolerance: 0.05,
        }),
    })
}

/// Lines x' + s·γ(x_d) with γ(a) = (a, a²/2).
pub fn rigid_xray(d: usize) -> Result<CatalogEntry, ExperimentError> {
    if d != 3 {
        return Err(ExperimentError::Argument(format!("rigid_xray: only d = 3 is catalogued, got {d}")));
    }
    Ok(CatalogEntry {
        name: "rigid_xray_3".into(),
        phase: PhaseSpec::rigid_xray(&["a", "a^2/2"])?,
        // (x1, x2, x3, τ1, τ2, y3) with τ·γ'(x3) = 0
        point: curve3_point(),
        expected: ExpectedClass {
            corank: 1,
            type_left: Some(TypeOrder::Exceeds(DEFAULT_MAX_ORDER)),
            type_right: Some(TypeOrder::Finite(1)),
            mixed_pairs: vec![(1, 0)],
            morin_left: MorinClass::Blowdown,
            morin_right: MorinClass::Morin(1),
            simple_rank_drop: true,
            blowdown_left: true,
            blowdown_right: false,
        },
        predicted: Some(-rat(1, 2)),
        governing: Some("rigid-xray-multiplier"),
        conjectural: false,
        numeric: Some(NumericSetup::Multiplier {
            cutoff: AxisProfile::flat_top(1.0),
            lambdas: LambdaGrid::dyadic(4, 12),
            tolerance: 0.07,
        }),
    })
}

/// h = t_r^{r+1} + Σ_{i<r} t_i t_r^i.
pub fn morin_normal(r: usize) -> Result<CatalogEntry, ExperimentError> {
    if !(1..=3).contains(&r) {
        return Err(ExperimentError::Argument(format!("morin_normal: r must lie in 1..=3, got {r}")));
    }
    let mut h = format!("t{r}^{}", r + 1);
    for i in 1..r {
        h.push_str(&format!(" + t{i}*t{r}^{i}"));
    }
    Ok(CatalogEntry {
        name: format!("morin_normal_{r}"),
        phase: PhaseSpec::germ(r, &h)?,
        point: zeros(r),
        expected: ExpectedClass {
            corank: 1,
            type_left: Some(TypeOrder::Finite(r as u32)),
            type_right: None,
            mixed_pairs: Vec::new(),
            morin_left: MorinClass::Morin(r as u32),
            morin_right: MorinClass::NotApplicable,
            simple_rank_drop: true,
            blowdown_left: false,
            blowdown_right: false,
        },
        predicted: None,
        governing: None,
        conjectural: false,
        numeric: None,
    })
}

/// Incidence y2 = x2 + (x1 − y1)^n/n; rotational curvature ∝ (x1 − y1)^{n−2}.
pub fn conormal_t(n: u32) -> Result<CatalogEntry, ExperimentError> {
    if !(2..DEFAULT_MAX_ORDER + 2).contains(&n) {
        return Err(ExperimentError::Argument(format!(
            "conormal_t: n must lie in 2..{}, got {n}",
            DEFAULT_MAX_ORDER + 2
        )));
    }
    let expected = if n == 2 {
        ExpectedClass::nondegenerate()
    } else {
        ExpectedClass::symmetric(n - 2, MorinClass::NotApplicable)
    };
    Ok(CatalogEntry {
        name: format!("conormal_t{n}"),
        phase: PhaseSpec::conormal(&format!("x2 + (x1 - y1)^{n}/{n}"))?,
        point: zeros(3),
        expected,
        predicted: Some(-rat(1, 2) - rat(1, n as i64)),
        governing: Some("newton-polygon"),
        conjectural: false,
        numeric: None,
    })
}

fn build_all() -> Result<Vec<CatalogEntry>, ExperimentError> {
    let mut v = vec![nondegenerate(1)?, nondegenerate(2)?];
    for r in 1..=4 {
        v.push(onesided(r)?);
    }
    for k in 3..=4 {
        v.push(twosided(k)?);
    }
    for (m, n) in [(2, 3), (2, 4), (3, 4)] {
        v.push(curve_mn(m, n)?);
    }
    v.push(moment_curve(2)?);
    v.push(moment_curve(3)?);
    v.push(rigid_xray(3)?);
    for r in 1..=3 {
        v.push(morin_normal(r)?);
    }
    for n in 2..=5 {
        v.push(conormal_t(n)?);
    }
    Ok(v)
}

/// Every catalogued model problem, each re-validated against the classifier.
///
/// Panics when an entry disagrees with the degeneracy module: the catalog is then broken.
pub fn catalog() -> Vec<CatalogEntry> {
    let all = build_all().expect("catalog entries are well-formed");
    for e in &all {
        if let Err(err) = e.validate() {
            panic!("{err}");
        }
    }
    all
}

impl From<&TypeReport> for ExpectedClass {
    fn from(r: &TypeReport) -> Self {
        ExpectedClass {
            corank: r.corank,
            type_left: r.type_left,
            type_right: r.type_right,
            mixed_pairs: r.mixed_pairs.clone(),
            morin_left: r.morin_left,
            morin_right: r.morin_right,
            simple_rank_drop: r.simple_rank_drop,
            blowdown_left: r.blowdown_left,
            blowdown_right: r.blowdown_right,
        }
    }
}

/// Largest index i among the variables x_i, z_i occurring in `src`.
fn inline_dim(src: &str) -> usize {
    let b = src.as_bytes();
    let mut d = 0;
    let mut i = 0;
    while i < b.len() {
        let ident_start = i == 0 || !(b[i - 1].is_ascii_alphanumeric() || b[i - 1] == b'_');
        if (b[i] == b'x' || b[i] == b'z') && ident_start {
            let mut j = i + 1;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = src[i + 1..j].parse::<usize>() {
                d = d.max(k);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    d
}

/// An oscillatory phase over x1..xd, z1..zd entered as text, classified at `point` (origin by default).
///
/// The expected class is whatever the classifier reports; the numeric setup is a flat-top box
/// of half-width 1 with the nondegenerate λ grids.
pub fn inline_entry(phi: &str, point: Option<Vec<Rational>>) -> Result<CatalogEntry, ExperimentError> {
    let d = inline_dim(phi);
    if !(1..=2).contains(&d) {
        return Err(ExperimentError::Argument(format!(
            "inline phase must use variables x1..xd, z1..zd with d = 1 or 2, got d = {d}"
        )));
    }
    let phase = PhaseSpec::oscillatory(d, phi)?;
    let point = point.unwrap_or_else(|| zeros(2 * d));
    if point.len() != 2 * d {
        return Err(ExperimentError::Argument(format!("point must have {} coordinates, got {}", 2 * d, point.len())));
    }
    let rep = classify(&phase, &point, DEFAULT_MAX_ORDER)?;
    let (predicted, governing, conjectural) = match predicted_decay(&phase, &rep) {
        Prediction::Exponent { value, governing, conjectural } => (Some(value), Some(governing), conjectural),
        Prediction::NoPrediction { .. } => (None, None, false),
    };
    let numeric = match d {
        1 => NumericSetup::Operator { amplitude: flat_box(1, 1.0), lambdas: LambdaGrid::dyadic(6, 12), tolerance: 0.05 },
        _ => NumericSetup::Operator {
            amplitude: flat_box(2, 2.0),
            lambdas: LambdaGrid { start: 4.0, ratio: 12f64.powf(1.0 / 6.0), count: 7 },
            tolerance: 0.10,
        },
    };
    Ok(CatalogEntry {
        name: "inline".into(),
        phase,
        point,
        expected: ExpectedClass::from(&rep),
        predicted,
        governing,
        conjectural,
        numeric: Some(numeric),
    })
}

fn params<T: std::str::FromStr>(name: &str, s: &str, n: usize) -> Result<Vec<T>, ExperimentError> {
    let v: Vec<T> = s
        .split(',')
        .map(|t| t.trim().parse::<T>())
        .collect::<Result<_, _>>()
        .map_err(|_| ExperimentError::Argument(format!("{name}: cannot parse parameters '{s}'")))?;
    if v.len() != n {
        return Err(ExperimentError::Argument(format!("{name}: expected {n} parameter(s), got {}", v.len())));
    }
    Ok(v)
}

/// Resolves `NAME`, `NAME:params` or a catalog name such as `onesided_3`, and validates the entry.
pub fn find_entry(spec: &str) -> Result<CatalogEntry, ExperimentError> {
    let (name, args) = match spec.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a)),
        None => (spec.trim(), None),
    };
    let e = if let Some(a) = args {
        match name {
            "nondegenerate" => nondegenerate(params(name, a, 1)?[0])?,
            "onesided" => onesided(params(name, a, 1)?[0])?,
            "twosided" => twosided(params(name, a, 1)?[0])?,
            "curve_mn" => {
                let p = params::<u32>(name, a, 2)?;
                curve_mn(p[0], p[1])?
            }
            "moment_curve" => moment_curve(params(name, a, 1)?[0])?,
            "rigid_xray" => rigid_xray(params(name, a, 1)?[0])?,
            "morin_normal" => morin_normal(params(name, a, 1)?[0])?,
            "conormal_t" => conormal_t(params(name, a, 1)?[0])?,
            _ => return Err(ExperimentError::Argument(format!("unknown entry family '{name}'"))),
        }
    } else {
        build_all()?
            .into_iter()
            .find(|e| e.name == name)
            .ok_or_else(|| ExperimentError::Argument(format!("unknown catalog entry '{name}'")))?
    };
    e.validate()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_dimension() {
        assert_eq!(inline_dim("x1*z1^3/3"), 1);
        assert_eq!(inline_dim("x1*z1 + x2*z2"), 2);
        assert_eq!(inline_dim("7"), 0);
    }

    #[test]
    fn inline_matches_catalog() {
        let e = inline_entry("x1*z1^3/3", None).unwrap();
        let o = onesided(2).unwrap();
        assert_eq!(e.expected, o.expected);
        assert_eq!(e.predicted, o.predicted);
        e.validate().unwrap();
        assert!(inline_entry("x3*z3", None).is_err());
        assert!(inline_entry("x1*z1", Some(vec![int(0)])).is_err());
    }

    #[test]
    fn lambda_grids() {
        assert_eq!(LambdaGrid::dyadic(6, 13).values().len(), 8);
        assert_eq!(LambdaGrid::dyadic(6, 13).values()[7], 8192.0);
        let g = LambdaGrid::between(64.0, 1000.0, 2.0);
        assert_eq!(g.values(), vec![64.0, 128.0, 256.0, 512.0]);
        let g = LambdaGrid::between(64.0, 1024.0, 2.0);
        assert_eq!(g.count, 5);
    }

    #[test]
    fn moment_components_are_factorial_scaled() {
        assert_eq!(moment_components(3), vec!["a^2/2", "a^3/6"]);
    }

    #[test]
    fn lookup_by_family_and_name() {
        assert_eq!(find_entry("curve_mn:2,4").unwrap().name, "curve_mn_2_4");
        assert_eq!(find_entry("onesided_3").unwrap().name, "onesided_3");
        assert!(matches!(find_entry("curve_mn:2"), Err(ExperimentError::Argument(_))));
        assert!(matches!(find_entry("nope"), Err(ExperimentError::Argument(_))));
    }
}
