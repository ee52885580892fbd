//! Slope bookkeeping for Dehn fillings of the double branched cover of an
//! encircled tangle, the branch-link correspondence, and assembled family
//! reports with certificate-backed verdicts.

use crate::diagram::{
    closure, synthesize, tn_expr, BoxParity, Closure, PlanarDiagram, TangleType,
};
use crate::expr::{ClosureKind, TangleExpr};
use crate::fraction::Fraction;
use crate::invariants::{det_pair_diagram, determinant, DetPair, InvariantError};
use crate::montesinos::{augmented_form, MontesinosError, MontesinosForm};
use crate::quasialt::{certify_alternating_link, certify_family, QaCertificate, QaError};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DehnError {
    #[error("invalid slope {0}/{1}: {2}")]
    BadSlope(i64, i64, String),
    #[error("{0}")]
    Invariant(String),
    #[error("{0}")]
    Montesinos(String),
    #[error("{0}")]
    Qa(String),
    #[error("identity violation: {0}")]
    IdentityViolation(String),
}

impl From<InvariantError> for DehnError {
    fn from(e: InvariantError) -> Self {
        DehnError::Invariant(e.to_string())
    }
}
impl From<crate::diagram::DiagramError> for DehnError {
    fn from(e: crate::diagram::DiagramError) -> Self {
        DehnError::Invariant(e.to_string())
    }
}
impl From<MontesinosError> for DehnError {
    fn from(e: MontesinosError) -> Self {
        DehnError::Montesinos(e.to_string())
    }
}
impl From<QaError> for DehnError {
    fn from(e: QaError) -> Self {
        DehnError::Qa(e.to_string())
    }
}

/// A slope `p gamma_inf + q gamma_0` in the standard basis of the covering
/// torus, normalized so `q >= 0`, and `p >= 0` when `q = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Slope, DehnError> {
        if p == 0 && q == 0 {
            return Err(DehnError::BadSlope(p, q, "(0,0) is not a slope".into()));
        }
        if num_integer::gcd(p, q) != 1 {
            return Err(DehnError::BadSlope(p, q, "coefficients must be coprime".into()));
        }
        let (p, q) = if q < 0 || (q == 0 && p < 0) { (-p, -q) } else { (p, q) };
        Ok(Slope { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn neg(&self) -> Slope {
        Slope::new(-self.p, self.q).expect("negation of a valid slope")
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// The branch link of the filling along `p/q`: the expression
/// `N(-p/q + t)`; the `1/0` filling degenerates to the denominator closure
/// `D(t)`.
pub fn montesinos_trick(t: &TangleExpr, s: Slope) -> (TangleExpr, ClosureKind) {
    if s.is_infinite() {
        return (t.clone(), ClosureKind::Denominator);
    }
    let f = Fraction::new(-s.p, s.q).expect("valid slope fraction");
    let leaf = TangleExpr::from_fraction(&f).expect("finite fraction");
    (TangleExpr::sum(leaf, t.clone()), ClosureKind::Numerator)
}

pub fn branch_link_diagram(t: &TangleExpr, s: Slope) -> Result<PlanarDiagram, DehnError> {
    let (expr, kind) = montesinos_trick(t, s);
    let tangle = synthesize(&expr)?;
    let kind = match kind {
        ClosureKind::Numerator => Closure::Numerator,
        ClosureKind::Denominator => Closure::Denominator,
    };
    Ok(closure(&tangle, kind))
}

/// The clockwise inversion of a tangle expression (rotate, then mirror);
/// keeps encirclements of type 2 tangles well formed.
fn invert_cw(t: &TangleExpr) -> TangleExpr {
    TangleExpr::mirror(TangleExpr::RotateCw(Box::new(t.clone())))
}

/// The reciprocal presentation of the same filling (up to mirror image):
/// `N(-p/q + tau(X))` has the same determinant as `N(-q/p + tau(X'))`
/// where `X'` is the clockwise inversion of `X`, because the encircled
/// inversion of `tau(X)` is again an encircled tangle. The equality is
/// checked exactly.
pub fn reciprocal_equivalence(
    t: &TangleExpr,
    s: Slope,
) -> Result<((TangleExpr, Slope), BigInt), DehnError> {
    let TangleExpr::Encircle(inner) = t else {
        return Err(DehnError::Invariant("expected an encircled tangle".into()));
    };
    let transformed = TangleExpr::encircle(invert_cw(inner));
    let s2 = Slope::new(s.q(), s.p())?;
    let d1 = determinant(&branch_link_diagram(t, s)?)?;
    let d2 = determinant(&branch_link_diagram(&transformed, s2)?)?;
    if d1 != d2 {
        return Err(DehnError::IdentityViolation(format!(
            "reciprocal determinants differ: {d1} vs {d2}"
        )));
    }
    Ok(((transformed, s2), d1))
}

/// Description of the integer-surgery presentation of the `1/2` filling for
/// an integer tangle `-m`: the Montesinos form `M(0; -2, 2, (2m+1)/(m+1))`
/// and surgery along the torus knot `T(2, -2m-1)` with coefficient of
/// magnitude `4(m+1)`. Only the magnitude is pinned by the determinant;
/// the sign is reported as undetermined.
#[derive(Debug, Clone)]
pub struct SurgeryDescription {
    pub montesinos: MontesinosForm,
    pub torus_knot: (i64, i64),
    pub coefficient_magnitude: BigInt,
}

pub fn prop_surgery_description(m: u32) -> Result<SurgeryDescription, DehnError> {
    if m == 0 {
        return Err(DehnError::Invariant("need m >= 1".into()));
    }
    let montesinos = augmented_form(m, 1)?;
    let tangle = synthesize(&TangleExpr::Integer(-(m as i64)))?;
    let (link, _) = crate::diagram::family_link(&tangle, 1, 1)?;
    let coefficient_magnitude = determinant(&link)?;
    if coefficient_magnitude != BigInt::from(4 * (m as i64 + 1)) {
        return Err(DehnError::IdentityViolation(format!(
            "surgery coefficient magnitude {coefficient_magnitude} != 4(m+1)"
        )));
    }
    Ok(SurgeryDescription {
        montesinos,
        torus_knot: (2, -(2 * m as i64 + 1)),
        coefficient_magnitude,
    })
}

/// A verdict is a certificate reference or Unknown-with-reason; never a
/// bare boolean.
#[derive(Debug, Clone)]
pub enum Verdict {
    Certified { by: String, hypotheses: Vec<String> },
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified { .. })
    }

    fn to_json(&self) -> Value {
        match self {
            Verdict::Certified { by, hypotheses } => json!({
                "verdict": "certified", "by": by, "hypotheses": hypotheses,
            }),
            Verdict::Unknown { reason } => json!({ "verdict": "unknown", "reason": reason }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Presentation {
    Direct,
    Reciprocal,
}

/// Assembled report for the filling of slope `p gamma_inf + (p+q) gamma_0`
/// of the double cover of `(B, tau(T))`.
#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub tangle: TangleExpr,
    pub p: i64,
    pub q: i64,
    pub branch_link: TangleExpr,
    pub determinant: BigInt,
    pub det_pair: DetPair,
    pub crossing_count: usize,
    pub components: usize,
    pub certificate: Option<QaCertificate>,
    pub l_space: Verdict,
    pub non_left_orderable: Verdict,
    pub hyperbolic_branch_link: Verdict,
    pub non_seifert: Verdict,
    /// Informational: the crossing count of the synthesized branch diagram
    /// exceeds its determinant (an obstruction context, not a verdict).
    pub crossings_exceed_det: bool,
}

/// Does the expression tree witness local unknottedness structurally?
/// Rational leaves composed by sums, products, symmetries and encirclement
/// qualify; anything else is Unknown.
pub fn locally_unknotted_guaranteed(t: &TangleExpr) -> bool {
    use TangleExpr::*;
    match t {
        Integer(_) | Infinity | Rational(_) => true,
        Sum(a, b) | Product(a, b) => locally_unknotted_guaranteed(a) && locally_unknotted_guaranteed(b),
        Invert(x) | Mirror(x) | FlipH(x) | FlipV(x) | RotateCw(x) | RotateCcw(x) | Encircle(x) => {
            locally_unknotted_guaranteed(x)
        }
    }
}

/// Is the expression one of the `T_n` family constants?
fn matches_tn(t: &TangleExpr) -> Option<(u32, BoxParity)> {
    for n in 1..=64 {
        for parity in [BoxParity::Even, BoxParity::Odd] {
            if &tn_expr(n, parity) == t {
                return Some((n, parity));
            }
        }
    }
    None
}

pub fn family_report(
    t: &TangleExpr,
    p: i64,
    q: i64,
    which: Presentation,
) -> Result<FamilyReport, DehnError> {
    if q == 0 || num_integer::gcd(p, q) != 1 {
        return Err(DehnError::BadSlope(p, q, "need coprime p, q with q != 0".into()));
    }
    // A top-level encirclement is unwrapped: the report is about the
    // fillings of the cover of tau(T), so `tau(T)` and `T` name the same
    // family.
    let t = match t {
        TangleExpr::Encircle(inner) => (**inner).clone(),
        other => other.clone(),
    };
    // The 1/alpha filling of the cover of tau(T) is, up to mirror image,
    // the alpha filling of the cover of tau(X') with X' the clockwise
    // inversion of T; its report is the direct report on X'.
    let t = match which {
        Presentation::Direct => t,
        Presentation::Reciprocal => invert_cw(&t),
    };
    let td = synthesize(&t)?;
    if td.classify_type()? != TangleType::Type2 {
        return Err(DehnError::Invariant("family tangles must be type 2".into()));
    }
    let det_pair = det_pair_diagram(&td)?;
    let tau = TangleExpr::encircle(t.clone());
    let filling = Slope::new(p, p + q)?;
    let (branch_link, _) = montesinos_trick(&tau, filling);
    let branch = branch_link_diagram(&tau, filling)?;
    let determinant_value = determinant(&branch)?;
    let components = branch.components()?;
    let crossing_count = branch.crossing_count();
    let crossings_exceed_det = BigInt::from(crossing_count) > determinant_value;

    // Quasi-alternating certification along the two constructive routes.
    let slope_ratio_in_unit = p > 0 && p <= q;
    let certificate = if slope_ratio_in_unit {
        match certify_family(&t, p, q) {
            Ok(c) => Some(c),
            Err(e) => return Err(e.into()),
        }
    } else if p < 0 {
        certify_alternating_link(&branch).ok()
    } else {
        None
    };

    let l_space = match &certificate {
        Some(_) => Verdict::Certified {
            by: "qa-certificate".into(),
            hypotheses: vec![format!("branch link N(-{p}/{} + tau(T)) certified quasi-alternating", p + q)],
        },
        None => Verdict::Unknown {
            reason: "slope outside the certified range; no quasi-alternating certificate".into(),
        },
    };

    let non_left_orderable = if p <= q {
        Verdict::Certified {
            by: "slope-bound".into(),
            hypotheses: vec![format!("p/q = {p}/{q} <= 1")],
        }
    } else {
        Verdict::Unknown { reason: format!("slope bound requires p/q <= 1, got {p}/{q}") }
    };

    let hyperbolic_branch_link = hyperbolicity_verdict(&t, &td, &det_pair, p, q);
    let non_seifert = non_seifert_verdict(&t, p, q, components);

    Ok(FamilyReport {
        tangle: t,
        p,
        q,
        branch_link,
        determinant: determinant_value,
        det_pair,
        crossing_count,
        components,
        certificate,
        l_space,
        non_left_orderable,
        hyperbolic_branch_link,
        non_seifert,
        crossings_exceed_det,
    })
}

fn hyperbolicity_verdict(
    t: &TangleExpr,
    td: &PlanarDiagram,
    dp: &DetPair,
    p: i64,
    q: i64,
) -> Verdict {
    let mut hypotheses = Vec::new();
    if !(p > 0 && p <= q) {
        return Verdict::Unknown { reason: format!("augmentation criterion needs 0 < p/q <= 1, got {p}/{q}") };
    }
    hypotheses.push(format!("0 < p/q = {p}/{q} <= 1"));
    if !locally_unknotted_guaranteed(t) {
        return Verdict::Unknown {
            reason: "local unknottedness not structurally guaranteed for this expression".into(),
        };
    }
    hypotheses.push("locally unknotted (structural guarantee)".into());
    if dp.numerator <= BigInt::from(1) {
        return Verdict::Unknown { reason: format!("need N_T > 1, got {}", dp.numerator) };
    }
    hypotheses.push(format!("N_T = {} > 1", dp.numerator));
    let c = BigInt::from(td.crossing_count());
    if dp.denominator < c {
        return Verdict::Unknown { reason: format!("need D_T >= c(T), got {} < {c}", dp.denominator) };
    }
    hypotheses.push(format!("D_T = {} >= c(T) = {c}", dp.denominator));
    Verdict::Certified { by: "augmented-alternating".into(), hypotheses }
}

fn non_seifert_verdict(t: &TangleExpr, p: i64, q: i64, components: usize) -> Verdict {
    let Some((n, parity)) = matches_tn(t) else {
        return Verdict::Unknown { reason: "non-Seifert criterion applies to the T_n family only".into() };
    };
    if p % 2 != 0 {
        return Verdict::Unknown { reason: format!("criterion needs even p, got {p}") };
    }
    if !(p > 0 && p < q) {
        return Verdict::Unknown { reason: format!("criterion needs 0 < p/q < 1, got {p}/{q}") };
    }
    if components != 2 {
        return Verdict::Unknown {
            reason: format!("branch link must have two components, found {components}"),
        };
    }
    Verdict::Certified {
        by: "component-obstruction".into(),
        hypotheses: vec![
            format!("tangle is T_{n} ({parity:?} boxes)"),
            format!("p = {p} even, 0 < p/q = {p}/{q} < 1"),
            "branch link has two components, one the encirclement circle".into(),
        ],
    }
}

impl FamilyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "tangle": self.tangle.to_string(),
            "p": self.p,
            "q": self.q,
            "filling_slope": format!("{}/{}", self.p, self.p + self.q),
            "branch_link": format!("N({})", self.branch_link),
            "det": self.determinant.to_string(),
            "n_t": self.det_pair.numerator.to_string(),
            "d_t": self.det_pair.denominator.to_string(),
            "components": self.components,
            "crossings": self.crossing_count,
            "crossings_exceed_det": self.crossings_exceed_det,
            "l_space": self.l_space.to_json(),
            "non_left_orderable": self.non_left_orderable.to_json(),
            "hyperbolic_branch_link": self.hyperbolic_branch_link.to_json(),
            "non_seifert": self.non_seifert.to_json(),
            "certificate": self.certificate.as_ref().map(|c| c.to_json()).unwrap_or(Value::Null),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    #[test]
    fn slope_normalization() {
        let s = Slope::new(3, -2).unwrap();
        assert_eq!((s.p(), s.q()), (-3, 2));
        let s = Slope::new(-1, 0).unwrap();
        assert_eq!((s.p(), s.q()), (1, 0));
        assert!(Slope::new(2, 4).is_err());
        assert!(Slope::new(0, 0).is_err());
    }

    #[test]
    fn trick_examples() {
        let tau = parse_expr("tau(-1)").unwrap();
        let (e, k) = montesinos_trick(&tau, Slope::new(1, 2).unwrap());
        assert_eq!(k, ClosureKind::Numerator);
        assert_eq!(e.to_string(), "[0,-2] + tau(-1)");
        let (e, k) = montesinos_trick(&tau, Slope::new(1, 0).unwrap());
        assert_eq!(k, ClosureKind::Denominator);
        assert_eq!(e, tau);
    }

    #[test]
    fn infinite_slope_is_denominator_closure() {
        let tau = parse_expr("tau(-1)").unwrap();
        let d = branch_link_diagram(&tau, Slope::new(1, 0).unwrap()).unwrap();
        assert_eq!(determinant(&d).unwrap(), BigInt::from(8));
        assert_eq!(d.components().unwrap(), 2);
    }

    #[test]
    fn reciprocal_equivalence_examples() {
        let tau = parse_expr("tau(-1)").unwrap();
        let ((t2, s2), det) = reciprocal_equivalence(&tau, Slope::new(1, 2).unwrap()).unwrap();
        assert_eq!(det, BigInt::from(8));
        assert_eq!(s2, Slope::new(2, 1).unwrap());
        assert_eq!(t2.to_string(), "tau(-rotCW(-1))");

        // Self-reciprocal boundary slope.
        reciprocal_equivalence(&tau, Slope::new(1, 1).unwrap()).unwrap();
        // A bigger tangle.
        let tau = TangleExpr::encircle(tn_expr(1, BoxParity::Odd));
        reciprocal_equivalence(&tau, Slope::new(2, 3).unwrap()).unwrap();
    }

    #[test]
    fn surgery_descriptions() {
        let d = prop_surgery_description(1).unwrap();
        assert_eq!(d.torus_knot, (2, -3));
        assert_eq!(d.coefficient_magnitude, BigInt::from(8));
        assert_eq!(d.montesinos.to_string(), "M(0;-2,2,3/2)");
        let d = prop_surgery_description(2).unwrap();
        assert_eq!(d.torus_knot, (2, -5));
        assert_eq!(d.coefficient_magnitude, BigInt::from(12));
        assert_eq!(d.montesinos.to_string(), "M(0;-2,2,5/3)");
    }

    #[test]
    fn report_full_pipeline() {
        let r = family_report(&tn_expr(1, BoxParity::Odd), 2, 3, Presentation::Direct).unwrap();
        assert!(r.l_space.is_certified());
        assert!(r.non_left_orderable.is_certified());
        assert!(r.hyperbolic_branch_link.is_certified());
        assert!(r.non_seifert.is_certified());
        assert_eq!(r.components, 2);
    }

    #[test]
    fn report_downgrades_hypotheses() {
        // N_T = 1 fails the hyperbolicity hypothesis N_T > 1.
        let r = family_report(&parse_expr("-1").unwrap(), 1, 1, Presentation::Direct).unwrap();
        assert!(r.l_space.is_certified());
        assert!(r.non_left_orderable.is_certified());
        assert!(!r.hyperbolic_branch_link.is_certified());
        assert!(!r.non_seifert.is_certified());
        assert_eq!(r.determinant, BigInt::from(8));
    }

    #[test]
    fn report_negative_slope_uses_alternating_base() {
        let r = family_report(&parse_expr("[-3]").unwrap(), -1, 2, Presentation::Direct).unwrap();
        assert!(r.l_space.is_certified());
        assert!(r.non_left_orderable.is_certified());
        assert!(r.certificate.is_some());
    }

    #[test]
    fn report_beyond_certified_range_is_unknown() {
        let r = family_report(&parse_expr("[-3]").unwrap(), 3, 2, Presentation::Direct).unwrap();
        assert!(!r.l_space.is_certified());
        assert!(!r.non_left_orderable.is_certified());
    }
}
