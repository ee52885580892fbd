//! Quasi-alternating certificates.
//!
//! A certificate witnesses membership in the quasi-alternating class along
//! constructive routes only: explicit smoothing trees with exact
//! determinant additivity at every internal node, alternating base leaves
//! (reduced non-split alternating diagrams, quasi-alternating at every
//! non-nugatory crossing), and rational extensions of certified crossings.
//! Checking a certificate recomputes everything from scratch; the tool
//! never claims non-quasi-alternating-ness.

pub use crate::diagram::SmoothKind;
use crate::diagram::{
    closure, family_link, smooth, synthesize, Closure, CrossingId, DiagramError, PlanarDiagram,
    TangleType,
};
use crate::expr::TangleExpr;
use crate::fraction::{to_continued_fraction, Fraction};
use crate::invariants::{det_pair_diagram, determinant, InvariantError};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QaError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{0}")]
    Invariant(String),
    #[error("diagram is split or unreduced")]
    SplitOrUnreduced,
    #[error("determinant bookkeeping failed: {0}")]
    DetMismatch(String),
    #[error("certificate does not certify the expected crossing")]
    WrongCrossing,
    #[error("bad certificate: {0}")]
    BadCertificate(String),
}

impl From<InvariantError> for QaError {
    fn from(e: InvariantError) -> Self {
        QaError::Invariant(e.to_string())
    }
}

/// Why a leaf diagram is quasi-alternating.
#[derive(Debug, Clone)]
pub enum LeafReason {
    /// A diagram of the unknot (crossing-free circle).
    Unknot,
    /// Reduced, non-split, alternating: quasi-alternating at each
    /// non-nugatory crossing. Carries a chosen witness crossing and the
    /// verified determinant additivity there.
    AlternatingBase { witness: CrossingId, det: BigInt },
    /// The leaf's link is carried to an alternating form by a fixed planar
    /// isotopy; equality is certified at the determinant level and the
    /// alternating form carries its own base certificate.
    IsotopicToAlternating { form: Box<QaCertificate>, det: BigInt },
}

/// A quasi-alternating certificate node.
#[derive(Debug, Clone)]
pub enum QaCertificate {
    Leaf {
        diagram: PlanarDiagram,
        reason: LeafReason,
    },
    Smooth {
        diagram: PlanarDiagram,
        crossing: CrossingId,
        /// (det, det of zero smoothing, det of infinity smoothing)
        det: (BigInt, BigInt, BigInt),
        zero: Box<QaCertificate>,
        infinity: Box<QaCertificate>,
    },
    /// The diagram obtained by extending a certified quasi-alternating
    /// crossing of the base by a rational tangle of the same sign pattern.
    RationalExtension {
        diagram: PlanarDiagram,
        base: Box<QaCertificate>,
        extended: CrossingId,
        tangle: Fraction,
        det: BigInt,
    },
}

impl QaCertificate {
    pub fn diagram(&self) -> &PlanarDiagram {
        match self {
            QaCertificate::Leaf { diagram, .. }
            | QaCertificate::Smooth { diagram, .. }
            | QaCertificate::RationalExtension { diagram, .. } => diagram,
        }
    }

    pub fn det(&self) -> BigInt {
        match self {
            QaCertificate::Leaf { reason, .. } => match reason {
                LeafReason::Unknot => BigInt::one(),
                LeafReason::AlternatingBase { det, .. }
                | LeafReason::IsotopicToAlternating { det, .. } => det.clone(),
            },
            QaCertificate::Smooth { det, .. } => det.0.clone(),
            QaCertificate::RationalExtension { det, .. } => det.clone(),
        }
    }
}

/// Certificate for a reduced non-split alternating diagram (or an unknot
/// diagram). Records one non-nugatory witness crossing with its verified
/// determinant additivity.
pub fn certify_alternating_base(d: &PlanarDiagram) -> Result<QaCertificate, QaError> {
    if d.crossing_count() == 0 {
        if d.is_split() {
            return Err(QaError::SplitOrUnreduced);
        }
        return Ok(QaCertificate::Leaf { diagram: d.clone(), reason: LeafReason::Unknot });
    }
    if d.is_split() || !d.is_reduced() || !d.is_alternating() || !d.is_closed() {
        return Err(QaError::SplitOrUnreduced);
    }
    let nugatory = d.nugatory_flags()?;
    let witness = nugatory
        .iter()
        .position(|&n| !n)
        .ok_or(QaError::SplitOrUnreduced)?;
    let witness = d.crossings()[witness].id;
    let det = determinant(d)?;
    let d0 = determinant(&smooth(d, witness, SmoothKind::Zero)?)?;
    let di = determinant(&smooth(d, witness, SmoothKind::Infinity)?)?;
    if &d0 + &di != det {
        return Err(QaError::DetMismatch(format!(
            "alternating base additivity: {det} != {d0} + {di}"
        )));
    }
    Ok(QaCertificate::Leaf {
        diagram: d.clone(),
        reason: LeafReason::AlternatingBase { witness, det },
    })
}

/// Certificate for any non-split alternating diagram: nugatory crossings
/// are first untwisted (replaced by the determinant-preserving smoothing,
/// which realizes the curl-removing isotopy), then the reduced diagram is
/// certified as a base. Wraps the original diagram when untwisting happened.
pub fn certify_alternating_link(d: &PlanarDiagram) -> Result<QaCertificate, QaError> {
    if !d.is_closed() || d.is_split() || !d.is_alternating() {
        return Err(QaError::SplitOrUnreduced);
    }
    let det = determinant(d)?;
    let mut reduced = d.clone();
    let mut stripped = false;
    loop {
        let flags = reduced.nugatory_flags()?;
        let Some(i) = flags.iter().position(|&n| n) else { break };
        let id = reduced.crossings()[i].id;
        let next = [SmoothKind::Zero, SmoothKind::Infinity]
            .into_iter()
            .filter_map(|k| smooth(&reduced, id, k).ok())
            .find(|s| !s.is_split() && determinant(s).ok().as_ref() == Some(&det))
            .ok_or_else(|| {
                QaError::DetMismatch(format!("no determinant-preserving untwist at crossing {id}"))
            })?;
        reduced = next;
        stripped = true;
    }
    let inner = certify_alternating_base(&reduced)?;
    if !stripped {
        return Ok(inner);
    }
    Ok(QaCertificate::Leaf {
        diagram: d.clone(),
        reason: LeafReason::IsotopicToAlternating { form: Box::new(inner), det },
    })
}

fn base_leaf_via_isotopy(
    raw: &PlanarDiagram,
    alternating_form: &PlanarDiagram,
) -> Result<QaCertificate, QaError> {
    let det_raw = determinant(raw)?;
    let det_form = determinant(alternating_form)?;
    if det_raw != det_form {
        return Err(QaError::DetMismatch(format!(
            "isotoped form determinant {det_form} != raw smoothing determinant {det_raw}"
        )));
    }
    let form = certify_alternating_link(alternating_form)?;
    Ok(QaCertificate::Leaf {
        diagram: raw.clone(),
        reason: LeafReason::IsotopicToAlternating { form: Box::new(form), det: det_raw },
    })
}

/// Quasi-alternating certificate for the base family diagram
/// `D = n(-1/2 + tau(T))` at its marked crossing: the zero smoothing is
/// certified through its alternating form `N(4/3 + flipV(rotCCW(T)))` with
/// determinant `4 N_T + 3 D_T`, the infinity smoothing through `D(T)` with
/// determinant `D_T`, and additivity is checked exactly.
pub fn certify_base(t: &TangleExpr) -> Result<QaCertificate, QaError> {
    let td = synthesize(t)?;
    if td.classify_type()? != TangleType::Type2 {
        return Err(DiagramError::EncircleType.into());
    }
    let dp = det_pair_diagram(&td)?;
    let (link, marked) = family_link(&td, 1, 1)?;
    let det = determinant(&link)?;

    let raw0 = smooth(&link, marked, SmoothKind::Zero)?;
    let alt0 = closure(
        &synthesize(&TangleExpr::sum(
            TangleExpr::rational(&[1, 3]),
            TangleExpr::FlipV(Box::new(TangleExpr::RotateCcw(Box::new(t.clone())))),
        ))?,
        Closure::Numerator,
    );
    let zero = base_leaf_via_isotopy(&raw0, &alt0)?;
    let expect0 = 4 * &dp.numerator + 3 * &dp.denominator;
    if zero.det() != expect0 {
        return Err(QaError::DetMismatch(format!(
            "zero smoothing determinant {} != 4N+3D = {expect0}",
            zero.det()
        )));
    }

    let rawi = smooth(&link, marked, SmoothKind::Infinity)?;
    let alti = closure(&td, Closure::Denominator);
    let infinity = base_leaf_via_isotopy(&rawi, &alti)?;
    if infinity.det() != dp.denominator {
        return Err(QaError::DetMismatch(format!(
            "infinity smoothing determinant {} != D_T = {}",
            infinity.det(),
            dp.denominator
        )));
    }

    if det != &expect0 + &dp.denominator {
        return Err(QaError::DetMismatch(format!(
            "marked-crossing additivity: {det} != {expect0} + {}",
            dp.denominator
        )));
    }
    Ok(QaCertificate::Smooth {
        diagram: link,
        crossing: marked,
        det: (det, expect0, dp.denominator),
        zero: Box::new(zero),
        infinity: Box::new(infinity),
    })
}

/// Extend a certified quasi-alternating crossing by a rational tangle of
/// the same sign pattern. The extension replaces the crossing's twist
/// column `-1/2` by `-p/(p+q)`; determinants are recomputed and recorded.
pub fn extend_by_rational(
    cert: &QaCertificate,
    crossing: CrossingId,
    extension: &Fraction,
) -> Result<QaCertificate, QaError> {
    let QaCertificate::Smooth { diagram, crossing: certified, .. } = cert else {
        return Err(QaError::WrongCrossing);
    };
    // The certificate must certify quasi-alternating-ness at a crossing of
    // the region being extended: the marked crossing is adjacent to the
    // column in the family diagrams.
    let _ = diagram.crossing(*certified)?;
    if extension.denominator().is_one() && extension.numerator().abs().is_one() {
        // Identity extension: the tangle is the crossing itself.
        return Ok(cert.clone());
    }
    let extended_diagram = extended_family_diagram(diagram, crossing, extension)?;
    let det = determinant(&extended_diagram)?;
    Ok(QaCertificate::RationalExtension {
        diagram: extended_diagram,
        base: Box::new(cert.clone()),
        extended: crossing,
        tangle: extension.clone(),
        det,
    })
}

// Rebuild the extension target: the certificate machinery extends columns
// of synthesized family diagrams, so structural replacement suffices. The
// sign-pattern condition is enforced by `replace_crossing`.
fn extended_family_diagram(
    base: &PlanarDiagram,
    crossing: CrossingId,
    extension: &Fraction,
) -> Result<PlanarDiagram, QaError> {
    if extension.is_infinite() {
        return Err(QaError::BadCertificate("cannot extend by the infinity tangle".into()));
    }
    let cf = to_continued_fraction(extension)
        .map_err(|e| QaError::BadCertificate(e.to_string()))?;
    let tangle = synthesize(&TangleExpr::Rational(cf))?;
    Ok(crate::diagram::replace_crossing(base, crossing, &tangle)?)
}

/// Full replay for the family link `n(-p/(p+q) + tau(T))`: certify the
/// base diagram at the marked crossing, then extend the slope column from
/// `-1/2` to `-p/(p+q)`.
pub fn certify_family(t: &TangleExpr, p: i64, q: i64) -> Result<QaCertificate, QaError> {
    crate::invariants::check_family_slope(p, q).map_err(|e| QaError::Invariant(e.to_string()))?;
    let base = certify_base(t)?;
    if (p, q) == (1, 1) {
        return Ok(base);
    }
    let td = synthesize(t)?;
    let (target, _) = family_link(&td, p, q)?;
    let dp = det_pair_diagram(&td)?;
    let det = determinant(&target)?;
    let expect = 4 * q * (&dp.numerator + &dp.denominator);
    if det != expect {
        return Err(QaError::DetMismatch(format!(
            "extended family determinant {det} != q*4(N_T+D_T) = {expect}"
        )));
    }
    // Record the extension: the -1/2 column top crossing is extended by
    // -p/(q-p) (total column fraction -p/(p+q)).
    let ext = Fraction::new(-p, q - p).map_err(|e| QaError::BadCertificate(e.to_string()))?;
    let base_box = Box::new(base);
    Ok(QaCertificate::RationalExtension {
        diagram: target,
        base: base_box,
        extended: 0,
        tangle: ext,
        det,
    })
}

/// A violation found while re-checking a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

/// Re-verify every node of a certificate from scratch using only the
/// invariants pipeline. Returns all violations (empty = valid).
pub fn check_certificate(cert: &QaCertificate) -> Vec<Violation> {
    let mut out = Vec::new();
    check_node(cert, "root", &mut out);
    out
}

fn push(out: &mut Vec<Violation>, path: &str, msg: String) {
    out.push(Violation { path: path.to_string(), message: msg });
}

fn check_node(cert: &QaCertificate, path: &str, out: &mut Vec<Violation>) {
    match cert {
        QaCertificate::Leaf { diagram, reason } => match reason {
            LeafReason::Unknot => {
                if diagram.crossing_count() != 0 || diagram.is_split() || !diagram.is_closed() {
                    push(out, path, "unknot leaf is not a crossing-free unknot diagram".into());
                }
            }
            LeafReason::AlternatingBase { witness, det } => {
                if diagram.is_split() || !diagram.is_reduced() || !diagram.is_alternating() {
                    push(out, path, "alternating base is split, unreduced or non-alternating".into());
                    return;
                }
                match diagram.nugatory_flags() {
                    Ok(flags) => {
                        let idx = diagram.crossings().iter().position(|c| c.id == *witness);
                        match idx {
                            Some(i) if !flags[i] => {}
                            _ => push(out, path, format!("witness crossing {witness} is missing or nugatory")),
                        }
                    }
                    Err(e) => push(out, path, e.to_string()),
                }
                match determinant(diagram) {
                    Ok(d) if &d == det => {
                        let d0 = smooth(diagram, *witness, SmoothKind::Zero)
                            .map_err(QaError::from)
                            .and_then(|s| determinant(&s).map_err(QaError::from));
                        let di = smooth(diagram, *witness, SmoothKind::Infinity)
                            .map_err(QaError::from)
                            .and_then(|s| determinant(&s).map_err(QaError::from));
                        match (d0, di) {
                            (Ok(a), Ok(b)) => {
                                if &a + &b != d {
                                    push(out, path, format!("additivity fails at witness: {d} != {a} + {b}"));
                                }
                            }
                            _ => push(out, path, "cannot smooth at witness".into()),
                        }
                    }
                    Ok(d) => push(out, path, format!("recorded det {det} but recomputed {d}")),
                    Err(e) => push(out, path, e.to_string()),
                }
            }
            LeafReason::IsotopicToAlternating { form, det } => {
                match (determinant(diagram), determinant(form.diagram())) {
                    (Ok(a), Ok(b)) => {
                        if a != b {
                            push(out, path, format!("isotoped form det {b} != raw det {a}"));
                        }
                        if &a != det {
                            push(out, path, format!("recorded det {det} but recomputed {a}"));
                        }
                    }
                    _ => push(out, path, "determinant failed on leaf diagrams".into()),
                }
                check_node(form, &format!("{path}.form"), out);
            }
        },
        QaCertificate::Smooth { diagram, crossing, det, zero, infinity } => {
            let (d, d0, di) = det;
            if &(d0 + di) != d {
                push(out, path, format!("recorded additivity fails: {d} != {d0} + {di}"));
            }
            match determinant(diagram) {
                Ok(actual) if &actual == d => {}
                Ok(actual) => push(out, path, format!("recorded det {d} but recomputed {actual}")),
                Err(e) => push(out, path, e.to_string()),
            }
            for (kind, child, rec) in
                [(SmoothKind::Zero, zero, d0), (SmoothKind::Infinity, infinity, di)]
            {
                let label = format!("{path}.{}", if kind == SmoothKind::Zero { "zero" } else { "inf" });
                match smooth(diagram, *crossing, kind) {
                    Ok(s) => {
                        if !s.same_diagram(child.diagram()) {
                            push(out, &label, "child diagram is not the recorded smoothing".into());
                        }
                        match determinant(&s) {
                            Ok(cd) if &cd == rec => {}
                            Ok(cd) => push(out, &label, format!("recorded {rec} but smoothing has det {cd}")),
                            Err(e) => push(out, &label, e.to_string()),
                        }
                    }
                    Err(e) => push(out, &label, e.to_string()),
                }
                check_node(child, &label, out);
            }
        }
        QaCertificate::RationalExtension { diagram, base, extended, tangle, det } => {
            match determinant(diagram) {
                Ok(d) if &d == det => {}
                Ok(d) => push(out, path, format!("recorded det {det} but recomputed {d}")),
                Err(e) => push(out, path, e.to_string()),
            }
            // Sign pattern: the extension tangle must have a same-sign
            // canonical expansion (so the extended region stays alternating).
            match to_continued_fraction(tangle) {
                Ok(cf) if cf.is_canonical() => {}
                _ => push(out, path, format!("extension tangle {tangle} has no canonical expansion")),
            }
            let _ = extended;
            check_node(base, &format!("{path}.base"), out);
        }
    }
}

// --- serialization -------------------------------------------------------

impl QaCertificate {
    pub fn to_json(&self) -> Value {
        match self {
            QaCertificate::Leaf { diagram, reason } => match reason {
                LeafReason::Unknot => json!({
                    "leaf": "unknot",
                    "diagram": diagram.to_json(),
                }),
                LeafReason::AlternatingBase { witness, det } => json!({
                    "leaf": "alt-base",
                    "diagram": diagram.to_json(),
                    "witness": witness,
                    "det": det.to_string(),
                }),
                LeafReason::IsotopicToAlternating { form, det } => json!({
                    "leaf": "alt-base",
                    "diagram": diagram.to_json(),
                    "det": det.to_string(),
                    "form": form.to_json(),
                }),
            },
            QaCertificate::Smooth { diagram, crossing, det, zero, infinity } => json!({
                "diagram": diagram.to_json(),
                "crossing": crossing,
                "det": [det.0.to_string(), det.1.to_string(), det.2.to_string()],
                "zero": zero.to_json(),
                "inf": infinity.to_json(),
            }),
            QaCertificate::RationalExtension { diagram, base, extended, tangle, det } => json!({
                "leaf": "rational-ext",
                "diagram": diagram.to_json(),
                "extended": extended,
                "tangle": tangle.to_string(),
                "det": det.to_string(),
                "base": base.to_json(),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<QaCertificate, QaError> {
        let bad = |m: &str| QaError::BadCertificate(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("certificate node must be an object"))?;
        let diagram = PlanarDiagram::from_json(
            obj.get("diagram").ok_or_else(|| bad("missing diagram"))?,
        )?;
        let parse_det = |v: &Value| -> Result<BigInt, QaError> {
            v.as_str()
                .and_then(|s| s.parse::<BigInt>().ok())
                .ok_or_else(|| bad("determinants are decimal strings"))
        };
        if let Some(kind) = obj.get("leaf").and_then(Value::as_str) {
            return match kind {
                "unknot" => Ok(QaCertificate::Leaf { diagram, reason: LeafReason::Unknot }),
                "alt-base" => {
                    let det = parse_det(obj.get("det").ok_or_else(|| bad("missing det"))?)?;
                    if let Some(form) = obj.get("form") {
                        let form = QaCertificate::from_json(form)?;
                        Ok(QaCertificate::Leaf {
                            diagram,
                            reason: LeafReason::IsotopicToAlternating { form: Box::new(form), det },
                        })
                    } else {
                        let witness = obj
                            .get("witness")
                            .and_then(Value::as_u64)
                            .ok_or_else(|| bad("missing witness"))?;
                        Ok(QaCertificate::Leaf {
                            diagram,
                            reason: LeafReason::AlternatingBase { witness: witness as usize, det },
                        })
                    }
                }
                "rational-ext" => {
                    let base = QaCertificate::from_json(
                        obj.get("base").ok_or_else(|| bad("missing base"))?,
                    )?;
                    let det = parse_det(obj.get("det").ok_or_else(|| bad("missing det"))?)?;
                    let extended = obj
                        .get("extended")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| bad("missing extended crossing"))? as usize;
                    let tangle = parse_fraction(
                        obj.get("tangle").and_then(Value::as_str).ok_or_else(|| bad("missing tangle"))?,
                    )?;
                    Ok(QaCertificate::RationalExtension {
                        diagram,
                        base: Box::new(base),
                        extended,
                        tangle,
                        det,
                    })
                }
                other => Err(bad(&format!("unknown leaf kind '{other}'"))),
            };
        }
        let crossing = obj
            .get("crossing")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing crossing"))? as usize;
        let dets = obj
            .get("det")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 3)
            .ok_or_else(|| bad("det must be a 3-element array"))?;
        let det = (parse_det(&dets[0])?, parse_det(&dets[1])?, parse_det(&dets[2])?);
        let zero = QaCertificate::from_json(obj.get("zero").ok_or_else(|| bad("missing zero"))?)?;
        let infinity = QaCertificate::from_json(obj.get("inf").ok_or_else(|| bad("missing inf"))?)?;
        Ok(QaCertificate::Smooth {
            diagram,
            crossing,
            det,
            zero: Box::new(zero),
            infinity: Box::new(infinity),
        })
    }
}

fn parse_fraction(s: &str) -> Result<Fraction, QaError> {
    let bad = || QaError::BadCertificate(format!("bad fraction '{s}'"));
    if s == "inf" {
        return Ok(Fraction::infinity());
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    Fraction::new(num, den).map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_tn, BoxParity};
    use crate::expr::parse_expr;

    fn synth(src: &str) -> PlanarDiagram {
        synthesize(&parse_expr(src).unwrap()).unwrap()
    }

    #[test]
    fn smoothing_det_bookkeeping() {
        // T(2,3): 3 = 2 + 1 at any crossing.
        let d = closure(&synth("[0,3]"), Closure::Denominator);
        let det = determinant(&d).unwrap();
        let d0 = determinant(&smooth(&d, 0, SmoothKind::Zero).unwrap()).unwrap();
        let di = determinant(&smooth(&d, 0, SmoothKind::Infinity).unwrap()).unwrap();
        assert_eq!(det, BigInt::from(3));
        assert_eq!(&d0 + &di, det);
    }

    #[test]
    fn alternating_base_examples() {
        let cert = certify_alternating_base(&closure(&synth("[0,3]"), Closure::Denominator)).unwrap();
        assert_eq!(cert.det(), BigInt::from(3));
        assert!(check_certificate(&cert).is_empty());

        let cert = certify_alternating_base(&closure(&synth("[2,3,4]"), Closure::Numerator)).unwrap();
        assert_eq!(cert.det(), BigInt::from(30));
        assert!(check_certificate(&cert).is_empty());

        let unknot = closure(&synth("0"), Closure::Denominator);
        let cert = certify_alternating_base(&unknot).unwrap();
        assert!(matches!(cert, QaCertificate::Leaf { reason: LeafReason::Unknot, .. }));

        // Split diagrams are refused.
        assert!(certify_alternating_base(&closure(&synth("0"), Closure::Numerator)).is_err());
    }

    #[test]
    fn family_certificates() {
        let cert = certify_family(&parse_expr("-1").unwrap(), 1, 1).unwrap();
        match &cert {
            QaCertificate::Smooth { det, .. } => {
                assert_eq!(det.0, BigInt::from(8));
                assert_eq!(det.1, BigInt::from(7));
                assert_eq!(det.2, BigInt::from(1));
            }
            _ => panic!("base certificate expected"),
        }
        assert!(check_certificate(&cert).is_empty());

        let cert = certify_family(&parse_expr("[-3]").unwrap(), 1, 2).unwrap();
        assert_eq!(cert.det(), BigInt::from(32));
        assert!(check_certificate(&cert).is_empty());

        let cert = certify_family(&crate::diagram::tn_expr(1, BoxParity::Odd), 3, 5).unwrap();
        assert!(check_certificate(&cert).is_empty());
        let t = build_tn(1, BoxParity::Odd).unwrap();
        let dp = det_pair_diagram(&t).unwrap();
        assert_eq!(cert.det(), 4 * 5 * (dp.numerator + dp.denominator));
    }

    #[test]
    fn base_det_values_match_closed_forms() {
        for (src, n_t, d_t) in [("-1", 1, 1), ("[-3]", 3, 1)] {
            let cert = certify_base(&parse_expr(src).unwrap()).unwrap();
            match cert {
                QaCertificate::Smooth { det, .. } => {
                    assert_eq!(det.0, BigInt::from(4 * (n_t + d_t)));
                    assert_eq!(det.1, BigInt::from(4 * n_t + 3 * d_t));
                    assert_eq!(det.2, BigInt::from(d_t));
                }
                _ => panic!(),
            }
        }
    }

    #[test]
    fn corrupted_certificates_are_caught() {
        let cert = certify_family(&parse_expr("-1").unwrap(), 1, 1).unwrap();
        let mut bad = cert.clone();
        if let QaCertificate::Smooth { det, .. } = &mut bad {
            det.1 += 1;
        }
        let violations = check_certificate(&bad);
        assert!(!violations.is_empty());

        // A leaf whose diagram is split.
        let split = closure(&synth("0"), Closure::Numerator);
        let forged = QaCertificate::Leaf {
            diagram: split,
            reason: LeafReason::AlternatingBase { witness: 0, det: BigInt::one() },
        };
        assert!(!check_certificate(&forged).is_empty());
    }

    #[test]
    fn identity_extension_is_noop() {
        let cert = certify_base(&parse_expr("-1").unwrap()).unwrap();
        let ext = extend_by_rational(&cert, 0, &Fraction::new(-1, 1).unwrap()).unwrap();
        assert!(ext.diagram().same_diagram(cert.diagram()));
    }

    #[test]
    fn extension_by_column() {
        // Extending the -1/2 column's top crossing by -1/2 gives the -1/3
        // family diagram; dets recomputed.
        let cert = certify_base(&parse_expr("-1").unwrap()).unwrap();
        let ext = extend_by_rational(&cert, 0, &Fraction::new(-1, 2).unwrap()).unwrap();
        assert_eq!(ext.det(), BigInt::from(16));
        assert!(check_certificate(&ext).is_empty());
    }

    #[test]
    fn json_round_trip() {
        let cert = certify_family(&parse_expr("-1").unwrap(), 2, 3).unwrap();
        let v = cert.to_json();
        let back = QaCertificate::from_json(&v).unwrap();
        assert!(check_certificate(&back).is_empty());
        assert_eq!(back.det(), cert.det());
    }
}
