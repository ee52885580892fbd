//! Montesinos normal forms: `M(e; t_1,...,t_n) = N(e + 1/t_1 + ... + 1/t_n)`
//! with its reduction to `M(eps; t^_1,...,t^_n)`, the augmented form of the
//! encircled rational family, and conservative equality of reduced forms.

use crate::diagram::{closure, synthesize, Closure, PlanarDiagram};
use crate::expr::TangleExpr;
use crate::fraction::{to_continued_fraction, Fraction, FractionError};
use crate::invariants::{det_pair_diagram, determinant, InvariantError};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MontesinosError {
    #[error("tail {0} is not admissible (need t not in {{0, 1, -1}})")]
    BadTail(Fraction),
    #[error("hat undefined for {0}: 1/t is an integer")]
    HatUndefined(Fraction),
    #[error(transparent)]
    Fraction(#[from] FractionError),
    #[error("{0}")]
    Invariant(String),
    #[error("identity violation: {0}")]
    IdentityViolation(String),
}

impl From<InvariantError> for MontesinosError {
    fn from(e: InvariantError) -> Self {
        MontesinosError::Invariant(e.to_string())
    }
}

/// `M(e; t_1, ..., t_n)` with every `|t_i| != 0, 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MontesinosForm {
    pub e: BigInt,
    pub tails: Vec<Fraction>,
}

impl MontesinosForm {
    pub fn new(e: impl Into<BigInt>, tails: Vec<Fraction>) -> Result<Self, MontesinosError> {
        for t in &tails {
            let bad = t.is_zero()
                || t.is_infinite()
                || (t.denominator().is_one() && t.numerator().magnitude() == BigInt::one().magnitude());
            if bad {
                return Err(MontesinosError::BadTail(t.clone()));
            }
        }
        Ok(MontesinosForm { e: e.into(), tails })
    }

    /// The numerator-closure expression `N(e + 1/t_1 + ... + 1/t_n)`.
    pub fn expr(&self) -> Result<TangleExpr, MontesinosError> {
        use num_traits::ToPrimitive;
        let e = self
            .e
            .to_i64()
            .ok_or_else(|| MontesinosError::Invariant("coefficient e too large".into()))?;
        let mut acc = TangleExpr::Integer(e);
        for t in &self.tails {
            let cf = to_continued_fraction(&t.recip())?;
            acc = TangleExpr::sum(acc, TangleExpr::Rational(cf));
        }
        Ok(acc)
    }

    pub fn diagram(&self) -> Result<PlanarDiagram, MontesinosError> {
        let t = synthesize(&self.expr()?)
            .map_err(|e| MontesinosError::Invariant(e.to_string()))?;
        Ok(closure(&t, Closure::Numerator))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "e": self.e.to_string(),
            "tails": self.tails.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for MontesinosForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M({};", self.e)?;
        for (i, t) in self.tails.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

/// `hat(t) = 1 / frac(1/t)`, always `> 1`; undefined when `1/t` is an
/// integer (`t = 1/n`) or `t = 1`.
pub fn hat(t: &Fraction) -> Result<Fraction, MontesinosError> {
    if t.is_infinite() || t.is_zero() {
        return Err(MontesinosError::HatUndefined(t.clone()));
    }
    let fp = t.recip().frac_part()?;
    if fp.is_zero() {
        return Err(MontesinosError::HatUndefined(t.clone()));
    }
    Ok(fp.recip())
}

/// `(a/b)^f = a/(b-a)` for positive fractions, `a/(b+a)` for negative.
pub fn flipf(t: &Fraction) -> Result<Fraction, MontesinosError> {
    if t.is_infinite() || t.is_zero() {
        return Err(MontesinosError::HatUndefined(t.clone()));
    }
    let a = t.numerator().clone();
    let b = t.denominator().clone();
    use num_traits::Signed;
    let den = if a.is_positive() { b - &a } else { b + &a };
    Ok(Fraction::new(a, den)?)
}

/// `eps(L) = e + sum floor(1/t_i)`; the reduced form replaces every tail
/// by its hat. Idempotent.
pub fn reduced_form(m: &MontesinosForm) -> Result<MontesinosForm, MontesinosError> {
    let mut eps = m.e.clone();
    let mut tails = Vec::with_capacity(m.tails.len());
    for t in &m.tails {
        eps += t.recip().floor()?;
        tails.push(hat(t)?);
    }
    MontesinosForm::new(eps, tails)
}

/// The Montesinos form of the augmented family link for a rational tangle
/// `-a/b` (`a, b > 0` coprime): `M(0; -2, 2, (2a+b)/(a+b))`.
/// Cross-checked: the determinant of a synthesized diagram of this
/// Montesinos link equals `4(N_T + D_T) = 4(a+b)` for `T = -a/b`.
pub fn augmented_form(a: u32, b: u32) -> Result<MontesinosForm, MontesinosError> {
    if a == 0 || b == 0 || num_integer::gcd(a, b) != 1 {
        return Err(MontesinosError::Invariant(format!("need coprime positive a, b; got {a}, {b}")));
    }
    let (a, b) = (a as i64, b as i64);
    let form = MontesinosForm::new(
        0,
        vec![
            Fraction::integer(-2),
            Fraction::integer(2),
            Fraction::new(2 * a + b, a + b)?,
        ],
    )?;
    let det = determinant(&form.diagram()?)?;
    let tangle = synthesize(&TangleExpr::from_fraction(&Fraction::new(-a, b)?).unwrap())
        .map_err(|e| MontesinosError::Invariant(e.to_string()))?;
    let dp = det_pair_diagram(&tangle)?;
    let expect = 4 * (&dp.numerator + &dp.denominator);
    if det != expect {
        return Err(MontesinosError::IdentityViolation(format!(
            "augmented form {form} has determinant {det}, family value is {expect}"
        )));
    }
    Ok(form)
}

/// Conservative equality: reduced forms agree up to permutation of tails.
/// `false` does not prove the links inequivalent.
pub fn same_reduced(a: &MontesinosForm, b: &MontesinosForm) -> Result<bool, MontesinosError> {
    let ra = reduced_form(a)?;
    let rb = reduced_form(b)?;
    if ra.e != rb.e || ra.tails.len() != rb.tails.len() {
        return Ok(false);
    }
    let key = |f: &Fraction| (f.numerator().clone(), f.denominator().clone());
    let mut ta: Vec<_> = ra.tails.iter().map(key).collect();
    let mut tb: Vec<_> = rb.tails.iter().map(key).collect();
    ta.sort();
    tb.sort();
    Ok(ta == tb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    #[test]
    fn helper_examples() {
        assert_eq!(f(7, 3).floor().unwrap(), BigInt::from(2));
        assert_eq!(f(7, 3).frac_part().unwrap(), f(1, 3));
        assert_eq!(hat(&f(-2, 1)).unwrap(), f(2, 1));
        assert_eq!(flipf(&f(3, 2)).unwrap(), f(-3, 1));
        assert_eq!(flipf(&f(-3, 2)).unwrap(), f(-3, 1).neg());
        assert!(hat(&f(1, 2)).is_err());
        assert!(hat(&f(1, 1)).is_err());
    }

    #[test]
    fn reduction_examples() {
        let m = MontesinosForm::new(0, vec![f(-2, 1), f(2, 1), f(3, 2)]).unwrap();
        let r = reduced_form(&m).unwrap();
        assert_eq!(r.e, BigInt::from(-1));
        assert_eq!(r.tails, vec![f(2, 1), f(2, 1), f(3, 2)]);

        let m = MontesinosForm::new(0, vec![f(2, 1), f(2, 1)]).unwrap();
        assert_eq!(reduced_form(&m).unwrap(), m);
    }

    #[test]
    fn reduction_is_idempotent_and_hats_exceed_one() {
        let mut k = 0i64;
        for p in -11i64..=11 {
            for q in 1i64..=9 {
                if p == 0 || num_integer::gcd(p, q) != 1 || (q == 1 && p.abs() == 1) {
                    continue;
                }
                k += 1;
                let m = MontesinosForm::new(k % 5 - 2, vec![f(p, q), f(5, 2)]).unwrap();
                let Ok(r) = reduced_form(&m) else { continue };
                for t in &r.tails {
                    assert_eq!(t.cmp_finite(&f(1, 1)).unwrap(), std::cmp::Ordering::Greater);
                }
                assert_eq!(reduced_form(&r).unwrap(), r, "idempotent on {m}");
            }
        }
        assert!(k > 100);
    }

    #[test]
    fn augmented_form_examples() {
        let m = augmented_form(1, 1).unwrap();
        assert_eq!(m.tails, vec![f(-2, 1), f(2, 1), f(3, 2)]);
        let m = augmented_form(2, 1).unwrap();
        assert_eq!(m.tails, vec![f(-2, 1), f(2, 1), f(5, 3)]);
        // Determinant cross-check runs inside augmented_form; the (1,1)
        // case carries determinant 8.
        assert_eq!(determinant(&m.diagram().unwrap()).unwrap(), BigInt::from(12));
    }

    #[test]
    fn augmented_form_cross_check_range() {
        for a in 1..=12u32 {
            for b in 1..=12u32 {
                if num_integer::gcd(a, b) == 1 {
                    augmented_form(a, b).unwrap();
                }
            }
        }
    }

    #[test]
    fn same_reduced_examples() {
        let a = MontesinosForm::new(0, vec![f(-2, 1), f(2, 1), f(3, 2)]).unwrap();
        let b = MontesinosForm::new(-1, vec![f(2, 1), f(2, 1), f(3, 2)]).unwrap();
        assert!(same_reduced(&a, &b).unwrap());
        let c = MontesinosForm::new(0, vec![f(2, 1), f(3, 1)]).unwrap();
        let d = MontesinosForm::new(0, vec![f(2, 1), f(2, 1)]).unwrap();
        assert!(!same_reduced(&c, &d).unwrap());
        let e = MontesinosForm::new(-1, vec![f(3, 2), f(2, 1), f(2, 1)]).unwrap();
        assert!(same_reduced(&b, &e).unwrap());
    }
}
