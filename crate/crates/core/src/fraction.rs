//! Exact projective rationals and canonical continued fractions.
//!
//! A [`Fraction`] is a reduced pair `num/den` with `den >= 0`. The value
//! `1/0` (written `inf`) is allowed; `0/0` is not constructible. All
//! arithmetic is exact over big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FractionError {
    #[error("0/0 is not a fraction")]
    ZeroOverZero,
    #[error("operation undefined on the infinite fraction")]
    InfiniteOperand,
    #[error("no finite continued fraction expansion exists for 1/0")]
    NoExpansion,
    #[error("value outside the operation's domain: {0}")]
    Domain(String),
}

/// A reduced fraction `num/den`, `den >= 0`, with `1/0` permitted.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    num: BigInt,
    den: BigInt,
}

impl Fraction {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, FractionError> {
        let (mut num, mut den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(FractionError::ZeroOverZero);
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if den.is_zero() {
            return Ok(Fraction { num: BigInt::one(), den });
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Ok(Fraction { num, den })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Fraction { num: n.into(), den: BigInt::one() }
    }

    pub fn zero() -> Self {
        Fraction::integer(0)
    }

    pub fn infinity() -> Self {
        Fraction { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// `p/q` with `|p| = 1`, plus `1/0`: the fractions of vertical tangles.
    pub fn is_vertical(&self) -> bool {
        self.is_infinite() || self.num.abs().is_one()
    }

    pub fn neg(&self) -> Fraction {
        Fraction::new(-&self.num, self.den.clone()).expect("negation preserves validity")
    }

    /// Projective reciprocal: `1/(p/q) = q/p`; `1/0 -> 0`, `0 -> 1/0`.
    pub fn recip(&self) -> Fraction {
        Fraction::new(self.den.clone(), self.num.clone()).expect("recip of a valid fraction")
    }

    /// Projective addition. Errors only on `inf + inf`.
    pub fn add(&self, other: &Fraction) -> Result<Fraction, FractionError> {
        if self.is_infinite() && other.is_infinite() {
            return Err(FractionError::InfiniteOperand);
        }
        Fraction::new(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Fraction) -> Result<Fraction, FractionError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Fraction) -> Result<Fraction, FractionError> {
        Fraction::new(&self.num * &other.num, &self.den * &other.den)
    }

    /// Floor of a finite fraction.
    pub fn floor(&self) -> Result<BigInt, FractionError> {
        if self.is_infinite() {
            return Err(FractionError::InfiniteOperand);
        }
        Ok(self.num.div_floor(&self.den))
    }

    /// Fractional part `t - floor(t)` of a finite fraction, in `[0, 1)`.
    pub fn frac_part(&self) -> Result<Fraction, FractionError> {
        let f = self.floor()?;
        self.sub(&Fraction::integer(f))
    }

    /// Exact comparison; defined for finite fractions only.
    pub fn cmp_finite(&self, other: &Fraction) -> Result<std::cmp::Ordering, FractionError> {
        if self.is_infinite() || other.is_infinite() {
            return Err(FractionError::InfiniteOperand);
        }
        Ok((&self.num * &other.den).cmp(&(&other.num * &self.den)))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A continued fraction `[a_1, ..., a_n]`, evaluated as
/// `a_1 + 1/(a_2 + 1/(... + 1/a_n))`.
///
/// Canonical form: all nonzero terms share one sign and `a_i != 0` for
/// `i >= 2` (`a_1` may be zero). [`to_continued_fraction`] always produces
/// the canonical Euclidean expansion.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContinuedFraction {
    terms: Vec<BigInt>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<BigInt>) -> Result<Self, FractionError> {
        if terms.is_empty() {
            return Err(FractionError::Domain("continued fraction needs at least one term".into()));
        }
        Ok(ContinuedFraction { terms })
    }

    pub fn from_i64(terms: &[i64]) -> Self {
        ContinuedFraction { terms: terms.iter().map(|&t| BigInt::from(t)).collect() }
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All nonzero terms share one sign and terms beyond the first are nonzero.
    pub fn is_canonical(&self) -> bool {
        if self.terms[1..].iter().any(|t| t.is_zero()) {
            return false;
        }
        let has_pos = self.terms.iter().any(|t| t.is_positive());
        let has_neg = self.terms.iter().any(|t| t.is_negative());
        !(has_pos && has_neg)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Evaluate a continued fraction exactly, deepest term innermost.
///
/// Intermediate zero denominators are handled projectively, so inputs like
/// `[2,0,3]` evaluate without error; only the final value may be `1/0`.
pub fn eval_fraction(cf: &ContinuedFraction) -> Fraction {
    let mut num = cf.terms[cf.len() - 1].clone();
    let mut den = BigInt::one();
    for a in cf.terms[..cf.len() - 1].iter().rev() {
        // a + 1/(num/den) = (a*num + den) / num
        let new_num = a * &num + &den;
        den = std::mem::replace(&mut num, new_num);
    }
    Fraction::new(num, den).expect("projective evaluation cannot reach 0/0")
}

/// Canonical same-sign expansion of a finite fraction by the Euclidean
/// algorithm; round-trips through [`eval_fraction`].
pub fn to_continued_fraction(f: &Fraction) -> Result<ContinuedFraction, FractionError> {
    if f.is_infinite() {
        return Err(FractionError::NoExpansion);
    }
    let negate = f.numerator().is_negative();
    let mut p = f.numerator().abs();
    let mut q = f.denominator().clone();
    let mut terms = Vec::new();
    loop {
        let (a, r) = p.div_rem(&q);
        terms.push(if negate { -&a } else { a });
        if r.is_zero() {
            break;
        }
        p = q;
        q = r;
    }
    ContinuedFraction::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cf(terms: &[i64]) -> ContinuedFraction {
        ContinuedFraction::from_i64(terms)
    }

    fn frac(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    #[test]
    fn eval_single_term() {
        assert_eq!(eval_fraction(&cf(&[2])), frac(2, 1));
    }

    #[test]
    fn eval_nested() {
        // 2 + 1/(3 + 1/4) = 30/13
        assert_eq!(eval_fraction(&cf(&[2, 3, 4])), frac(30, 13));
        assert_eq!(eval_fraction(&cf(&[-2, -3, -4])), frac(-30, 13));
    }

    #[test]
    fn eval_projective_interior_zero() {
        // 2 + 1/(0 + 1/3) = 5
        assert_eq!(eval_fraction(&cf(&[2, 0, 3])), frac(5, 1));
        assert_eq!(eval_fraction(&cf(&[0, 0])), Fraction::infinity());
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(to_continued_fraction(&frac(30, 13)).unwrap(), cf(&[2, 3, 4]));
        assert_eq!(to_continued_fraction(&frac(3, 1)).unwrap(), cf(&[3]));
        assert_eq!(to_continued_fraction(&frac(-30, 13)).unwrap(), cf(&[-2, -3, -4]));
        assert_eq!(to_continued_fraction(&frac(1, 3)).unwrap(), cf(&[0, 3]));
        assert_eq!(to_continued_fraction(&Fraction::zero()).unwrap(), cf(&[0]));
    }

    #[test]
    fn expansion_of_infinity_is_rejected() {
        assert_eq!(to_continued_fraction(&Fraction::infinity()), Err(FractionError::NoExpansion));
    }

    #[test]
    fn zero_over_zero_rejected() {
        assert_eq!(Fraction::new(0, 0), Err(FractionError::ZeroOverZero));
    }

    #[test]
    fn normalization() {
        assert_eq!(frac(4, -6), frac(-2, 3));
        assert_eq!(Fraction::new(-3, 0).unwrap(), Fraction::infinity());
    }

    proptest! {
        #[test]
        fn round_trip(p in -200i64..=200, q in 1i64..=200) {
            let f = frac(p, q);
            let e = to_continued_fraction(&f).unwrap();
            prop_assert!(e.is_canonical());
            prop_assert_eq!(eval_fraction(&e), f);
        }

        #[test]
        fn negate_all_terms_negates_value(terms in proptest::collection::vec(-9i64..=9, 1..6)) {
            let v = eval_fraction(&cf(&terms));
            let negated: Vec<i64> = terms.iter().map(|t| -t).collect();
            prop_assert_eq!(eval_fraction(&cf(&negated)), v.neg());
        }
    }
}
