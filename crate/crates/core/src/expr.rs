//! Tangle expression trees, Conway fraction rules, and the ASCII grammar.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term { '+' term }
//! term    := factor { '*' factor }
//! factor  := '-' factor | atom
//! atom    := INT | INT '/' factor | '[' INT {',' INT} ']' | 'inf'
//!          | 'flipH' '(' expr ')' | 'flipV' '(' expr ')'
//!          | 'rotCW' '(' expr ')' | 'rotCCW' '(' expr ')' | 'tau' '(' expr ')'
//!          | '(' expr ')'
//! ```
//!
//! `1/t` and `-1/t` denote inversion (and its mirror); `a/b` with integer
//! `b` denotes the rational tangle with fraction `a/b`.

use crate::fraction::{eval_fraction, to_continued_fraction, ContinuedFraction, Fraction};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TangleExpr {
    Integer(i64),
    Infinity,
    Rational(ContinuedFraction),
    Sum(Box<TangleExpr>, Box<TangleExpr>),
    Product(Box<TangleExpr>, Box<TangleExpr>),
    Invert(Box<TangleExpr>),
    Mirror(Box<TangleExpr>),
    FlipH(Box<TangleExpr>),
    FlipV(Box<TangleExpr>),
    RotateCw(Box<TangleExpr>),
    RotateCcw(Box<TangleExpr>),
    Encircle(Box<TangleExpr>),
}

impl TangleExpr {
    pub fn rational(terms: &[i64]) -> TangleExpr {
        TangleExpr::Rational(ContinuedFraction::from_i64(terms))
    }

    pub fn from_fraction(f: &Fraction) -> Option<TangleExpr> {
        to_continued_fraction(f).ok().map(TangleExpr::Rational)
    }

    pub fn sum(a: TangleExpr, b: TangleExpr) -> TangleExpr {
        TangleExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: TangleExpr, b: TangleExpr) -> TangleExpr {
        TangleExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn invert(t: TangleExpr) -> TangleExpr {
        TangleExpr::Invert(Box::new(t))
    }

    pub fn mirror(t: TangleExpr) -> TangleExpr {
        TangleExpr::Mirror(Box::new(t))
    }

    pub fn encircle(t: TangleExpr) -> TangleExpr {
        TangleExpr::Encircle(Box::new(t))
    }

    /// The Conway fraction, when the expression denotes a rational tangle.
    ///
    /// Recognized shapes: leaves; mirror/flip/rotation/inversion of a
    /// rational; `Sum` where one side has an integer fraction
    /// (`F(t+n) = F(t)+n`); `Product` where one side has a vertical fraction
    /// `±1/k` or `1/0` (`F(t * 1/n) = 1/(n + 1/F(t))`). Everything else,
    /// including every encircled tangle, reports `None` (not rational).
    pub fn fraction_of(&self) -> Option<Fraction> {
        use TangleExpr::*;
        match self {
            Integer(n) => Some(Fraction::integer(*n)),
            Infinity => Some(Fraction::infinity()),
            Rational(cf) => Some(eval_fraction(cf)),
            Sum(a, b) => {
                let (fa, fb) = (a.fraction_of()?, b.fraction_of()?);
                if fa.is_integer() || fb.is_integer() {
                    fa.add(&fb).ok()
                } else {
                    None
                }
            }
            Product(a, b) => {
                let (fa, fb) = (a.fraction_of()?, b.fraction_of()?);
                if fa.is_vertical() || fb.is_vertical() {
                    Some(fa.recip().add(&fb.recip()).ok()?.recip())
                } else {
                    None
                }
            }
            Invert(t) => Some(t.fraction_of()?.recip()),
            Mirror(t) => Some(t.fraction_of()?.neg()),
            FlipH(t) | FlipV(t) => t.fraction_of(),
            RotateCw(t) | RotateCcw(t) => Some(t.fraction_of()?.recip().neg()),
            Encircle(_) => None,
        }
    }
}

impl fmt::Display for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Precedence: 0 = sum, 1 = product, 2 = atom.
        fn go(e: &TangleExpr, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            use TangleExpr::*;
            match e {
                Integer(n) => write!(f, "{n}"),
                Infinity => write!(f, "inf"),
                Rational(cf) => write!(f, "{cf}"),
                Sum(a, b) => {
                    if prec > 0 {
                        write!(f, "(")?;
                    }
                    go(a, 0, f)?;
                    write!(f, " + ")?;
                    go(b, 1, f)?;
                    if prec > 0 {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
                Product(a, b) => {
                    if prec > 1 {
                        write!(f, "(")?;
                    }
                    go(a, 1, f)?;
                    write!(f, " * ")?;
                    go(b, 2, f)?;
                    if prec > 1 {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
                Invert(t) => {
                    write!(f, "1/")?;
                    go_atom(t, f)
                }
                Mirror(t) => {
                    write!(f, "-")?;
                    go_atom(t, f)
                }
                FlipH(t) => call("flipH", t, f),
                FlipV(t) => call("flipV", t, f),
                RotateCw(t) => call("rotCW", t, f),
                RotateCcw(t) => call("rotCCW", t, f),
                Encircle(t) => call("tau", t, f),
            }
        }
        fn go_atom(e: &TangleExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                TangleExpr::Sum(..) | TangleExpr::Product(..) | TangleExpr::Mirror(..) | TangleExpr::Invert(..) => {
                    write!(f, "(")?;
                    go(e, 0, f)?;
                    write!(f, ")")
                }
                _ => go(e, 2, f),
            }
        }
        fn call(name: &str, t: &TangleExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{name}(")?;
            go(t, 0, f)?;
            write!(f, ")")
        }
        go(self, 0, f)
    }
}

impl fmt::Debug for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Which closure a closed expression takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureKind {
    Numerator,
    Denominator,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| ParseError { pos: start, msg: "integer out of range".into() })
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
        }
    }

    fn expr(&mut self) -> Result<TangleExpr, ParseError> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            let rhs = self.term()?;
            acc = TangleExpr::sum(acc, rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TangleExpr, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let rhs = self.factor()?;
            acc = TangleExpr::product(acc, rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<TangleExpr, ParseError> {
        match self.peek() {
            Some(b'-') if !self.next_is_number() => {
                self.bump();
                Ok(TangleExpr::mirror(self.factor()?))
            }
            _ => self.atom(),
        }
    }

    fn next_is_number(&mut self) -> bool {
        self.skip_ws();
        matches!(self.src.get(self.pos), Some(b'-'))
            && self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit())
    }

    fn atom(&mut self) -> Result<TangleExpr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                self.bump();
                let mut terms = vec![self.int()?];
                while self.eat(b',') {
                    terms.push(self.int()?);
                }
                self.expect(b']')?;
                Ok(TangleExpr::rational(&terms))
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let n = self.int()?;
                if self.eat(b'/') {
                    self.slash_tail(n)
                } else {
                    Ok(TangleExpr::Integer(n))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let pos = self.pos;
                let name = self.ident().unwrap();
                match name.as_str() {
                    "inf" => Ok(TangleExpr::Infinity),
                    "flipH" | "flipV" | "rotCW" | "rotCCW" | "tau" => {
                        self.expect(b'(')?;
                        let inner = self.expr()?;
                        self.expect(b')')?;
                        Ok(match name.as_str() {
                            "flipH" => TangleExpr::FlipH(Box::new(inner)),
                            "flipV" => TangleExpr::FlipV(Box::new(inner)),
                            "rotCW" => TangleExpr::RotateCw(Box::new(inner)),
                            "rotCCW" => TangleExpr::RotateCcw(Box::new(inner)),
                            _ => TangleExpr::encircle(inner),
                        })
                    }
                    other => Err(ParseError { pos, msg: format!("unknown operator name '{other}'") }),
                }
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    // `n / <factor>`: a rational leaf when the factor is an integer,
    // inversion (up to mirror) when n is +-1.
    fn slash_tail(&mut self, n: i64) -> Result<TangleExpr, ParseError> {
        let pos = self.pos;
        let denom = self.atom()?;
        if let TangleExpr::Integer(m) = denom {
            let f = Fraction::new(n, m).map_err(|e| ParseError { pos, msg: e.to_string() })?;
            if f.is_infinite() {
                return Ok(TangleExpr::Infinity);
            }
            return Ok(TangleExpr::Rational(
                to_continued_fraction(&f).expect("finite fraction expands"),
            ));
        }
        match n {
            1 => Ok(TangleExpr::invert(denom)),
            -1 => Ok(TangleExpr::mirror(TangleExpr::invert(denom))),
            _ => Err(ParseError { pos, msg: "only 1/t or -1/t may invert a non-integer".into() }),
        }
    }
}

/// Parse a tangle expression per the module grammar.
pub fn parse_expr(text: &str) -> Result<TangleExpr, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse an optionally closure-wrapped expression: `N(t)`, `D(t)`, or bare `t`.
pub fn parse_closed_expr(text: &str) -> Result<(TangleExpr, Option<ClosureKind>), ParseError> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    for (prefix, kind) in [("N(", ClosureKind::Numerator), ("D(", ClosureKind::Denominator)] {
        if let Some(rest) = trimmed.strip_prefix(prefix) {
            let rest = rest.trim_end();
            let Some(inner) = rest.strip_suffix(')') else {
                return Err(ParseError { pos: text.len(), msg: "expected ')'".into() });
            };
            let e = parse_expr(inner).map_err(|mut err| {
                err.pos += offset + prefix.len();
                err
            })?;
            return Ok((e, Some(kind)));
        }
    }
    Ok((parse_expr(text)?, None))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_expr("[2,3,4]").unwrap(), TangleExpr::rational(&[2, 3, 4]));
        assert_eq!(
            parse_expr("tau(-3)").unwrap(),
            TangleExpr::encircle(TangleExpr::Integer(-3))
        );
        assert_eq!(
            parse_expr("1/([1,2] + 2)").unwrap(),
            TangleExpr::invert(TangleExpr::sum(TangleExpr::rational(&[1, 2]), TangleExpr::Integer(2)))
        );
    }

    #[test]
    fn parse_fraction_leaf() {
        // 2/3 = [0,1,2]
        assert_eq!(parse_expr("2/3").unwrap().fraction_of().unwrap(), f(2, 3));
        assert_eq!(parse_expr("-2/3").unwrap().fraction_of().unwrap(), f(-2, 3));
        assert_eq!(parse_expr("1/0").unwrap(), TangleExpr::Infinity);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_expr("[2,3,").unwrap_err();
        assert_eq!(err.pos, 5);
        let err = parse_expr("spin(2)").unwrap_err();
        assert!(err.msg.contains("unknown operator"));
    }

    #[test]
    fn closed_wrappers() {
        let (e, k) = parse_closed_expr("D([0,3])").unwrap();
        assert_eq!(k, Some(ClosureKind::Denominator));
        assert_eq!(e, TangleExpr::rational(&[0, 3]));
        let (_, k) = parse_closed_expr(" tau(-1) ").unwrap();
        assert_eq!(k, None);
    }

    #[test]
    fn printer_round_trips() {
        for src in [
            "[2,3,4]",
            "tau(-1)",
            "1/([1,2] + 2)",
            "-3 + [1,2] * [0,2]",
            "flipH(rotCCW([2,3,4]))",
            "([1,2] + [1,2]) * [0,-2]",
            "inf + 2",
        ] {
            let e = parse_expr(src).unwrap();
            let printed = e.to_string();
            assert_eq!(parse_expr(&printed).unwrap(), e, "printing {src} as {printed}");
        }
    }

    #[test]
    fn fraction_rules() {
        let t234 = TangleExpr::rational(&[2, 3, 4]);
        assert_eq!(TangleExpr::invert(t234.clone()).fraction_of().unwrap(), f(13, 30));
        assert_eq!(
            TangleExpr::sum(t234.clone(), TangleExpr::Integer(1)).fraction_of().unwrap(),
            f(43, 13)
        );
        let t12 = TangleExpr::rational(&[1, 2]);
        assert_eq!(TangleExpr::sum(t12.clone(), t12.clone()).fraction_of(), None);
        assert_eq!(TangleExpr::mirror(t234.clone()).fraction_of().unwrap(), f(-30, 13));
        assert_eq!(TangleExpr::FlipH(Box::new(t234.clone())).fraction_of().unwrap(), f(30, 13));
        assert_eq!(
            TangleExpr::RotateCw(Box::new(t234.clone())).fraction_of().unwrap(),
            f(-13, 30)
        );
        assert_eq!(TangleExpr::encircle(TangleExpr::Integer(-1)).fraction_of(), None);
        // t * 1/p = 1/(p + 1/t)
        let prod = TangleExpr::product(t234.clone(), TangleExpr::rational(&[0, 2]));
        assert_eq!(prod.fraction_of().unwrap(), f(30, 73));
        // inf * t = t, 0 + t = t
        assert_eq!(
            TangleExpr::product(TangleExpr::Infinity, t234.clone()).fraction_of().unwrap(),
            f(30, 13)
        );
        assert_eq!(
            TangleExpr::sum(TangleExpr::Infinity, TangleExpr::Integer(2)).fraction_of().unwrap(),
            Fraction::infinity()
        );
    }
}
