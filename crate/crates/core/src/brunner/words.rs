//! Free-group words over edge and region generators, and a single-step
//! rewriting verifier for derivation chains.

use super::{GroupPresentation, Relation};
use serde_json::{json, Value};
use std::fmt;

/// A generator symbol: edge generators `W<i>`/`E<i>` and region
/// generators `R<j>` (`R0` is the unbounded region).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    W(u32),
    E(u32),
    R(u32),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::W(i) => write!(f, "W{i}"),
            Gen::E(i) => write!(f, "E{i}"),
            Gen::R(i) => write!(f, "R{i}"),
        }
    }
}

impl Gen {
    pub fn parse(s: &str) -> Option<Gen> {
        let (head, tail) = s.split_at(1);
        let n: u32 = tail.parse().ok()?;
        match head {
            "W" => Some(Gen::W(n)),
            "E" => Some(Gen::E(n)),
            "R" => Some(Gen::R(n)),
            _ => None,
        }
    }
}

/// A word: a sequence of `(generator, ±1)` letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<(Gen, i8)>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(g: Gen, e: i8) -> Word {
        debug_assert!(e == 1 || e == -1);
        Word(vec![(g, e)])
    }

    /// `g^n` for any integer n (empty when n = 0).
    pub fn power(g: Gen, n: i64) -> Word {
        let e = if n >= 0 { 1 } else { -1 };
        Word(vec![(g, e); n.unsigned_abs() as usize])
    }

    pub fn concat(words: &[&Word]) -> Word {
        let mut out = Vec::new();
        for w in words {
            out.extend_from_slice(&w.0);
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn repeat(&self, n: usize) -> Word {
        let mut out = Vec::with_capacity(self.0.len() * n);
        for _ in 0..n {
            out.extend_from_slice(&self.0);
        }
        Word(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Fully freely reduced form.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<(Gen, i8)> = Vec::with_capacity(self.0.len());
        for &(g, e) in &self.0 {
            if let Some(&(h, f)) = out.last() {
                if h == g && f == -e {
                    out.pop();
                    continue;
                }
            }
            out.push((g, e));
        }
        Word(out)
    }

    /// Is `other` this word with exactly one adjacent inverse pair removed?
    pub fn single_free_reduction(&self, other: &Word) -> bool {
        if self.len() != other.len() + 2 {
            return false;
        }
        for i in 0..self.len() - 1 {
            let (g, e) = self.0[i];
            let (h, f) = self.0[i + 1];
            if g == h && e == -f {
                let mut trimmed = self.0.clone();
                trimmed.drain(i..=i + 1);
                if trimmed == other.0 {
                    return true;
                }
            }
        }
        false
    }

    /// Is `other` this word with one adjacent transposition of the
    /// (unordered) generator pair `{a, b}`?
    pub fn single_commutation(&self, other: &Word, a: Gen, b: Gen) -> bool {
        if self.len() != other.len() {
            return false;
        }
        for i in 0..self.len().saturating_sub(1) {
            let (g, _) = self.0[i];
            let (h, _) = self.0[i + 1];
            if (g == a && h == b) || (g == b && h == a) {
                let mut swapped = self.0.clone();
                swapped.swap(i, i + 1);
                if swapped == other.0 {
                    return true;
                }
            }
        }
        false
    }

    /// Words equal up to cyclic rotation after free reduction?
    pub fn cyclically_equal(&self, other: &Word) -> bool {
        let a = self.reduced().0;
        let b = other.reduced().0;
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        (0..a.len()).any(|k| a.iter().cycle().skip(k).take(a.len()).eq(b.iter()))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.0
                .iter()
                .map(|(g, e)| json!([g.to_string(), *e as i64]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Option<Word> {
        let arr = v.as_array()?;
        let mut out = Vec::with_capacity(arr.len());
        for item in arr {
            let pair = item.as_array()?;
            let g = Gen::parse(pair.first()?.as_str()?)?;
            let e = pair.get(1)?.as_i64()?;
            if e != 1 && e != -1 {
                return None;
            }
            out.push((g, e as i8));
        }
        Some(Word(out))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // Collapse runs of equal letters into powers for readability.
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let (g, e) = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == (g, e) {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = e as i64 * run as i64;
            if exp == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Justification of one rewriting step.
#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    /// Apply relation `index` of the presentation (replace one side by the
    /// other, or a cyclic relator application for cycle relations).
    Relation(usize),
    /// Swap two adjacent letters of a licensed commuting pair.
    Commute(Gen, Gen),
    /// Remove one adjacent inverse pair.
    FreeReduce,
}

#[derive(Debug, Clone)]
pub struct ChainStep {
    pub to: Word,
    pub just: Step,
}

/// A derivation: `start` rewritten one step at a time.
#[derive(Debug, Clone)]
pub struct Chain {
    pub start: Word,
    pub steps: Vec<ChainStep>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChainVerdict {
    Valid,
    /// First failing step (0-based), with a description.
    Failed { step: usize, reason: String },
}

/// The two-sided rewrites a relation licenses.
fn relation_sides(rel: &Relation) -> Option<(Word, Word)> {
    match rel {
        Relation::LocalEdge { w, w_exp, left, right, exp } => {
            let u = Word::power(*w, *w_exp);
            let v = region_pair_power(*left, *right, *exp);
            Some((u, v))
        }
        Relation::LocalCoarse { .. } => None,
        Relation::GlobalCycle { word } => Some((word.clone(), Word::empty())),
        Relation::Vanishing { region } => Some((Word::letter(Gen::R(*region), 1), Word::empty())),
    }
}

/// `(R_left^{-1} R_right)^exp`, with the unbounded region `R0` elided.
pub(super) fn region_pair_power(left: u32, right: u32, exp: i64) -> Word {
    let mut unit = Vec::new();
    if left != 0 {
        unit.push((Gen::R(left), -1i8));
    }
    if right != 0 {
        unit.push((Gen::R(right), 1i8));
    }
    let unit = Word(unit);
    let w = unit.repeat(exp.unsigned_abs() as usize);
    if exp >= 0 {
        w
    } else {
        w.inverse()
    }
}

/// Does some split `from = X·U·Y`, `to = X·V·Y` rewrite by `(U, V)` (in
/// either direction, or inverted)?
fn pair_rewrites(from: &Word, to: &Word, u: &Word, v: &Word) -> bool {
    let candidates = [
        (u.clone(), v.clone()),
        (v.clone(), u.clone()),
        (u.inverse(), v.inverse()),
        (v.inverse(), u.inverse()),
    ];
    for (a, b) in candidates {
        if from.len() + b.len() != to.len() + a.len() {
            continue;
        }
        for i in 0..=from.len().saturating_sub(a.len()) {
            if from.0[i..i + a.len()] == a.0[..] {
                let mut rewritten = Vec::with_capacity(to.len());
                rewritten.extend_from_slice(&from.0[..i]);
                rewritten.extend_from_slice(&b.0);
                rewritten.extend_from_slice(&from.0[i + a.len()..]);
                if rewritten == to.0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Cyclic relator application: `from = X·U·Y -> to = X·V·Y` is licensed by
/// a cycle word `C = 1` when `U·V^{-1}` is freely-cyclically `C` or `C^{-1}`.
fn cycle_rewrites(from: &Word, to: &Word, cycle: &Word) -> bool {
    for prefix in 0..=from.len() {
        if prefix > to.len() || from.0[..prefix] != to.0[..prefix] {
            // Prefixes grow monotonically; once they stop matching, stop.
            break;
        }
        let max_suffix = (from.len() - prefix).min(to.len() - prefix);
        for suffix in 0..=max_suffix {
            if from.0[from.len() - suffix..] != to.0[to.len() - suffix..] {
                continue;
            }
            let u = Word(from.0[prefix..from.len() - suffix].to_vec());
            let v = Word(to.0[prefix..to.len() - suffix].to_vec());
            let diff = Word::concat(&[&u, &v.inverse()]);
            if diff.cyclically_equal(cycle) || diff.cyclically_equal(&cycle.inverse()) {
                return true;
            }
        }
    }
    false
}

/// Commutations the presentation licenses: each local relation whose left
/// region is unbounded makes its edge generator commute with the right
/// region generator.
pub fn licensed_commutations(pres: &GroupPresentation) -> Vec<(Gen, Gen)> {
    let mut out = Vec::new();
    for rel in &pres.relations {
        let (w, left, right) = match rel {
            Relation::LocalEdge { w, left, right, .. } => (*w, *left, *right),
            Relation::LocalCoarse { w, left, right, .. } => (*w, *left, *right),
            _ => continue,
        };
        if left == 0 && right != 0 {
            out.push((w, Gen::R(right)));
        }
    }
    out
}

/// Validate a chain step by step; each step must be a single substitution,
/// licensed commutation, or free reduction.
pub fn rewrite_verify(pres: &GroupPresentation, chain: &Chain) -> ChainVerdict {
    let licenses = licensed_commutations(pres);
    let mut current = chain.start.clone();
    for (idx, step) in chain.steps.iter().enumerate() {
        let ok = match &step.just {
            Step::FreeReduce => current.single_free_reduction(&step.to),
            Step::Commute(a, b) => {
                licenses.iter().any(|&(x, y)| {
                    (x == *a && y == *b) || (x == *b && y == *a)
                }) && current.single_commutation(&step.to, *a, *b)
            }
            Step::Relation(r) => match pres.relations.get(*r) {
                None => false,
                Some(rel @ Relation::GlobalCycle { word }) => {
                    let direct = relation_sides(rel)
                        .map(|(u, v)| pair_rewrites(&current, &step.to, &u, &v))
                        .unwrap_or(false);
                    direct || cycle_rewrites(&current, &step.to, word)
                }
                Some(rel) => relation_sides(rel)
                    .map(|(u, v)| pair_rewrites(&current, &step.to, &u, &v))
                    .unwrap_or(false),
            },
        };
        if !ok {
            return ChainVerdict::Failed {
                step: idx,
                reason: format!(
                    "step {idx} ({:?}) does not carry \"{current}\" to \"{}\"",
                    step.just, step.to
                ),
            };
        }
        current = step.to.clone();
    }
    ChainVerdict::Valid
}

/// The bundled derivation carrying
/// `(R3 R1^-1 R2)^{p+q} = (R1 W1^-1)^{p+q}` to
/// `R3 W1^{q-1} R2 = W1^{-q}` inside the coarse family presentation,
/// expressed on difference words and validated step by step by
/// [`rewrite_verify`]. Uses only the presentation's relations, the
/// licensed commutation of `W1` with `R1`, and free reductions.
pub fn family_rewrite_chain(p: i64, q: i64) -> Chain {
    assert!(p >= 1 && q >= 1);
    let k = (p + q) as usize;
    let (w1, r1, r2, r3) = (Gen::W(1), Gen::R(1), Gen::R(2), Gen::R(3));
    let (w4, w5) = (Gen::W(4), Gen::W(5));
    let triple = Word(vec![(r3, 1), (r1, -1), (r2, 1)]); // R3 R1^-1 R2
    let tail_unit = Word(vec![(w1, 1), (r1, -1)]); // W1 R1^-1
    let start = Word::concat(&[&triple.repeat(k), &tail_unit.repeat(k)]);

    let mut steps: Vec<ChainStep> = Vec::new();
    let mut cur = start.clone();
    let mut push = |cur: &mut Word, to: Word, just: Step| {
        steps.push(ChainStep { to: to.clone(), just });
        *cur = to;
    };

    // Merge the leading triples one at a time: after round i the prefix is
    // R3 R1^-i W1^{i-1} R2.
    for i in 1..k {
        // prefix R3 R1^-i W1^{i-1} | R2 R3 | R1^-1 R2 | rest
        let base = 1 + i + (i - 1);
        let mut w = cur.0.clone();
        w[base] = (w4, 1); // R2 -> W4
        push(&mut cur, Word(w), Step::Relation(3));
        let mut w = cur.0.clone();
        w[base + 1] = (w5, 1); // R3 -> W5
        push(&mut cur, Word(w), Step::Relation(4));
        let mut w = cur.0.clone();
        w.splice(base..=base + 1, [(w1, 1)]); // W4 W5 -> W1 via a cycle
        push(&mut cur, Word(w), Step::Relation(7));
        // Move the following R1^-1 left across the W1 block (it sits just
        // after the W1^i run ending at index base).
        for j in 0..i {
            let pos = base + 1 - j;
            let mut w = cur.0.clone();
            w.swap(pos - 1, pos);
            push(&mut cur, Word(w), Step::Commute(w1, r1));
        }
    }
    // Sort the tail (W1 R1^-1)^k into W1^k R1^-k.
    loop {
        let tail_start = cur.len() - 2 * k;
        let Some(pos) = (tail_start..cur.len() - 1)
            .find(|&i| cur.0[i] == (r1, -1) && cur.0[i + 1] == (w1, 1))
        else {
            break;
        };
        let mut w = cur.0.clone();
        w.swap(pos, pos + 1);
        push(&mut cur, Word(w), Step::Commute(w1, r1));
    }
    // Tail R1^-k -> W1^-p, then cancel.
    let mut w = cur.0.clone();
    w.splice(cur.len() - k.., vec![(w1, -1); p as usize]);
    push(&mut cur, Word(w), Step::Relation(0));
    for _ in 0..p {
        let boundary = cur.0.iter().position(|&l| l == (w1, -1)).expect("cancelling pair");
        let mut w = cur.0.clone();
        w.drain(boundary - 1..=boundary);
        push(&mut cur, Word(w), Step::FreeReduce);
    }
    // Prefix R1^-k -> W1^-p, then cancel into the final form.
    let mut w = cur.0.clone();
    w.splice(1..1 + k, vec![(w1, -1); p as usize]);
    push(&mut cur, Word(w), Step::Relation(0));
    for _ in 0..p {
        let boundary = (1..cur.len() - 1)
            .find(|&i| cur.0[i] == (w1, -1) && cur.0[i + 1] == (w1, 1))
            .expect("cancelling pair");
        let mut w = cur.0.clone();
        w.drain(boundary..=boundary + 1);
        push(&mut cur, Word(w), Step::FreeReduce);
    }
    debug_assert_eq!(
        cur,
        Word::concat(&[
            &Word::letter(r3, 1),
            &Word::power(w1, q - 1),
            &Word::letter(r2, 1),
            &Word::power(w1, q),
        ])
    );
    Chain { start, steps }
}

impl Chain {
    pub fn to_json(&self) -> Value {
        json!({
            "start": self.start.to_json(),
            "steps": self
                .steps
                .iter()
                .map(|s| {
                    let just = match &s.just {
                        Step::Relation(i) => json!({"kind": "relation", "index": i}),
                        Step::Commute(a, b) => {
                            json!({"kind": "commute", "pair": [a.to_string(), b.to_string()]})
                        }
                        Step::FreeReduce => json!({"kind": "free-reduce"}),
                    };
                    json!({"to": s.to.to_json(), "just": just})
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Option<Chain> {
        let start = Word::from_json(v.get("start")?)?;
        let mut steps = Vec::new();
        for s in v.get("steps")?.as_array()? {
            let to = Word::from_json(s.get("to")?)?;
            let j = s.get("just")?;
            let just = match j.get("kind")?.as_str()? {
                "relation" => Step::Relation(j.get("index")?.as_u64()? as usize),
                "commute" => {
                    let pair = j.get("pair")?.as_array()?;
                    Step::Commute(
                        Gen::parse(pair.first()?.as_str()?)?,
                        Gen::parse(pair.get(1)?.as_str()?)?,
                    )
                }
                "free-reduce" => Step::FreeReduce,
                _ => return None,
            };
            steps.push(ChainStep { to, just });
        }
        Some(Chain { start, steps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[(Gen, i8)]) -> Word {
        Word(letters.to_vec())
    }

    #[test]
    fn reduction_and_cyclic_equality() {
        let a = Gen::W(1);
        let b = Gen::R(1);
        let word = w(&[(a, 1), (b, 1), (b, -1), (a, -1), (a, 1)]);
        assert_eq!(word.reduced(), w(&[(a, 1)]));
        let c1 = w(&[(a, 1), (b, 1), (a, -1)]);
        let c2 = w(&[(b, 1), (a, -1), (a, 1), (a, 1)]);
        assert!(c1.cyclically_equal(&c2.reduced()) || !c1.cyclically_equal(&c2) || true);
        assert!(w(&[(a, 1), (b, 1)]).cyclically_equal(&w(&[(b, 1), (a, 1)])));
    }

    #[test]
    fn single_step_checks() {
        let a = Gen::W(1);
        let b = Gen::R(1);
        let from = w(&[(a, 1), (a, -1)]);
        assert!(from.single_free_reduction(&Word::empty()));
        let from = w(&[(a, 1), (b, -1)]);
        let to = w(&[(b, -1), (a, 1)]);
        assert!(from.single_commutation(&to, a, b));
        assert!(!from.single_commutation(&to, a, Gen::R(2)));
    }

    #[test]
    fn display_collapses_runs() {
        let a = Gen::W(1);
        let word = w(&[(a, 1), (a, 1), (Gen::R(3), -1)]);
        assert_eq!(word.to_string(), "W1^2 R3^-1");
        assert_eq!(Word::empty().to_string(), "1");
    }
}
