//! Diagram synthesis: twist regions, tangle composition, closures,
//! encirclement, smoothing and crossing replacement.

use super::{Boundary, Closure, Crossing, CrossingId, DiagramError, PlanarDiagram, TangleType};
use crate::expr::TangleExpr;
use crate::map::PortId;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Mutable assembly area. Every strand end is a stub port; composition
/// fuses stubs pairwise and the surviving stubs become corner ports.
struct Builder {
    signs: Vec<i8>,
    partner: Vec<Option<PortId>>,
    is_stub: Vec<bool>,
    dead: Vec<bool>,
    cross_ports: Vec<[PortId; 4]>,
    loops: usize,
}

/// Dangling stub ports of a tangle under construction.
#[derive(Debug, Clone, Copy)]
struct Ends {
    nw: PortId,
    ne: PortId,
    se: PortId,
    sw: PortId,
}

impl Builder {
    fn new() -> Builder {
        Builder { signs: vec![], partner: vec![], is_stub: vec![], dead: vec![], cross_ports: vec![], loops: 0 }
    }

    fn fresh(&mut self, stub: bool) -> PortId {
        self.partner.push(None);
        self.is_stub.push(stub);
        self.dead.push(false);
        self.partner.len() - 1
    }

    fn pair(&mut self, a: PortId, b: PortId) {
        debug_assert!(self.partner[a].is_none() && self.partner[b].is_none());
        self.partner[a] = Some(b);
        self.partner[b] = Some(a);
    }

    /// A crossing whose four legs are fresh stubs in CCW order [NE, NW, SW, SE].
    fn crossing(&mut self, sign: i8) -> [PortId; 4] {
        let ports: [PortId; 4] = std::array::from_fn(|_| self.fresh(false));
        let legs: [PortId; 4] = std::array::from_fn(|_| self.fresh(true));
        for i in 0..4 {
            self.pair(ports[i], legs[i]);
        }
        self.signs.push(sign);
        self.cross_ports.push(ports);
        legs
    }

    /// A bare strand: two stubs paired together.
    fn strand(&mut self) -> (PortId, PortId) {
        let a = self.fresh(true);
        let b = self.fresh(true);
        self.pair(a, b);
        (a, b)
    }

    /// Fuse two dangling stub ends, splicing their strands together.
    fn fuse(&mut self, a: PortId, b: PortId) {
        debug_assert!(self.is_stub[a] && self.is_stub[b] && !self.dead[a] && !self.dead[b]);
        let ta = self.partner[a].expect("stub is paired");
        let tb = self.partner[b].expect("stub is paired");
        self.dead[a] = true;
        self.dead[b] = true;
        self.partner[a] = None;
        self.partner[b] = None;
        if ta == b {
            // The two ends belonged to one strand: a free loop closes up.
            self.loops += 1;
        } else {
            self.partner[ta] = None;
            self.partner[tb] = None;
            self.pair(ta, tb);
        }
    }

    /// Copy a finished diagram in, returning its corner stubs.
    fn import(&mut self, d: &PlanarDiagram) -> Result<Ends, DiagramError> {
        let Boundary::Tangle { nw, ne, se, sw } = d.boundary() else {
            return Err(DiagramError::NotATangle);
        };
        let offset = self.partner.len();
        for _ in 0..d.port_count() {
            self.fresh(false);
        }
        for c in d.crossings() {
            self.signs.push(c.sign);
            self.cross_ports.push(c.ports.map(|p| p + offset));
        }
        for &(a, b) in d.pairings() {
            self.pair(a + offset, b + offset);
        }
        for p in [nw, ne, se, sw] {
            self.is_stub[p + offset] = true;
        }
        self.loops += d.loops();
        Ok(Ends { nw: nw + offset, ne: ne + offset, se: se + offset, sw: sw + offset })
    }

    fn finish(self, ends: Option<Ends>) -> Result<PlanarDiagram, DiagramError> {
        let mut crossings = Vec::with_capacity(self.signs.len());
        for (i, ports) in self.cross_ports.iter().enumerate() {
            crossings.push(Crossing { id: i, sign: self.signs[i], ports: *ports });
        }
        let boundary = match ends {
            None => Boundary::Closed,
            Some(e) => Boundary::Tangle { nw: e.nw, ne: e.ne, se: e.se, sw: e.sw },
        };
        let live_ends: Vec<PortId> = match ends {
            None => vec![],
            Some(e) => vec![e.nw, e.ne, e.se, e.sw],
        };
        let mut pairings = Vec::new();
        for (p, q) in self.partner.iter().enumerate() {
            match *q {
                Some(q) if p < q => pairings.push((p, q)),
                Some(_) => {}
                None => {
                    if !self.dead[p] {
                        return Err(DiagramError::Invalid(format!("dangling port {p}")));
                    }
                }
            }
        }
        // Stubs other than the declared corners must have been fused away.
        for (p, &stub) in self.is_stub.iter().enumerate() {
            if stub && !self.dead[p] && !live_ends.contains(&p) {
                return Err(DiagramError::Invalid(format!("unconsumed end {p}")));
            }
        }
        PlanarDiagram::new(crossings, pairings, boundary, self.loops, None)
    }
}

const NE: usize = 0;
const NW: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

/// Horizontal twist region of `n >= 0` crossings of the given sign.
fn horizontal_twists(n: usize, sign: i8) -> PlanarDiagram {
    let mut b = Builder::new();
    if n == 0 {
        let (nw, ne) = b.strand();
        let (sw, se) = b.strand();
        return b.finish(Some(Ends { nw, ne, se, sw })).expect("zero tangle");
    }
    let rows: Vec<[PortId; 4]> = (0..n).map(|_| b.crossing(sign)).collect();
    for w in rows.windows(2) {
        b.fuse(w[0][NE], w[1][NW]);
        b.fuse(w[0][SE], w[1][SW]);
    }
    let ends = Ends { nw: rows[0][NW], sw: rows[0][SW], ne: rows[n - 1][NE], se: rows[n - 1][SE] };
    b.finish(Some(ends)).expect("twist region")
}

/// Vertical twist region (the tangle `1/(sign * n)`).
fn vertical_twists(n: usize, sign: i8) -> PlanarDiagram {
    let mut b = Builder::new();
    if n == 0 {
        let (nw, sw) = b.strand();
        let (ne, se) = b.strand();
        return b.finish(Some(Ends { nw, ne, se, sw })).expect("infinity tangle");
    }
    let col: Vec<[PortId; 4]> = (0..n).map(|_| b.crossing(sign)).collect();
    for w in col.windows(2) {
        b.fuse(w[0][SW], w[1][NW]);
        b.fuse(w[0][SE], w[1][NE]);
    }
    let ends = Ends { nw: col[0][NW], ne: col[0][NE], sw: col[n - 1][SW], se: col[n - 1][SE] };
    b.finish(Some(ends)).expect("twist region")
}

/// Horizontal juxtaposition `a + b`.
pub fn sum(a: &PlanarDiagram, b: &PlanarDiagram) -> Result<PlanarDiagram, DiagramError> {
    let mut bl = Builder::new();
    let ea = bl.import(a)?;
    let eb = bl.import(b)?;
    bl.fuse(ea.ne, eb.nw);
    bl.fuse(ea.se, eb.sw);
    bl.finish(Some(Ends { nw: ea.nw, sw: ea.sw, ne: eb.ne, se: eb.se }))
}

/// Vertical stacking `a * b` (`a` on top).
pub fn product(a: &PlanarDiagram, b: &PlanarDiagram) -> Result<PlanarDiagram, DiagramError> {
    let mut bl = Builder::new();
    let ea = bl.import(a)?;
    let eb = bl.import(b)?;
    bl.fuse(ea.sw, eb.nw);
    bl.fuse(ea.se, eb.ne);
    bl.finish(Some(Ends { nw: ea.nw, ne: ea.ne, sw: eb.sw, se: eb.se }))
}

/// Numerator or denominator closure of a tangle diagram.
pub fn closure(d: &PlanarDiagram, kind: Closure) -> PlanarDiagram {
    let mut bl = Builder::new();
    let e = bl.import(d).expect("closure of a tangle");
    match kind {
        Closure::Numerator => {
            bl.fuse(e.nw, e.ne);
            bl.fuse(e.sw, e.se);
        }
        Closure::Denominator => {
            bl.fuse(e.nw, e.sw);
            bl.fuse(e.ne, e.se);
        }
    }
    bl.finish(None).expect("closure is well formed")
}

/// Alternating encirclement: surround a type 2 tangle with a loop crossing
/// each corner strand once; the loop passes under the NW and SE strands and
/// over the NE and SW strands, which is the unique alternating completion.
/// The four loop crossings are appended in the order NW, NE, SE, SW, so the
/// SW loop crossing is always the highest crossing id.
pub fn encircle(d: &PlanarDiagram) -> Result<PlanarDiagram, DiagramError> {
    match d.classify_type()? {
        TangleType::Type2 => {}
        TangleType::Type1 => return Err(DiagramError::EncircleType),
    }
    let mut bl = Builder::new();
    let e = bl.import(d)?;
    // Leg layouts (CCW) derived from the loop's alternation pattern; all
    // four crossings carry stored sign +1 with these orders.
    let lnw = bl.crossing(1); // [loop_ne, outer, loop_sw, inner]
    let lne = bl.crossing(1); // [outer, loop_nw, inner, loop_se]
    let lse = bl.crossing(1); // [loop_ne, inner, loop_sw, outer]
    let lsw = bl.crossing(1); // [inner, loop_nw, outer, loop_se]
    bl.fuse(lnw[0], lne[1]);
    bl.fuse(lne[3], lse[0]);
    bl.fuse(lse[2], lsw[3]);
    bl.fuse(lsw[1], lnw[2]);
    bl.fuse(e.nw, lnw[3]);
    bl.fuse(e.ne, lne[2]);
    bl.fuse(e.se, lse[1]);
    bl.fuse(e.sw, lsw[0]);
    bl.finish(Some(Ends { nw: lnw[1], ne: lne[0], se: lse[3], sw: lsw[2] }))
}

fn corners(d: &PlanarDiagram) -> Result<[PortId; 4], DiagramError> {
    match d.boundary() {
        Boundary::Tangle { nw, ne, se, sw } => Ok([nw, ne, se, sw]),
        Boundary::Closed => Err(DiagramError::NotATangle),
    }
}

fn rebuild(
    d: &PlanarDiagram,
    map_crossing: impl Fn(&Crossing) -> Crossing,
    map_corners: impl Fn([PortId; 4]) -> [PortId; 4],
) -> PlanarDiagram {
    let crossings = d.crossings().iter().map(map_crossing).collect();
    let boundary = match d.boundary() {
        Boundary::Closed => Boundary::Closed,
        Boundary::Tangle { nw, ne, se, sw } => {
            let [nw, ne, se, sw] = map_corners([nw, ne, se, sw]);
            Boundary::Tangle { nw, ne, se, sw }
        }
    };
    PlanarDiagram::new(crossings, d.pairings().to_vec(), boundary, d.loops(), d.outer_witness())
        .expect("transform preserves validity")
}

/// Swap every crossing.
pub fn mirror(d: &PlanarDiagram) -> PlanarDiagram {
    rebuild(d, |c| Crossing { id: c.id, sign: -c.sign, ports: c.ports }, |cs| cs)
}

fn reflect(d: &PlanarDiagram, swap: impl Fn([PortId; 4]) -> [PortId; 4]) -> PlanarDiagram {
    // A planar reflection reverses rotation order; composing with a mirror
    // keeps the 3-space flip's over/under datum (stored sign flips).
    rebuild(
        d,
        |c| Crossing { id: c.id, sign: -c.sign, ports: [c.ports[0], c.ports[3], c.ports[2], c.ports[1]] },
        swap,
    )
}

/// Rotation of the ball by pi about the horizontal axis.
pub fn flip_h(d: &PlanarDiagram) -> PlanarDiagram {
    reflect(d, |[nw, ne, se, sw]| [sw, se, ne, nw])
}

/// Rotation of the ball by pi about the vertical axis.
pub fn flip_v(d: &PlanarDiagram) -> PlanarDiagram {
    reflect(d, |[nw, ne, se, sw]| [ne, nw, sw, se])
}

pub fn rotate_cw(d: &PlanarDiagram) -> PlanarDiagram {
    rebuild(d, |c| *c, |[nw, ne, se, sw]| [sw, nw, ne, se])
}

pub fn rotate_ccw(d: &PlanarDiagram) -> PlanarDiagram {
    rebuild(d, |c| *c, |[nw, ne, se, sw]| [ne, se, sw, nw])
}

/// Tangle inversion `1/t` (clockwise rotation followed by mirror).
pub fn invert(d: &PlanarDiagram) -> PlanarDiagram {
    mirror(&rotate_cw(d))
}

/// Synthesize the standard diagram of an expression.
pub fn synthesize(expr: &TangleExpr) -> Result<PlanarDiagram, DiagramError> {
    use TangleExpr::*;
    match expr {
        Integer(n) => {
            let count = n.unsigned_abs() as usize;
            Ok(horizontal_twists(count, if *n < 0 { -1 } else { 1 }))
        }
        Infinity => Ok(vertical_twists(0, 1)),
        Rational(cf) => {
            let mut terms = Vec::with_capacity(cf.len());
            for t in cf.terms() {
                terms.push(t.to_i64().ok_or(DiagramError::TooLarge)?);
            }
            synthesize_continued_fraction(&terms)
        }
        Sum(a, b) => sum(&synthesize(a)?, &synthesize(b)?),
        Product(a, b) => product(&synthesize(a)?, &synthesize(b)?),
        Invert(t) => Ok(invert(&synthesize(t)?)),
        Mirror(t) => Ok(mirror(&synthesize(t)?)),
        FlipH(t) => Ok(flip_h(&synthesize(t)?)),
        FlipV(t) => Ok(flip_v(&synthesize(t)?)),
        RotateCw(t) => Ok(rotate_cw(&synthesize(t)?)),
        RotateCcw(t) => Ok(rotate_ccw(&synthesize(t)?)),
        Encircle(t) => encircle(&synthesize(t)?),
    }
}

/// Standard alternating diagram of `[a_1,...,a_n]`: horizontal rows at odd
/// positions (appended on the right), vertical columns at even positions
/// (stacked below), deepest term innermost.
fn synthesize_continued_fraction(terms: &[i64]) -> Result<PlanarDiagram, DiagramError> {
    let n = terms.len();
    assert!(n >= 1);
    let piece = |k: usize| -> PlanarDiagram {
        let a = terms[k - 1];
        let count = a.unsigned_abs() as usize;
        let sign = if a < 0 { -1 } else { 1 };
        if k % 2 == 1 {
            horizontal_twists(count, sign)
        } else {
            vertical_twists(count, sign)
        }
    };
    let mut acc = piece(n);
    for k in (1..n).rev() {
        acc = if k % 2 == 1 { sum(&acc, &piece(k))? } else { product(&acc, &piece(k))? };
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmoothKind {
    Zero,
    Infinity,
}

/// Raw merged diagram data fed to [`splice_out`]. Ports live in one shared
/// namespace; `dead` ports are removed and identified pairwise by `wires`.
struct Splice {
    crossings: Vec<Crossing>,
    partner: Vec<PortId>,
    boundary: Boundary,
    loops: usize,
    dead: Vec<bool>,
    wire_mate: HashMap<PortId, PortId>,
}

impl Splice {
    fn run(self) -> Result<PlanarDiagram, DiagramError> {
        let n = self.partner.len();
        let mut pairings = Vec::new();
        let mut visited = vec![false; n];
        for p in 0..n {
            if self.dead[p] {
                continue;
            }
            let mut q = self.partner[p];
            while self.dead[q] {
                visited[q] = true;
                let m = self.wire_mate[&q];
                visited[m] = true;
                q = self.partner[m];
            }
            if p < q {
                pairings.push((p, q));
            }
        }
        // Strands welded into circles entirely inside the dead region.
        let mut loops = self.loops;
        for start in 0..n {
            if !self.dead[start] || visited[start] {
                continue;
            }
            let mut q = start;
            loop {
                visited[q] = true;
                let m = self.wire_mate[&q];
                visited[m] = true;
                q = self.partner[m];
                if q == start {
                    break;
                }
            }
            loops += 1;
        }
        PlanarDiagram::new(self.crossings, pairings, self.boundary, loops, None)
    }
}

/// Replace crossing `c` by one of its two smoothings. With the crossing's
/// ports rotated so the over-strand runs first-to-third, the zero smoothing
/// joins adjacent ports `(q0,q1)(q2,q3)` and the infinity smoothing joins
/// `(q1,q2)(q3,q0)`.
pub fn smooth(d: &PlanarDiagram, c: CrossingId, kind: SmoothKind) -> Result<PlanarDiagram, DiagramError> {
    let cr = *d.crossing(c)?;
    let k = if cr.sign == 1 { 1 } else { 0 };
    let q: [PortId; 4] = std::array::from_fn(|i| cr.ports[(i + k) % 4]);
    let wires = match kind {
        SmoothKind::Zero => [(q[0], q[1]), (q[2], q[3])],
        SmoothKind::Infinity => [(q[1], q[2]), (q[3], q[0])],
    };
    let mut dead = vec![false; d.port_count()];
    for p in cr.ports {
        dead[p] = true;
    }
    Splice {
        crossings: d.crossings().iter().filter(|x| x.id != c).copied().collect(),
        partner: (0..d.port_count()).map(|p| d.partner(p)).collect(),
        boundary: d.boundary(),
        loops: d.loops(),
        dead,
        wire_mate: wires.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect(),
    }
    .run()
}

/// The family link diagram `n(-p/(p+q) + tau(T))` together with its marked
/// crossing. The slope column is synthesized on the left, so the marked
/// crossing (the encirclement crossing on the SW strand, next to the
/// column) is always the highest crossing id.
pub fn family_link(
    t: &PlanarDiagram,
    p: i64,
    q: i64,
) -> Result<(PlanarDiagram, CrossingId), DiagramError> {
    let s = p.checked_add(q).ok_or(DiagramError::TooLarge)?;
    let f = crate::fraction::Fraction::new(-p, s)
        .map_err(|e| DiagramError::Invalid(e.to_string()))?;
    let cf = crate::fraction::to_continued_fraction(&f)
        .map_err(|e| DiagramError::Invalid(e.to_string()))?;
    let col = synthesize(&TangleExpr::Rational(cf))?;
    let tau = encircle(t)?;
    let joined = sum(&col, &tau)?;
    let closed = closure(&joined, Closure::Numerator);
    let marked = closed.crossing_count() - 1;
    Ok((closed, marked))
}

/// Replace a crossing with a tangle diagram, aligning the tangle's
/// NE/NW/SW/SE corners with the crossing's ports `0..4`. Errors with
/// `SignMismatch` unless the over/under behavior of the tangle's corner
/// strands reproduces the crossing's pattern (so an alternating context
/// stays alternating).
pub fn replace_crossing(
    d: &PlanarDiagram,
    c: CrossingId,
    tangle: &PlanarDiagram,
) -> Result<PlanarDiagram, DiagramError> {
    let cr = *d.crossing(c)?;
    let [t_nw, t_ne, t_se, t_sw] = corners(tangle)?;
    let corner_over = |p: PortId| -> Result<bool, DiagramError> {
        let q = tangle.partner(p);
        if q >= 4 * tangle.crossing_count() {
            return Err(DiagramError::SignMismatch);
        }
        Ok(tangle.passes_over(q))
    };
    let aligned = [(cr.ports[0], t_ne), (cr.ports[1], t_nw), (cr.ports[2], t_sw), (cr.ports[3], t_se)];
    for (port, t_corner) in aligned {
        if corner_over(t_corner)? != d.passes_over(port) {
            return Err(DiagramError::SignMismatch);
        }
    }
    let id_offset = d.crossings().iter().map(|x| x.id + 1).max().unwrap_or(0);
    let port_offset = d.port_count();
    let crossings: Vec<Crossing> = d
        .crossings()
        .iter()
        .filter(|x| x.id != c)
        .copied()
        .chain(tangle.crossings().iter().map(|tc| Crossing {
            id: tc.id + id_offset,
            sign: tc.sign,
            ports: tc.ports.map(|p| p + port_offset),
        }))
        .collect();
    let mut partner: Vec<PortId> = (0..d.port_count()).map(|p| d.partner(p)).collect();
    partner.extend((0..tangle.port_count()).map(|p| tangle.partner(p) + port_offset));
    let mut dead = vec![false; partner.len()];
    for p in cr.ports {
        dead[p] = true;
    }
    for p in [t_nw, t_ne, t_se, t_sw] {
        dead[p + port_offset] = true;
    }
    Splice {
        crossings,
        partner,
        boundary: d.boundary(),
        loops: d.loops() + tangle.loops(),
        dead,
        wire_mate: aligned
            .iter()
            .flat_map(|&(p, t)| [(p, t + port_offset), (t + port_offset, p)])
            .collect(),
    }
    .run()
}
