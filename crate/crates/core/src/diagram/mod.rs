//! Planar diagrams of tangles and links as rotation-system 4-valent maps.
//!
//! # The global sign convention
//!
//! Every module derives its crossing signs from the single convention fixed
//! here. A crossing stores its four ports in counterclockwise rotation
//! order and a `sign`:
//!
//! ```text
//!   sign = +1          sign = -1
//!
//!   p1      p0         p1      p0
//!     \    /             \    /
//!      \  /               \  /
//!       \/                 /
//!      / \                / \
//!     /   \              /   \
//!   p2     p3          p2     p3
//! ```
//!
//! that is, `sign = +1` means the strand through `ports[1]` and `ports[3]`
//! passes over, `sign = -1` means the strand through `ports[0]` and
//! `ports[2]` does. Twist constructors place legs as
//! `[NE, NW, SW, SE]`, so `sign` is the handedness of a twist region and a
//! standard continued-fraction diagram `[a_1,...,a_n]` carries `sign(a_i)`
//! on every crossing of the `i`-th twist region.
//!
//! Tangle type is defined against the same convention: a connected
//! alternating tangle is **type 2** when the strand entering at `NW` passes
//! *under* at its first crossing, **type 1** when it passes over. Standard
//! all-negative rational diagrams are type 2.

mod build;
pub mod json;
#[cfg(test)]
mod tests;
mod tn;

pub use build::{closure, encircle, family_link, flip_h, flip_v, invert, mirror, rotate_ccw,
                rotate_cw, smooth, sum, product, synthesize, replace_crossing, SmoothKind};
pub use tn::{build_tn, tn_expr, BoxParity};

use crate::map::{CombMap, FaceId, PortId};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

pub type CrossingId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("diagram is not planar")]
    NotPlanar,
    #[error("operation needs a tangle diagram")]
    NotATangle,
    #[error("operation needs a closed diagram")]
    NotClosed,
    #[error("tangle diagram is not connected")]
    NotConnected,
    #[error("diagram is not alternating")]
    NotAlternating,
    #[error("split diagram")]
    SplitDiagram,
    #[error("encirclement applies only to type 2 tangles")]
    EncircleType,
    #[error("type pattern at the four endpoints is inconsistent")]
    InconsistentType,
    #[error("no crossing with id {0}")]
    NoSuchCrossing(CrossingId),
    #[error("twist count too large to synthesize")]
    TooLarge,
    #[error("sign pattern of the replacement tangle does not match the crossing")]
    SignMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub id: CrossingId,
    pub sign: i8,
    pub ports: [PortId; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Closed,
    Tangle { nw: PortId, ne: PortId, se: PortId, sw: PortId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TangleType {
    Type1,
    Type2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Closure {
    Numerator,
    Denominator,
}

/// An immutable planar diagram. Ports are numbered canonically: crossing
/// `i` owns ports `4i..4i+4`, and a tangle's four corner ports follow in
/// the order NW, NE, SE, SW.
#[derive(Clone)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    pairings: Vec<(PortId, PortId)>,
    boundary: Boundary,
    loops: usize,
    outer: Option<PortId>,
    partner: Vec<PortId>,
}

impl PlanarDiagram {
    /// Validate and canonicalize raw diagram data.
    pub fn new(
        crossings: Vec<Crossing>,
        pairings: Vec<(PortId, PortId)>,
        boundary: Boundary,
        loops: usize,
        outer: Option<PortId>,
    ) -> Result<PlanarDiagram, DiagramError> {
        // Canonical port renumbering: crossings sorted by id.
        let mut crossings = crossings;
        crossings.sort_by_key(|c| c.id);
        if crossings.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(DiagramError::Invalid("duplicate crossing id".into()));
        }
        if crossings.iter().any(|c| c.sign != 1 && c.sign != -1) {
            return Err(DiagramError::Invalid("crossing sign must be +1 or -1".into()));
        }
        let mut remap: HashMap<PortId, PortId> = HashMap::new();
        for (i, c) in crossings.iter().enumerate() {
            for (j, &p) in c.ports.iter().enumerate() {
                if remap.insert(p, 4 * i + j).is_some() {
                    return Err(DiagramError::Invalid(format!("port {p} used twice")));
                }
            }
        }
        let n_cross_ports = 4 * crossings.len();
        let boundary = match boundary {
            Boundary::Closed => Boundary::Closed,
            Boundary::Tangle { nw, ne, se, sw } => {
                for (k, p) in [nw, ne, se, sw].into_iter().enumerate() {
                    if remap.insert(p, n_cross_ports + k).is_some() {
                        return Err(DiagramError::Invalid(format!("port {p} used twice")));
                    }
                }
                Boundary::Tangle {
                    nw: n_cross_ports,
                    ne: n_cross_ports + 1,
                    se: n_cross_ports + 2,
                    sw: n_cross_ports + 3,
                }
            }
        };
        let n_ports = remap.len();
        let mut new_crossings = Vec::with_capacity(crossings.len());
        for (i, c) in crossings.iter().enumerate() {
            new_crossings.push(Crossing {
                id: c.id,
                sign: c.sign,
                ports: [4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3],
            });
        }
        let mut new_pairings = Vec::with_capacity(pairings.len());
        for &(a, b) in &pairings {
            let (&a2, &b2) = (
                remap.get(&a).ok_or_else(|| DiagramError::Invalid(format!("unknown port {a}")))?,
                remap.get(&b).ok_or_else(|| DiagramError::Invalid(format!("unknown port {b}")))?,
            );
            let (lo, hi) = if a2 <= b2 { (a2, b2) } else { (b2, a2) };
            if lo == hi {
                return Err(DiagramError::Invalid("port paired with itself".into()));
            }
            new_pairings.push((lo, hi));
        }
        new_pairings.sort_unstable();
        let mut partner = vec![usize::MAX; n_ports];
        for &(a, b) in &new_pairings {
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(DiagramError::Invalid("port paired twice".into()));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if partner.iter().any(|&p| p == usize::MAX) {
            return Err(DiagramError::Invalid("unpaired port".into()));
        }
        let outer = match outer {
            None => None,
            Some(p) => Some(*remap.get(&p).ok_or_else(|| DiagramError::Invalid(format!("unknown outer port {p}")))?),
        };
        let d = PlanarDiagram { crossings: new_crossings, pairings: new_pairings, boundary, loops, outer, partner };
        if !d.ring_map().is_planar() {
            return Err(DiagramError::NotPlanar);
        }
        Ok(d)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, id: CrossingId) -> Result<&Crossing, DiagramError> {
        self.crossings.iter().find(|c| c.id == id).ok_or(DiagramError::NoSuchCrossing(id))
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn pairings(&self) -> &[(PortId, PortId)] {
        &self.pairings
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn outer_witness(&self) -> Option<PortId> {
        self.outer
    }

    pub fn with_outer_witness(mut self, port: PortId) -> PlanarDiagram {
        self.outer = Some(port);
        self
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.boundary, Boundary::Closed)
    }

    pub fn is_tangle(&self) -> bool {
        !self.is_closed()
    }

    pub fn partner(&self, p: PortId) -> PortId {
        self.partner[p]
    }

    pub fn port_count(&self) -> usize {
        self.partner.len()
    }

    /// Structural equality on the canonical form (the outer witness is
    /// advisory and ignored).
    pub fn same_diagram(&self, other: &PlanarDiagram) -> bool {
        self.crossings == other.crossings
            && self.pairings == other.pairings
            && self.boundary == other.boundary
            && self.loops == other.loops
    }

    fn owner(&self, p: PortId) -> Option<(usize, usize)> {
        if p < 4 * self.crossings.len() {
            Some((p / 4, p % 4))
        } else {
            None
        }
    }

    fn is_corner_port(&self, p: PortId) -> bool {
        p >= 4 * self.crossings.len()
    }

    /// Does the strand through crossing port `p` pass over there?
    pub fn passes_over(&self, p: PortId) -> bool {
        let (ci, slot) = self.owner(p).expect("crossing port");
        (slot % 2 == 1) == (self.crossings[ci].sign == 1)
    }

    /// Plain map: crossings are 4-valent vertices, corners pendant vertices.
    pub fn plain_map(&self) -> CombMap {
        let mut rotations: Vec<Vec<PortId>> =
            self.crossings.iter().map(|c| c.ports.to_vec()).collect();
        if let Boundary::Tangle { nw, ne, se, sw } = self.boundary {
            for p in [nw, ne, se, sw] {
                rotations.push(vec![p]);
            }
        }
        CombMap::new(rotations, &self.pairings)
    }

    /// Map with the projection-disk boundary added as a ring through the
    /// four corners (identity on closed diagrams). Gives tangle diagrams
    /// honest interior faces and a distinguished exterior.
    pub fn ring_map(&self) -> CombMap {
        let Boundary::Tangle { nw, ne, se, sw } = self.boundary else {
            return self.plain_map();
        };
        let mut rotations: Vec<Vec<PortId>> =
            self.crossings.iter().map(|c| c.ports.to_vec()).collect();
        let base = self.partner.len();
        // Two ring ports per corner; names follow the neighbor they reach.
        let (nw_ne, nw_sw) = (base, base + 1);
        let (ne_nw, ne_se) = (base + 2, base + 3);
        let (se_ne, se_sw) = (base + 4, base + 5);
        let (sw_nw, sw_se) = (base + 6, base + 7);
        rotations.push(vec![nw_ne, nw_sw, nw]); // NW corner, CCW
        rotations.push(vec![ne_nw, ne, ne_se]); // NE
        rotations.push(vec![se_ne, se, se_sw]); // SE
        rotations.push(vec![sw, sw_nw, sw_se]); // SW
        let mut pairs = self.pairings.clone();
        pairs.extend([(nw_ne, ne_nw), (ne_se, se_ne), (se_sw, sw_se), (sw_nw, nw_sw)]);
        CombMap::new(rotations, &pairs)
    }

    /// Number of link components of a closed diagram, by strand tracing.
    pub fn components(&self) -> Result<usize, DiagramError> {
        if !self.is_closed() {
            return Err(DiagramError::NotClosed);
        }
        Ok(self.strand_orbits().len() + self.loops)
    }

    /// Orbits of ports under strand continuation (pairings plus the
    /// opposite-port rule at each crossing).
    fn strand_orbits(&self) -> Vec<Vec<PortId>> {
        let n = self.partner.len();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(p) = stack.pop() {
                orbit.push(p);
                let push = |q: PortId, seen: &mut Vec<bool>, stack: &mut Vec<PortId>| {
                    if !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                };
                push(self.partner[p], &mut seen, &mut stack);
                if let Some((ci, slot)) = self.owner(p) {
                    push(self.crossings[ci].ports[(slot + 2) % 4], &mut seen, &mut stack);
                }
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Connected components of the underlying graph (crossings and corner
    /// endpoints, via edges), not counting free loops.
    fn graph_components(&self) -> usize {
        if self.partner.is_empty() {
            return 0;
        }
        self.plain_map().component_count()
    }

    pub fn is_alternating(&self) -> bool {
        self.pairings.iter().all(|&(a, b)| {
            if self.is_corner_port(a) || self.is_corner_port(b) {
                true
            } else {
                self.passes_over(a) != self.passes_over(b)
            }
        })
    }

    pub fn is_connected_tangle(&self) -> bool {
        self.is_tangle() && self.loops == 0 && self.graph_components() == 1
    }

    /// A closed diagram is split iff its underlying graph (with free loops)
    /// has more than one component.
    pub fn is_split(&self) -> bool {
        if self.is_closed() {
            self.graph_components() + self.loops > 1
        } else {
            !self.is_connected_tangle()
        }
    }

    /// Nugatory flags per crossing of a closed diagram: a crossing is
    /// nugatory when two opposite corner faces coincide (a loop or isthmus
    /// of the checkerboard graph).
    pub fn nugatory_flags(&self) -> Result<Vec<bool>, DiagramError> {
        if !self.is_closed() {
            return Err(DiagramError::NotClosed);
        }
        if self.crossings.is_empty() {
            return Ok(vec![]);
        }
        let faces = self.plain_map().faces();
        Ok(self
            .crossings
            .iter()
            .map(|c| {
                let f = [0, 1, 2, 3].map(|i| faces.face_of[c.ports[i]]);
                f[0] == f[2] || f[1] == f[3]
            })
            .collect())
    }

    /// No nugatory crossing. Tangle diagrams are measured in the
    /// projection disk (the boundary ring separates the outer regions), so
    /// standard rational diagrams come out reduced.
    pub fn is_reduced(&self) -> bool {
        if self.crossings.is_empty() {
            return true;
        }
        let faces = self.ring_map().faces();
        self.crossings.iter().all(|c| {
            let f = [0, 1, 2, 3].map(|i| faces.face_of[c.ports[i]]);
            f[0] != f[2] && f[1] != f[3]
        })
    }

    pub fn predicates(&self) -> Predicates {
        let (is_connected_tangle, is_strongly_alternating) = if self.is_tangle() {
            let connected = self.is_connected_tangle();
            let strong = connected
                && self.is_alternating()
                && [Closure::Numerator, Closure::Denominator].iter().all(|&k| {
                    let c = closure(self, k);
                    !c.is_split() && c.is_reduced()
                });
            (connected, strong)
        } else {
            (false, false)
        };
        Predicates {
            is_alternating: self.is_alternating(),
            is_connected_tangle,
            is_split: self.is_split(),
            is_reduced: self.is_reduced(),
            is_strongly_alternating,
        }
    }

    /// Classify a connected alternating tangle by the over/under behavior
    /// of its corner strands; checks the diametric consistency pattern.
    pub fn classify_type(&self) -> Result<TangleType, DiagramError> {
        let Boundary::Tangle { nw, ne, se, sw } = self.boundary else {
            return Err(DiagramError::NotATangle);
        };
        if !self.is_connected_tangle() {
            return Err(DiagramError::NotConnected);
        }
        if !self.is_alternating() {
            return Err(DiagramError::NotAlternating);
        }
        let first_over = |corner: PortId| -> Result<bool, DiagramError> {
            let q = self.partner[corner];
            if self.is_corner_port(q) {
                return Err(DiagramError::NotConnected);
            }
            Ok(self.passes_over(q))
        };
        let (o_nw, o_ne, o_se, o_sw) = (first_over(nw)?, first_over(ne)?, first_over(se)?, first_over(sw)?);
        if o_nw != o_se || o_ne != o_sw || o_nw == o_ne {
            return Err(DiagramError::InconsistentType);
        }
        Ok(if o_nw { TangleType::Type1 } else { TangleType::Type2 })
    }

    /// The unbounded face: the stored witness if any, else the largest face
    /// (ties broken by smallest dart).
    pub fn outer_face(&self, faces: &crate::map::Faces) -> FaceId {
        if let Some(p) = self.outer {
            return faces.face_of[p];
        }
        let mut best: Option<FaceId> = None;
        for (id, f) in faces.faces.iter().enumerate() {
            match best {
                None => best = Some(id),
                Some(b) => {
                    let fb = &faces.faces[b];
                    if f.len() > fb.len()
                        || (f.len() == fb.len()
                            && f.iter().min() < fb.iter().min())
                    {
                        best = Some(id);
                    }
                }
            }
        }
        best.expect("diagram with at least one face")
    }
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PlanarDiagram({} crossings, {} loops, {})",
            self.crossings.len(),
            self.loops,
            if self.is_closed() { "closed" } else { "tangle" }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub is_alternating: bool,
    pub is_connected_tangle: bool,
    pub is_split: bool,
    pub is_reduced: bool,
    pub is_strongly_alternating: bool,
}
