//! Diagram JSON schema:
//!
//! ```json
//! {"crossings":[{"id":0,"sign":1,"ports":[0,1,2,3]}],
//!  "pairings":[[0,1],[2,3]],
//!  "boundary":"closed",
//!  "loops":0}
//! ```
//!
//! `boundary` is `"closed"` or `{"NW":..,"NE":..,"SE":..,"SW":..}` with port
//! references. Crossings are sorted by id and pairings lexicographically.
//! `loops` (crossing-free circles) and `outer` (a dart witness for the
//! unbounded face) are optional extensions, omitted when absent.

use super::{Boundary, Crossing, DiagramError, PlanarDiagram};
use crate::map::PortId;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    crossings: Vec<Crossing>,
    pairings: Vec<(PortId, PortId)>,
    boundary: BoundaryJson,
    #[serde(default, skip_serializing_if = "is_zero")]
    loops: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outer: Option<PortId>,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BoundaryJson {
    Closed(String),
    Tangle {
        #[serde(rename = "NW")]
        nw: PortId,
        #[serde(rename = "NE")]
        ne: PortId,
        #[serde(rename = "SE")]
        se: PortId,
        #[serde(rename = "SW")]
        sw: PortId,
    },
}

impl PlanarDiagram {
    pub fn to_json(&self) -> serde_json::Value {
        let boundary = match self.boundary() {
            Boundary::Closed => BoundaryJson::Closed("closed".into()),
            Boundary::Tangle { nw, ne, se, sw } => BoundaryJson::Tangle { nw, ne, se, sw },
        };
        serde_json::to_value(DiagramJson {
            crossings: self.crossings().to_vec(),
            pairings: self.pairings().to_vec(),
            boundary,
            loops: self.loops(),
            outer: self.outer_witness(),
        })
        .expect("diagram serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<PlanarDiagram, DiagramError> {
        let raw: DiagramJson = serde_json::from_value(v.clone())
            .map_err(|e| DiagramError::Invalid(format!("bad diagram json: {e}")))?;
        let boundary = match raw.boundary {
            BoundaryJson::Closed(s) if s == "closed" => Boundary::Closed,
            BoundaryJson::Closed(s) => {
                return Err(DiagramError::Invalid(format!("unknown boundary kind '{s}'")))
            }
            BoundaryJson::Tangle { nw, ne, se, sw } => Boundary::Tangle { nw, ne, se, sw },
        };
        PlanarDiagram::new(raw.crossings, raw.pairings, boundary, raw.loops, raw.outer)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{closure, synthesize, Closure};
    use super::*;
    use crate::expr::parse_expr;

    #[test]
    fn round_trip_tangle_and_closed() {
        let t = synthesize(&parse_expr("[2,3,4]").unwrap()).unwrap();
        let v = t.to_json();
        let back = PlanarDiagram::from_json(&v).unwrap();
        assert!(t.same_diagram(&back));

        let c = closure(&t, Closure::Numerator);
        let back = PlanarDiagram::from_json(&c.to_json()).unwrap();
        assert!(c.same_diagram(&back));
    }

    #[test]
    fn rejects_garbage() {
        let v = serde_json::json!({
            "crossings": [{"id": 0, "sign": 1, "ports": [0,1,2,3]}],
            "pairings": [[0,1],[2,3],[0,2]],
            "boundary": "closed"
        });
        assert!(PlanarDiagram::from_json(&v).is_err());
    }
}
