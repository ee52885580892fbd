//! Minimal combinatorial-map machinery: vertices with counterclockwise
//! rotation lists, a total port pairing, and face orbits.
//!
//! A dart is identified with the port at its tail. Faces are traced with
//! the region kept on the left: from the dart leaving port `p`, cross to
//! `partner(p)` and continue out of the next port clockwise at that vertex.

pub type PortId = usize;
pub type VertexId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone)]
pub struct CombMap {
    /// CCW rotation of ports at each vertex.
    pub rotations: Vec<Vec<PortId>>,
    /// partner[p] = the port at the far end of p's edge.
    pub partner: Vec<PortId>,
    /// vertex_of[p]
    pub vertex_of: Vec<VertexId>,
    /// position of p inside its vertex rotation
    pub slot_of: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Faces {
    pub face_of: Vec<FaceId>,
    pub faces: Vec<Vec<PortId>>,
}

impl CombMap {
    pub fn new(rotations: Vec<Vec<PortId>>, pairs: &[(PortId, PortId)]) -> CombMap {
        let n_ports: usize = rotations.iter().map(|r| r.len()).sum();
        let mut vertex_of = vec![usize::MAX; n_ports];
        let mut slot_of = vec![usize::MAX; n_ports];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &p) in rot.iter().enumerate() {
                assert!(vertex_of[p] == usize::MAX, "port {p} listed twice");
                vertex_of[p] = v;
                slot_of[p] = i;
            }
        }
        let mut partner = vec![usize::MAX; n_ports];
        for &(a, b) in pairs {
            assert!(partner[a] == usize::MAX && partner[b] == usize::MAX, "port paired twice");
            partner[a] = b;
            partner[b] = a;
        }
        assert!(partner.iter().all(|&p| p != usize::MAX), "unpaired port");
        assert!(vertex_of.iter().all(|&v| v != usize::MAX));
        CombMap { rotations, partner, vertex_of, slot_of }
    }

    fn cw_next(&self, p: PortId) -> PortId {
        let v = self.vertex_of[p];
        let rot = &self.rotations[v];
        let i = self.slot_of[p];
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// The dart that continues the face (left region) of the dart out of `p`.
    pub fn face_next(&self, p: PortId) -> PortId {
        self.cw_next(self.partner[p])
    }

    pub fn faces(&self) -> Faces {
        let n = self.partner.len();
        let mut face_of = vec![usize::MAX; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                orbit.push(d);
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            faces.push(orbit);
        }
        Faces { face_of, faces }
    }

    /// Connected components over vertices (isolated vertices count).
    pub fn component_count(&self) -> usize {
        let n = self.rotations.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = count;
            while let Some(v) = stack.pop() {
                for &p in &self.rotations[v] {
                    let w = self.vertex_of[self.partner[p]];
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        count
    }

    /// Genus-zero check: V - E + F = 2C for a rotation system realizable in
    /// the plane, component by component.
    pub fn is_planar(&self) -> bool {
        if self.partner.is_empty() {
            return true;
        }
        let v = self.rotations.iter().filter(|r| !r.is_empty()).count();
        let e = self.partner.len() / 2;
        let f = self.faces().faces.len();
        let c = self.component_count();
        (v + f) as i64 - e as i64 == 2 * c as i64
    }
}
