//! Construct link diagrams from disk-band data: disks with a cyclic order
//! of band attachments, bands with signed twist counts. This is the
//! inverse of [`super::disk_band`] and is used to transcribe figure-level
//! decompositions into concrete diagrams.

use crate::diagram::{Boundary, Crossing, DiagramError, PlanarDiagram};
use crate::map::PortId;

/// Bands as `(from_disk, to_disk, label)`; rotations list `(band, end)`
/// attachments counterclockwise around each disk (end 0 = from, 1 = to).
#[derive(Debug, Clone)]
pub struct DiskBandSpec {
    pub bands: Vec<(usize, usize, i64)>,
    pub rotations: Vec<Vec<(usize, u8)>>,
}

/// Build the closed diagram of the boundary of the disk-band surface.
/// Returns the diagram and, per band, its crossing ids in chain order.
pub fn disk_band_diagram(spec: &DiskBandSpec) -> Result<(PlanarDiagram, Vec<Vec<usize>>), DiagramError> {
    for (i, rot) in spec.rotations.iter().enumerate() {
        for &(b, end) in rot {
            let Some(&(from, to, _)) = spec.bands.get(b) else {
                return Err(DiagramError::Invalid(format!("disk {i} references unknown band {b}")));
            };
            let disk = if end == 0 { from } else { to };
            if disk != i {
                return Err(DiagramError::Invalid(format!(
                    "band {b} end {end} does not attach to disk {i}"
                )));
            }
        }
    }
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut pairings: Vec<(PortId, PortId)> = Vec::new();
    let mut next_port = 0;
    let fresh = |n: usize, next_port: &mut usize| -> Vec<PortId> {
        let v: Vec<PortId> = (*next_port..*next_port + n).collect();
        *next_port += n;
        v
    };
    // Per band end: (entry stub, exit stub) in the disk's CCW walk.
    let mut ends: Vec<[(PortId, PortId); 2]> = Vec::new();
    let mut band_crossings: Vec<Vec<usize>> = Vec::new();
    for &(_, _, label) in &spec.bands {
        if label == 0 {
            return Err(DiagramError::Invalid("band label must be nonzero".into()));
        }
        let k = label.unsigned_abs() as usize;
        let sign: i8 = if label > 0 { 1 } else { -1 };
        let mut ids = Vec::with_capacity(k);
        let mut ports: Vec<[PortId; 4]> = Vec::with_capacity(k);
        for _ in 0..k {
            let p = fresh(4, &mut next_port);
            let id = crossings.len();
            crossings.push(Crossing { id, sign, ports: [p[0], p[1], p[2], p[3]] });
            ids.push(id);
            ports.push([p[0], p[1], p[2], p[3]]);
        }
        // Vertical chain, legs [NE, NW, SW, SE]: SW/SE of one crossing to
        // NW/NE of the next.
        for w in ports.windows(2) {
            pairings.push((w[0][2], w[1][1]));
            pairings.push((w[0][3], w[1][0]));
        }
        let top = ports[0];
        let bottom = ports[k - 1];
        // Top attachment: the disk walk enters via NW and leaves via NE;
        // bottom attachment: enters via SE, leaves via SW.
        ends.push([(top[1], top[0]), (bottom[3], bottom[2])]);
        band_crossings.push(ids);
    }
    // Disk boundary arcs: exit of one attachment to entry of the next.
    for rot in &spec.rotations {
        if rot.is_empty() {
            return Err(DiagramError::Invalid("disk with no attachments".into()));
        }
        for i in 0..rot.len() {
            let (b1, e1) = rot[i];
            let (b2, e2) = rot[(i + 1) % rot.len()];
            let exit = ends[b1][e1 as usize].1;
            let entry = ends[b2][e2 as usize].0;
            pairings.push((exit, entry));
        }
    }
    let d = PlanarDiagram::new(crossings, pairings, Boundary::Closed, 0, None)?;
    Ok((d, band_crossings))
}

/// The transcribed four-disk example diagram: a central disk joined to the
/// three corners of an outer triangle, with a three-twist band across the
/// top (of the opposite handedness), single-crossing bands elsewhere, and
/// a doubled two-twist band into the bottom corner. 11 crossings; the
/// outer face witness is set on the region flanked by the triangle's three
/// outer bands.
pub fn example_four_disk_diagram() -> (PlanarDiagram, Vec<Vec<usize>>) {
    // Disks: 0 = A (top left), 1 = B (center), 2 = C (top right),
    // 3 = D (bottom). Bands: 0: A-C x3 over the top, 1: A-B, 2: B-C,
    // 3: A-D, 4: D-C, 5/6: B-D doubled (opposite twists).
    let spec = DiskBandSpec {
        bands: vec![
            (0, 2, -3), // W-class 1
            (0, 1, 1),
            (1, 2, 1),
            (0, 3, 1),
            (3, 2, 1),
            (1, 3, 2),
            (1, 3, 2),
        ],
        rotations: vec![
            vec![(0, 0), (3, 0), (1, 0)],         // A: top band, down to D, in to B
            vec![(2, 0), (1, 1), (6, 0), (5, 0)], // B: to C, from A, down twice
            vec![(0, 1), (2, 1), (4, 1)],         // C
            vec![(4, 0), (5, 1), (6, 1), (3, 1)], // D
        ],
    };
    let (d, bands) = disk_band_diagram(&spec).expect("example diagram is planar");
    // Outer face: the white region flanked by exactly the bands {0, 3, 4}
    // (the outside of the triangle).
    let faces = d.plain_map().faces();
    let in_band = |dart: usize, band: &[usize]| band.contains(&(dart / 4));
    let outer_dart = (0..d.port_count())
        .find(|&p| {
            let orbit = &faces.faces[faces.face_of[p]];
            let touches = |b: usize| orbit.iter().any(|&q| in_band(q, &bands[b]));
            touches(0) && touches(3) && touches(4) && !touches(1) && !touches(2) && !touches(5) && !touches(6)
        })
        .expect("outer region of the example diagram");
    (d.with_outer_witness(outer_dart), bands)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::determinant;
    use num_bigint::BigInt;

    #[test]
    fn pretzel_from_spec() {
        // Two disks joined by three twist bands (2, 3, 5): determinant
        // |2*3 + 3*5 + 5*2| = 31.
        let spec = DiskBandSpec {
            bands: vec![(0, 1, 2), (0, 1, 3), (0, 1, 5)],
            rotations: vec![
                vec![(0, 0), (1, 0), (2, 0)],
                vec![(2, 1), (1, 1), (0, 1)],
            ],
        };
        let (d, bands) = disk_band_diagram(&spec).unwrap();
        assert_eq!(d.crossing_count(), 10);
        assert_eq!(bands[2].len(), 5);
        assert!(d.is_alternating());
        assert_eq!(determinant(&d).unwrap(), BigInt::from(31));
    }

    #[test]
    fn mixed_sign_pretzel() {
        let spec = DiskBandSpec {
            bands: vec![(0, 1, -2), (0, 1, 3)],
            rotations: vec![vec![(0, 0), (1, 0)], vec![(1, 1), (0, 1)]],
        };
        let (d, _) = disk_band_diagram(&spec).unwrap();
        // N(-1/2 + 1/3) has determinant |(-1)(3) + (1)(2)| = 1.
        assert_eq!(determinant(&d).unwrap(), BigInt::from(1));
    }

    #[test]
    fn example_diagram_shape() {
        let (d, bands) = example_four_disk_diagram();
        assert_eq!(d.crossing_count(), 11);
        assert_eq!(bands.len(), 7);
        assert!(!d.is_split());
        assert_eq!(determinant(&d).unwrap(), BigInt::from(64));
    }
}
