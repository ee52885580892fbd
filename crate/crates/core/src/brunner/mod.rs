//! Checkerboard disk-band decompositions and group presentations of the
//! double branched cover: edge/region generators, local edge relations
//! `W = (R_l^{-1} R_r)^a`, global cycle relations from the connectivity
//! graph, and the vanishing relation for the unbounded region. The coarse
//! variant stores universal-range records as inert data.

pub mod build;
mod words;

pub use build::{disk_band_diagram, example_four_disk_diagram, DiskBandSpec};
pub use words::{
    family_rewrite_chain, licensed_commutations, rewrite_verify, Chain, ChainStep, ChainVerdict,
    Gen, Step, Word,
};

use crate::diagram::{DiagramError, PlanarDiagram};
use crate::exactalg::abelian_group_order;
use crate::expr::TangleExpr;
use crate::fraction::Fraction;
use crate::invariants::{checkerboard, InvariantError};
use crate::map::{CombMap, FaceId};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BrunnerError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{0}")]
    Invariant(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("presentation contains coarse records; abelianization is not defined for it")]
    CoarseNotAbelianizable,
    #[error("invalid presentation: {0}")]
    BadPresentation(String),
}

impl From<InvariantError> for BrunnerError {
    fn from(e: InvariantError) -> Self {
        BrunnerError::Invariant(e.to_string())
    }
}

/// A twisted band of the black checkerboard surface.
#[derive(Debug, Clone)]
pub struct Band {
    /// Crossings of the twist region, in chain order.
    pub crossings: Vec<usize>,
    /// Signed twist count (eta times length); never zero.
    pub label: i64,
    /// Endpoint disks (indices into `disks`), in the band's direction.
    pub from_disk: usize,
    pub to_disk: usize,
    /// Flanking white regions (indices into `regions`): left and right of
    /// the band's direction.
    pub left_region: usize,
    pub right_region: usize,
}

/// Maximal disk-band decomposition of the black checkerboard surface.
#[derive(Debug, Clone)]
pub struct DiskBandDecomposition {
    /// Disk faces (black), sorted; interior band bigons are absorbed into
    /// their bands.
    pub disks: Vec<FaceId>,
    pub bands: Vec<Band>,
    /// White faces; index 0 is the unbounded region.
    pub regions: Vec<FaceId>,
    /// For each disk, the cyclic order of band-end attachments around it:
    /// `(band index, end)` where end 0 = from, 1 = to.
    pub disk_rotations: Vec<Vec<(usize, u8)>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Relation {
    /// `W^{w_exp} = (R_left^{-1} R_right)^{exp}`
    LocalEdge { w: Gen, w_exp: i64, left: u32, right: u32, exp: i64 },
    /// `W` lies in the universal range `[P, Q]` of `R_left^{-1} R_right`
    /// (inert data; licenses the commutation of `W` with that element).
    LocalCoarse { w: Gen, left: u32, right: u32, range: (Fraction, Fraction) },
    /// The word equals 1 (an oriented boundary loop of the connectivity
    /// graph).
    GlobalCycle { word: Word },
    /// `R_region = 1` (the unbounded region).
    Vanishing { region: u32 },
}

#[derive(Debug, Clone)]
pub struct GroupPresentation {
    /// Edge/tangle generators in display order.
    pub edge_gens: Vec<Gen>,
    /// Region generators `R0..R_{n-1}`; `R0` is unbounded.
    pub n_regions: u32,
    pub relations: Vec<Relation>,
}

impl GroupPresentation {
    /// Every generator appears in some relation; exactly one vanishing.
    pub fn validate(&self) -> Result<(), BrunnerError> {
        let mut vanishing = 0;
        let mut seen: std::collections::HashSet<Gen> = Default::default();
        for rel in &self.relations {
            match rel {
                Relation::LocalEdge { w, left, right, .. }
                | Relation::LocalCoarse { w, left, right, .. } => {
                    seen.insert(*w);
                    seen.insert(Gen::R(*left));
                    seen.insert(Gen::R(*right));
                }
                Relation::GlobalCycle { word } => {
                    for (g, _) in &word.0 {
                        seen.insert(*g);
                    }
                }
                Relation::Vanishing { region } => {
                    vanishing += 1;
                    seen.insert(Gen::R(*region));
                }
            }
        }
        if vanishing != 1 {
            return Err(BrunnerError::BadPresentation(format!(
                "expected exactly one vanishing relation, found {vanishing}"
            )));
        }
        for w in &self.edge_gens {
            if !seen.contains(w) {
                return Err(BrunnerError::BadPresentation(format!("generator {w} unused")));
            }
        }
        for r in 0..self.n_regions {
            if !seen.contains(&Gen::R(r)) {
                return Err(BrunnerError::BadPresentation(format!("generator R{r} unused")));
            }
        }
        Ok(())
    }
}

/// Maximal disk-band decomposition of the black surface of a checkerboard
/// colored diagram (black = the color class not containing the unbounded
/// face).
pub fn disk_band(d: &PlanarDiagram) -> Result<DiskBandDecomposition, BrunnerError> {
    if !d.is_closed() {
        return Err(DiagramError::NotClosed.into());
    }
    if d.is_split() {
        return Err(DiagramError::SplitDiagram.into());
    }
    if d.crossing_count() == 0 {
        // A crossing-free unknot: one disk, no bands, the outer region.
        return Ok(DiskBandDecomposition {
            disks: vec![0],
            bands: vec![],
            regions: vec![1],
            disk_rotations: vec![vec![]],
        });
    }
    let faces = d.plain_map().faces();
    let coloring = checkerboard(d, &faces, false)?;

    let corner_faces = |ci: usize| -> [FaceId; 4] {
        let c = &d.crossings()[ci];
        std::array::from_fn(|i| faces.face_of[c.ports[i]])
    };
    // Black corner pair index and incidence sign per crossing.
    let black_pair = |ci: usize| -> Result<usize, BrunnerError> {
        let f = corner_faces(ci);
        match (coloring.is_white[f[0]], coloring.is_white[f[1]]) {
            (false, true) => Ok(0),
            (true, false) => Ok(1),
            _ => Err(BrunnerError::Decomposition(format!(
                "crossing {ci} has a monochrome corner pair"
            ))),
        }
    };
    let eta = |ci: usize| -> Result<i64, BrunnerError> {
        let white = 1 - black_pair(ci)?;
        let over = if d.crossings()[ci].sign == 1 { 1 } else { 0 };
        Ok(if white == over { 1 } else { -1 })
    };

    // Interior bigons: black faces of degree 2 linking two crossings of one
    // twist region. Chains of crossings connected through them form bands.
    let n = d.crossing_count();
    let mut chain_next: Vec<std::collections::BTreeMap<FaceId, usize>> = vec![Default::default(); n];
    let mut interior: Vec<bool> = vec![false; faces.faces.len()];
    for (fid, orbit) in faces.faces.iter().enumerate() {
        if coloring.is_white[fid] || orbit.len() != 2 {
            continue;
        }
        let c0 = orbit[0] / 4;
        let c1 = orbit[1] / 4;
        if c0 == c1 {
            continue; // a curl monogon partner; keep as a disk
        }
        interior[fid] = true;
        chain_next[c0].insert(fid, c1);
        chain_next[c1].insert(fid, c0);
    }
    // A cyclic all-bigon chain needs one bigon promoted back to a disk:
    // a chain whose bigon count equals its crossing count is a cycle.
    loop {
        let flood = |start: usize, chain_next: &Vec<std::collections::BTreeMap<FaceId, usize>>| {
            let mut members = vec![start];
            let mut bigons: Vec<FaceId> = Vec::new();
            let mut stack = vec![start];
            let mut seen = std::collections::BTreeSet::from([start]);
            while let Some(c) = stack.pop() {
                for (&f, &o) in &chain_next[c] {
                    if !bigons.contains(&f) {
                        bigons.push(f);
                    }
                    if seen.insert(o) {
                        members.push(o);
                        stack.push(o);
                    }
                }
            }
            (members, bigons)
        };
        let mut promoted = None;
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let (members, bigons) = flood(start, &chain_next);
            for &m in &members {
                seen[m] = true;
            }
            if !bigons.is_empty() && bigons.len() == members.len() {
                promoted = Some(*bigons.iter().min().unwrap());
                break;
            }
        }
        match promoted {
            Some(f) => {
                interior[f] = false;
                let orbit = &faces.faces[f];
                chain_next[orbit[0] / 4].remove(&f);
                chain_next[orbit[1] / 4].remove(&f);
            }
            None => break,
        }
    }

    // Group crossings into bands (simple chains) along interior bigons.
    let neighbors = |c: usize| -> Vec<usize> { chain_next[c].values().copied().collect() };
    let mut band_of = vec![usize::MAX; n];
    let mut band_members: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if band_of[start] != usize::MAX {
            continue;
        }
        let id = band_members.len();
        let mut members = vec![start];
        let mut stack = vec![start];
        band_of[start] = id;
        while let Some(c) = stack.pop() {
            for o in neighbors(c) {
                if band_of[o] == usize::MAX {
                    band_of[o] = id;
                    members.push(o);
                    stack.push(o);
                }
            }
        }
        // Order from a chain end.
        let end = members
            .iter()
            .copied()
            .find(|&c| neighbors(c).len() <= 1)
            .ok_or_else(|| BrunnerError::Decomposition("band chain is not a path".into()))?;
        let mut ordered = vec![end];
        let mut prev = usize::MAX;
        let mut cur = end;
        while let Some(next) = neighbors(cur).into_iter().find(|&c| c != prev) {
            ordered.push(next);
            prev = cur;
            cur = next;
        }
        if ordered.len() != members.len() {
            return Err(BrunnerError::Decomposition("band chain is not a path".into()));
        }
        band_members.push(ordered);
    }

    // Disks: black faces that are not interior bigons.
    let mut disks: Vec<FaceId> = (0..faces.faces.len())
        .filter(|&f| !coloring.is_white[f] && !interior[f])
        .collect();
    disks.sort_unstable();
    let disk_index: HashMap<FaceId, usize> = disks.iter().enumerate().map(|(i, &f)| (f, i)).collect();

    // Regions: white faces with the unbounded one first.
    let outer = coloring.outer;
    let mut regions: Vec<FaceId> = vec![outer];
    regions.extend(coloring.white_faces.iter().copied().filter(|&f| f != outer));
    let region_index: HashMap<FaceId, usize> =
        regions.iter().enumerate().map(|(i, &f)| (f, i)).collect();

    // Assemble bands: ends, flanks, label, direction.
    let mut bands = Vec::with_capacity(band_members.len());
    for members in &band_members {
        let first = members[0];
        let last = *members.last().unwrap();
        let sign = eta(first)?;
        for &c in members {
            if eta(c)? != sign {
                return Err(BrunnerError::Decomposition(
                    "twist region with inconsistent incidence signs".into(),
                ));
            }
        }
        // End disks: the non-interior black corner at each chain end.
        let end_disk = |c: usize| -> Result<FaceId, BrunnerError> {
            let b = black_pair(c)?;
            let f = corner_faces(c);
            let blacks = [f[b], f[(b + 2) % 4]];
            let ends: Vec<FaceId> =
                blacks.iter().copied().filter(|&x| !interior[x]).collect();
            ends.first().copied().ok_or_else(|| {
                BrunnerError::Decomposition("band chain with no end disk".into())
            })
        };
        // Direction (gauge): at the first crossing, from black corner b to
        // corner b+2; left flank is corner b+1, right flank corner b+3.
        let b = black_pair(first)?;
        let f = corner_faces(first);
        let (from_face, to_face) = if members.len() == 1 {
            (f[b], f[(b + 2) % 4])
        } else {
            // Chain: direction from the free end at `first` toward `last`.
            let towards_next = {
                // the interior bigon shared with the next crossing
                let next = members[1];
                let shared = chain_next[first]
                    .iter()
                    .find(|&(&face, &o)| interior[face] && o == next)
                    .map(|(&face, _)| face)
                    .ok_or_else(|| BrunnerError::Decomposition("broken chain".into()))?;
                shared
            };
            let free_end = if f[b] == towards_next { f[(b + 2) % 4] } else { f[b] };
            let last_disk = end_disk(last)?;
            (free_end, last_disk)
        };
        let (left_face, right_face) = {
            // Flanks taken at the first crossing, oriented by its local
            // black-corner direction; flip if the chain direction is the
            // reverse of the local one.
            let local_from = f[b];
            let (l, r) = (f[(b + 1) % 4], f[(b + 3) % 4]);
            if from_face == local_from || members.len() == 1 {
                (l, r)
            } else {
                (r, l)
            }
        };
        for &c in members {
            let wb = 1 - black_pair(c)?;
            let fc = corner_faces(c);
            let flank_set = [fc[wb], fc[(wb + 2) % 4]];
            if !flank_set.contains(&left_face) || !flank_set.contains(&right_face) {
                return Err(BrunnerError::Decomposition(
                    "band flanks change along the twist region".into(),
                ));
            }
        }
        bands.push(Band {
            crossings: members.clone(),
            label: sign * members.len() as i64,
            from_disk: disk_index[&from_face],
            to_disk: disk_index[&to_face],
            left_region: region_index[&left_face],
            right_region: region_index[&right_face],
        });
    }
    bands.sort_by_key(|b| b.crossings[0].min(*b.crossings.last().unwrap()));
    // Rebuild the crossing-to-band index after sorting.
    for (bi, band) in bands.iter().enumerate() {
        for &c in &band.crossings {
            band_of[c] = bi;
        }
    }

    // Rotation of band-ends around each disk, read off the disk's face
    // orbit: each dart at a crossing corner belonging to the disk is one
    // attachment.
    let mut disk_rotations: Vec<Vec<(usize, u8)>> = vec![Vec::new(); disks.len()];
    for (di, &face) in disks.iter().enumerate() {
        for &dart in &faces.faces[face] {
            let ci = dart / 4;
            if ci >= n {
                continue;
            }
            let Some(&bi) = band_of.get(ci).filter(|&&b| b != usize::MAX) else { continue };
            let band = &bands[bi];
            // Only chain-end crossings attach to disks.
            let is_from = band.crossings[0] == ci && disks[band.from_disk] == face;
            let is_to = *band.crossings.last().unwrap() == ci && disks[band.to_disk] == face;
            if is_from && is_to {
                // A one-crossing band or self-loop end seen twice: decide by
                // which corner this dart witnesses.
                let slot = dart % 4;
                let b = black_pair(ci)?;
                if slot == b {
                    disk_rotations[di].push((bi, 0));
                } else {
                    disk_rotations[di].push((bi, 1));
                }
            } else if is_from {
                disk_rotations[di].push((bi, 0));
            } else if is_to {
                disk_rotations[di].push((bi, 1));
            }
        }
    }

    // The edge orientation rule depends on the twist handedness: negative
    // bands point the other way (swapping their ends and flanks).
    for (bi, band) in bands.iter_mut().enumerate() {
        if band.label < 0 {
            std::mem::swap(&mut band.from_disk, &mut band.to_disk);
            std::mem::swap(&mut band.left_region, &mut band.right_region);
            band.crossings.reverse();
            for rot in disk_rotations.iter_mut() {
                for entry in rot.iter_mut() {
                    if entry.0 == bi {
                        entry.1 = 1 - entry.1;
                    }
                }
            }
        }
    }
    Ok(DiskBandDecomposition { disks, bands, regions, disk_rotations })
}

/// Connectivity-graph edge classes: one generator per connected disk pair.
fn band_classes(dec: &DiskBandDecomposition) -> Vec<Vec<usize>> {
    let mut classes: Vec<((usize, usize), Vec<usize>)> = Vec::new();
    for (bi, band) in dec.bands.iter().enumerate() {
        let key = (band.from_disk.min(band.to_disk), band.from_disk.max(band.to_disk));
        match classes.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(bi),
            None => classes.push((key, vec![bi])),
        }
    }
    classes.sort_by_key(|(_, v)| v[0]);
    classes.into_iter().map(|(_, v)| v).collect()
}

/// Brunner presentation of the double cover of a non-split closed diagram.
pub fn brunner_presentation(d: &PlanarDiagram) -> Result<GroupPresentation, BrunnerError> {
    let dec = disk_band(d)?;
    presentation_of_decomposition(&dec)
}

pub fn presentation_of_decomposition(
    dec: &DiskBandDecomposition,
) -> Result<GroupPresentation, BrunnerError> {
    let classes = band_classes(dec);
    let class_of: HashMap<usize, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(ci, v)| v.iter().map(move |&b| (b, ci)))
        .collect();
    let mut relations = Vec::new();

    // Local edge relations: one per band. A band whose direction opposes
    // its class representative contributes with left/right swapped.
    for (ci, members) in classes.iter().enumerate() {
        let w = Gen::W(ci as u32 + 1);
        let rep = &dec.bands[members[0]];
        for &bi in members {
            let band = &dec.bands[bi];
            let same_direction = (band.from_disk, band.to_disk) == (rep.from_disk, rep.to_disk);
            let (l, r) = if same_direction {
                (band.left_region, band.right_region)
            } else {
                (band.right_region, band.left_region)
            };
            relations.push(Relation::LocalEdge {
                w,
                w_exp: 1,
                left: l as u32,
                right: r as u32,
                exp: band.label,
            });
        }
    }

    // Global cycle relations: bounded faces of the connectivity graph,
    // embedded by keeping one representative band per class.
    let representative: Vec<usize> = classes.iter().map(|v| v[0]).collect();
    let keep: std::collections::HashSet<usize> = representative.iter().copied().collect();
    // Build a map whose vertices are disks; each kept band is an edge with
    // two ports (from-end, to-end), placed per the disk rotations.
    let mut port_ids: HashMap<(usize, u8), usize> = HashMap::new();
    let mut rotations: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for rot in &dec.disk_rotations {
        let mut r = Vec::new();
        for &(bi, end) in rot {
            if keep.contains(&bi) {
                port_ids.insert((bi, end), next);
                r.push(next);
                next += 1;
            }
        }
        rotations.push(r);
    }
    let pairs: Vec<(usize, usize)> = representative
        .iter()
        .map(|&bi| (port_ids[&(bi, 0)], port_ids[&(bi, 1)]))
        .collect();
    if next > 0 {
        let gmap = CombMap::new(rotations, &pairs);
        let gfaces = gmap.faces();
        // The outer face of the connectivity graph: the orbit containing
        // a dart flanked by the unbounded region. Band side regions flank
        // the corresponding graph faces.
        let port_to_band: HashMap<usize, (usize, u8)> =
            port_ids.iter().map(|(&k, &v)| (v, k)).collect();
        let outer_orbit = gfaces
            .faces
            .iter()
            .position(|orbit| {
                orbit.iter().any(|&p| {
                    let (bi, end) = port_to_band[&p];
                    let band = &dec.bands[bi];
                    // The face traced on the dart's left is the band's
                    // right-adjacent region (oriented edges carry their
                    // right-adjacent region along the face walk).
                    let side = if end == 0 { band.right_region } else { band.left_region };
                    side == 0
                })
            })
            .unwrap_or(usize::MAX);
        for (fid, orbit) in gfaces.faces.iter().enumerate() {
            if fid == outer_orbit {
                continue;
            }
            // Traverse the face; each dart contributes W^{+1} when walked
            // against the band's direction (the boundary keeps the region
            // on its left while oriented edges carry their right-adjacent
            // region). The relation word is read right-to-left (earliest
            // edge rightmost).
            let mut letters = Vec::new();
            for &p in orbit {
                let (bi, end) = port_to_band[&p];
                let class = class_of[&bi];
                let exp: i8 = if end == 0 { -1 } else { 1 };
                letters.push((Gen::W(class as u32 + 1), exp));
            }
            letters.reverse();
            relations.push(Relation::GlobalCycle { word: Word(letters) });
        }
    }

    relations.push(Relation::Vanishing { region: 0 });
    let pres = GroupPresentation {
        edge_gens: (1..=classes.len() as u32).map(Gen::W).collect(),
        n_regions: dec.regions.len() as u32,
        relations,
    };
    pres.validate()?;
    Ok(pres)
}

/// The coarse presentation of the family link `n(-p/(p+q) + tau(T))`: five
/// tangle generators, three bounded regions, the three boundary cycles,
/// the exact local relations including `W1^p = R1^{p+q}`, and inert
/// universal-range records for the uppermost path of the tangle subgraph.
pub fn coarse_family_presentation(
    t: &TangleExpr,
    p: i64,
    q: i64,
) -> Result<GroupPresentation, BrunnerError> {
    crate::invariants::check_family_slope(p, q)
        .map_err(|e| BrunnerError::Invariant(e.to_string()))?;
    // A top-level encirclement is unwrapped; the tangle subgraph is T's.
    let t = match t {
        TangleExpr::Encircle(inner) => &**inner,
        other => other,
    };
    let td = crate::diagram::synthesize(t)?;
    let k = top_path_length(&td)?;
    let mut relations = vec![
        Relation::LocalEdge { w: Gen::W(1), w_exp: p, left: 0, right: 1, exp: p + q },
        Relation::LocalEdge { w: Gen::W(2), w_exp: 1, left: 2, right: 1, exp: 1 },
        Relation::LocalEdge { w: Gen::W(3), w_exp: 1, left: 3, right: 1, exp: 1 },
        Relation::LocalEdge { w: Gen::W(4), w_exp: 1, left: 0, right: 2, exp: 1 },
        Relation::LocalEdge { w: Gen::W(5), w_exp: 1, left: 0, right: 3, exp: 1 },
    ];
    let cycle = |letters: &[(u32, i8)]| Relation::GlobalCycle {
        word: Word(letters.iter().map(|&(i, e)| (Gen::W(i), e)).collect()),
    };
    relations.push(cycle(&[(1, -1), (2, 1), (3, 1)]));
    relations.push(cycle(&[(5, -1), (4, -1), (2, 1), (3, 1)]));
    relations.push(cycle(&[(1, -1), (4, 1), (5, 1)]));
    // Universal-range records for the elementary tangle parts E_k..E_1 along
    // the top of the tangle subgraph; each part is a single negative
    // crossing, whose range degenerates to the exact point -1/f = 1.
    let one = Fraction::integer(1);
    for i in (1..=k).rev() {
        relations.push(Relation::LocalCoarse {
            w: Gen::E(i as u32),
            left: 3,
            right: 2,
            range: (one.clone(), one.clone()),
        });
    }
    relations.push(Relation::Vanishing { region: 0 });
    let mut edge_gens: Vec<Gen> = (1..=5).map(Gen::W).collect();
    edge_gens.extend((1..=k as u32).map(Gen::E));
    let pres = GroupPresentation { edge_gens, n_regions: 4, relations };
    pres.validate()?;
    // Derived consequence check: W1 = W2 W3 = W4 W5 by cycle substitution.
    verify_product_consequence(&pres)?;
    Ok(pres)
}

/// Crossings met along the strand entering at NW before it leaves the
/// tangle: the length of the uppermost path of the tangle subgraph.
fn top_path_length(td: &PlanarDiagram) -> Result<usize, BrunnerError> {
    let crate::diagram::Boundary::Tangle { nw, .. } = td.boundary() else {
        return Err(BrunnerError::Invariant("need a tangle diagram".into()));
    };
    let mut count = 0;
    let mut port = td.partner(nw);
    let corner_base = 4 * td.crossing_count();
    while port < corner_base {
        count += 1;
        let c = port / 4;
        let slot = port % 4;
        let out = 4 * c + (slot + 2) % 4;
        port = td.partner(out);
    }
    Ok(count)
}

/// Check `W1 = W2 W3 = W4 W5` by explicit rewriting from the cycles.
fn verify_product_consequence(pres: &GroupPresentation) -> Result<(), BrunnerError> {
    let (c1, c3) = (5usize, 7usize); // indices of the first/third cycle
    for (cycle, a, b) in [(c1, Gen::W(2), Gen::W(3)), (c3, Gen::W(4), Gen::W(5))] {
        let chain = Chain {
            start: Word(vec![(Gen::W(1), 1)]),
            steps: vec![ChainStep {
                to: Word(vec![(a, 1), (b, 1)]),
                just: Step::Relation(cycle),
            }],
        };
        if rewrite_verify(pres, &chain) != ChainVerdict::Valid {
            return Err(BrunnerError::BadPresentation(
                "cycle consequence W1 = W2W3 = W4W5 failed".into(),
            ));
        }
    }
    Ok(())
}

/// Order of the abelianized group, or 0 when infinite. Coarse records are
/// rejected.
pub fn abelianization_order(pres: &GroupPresentation) -> Result<BigInt, BrunnerError> {
    if pres.relations.iter().any(|r| matches!(r, Relation::LocalCoarse { .. })) {
        return Err(BrunnerError::CoarseNotAbelianizable);
    }
    // Column layout: edge generators then regions R0..R_{n-1}.
    let col_of = |g: Gen, edge_gens: &[Gen], n_regions: u32| -> Option<usize> {
        match g {
            Gen::R(i) if i < n_regions => Some(edge_gens.len() + i as usize),
            g => edge_gens.iter().position(|&h| h == g),
        }
    };
    let n_cols = pres.edge_gens.len() + pres.n_regions as usize;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let row = |entries: Vec<(Gen, i64)>| -> Result<Vec<BigInt>, BrunnerError> {
        let mut r = vec![BigInt::from(0); n_cols];
        for (g, coeff) in entries {
            let c = col_of(g, &pres.edge_gens, pres.n_regions)
                .ok_or_else(|| BrunnerError::BadPresentation(format!("unknown generator {g}")))?;
            r[c] += coeff;
        }
        Ok(r)
    };
    for rel in &pres.relations {
        match rel {
            Relation::LocalEdge { w, w_exp, left, right, exp } => {
                rows.push(row(vec![
                    (*w, *w_exp),
                    (Gen::R(*left), *exp),
                    (Gen::R(*right), -*exp),
                ])?);
            }
            Relation::GlobalCycle { word } => {
                rows.push(row(word.0.iter().map(|&(g, e)| (g, e as i64)).collect())?);
            }
            Relation::Vanishing { region } => {
                rows.push(row(vec![(Gen::R(*region), 1)])?);
            }
            Relation::LocalCoarse { .. } => unreachable!(),
        }
    }
    Ok(abelian_group_order(&rows, n_cols))
}

// --- output formats -------------------------------------------------------

impl Relation {
    fn display_word(&self) -> String {
        match self {
            Relation::LocalEdge { w, w_exp, left, right, exp } => {
                let lhs = Word::power(*w, *w_exp);
                let rhs = words::region_pair_power(*left, *right, *exp);
                format!("{lhs} = {}", rhs)
            }
            Relation::LocalCoarse { w, left, right, range } => {
                let h = words::region_pair_power(*left, *right, 1);
                format!("{w} in [[{}, {}]] over {h}", range.0, range.1)
            }
            Relation::GlobalCycle { word } => format!("{word} = 1"),
            Relation::Vanishing { region } => format!("R{region} = 1"),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Relation::LocalEdge { w, w_exp, left, right, exp } => json!({
                "kind": "local-edge", "w": w.to_string(), "w_exp": w_exp,
                "left": format!("R{left}"), "right": format!("R{right}"), "exp": exp,
            }),
            Relation::LocalCoarse { w, left, right, range } => json!({
                "kind": "local-coarse", "w": w.to_string(),
                "left": format!("R{left}"), "right": format!("R{right}"),
                "range": [range.0.to_string(), range.1.to_string()],
            }),
            Relation::GlobalCycle { word } => json!({
                "kind": "global-cycle", "word": word.to_json(),
            }),
            Relation::Vanishing { region } => json!({
                "kind": "vanishing", "region": format!("R{region}"),
            }),
        }
    }
}

impl GroupPresentation {
    /// Human-readable block: generators, then one relation per line.
    pub fn display_text(&self) -> String {
        let mut out = String::new();
        let gens: Vec<String> = self
            .edge_gens
            .iter()
            .map(|g| g.to_string())
            .chain((0..self.n_regions).map(|r| format!("R{r}")))
            .collect();
        out.push_str(&format!("generators: {}\n", gens.join(" ")));
        for rel in &self.relations {
            out.push_str(&format!("  {}\n", rel.display_word()));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "edge_generators": self.edge_gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "regions": (0..self.n_regions).map(|r| format!("R{r}")).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    }

    /// Generators/relators text consumable by computational group theory
    /// tools; coarse records are emitted as comments.
    pub fn display_gap_like(&self) -> String {
        let mut gens: Vec<String> = self.edge_gens.iter().map(|g| g.to_string()).collect();
        gens.extend((0..self.n_regions).map(|r| format!("R{r}")));
        let mut out = String::new();
        out.push_str(&format!(
            "F := FreeGroup({});\n",
            gens.iter().map(|g| format!("\"{g}\"")).collect::<Vec<_>>().join(", ")
        ));
        let mut relators = Vec::new();
        for rel in &self.relations {
            match rel {
                Relation::LocalEdge { w, w_exp, left, right, exp } => {
                    let lhs = Word::power(*w, *w_exp);
                    let rhs = words::region_pair_power(*left, *right, *exp);
                    relators.push(format!(
                        "{} * ({})^-1",
                        gap_word(&lhs),
                        gap_word(&rhs)
                    ));
                }
                Relation::GlobalCycle { word } => relators.push(gap_word(word)),
                Relation::Vanishing { region } => relators.push(format!("R{region}")),
                Relation::LocalCoarse { .. } => {
                    out.push_str(&format!("# coarse: {}\n", rel.display_word()));
                }
            }
        }
        out.push_str(&format!("relators := [ {} ];\n", relators.join(", ")));
        out
    }
}

fn gap_word(w: &Word) -> String {
    if w.is_empty() {
        return "One(F)".into();
    }
    w.0.iter()
        .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^-1") })
        .collect::<Vec<_>>()
        .join(" * ")
}

// --- presentation comparison -----------------------------------------------

/// Normalize the orientation gauge (each edge generator's first local
/// relation gets `left < right`; flipping inverts its letters in cycle
/// words) and collapse the relations to a sorted multiset of strings, with
/// cycle words canonicalized up to rotation and inversion.
pub fn canonical_multiset(pres: &GroupPresentation) -> Vec<String> {
    // Display form first: negative twists written with the regions swapped
    // (the same relation word), then a gauge flip per generator.
    let display = |l: u32, r: u32, e: i64| if e < 0 { (r, l, -e) } else { (l, r, e) };
    let mut flip: HashMap<Gen, bool> = Default::default();
    for rel in &pres.relations {
        if let Relation::LocalEdge { w, left, right, exp, .. } = rel {
            let (l, r, _) = display(*left, *right, *exp);
            flip.entry(*w).or_insert(l > r);
        }
    }
    let mut out = Vec::new();
    for rel in &pres.relations {
        match rel {
            Relation::LocalEdge { w, w_exp, left, right, exp } => {
                let (l, r, exp) = display(*left, *right, *exp);
                let (l, r) = if flip[w] { (r, l) } else { (l, r) };
                out.push(format!("local {w}^{w_exp} ({l},{r})^{exp}"));
            }
            Relation::GlobalCycle { word } => {
                let letters: Vec<(Gen, i8)> = word
                    .0
                    .iter()
                    .map(|&(g, e)| (g, if *flip.get(&g).unwrap_or(&false) { -e } else { e }))
                    .collect();
                let w = Word(letters);
                let mut best: Option<String> = None;
                for cand in [w.clone(), w.inverse()] {
                    for k in 0..cand.len().max(1) {
                        let rotated: Vec<(Gen, i8)> =
                            cand.0.iter().cycle().skip(k).take(cand.len()).copied().collect();
                        let s = Word(rotated).to_string();
                        if best.as_ref().is_none_or(|b| s < *b) {
                            best = Some(s);
                        }
                    }
                }
                out.push(format!("cycle {}", best.unwrap_or_default()));
            }
            Relation::Vanishing { region } => out.push(format!("vanish R{region}")),
            Relation::LocalCoarse { w, left, right, range } => {
                out.push(format!("coarse {w} ({left},{right}) [{},{}]", range.0, range.1))
            }
        }
    }
    out.sort();
    out
}

fn permute<T: Clone>(items: &mut Vec<T>, k: usize, f: &mut impl FnMut(&[T]) -> bool) -> bool {
    if k == items.len() {
        return f(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permute(items, k + 1, f) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}

fn relabel(pres: &GroupPresentation, w_perm: &[usize], r_perm: &[u32]) -> GroupPresentation {
    let map_w = |g: Gen| -> Gen {
        match g {
            Gen::W(i) => Gen::W(w_perm[(i - 1) as usize] as u32 + 1),
            other => other,
        }
    };
    let map_r = |r: u32| -> u32 {
        if r == 0 {
            0
        } else {
            r_perm[(r - 1) as usize]
        }
    };
    let relations = pres
        .relations
        .iter()
        .map(|rel| match rel {
            Relation::LocalEdge { w, w_exp, left, right, exp } => Relation::LocalEdge {
                w: map_w(*w),
                w_exp: *w_exp,
                left: map_r(*left),
                right: map_r(*right),
                exp: *exp,
            },
            Relation::LocalCoarse { w, left, right, range } => Relation::LocalCoarse {
                w: map_w(*w),
                left: map_r(*left),
                right: map_r(*right),
                range: range.clone(),
            },
            Relation::GlobalCycle { word } => Relation::GlobalCycle {
                word: Word(word.0.iter().map(|&(g, e)| (map_w(g), e)).collect()),
            },
            Relation::Vanishing { region } => Relation::Vanishing { region: map_r(*region) },
        })
        .collect();
    GroupPresentation { edge_gens: pres.edge_gens.clone(), n_regions: pres.n_regions, relations }
}

/// Relation-multiset isomorphism under relabeling of edge generators and
/// bounded regions (the unbounded region stays pinned), with orientation
/// gauges normalized on both sides.
pub fn presentations_isomorphic(a: &GroupPresentation, b: &GroupPresentation) -> bool {
    if a.edge_gens.len() != b.edge_gens.len() || a.n_regions != b.n_regions {
        return false;
    }
    let w_perm: Vec<usize> = (0..a.edge_gens.len()).collect();
    let target = canonical_multiset(b);
    permute(&mut w_perm.clone(), 0, &mut |wp: &[usize]| {
        let wp = wp.to_vec();
        let r_perm: Vec<u32> = (1..a.n_regions).collect();
        permute(&mut r_perm.clone(), 0, &mut |rp: &[u32]| {
            canonical_multiset(&relabel(a, &wp, rp)) == target
        })
    })
}

#[cfg(test)]
mod tests;
