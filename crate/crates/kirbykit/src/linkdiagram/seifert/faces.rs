//! Faces of the diagram from its rotation system, and the incoherence test
//! that drives the braid-position normalization.

use std::collections::BTreeMap;

use super::knot::Knot;
use super::SeifertError;

/// A dart is (crossing index, slot 0..3) where slots are the PD tuple
/// positions (a, b, c, d) in counterclockwise order around the crossing.
pub type Dart = (usize, u8);

pub struct FaceData {
    /// faces as dart orbits
    pub faces: Vec<Vec<Dart>>,
    /// arc id -> Seifert circle index
    pub circle_of: BTreeMap<usize, usize>,
    /// number of Seifert circles
    pub n_circles: usize,
}

fn arc_at(k: &Knot, d: Dart) -> usize {
    let x = &k.crossings[d.0];
    match d.1 {
        0 => x.a,
        1 => x.b,
        2 => x.c,
        3 => x.d,
        _ => unreachable!(),
    }
}

/// True if the dart's slot is where the arc STARTS (leaves the crossing).
fn is_start(k: &Knot, d: Dart) -> bool {
    let x = &k.crossings[d.0];
    match d.1 {
        0 => false,          // incoming under
        2 => true,           // outgoing under
        1 => x.sign < 0,     // b is over-out for negative crossings
        3 => x.sign > 0,     // d is over-out for positive crossings
        _ => unreachable!(),
    }
}

pub fn face_data(k: &Knot) -> Result<FaceData, SeifertError> {
    let n = k.n();
    // other-end map: for each arc its start dart and end dart
    let mut start_of: BTreeMap<usize, Dart> = BTreeMap::new();
    let mut end_of: BTreeMap<usize, Dart> = BTreeMap::new();
    for (ci, _) in k.crossings.iter().enumerate() {
        for slot in 0..4u8 {
            let d = (ci, slot);
            let arc = arc_at(k, d);
            if is_start(k, d) {
                if start_of.insert(arc, d).is_some() {
                    return Err(SeifertError::BadDiagram(format!("arc {arc} starts twice")));
                }
            } else if end_of.insert(arc, d).is_some() {
                return Err(SeifertError::BadDiagram(format!("arc {arc} ends twice")));
            }
        }
    }
    // theta: jump to the other occurrence of the same arc
    let theta = |d: Dart| -> Dart {
        let arc = arc_at(k, d);
        if is_start(k, d) {
            end_of[&arc]
        } else {
            start_of[&arc]
        }
    };
    // faces = orbits of rho . theta with rho the CCW slot rotation
    let mut seen: BTreeMap<Dart, bool> = BTreeMap::new();
    let mut faces = Vec::new();
    for ci in 0..n {
        for slot in 0..4u8 {
            let start = (ci, slot);
            if seen.get(&start).copied().unwrap_or(false) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = start;
            loop {
                orbit.push(cur);
                seen.insert(cur, true);
                let t = theta(cur);
                cur = (t.0, (t.1 + 1) % 4);
                if cur == start {
                    break;
                }
            }
            faces.push(orbit);
        }
    }
    // Euler check: V - E + F = 2 for a planar connected diagram
    if n > 0 && faces.len() != n + 2 {
        return Err(SeifertError::BadDiagram(format!(
            "Euler check failed: {} crossings, {} faces",
            n,
            faces.len()
        )));
    }

    let circles = k.seifert_circles();
    let mut circle_of = BTreeMap::new();
    for (i, cyc) in circles.iter().enumerate() {
        for &arc in cyc {
            circle_of.insert(arc, i);
        }
    }
    Ok(FaceData { faces, circle_of, n_circles: circles.len() })
}

impl FaceData {
    /// Find a pair of darts in one face whose arcs lie on different Seifert
    /// circles and are like-oriented along the face walk. Such a pair admits
    /// a coherence-improving Reidemeister-II move; a diagram with no such
    /// pair has its Seifert circles coherently nested (braid position).
    pub fn find_defect(&self, k: &Knot) -> Option<(Dart, Dart)> {
        self.defects(k, 1).into_iter().next()
    }

    /// Up to `cap` defect pairs, scanning faces in order.
    pub fn defects(&self, k: &Knot, cap: usize) -> Vec<(Dart, Dart)> {
        let mut out = Vec::new();
        for face in &self.faces {
            for (i, &d1) in face.iter().enumerate() {
                for &d2 in face.iter().skip(i + 1) {
                    let a1 = arc_at(k, d1);
                    let a2 = arc_at(k, d2);
                    if a1 == a2 {
                        continue;
                    }
                    if self.circle_of[&a1] == self.circle_of[&a2] {
                        continue;
                    }
                    // the face walk leaves through a start-dart along the
                    // arc orientation, through an end-dart against it
                    if is_start(k, d1) == is_start(k, d2) {
                        out.push((d1, d2));
                        if out.len() >= cap {
                            return out;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn defect_count(&self, k: &Knot) -> usize {
        self.defects(k, usize::MAX).len()
    }

    pub fn arc_of_dart(&self, k: &Knot, d: Dart) -> usize {
        arc_at(k, d)
    }
}

pub fn dart_arc(k: &Knot, d: Dart) -> usize {
    arc_at(k, d)
}

#[cfg(test)]
mod tests {
    use super::super::knot::Knot;
    use super::*;
    use crate::linkdiagram::planar::{figure_eight_pd, trefoil_pd};

    #[test]
    fn trefoil_faces_and_coherence() {
        let k = Knot::from_pd(&trefoil_pd()).unwrap();
        let fd = face_data(&k).unwrap();
        assert_eq!(fd.faces.len(), 5);
        // the round trefoil diagram is already a closed braid
        assert!(fd.find_defect(&k).is_none());
    }

    #[test]
    fn figure_eight_faces() {
        // the standard figure-eight code is already coherent on the sphere
        let k = Knot::from_pd(&figure_eight_pd()).unwrap();
        let fd = face_data(&k).unwrap();
        assert_eq!(fd.faces.len(), 6);
        assert!(fd.find_defect(&k).is_none());
    }
}
