use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanarError {
    #[error("arc label {0} appears {1} times, expected exactly 2")]
    ArcCount(u32, usize),
    #[error("arc {0} has conflicting successors")]
    SuccessorConflict(u32),
    #[error("arc {0} has no successor")]
    NoSuccessor(u32),
    #[error("arc labels along a component are not consecutive: {0:?}")]
    NotConsecutive(Vec<u32>),
    #[error("arc cycle {0:?} cannot be attributed to a unique component")]
    AmbiguousCycle(Vec<u32>),
    #[error("component {0:?} has no planar data")]
    MissingComponent(String),
    #[error("component {0:?} under-crosses arcs of a cycle not its own")]
    CycleMismatch(String),
    #[error("crossing count inconsistency: {0} arcs for {1} crossings")]
    EulerCount(usize, usize),
    #[error("signed crossing sum between {0:?} and {1:?} is odd")]
    OddCrossingSum(String, String),
}

/// One PD crossing `X(a,b,c,d,sign)`: the four arc labels are read
/// counterclockwise starting from the incoming under-strand `a`; `c` is the
/// outgoing under-strand. For a positive crossing the over-strand runs
/// b -> d, for a negative one d -> b.
///
/// Sign convention: a crossing is positive when rotating the under-strand
/// direction counterclockwise by 90 degrees gives the over-strand direction
/// (right-handed crossing).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdCrossing {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub sign: i8,
}

impl PdCrossing {
    pub fn new(a: u32, b: u32, c: u32, d: u32, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "crossing sign must be ±1");
        PdCrossing { a, b, c, d, sign }
    }

    pub fn over_in(&self) -> u32 {
        if self.sign > 0 {
            self.b
        } else {
            self.d
        }
    }

    pub fn over_out(&self) -> u32 {
        if self.sign > 0 {
            self.d
        } else {
            self.b
        }
    }
}

/// Planar layer: per-component crossing lists. A crossing is stored under the
/// component whose strand passes UNDER at that crossing; every crossing of
/// the diagram appears exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PlanarData {
    crossings: BTreeMap<String, Vec<PdCrossing>>,
}

/// Derived combinatorial structure of a validated PD.
pub struct PdStructure {
    /// component id -> its arc labels in traversal order (lowest first).
    pub arcs_of: BTreeMap<String, Vec<u32>>,
    /// arc label -> owning component id.
    pub owner: BTreeMap<u32, String>,
    /// all crossings with their under-component id.
    pub crossings: Vec<(String, PdCrossing)>,
}

impl PdStructure {
    /// Successor of an arc along its component (consecutive labels, wrapping).
    pub fn next_arc(&self, arc: u32) -> u32 {
        let comp = &self.owner[&arc];
        let arcs = &self.arcs_of[comp];
        let lo = arcs[0];
        let hi = *arcs.last().unwrap();
        if arc == hi {
            lo
        } else {
            arc + 1
        }
    }

    pub fn over_component(&self, x: &PdCrossing) -> &str {
        &self.owner[&x.over_in()]
    }
}

impl PlanarData {
    pub fn new() -> Self {
        PlanarData::default()
    }

    /// Declare a component carrying planar data with the crossings where it
    /// is the under-strand (possibly none).
    pub fn insert_component(&mut self, id: &str, crossings: Vec<PdCrossing>) {
        self.crossings.insert(id.to_string(), crossings);
    }

    pub fn remove_component(&mut self, id: &str) {
        self.crossings.remove(id);
    }

    pub fn has_component(&self, id: &str) -> bool {
        self.crossings.contains_key(id)
    }

    pub fn component_ids(&self) -> impl Iterator<Item = &str> {
        self.crossings.keys().map(|s| s.as_str())
    }

    pub fn crossings_of(&self, id: &str) -> Option<&[PdCrossing]> {
        self.crossings.get(id).map(|v| v.as_slice())
    }

    pub fn all_crossings(&self) -> impl Iterator<Item = (&str, &PdCrossing)> {
        self.crossings
            .iter()
            .flat_map(|(id, v)| v.iter().map(move |x| (id.as_str(), x)))
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.values().map(|v| v.len()).sum()
    }

    /// Validate the PD layer and derive its combinatorial structure:
    /// - every arc label appears exactly twice;
    /// - the successor relation (under a->c, over by sign) is a permutation;
    /// - labels are consecutive along each cycle;
    /// - each cycle belongs to a unique declared component.
    pub fn structure(&self) -> Result<PdStructure, PlanarError> {
        let mut label_count: BTreeMap<u32, usize> = BTreeMap::new();
        let mut succ: BTreeMap<u32, u32> = BTreeMap::new();
        let mut pred: BTreeMap<u32, u32> = BTreeMap::new();
        let mut n_crossings = 0usize;

        let mut add_succ = |from: u32, to: u32| -> Result<(), PlanarError> {
            if succ.insert(from, to).is_some() {
                return Err(PlanarError::SuccessorConflict(from));
            }
            if pred.insert(to, from).is_some() {
                return Err(PlanarError::SuccessorConflict(to));
            }
            Ok(())
        };

        for (_, x) in self.all_crossings() {
            n_crossings += 1;
            for lbl in [x.a, x.b, x.c, x.d] {
                *label_count.entry(lbl).or_insert(0) += 1;
            }
            add_succ(x.a, x.c)?;
            add_succ(x.over_in(), x.over_out())?;
        }
        for (lbl, cnt) in &label_count {
            if *cnt != 2 {
                return Err(PlanarError::ArcCount(*lbl, *cnt));
            }
        }
        if label_count.len() != 2 * n_crossings {
            return Err(PlanarError::EulerCount(label_count.len(), n_crossings));
        }

        // trace cycles
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        for &start in label_count.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut cur = start;
            loop {
                let nxt = *succ.get(&cur).ok_or(PlanarError::NoSuccessor(cur))?;
                if nxt == start {
                    break;
                }
                if !seen.insert(nxt) {
                    return Err(PlanarError::SuccessorConflict(nxt));
                }
                cycle.push(nxt);
                cur = nxt;
            }
            cycles.push(cycle);
        }

        // consecutive labels along each cycle (single wrap at the maximum)
        for cycle in &cycles {
            let lo = *cycle.iter().min().unwrap();
            let start_pos = cycle.iter().position(|&x| x == lo).unwrap();
            for (k, idx) in (0..cycle.len()).enumerate() {
                let expect = lo + k as u32;
                if cycle[(start_pos + idx) % cycle.len()] != expect {
                    return Err(PlanarError::NotConsecutive(cycle.clone()));
                }
            }
        }

        // attribute cycles to components via under-arc evidence
        let mut cycle_of_arc: BTreeMap<u32, usize> = BTreeMap::new();
        for (ci, cycle) in cycles.iter().enumerate() {
            for &arc in cycle {
                cycle_of_arc.insert(arc, ci);
            }
        }
        let mut claimed: BTreeMap<usize, String> = BTreeMap::new();
        for (id, xs) in &self.crossings {
            for x in xs {
                let ci = cycle_of_arc[&x.a];
                match claimed.get(&ci) {
                    None => {
                        claimed.insert(ci, id.clone());
                    }
                    Some(owner) if owner == id => {}
                    Some(_) => return Err(PlanarError::CycleMismatch(id.clone())),
                }
            }
        }
        // a component may not own two cycles
        {
            let mut owners: BTreeSet<&String> = BTreeSet::new();
            for owner in claimed.values() {
                if !owners.insert(owner) {
                    return Err(PlanarError::CycleMismatch(owner.clone()));
                }
            }
        }
        // Cycles never passing under belong to components declared with an
        // empty crossing list (always-over strands). The match is only
        // determined when there is at most one such cycle.
        let unclaimed_cycles: Vec<usize> = (0..cycles.len())
            .filter(|ci| !claimed.contains_key(ci))
            .collect();
        if !unclaimed_cycles.is_empty() {
            let empty_comps: Vec<&String> = self
                .crossings
                .iter()
                .filter(|(id, xs)| xs.is_empty() && !claimed.values().any(|v| &v == id))
                .map(|(id, _)| id)
                .collect();
            if unclaimed_cycles.len() != 1 || empty_comps.len() != 1 {
                return Err(PlanarError::AmbiguousCycle(
                    cycles[unclaimed_cycles[0]].clone(),
                ));
            }
            claimed.insert(unclaimed_cycles[0], empty_comps[0].clone());
        }

        let mut arcs_of: BTreeMap<String, Vec<u32>> = BTreeMap::new();
        let mut owner: BTreeMap<u32, String> = BTreeMap::new();
        for (ci, id) in &claimed {
            let mut arcs = cycles[*ci].clone();
            arcs.sort_unstable();
            for &a in &arcs {
                owner.insert(a, id.clone());
            }
            arcs_of.insert(id.clone(), arcs);
        }
        for id in self.crossings.keys() {
            arcs_of.entry(id.clone()).or_default();
        }

        let crossings = self
            .all_crossings()
            .map(|(id, x)| (id.to_string(), *x))
            .collect();
        Ok(PdStructure { arcs_of, owner, crossings })
    }

    pub fn validate(&self) -> Result<(), PlanarError> {
        self.structure().map(|_| ())
    }

    /// Linking number of two components from the planar data: half the sum of
    /// signs of crossings between them.
    pub fn linking_number(&self, a: &str, b: &str) -> Result<BigInt, PlanarError> {
        let st = self.structure()?;
        if !self.has_component(a) {
            return Err(PlanarError::MissingComponent(a.to_string()));
        }
        if !self.has_component(b) {
            return Err(PlanarError::MissingComponent(b.to_string()));
        }
        let mut sum = 0i64;
        for (under, x) in &st.crossings {
            let over = st.over_component(x);
            if (under == a && over == b) || (under == b && over == a) {
                sum += x.sign as i64;
            }
        }
        if sum % 2 != 0 {
            return Err(PlanarError::OddCrossingSum(a.to_string(), b.to_string()));
        }
        Ok(BigInt::from(sum / 2))
    }

    /// Reverse the orientation of one component: relabel its arcs
    /// (x -> lo + hi - x), rotate crossings where it passes under, and flip
    /// the sign of every crossing it participates in (twice for
    /// self-crossings, leaving them unchanged).
    pub fn reverse_orientation(&self, id: &str) -> Result<PlanarData, PlanarError> {
        let st = self.structure()?;
        let arcs = st
            .arcs_of
            .get(id)
            .ok_or_else(|| PlanarError::MissingComponent(id.to_string()))?;
        if arcs.is_empty() {
            return Ok(self.clone());
        }
        let lo = arcs[0];
        let hi = *arcs.last().unwrap();
        let relabel = |x: u32| -> u32 {
            if x >= lo && x <= hi {
                lo + hi - x
            } else {
                x
            }
        };
        let mut out = PlanarData::new();
        for (under, xs) in &self.crossings {
            let mut new_xs = Vec::with_capacity(xs.len());
            for x in xs {
                let under_is = under == id;
                let over_is = st.over_component(x) == id;
                let mut t = [x.a, x.b, x.c, x.d];
                if under_is {
                    t = [t[2], t[3], t[0], t[1]];
                }
                let mut sign = x.sign;
                if under_is != over_is {
                    sign = -sign;
                }
                new_xs.push(PdCrossing::new(
                    relabel(t[0]),
                    relabel(t[1]),
                    relabel(t[2]),
                    relabel(t[3]),
                    sign,
                ));
            }
            out.insert_component(under, new_xs);
        }
        out.validate()?;
        Ok(out)
    }
}

/// PD code for the right-handed (positive) trefoil.
pub fn trefoil_pd() -> Vec<PdCrossing> {
    vec![
        PdCrossing::new(1, 4, 2, 5, 1),
        PdCrossing::new(3, 6, 4, 1, 1),
        PdCrossing::new(5, 2, 6, 3, 1),
    ]
}

/// PD code for the figure-eight knot.
pub fn figure_eight_pd() -> Vec<PdCrossing> {
    vec![
        PdCrossing::new(4, 2, 5, 1, -1),
        PdCrossing::new(8, 6, 1, 5, -1),
        PdCrossing::new(6, 3, 7, 4, 1),
        PdCrossing::new(2, 7, 3, 8, 1),
    ]
}

/// PD code for the positive Hopf link (components c1 = arcs {1,2},
/// c2 = arcs {3,4}); linking number +1.
pub fn hopf_pd() -> [(String, Vec<PdCrossing>); 2] {
    [
        ("c1".to_string(), vec![PdCrossing::new(1, 3, 2, 4, 1)]),
        ("c2".to_string(), vec![PdCrossing::new(4, 2, 3, 1, 1)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn knot(id: &str, xs: Vec<PdCrossing>) -> PlanarData {
        let mut p = PlanarData::new();
        p.insert_component(id, xs);
        p
    }

    #[test]
    fn trefoil_validates() {
        let p = knot("k", trefoil_pd());
        let st = p.structure().unwrap();
        assert_eq!(st.arcs_of["k"], vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(st.next_arc(6), 1);
    }

    #[test]
    fn figure_eight_validates() {
        let p = knot("k", figure_eight_pd());
        p.validate().unwrap();
    }

    #[test]
    fn hopf_linking() {
        let mut p = PlanarData::new();
        for (id, xs) in hopf_pd() {
            p.insert_component(&id, xs);
        }
        p.validate().unwrap();
        assert_eq!(p.linking_number("c1", "c2").unwrap(), BigInt::from(1));
    }

    #[test]
    fn hopf_reversed_negates_linking() {
        let mut p = PlanarData::new();
        for (id, xs) in hopf_pd() {
            p.insert_component(&id, xs);
        }
        let q = p.reverse_orientation("c1").unwrap();
        assert_eq!(q.linking_number("c1", "c2").unwrap(), BigInt::from(-1));
        let r = q.reverse_orientation("c1").unwrap();
        assert_eq!(r.linking_number("c1", "c2").unwrap(), BigInt::from(1));
    }

    #[test]
    fn knot_reversal_is_involutive() {
        let p = knot("k", figure_eight_pd());
        let q = p.reverse_orientation("k").unwrap();
        q.validate().unwrap();
        let r = q.reverse_orientation("k").unwrap();
        assert_eq!(p, r);
    }

    #[test]
    fn bad_arc_count_rejected() {
        let p = knot("k", vec![PdCrossing::new(1, 2, 3, 4, 1)]);
        assert!(matches!(p.validate(), Err(PlanarError::ArcCount(_, _))));
    }

    #[test]
    fn positive_kink_validates() {
        let p = knot("k", vec![PdCrossing::new(1, 2, 2, 1, 1)]);
        p.validate().unwrap();
        // wrong sign makes the successor relation collide
        let p = knot("k", vec![PdCrossing::new(1, 2, 2, 1, -1)]);
        assert!(p.validate().is_err());
    }
}
