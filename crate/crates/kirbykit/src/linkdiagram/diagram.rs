use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::intalg::IntMatrix;

use super::planar::{PlanarData, PlanarError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("duplicate component id {0:?}")]
    DuplicateId(String),
    #[error("unknown component id {0:?}")]
    UnknownComponent(String),
    #[error("component {0:?} is dotted and carries no framing")]
    DottedHasNoFraming(String),
    #[error("linking number of a component with itself is undefined")]
    SelfLinking,
    #[error("planar/algebraic linking mismatch for pair ({0}, {1}): pd gives {2}, stored {3}")]
    LinkingMismatch(String, String, BigInt, BigInt),
    #[error(transparent)]
    Planar(#[from] PlanarError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HandleKind {
    /// Dotted circle: a 1-handle.
    Dotted,
    /// Framed knot: a 2-handle with integer framing.
    Framed(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub kind: HandleKind,
    /// Caller-asserted certificate that the component is unknotted in the
    /// boundary. Never inferred.
    pub unknot_certificate: bool,
}

impl Component {
    pub fn dotted(id: &str) -> Self {
        Component { id: id.to_string(), kind: HandleKind::Dotted, unknot_certificate: false }
    }

    pub fn framed(id: &str, f: i64) -> Self {
        Component {
            id: id.to_string(),
            kind: HandleKind::Framed(BigInt::from(f)),
            unknot_certificate: false,
        }
    }

    pub fn with_certificate(mut self) -> Self {
        self.unknot_certificate = true;
        self
    }

    pub fn is_dotted(&self) -> bool {
        matches!(self.kind, HandleKind::Dotted)
    }

    pub fn framing(&self) -> Option<&BigInt> {
        match &self.kind {
            HandleKind::Dotted => None,
            HandleKind::Framed(f) => Some(f),
        }
    }
}

/// How dotted circles enter the linking matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DottedAs {
    /// Dotted circle treated as a 0-framed surgery circle (for the boundary).
    Zero,
    /// Dotted circles dropped (for the 4-manifold itself: sigma, H2 data).
    Excluded,
}

/// A 4-manifold handlebody diagram: ordered components, symmetric pairwise
/// linking data, a 3-handle count, and optional planar data.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Diagram {
    components: Vec<Component>,
    lk: BTreeMap<(String, String), BigInt>,
    three_handles: u32,
    planar: Option<PlanarData>,
    planar_stale: bool,
    meta: BTreeMap<String, String>,
}

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl Diagram {
    pub fn new() -> Self {
        Diagram::default()
    }

    pub fn add_component(&mut self, c: Component) -> Result<(), DiagramError> {
        if self.index_of(&c.id).is_some() {
            return Err(DiagramError::DuplicateId(c.id));
        }
        self.components.push(c);
        Ok(())
    }

    /// Insert a component at a given position (clamped to the end).
    pub fn insert_component(&mut self, idx: usize, c: Component) -> Result<(), DiagramError> {
        if self.index_of(&c.id).is_some() {
            return Err(DiagramError::DuplicateId(c.id));
        }
        let idx = idx.min(self.components.len());
        self.components.insert(idx, c);
        Ok(())
    }

    pub fn remove_component(&mut self, id: &str) -> Result<Component, DiagramError> {
        let idx = self
            .index_of(id)
            .ok_or_else(|| DiagramError::UnknownComponent(id.to_string()))?;
        let c = self.components.remove(idx);
        self.lk.retain(|(a, b), _| a != id && b != id);
        if let Some(p) = &mut self.planar {
            p.remove_component(id);
        }
        Ok(c)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, id: &str) -> Result<&Component, DiagramError> {
        self.components
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| DiagramError::UnknownComponent(id.to_string()))
    }

    pub fn component_mut(&mut self, id: &str) -> Result<&mut Component, DiagramError> {
        self.components
            .iter_mut()
            .find(|c| c.id == id)
            .ok_or_else(|| DiagramError::UnknownComponent(id.to_string()))
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    /// A fresh component id of the form `e<k>` not used yet.
    pub fn fresh_id(&self) -> String {
        let mut k = 1;
        loop {
            let id = format!("e{k}");
            if self.index_of(&id).is_none() {
                return id;
            }
            k += 1;
        }
    }

    /// Stored algebraic linking number (0 when absent).
    pub fn lk(&self, a: &str, b: &str) -> BigInt {
        self.lk.get(&key(a, b)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set_lk(&mut self, a: &str, b: &str, v: BigInt) -> Result<(), DiagramError> {
        if a == b {
            return Err(DiagramError::SelfLinking);
        }
        self.component(a)?;
        self.component(b)?;
        if v.is_zero() {
            self.lk.remove(&key(a, b));
        } else {
            self.lk.insert(key(a, b), v);
        }
        Ok(())
    }

    pub fn add_lk(&mut self, a: &str, b: &str, delta: &BigInt) -> Result<(), DiagramError> {
        let v = self.lk(a, b) + delta;
        self.set_lk(a, b, v)
    }

    /// Nonzero linking entries in canonical (sorted-pair) order.
    pub fn lk_entries(&self) -> impl Iterator<Item = (&(String, String), &BigInt)> {
        self.lk.iter()
    }

    pub fn three_handles(&self) -> u32 {
        self.three_handles
    }

    pub fn set_three_handles(&mut self, n: u32) {
        self.three_handles = n;
    }

    pub fn planar(&self) -> Option<&PlanarData> {
        self.planar.as_ref()
    }

    pub fn set_planar(&mut self, p: Option<PlanarData>) {
        self.planar = p;
        self.planar_stale = false;
    }

    pub fn planar_is_stale(&self) -> bool {
        self.planar_stale
    }

    /// Moves call this: planar data no longer matches the algebraic layer.
    pub fn mark_planar_stale(&mut self) {
        if self.planar.is_some() {
            self.planar_stale = true;
        }
    }

    pub fn set_planar_stale(&mut self, stale: bool) {
        self.planar_stale = stale && self.planar.is_some();
    }

    /// Planar data usable for computations: present and not stale.
    pub fn fresh_planar(&self) -> Option<&PlanarData> {
        if self.planar_stale {
            None
        } else {
            self.planar.as_ref()
        }
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn set_meta(&mut self, k: &str, v: &str) {
        self.meta.insert(k.to_string(), v.to_string());
    }

    /// Linking number of two distinct components. Uses fresh planar data when
    /// both components carry crossings, otherwise the stored algebraic value.
    pub fn linking_number(&self, a: &str, b: &str) -> Result<BigInt, DiagramError> {
        if a == b {
            return Err(DiagramError::SelfLinking);
        }
        self.component(a)?;
        self.component(b)?;
        if let Some(p) = self.fresh_planar() {
            if p.has_component(a) && p.has_component(b) {
                return Ok(p.linking_number(a, b)?);
            }
        }
        Ok(self.lk(a, b))
    }

    /// The symmetric linking matrix: framings on the diagonal, linking numbers
    /// off it. Dotted circles enter with diagonal 0 or are excluded.
    pub fn linking_matrix(&self, dotted: DottedAs) -> IntMatrix {
        let selected: Vec<&Component> = self
            .components
            .iter()
            .filter(|c| match dotted {
                DottedAs::Zero => true,
                DottedAs::Excluded => !c.is_dotted(),
            })
            .collect();
        let n = selected.len();
        let mut m = IntMatrix::zero(n, n);
        for (i, c) in selected.iter().enumerate() {
            if let Some(f) = c.framing() {
                m[(i, i)] = f.clone();
            }
            for (j, d) in selected.iter().enumerate().skip(i + 1) {
                let v = self.lk(&c.id, &d.id);
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        m
    }

    /// The dotted-rows x framed-columns linking submatrix presenting H1 of
    /// the 4-manifold: generators are dotted circles, relations the windings
    /// of each 2-handle through each 1-handle.
    pub fn dotted_framed_matrix(&self) -> IntMatrix {
        let dotted: Vec<&Component> = self.components.iter().filter(|c| c.is_dotted()).collect();
        let framed: Vec<&Component> = self.components.iter().filter(|c| !c.is_dotted()).collect();
        let mut m = IntMatrix::zero(dotted.len(), framed.len());
        for (i, u) in dotted.iter().enumerate() {
            for (j, h) in framed.iter().enumerate() {
                m[(i, j)] = self.lk(&u.id, &h.id);
            }
        }
        m
    }

    pub fn dotted_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_dotted()).count()
    }

    pub fn framed_count(&self) -> usize {
        self.components.len() - self.dotted_count()
    }

    /// Full validation. Checks id uniqueness is maintained by construction;
    /// validates planar data and planar/algebraic linking coherence when the
    /// planar layer is present and fresh.
    pub fn validate(&self) -> Result<(), DiagramError> {
        for (i, c) in self.components.iter().enumerate() {
            if self.components[..i].iter().any(|d| d.id == c.id) {
                return Err(DiagramError::DuplicateId(c.id.clone()));
            }
        }
        for (a, b) in self.lk.keys() {
            self.component(a)?;
            self.component(b)?;
        }
        if let Some(p) = &self.planar {
            for id in p.component_ids() {
                self.component(id)?;
            }
            p.validate()?;
            if !self.planar_stale {
                let ids: Vec<&str> = p.component_ids().collect();
                for (i, a) in ids.iter().enumerate() {
                    for b in ids.iter().skip(i + 1) {
                        let from_pd = p.linking_number(a, b)?;
                        let stored = self.lk(a, b);
                        if from_pd != stored {
                            return Err(DiagramError::LinkingMismatch(
                                a.to_string(),
                                b.to_string(),
                                from_pd,
                                stored,
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}
