use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linkdiagram::{Component, Diagram, DiagramError, HandleKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("component {0:?} is dotted; a 2-handle is required")]
    NeedsFramed(String),
    #[error("component {0:?} is framed; a dotted circle is required")]
    NeedsDotted(String),
    #[error("blow-down needs framing ±1, {0:?} has {1}")]
    NeedsUnitFraming(String, BigInt),
    #[error("missing unknot certificate on {0:?}")]
    MissingCertificate(String),
    #[error("cancellation requires |lk({0}, {1})| = 1, found {2}")]
    NotCancelling(String, String, BigInt),
    #[error("component {0:?} still links the dotted circle {1:?}")]
    ResidualLinking(String, String),
    #[error("2/3-cancellation requires framing 0 on {0:?}, found {1}")]
    NeedsZeroFraming(String, BigInt),
    #[error("2/3-cancellation requires {0:?} to be unlinked, lk with {1:?} is {2}")]
    NotUnlinked(String, String, BigInt),
    #[error("no 3-handle available to cancel")]
    NoThreeHandle,
    #[error("cannot slide a component over itself")]
    SelfSlide,
    #[error("twist sign must be ±1, got {0}")]
    BadSign(i8),
}

/// Signed strand multiplicities through a twist region, keyed by component id.
/// Components not mentioned carry multiplicity 0.
pub type Multiplicities = BTreeMap<String, BigInt>;

fn mult<'a>(m: &'a Multiplicities, id: &str) -> BigInt {
    m.get(id).cloned().unwrap_or_else(BigInt::zero)
}

/// Full twist of sign eps on the strands through a region:
/// f_i += eps * m_i^2 and lk(i, j) += eps * m_i * m_j.
pub fn twist_region(d: &Diagram, eps: i8, m: &Multiplicities) -> Result<Diagram, MoveError> {
    if eps != 1 && eps != -1 {
        return Err(MoveError::BadSign(eps));
    }
    for id in m.keys() {
        d.component(id)?;
    }
    let eps = BigInt::from(eps);
    let mut out = d.clone();
    let ids: Vec<String> = d.components().iter().map(|c| c.id.clone()).collect();
    for (i, a) in ids.iter().enumerate() {
        let ma = mult(m, a);
        if ma.is_zero() {
            continue;
        }
        if let HandleKind::Framed(f) = &d.component(a)?.kind {
            let nf = f + &eps * &ma * &ma;
            out.component_mut(a)?.kind = HandleKind::Framed(nf);
        }
        for b in ids.iter().skip(i + 1) {
            let mb = mult(m, b);
            if mb.is_zero() {
                continue;
            }
            out.add_lk(a, b, &(&eps * &ma * &mb))?;
        }
    }
    out.mark_planar_stale();
    Ok(out)
}

/// Blow up: add a new ±1-framed certified unknot encircling the strands
/// given by `m`, twisting everything passing through it. Returns the new
/// diagram and the id of the added component.
pub fn blow_up(
    d: &Diagram,
    eps: i8,
    m: &Multiplicities,
    id: Option<&str>,
) -> Result<(Diagram, String), MoveError> {
    if eps != 1 && eps != -1 {
        return Err(MoveError::BadSign(eps));
    }
    for cid in m.keys() {
        d.component(cid)?;
    }
    let mut out = twist_region(d, eps, m)?;
    let new_id = match id {
        Some(s) => s.to_string(),
        None => out.fresh_id(),
    };
    out.add_component(
        Component {
            id: new_id.clone(),
            kind: HandleKind::Framed(BigInt::from(eps)),
            unknot_certificate: true,
        },
    )?;
    for (cid, v) in m {
        out.set_lk(&new_id, cid, v.clone())?;
    }
    out.mark_planar_stale();
    Ok((out, new_id))
}

/// Blow down a ±1-framed certified unknot: remove it and untwist the strands
/// through it (f_i -= eps * l_i^2, lk(i,j) -= eps * l_i * l_j).
pub fn blow_down(d: &Diagram, e: &str) -> Result<Diagram, MoveError> {
    let comp = d.component(e)?;
    let eps = match comp.framing() {
        Some(f) if f.abs().is_one() => {
            if f.is_positive() {
                1i8
            } else {
                -1i8
            }
        }
        Some(f) => return Err(MoveError::NeedsUnitFraming(e.to_string(), f.clone())),
        None => return Err(MoveError::NeedsFramed(e.to_string())),
    };
    if !comp.unknot_certificate {
        return Err(MoveError::MissingCertificate(e.to_string()));
    }
    let mut strands = Multiplicities::new();
    for c in d.components() {
        if c.id != e {
            let l = d.lk(e, &c.id);
            if !l.is_zero() {
                strands.insert(c.id.clone(), l);
            }
        }
    }
    let mut out = twist_region(d, -eps, &strands)?;
    out.remove_component(e)?;
    out.mark_planar_stale();
    Ok(out)
}

/// Slide component `i` over the framed component `j` with sign s:
/// L' = E^T L E with E the elementary matrix adding column j to column i
/// s times.
pub fn handle_slide(d: &Diagram, i: &str, j: &str, s: i8) -> Result<Diagram, MoveError> {
    if s != 1 && s != -1 {
        return Err(MoveError::BadSign(s));
    }
    if i == j {
        return Err(MoveError::SelfSlide);
    }
    let ci = d.component(i)?;
    let cj = d.component(j)?;
    let fj = match cj.framing() {
        Some(f) => f.clone(),
        None => return Err(MoveError::NeedsFramed(j.to_string())),
    };
    let fi = match ci.framing() {
        Some(f) => f.clone(),
        None => return Err(MoveError::NeedsFramed(i.to_string())),
    };
    let s = BigInt::from(s);
    let lk_ij = d.lk(i, j);
    let mut out = d.clone();
    out.component_mut(i)?.kind =
        HandleKind::Framed(&fi + &fj + BigInt::from(2) * &s * &lk_ij);
    for c in d.components() {
        let k = &c.id;
        if k == i || k == j {
            continue;
        }
        let delta = &s * d.lk(j, k);
        out.add_lk(i, k, &delta)?;
    }
    out.set_lk(i, j, &lk_ij + &s * &fj)?;
    out.mark_planar_stale();
    Ok(out)
}

/// Cancel a dotted/framed pair: |lk(u, h)| = 1 and no other component may
/// link the dotted circle. The caller asserts geometric cancellation.
pub fn cancel_12(d: &Diagram, u: &str, h: &str) -> Result<Diagram, MoveError> {
    let cu = d.component(u)?;
    let ch = d.component(h)?;
    if !cu.is_dotted() {
        return Err(MoveError::NeedsDotted(u.to_string()));
    }
    if ch.is_dotted() {
        return Err(MoveError::NeedsFramed(h.to_string()));
    }
    let l = d.lk(u, h);
    if !l.abs().is_one() {
        return Err(MoveError::NotCancelling(u.to_string(), h.to_string(), l));
    }
    for c in d.components() {
        if c.id != u && c.id != h && !d.lk(&c.id, u).is_zero() {
            return Err(MoveError::ResidualLinking(c.id.clone(), u.to_string()));
        }
    }
    let mut out = d.clone();
    out.remove_component(u)?;
    out.remove_component(h)?;
    out.mark_planar_stale();
    Ok(out)
}

/// Attach a cancelling 2/3-pair: a new 0-framed 2-handle along the certified
/// unknot delta (with the given linking data) plus one 3-handle.
pub fn add_23_pair(
    d: &Diagram,
    delta_id: Option<&str>,
    linking: &Multiplicities,
) -> Result<(Diagram, String), MoveError> {
    for cid in linking.keys() {
        d.component(cid)?;
    }
    let mut out = d.clone();
    let id = match delta_id {
        Some(s) => s.to_string(),
        None => out.fresh_id(),
    };
    out.add_component(
        Component {
            id: id.clone(),
            kind: HandleKind::Framed(BigInt::zero()),
            unknot_certificate: true,
        },
    )?;
    for (cid, v) in linking {
        out.set_lk(&id, cid, v.clone())?;
    }
    out.set_three_handles(out.three_handles() + 1);
    out.mark_planar_stale();
    Ok((out, id))
}

/// Cancel a 0-framed certified unknot against a 3-handle. The curve must be
/// algebraically unlinked from everything.
pub fn cancel_23(d: &Diagram, e: &str) -> Result<Diagram, MoveError> {
    let c = d.component(e)?;
    match c.framing() {
        Some(f) if f.is_zero() => {}
        Some(f) => return Err(MoveError::NeedsZeroFraming(e.to_string(), f.clone())),
        None => return Err(MoveError::NeedsFramed(e.to_string())),
    }
    if !c.unknot_certificate {
        return Err(MoveError::MissingCertificate(e.to_string()));
    }
    for other in d.components() {
        if other.id != e {
            let l = d.lk(e, &other.id);
            if !l.is_zero() {
                return Err(MoveError::NotUnlinked(e.to_string(), other.id.clone(), l));
            }
        }
    }
    if d.three_handles() == 0 {
        return Err(MoveError::NoThreeHandle);
    }
    let mut out = d.clone();
    out.remove_component(e)?;
    out.set_three_handles(out.three_handles() - 1);
    out.mark_planar_stale();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiagram::DottedAs;

    fn m(pairs: &[(&str, i64)]) -> Multiplicities {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), BigInt::from(*v)))
            .collect()
    }

    fn framed(id: &str, f: i64) -> Component {
        Component::framed(id, f)
    }

    #[test]
    fn twist_single_strand() {
        let mut d = Diagram::new();
        d.add_component(framed("c1", 0)).unwrap();
        let t = twist_region(&d, 1, &m(&[("c1", 1)])).unwrap();
        assert_eq!(t.component("c1").unwrap().framing().unwrap(), &BigInt::from(1));
        let t = twist_region(&d, -1, &m(&[("c1", 2)])).unwrap();
        assert_eq!(t.component("c1").unwrap().framing().unwrap(), &BigInt::from(-4));
    }

    #[test]
    fn twist_round_trip() {
        let mut d = Diagram::new();
        d.add_component(framed("c1", 2)).unwrap();
        d.add_component(framed("c2", -3)).unwrap();
        d.set_lk("c1", "c2", BigInt::from(1)).unwrap();
        let mm = m(&[("c1", 2), ("c2", -1)]);
        let t = twist_region(&d, 1, &mm).unwrap();
        let back = twist_region(&t, -1, &mm).unwrap();
        // algebraic layer restored (planar staleness aside)
        assert_eq!(back.linking_matrix(DottedAs::Zero), d.linking_matrix(DottedAs::Zero));
    }

    #[test]
    fn blow_up_then_down_is_identity() {
        let mut d = Diagram::new();
        d.add_component(framed("c1", 0)).unwrap();
        d.add_component(Component::dotted("u")).unwrap();
        d.set_lk("c1", "u", BigInt::from(2)).unwrap();
        let mm = m(&[("c1", 1), ("u", -2)]);
        let (up, e) = blow_up(&d, 1, &mm, None).unwrap();
        assert_eq!(up.lk(&e, "c1"), BigInt::from(1));
        assert_eq!(up.component(&e).unwrap().framing().unwrap(), &BigInt::one());
        let down = blow_down(&up, &e).unwrap();
        assert_eq!(down.linking_matrix(DottedAs::Zero), d.linking_matrix(DottedAs::Zero));
        assert_eq!(down.components().len(), d.components().len());
    }

    #[test]
    fn split_blow_down() {
        let mut d = Diagram::new();
        d.add_component(framed("e", 1).with_certificate()).unwrap();
        let down = blow_down(&d, "e").unwrap();
        assert!(down.components().is_empty());
    }

    #[test]
    fn blow_down_example_framing() {
        // +1-framed unknot linking a 0-framed component once: remaining
        // framing 0 - 1 = -1
        let mut d = Diagram::new();
        d.add_component(framed("c", 0)).unwrap();
        d.add_component(framed("e", 1).with_certificate()).unwrap();
        d.set_lk("c", "e", BigInt::one()).unwrap();
        let down = blow_down(&d, "e").unwrap();
        assert_eq!(down.component("c").unwrap().framing().unwrap(), &BigInt::from(-1));
    }

    #[test]
    fn blow_down_requires_certificate_and_unit() {
        let mut d = Diagram::new();
        d.add_component(framed("e", 1)).unwrap();
        assert!(matches!(blow_down(&d, "e"), Err(MoveError::MissingCertificate(_))));
        let mut d = Diagram::new();
        d.add_component(framed("e", 2).with_certificate()).unwrap();
        assert!(matches!(blow_down(&d, "e"), Err(MoveError::NeedsUnitFraming(..))));
    }

    #[test]
    fn slide_framing_formula() {
        let mut d = Diagram::new();
        d.add_component(framed("i", -1)).unwrap();
        d.add_component(framed("j", -1)).unwrap();
        let s = handle_slide(&d, "i", "j", 1).unwrap();
        assert_eq!(s.component("i").unwrap().framing().unwrap(), &BigInt::from(-2));
        assert_eq!(s.lk("i", "j"), BigInt::from(-1));
    }

    #[test]
    fn slide_round_trip() {
        let mut d = Diagram::new();
        d.add_component(framed("i", 2)).unwrap();
        d.add_component(framed("j", -3)).unwrap();
        d.add_component(framed("k", 1)).unwrap();
        d.set_lk("i", "j", BigInt::from(2)).unwrap();
        d.set_lk("j", "k", BigInt::from(-1)).unwrap();
        let s = handle_slide(&d, "i", "j", 1).unwrap();
        let back = handle_slide(&s, "i", "j", -1).unwrap();
        assert_eq!(back.linking_matrix(DottedAs::Zero), d.linking_matrix(DottedAs::Zero));
    }

    #[test]
    fn slide_rejects_dotted_target() {
        let mut d = Diagram::new();
        d.add_component(framed("i", 0)).unwrap();
        d.add_component(Component::dotted("u")).unwrap();
        assert!(matches!(
            handle_slide(&d, "i", "u", 1),
            Err(MoveError::NeedsFramed(_))
        ));
    }

    #[test]
    fn cancel_12_basic_and_locality() {
        let mut d = Diagram::new();
        d.add_component(Component::dotted("u")).unwrap();
        d.add_component(framed("h", -1)).unwrap();
        d.set_lk("u", "h", BigInt::one()).unwrap();
        let out = cancel_12(&d, "u", "h").unwrap();
        assert!(out.components().is_empty());

        let mut d2 = d.clone();
        d2.add_component(framed("x", 7)).unwrap();
        d2.set_lk("x", "h", BigInt::from(5)).unwrap();
        let out = cancel_12(&d2, "u", "h").unwrap();
        assert_eq!(out.components().len(), 1);
        assert_eq!(out.component("x").unwrap().framing().unwrap(), &BigInt::from(7));

        let mut d3 = d2.clone();
        d3.set_lk("x", "u", BigInt::one()).unwrap();
        assert!(matches!(
            cancel_12(&d3, "u", "h"),
            Err(MoveError::ResidualLinking(..))
        ));
    }

    #[test]
    fn add_cancel_23_round_trip() {
        let mut d = Diagram::new();
        d.add_component(framed("c", 4)).unwrap();
        let (added, id) = add_23_pair(&d, Some("d1"), &m(&[])).unwrap();
        assert_eq!(id, "d1");
        assert_eq!(added.three_handles(), 1);
        let back = cancel_23(&added, "d1").unwrap();
        assert_eq!(back.linking_matrix(DottedAs::Zero), d.linking_matrix(DottedAs::Zero));
        assert_eq!(back.three_handles(), 0);
    }

    #[test]
    fn cancel_23_preconditions() {
        let mut d = Diagram::new();
        d.add_component(framed("c", 0)).unwrap();
        let (added, id) = add_23_pair(&d, None, &m(&[("c", 1)])).unwrap();
        assert!(matches!(
            cancel_23(&added, &id),
            Err(MoveError::NotUnlinked(..))
        ));
        let (added, id) = add_23_pair(&d, None, &m(&[])).unwrap();
        let mut no3 = added.clone();
        no3.set_three_handles(0);
        assert!(matches!(cancel_23(&no3, &id), Err(MoveError::NoThreeHandle)));
        cancel_23(&added, &id).unwrap();
    }
}
