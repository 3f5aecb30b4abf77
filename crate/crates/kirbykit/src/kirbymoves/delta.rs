use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::linkdiagram::{Diagram, HandleKind};

use super::moves::{twist_region, MoveError, Multiplicities};
use super::script::{Move, MoveScript, ScriptError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeltaError {
    #[error("delta curve carries no unknot certificate")]
    MissingCertificate,
    #[error("delta data references unknown component {0:?}")]
    UnknownComponent(String),
    #[error("iteration count must be >= 1, got {0}")]
    BadCount(i64),
    #[error(transparent)]
    Script(#[from] ScriptError),
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// The curve delta = C+ # band # C- with its signed strand data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaData {
    /// signed strand count of each component through C+
    pub c_plus: Multiplicities,
    /// signed strand count of each component through C-
    pub c_minus: Multiplicities,
    /// human-readable record of the band joining the two circles
    pub band_note: String,
    /// hypothesis: delta is an unknot in the boundary
    pub unknot_certificate: bool,
}

impl DeltaData {
    pub fn matched(strands: Multiplicities) -> Self {
        DeltaData {
            c_plus: strands.clone(),
            c_minus: strands,
            band_note: String::new(),
            unknot_certificate: true,
        }
    }

    /// Linking vector of the delta curve itself: [delta] = [C+] - [C-].
    pub fn delta_linking(&self) -> Multiplicities {
        let mut m: BTreeMap<String, BigInt> = self.c_plus.clone();
        for (k, v) in &self.c_minus {
            let e = m.entry(k.clone()).or_insert_with(BigInt::zero);
            *e -= v;
        }
        m.retain(|_, v| !v.is_zero());
        m
    }
}

/// The delta-move script for one iteration: attach the cancelling 2/3-pair
/// along delta, blow up +1 at C+, slide the new curve over the 0-framed
/// delta (after which its strands run through C-), blow down, and cancel
/// the pair again.
fn delta_script_once(d: &Diagram, delta: &DeltaData) -> (MoveScript, String, String) {
    let delta_id = d.fresh_id();
    let mut after_delta = d.clone();
    // reserve the delta id so the blow-up picks a different one
    let _ = after_delta.add_component(crate::linkdiagram::Component {
        id: delta_id.clone(),
        kind: HandleKind::Framed(BigInt::zero()),
        unknot_certificate: true,
    });
    let e_id = after_delta.fresh_id();
    let script = MoveScript(vec![
        Move::Add23 { delta: delta_id.clone(), m: delta.delta_linking() },
        Move::BlowUp { eps: 1, m: delta.c_plus.clone(), id: Some(e_id.clone()) },
        Move::Slide { i: e_id.clone(), j: delta_id.clone(), s: -1 },
        Move::BlowDown { id: e_id.clone() },
        Move::Cancel23 { id: delta_id.clone() },
    ]);
    (script, delta_id, e_id)
}

/// Perform the delta-move n times. Returns the resulting diagram and the
/// replayed script (length 5n). With matched strand vectors the output
/// equals the input exactly; the replay is atomic and any precondition
/// failure leaves the input untouched.
pub fn delta_move(
    d: &Diagram,
    delta: &DeltaData,
    n: i64,
) -> Result<(Diagram, MoveScript), DeltaError> {
    if n < 1 {
        return Err(DeltaError::BadCount(n));
    }
    if !delta.unknot_certificate {
        return Err(DeltaError::MissingCertificate);
    }
    for id in delta.c_plus.keys().chain(delta.c_minus.keys()) {
        d.component(id)
            .map_err(|_| DeltaError::UnknownComponent(id.clone()))?;
    }
    let mut all = Vec::new();
    let mut cur = d.clone();
    for _ in 0..n {
        let (script, _, _) = delta_script_once(&cur, delta);
        cur = script.replay(&cur)?;
        all.extend(script.0);
    }
    Ok((cur, MoveScript(all)))
}

/// Which side of the cork decomposition a component belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorkSide {
    W,
    H,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorkTwistError {
    #[error("partition misses component {0:?}")]
    MissingFromPartition(String),
    #[error("delta curve carries no unknot certificate")]
    MissingCertificate,
    #[error("twist count must be >= 0, got {0}")]
    BadCount(i64),
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// Cork twist: reglue the H-side by the n-th power of the delta-move. The
/// H-side attaching curves through C+ and C- acquire the +1 and -1 full
/// twists; W-side internal data is untouched. Returns the new diagram and
/// whether the twist acted on any strands at all (false = vacuous warning).
pub fn cork_twist(
    d: &Diagram,
    partition: &BTreeMap<String, CorkSide>,
    delta: &DeltaData,
    n: i64,
) -> Result<(Diagram, bool), CorkTwistError> {
    if n < 0 {
        return Err(CorkTwistError::BadCount(n));
    }
    if !delta.unknot_certificate {
        return Err(CorkTwistError::MissingCertificate);
    }
    for c in d.components() {
        if !partition.contains_key(&c.id) {
            return Err(CorkTwistError::MissingFromPartition(c.id.clone()));
        }
    }
    let restrict = |m: &Multiplicities| -> Multiplicities {
        m.iter()
            .filter(|(id, v)| {
                partition.get(*id) == Some(&CorkSide::H) && !v.is_zero()
            })
            .map(|(id, v)| (id.clone(), v.clone()))
            .collect()
    };
    let m_plus = restrict(&delta.c_plus);
    let m_minus = restrict(&delta.c_minus);
    if m_plus.is_empty() && m_minus.is_empty() {
        return Ok((d.clone(), false));
    }
    let mut cur = d.clone();
    for _ in 0..n {
        cur = twist_region(&cur, 1, &m_plus)?;
        cur = twist_region(&cur, -1, &m_minus)?;
    }
    if n > 0 {
        cur.mark_planar_stale();
    }
    Ok((cur, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiagram::{Component, DottedAs};

    fn m(pairs: &[(&str, i64)]) -> Multiplicities {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), BigInt::from(*v)))
            .collect()
    }

    fn sample() -> Diagram {
        let mut d = Diagram::new();
        d.add_component(Component::dotted("u")).unwrap();
        d.add_component(Component::framed("h1", -1)).unwrap();
        d.add_component(Component::framed("h2", 0)).unwrap();
        d.set_lk("u", "h1", BigInt::from(1)).unwrap();
        d.set_lk("h1", "h2", BigInt::from(2)).unwrap();
        d
    }

    #[test]
    fn matched_delta_is_identity() {
        let d = sample();
        for n in 1..=4 {
            let delta = DeltaData::matched(m(&[("h1", 1), ("h2", -2)]));
            let (out, script) = delta_move(&d, &delta, n).unwrap();
            assert_eq!(script.0.len(), 5 * n as usize);
            let mut expect = d.clone();
            expect.mark_planar_stale();
            assert_eq!(out, expect);
        }
    }

    #[test]
    fn unmatched_delta_aborts_cleanly() {
        let d = sample();
        let delta = DeltaData {
            c_plus: m(&[("h1", 1)]),
            c_minus: m(&[("h2", 1)]),
            band_note: String::new(),
            unknot_certificate: true,
        };
        let err = delta_move(&d, &delta, 1).unwrap_err();
        assert!(matches!(err, DeltaError::Script(ScriptError::Replay { .. })));
    }

    #[test]
    fn certificate_required() {
        let d = sample();
        let mut delta = DeltaData::matched(m(&[("h1", 1)]));
        delta.unknot_certificate = false;
        assert_eq!(delta_move(&d, &delta, 1), Err(DeltaError::MissingCertificate));
    }

    #[test]
    fn cork_twist_identity_cases() {
        let d = sample();
        let part: BTreeMap<String, CorkSide> = [
            ("u".to_string(), CorkSide::W),
            ("h1".to_string(), CorkSide::H),
            ("h2".to_string(), CorkSide::H),
        ]
        .into();
        // n = 0 is the identity regluing
        let delta = DeltaData::matched(m(&[("h1", 1)]));
        let (out, acted) = cork_twist(&d, &part, &delta, 0).unwrap();
        assert!(acted);
        assert_eq!(out, d);
        // matched strand vectors: linking matrix unchanged for every n
        for n in 1..=5 {
            let (out, _) = cork_twist(&d, &part, &delta, n).unwrap();
            assert_eq!(
                out.linking_matrix(DottedAs::Zero),
                d.linking_matrix(DottedAs::Zero)
            );
        }
    }

    #[test]
    fn cork_twist_vacuous_warning() {
        let d = sample();
        let part: BTreeMap<String, CorkSide> = [
            ("u".to_string(), CorkSide::W),
            ("h1".to_string(), CorkSide::W),
            ("h2".to_string(), CorkSide::W),
        ]
        .into();
        let delta = DeltaData::matched(m(&[("h1", 1)]));
        let (out, acted) = cork_twist(&d, &part, &delta, 3).unwrap();
        assert!(!acted);
        assert_eq!(out, d);
    }

    #[test]
    fn cork_twist_asymmetric_changes_linking() {
        let d = sample();
        let part: BTreeMap<String, CorkSide> = [
            ("u".to_string(), CorkSide::W),
            ("h1".to_string(), CorkSide::H),
            ("h2".to_string(), CorkSide::H),
        ]
        .into();
        let delta = DeltaData {
            c_plus: m(&[("h1", 1)]),
            c_minus: m(&[]),
            band_note: "h1 dips between the parallel copies".into(),
            unknot_certificate: true,
        };
        let (out1, _) = cork_twist(&d, &part, &delta, 1).unwrap();
        let (out2, _) = cork_twist(&d, &part, &delta, 2).unwrap();
        assert_ne!(
            out1.linking_matrix(DottedAs::Zero),
            out2.linking_matrix(DottedAs::Zero)
        );
        // boundary homology is protected by the hyperbolic (u, h1) block
        let h1 = |x: &Diagram| x.linking_matrix(DottedAs::Zero).cokernel();
        assert_eq!(h1(&d), h1(&out1));
        assert_eq!(h1(&d), h1(&out2));
    }
}
