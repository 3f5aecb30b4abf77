//! Manifold-level invariants: homology of the 4-manifold and its boundary,
//! Euler characteristic, signature, homology-ball and homology-sphere
//! certification, Alexander polynomials by two independent algorithms, and
//! the formal knot-surgery Seiberg-Witten bookkeeping.

mod fox;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::intalg::{AbelianGroup, LaurentPoly};
use crate::linkdiagram::{
    alexander_from_seifert, seifert_matrix, Diagram, DottedAs, SeifertError,
};

pub use fox::alexander_fox_oracle;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error("Seifert matrix fails det(V - V^T) = ±1")]
    MalformedSeifert,
    #[error("Alexander polynomial fails normalization: {0}")]
    BadNormalization(String),
    #[error("Alexander value at 1 is {0}, expected ±1")]
    BadUnitValue(BigInt),
}

/// Handle counts of the diagram: h0 = 1 always.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HandleCounts {
    pub h0: u32,
    pub h1: u32,
    pub h2: u32,
    pub h3: u32,
}

impl fmt::Display for HandleCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h0={} h1={} h2={} h3={}", self.h0, self.h1, self.h2, self.h3)
    }
}

pub fn handle_counts(d: &Diagram) -> HandleCounts {
    HandleCounts {
        h0: 1,
        h1: d.dotted_count() as u32,
        h2: d.framed_count() as u32,
        h3: d.three_handles(),
    }
}

/// H1 of the 4-manifold: cokernel of the dotted x framed linking submatrix.
pub fn h1_manifold(d: &Diagram) -> AbelianGroup {
    d.dotted_framed_matrix().cokernel()
}

/// H1 of the boundary 3-manifold: cokernel of the linking matrix with dotted
/// circles as 0-framed surgery circles. 3-handles contribute nothing in this
/// presentation.
pub fn h1_boundary(d: &Diagram) -> AbelianGroup {
    d.linking_matrix(DottedAs::Zero).cokernel()
}

pub fn boundary_determinant(d: &Diagram) -> BigInt {
    d.linking_matrix(DottedAs::Zero)
        .determinant()
        .expect("linking matrix is square")
}

pub fn is_homology_sphere_boundary(d: &Diagram) -> bool {
    boundary_determinant(d).abs() == BigInt::from(1)
}

pub fn euler_characteristic(d: &Diagram) -> i64 {
    let h = handle_counts(d);
    1 - h.h1 as i64 + h.h2 as i64 - h.h3 as i64
}

/// Signature of the intersection form: dotted circles are excluded.
pub fn signature(d: &Diagram) -> i64 {
    d.linking_matrix(DottedAs::Excluded)
        .signature()
        .expect("linking matrix is symmetric")
}

/// Homology-ball certificate: homology-sphere boundary, trivial H1 of the
/// manifold, and Euler characteristic 1.
pub fn is_homology_ball(d: &Diagram) -> bool {
    is_homology_sphere_boundary(d) && h1_manifold(d).is_trivial() && euler_characteristic(d) == 1
}

fn check_alexander(p: LaurentPoly) -> Result<LaurentPoly, InvariantError> {
    let at_one = p.eval_at_unit(1);
    if at_one.abs() != BigInt::from(1) {
        return Err(InvariantError::BadUnitValue(at_one));
    }
    if !p.is_symmetric() {
        return Err(InvariantError::BadNormalization(p.to_string()));
    }
    Ok(p)
}

/// Alexander polynomial via the Seifert matrix:
/// normalize_symmetric(det(V - t V^T)).
pub fn alexander(d: &Diagram, component: &str) -> Result<LaurentPoly, InvariantError> {
    let v = seifert_matrix(d, component)?;
    if !v.symplectic_check() {
        return Err(InvariantError::MalformedSeifert);
    }
    let raw = alexander_from_seifert(&v.matrix);
    let norm = raw
        .normalize_symmetric()
        .map_err(|e| InvariantError::BadNormalization(e.to_string()))?;
    check_alexander(norm)
}

/// Formal Seiberg-Witten series of a closed manifold along the surgery-torus
/// variable. The artifact treats this as user-supplied Laurent data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSW(pub LaurentPoly);

impl FormalSW {
    pub fn one() -> Self {
        FormalSW(LaurentPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Fintushel-Stern knot surgery on the formal level: the series is
/// multiplied by the Alexander polynomial of the surgery knot.
pub fn knot_surgery_sw(sw: &FormalSW, alexander: &LaurentPoly) -> FormalSW {
    FormalSW(&sw.0 * alexander)
}

/// Verdict of the twist-family distinguisher: it never claims sameness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Distinct,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinct => write!(f, "distinct"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Distinguish the n-th and m-th twist-knot surgeries: distinct iff the
/// formal SW input is nonzero and the Alexander polynomials differ.
pub fn distinguish_sn(n: i64, m: i64, sw: &FormalSW) -> Result<Verdict, InvariantError> {
    if n == m || sw.is_zero() {
        return Ok(Verdict::Inconclusive);
    }
    let dn = twist_alexander(n)?;
    let dm = twist_alexander(m)?;
    if knot_surgery_sw(sw, &dn) != knot_surgery_sw(sw, &dm) {
        Ok(Verdict::Distinct)
    } else {
        Ok(Verdict::Inconclusive)
    }
}

/// Alexander polynomial of the n-twist knot, computed from its diagram.
pub fn twist_alexander(n: i64) -> Result<LaurentPoly, InvariantError> {
    let d = crate::linkdiagram::twist_knot(n)
        .map_err(|e| InvariantError::BadNormalization(e.to_string()))?;
    alexander(&d, "k")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiagram::Component;

    fn mazur(f: i64) -> Diagram {
        let mut d = Diagram::new();
        d.add_component(Component::dotted("u")).unwrap();
        d.add_component(Component::framed("h", f)).unwrap();
        d.set_lk("u", "h", BigInt::from(1)).unwrap();
        d
    }

    #[test]
    fn h1_examples() {
        let d = mazur(-1);
        assert!(h1_manifold(&d).is_trivial());
        assert!(h1_boundary(&d).is_trivial());

        let mut d = Diagram::new();
        d.add_component(Component::dotted("u")).unwrap();
        d.add_component(Component::framed("h", 3)).unwrap();
        // lk 0: H1(X) = Z
        assert_eq!(h1_manifold(&d), AbelianGroup::free(1));

        let mut d = Diagram::new();
        d.add_component(Component::framed("c", 0)).unwrap();
        assert!(h1_manifold(&d).is_trivial());
        assert_eq!(h1_boundary(&d), AbelianGroup::free(1));

        let mut d = Diagram::new();
        d.add_component(Component::framed("c", 5)).unwrap();
        assert_eq!(h1_boundary(&d), AbelianGroup::new(0, vec![BigInt::from(5)]));
    }

    #[test]
    fn mazur_pattern_is_homology_ball() {
        for f in -5i64..=5 {
            let d = mazur(f);
            assert!(is_homology_ball(&d), "framing {f}");
            assert!(is_homology_sphere_boundary(&d));
            assert_eq!(euler_characteristic(&d), 1);
            // dotted circles are excluded from the intersection form
            assert_eq!(signature(&d), f.signum());
        }
    }

    #[test]
    fn plus_one_unknot_is_not_a_ball() {
        let mut d = Diagram::new();
        d.add_component(Component::framed("c", 1)).unwrap();
        assert!(is_homology_sphere_boundary(&d));
        assert!(!is_homology_ball(&d));
        assert_eq!(euler_characteristic(&d), 2);
        assert_eq!(signature(&d), 1);
    }

    #[test]
    fn zero_framed_unknot() {
        let mut d = Diagram::new();
        d.add_component(Component::framed("c", 0)).unwrap();
        assert!(!is_homology_sphere_boundary(&d));
        assert!(!is_homology_ball(&d));
    }

    #[test]
    fn empty_diagram_is_b4() {
        let d = Diagram::new();
        assert_eq!(euler_characteristic(&d), 1);
        assert_eq!(signature(&d), 0);
        assert!(is_homology_ball(&d));
    }

    #[test]
    fn sw_bookkeeping() {
        let delta = LaurentPoly::from_terms([(1, 1), (0, -3), (-1, 1)]);
        let sw = knot_surgery_sw(&FormalSW::one(), &delta);
        assert_eq!(sw.0, delta);
        let zero = FormalSW(LaurentPoly::zero());
        assert!(knot_surgery_sw(&zero, &delta).is_zero());
    }

    #[test]
    fn distinguisher_degenerate_cases() {
        let sw = FormalSW::one();
        assert_eq!(distinguish_sn(2, 2, &sw).unwrap(), Verdict::Inconclusive);
        let zero = FormalSW(LaurentPoly::zero());
        assert_eq!(distinguish_sn(1, 2, &zero).unwrap(), Verdict::Inconclusive);
    }
}
