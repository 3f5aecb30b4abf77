//! Seifert matrices from planar diagrams.
//!
//! Pipeline: extract the chosen component's self-diagram, normalize it into
//! braid position by coherence-improving Reidemeister-II moves, realize the
//! disk-and-band Seifert surface with explicit integer coordinates, compute
//! the pairing lk(x+, y) of basis cycles by exact crossing counting, and
//! finally undo surface stabilizations (S-reduction).

mod chain;
mod faces;
mod geom;
pub(crate) mod knot;
mod reduce;
mod vogel;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::intalg::IntMatrix;

use super::diagram::Diagram;

pub use reduce::s_reduce;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeifertError {
    #[error("diagram has no planar data")]
    MissingPlanar,
    #[error("planar data is stale; moves have invalidated it")]
    StalePlanar,
    #[error("component {0:?} carries no planar data")]
    NoPlanarComponent(String),
    #[error("invalid planar diagram: {0}")]
    BadDiagram(String),
    #[error("braid-position normalization did not terminate")]
    VogelDiverged,
    #[error("internal geometric degeneracy: {0}")]
    Degenerate(String),
}

/// Seifert matrix of a knot: the linking form of a generating set of surface
/// 1-cycles. For a genus-g surface the matrix is 2g x 2g and
/// det(V - V^T) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    pub matrix: IntMatrix,
}

impl SeifertMatrix {
    pub fn genus(&self) -> usize {
        self.matrix.rows() / 2
    }

    /// det(V - V^T) must be 1 for a knot (the intersection form of the
    /// surface is unimodular symplectic).
    pub fn symplectic_check(&self) -> bool {
        let vt = self.matrix.transpose();
        let d = &self.matrix - &vt;
        d.determinant().map(|x| x.is_one()).unwrap_or(false)
    }
}

/// Compute a Seifert matrix for the named knot component of the diagram.
/// Requires fresh planar data covering the component.
pub fn seifert_matrix(d: &Diagram, component: &str) -> Result<SeifertMatrix, SeifertError> {
    d.component(component)
        .map_err(|e| SeifertError::BadDiagram(e.to_string()))?;
    let planar = match d.planar() {
        None => return Err(SeifertError::MissingPlanar),
        Some(_) if d.planar_is_stale() => return Err(SeifertError::StalePlanar),
        Some(p) => p,
    };
    if !planar.has_component(component) {
        return Err(SeifertError::NoPlanarComponent(component.to_string()));
    }
    let knot = knot::extract_knot(planar, component)?;
    seifert_matrix_of_knot(&knot)
}

fn seifert_matrix_of_knot(k: &knot::Knot) -> Result<SeifertMatrix, SeifertError> {
    if k.n() == 0 {
        return Ok(SeifertMatrix { matrix: IntMatrix::zero(0, 0) });
    }
    let trace = std::env::var_os("KIRBYKIT_TRACE_SEIFERT").is_some();
    let t0 = std::time::Instant::now();
    let braided = vogel::to_braid_position(k)?;
    if trace {
        eprintln!(
            "vogel: {} -> {} crossings ({:?})",
            k.n(),
            braided.n(),
            t0.elapsed()
        );
    }
    let t1 = std::time::Instant::now();
    let chain = chain::chain_data(&braided)?;
    let t2 = std::time::Instant::now();
    let v = geom::seifert_form(&chain)?;
    if trace {
        eprintln!(
            "chain ({:?}), form rank {} ({:?})",
            t2 - t1,
            v.rows(),
            t2.elapsed()
        );
    }
    let t3 = std::time::Instant::now();
    let reduced = s_reduce(v);
    if trace {
        eprintln!("reduce -> rank {} ({:?})", reduced.rows(), t3.elapsed());
    }
    Ok(SeifertMatrix { matrix: reduced })
}

/// det(V - t V^T) as a Laurent polynomial (not yet normalized).
pub fn alexander_from_seifert(v: &IntMatrix) -> crate::intalg::LaurentPoly {
    use crate::intalg::LaurentPoly;
    let n = v.rows();
    if n == 0 {
        return LaurentPoly::one();
    }
    // entries are degree <= 1 polynomials a - b t; expand by minors over the
    // Laurent ring (sizes here are small after reduction)
    fn det_rec(
        v: &IntMatrix,
        vt: &IntMatrix,
        rows: &[usize],
        cols: &[usize],
    ) -> crate::intalg::LaurentPoly {
        use crate::intalg::LaurentPoly;
        if rows.is_empty() {
            return LaurentPoly::one();
        }
        let r = rows[0];
        let rest: Vec<usize> = rows[1..].to_vec();
        let mut acc = LaurentPoly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let mut entry = LaurentPoly::monomial(0, v[(r, c)].clone());
            entry.add_term(1, -vt[(r, c)].clone());
            if entry.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&cc| cc != c)
                .collect();
            let sub = det_rec(v, vt, &rest, &sub_cols);
            let term = &entry * &sub;
            if k % 2 == 0 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        acc
    }
    let vt = v.transpose();
    let idx: Vec<usize> = (0..n).collect();
    det_rec(v, &vt, &idx, &idx)
}

/// Check whether two symmetric-bilinear-form matrices are congruent over Z
/// by a bounded search over unimodular matrices (test oracle for small
/// matrices only).
pub fn congruent_2x2(a: &IntMatrix, b: &IntMatrix, bound: i64) -> bool {
    if a.rows() != 2 || b.rows() != 2 {
        return false;
    }
    for p in -bound..=bound {
        for q in -bound..=bound {
            for r in -bound..=bound {
                for s in -bound..=bound {
                    let det = p * s - q * r;
                    if det != 1 && det != -1 {
                        continue;
                    }
                    let m = IntMatrix::from_i64(&[&[p, q], &[r, s]]);
                    if &(&m * a) * &m.transpose() == *b {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::planar::{figure_eight_pd, trefoil_pd};
    use super::*;
    use crate::intalg::LaurentPoly;
    use crate::linkdiagram::{Component, PlanarData};

    fn knot_diagram(pd: Vec<crate::linkdiagram::PdCrossing>) -> Diagram {
        let mut d = Diagram::new();
        d.add_component(Component::framed("k", 0)).unwrap();
        let mut p = PlanarData::new();
        p.insert_component("k", pd);
        d.set_planar(Some(p));
        d
    }

    fn alex(v: &IntMatrix) -> LaurentPoly {
        alexander_from_seifert(v).normalize_symmetric().unwrap()
    }

    #[test]
    fn trefoil_seifert() {
        let d = knot_diagram(trefoil_pd());
        let v = seifert_matrix(&d, "k").unwrap();
        assert_eq!(v.matrix.rows(), 2, "{:?}", v.matrix);
        assert!(v.symplectic_check());
        let expected = LaurentPoly::from_terms([(1, 1), (0, -1), (-1, 1)]);
        assert_eq!(alex(&v.matrix), expected);
        // the positive trefoil's pinned form
        let target = IntMatrix::from_i64(&[&[-1, 1], &[0, -1]]);
        assert!(
            congruent_2x2(&v.matrix, &target, 5),
            "got {:?}",
            v.matrix
        );
    }

    #[test]
    fn figure_eight_seifert() {
        let d = knot_diagram(figure_eight_pd());
        let v = seifert_matrix(&d, "k").unwrap();
        assert_eq!(v.matrix.rows(), 2, "{:?}", v.matrix);
        assert!(v.symplectic_check());
        let expected = LaurentPoly::from_terms([(1, 1), (0, -3), (-1, 1)]);
        assert_eq!(alex(&v.matrix), expected);
        let target = IntMatrix::from_i64(&[&[-1, 1], &[0, 1]]);
        assert!(
            congruent_2x2(&v.matrix, &target, 5),
            "got {:?}",
            v.matrix
        );
    }

    #[test]
    fn unknot_seifert_empty() {
        // one-crossing reducible unknot
        let d = knot_diagram(vec![crate::linkdiagram::PdCrossing::new(1, 2, 2, 1, 1)]);
        let v = seifert_matrix(&d, "k").unwrap();
        assert_eq!(v.matrix.rows(), 0);
        assert_eq!(alex(&v.matrix), LaurentPoly::one());
    }

    #[test]
    fn stale_planar_rejected() {
        let mut d = knot_diagram(trefoil_pd());
        d.mark_planar_stale();
        assert_eq!(seifert_matrix(&d, "k"), Err(SeifertError::StalePlanar));
    }
}
