//! Independent Alexander-polynomial oracle: Wirtinger presentation of the
//! knot group, Fox derivatives abelianized to Z[t, t^-1], first elementary
//! ideal generator, normalized. Shares nothing with the Seifert-matrix route
//! beyond the PD data itself.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::intalg::{IntMatrix, LaurentPoly};
use crate::linkdiagram::seifert::knot::{extract_knot, Knot};
use crate::linkdiagram::{Diagram, SeifertError};

use super::InvariantError;

/// Alexander polynomial from the Wirtinger presentation and Fox calculus.
pub fn alexander_fox_oracle(d: &Diagram, component: &str) -> Result<LaurentPoly, InvariantError> {
    d.component(component)
        .map_err(|e| InvariantError::Seifert(SeifertError::BadDiagram(e.to_string())))?;
    let planar = match d.planar() {
        None => return Err(InvariantError::Seifert(SeifertError::MissingPlanar)),
        Some(_) if d.planar_is_stale() => {
            return Err(InvariantError::Seifert(SeifertError::StalePlanar))
        }
        Some(p) => p,
    };
    if !planar.has_component(component) {
        return Err(InvariantError::Seifert(SeifertError::NoPlanarComponent(
            component.to_string(),
        )));
    }
    let knot = extract_knot(planar, component)?;
    let raw = fox_polynomial(&knot)?;
    let norm = raw
        .normalize_symmetric()
        .map_err(|e| InvariantError::BadNormalization(e.to_string()))?;
    let at_one = norm.eval_at_unit(1);
    if at_one.abs() != BigInt::one() {
        return Err(InvariantError::BadUnitValue(at_one));
    }
    Ok(norm)
}

fn fox_polynomial(k: &Knot) -> Result<LaurentPoly, InvariantError> {
    let n = k.n();
    if n <= 1 {
        return Ok(LaurentPoly::one());
    }
    // Wirtinger arcs: merge PD arcs through over-passages
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    for x in &k.crossings {
        for arc in [x.a, x.b, x.c, x.d] {
            parent.entry(arc).or_insert(arc);
        }
    }
    fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let p = parent[&x];
        if p == x {
            return x;
        }
        let r = find(parent, p);
        parent.insert(x, r);
        r
    }
    for x in &k.crossings {
        let (a, b) = (x.over_in(), x.over_out());
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent.insert(ra.max(rb), ra.min(rb));
    }
    let mut gen_index: BTreeMap<usize, usize> = BTreeMap::new();
    let arcs: Vec<usize> = parent.keys().copied().collect();
    for arc in arcs {
        let r = find(&mut parent, arc);
        let next = gen_index.len();
        gen_index.entry(r).or_insert(next);
    }
    let gens = gen_index.len();
    debug_assert_eq!(gens, n, "a knot has as many Wirtinger arcs as crossings");

    // Fox rows over Z[t]: entries stored as (constant, t-coefficient)
    // positive crossing x_c = w x_a w^-1:  w: 1 - t,  a: t,  c: -1
    // negative crossing (row scaled by t): w: t - 1,  a: 1,  c: -t
    #[derive(Clone, Default)]
    struct Entry {
        c0: BigInt,
        c1: BigInt,
    }
    let mut rows: Vec<Vec<Entry>> = vec![vec![Entry::default(); gens]; n];
    for (ri, x) in k.crossings.iter().enumerate() {
        let w = gen_index[&find(&mut parent, x.over_in())];
        let a = gen_index[&find(&mut parent, x.a)];
        let c = gen_index[&find(&mut parent, x.c)];
        let row = &mut rows[ri];
        if x.sign > 0 {
            row[w].c0 += 1;
            row[w].c1 -= 1;
            row[a].c1 += 1;
            row[c].c0 -= 1;
        } else {
            row[w].c1 += 1;
            row[w].c0 -= 1;
            row[a].c0 += 1;
            row[c].c1 -= 1;
        }
    }

    // drop the last relation and the last generator; the determinant of the
    // rest is the Alexander polynomial up to a unit
    let size = n - 1;
    let degree_bound = size; // entries are degree <= 1
    let points: Vec<i64> = (0..=degree_bound as i64).map(|i| i + 2).collect();
    let mut values = Vec::with_capacity(points.len());
    for &t0 in &points {
        let t = BigInt::from(t0);
        let mut m = IntMatrix::zero(size, size);
        for i in 0..size {
            for j in 0..size {
                let e = &rows[i][j];
                m[(i, j)] = &e.c0 + &e.c1 * &t;
            }
        }
        values.push(m.determinant().expect("square matrix"));
    }
    let coeffs = interpolate(&points, &values)?;
    let mut poly = LaurentPoly::zero();
    for (e, c) in coeffs.into_iter().enumerate() {
        poly.add_term(e as i64, c);
    }
    Ok(poly)
}

/// Lagrange interpolation with exact rationals; the result must be an
/// integer-coefficient polynomial.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> Result<Vec<BigInt>, InvariantError> {
    let n = xs.len();
    let zero = BigRational::zero();
    let mut acc: Vec<BigRational> = vec![zero.clone(); n];
    for i in 0..n {
        // numerator polynomial: product of (x - x_j), j != i
        let mut num: Vec<BigRational> = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![zero.clone(); num.len() + 1];
            let xjr = BigRational::from(BigInt::from(xj));
            for (k, c) in num.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xjr;
            }
            num = next;
            denom *= BigRational::from(BigInt::from(xs[i] - xj));
        }
        let scale = BigRational::from(ys[i].clone()) / denom;
        for (k, c) in num.into_iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    acc.into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(InvariantError::BadNormalization(format!(
                    "non-integer interpolation coefficient {c}"
                )))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiagram::planar::{figure_eight_pd, trefoil_pd};
    use crate::linkdiagram::{Component, PlanarData};

    fn knot_diagram(pd: Vec<crate::linkdiagram::PdCrossing>) -> Diagram {
        let mut d = Diagram::new();
        d.add_component(Component::framed("k", 0)).unwrap();
        let mut p = PlanarData::new();
        p.insert_component("k", pd);
        d.set_planar(Some(p));
        d
    }

    #[test]
    fn trefoil_fox() {
        let d = knot_diagram(trefoil_pd());
        let p = alexander_fox_oracle(&d, "k").unwrap();
        assert_eq!(p, LaurentPoly::from_terms([(1, 1), (0, -1), (-1, 1)]));
    }

    #[test]
    fn figure_eight_fox() {
        let d = knot_diagram(figure_eight_pd());
        let p = alexander_fox_oracle(&d, "k").unwrap();
        assert_eq!(p, LaurentPoly::from_terms([(1, 1), (0, -3), (-1, 1)]));
    }

    #[test]
    fn unknot_fox() {
        let d = knot_diagram(vec![crate::linkdiagram::PdCrossing::new(1, 2, 2, 1, 1)]);
        let p = alexander_fox_oracle(&d, "k").unwrap();
        assert_eq!(p, LaurentPoly::one());
    }

    #[test]
    fn interpolation_roundtrip() {
        // p(t) = 3t^2 - 5t + 7
        let xs = vec![2, 3, 4];
        let ys = vec![BigInt::from(9), BigInt::from(19), BigInt::from(35)];
        let cs = interpolate(&xs, &ys).unwrap();
        assert_eq!(cs, vec![BigInt::from(7), BigInt::from(-5), BigInt::from(3)]);
    }
}
