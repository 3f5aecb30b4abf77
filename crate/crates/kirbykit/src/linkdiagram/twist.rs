use thiserror::Error;

use super::diagram::{Component, Diagram};
use super::planar::{PdCrossing, PlanarData};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwistKnotError {
    #[error("twist knots need n >= 1, got {0}")]
    BadIndex(i64),
}

/// Planar diagram of the twist knot with n full twists and a clasp
/// (2n + 2 crossings, alternating). The convention is pinned so that the
/// Seifert matrix is congruent to [[-1, 1], [0, n]], hence the Alexander
/// polynomial is n t - (2n + 1) + n t^-1. For n = 1 this is the standard
/// figure-eight code.
///
/// The knot is walked as 4n + 4 arcs; the crossing passed at walk position
/// p is an over-pass for odd p and an under-pass for even p. Twist crossing
/// a (1-based) sits at positions 2n + 2 - a and 2n + 3 + a with sign +1; the
/// clasp crossings sit at positions (1, 2n + 2) and (2n + 3, 4n + 4) with
/// sign -1.
pub fn twist_knot(n: i64) -> Result<Diagram, TwistKnotError> {
    if n < 1 {
        return Err(TwistKnotError::BadIndex(n));
    }
    let n = n as u32;
    let total = 4 * n + 4;
    let wrap = |p: u32| -> u32 {
        let r = p % total;
        if r == 0 {
            total
        } else {
            r
        }
    };
    // arc entering the crossing at walk position p is arc p; the arc leaving
    // is p + 1 (cyclically)
    let cross = |under_pos: u32, over_pos: u32, sign: i8| -> PdCrossing {
        let a = wrap(under_pos);
        let c = wrap(under_pos + 1);
        let oi = wrap(over_pos);
        let oo = wrap(over_pos + 1);
        let (b, d) = if sign > 0 { (oi, oo) } else { (oo, oi) };
        PdCrossing::new(a, b, c, d, sign)
    };
    let mut xs = Vec::with_capacity(2 * n as usize + 2);
    for a in 1..=2 * n {
        let p1 = 2 * n + 2 - a;
        let p2 = 2 * n + 3 + a;
        let (under, over) = if p1 % 2 == 0 { (p1, p2) } else { (p2, p1) };
        xs.push(cross(under, over, 1));
    }
    xs.push(cross(2 * n + 2, 1, -1));
    xs.push(cross(4 * n + 4, 2 * n + 3, -1));

    let mut d = Diagram::new();
    d.add_component(Component::framed("k", 0)).unwrap();
    let mut p = PlanarData::new();
    p.insert_component("k", xs);
    d.set_planar(Some(p));
    d.set_meta("name", &format!("twist-knot:{n}"));
    d.validate().expect("twist knot construction is valid");
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::super::planar::figure_eight_pd;
    use super::*;

    #[test]
    fn crossing_count_contract() {
        for n in 1..=12 {
            let d = twist_knot(n).unwrap();
            let p = d.planar().unwrap();
            assert_eq!(p.crossing_count(), 2 * n as usize + 2);
            d.validate().unwrap();
        }
    }

    #[test]
    fn n1_is_figure_eight_code() {
        let d = twist_knot(1).unwrap();
        let xs = d.planar().unwrap().crossings_of("k").unwrap();
        let mut got: Vec<_> = xs.to_vec();
        let mut want = figure_eight_pd();
        let key = |x: &PdCrossing| (x.a, x.b, x.c, x.d, x.sign);
        got.sort_by_key(key);
        want.sort_by_key(key);
        assert_eq!(got, want);
    }

    #[test]
    fn rejects_bad_index() {
        assert_eq!(twist_knot(0), Err(TwistKnotError::BadIndex(0)));
        assert!(twist_knot(-3).is_err());
    }
}
