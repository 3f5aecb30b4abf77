//! Chain data for a braid-position diagram: circles totally ordered by
//! nesting, letters (crossings) between adjacent circles with consistent
//! cyclic slot positions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::knot::Knot;
use super::SeifertError;

#[derive(Clone, Debug)]
pub struct Letter {
    /// 0-based pair index: connects circle `pair` and `pair + 1`.
    pub pair: usize,
    pub sign: i8,
    /// global slot rank after position sorting
    pub slot: usize,
}

#[derive(Clone, Debug)]
pub struct Braided {
    pub n_circles: usize,
    pub letters: Vec<Letter>,
}

/// Extract the chain structure: the Seifert graph must be a path (guaranteed
/// in braid position for a connected knot diagram).
pub fn chain_data(k: &Knot) -> Result<Braided, SeifertError> {
    let circles = k.seifert_circles();
    let s = circles.len();
    let mut circle_of: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, cyc) in circles.iter().enumerate() {
        for &arc in cyc {
            circle_of.insert(arc, i);
        }
    }

    // Seifert graph adjacency; the two corners of a crossing are the circle
    // through (a, over_out) and the circle through (over_in, c)
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); s];
    let mut edge_circles: Vec<(usize, usize)> = Vec::new();
    for x in &k.crossings {
        let c1 = circle_of[&x.a];
        let c2 = circle_of[&x.c];
        if c1 == c2 {
            return Err(SeifertError::Degenerate(
                "crossing joins a Seifert circle to itself in braid position".into(),
            ));
        }
        edge_circles.push((c1, c2));
        if !adj[c1].contains(&c2) {
            adj[c1].push(c2);
        }
        if !adj[c2].contains(&c1) {
            adj[c2].push(c1);
        }
    }

    // order the path; break the end tie by smallest arc id
    let ends: Vec<usize> = (0..s).filter(|&i| adj[i].len() <= 1).collect();
    let path: Vec<usize> = if s == 1 {
        vec![0]
    } else {
        if ends.len() != 2 || adj.iter().any(|v| v.len() > 2) {
            return Err(SeifertError::Degenerate(
                "Seifert graph is not a path in braid position".into(),
            ));
        }
        let min_arc = |i: usize| circles[i].iter().min().copied().unwrap();
        let start = if min_arc(ends[0]) <= min_arc(ends[1]) {
            ends[0]
        } else {
            ends[1]
        };
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while path.len() < s {
            let next = *adj[cur]
                .iter()
                .find(|&&n| n != prev)
                .ok_or_else(|| SeifertError::Degenerate("broken chain".into()))?;
            path.push(next);
            prev = cur;
            cur = next;
        }
        path
    };
    let chain_pos: BTreeMap<usize, usize> =
        path.iter().enumerate().map(|(p, &c)| (c, p)).collect();

    // letters: crossing -> pair index
    let mut pair_of: Vec<usize> = Vec::with_capacity(k.n());
    for &(c1, c2) in &edge_circles {
        let (p1, p2) = (chain_pos[&c1], chain_pos[&c2]);
        if p1.abs_diff(p2) != 1 {
            return Err(SeifertError::Degenerate(
                "crossing joins non-adjacent circles of the chain".into(),
            ));
        }
        pair_of.push(p1.min(p2));
    }

    // per-circle walks: crossings in traversal order along each circle
    let mut walk: Vec<Vec<usize>> = vec![Vec::new(); s];
    {
        // arc -> crossing where the arc ends
        let mut end_crossing: BTreeMap<usize, usize> = BTreeMap::new();
        for (ci, x) in k.crossings.iter().enumerate() {
            end_crossing.insert(x.a, ci);
            end_crossing.insert(x.over_in(), ci);
        }
        for (i, cyc) in circles.iter().enumerate() {
            for &arc in cyc {
                walk[chain_pos[&i]].push(end_crossing[&arc]);
            }
        }
    }

    // assign cyclic positions: pair-0 letters get integer positions from the
    // innermost circle's walk; each further circle interleaves its new pair's
    // letters between the known ones
    let mut pos: BTreeMap<usize, BigRational> = BTreeMap::new();
    let period = BigRational::from(BigInt::from(walk[0].len().max(1) as i64));
    for (j, &ci) in walk[0].iter().enumerate() {
        pos.insert(ci, BigRational::from(BigInt::from(j as i64)));
    }
    for p in 1..s {
        let w = &walk[p];
        if w.is_empty() {
            return Err(SeifertError::Degenerate("circle with no crossings".into()));
        }
        // rotate to start at a known letter
        let start = w
            .iter()
            .position(|ci| pos.contains_key(ci))
            .ok_or_else(|| SeifertError::Degenerate("no anchor letter on circle".into()))?;
        let rotated: Vec<usize> = (0..w.len()).map(|j| w[(start + j) % w.len()]).collect();
        // group unknowns after each known
        let mut idx = 0;
        while idx < rotated.len() {
            let anchor = rotated[idx];
            let p_anchor = pos[&anchor].clone();
            let mut unknowns = Vec::new();
            let mut jdx = idx + 1;
            while jdx < rotated.len() && !pos.contains_key(&rotated[jdx]) {
                unknowns.push(rotated[jdx]);
                jdx += 1;
            }
            let p_next = if jdx < rotated.len() {
                pos[&rotated[jdx]].clone()
            } else {
                pos[&rotated[0]].clone()
            };
            let mut gap = &p_next - &p_anchor;
            while gap <= BigRational::zero() {
                gap += &period;
            }
            while gap > period {
                gap -= &period;
            }
            let m = unknowns.len() as i64;
            for (t, ci) in unknowns.into_iter().enumerate() {
                let frac = BigRational::new(BigInt::from(t as i64 + 1), BigInt::from(m + 1));
                let mut v = &p_anchor + &gap * frac;
                if v >= period {
                    v -= &period;
                }
                pos.insert(ci, v);
            }
            idx = jdx;
        }
        // coherence: the known letters must appear in increasing cyclic order
        let anchor_pos = pos[&rotated[0]].clone();
        let cyc_key = |ci: &usize| {
            let mut v = &pos[ci] - &anchor_pos;
            if v < BigRational::zero() {
                v += &period;
            }
            v
        };
        for win in rotated.windows(2) {
            if cyc_key(&win[0]) >= cyc_key(&win[1]) {
                return Err(SeifertError::Degenerate(
                    "circle walk disagrees with slot positions".into(),
                ));
            }
        }
    }

    // rank letters by position
    let mut order: Vec<usize> = (0..k.n()).collect();
    order.sort_by(|a, b| pos[a].cmp(&pos[b]));
    let mut slot = vec![0usize; k.n()];
    for (r, &ci) in order.iter().enumerate() {
        slot[ci] = r;
    }

    let letters = (0..k.n())
        .map(|ci| Letter { pair: pair_of[ci], sign: k.crossings[ci].sign, slot: slot[ci] })
        .collect();
    Ok(Braided { n_circles: s, letters })
}

#[cfg(test)]
mod tests {
    use super::super::knot::Knot;
    use super::*;
    use crate::linkdiagram::planar::trefoil_pd;

    #[test]
    fn trefoil_chain() {
        let k = Knot::from_pd(&trefoil_pd()).unwrap();
        let b = chain_data(&k).unwrap();
        assert_eq!(b.n_circles, 2);
        assert_eq!(b.letters.len(), 3);
        assert!(b.letters.iter().all(|l| l.pair == 0 && l.sign == 1));
        let mut slots: Vec<usize> = b.letters.iter().map(|l| l.slot).collect();
        slots.sort_unstable();
        assert_eq!(slots, vec![0, 1, 2]);
    }
}
