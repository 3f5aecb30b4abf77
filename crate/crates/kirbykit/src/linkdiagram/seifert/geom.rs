//! Explicit embedded geometry for the braid-position Seifert surface.
//!
//! The annulus carrying the diagram is cut open into a planar chart: the
//! x-axis runs along the braid-closure direction, y decreases outward
//! through the nested circles, z is height. Circle i (0-based chain
//! position) lies on the line y = -Gi at height z = -Gi; its disk collar is
//! the strip above the line. Bands descend one level per letter, performing
//! a half twist. Surface co-orientations alternate along the chain, so rim
//! pushoffs displace by +z on even circles and -z on odd ones.
//!
//! Basis cycles ("ladder rungs") join consecutive letters of one pair. Every
//! Seifert-pairing entry lk(x+, y) is computed by exact signed-crossing
//! counting over the explicit integer-coordinate polylines.

use num_bigint::BigInt;
use num_traits::Zero;

use super::chain::Braided;
use super::SeifertError;
use crate::intalg::IntMatrix;

/// grid pitch between adjacent circles (y and z)
const G: i128 = 8;

/// over-track selection: the core on the lane with
/// lambda * sign * KNOB_OVER = +1 passes over in its band
const KNOB_OVER: i128 = 1;

/// chirality of the pushoff roll through a band
const KNOB_ROLL: i128 = -1;

#[derive(Clone, Copy, Debug)]
struct P3 {
    x: i128,
    y: i128,
    z: i128,
}

fn p(x: i128, y: i128, z: i128) -> P3 {
    P3 { x, y, z }
}

#[derive(Clone, Debug)]
struct Polyline(Vec<P3>);

struct Scale {
    /// common denominator for all fractional offsets
    s: i128,
}

impl Scale {
    fn new(n_cycles: usize) -> Scale {
        // denominators used: 8 (tails, heights), w+1 (insets, drift)
        Scale { s: 8 * (n_cycles as i128 + 1) }
    }
    fn whole(&self, v: i128) -> i128 {
        v * self.s
    }
    /// v * (num/den) in scaled units; den must divide 8*(W+1) evenly times num
    fn frac(&self, num: i128, den: i128) -> i128 {
        debug_assert_eq!((self.s * num) % den, 0);
        self.s * num / den
    }
}

/// A band between circles `i` and `i+1` at slot position X occupies
/// x in [X-1, X+1] (whole units). Track `lam` enters the inner mouth at
/// x = X + lam and leaves the outer mouth at x = X - lam.
struct Band {
    xc: i128, // slot center, whole units (scaled)
    y_in: i128,
    z_in: i128,
    sign: i128,
    o_in: i128, // surface co-orientation at the inner circle
}

impl Band {
    /// Core track waypoints from the inner mouth to the outer mouth.
    fn track(&self, sc: &Scale, lam: i128) -> Vec<P3> {
        let u = |v: i128| sc.whole(v);
        let half = sc.frac(1, 2);
        let quarter = sc.frac(1, 4);
        let zeta = lam * self.sign * KNOB_OVER;
        let (x0, y0, z0) = (self.xc, self.y_in, self.z_in);
        vec![
            p(x0 + u(1) * lam, y0, z0),
            p(x0 + half * lam, y0 - u(2), z0 - u(2) + zeta * half),
            p(x0 - quarter * lam, y0 - u(4), z0 - u(4) + zeta * u(1)),
            p(x0 - half * lam, y0 - u(6), z0 - u(6) + zeta * half),
            p(x0 - u(1) * lam, y0 - u(8), z0 - u(8)),
        ]
    }

    /// Pushoff displacement at each track waypoint: the ribbon normal
    /// interpolates from the inner collar's vertical to the outer collar's
    /// (flipped) vertical through horizontal, with chirality rho.
    fn displacement(&self, sc: &Scale, kappa: i128) -> Vec<P3> {
        let delta = sc.frac(1, 2);
        let dhalf = sc.frac(1, 4);
        let rho = self.sign * self.o_in * KNOB_ROLL;
        let o = self.o_in;
        vec![
            p(0, -kappa, o * delta),
            p(rho * dhalf, -kappa, o * dhalf),
            p(rho * delta, -kappa, 0),
            p(rho * dhalf, -kappa, -o * dhalf),
            p(0, -kappa, -o * delta),
        ]
    }
}

struct LadderCycle {
    base: Polyline,
    push: Polyline,
}

/// Build the two polylines (cycle and its positive pushoff) for the ladder
/// cycle joining letters at slots xa < xb of pair `pair`.
#[allow(clippy::too_many_arguments)]
fn build_cycle(
    sc: &Scale,
    pair: usize,
    xa: i128,
    xb: i128,
    sign_a: i128,
    sign_b: i128,
    inset: i128,
    kappa: i128,
) -> LadderCycle {
    let u = |v: i128| sc.whole(v);
    let tau = sc.frac(1, 8);
    let yi = -u(G) * pair as i128;
    let zi = yi;
    let o_in = if pair % 2 == 0 { 1 } else { -1 };
    let band_a = Band { xc: u(xa) * 4, y_in: yi, z_in: zi, sign: sign_a, o_in };
    let band_b = Band { xc: u(xb) * 4, y_in: yi, z_in: zi, sign: sign_b, o_in };
    let delta = sc.frac(1, 2);

    // polyline pieces, in order; the loop closes back to the first point
    let mut base: Vec<P3> = Vec::new();
    let mut push: Vec<P3> = Vec::new();

    let track_a = band_a.track(sc, 1); // down: inner lane +1
    let disp_a = band_a.displacement(sc, kappa);
    let track_b = band_b.track(sc, -1); // up: inner lane -1, outer lane +1
    let disp_b = band_b.displacement(sc, kappa);

    let add = |base: &mut Vec<P3>, push: &mut Vec<P3>, pt: P3, d: P3| {
        base.push(pt);
        push.push(p(pt.x + d.x, pt.y + d.y, pt.z + d.z));
    };

    // 1. band A downward
    for (pt, d) in track_a.iter().zip(disp_a.iter()) {
        add(&mut base, &mut push, *pt, *d);
    }
    // collar displacement on the outer circle
    let o_out = -o_in;
    let d_out = p(0, -kappa, o_out * delta);
    let d_in = p(0, -kappa, o_in * delta);
    // 2. outer departure tail and run (+x) to band B's outer mouth
    let y_o = yi - u(G);
    let z_o = zi - u(G);
    let m_a_out = band_a.xc - u(1); // lane -1 at the outer mouth of track +1
    let m_b_out = band_b.xc + u(1); // track -1 enters the outer mouth at lane +1
    add(&mut base, &mut push, p(m_a_out + tau, y_o + inset, z_o), d_out);
    add(&mut base, &mut push, p(m_b_out - tau, y_o + inset, z_o), d_out);
    add(&mut base, &mut push, p(m_b_out, y_o, z_o), d_out);
    // 3. band B upward
    for (pt, d) in track_b.iter().rev().zip(disp_b.iter().rev()) {
        add(&mut base, &mut push, *pt, *d);
    }
    // 4. inner departure tail and run (-x) back to band A's inner mouth
    let m_b_in = band_b.xc - u(1); // track -1 inner lane
    let m_a_in = band_a.xc + u(1); // track +1 inner lane
    add(&mut base, &mut push, p(m_b_in - tau, yi + inset, zi), d_in);
    add(&mut base, &mut push, p(m_a_in + tau, yi + inset, zi), d_in);
    // closes back to the first point of band A's track

    LadderCycle { base: Polyline(base), push: Polyline(push) }
}

fn cross2(ax: i128, ay: i128, bx: i128, by: i128) -> i128 {
    ax * by - ay * bx
}

/// Exact linking number of two disjoint closed polylines by signed crossing
/// counting in the (x, y) projection. Also verifies the over/under sums
/// agree, which any pair of disjoint closed curves must satisfy.
fn linking_number(a: &Polyline, b: &Polyline) -> Result<BigInt, SeifertError> {
    let degenerate = |msg: &str| SeifertError::Degenerate(format!("linking: {msg}"));
    let mut over_a = BigInt::zero();
    let mut over_b = BigInt::zero();
    let an = a.0.len();
    let bn = b.0.len();
    for i in 0..an {
        let p1 = a.0[i];
        let p2 = a.0[(i + 1) % an];
        let da = (p2.x - p1.x, p2.y - p1.y);
        if da.0 == 0 && da.1 == 0 {
            continue;
        }
        for j in 0..bn {
            let q1 = b.0[j];
            let q2 = b.0[(j + 1) % bn];
            let db = (q2.x - q1.x, q2.y - q1.y);
            if db.0 == 0 && db.1 == 0 {
                continue;
            }
            let denom = cross2(da.0, da.1, db.0, db.1);
            let rx = q1.x - p1.x;
            let ry = q1.y - p1.y;
            if denom == 0 {
                // parallel: reject collinear overlap, otherwise no crossing
                if cross2(da.0, da.1, rx, ry) == 0 {
                    let s0 = da.0 * rx + da.1 * ry;
                    let s1 = da.0 * (q2.x - p1.x) + da.1 * (q2.y - p1.y);
                    let len = da.0 * da.0 + da.1 * da.1;
                    let (lo, hi) = (s0.min(s1), s0.max(s1));
                    if hi > 0 && lo < len {
                        return Err(degenerate("collinear overlapping segments"));
                    }
                }
                continue;
            }
            // p1 + s*da = q1 + t*db
            let sn = cross2(rx, ry, db.0, db.1);
            let tn = cross2(rx, ry, da.0, da.1);
            let (sn, tn, den) = if denom > 0 {
                (sn, tn, denom)
            } else {
                (-sn, -tn, -denom)
            };
            if sn < 0 || sn > den || tn < 0 || tn > den {
                continue;
            }
            if sn == 0 || sn == den || tn == 0 || tn == den {
                return Err(degenerate("crossing at a segment endpoint"));
            }
            // exact z comparison at the intersection point
            let za = BigInt::from(p1.z) * den + BigInt::from(sn) * BigInt::from(p2.z - p1.z);
            let zb = BigInt::from(q1.z) * den + BigInt::from(tn) * BigInt::from(q2.z - q1.z);
            let eps_a_over = cross2(db.0, db.1, da.0, da.1).signum(); // under = b
            match za.cmp(&zb) {
                std::cmp::Ordering::Greater => over_a += eps_a_over,
                std::cmp::Ordering::Less => over_b -= eps_a_over, // sign flips with roles
                std::cmp::Ordering::Equal => {
                    return Err(degenerate("curves touch at a crossing"));
                }
            }
        }
    }
    if over_a != over_b {
        return Err(degenerate(&format!(
            "over-sum mismatch {over_a} vs {over_b}"
        )));
    }
    Ok(over_a)
}

/// Seifert pairing matrix of the braid-position surface: rows and columns
/// indexed by ladder cycles, entry (i, j) = lk(cycle_i^+, cycle_j).
pub fn seifert_form(braided: &Braided) -> Result<IntMatrix, SeifertError> {
    let n_pairs = braided.n_circles.saturating_sub(1);
    // letters per pair in slot order
    let mut per_pair: Vec<Vec<&super::chain::Letter>> = vec![Vec::new(); n_pairs];
    for l in &braided.letters {
        per_pair[l.pair].push(l);
    }
    for v in &mut per_pair {
        v.sort_by_key(|l| l.slot);
    }

    let mut rungs: Vec<(usize, i128, i128, i128, i128)> = Vec::new();
    for (pair, v) in per_pair.iter().enumerate() {
        for w in v.windows(2) {
            rungs.push((
                pair,
                w[0].slot as i128,
                w[1].slot as i128,
                w[0].sign as i128,
                w[1].sign as i128,
            ));
        }
    }

    let w = rungs.len();
    let sc = Scale::new(w);
    let kappa = sc.frac(1, (w as i128) + 1) / 8; // below the inset spacing
    let cycles: Vec<LadderCycle> = rungs
        .iter()
        .enumerate()
        .map(|(idx, &(pair, xa, xb, sa, sb))| {
            // distinct inset level per cycle, within (1, 4) whole units
            let inset = sc.whole(1) + sc.frac(3 * (idx as i128 + 1), (w as i128) + 1);
            build_cycle(&sc, pair, xa, xb, sa, sb, inset, kappa)
        })
        .collect();

    let mut m = IntMatrix::zero(w, w);
    for i in 0..w {
        for j in 0..w {
            if i == j {
                m[(i, j)] = linking_number(&cycles[i].push, &cycles[i].base)?;
            } else {
                m[(i, j)] = linking_number(&cycles[i].push, &cycles[j].base)?;
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use num_traits::Signed;

    use super::*;

    #[test]
    fn hopf_polyline_linking() {
        // two explicit curves with linking number +1
        let a = Polyline(vec![p(0, 0, 0), p(10, 0, 0), p(10, 10, 0), p(0, 10, 0)]);
        let b = Polyline(vec![p(5, 5, 5), p(5, -5, 5), p(5, -5, -5), p(5, 5, -5)]);
        let lk = linking_number(&a, &b).unwrap();
        assert_eq!(lk.abs(), BigInt::from(1));
        // reversing one curve negates the linking number
        let b_rev = Polyline(b.0.iter().rev().cloned().collect());
        assert_eq!(linking_number(&a, &b_rev).unwrap(), -lk);
    }

    #[test]
    fn split_curves_unlinked() {
        let a = Polyline(vec![p(0, 0, 0), p(4, 0, 0), p(4, 4, 0), p(0, 4, 0)]);
        let b = Polyline(vec![p(10, 0, 1), p(14, 0, 1), p(14, 4, 1), p(10, 4, 1)]);
        assert_eq!(linking_number(&a, &b).unwrap(), BigInt::zero());
    }
}
