use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Result of Smith normal form: `u * m * v = d` with `u`, `v` unimodular and
/// `d` diagonal with a divisibility chain d1 | d2 | ...
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Diagonal entries of `d` (all nonnegative), up to min(rows, cols).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries (the rank).
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

impl IntMatrix {
    /// Smith normal form over Z. Pivot strategy: smallest nonzero absolute
    /// value, first occurrence in row-major scan, for reproducible u and v.
    pub fn smith_normal_form(&self) -> SmithNormalForm {
        let mut d = self.clone();
        let mut u = IntMatrix::identity(d.rows());
        let mut v = IntMatrix::identity(d.cols());
        let n = d.rows().min(d.cols());

        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = smallest_pivot(&d, t) else {
                break;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            loop {
                // clear column t below the pivot
                let mut dirty = false;
                for r in t + 1..d.rows() {
                    if d[(r, t)].is_zero() {
                        continue;
                    }
                    let q = rounded_quotient(&d[(r, t)], &d[(t, t)]);
                    if !q.is_zero() {
                        let k = -q;
                        d.add_row_multiple(r, t, &k);
                        u.add_row_multiple(r, t, &k);
                    }
                    if !d[(r, t)].is_zero() {
                        // remainder became a smaller pivot
                        d.swap_rows(t, r);
                        u.swap_rows(t, r);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // clear row t right of the pivot
                for c in t + 1..d.cols() {
                    if d[(t, c)].is_zero() {
                        continue;
                    }
                    let q = rounded_quotient(&d[(t, c)], &d[(t, t)]);
                    if !q.is_zero() {
                        let k = -q;
                        d.add_col_multiple(c, t, &k);
                        v.add_col_multiple(c, t, &k);
                    }
                    if !d[(t, c)].is_zero() {
                        d.swap_cols(t, c);
                        v.swap_cols(t, c);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // pivot must divide the whole remaining block
                let mut offender = None;
                'scan: for r in t + 1..d.rows() {
                    for c in t + 1..d.cols() {
                        if !(&d[(r, c)] % &d[(t, t)]).is_zero() {
                            offender = Some(r);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(r) => {
                        let one = BigInt::from(1);
                        d.add_row_multiple(t, r, &one);
                        u.add_row_multiple(t, r, &one);
                    }
                    None => break,
                }
            }

            if d[(t, t)].is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        SmithNormalForm { u, d, v }
    }
}

fn smallest_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            if d[(i, j)].is_zero() {
                continue;
            }
            match &best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if d[(i, j)].abs() < d[(*bi, *bj)].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Quotient rounded to nearest, so the remainder has absolute value
/// at most |b|/2. Keeps pivots shrinking fast.
fn rounded_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = num_integer::Integer::div_rem(a, b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntMatrix) -> SmithNormalForm {
        let snf = m.smith_normal_form();
        // u * m * v = d
        let umv = &(&snf.u * m) * &snf.v;
        assert_eq!(umv, snf.d, "u*m*v != d for {m:?}");
        // unimodular
        assert_eq!(snf.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(snf.v.determinant().unwrap().abs(), BigInt::one());
        // diagonal with divisibility chain
        let diag = snf.diagonal();
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero(), "off-diagonal in d");
                }
            }
        }
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "no divisibility chain: {diag:?}");
            } else {
                assert!(w[1].is_zero(), "zero before nonzero in chain");
            }
        }
        snf
    }

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let snf = check(&m);
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(3);
        let snf = check(&m);
        assert_eq!(snf.d, IntMatrix::identity(3));
    }

    #[test]
    fn snf_monodromy_example() {
        // A - I for the torus-bundle monodromy computation
        let m = IntMatrix::from_i64(&[&[-2, -2], &[1, 0]]);
        let snf = check(&m);
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn snf_zero_and_rectangular() {
        let m = IntMatrix::zero(1, 1);
        let snf = check(&m);
        assert_eq!(snf.rank(), 0);

        let m = IntMatrix::from_i64(&[&[2, 4, 6]]);
        let snf = check(&m);
        assert_eq!(snf.diagonal(), vec![BigInt::from(2)]);

        let m = IntMatrix::from_i64(&[&[6, 10], &[10, 6], &[4, 16]]);
        check(&m);
    }
}
