//! S-equivalence reduction of Seifert matrices: undo surface stabilizations
//! of the form V -> [[V, x, 0], [0, k, 1], [0, 0, 0]] (and its transpose),
//! recognized up to integer congruence.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::intalg::IntMatrix;

/// One reduction step against left null rows; returns None when no
/// stabilization pattern is found.
fn step_left(v: &IntMatrix) -> Option<IntMatrix> {
    let n = v.rows();
    if n < 2 {
        return None;
    }
    let snf = v.smith_normal_form();
    let diag = snf.diagonal();
    let j = diag.iter().position(|d| d.is_zero())?;
    // row j of u is a primitive left-kernel vector; move it last
    let mut p = snf.u.clone();
    for r in j..n - 1 {
        p.swap_rows(r, r + 1);
    }
    let mut m = &(&p * v) * &p.transpose();

    // last row is zero; the last column's head must be a primitive vector
    let head: Vec<BigInt> = (0..n - 1).map(|i| m[(i, n - 1)].clone()).collect();
    if head.iter().all(|c| c.is_zero()) {
        return None;
    }
    let col = IntMatrix::new(n - 1, 1, head);
    let csnf = col.smith_normal_form();
    if !csnf.d[(0, 0)].is_one() {
        return None;
    }
    // q * head = e_0; move the 1 to the last head position
    let mut q = csnf.u.clone();
    for r in 0..n - 2 {
        q.swap_rows(r, r + 1);
    }
    // extend q to n x n and congruence
    let mut p2 = IntMatrix::zero(n, n);
    for i in 0..n - 1 {
        for jj in 0..n - 1 {
            p2[(i, jj)] = q[(i, jj)].clone();
        }
    }
    p2[(n - 1, n - 1)] = BigInt::one();
    m = &(&p2 * &m) * &p2.transpose();
    if m[(n - 2, n - 1)] == BigInt::from(-1) {
        m.negate_row(n - 2);
        m.negate_col(n - 2);
    }
    debug_assert!(m[(n - 2, n - 1)].is_one());
    debug_assert!((0..n - 2).all(|i| m[(i, n - 1)].is_zero()));

    // clear the head of row n-2 using the (n-2, n-1) unit: adding multiples
    // of the last column only changes row n-2, and the symmetric row
    // operation adds the zero last row
    for jj in 0..n - 2 {
        let k = m[(n - 2, jj)].clone();
        if k.is_zero() {
            continue;
        }
        let neg = -k;
        m.add_col_multiple(jj, n - 1, &neg);
        m.add_row_multiple(jj, n - 1, &neg);
    }
    let keep: Vec<usize> = (0..n - 2).collect();
    Some(m.submatrix(&keep, &keep))
}

/// Reduce a Seifert matrix by undoing stabilizations until none is found.
pub fn s_reduce(mut v: IntMatrix) -> IntMatrix {
    loop {
        if let Some(r) = step_left(&v) {
            v = r;
            continue;
        }
        if let Some(r) = step_left(&v.transpose()) {
            v = r.transpose();
            continue;
        }
        return v;
    }
}
