//! SL(2,Z) algebra: Dehn-twist generators, twist words, centralizers via the
//! binary quadratic form det(xI + yA), and torus-bundle first homology.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::intalg::{AbelianGroup, IntMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonodromyError {
    #[error("matrix has determinant {0}, not 1")]
    NotUnimodular(BigInt),
    #[error("matrices do not commute")]
    DoesNotCommute,
    #[error("unrecognized twist letter {0:?} (expected a, A, b, B)")]
    BadLetter(char),
}

/// 2x2 integer matrix of determinant 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SL2Mat {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl SL2Mat {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Result<Self, MonodromyError> {
        let det = &p * &s - &q * &r;
        if !det.is_one() {
            return Err(MonodromyError::NotUnimodular(det));
        }
        Ok(SL2Mat { p, q, r, s })
    }

    pub fn from_i64(p: i64, q: i64, r: i64, s: i64) -> Result<Self, MonodromyError> {
        Self::new(BigInt::from(p), BigInt::from(q), BigInt::from(r), BigInt::from(s))
    }

    pub fn identity() -> Self {
        SL2Mat {
            p: BigInt::one(),
            q: BigInt::zero(),
            r: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    pub fn mul(&self, other: &SL2Mat) -> SL2Mat {
        SL2Mat {
            p: &self.p * &other.p + &self.q * &other.r,
            q: &self.p * &other.q + &self.q * &other.s,
            r: &self.r * &other.p + &self.s * &other.r,
            s: &self.r * &other.q + &self.s * &other.s,
        }
    }

    pub fn inverse(&self) -> SL2Mat {
        SL2Mat {
            p: self.s.clone(),
            q: -self.q.clone(),
            r: -self.r.clone(),
            s: self.p.clone(),
        }
    }

    pub fn neg(&self) -> SL2Mat {
        SL2Mat {
            p: -self.p.clone(),
            q: -self.q.clone(),
            r: -self.r.clone(),
            s: -self.s.clone(),
        }
    }

    pub fn trace(&self) -> BigInt {
        &self.p + &self.s
    }

    pub fn is_scalar(&self) -> bool {
        self.q.is_zero() && self.r.is_zero() && self.p == self.s
    }

    pub fn commutes_with(&self, other: &SL2Mat) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// x*I + y*A
    pub fn affine(x: &BigInt, y: &BigInt, a: &SL2Mat) -> SL2Mat {
        SL2Mat {
            p: x + y * &a.p,
            q: y * &a.q,
            r: y * &a.r,
            s: x + y * &a.s,
        }
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::new(
            2,
            2,
            vec![self.p.clone(), self.q.clone(), self.r.clone(), self.s.clone()],
        )
    }

    pub fn max_abs_entry(&self) -> BigInt {
        [&self.p, &self.q, &self.r, &self.s]
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap()
    }
}

impl fmt::Debug for SL2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}

impl fmt::Display for SL2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}

/// Dehn twist generator a = (1 -1; 0 1).
pub fn generator_a() -> SL2Mat {
    SL2Mat::from_i64(1, -1, 0, 1).unwrap()
}

/// Dehn twist generator b = (1 0; 1 1).
pub fn generator_b() -> SL2Mat {
    SL2Mat::from_i64(1, 0, 1, 1).unwrap()
}

/// Free word over {a, a^-1, b, b^-1}. Letters: `a`, `A` (inverse), `b`, `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistWord(pub Vec<char>);

impl TwistWord {
    pub fn parse(s: &str) -> Result<TwistWord, MonodromyError> {
        let mut letters = Vec::new();
        for ch in s.chars() {
            match ch {
                'a' | 'A' | 'b' | 'B' => letters.push(ch),
                c if c.is_whitespace() || c == '.' || c == '*' => {}
                c => return Err(MonodromyError::BadLetter(c)),
            }
        }
        Ok(TwistWord(letters))
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord(
            self.0
                .iter()
                .rev()
                .map(|c| match c {
                    'a' => 'A',
                    'A' => 'a',
                    'b' => 'B',
                    _ => 'b',
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TwistWord(v)
    }
}

/// Ordered product: left-to-right word is left-to-right multiplication.
pub fn evaluate(word: &TwistWord) -> SL2Mat {
    let a = generator_a();
    let b = generator_b();
    let mut acc = SL2Mat::identity();
    for &ch in &word.0 {
        let m = match ch {
            'a' => a.clone(),
            'A' => a.inverse(),
            'b' => b.clone(),
            _ => b.inverse(),
        };
        acc = acc.mul(&m);
    }
    acc
}

/// Trace classification of an SL(2,Z) element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
    Scalar,
}

impl fmt::Display for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConjClass::Elliptic => "elliptic",
            ConjClass::Parabolic => "parabolic",
            ConjClass::Hyperbolic => "hyperbolic",
            ConjClass::Scalar => "scalar",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

/// Trace, order, and conjugacy class of A.
pub fn order_and_class(a: &SL2Mat) -> (BigInt, Order, ConjClass) {
    let tr = a.trace();
    if a.is_scalar() {
        let order = if a.p.is_one() { 1 } else { 2 };
        return (tr, Order::Finite(order), ConjClass::Scalar);
    }
    let t = tr.abs();
    if t < BigInt::from(2) {
        // elliptic: order divides 12, find it directly
        let mut pow = a.clone();
        for k in 1..=12u32 {
            if pow == SL2Mat::identity() {
                return (tr, Order::Finite(k), ConjClass::Elliptic);
            }
            pow = pow.mul(a);
        }
        unreachable!("elliptic elements of SL(2,Z) have order dividing 12");
    } else if t == BigInt::from(2) {
        (tr, Order::Infinite, ConjClass::Parabolic)
    } else {
        (tr, Order::Infinite, ConjClass::Hyperbolic)
    }
}

/// Description of the centralizer of A in SL(2,Z).
///
/// For non-scalar A, every commuting matrix lies in the plane x*I + y*A and
/// the solutions of det(xI + yA) = x^2 + tr(A)xy + y^2 = 1 classify it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralizerDescription {
    /// A = ±I: everything commutes.
    AllOfSl2,
    /// Finitely many solutions: the explicit list.
    Finite(Vec<SL2Mat>),
    /// tr A = ±2, A non-scalar: {±(I + k·N) : k in Z} with N = ±(A - tr/2 I).
    ParabolicFamily { nilpotent_shift: SL2Mat },
    /// |tr A| > 2: {±B0^k : k in Z} with B0 the fundamental solution.
    HyperbolicFamily { generator: SL2Mat },
}

impl CentralizerDescription {
    /// All centralizer elements with max |entry| <= bound.
    /// Used to compare against the brute-force oracle.
    pub fn elements_in_box(&self, a: &SL2Mat, bound: i64) -> Vec<SL2Mat> {
        let bnd = BigInt::from(bound);
        let mut out: Vec<SL2Mat> = Vec::new();
        match self {
            CentralizerDescription::AllOfSl2 => {
                out = centralizer_bruteforce(&SL2Mat::identity(), bound);
            }
            CentralizerDescription::Finite(list) => {
                out = list
                    .iter()
                    .filter(|m| m.max_abs_entry() <= bnd)
                    .cloned()
                    .collect();
            }
            CentralizerDescription::ParabolicFamily { nilpotent_shift } => {
                // walk k = 0, ±1, ±2, ... until out of the box in both directions
                let mut push_family = |step: &SL2Mat| {
                    let mut cur = SL2Mat::identity();
                    loop {
                        if cur.max_abs_entry() > bnd {
                            break;
                        }
                        out.push(cur.clone());
                        out.push(cur.neg());
                        cur = cur.mul(step);
                        if step.is_scalar() {
                            break;
                        }
                    }
                };
                let fwd = SL2Mat {
                    p: BigInt::one() + &nilpotent_shift.p,
                    q: nilpotent_shift.q.clone(),
                    r: nilpotent_shift.r.clone(),
                    s: BigInt::one() + &nilpotent_shift.s,
                };
                push_family(&fwd);
                let back = fwd.inverse();
                let mut cur = back.clone();
                while cur.max_abs_entry() <= bnd {
                    out.push(cur.clone());
                    out.push(cur.neg());
                    cur = cur.mul(&back);
                }
            }
            CentralizerDescription::HyperbolicFamily { generator } => {
                for step in [generator.clone(), generator.inverse()] {
                    let mut cur = SL2Mat::identity();
                    loop {
                        if cur.max_abs_entry() > bnd {
                            break;
                        }
                        out.push(cur.clone());
                        out.push(cur.neg());
                        cur = cur.mul(&step);
                    }
                }
            }
        }
        debug_assert!(out.iter().all(|b| b.commutes_with(a)));
        sort_dedup(&mut out);
        out
    }
}

fn sort_dedup(v: &mut Vec<SL2Mat>) {
    v.sort_by(|x, y| {
        (&x.p, &x.q, &x.r, &x.s).cmp(&(&y.p, &y.q, &y.r, &y.s))
    });
    v.dedup();
}

/// Structural centralizer computation.
pub fn centralizer(a: &SL2Mat) -> CentralizerDescription {
    if a.is_scalar() {
        return CentralizerDescription::AllOfSl2;
    }
    let tr = a.trace();
    let t_abs = tr.abs();
    if t_abs < BigInt::from(2) {
        // definite form x^2 + t.x.y + y^2 = 1: |x|, |y| <= 2 suffices
        let mut sols = Vec::new();
        for x in -2i64..=2 {
            for y in -2i64..=2 {
                let xb = BigInt::from(x);
                let yb = BigInt::from(y);
                let val = &xb * &xb + &tr * &xb * &yb + &yb * &yb;
                if val.is_one() {
                    sols.push(SL2Mat::affine(&xb, &yb, a));
                }
            }
        }
        sort_dedup(&mut sols);
        CentralizerDescription::Finite(sols)
    } else if t_abs == BigInt::from(2) {
        // (x ± y)^2 = 1: infinite parabolic family generated by I + N,
        // N = sign * (A - (tr/2) I)
        let half = &tr / 2; // ±1
        let shift = SL2Mat {
            p: &a.p - &half,
            q: a.q.clone(),
            r: a.r.clone(),
            s: &a.s - &half,
        };
        CentralizerDescription::ParabolicFamily { nilpotent_shift: shift }
    } else {
        // Pell form: x^2 + t.x.y + y^2 = 1 with |t| > 2.
        // Fundamental solution with y > 0 found by increasing y.
        let mut y = BigInt::one();
        let generator = loop {
            // solve x^2 + t.x.y + (y^2 - 1) = 0 for integer x:
            // discriminant = (t^2 - 4) y^2 + 4 must be a perfect square
            let disc: BigInt = (&tr * &tr - BigInt::from(4)) * &y * &y + BigInt::from(4);
            let root = disc.sqrt();
            if &root * &root == disc {
                let num = -(&tr * &y) + &root;
                if (&num % 2u8).is_zero() {
                    let x = num / 2;
                    break SL2Mat::affine(&x, &y, a);
                }
                let num = -(&tr * &y) - &root;
                if (&num % 2u8).is_zero() {
                    let x = num / 2;
                    break SL2Mat::affine(&x, &y, a);
                }
            }
            y += 1;
        };
        CentralizerDescription::HyperbolicFamily { generator }
    }
}

/// Exhaustive list of all B in SL(2,Z), entries in [-bound, bound], with AB = BA.
pub fn centralizer_bruteforce(a: &SL2Mat, bound: i64) -> Vec<SL2Mat> {
    let mut out = Vec::new();
    for p in -bound..=bound {
        for q in -bound..=bound {
            for r in -bound..=bound {
                // p*s - q*r = 1
                let qr1 = q as i128 * r as i128 + 1;
                if p == 0 {
                    if qr1 == 0 {
                        for s in -bound..=bound {
                            let b = SL2Mat::from_i64(p, q, r, s).unwrap();
                            if b.commutes_with(a) {
                                out.push(b);
                            }
                        }
                    }
                    continue;
                }
                if qr1 % p as i128 != 0 {
                    continue;
                }
                let s = qr1 / p as i128;
                if s.unsigned_abs() > bound as u128 {
                    continue;
                }
                let b = SL2Mat::from_i64(p, q, r, s as i64).unwrap();
                if b.commutes_with(a) {
                    out.push(b);
                }
            }
        }
    }
    sort_dedup(&mut out);
    out
}

/// H1 of the T^2 bundle over S^1 with monodromy A: Z + coker(A - I).
pub fn torus_bundle_h1(a: &SL2Mat) -> AbelianGroup {
    let m = IntMatrix::new(
        2,
        2,
        vec![
            &a.p - 1,
            a.q.clone(),
            a.r.clone(),
            &a.s - 1,
        ],
    );
    AbelianGroup::free(1).sum(&m.cokernel())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionVerdict {
    /// B is one of ±I, ±A: the induced boundary map extends over the filling.
    ExtendsKnown,
    /// B commutes but is outside the known-extension list; no claim is made.
    ObstructedUnknown,
}

impl fmt::Display for ExtensionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionVerdict::ExtendsKnown => write!(f, "extends_known"),
            ExtensionVerdict::ObstructedUnknown => write!(f, "obstructed_unknown"),
        }
    }
}

/// Classify a commuting B against {±I, ±A}. Non-commuting pairs are rejected.
pub fn extension_verdict(a: &SL2Mat, b: &SL2Mat) -> Result<ExtensionVerdict, MonodromyError> {
    if !a.commutes_with(b) {
        return Err(MonodromyError::DoesNotCommute);
    }
    let id = SL2Mat::identity();
    if *b == id || *b == id.neg() || b == a || *b == a.neg() {
        Ok(ExtensionVerdict::ExtendsKnown)
    } else {
        Ok(ExtensionVerdict::ObstructedUnknown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_a() -> SL2Mat {
        evaluate(&TwistWord::parse("aab").unwrap())
    }

    #[test]
    fn generators() {
        assert_eq!(generator_a(), SL2Mat::from_i64(1, -1, 0, 1).unwrap());
        assert_eq!(generator_b(), SL2Mat::from_i64(1, 0, 1, 1).unwrap());
    }

    #[test]
    fn monodromy_word() {
        assert_eq!(paper_a(), SL2Mat::from_i64(-1, -2, 1, 1).unwrap());
        assert_eq!(evaluate(&TwistWord::parse("").unwrap()), SL2Mat::identity());
        let w = TwistWord::parse("abAB").unwrap();
        let winv = w.inverse();
        assert_eq!(
            evaluate(&w.concat(&winv)),
            SL2Mat::identity()
        );
    }

    #[test]
    fn order_of_paper_a() {
        let a = paper_a();
        let (tr, order, class) = order_and_class(&a);
        assert_eq!(tr, BigInt::zero());
        assert_eq!(order, Order::Finite(4));
        assert_eq!(class, ConjClass::Elliptic);
        let a2 = a.mul(&a);
        assert_eq!(a2, SL2Mat::identity().neg());
    }

    #[test]
    fn centralizer_of_paper_a() {
        let a = paper_a();
        let c = centralizer(&a);
        let id = SL2Mat::identity();
        let expected = {
            let mut v = vec![id.clone(), id.neg(), a.clone(), a.neg()];
            sort_dedup(&mut v);
            v
        };
        match &c {
            CentralizerDescription::Finite(sols) => assert_eq!(*sols, expected),
            other => panic!("expected finite centralizer, got {other:?}"),
        }
        assert_eq!(centralizer_bruteforce(&a, 10), expected);
        assert_eq!(c.elements_in_box(&a, 10), expected);
    }

    #[test]
    fn centralizer_parabolic() {
        let a = SL2Mat::from_i64(1, 1, 0, 1).unwrap();
        let c = centralizer(&a);
        assert!(matches!(c, CentralizerDescription::ParabolicFamily { .. }));
        let boxed = c.elements_in_box(&a, 20);
        let brute = centralizer_bruteforce(&a, 20);
        assert_eq!(boxed, brute);
    }

    #[test]
    fn centralizer_hyperbolic() {
        // a*b has trace 3
        let a = evaluate(&TwistWord::parse("aB").unwrap());
        assert_eq!(order_and_class(&a).2, ConjClass::Hyperbolic);
        let c = centralizer(&a);
        let boxed = c.elements_in_box(&a, 15);
        let brute = centralizer_bruteforce(&a, 15);
        assert_eq!(boxed, brute);
    }

    #[test]
    fn centralizer_scalar() {
        let neg_i = SL2Mat::identity().neg();
        assert_eq!(centralizer(&neg_i), CentralizerDescription::AllOfSl2);
        let brute = centralizer_bruteforce(&neg_i, 1);
        // every SL(2,Z) matrix with entries in {-1,0,1} commutes with -I
        assert!(brute.len() > 4);
    }

    #[test]
    fn torus_bundle_homology() {
        let a = paper_a();
        let h = torus_bundle_h1(&a);
        assert_eq!(h, AbelianGroup::new(1, vec![BigInt::from(2)]));
        assert_eq!(torus_bundle_h1(&SL2Mat::identity()), AbelianGroup::free(3));
        let par = SL2Mat::from_i64(1, 1, 0, 1).unwrap();
        assert_eq!(torus_bundle_h1(&par), AbelianGroup::free(2));
    }

    #[test]
    fn extension_verdicts() {
        let a = paper_a();
        assert_eq!(
            extension_verdict(&a, &a).unwrap(),
            ExtensionVerdict::ExtendsKnown
        );
        assert_eq!(
            extension_verdict(&a, &SL2Mat::identity()).unwrap(),
            ExtensionVerdict::ExtendsKnown
        );
        let b = generator_b();
        assert_eq!(extension_verdict(&a, &b), Err(MonodromyError::DoesNotCommute));
    }
}
