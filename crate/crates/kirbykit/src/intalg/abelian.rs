use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntMatrix;

/// Finitely generated abelian group as free rank plus invariant factors
/// d1 | d2 | ..., each >= 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        for d in &torsion {
            assert!(d > &BigInt::one(), "invariant factors must be >= 2");
        }
        for w in torsion.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "torsion must form a divisibility chain");
        }
        AbelianGroup { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum.
    pub fn sum(&self, other: &AbelianGroup) -> AbelianGroup {
        if self.torsion.is_empty() || other.torsion.is_empty() {
            let mut torsion = self.torsion.clone();
            torsion.extend_from_slice(&other.torsion);
            return AbelianGroup { free_rank: self.free_rank + other.free_rank, torsion };
        }
        // re-normalize mixed torsion through a diagonal matrix
        let mut diag: Vec<BigInt> = self.torsion.clone();
        diag.extend_from_slice(&other.torsion);
        let m = IntMatrix::diagonal(&diag);
        let g = m.cokernel();
        AbelianGroup {
            free_rank: self.free_rank + other.free_rank + g.free_rank,
            torsion: g.torsion,
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl IntMatrix {
    /// Cokernel of the map Z^cols -> Z^rows given by this matrix.
    pub fn cokernel(&self) -> AbelianGroup {
        let snf = self.smith_normal_form();
        let diag = snf.diagonal();
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        let free_rank = self.rows() - nonzero;
        let torsion = diag
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect();
        AbelianGroup::new(free_rank, torsion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_examples() {
        // 1x1 zero matrix -> Z
        let m = IntMatrix::zero(1, 1);
        assert_eq!(m.cokernel(), AbelianGroup::free(1));
        // [[-2,-2],[1,0]] -> Z/2
        let m = IntMatrix::from_i64(&[&[-2, -2], &[1, 0]]);
        assert_eq!(m.cokernel(), AbelianGroup::new(0, vec![BigInt::from(2)]));
        // identity -> trivial
        let m = IntMatrix::identity(2);
        assert!(m.cokernel().is_trivial());
    }

    #[test]
    fn cokernel_empty_shapes() {
        // 0 columns: cokernel is all of Z^rows
        let m = IntMatrix::zero(3, 0);
        assert_eq!(m.cokernel(), AbelianGroup::free(3));
        let m = IntMatrix::zero(0, 0);
        assert!(m.cokernel().is_trivial());
    }

    #[test]
    fn display() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        let g = AbelianGroup::new(2, vec![BigInt::from(2), BigInt::from(6)]);
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/6");
    }

    #[test]
    fn sum_renormalizes() {
        let a = AbelianGroup::new(0, vec![BigInt::from(2)]);
        let b = AbelianGroup::new(1, vec![BigInt::from(3)]);
        // Z/2 + Z/3 = Z/6
        let s = a.sum(&b);
        assert_eq!(s, AbelianGroup::new(1, vec![BigInt::from(6)]));
    }
}
