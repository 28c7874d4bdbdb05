use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::IntMatrix;
use super::solve::lattice_kernel;
use crate::error::{Error, Result};
use crate::num::Int;

/// Square integer matrix `τ` with `τ² = I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeInvolution {
    map: IntMatrix,
}

/// Decomposition type of a lattice involution: `n0` trivial factors `(ℤ, 1)`,
/// `n1` sign factors `(ℤ, −1)` and `n2` swap factors `(ℤ², (a,b) ↦ (b,a))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvolutionType {
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
}

impl InvolutionType {
    pub fn rank(&self) -> usize {
        self.n0 + self.n1 + 2 * self.n2
    }

    /// No sign factors.
    pub fn is_quasi_split(&self) -> bool {
        self.n1 == 0
    }
}

impl LatticeInvolution {
    pub fn new(map: IntMatrix) -> Result<Self> {
        if !map.is_square() {
            return Err(Error::NotSquare {
                rows: map.rows(),
                cols: map.cols(),
            });
        }
        if !(&map * &map).is_identity() {
            return Err(Error::NotInvolution);
        }
        Ok(LatticeInvolution { map })
    }

    pub fn identity(n: usize) -> Self {
        LatticeInvolution {
            map: IntMatrix::identity(n),
        }
    }

    pub fn negation(n: usize) -> Self {
        LatticeInvolution {
            map: -&IntMatrix::identity(n),
        }
    }

    /// The coordinate swap on `ℤ²`.
    pub fn swap() -> Self {
        LatticeInvolution {
            map: IntMatrix::from_rows(&[[0, 1], [1, 0]]),
        }
    }

    /// Block-diagonal normal form `1^{n0} ⊕ (−1)^{n1} ⊕ swap^{n2}`.
    pub fn standard(t: InvolutionType) -> Self {
        let mut m = IntMatrix::identity(t.n0).direct_sum(&-&IntMatrix::identity(t.n1));
        for _ in 0..t.n2 {
            m = m.direct_sum(&Self::swap().map);
        }
        LatticeInvolution { map: m }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.map
    }

    pub fn rank(&self) -> usize {
        self.map.rows()
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.map.apply(v)
    }

    /// The involution induced on the dual lattice.
    pub fn dual(&self) -> Self {
        LatticeInvolution {
            map: self.map.transpose(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        LatticeInvolution {
            map: self.map.direct_sum(&other.map),
        }
    }

    /// `U τ U⁻¹` for unimodular `U`.
    pub fn conjugate(&self, u: &IntMatrix) -> Result<Self> {
        let inv = u.unimodular_inverse()?;
        Self::new(&(u * &self.map) * &inv)
    }

    /// Saturated basis of the fixed sublattice.
    pub fn fixed_lattice(&self) -> Vec<Vec<Int>> {
        lattice_kernel(&(&self.map - &IntMatrix::identity(self.rank())))
    }

    /// Saturated basis of the anti-fixed sublattice `{v : τv = −v}`.
    pub fn anti_fixed_lattice(&self) -> Vec<Vec<Int>> {
        lattice_kernel(&(&self.map + &IntMatrix::identity(self.rank())))
    }

    /// Decomposition type. The index of `M₊ ⊕ M₋` in `M` is `2^{n2}`.
    pub fn classify(&self) -> InvolutionType {
        let plus = self.fixed_lattice();
        let minus = self.anti_fixed_lattice();
        let (rp, rm) = (plus.len(), minus.len());
        let mut cols = plus;
        cols.extend(minus);
        let b = IntMatrix::from_cols(&cols, self.rank()).expect("basis vectors share a length");
        let mut index = b.det().expect("square").abs();
        let mut n2 = 0;
        let two = Int::from(2);
        while index > Int::one() {
            debug_assert!((&index % &two).is_zero(), "index must be a power of two");
            index /= &two;
            n2 += 1;
        }
        InvolutionType {
            n0: rp - n2,
            n1: rm - n2,
            n2,
        }
    }

    /// When the matrix is a permutation matrix, the permutation `π` with
    /// `τ e_i = e_{π(i)}`.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.rank();
        let mut perm = Vec::with_capacity(n);
        for j in 0..n {
            let col = self.map.col(j);
            let ones: Vec<usize> = (0..n).filter(|&i| col[i].is_one()).collect();
            if ones.len() != 1 || col.iter().filter(|x| !x.is_zero()).count() != 1 {
                return None;
            }
            perm.push(ones[0]);
        }
        Some(perm)
    }
}

pub fn classify_involution(tau: &LatticeInvolution) -> InvolutionType {
    tau.classify()
}

impl Serialize for LatticeInvolution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeInvolution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = IntMatrix::deserialize(d)?;
        LatticeInvolution::new(m).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(n0: usize, n1: usize, n2: usize) -> InvolutionType {
        InvolutionType { n0, n1, n2 }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(LatticeInvolution::identity(1).classify(), ty(1, 0, 0));
        assert_eq!(LatticeInvolution::negation(1).classify(), ty(0, 1, 0));
        assert_eq!(LatticeInvolution::swap().classify(), ty(0, 0, 1));
        let t = LatticeInvolution::swap().direct_sum(&LatticeInvolution::identity(1));
        assert_eq!(t.classify(), ty(1, 0, 1));
        assert_eq!(LatticeInvolution::identity(0).classify(), ty(0, 0, 0));
    }

    #[test]
    fn standard_forms_round_trip() {
        for t in [ty(2, 1, 1), ty(0, 3, 0), ty(1, 0, 2)] {
            assert_eq!(LatticeInvolution::standard(t).classify(), t);
        }
    }

    #[test]
    fn rejects_non_involutions() {
        assert_eq!(
            LatticeInvolution::new(IntMatrix::from_rows(&[[1, 1], [0, 1]])),
            Err(Error::NotInvolution)
        );
        assert!(matches!(
            LatticeInvolution::new(IntMatrix::from_rows(&[[1, 0]])),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn conjugation_by_shear() {
        // [[1,1],[0,-1]] is conjugate to the swap.
        let t = LatticeInvolution::new(IntMatrix::from_rows(&[[1, 1], [0, -1]])).unwrap();
        assert_eq!(t.classify(), ty(0, 0, 1));
        let u = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        let c = LatticeInvolution::swap().conjugate(&u).unwrap();
        assert_eq!(c.classify(), ty(0, 0, 1));
    }

    #[test]
    fn permutation_view() {
        assert_eq!(LatticeInvolution::swap().as_permutation(), Some(vec![1, 0]));
        assert_eq!(LatticeInvolution::negation(1).as_permutation(), None);
    }
}
