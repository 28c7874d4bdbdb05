use num_traits::Zero;

use super::cone::Cone;
use super::polyhedron::Polyhedron;
use crate::num::{dot, to_rat, Int, Rat};

/// Lattice points of `cone` inside the box `lo ≤ x ≤ hi`.
pub(crate) fn cone_points_in_box(cone: &Cone, lo: &[Int], hi: &[Int]) -> Vec<Vec<Int>> {
    let ineqs: Vec<(Vec<Rat>, Rat)> = cone
        .facets()
        .iter()
        .map(|f| (to_rat(f), Rat::zero()))
        .collect();
    let eqs: Vec<(Vec<Rat>, Rat)> = cone
        .equations()
        .iter()
        .map(|e| (to_rat(e), Rat::zero()))
        .collect();
    Polyhedron::new(&ineqs, &eqs, cone.ambient_dim())
        .expect("lengths match")
        .lattice_points(lo, hi)
}

impl Cone {
    /// Minimal generating set of the monoid `C ∩ ℤ^d` of a pointed cone.
    ///
    /// Every irreducible element lies in the zonotope spanned by the rays,
    /// so candidates come from its bounding box; they are scanned by
    /// increasing degree and kept when no smaller irreducible divides them.
    pub fn hilbert_basis(&self) -> Vec<Vec<Int>> {
        assert!(self.is_pointed(), "Hilbert basis requested for a non-pointed cone");
        if self.rays().is_empty() {
            return Vec::new();
        }
        let d = self.ambient_dim();
        let mut lo = vec![Int::zero(); d];
        let mut hi = vec![Int::zero(); d];
        for r in self.rays() {
            for j in 0..d {
                if r[j] < Int::zero() {
                    lo[j] += &r[j];
                } else {
                    hi[j] += &r[j];
                }
            }
        }
        let grading = self.grading();
        let mut candidates: Vec<(Int, Vec<Int>)> = cone_points_in_box(self, &lo, &hi)
            .into_iter()
            .filter(|x| x.iter().any(|v| !v.is_zero()))
            .map(|x| (dot(&grading, &x), x))
            .collect();
        candidates.sort();
        let mut basis: Vec<Vec<Int>> = Vec::new();
        for (_, x) in candidates {
            let reducible = basis.iter().any(|y| {
                let diff: Vec<Int> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                self.contains(&diff)
            });
            if !reducible {
                basis.push(x);
            }
        }
        basis.sort();
        basis
    }

    /// A finite generating set of the monoid `C ∩ ℤ^d`, also for cones with
    /// lineality (union of the Hilbert bases of the pointed pieces cut out
    /// by the coordinate orthants).
    pub fn monoid_generators(&self) -> Vec<Vec<Int>> {
        if self.is_pointed() {
            return self.hilbert_basis();
        }
        let d = self.ambient_dim();
        let mut out: Vec<Vec<Int>> = Vec::new();
        for mask in 0..(1u32 << d) {
            let signs: Vec<i32> = (0..d).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let piece = self.with_orthant(&signs).expect("lengths match");
            out.extend(piece.hilbert_basis());
        }
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ints;

    #[test]
    fn classic_hilbert_bases() {
        assert_eq!(
            Cone::orthant(2).hilbert_basis(),
            vec![ints(&[0, 1]), ints(&[1, 0])]
        );
        let c = Cone::from_generators(&[ints(&[1, 0]), ints(&[1, 2])], 2).unwrap();
        assert_eq!(
            c.hilbert_basis(),
            vec![ints(&[1, 0]), ints(&[1, 1]), ints(&[1, 2])]
        );
        // Cone{(0,1),(3,-2)}... A_2 singularity style cone {(1,0),(1,3)}.
        let c = Cone::from_generators(&[ints(&[1, 0]), ints(&[1, 3])], 2).unwrap();
        assert_eq!(c.hilbert_basis().len(), 4);
        assert!(Cone::zero(2).hilbert_basis().is_empty());
    }

    #[test]
    fn non_pointed_generators() {
        let h = Cone::from_inequalities(&[ints(&[1, 1])], &[], 2).unwrap();
        let g = h.monoid_generators();
        assert!(g.contains(&ints(&[1, -1])) && g.contains(&ints(&[-1, 1])));
        assert!(g.contains(&ints(&[1, 0])) && g.contains(&ints(&[0, 1])));
    }
}
