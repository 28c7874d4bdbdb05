use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Cone;
use crate::lattice::{IntMatrix, LatticeInvolution};
use crate::num::Int;

/// Largest rank for which [`stable_conjugate`] enumerates conjugates.
pub const CONJUGATE_SEARCH_MAX_RANK: usize = 3;

/// `τ̂(ω) = ω` as sets.
pub fn cone_stable(tau: &LatticeInvolution, omega: &Cone) -> Result<bool> {
    if tau.rank() != omega.ambient_dim() {
        return Err(Error::RankMismatch(tau.rank(), omega.ambient_dim()));
    }
    Ok(&omega.image(tau.matrix())? == omega)
}

/// An equivalent involution `U τ̂ U⁻¹` stabilizing `ω`, found among signed
/// permutations `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableConjugate {
    pub conjugator: IntMatrix,
    pub involution: LatticeInvolution,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Searches signed-permutation conjugates of `τ̂` for one that stabilizes
/// `ω`. Only ranks up to [`CONJUGATE_SEARCH_MAX_RANK`] are searched; larger
/// ranks are rejected rather than answered partially.
pub fn stable_conjugate(tau: &LatticeInvolution, omega: &Cone) -> Result<Option<StableConjugate>> {
    let n = tau.rank();
    if n != omega.ambient_dim() {
        return Err(Error::RankMismatch(n, omega.ambient_dim()));
    }
    if n > CONJUGATE_SEARCH_MAX_RANK {
        return Err(Error::Invalid(format!(
            "conjugate search is limited to rank {CONJUGATE_SEARCH_MAX_RANK}, got {n}"
        )));
    }
    for perm in permutations(n) {
        for signs in 0..(1u32 << n) {
            let mut u = IntMatrix::zeros(n, n);
            for (j, &i) in perm.iter().enumerate() {
                u[(i, j)] = if signs >> j & 1 == 1 { Int::from(-1) } else { Int::from(1) };
            }
            let conj = tau.conjugate(&u)?;
            if cone_stable(&conj, omega)? {
                return Ok(Some(StableConjugate {
                    conjugator: u,
                    involution: conj,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ints;

    #[test]
    fn stability_examples() {
        let swap = LatticeInvolution::swap();
        assert!(cone_stable(&swap, &Cone::orthant(2)).unwrap());
        let skew = Cone::from_generators(&[ints(&[1, 0]), ints(&[1, 2])], 2).unwrap();
        assert!(!cone_stable(&swap, &skew).unwrap());
        assert!(cone_stable(&LatticeInvolution::identity(2), &skew).unwrap());
        assert!(matches!(
            cone_stable(&swap, &Cone::orthant(3)),
            Err(Error::RankMismatch(2, 3))
        ));
    }

    #[test]
    fn conjugate_search() {
        let skew = Cone::from_generators(&[ints(&[1, 0]), ints(&[1, 2])], 2).unwrap();
        assert_eq!(stable_conjugate(&LatticeInvolution::swap(), &skew).unwrap(), None);
        // −id conjugates only to itself and never fixes a pointed cone.
        let neg = LatticeInvolution::negation(2);
        assert_eq!(stable_conjugate(&neg, &Cone::orthant(2)).unwrap(), None);
        // diag(1,−1) preserves the half-plane x ≥ 0.
        let flip = LatticeInvolution::new(IntMatrix::from_rows(&[[1, 0], [0, -1]])).unwrap();
        let half = Cone::from_inequalities(&[ints(&[1, 0])], &[], 2).unwrap();
        let found = stable_conjugate(&flip, &half).unwrap().unwrap();
        assert!(cone_stable(&found.involution, &half).unwrap());
        assert_eq!(permutations(3).len(), 6);
    }
}
