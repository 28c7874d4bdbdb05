use serde::{Deserialize, Serialize};

use crate::error::{show, Error, Result};
use crate::geom::Cone;
use crate::lattice::{check_saturated, IntMatrix, LatticeInvolution};
use crate::num::{wire, Int};

/// Homogeneous generator of the coordinate ring of the embedded variety,
/// recorded for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    #[serde(with = "wire::int_vec")]
    pub weight: Vec<Int>,
}

/// Equivariant inclusion of a torus `T_N` into the torus of an affine toric
/// variety `X_{σ′}`, with compatible real structures on both tori.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusEmbedding {
    /// `F : N → N′`; rows are the coordinate weights.
    #[serde(rename = "F", alias = "f")]
    pub f: IntMatrix,
    pub sigma_prime: Cone,
    pub tau_hat: LatticeInvolution,
    pub tau_hat_prime: LatticeInvolution,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Generator>,
    /// Equations of the subvariety; carried along for reporting only.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideal: Vec<String>,
}

impl TorusEmbedding {
    pub fn new(
        f: IntMatrix,
        sigma_prime: Cone,
        tau_hat: LatticeInvolution,
        tau_hat_prime: LatticeInvolution,
    ) -> Self {
        TorusEmbedding {
            f,
            sigma_prime,
            tau_hat,
            tau_hat_prime,
            generators: Vec::new(),
            ideal: Vec::new(),
        }
    }

    /// The whole torus `T_{N′}` acting on `𝔸ⁿ`.
    pub fn full_torus(n: usize) -> Self {
        Self::new(
            IntMatrix::identity(n),
            Cone::orthant(n),
            LatticeInvolution::identity(n),
            LatticeInvolution::identity(n),
        )
    }

    pub fn rank(&self) -> usize {
        self.f.cols()
    }

    pub fn ambient_rank(&self) -> usize {
        self.f.rows()
    }

    /// `τ̃ = τ̂ᵀ` on `M`.
    pub fn tau_tilde(&self) -> LatticeInvolution {
        self.tau_hat.dual()
    }

    /// `m_i = F*(e_i*)`.
    pub fn coordinate_weights(&self) -> Vec<Vec<Int>> {
        self.f.row_vecs()
    }

    /// The permutation `π` with `σ′♯(x_i) = x_{π(i)}`, when `τ̂′` permutes
    /// coordinates.
    pub fn coordinate_permutation(&self) -> Option<Vec<usize>> {
        self.tau_hat_prime.dual().as_permutation()
    }

    pub fn is_orthant_ambient(&self) -> bool {
        self.sigma_prime == Cone::orthant(self.ambient_rank())
    }
}

/// Confirms the invariants of an equivariant embedding, reporting the first
/// violated one.
pub fn validate_embedding(e: &TorusEmbedding) -> Result<()> {
    let (n, d) = (e.f.rows(), e.f.cols());
    if e.tau_hat.rank() != d || e.tau_hat_prime.rank() != n || e.sigma_prime.ambient_dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "F is {n}x{d}, τ̂ has rank {}, τ̂′ has rank {}, σ′ lives in rank {}",
            e.tau_hat.rank(),
            e.tau_hat_prime.rank(),
            e.sigma_prime.ambient_dim()
        )));
    }
    if !e.sigma_prime.is_pointed() || !e.sigma_prime.is_full_dimensional() {
        return Err(Error::InvalidCone(
            "ambient cone must be pointed and full-dimensional".into(),
        ));
    }
    check_saturated(&e.f)?;
    if &e.f * e.tau_hat.matrix() != e.tau_hat_prime.matrix() * &e.f {
        return Err(Error::NonEquivariant);
    }
    if e.sigma_prime.image(e.tau_hat_prime.matrix())? != e.sigma_prime {
        return Err(Error::ConeNotStable);
    }
    let tt = e.tau_tilde();
    if let Some(pi) = e.coordinate_permutation() {
        let w = e.coordinate_weights();
        if (0..n).any(|i| w[pi[i]] != tt.apply(&w[i])) {
            return Err(Error::NonEquivariant);
        }
    }
    for g in &e.generators {
        if g.weight.len() != d {
            return Err(Error::RankMismatch(g.weight.len(), d));
        }
    }
    let mut weights: Vec<Vec<Int>> = e.generators.iter().map(|g| g.weight.clone()).collect();
    let mut images: Vec<Vec<Int>> = weights.iter().map(|w| tt.apply(w)).collect();
    weights.sort();
    images.sort();
    if weights != images {
        let bad = e
            .generators
            .iter()
            .find(|g| !weights.contains(&tt.apply(&g.weight)))
            .map(|g| show(&g.weight))
            .unwrap_or_default();
        return Err(Error::Invalid(format!(
            "generator weights are not stable under the involution: {}",
            bad.join(",")
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ints;

    fn ex51() -> TorusEmbedding {
        TorusEmbedding::new(
            IntMatrix::from_rows(&[[1, 0], [0, 1], [1, 1]]),
            Cone::orthant(3),
            LatticeInvolution::swap(),
            LatticeInvolution::swap().direct_sum(&LatticeInvolution::identity(1)),
        )
    }

    #[test]
    fn validation_examples() {
        assert_eq!(validate_embedding(&ex51()), Ok(()));
        let mut bad = ex51();
        bad.tau_hat_prime = LatticeInvolution::identity(3);
        assert_eq!(validate_embedding(&bad), Err(Error::NonEquivariant));
        assert_eq!(validate_embedding(&TorusEmbedding::full_torus(3)), Ok(()));
    }

    #[test]
    fn other_violations() {
        let mut e = ex51();
        e.f = IntMatrix::from_rows(&[[2, 0], [0, 2], [2, 2]]);
        assert!(matches!(validate_embedding(&e), Err(Error::NotSaturated(_))));

        let skew = Cone::from_generators(&[ints(&[1, 0]), ints(&[1, 2])], 2).unwrap();
        let e = TorusEmbedding::new(
            IntMatrix::identity(2),
            skew,
            LatticeInvolution::swap(),
            LatticeInvolution::swap(),
        );
        assert_eq!(validate_embedding(&e), Err(Error::ConeNotStable));
    }

    #[test]
    fn coordinate_data() {
        let e = ex51();
        assert_eq!(e.coordinate_permutation(), Some(vec![1, 0, 2]));
        assert_eq!(e.coordinate_weights()[2], ints(&[1, 1]));
        let mut g = ex51();
        g.generators = vec![Generator {
            label: "x".into(),
            weight: ints(&[1, 0]),
        }];
        assert!(matches!(validate_embedding(&g), Err(Error::Invalid(_))));
    }
}
