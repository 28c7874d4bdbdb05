use serde::{Deserialize, Serialize};

use super::embedding::{validate_embedding, TorusEmbedding};
use crate::descent::{CharacterCocycle, SignCharacter};
use crate::divisor::{principal_divisor, pullback_involution, PolyhedralDivisor, ToricBase, WeilQDivisor};
use crate::error::{Error, Result};
use crate::geom::{fiber_polyhedron, image_fan, Cone};
use crate::lattice::{
    cokernel_projection, cosection, equivariant_cosection, right_inverse, solve_left, IntMatrix,
    LatticeInvolution,
};
use crate::num::{wire, Int};

/// Exact sequence data of a downgrade: `P·F = 0`, `s·F = I`, and
/// `t* : M′ → M_Y` with `t*·Pᵀ = I`, `Pᵀ·t* = I − sᵀFᵀ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientData {
    pub embedding: TorusEmbedding,
    pub projection: IntMatrix,
    pub cosection: IntMatrix,
    pub section_t: IntMatrix,
    /// Whether the cosection intertwines `τ̂′` and `τ̂`.
    pub equivariant_cosection: bool,
}

/// Presentation of a real torus action by a polyhedral divisor on a toric
/// base with real structure, plus the twisting character
/// `h(m) = ε(m)·χ^{E m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AHDatum {
    base: ToricBase,
    tau_hat_y: LatticeInvolution,
    divisor: PolyhedralDivisor,
    tau_hat: LatticeInvolution,
    weight_cone: Cone,
    h_exponent: IntMatrix,
    h_sign: SignCharacter,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient: Option<AmbientData>,
}

impl AHDatum {
    /// Assembles a datum without an ambient embedding; the weight cone is
    /// the dual of the divisor's tail.
    pub fn new(
        divisor: PolyhedralDivisor,
        tau_hat_y: LatticeInvolution,
        tau_hat: LatticeInvolution,
        h_exponent: IntMatrix,
        h_sign: SignCharacter,
    ) -> Result<Self> {
        let (k, d) = (divisor.base().rank(), divisor.tail().ambient_dim());
        if tau_hat_y.rank() != k || tau_hat.rank() != d {
            return Err(Error::DimensionMismatch(format!(
                "involutions of rank {} and {} for base rank {k} and torus rank {d}",
                tau_hat_y.rank(),
                tau_hat.rank()
            )));
        }
        if h_exponent.rows() != k || h_exponent.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "h exponent is {}x{}, expected {k}x{d}",
                h_exponent.rows(),
                h_exponent.cols()
            )));
        }
        if h_sign.rank() != d {
            return Err(Error::RankMismatch(h_sign.rank(), d));
        }
        Ok(AHDatum {
            base: divisor.base().clone(),
            weight_cone: divisor.weight_cone(),
            tau_hat_y,
            divisor,
            tau_hat,
            h_exponent,
            h_sign,
            ambient: None,
        })
    }

    pub fn base(&self) -> &ToricBase {
        &self.base
    }

    pub fn divisor(&self) -> &PolyhedralDivisor {
        &self.divisor
    }

    pub fn weight_cone(&self) -> &Cone {
        &self.weight_cone
    }

    pub fn tau_hat_y(&self) -> &LatticeInvolution {
        &self.tau_hat_y
    }

    pub fn tau_hat(&self) -> &LatticeInvolution {
        &self.tau_hat
    }

    /// `τ̃ = τ̂ᵀ` on `M`.
    pub fn tau_tilde(&self) -> LatticeInvolution {
        self.tau_hat.dual()
    }

    /// `τ̃_Y = τ̂_Yᵀ` on `M_Y`.
    pub fn tau_tilde_y(&self) -> LatticeInvolution {
        self.tau_hat_y.dual()
    }

    pub fn h_exponent(&self) -> &IntMatrix {
        &self.h_exponent
    }

    pub fn h_sign(&self) -> &SignCharacter {
        &self.h_sign
    }

    pub fn ambient(&self) -> Option<&AmbientData> {
        self.ambient.as_ref()
    }

    /// Same datum with a different twisting character.
    pub fn with_h(&self, h_exponent: IntMatrix, h_sign: SignCharacter) -> Result<Self> {
        let mut out = AHDatum::new(
            self.divisor.clone(),
            self.tau_hat_y.clone(),
            self.tau_hat.clone(),
            h_exponent,
            h_sign,
        )?;
        out.ambient = self.ambient.clone();
        Ok(out)
    }

    pub fn cocycle(&self) -> Result<CharacterCocycle> {
        CharacterCocycle::new(
            self.h_exponent.clone(),
            self.h_sign.clone(),
            self.tau_tilde(),
            self.tau_tilde_y(),
        )
    }
}

/// Overrides for the choices a downgrade makes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DowngradeOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cosection: Option<IntMatrix>,
}

fn check_projection(p: &IntMatrix, f: &IntMatrix) -> Result<()> {
    let (n, d) = (f.rows(), f.cols());
    if p.cols() != n || p.rows() + d != n {
        return Err(Error::DimensionMismatch(format!(
            "projection must be {}x{n}, got {}x{}",
            n - d,
            p.rows(),
            p.cols()
        )));
    }
    if !(p * f).is_zero() {
        return Err(Error::Invalid("projection does not vanish on the image of F".into()));
    }
    right_inverse(p)?;
    Ok(())
}

fn check_cosection(s: &IntMatrix, f: &IntMatrix) -> Result<()> {
    if s.rows() != f.cols() || s.cols() != f.rows() || !(s * f).is_identity() {
        return Err(Error::Invalid(format!("{s} is not a left inverse of F")));
    }
    Ok(())
}

/// `τ̂_Y` with `τ̂_Y·P = P·τ̂′`.
pub fn induced_quotient_involution(e: &TorusEmbedding, p: &IntMatrix) -> Result<LatticeInvolution> {
    check_projection(p, &e.f)?;
    let r = right_inverse(p)?;
    LatticeInvolution::new(&(p * e.tau_hat_prime.matrix()) * &r)
}

/// `t* = Rᵀ(I − sᵀFᵀ)` for a right inverse `R` of `P`.
pub fn section_t(f: &IntMatrix, p: &IntMatrix, s: &IntMatrix) -> Result<IntMatrix> {
    let r = right_inverse(p)?;
    let proj = &IntMatrix::identity(f.rows()) - &(&s.transpose() * &f.transpose());
    Ok(&r.transpose() * &proj)
}

/// `t*·(τ̃′ sᵀ τ̃ − sᵀ)`, the exponent of `h′(m) = σ♯(u(τ̃ m))/u(m)` with
/// `u(m) = χ^{sᵀ m}`.
pub fn twisting_exponent(e: &TorusEmbedding, s: &IntMatrix, t: &IntMatrix) -> IntMatrix {
    let st = s.transpose();
    let moved = &(&e.tau_hat_prime.matrix().transpose() * &st) * &e.tau_hat.matrix().transpose();
    t * &(&moved - &st)
}

pub fn downgrade(e: &TorusEmbedding) -> Result<AHDatum> {
    downgrade_with(e, &DowngradeOptions::default())
}

/// Quotient fan, fiber-polyhedron coefficients, induced involution and
/// twisting character of the subtorus action on `X_{σ′}`. An equivariant
/// cosection is preferred when none is supplied, which makes `h = 1`.
pub fn downgrade_with(e: &TorusEmbedding, opts: &DowngradeOptions) -> Result<AHDatum> {
    validate_embedding(e)?;
    let f = &e.f;
    let p = match &opts.projection {
        Some(p) => {
            check_projection(p, f)?;
            p.clone()
        }
        None => cokernel_projection(f)?,
    };
    let s = match &opts.cosection {
        Some(s) => {
            check_cosection(s, f)?;
            s.clone()
        }
        None => match equivariant_cosection(f, &e.tau_hat, &e.tau_hat_prime)? {
            Some(s) => s,
            None => cosection(f)?,
        },
    };
    let equivariant = e.tau_hat.matrix() * &s == &s * e.tau_hat_prime.matrix();
    let tau_hat_y = induced_quotient_involution(e, &p)?;
    let t = section_t(f, &p, &s)?;
    let h_exponent = twisting_exponent(e, &s, &t);

    let base = ToricBase::new(image_fan(&p, &e.sigma_prime)?)?;
    let tail = e.sigma_prime.preimage(f)?;
    let terms = base
        .rays()
        .iter()
        .map(|v| Ok((v.clone(), fiber_polyhedron(&p, &s, &e.sigma_prime, v)?)))
        .collect::<Result<Vec<_>>>()?;
    let divisor = PolyhedralDivisor::new(base, tail, terms)?;
    let mut datum = AHDatum::new(
        divisor,
        tau_hat_y,
        e.tau_hat.clone(),
        h_exponent,
        SignCharacter::trivial(f.cols()),
    )?;
    datum.ambient = Some(AmbientData {
        embedding: e.clone(),
        projection: p,
        cosection: s,
        section_t: t,
        equivariant_cosection: equivariant,
    });
    Ok(datum)
}

/// `s₀` with `s₁ − s₂ = s₀·P`; the two divisors differ by the coefficient
/// shift `v ↦ s₀(v)`.
pub fn cosection_shift(s1: &IntMatrix, s2: &IntMatrix, p: &IntMatrix) -> Result<IntMatrix> {
    solve_left(p, &(s1 - s2))
        .ok_or_else(|| Error::Invalid("cosections do not differ by a map through P".into()))
}

/// A weight where the real-structure condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityFailure {
    #[serde(with = "wire::int_vec")]
    pub m: Vec<Int>,
    /// `σ_Y*(𝔇(m))`.
    pub lhs: WeilQDivisor,
    /// `𝔇(τ̃ m) + div(h(τ̃ m))`.
    pub rhs: WeilQDivisor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    #[serde(with = "wire::int_vecs")]
    pub checked: Vec<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<CompatibilityFailure>,
    pub cocycle_identity: bool,
    pub sign_identity: bool,
}

impl CompatibilityReport {
    pub fn passes(&self) -> bool {
        self.failure.is_none() && self.cocycle_identity && self.sign_identity
    }
}

/// Checks `σ_Y*(𝔇(m)) = 𝔇(τ̃ m) + div(h(τ̃ m))` on the Hilbert basis of
/// every chamber of the divisor, and the cocycle identity of `h`.
pub fn check_real_compatibility(a: &AHDatum) -> Result<CompatibilityReport> {
    a.base.ray_permutation(&a.tau_hat_y)?;
    let tt = a.tau_tilde();
    if a.weight_cone.image(tt.matrix())? != a.weight_cone {
        return Err(Error::ConeNotStable);
    }
    let mut weights: Vec<Vec<Int>> = Vec::new();
    for chamber in a.divisor.chambers()? {
        for m in chamber.monoid_generators() {
            if !weights.contains(&m) {
                weights.push(m);
            }
        }
    }
    weights.sort();

    let mut checked = Vec::with_capacity(weights.len());
    let mut failure = None;
    for m in weights {
        let lhs = pullback_involution(&a.base, &a.tau_hat_y, &a.divisor.evaluate(&m)?)?;
        let tm = tt.apply(&m);
        let twist = principal_divisor(&a.base, &a.h_exponent.apply(&tm))?;
        let rhs = a.divisor.evaluate(&tm)?.add(&twist);
        checked.push(m.clone());
        if lhs != rhs {
            failure = Some(CompatibilityFailure { m, lhs, rhs });
            break;
        }
    }

    let ty = a.tau_tilde_y();
    let cocycle_identity = (&a.h_exponent + &(&(ty.matrix() * &a.h_exponent) * tt.matrix())).is_zero();
    let d = tt.rank();
    let sign_identity = (0..d).all(|i| {
        let mut e = vec![Int::from(0); d];
        e[i] = Int::from(1);
        a.h_sign.value(&e) * a.h_sign.value(&tt.apply(&e)) == 1
    });
    Ok(CompatibilityReport {
        checked,
        failure,
        cocycle_identity,
        sign_identity,
    })
}
