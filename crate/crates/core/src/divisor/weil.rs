use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::base::ToricBase;
use crate::error::{Error, Result};
use crate::geom::Polyhedron;
use crate::lattice::{solve_int, IntMatrix, LatticeInvolution};
use crate::lattice::rational::rat_solve;
use crate::num::{dot, fmt_rat, fmt_vec, rat_serde, to_rat, wire, Int, Rat};

/// Torus-invariant rational Weil divisor `Σ a_ρ D_ρ`, stored densely in the
/// ray order of its base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeilQDivisor {
    rays: Vec<Vec<Int>>,
    coeffs: Vec<Rat>,
}

impl WeilQDivisor {
    pub fn new(base: &ToricBase, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != base.ray_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} rays",
                coeffs.len(),
                base.ray_count()
            )));
        }
        Ok(WeilQDivisor {
            rays: base.rays().to_vec(),
            coeffs,
        })
    }

    pub fn zero(base: &ToricBase) -> Self {
        WeilQDivisor {
            rays: base.rays().to_vec(),
            coeffs: vec![Rat::zero(); base.ray_count()],
        }
    }

    /// Divisor with the given coefficients on the given rays and zero
    /// elsewhere.
    pub fn from_terms(base: &ToricBase, terms: &[(Vec<Int>, Rat)]) -> Result<Self> {
        let mut d = Self::zero(base);
        for (ray, c) in terms {
            let i = base
                .ray_index(ray)
                .ok_or_else(|| Error::NotARay(crate::error::show(ray)))?;
            d.coeffs[i] += c;
        }
        Ok(d)
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficientwise `self ≥ other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a >= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        WeilQDivisor {
            rays: self.rays.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        WeilQDivisor {
            rays: self.rays.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        WeilQDivisor {
            rays: self.rays.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for WeilQDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .rays
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| format!("{}·D{}", fmt_rat(c), fmt_vec(r)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    #[serde(with = "wire::int_vec")]
    ray: Vec<Int>,
    #[serde(with = "rat_serde")]
    coeff: Rat,
}

impl Serialize for WeilQDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermWire> = self
            .rays
            .iter()
            .zip(&self.coeffs)
            .map(|(r, c)| TermWire {
                ray: r.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeilQDivisor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermWire>::deserialize(d)?;
        Ok(WeilQDivisor {
            rays: terms.iter().map(|t| t.ray.clone()).collect(),
            coeffs: terms.into_iter().map(|t| t.coeff).collect(),
        })
    }
}

/// `div(χ^u)`: coefficient `⟨u, v_ρ⟩` at every ray.
pub fn principal_divisor(base: &ToricBase, u: &[Int]) -> Result<WeilQDivisor> {
    if u.len() != base.rank() {
        return Err(Error::RankMismatch(u.len(), base.rank()));
    }
    let coeffs = base
        .rays()
        .iter()
        .map(|r| Rat::from_integer(dot(u, r)))
        .collect();
    WeilQDivisor::new(base, coeffs)
}

/// Global sections polyhedron `{u : ⟨u, v_ρ⟩ ≥ −a_ρ}`; may be empty or
/// unbounded.
pub fn sections_polyhedron(base: &ToricBase, e: &WeilQDivisor) -> Result<Polyhedron> {
    if e.coeffs.len() != base.ray_count() {
        return Err(Error::DimensionMismatch("divisor does not match the base".into()));
    }
    let ineqs: Vec<(Vec<Rat>, Rat)> = base
        .rays()
        .iter()
        .zip(&e.coeffs)
        .map(|(r, a)| (to_rat(r), -a.clone()))
        .collect();
    Polyhedron::new(&ineqs, &[], base.rank())
}

/// Rational local data `m_σ` with `⟨m_σ, v_ρ⟩ = −a_ρ` for `ρ ∈ σ`, per
/// maximal cone, when all exist.
pub fn cartier_data(base: &ToricBase, e: &WeilQDivisor) -> Option<Vec<Vec<Rat>>> {
    let k = base.rank();
    let mut out = Vec::with_capacity(base.cones().len());
    for cone in base.cones() {
        let rows: Vec<Vec<Rat>> = cone.iter().map(|&i| to_rat(&base.rays()[i])).collect();
        let rhs: Vec<Rat> = cone.iter().map(|&i| -e.coeffs[i].clone()).collect();
        out.push(rat_solve(&rows, k, &rhs)?);
    }
    Some(out)
}

pub fn is_q_cartier(base: &ToricBase, e: &WeilQDivisor) -> bool {
    cartier_data(base, e).is_some()
}

pub fn is_cartier(base: &ToricBase, e: &WeilQDivisor) -> bool {
    if !e.is_integral() {
        return false;
    }
    base.cones().iter().all(|cone| {
        let rows: Vec<Vec<Int>> = cone.iter().map(|&i| base.rays()[i].clone()).collect();
        let rhs: Vec<Int> = cone.iter().map(|&i| -e.coeffs[i].to_integer()).collect();
        let a = IntMatrix::from_int_rows(rows, base.rank()).expect("rays share a length");
        solve_int(&a, &rhs).is_some()
    })
}

/// Q-Cartier, and for every maximal cone some local datum `m_σ` lies in
/// the sections polyhedron (the support function is convex over the fan).
pub fn is_semiample(base: &ToricBase, e: &WeilQDivisor) -> bool {
    if !is_q_cartier(base, e) {
        return false;
    }
    let ineqs: Vec<(Vec<Rat>, Rat)> = base
        .rays()
        .iter()
        .zip(&e.coeffs)
        .map(|(r, a)| (to_rat(r), -a.clone()))
        .collect();
    base.cones().iter().all(|cone| {
        let eqs: Vec<(Vec<Rat>, Rat)> = cone
            .iter()
            .map(|&i| (to_rat(&base.rays()[i]), -e.coeffs[i].clone()))
            .collect();
        Polyhedron::new(&ineqs, &eqs, base.rank())
            .map(|q| !q.is_empty())
            .unwrap_or(false)
    })
}

/// Sections polyhedron of full dimension.
pub fn is_big(base: &ToricBase, e: &WeilQDivisor) -> bool {
    sections_polyhedron(base, e)
        .map(|p| p.is_full_dimensional())
        .unwrap_or(false)
}

/// Pullback along the toric involution: the output coefficient at `ρ` is the
/// input coefficient at `τ̂_Y(ρ)`.
pub fn pullback_involution(
    base: &ToricBase,
    tau: &LatticeInvolution,
    e: &WeilQDivisor,
) -> Result<WeilQDivisor> {
    let perm = base.ray_permutation(tau)?;
    let coeffs = perm.iter().map(|&j| e.coeffs[j].clone()).collect();
    WeilQDivisor::new(base, coeffs)
}

/// Degree `Σ a_ρ` on a complete curve; used as an oracle on `ℙ¹`.
pub fn degree(e: &WeilQDivisor) -> Rat {
    e.coeffs.iter().fold(Rat::zero(), |acc, c| acc + c)
}
