use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dd::{canonical_rays, canonical_span, double_description};
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::num::{dot, dot_int_rat, primitive, wire, Int, Rat};

/// Rational polyhedral cone, kept in both representations.
///
/// Generators: `rays` (primitive, canonical modulo lineality) plus the
/// lineality basis. Inequalities: `facets` `f·x ≥ 0` and `equations`
/// `e·x = 0`, irredundant. Both are canonical, so structural equality is set
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    dim: usize,
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
    facets: Vec<Vec<Int>>,
    equations: Vec<Vec<Int>>,
}

fn check_len(vs: &[Vec<Int>], dim: usize) -> Result<()> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(Error::DimensionMismatch(format!(
            "vector of length {} in ambient rank {dim}",
            v.len()
        ))),
        None => Ok(()),
    }
}

/// Generators `(rays, lineality)` of `{x : a·x ≥ 0 ∀a ∈ ineqs, e·x = 0 ∀e ∈ eqs}`.
fn h_to_v(ineqs: &[Vec<Int>], eqs: &[Vec<Int>], dim: usize) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let mut cons: Vec<Vec<Int>> = eqs.to_vec();
    cons.extend(ineqs.iter().cloned());
    cons.extend(eqs.iter().map(|e| e.iter().map(|x| -x).collect()));
    let (lin, rays) = double_description(&cons, dim);
    let lin = canonical_span(&lin, dim);
    let rays = canonical_rays(&rays, &lin);
    (rays, lin)
}

impl Cone {
    fn build(dim: usize, rays: Vec<Vec<Int>>, lineality: Vec<Vec<Int>>) -> Self {
        let mut gens: Vec<Vec<Int>> = rays.clone();
        gens.extend(lineality.iter().cloned());
        gens.extend(lineality.iter().map(|l| l.iter().map(|x| -x).collect()));
        let (facets, equations) = h_to_v(&gens, &[], dim);
        Cone {
            dim,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    /// Cone generated by the given vectors (empty list gives `{0}`).
    pub fn from_generators(gens: &[Vec<Int>], dim: usize) -> Result<Self> {
        check_len(gens, dim)?;
        let (facets, equations) = h_to_v(gens, &[], dim);
        let (rays, lineality) = h_to_v(&facets, &equations, dim);
        Ok(Cone {
            dim,
            rays,
            lineality,
            facets,
            equations,
        })
    }

    pub fn from_rat_generators(gens: &[Vec<Rat>], dim: usize) -> Result<Self> {
        let ints: Vec<Vec<Int>> = gens
            .iter()
            .map(|g| crate::num::clear_denominators(g))
            .collect();
        Self::from_generators(&ints, dim)
    }

    /// Cone `{x : a·x ≥ 0, e·x = 0}`.
    pub fn from_inequalities(ineqs: &[Vec<Int>], eqs: &[Vec<Int>], dim: usize) -> Result<Self> {
        check_len(ineqs, dim)?;
        check_len(eqs, dim)?;
        let (rays, lineality) = h_to_v(ineqs, eqs, dim);
        Ok(Self::build(dim, rays, lineality))
    }

    pub fn orthant(dim: usize) -> Self {
        let units: Vec<Vec<Int>> = (0..dim)
            .map(|i| {
                let mut e = vec![Int::zero(); dim];
                e[i] = Int::one();
                e
            })
            .collect();
        Self::from_generators(&units, dim).expect("unit vectors")
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(&[], dim).expect("empty generator list")
    }

    pub fn full(dim: usize) -> Self {
        Self::from_inequalities(&[], &[], dim).expect("no constraints")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Vec<Int>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<Int>] {
        &self.equations
    }

    /// Rays together with both signs of every lineality vector.
    pub fn generators(&self) -> Vec<Vec<Int>> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g
    }

    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        v.len() == self.dim
            && self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|f| !dot(f, v).is_negative())
    }

    pub fn contains_rat(&self, v: &[Rat]) -> bool {
        v.len() == self.dim
            && self.equations.iter().all(|e| dot_int_rat(e, v).is_zero())
            && self.facets.iter().all(|f| !dot_int_rat(f, v).is_negative())
    }

    /// Membership in the relative interior.
    pub fn contains_in_relint(&self, v: &[Int]) -> bool {
        v.len() == self.dim
            && self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|f| dot(f, v).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// A lattice point in the relative interior: the sum of the rays.
    pub fn relint_point(&self) -> Vec<Int> {
        let mut p = vec![Int::zero(); self.dim];
        for r in &self.rays {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += ri;
            }
        }
        p
    }

    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.dim,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.dim != other.dim {
            return Err(Error::RankMismatch(self.dim, other.dim));
        }
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_inequalities(&ineqs, &eqs, self.dim)
    }

    /// Image under the linear map `x ↦ A x`.
    pub fn image(&self, a: &IntMatrix) -> Result<Cone> {
        if a.cols() != self.dim {
            return Err(Error::RankMismatch(a.cols(), self.dim));
        }
        let gens: Vec<Vec<Int>> = self.generators().iter().map(|g| a.apply(g)).collect();
        Cone::from_generators(&gens, a.rows())
    }

    /// Preimage `{x : A x ∈ C}`.
    pub fn preimage(&self, a: &IntMatrix) -> Result<Cone> {
        if a.rows() != self.dim {
            return Err(Error::RankMismatch(a.rows(), self.dim));
        }
        let ineqs: Vec<Vec<Int>> = self.facets.iter().map(|f| a.apply_dual(f)).collect();
        let eqs: Vec<Vec<Int>> = self.equations.iter().map(|e| a.apply_dual(e)).collect();
        Cone::from_inequalities(&ineqs, &eqs, a.cols())
    }

    /// Every face, including the cone itself and its minimal face.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut stack = vec![all.clone()];
        seen.insert(all);
        while let Some(face) = stack.pop() {
            for f in &self.facets {
                let sub: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|&i| dot(f, &self.rays[i]).is_zero())
                    .collect();
                if sub.len() < face.len() && seen.insert(sub.clone()) {
                    stack.push(sub);
                }
            }
        }
        let mut out: Vec<Cone> = seen
            .into_iter()
            .map(|idx| {
                let rays: Vec<Vec<Int>> = idx.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::build(self.dim, rays, self.lineality.clone())
            })
            .collect();
        out.sort_by_key(Cone::dimension);
        out
    }

    /// Whether `other` is a face of `self`.
    pub fn has_face(&self, other: &Cone) -> bool {
        if !self.contains_cone(other) {
            return false;
        }
        let p = other.relint_point();
        // The smallest face containing p must equal `other`.
        let tight: Vec<Vec<Int>> = self
            .facets
            .iter()
            .filter(|f| dot(f, &p).is_zero())
            .cloned()
            .collect();
        let mut eqs = self.equations.clone();
        eqs.extend(tight);
        match Cone::from_inequalities(&self.facets, &eqs, self.dim) {
            Ok(face) => &face == other,
            Err(_) => false,
        }
    }

    /// Primitive generator of the ray `ℚ₊·v` if `v` spans a ray of the cone.
    pub fn ray_index(&self, v: &[Int]) -> Option<usize> {
        let p = primitive(v);
        self.rays.iter().position(|r| r == &p)
    }

    /// Positive functional on `C \ {0}` for a pointed cone: the sum of the
    /// facet normals of the dual of the generated cone, made strictly positive.
    pub(crate) fn grading(&self) -> Vec<Int> {
        let dual = self.dual();
        let mut g = dual.relint_point();
        if g.iter().all(Zero::is_zero) && !self.rays.is_empty() {
            g = self.rays[0].clone();
        }
        g
    }

    /// Applies the signed change of sign vector to the ambient coordinates.
    pub(crate) fn with_orthant(&self, signs: &[i32]) -> Result<Cone> {
        let mut ineqs = self.facets.clone();
        for (i, s) in signs.iter().enumerate() {
            let mut e = vec![Int::zero(); self.dim];
            e[i] = Int::from(*s);
            ineqs.push(e);
        }
        Cone::from_inequalities(&ineqs, &self.equations, self.dim)
    }

    pub fn max_abs_ray_entry(&self) -> Int {
        self.rays
            .iter()
            .flatten()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Int::zero)
    }
}

#[derive(Serialize, Deserialize)]
struct ConeWire {
    dim: usize,
    #[serde(default, with = "wire::int_vecs")]
    rays: Vec<Vec<Int>>,
    #[serde(default, with = "wire::int_vecs", skip_serializing_if = "Vec::is_empty")]
    lineality: Vec<Vec<Int>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeIneqWire {
    dim: usize,
    #[serde(with = "wire::int_vecs")]
    inequalities: Vec<Vec<Int>>,
    #[serde(default, with = "wire::int_vecs")]
    equations: Vec<Vec<Int>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ConeInput {
    Named(String),
    Inequalities(ConeIneqWire),
    Generators(ConeWire),
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConeWire {
            dim: self.dim,
            rays: self.rays.clone(),
            lineality: self.lineality.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let input = ConeInput::deserialize(d).map_err(|_| {
            D::Error::custom(
                "expected a cone: {dim, rays, lineality?}, {dim, inequalities, equations?} or \"orthant:<n>\"",
            )
        })?;
        match input {
            ConeInput::Named(name) => match name.strip_prefix("orthant:") {
                Some(n) => n
                    .parse()
                    .map(Cone::orthant)
                    .map_err(|_| D::Error::custom(format!("bad orthant rank in {name:?}"))),
                None => Err(D::Error::custom(format!("unknown cone name {name:?}"))),
            },
            ConeInput::Inequalities(w) => {
                Cone::from_inequalities(&w.inequalities, &w.equations, w.dim)
                    .map_err(D::Error::custom)
            }
            ConeInput::Generators(w) => {
                let mut gens = w.rays;
                for l in &w.lineality {
                    gens.push(l.clone());
                    gens.push(l.iter().map(|x| -x).collect());
                }
                Cone::from_generators(&gens, w.dim).map_err(D::Error::custom)
            }
        }
    }
}
