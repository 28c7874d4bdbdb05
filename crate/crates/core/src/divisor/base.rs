use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geom::{Cone, QuasiFan};
use crate::lattice::{IntMatrix, LatticeInvolution};
use crate::num::{fmt_vec, primitive, wire, Int};

/// Toric variety given by a pointed fan; prime toric divisors are indexed by
/// the position of their ray in [`ToricBase::rays`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToricBase {
    fan: QuasiFan,
    /// Maximal cones as sorted ray-index lists.
    cones: Vec<Vec<usize>>,
}

impl ToricBase {
    pub fn new(fan: QuasiFan) -> Result<Self> {
        if !fan.is_pointed() {
            return Err(Error::InvalidCone("base fan must consist of pointed cones".into()));
        }
        let cones = fan
            .maximal_cones()
            .iter()
            .map(|c| {
                let mut idx: Vec<usize> = c
                    .rays()
                    .iter()
                    .map(|r| fan.ray_index(r).expect("rays of a cone are rays of the fan"))
                    .collect();
                idx.sort_unstable();
                idx
            })
            .collect();
        Ok(ToricBase { fan, cones })
    }

    /// Builds the fan from ray generators and maximal cones given by ray
    /// indices.
    pub fn from_rays(rays: &[Vec<Int>], cones: &[Vec<usize>], dim: usize) -> Result<Self> {
        let mut built = Vec::with_capacity(cones.len());
        for c in cones {
            let gens = c
                .iter()
                .map(|&i| {
                    rays.get(i)
                        .cloned()
                        .ok_or_else(|| Error::Invalid(format!("ray index {i} out of range")))
                })
                .collect::<Result<Vec<_>>>()?;
            built.push(Cone::from_generators(&gens, dim)?);
        }
        let fan = QuasiFan::new(built, dim)?;
        if !fan.is_fan() {
            return Err(Error::InvalidCone("cones do not meet along common faces".into()));
        }
        Self::new(fan)
    }

    /// The base `Spec ℂ` of rank zero.
    pub fn point() -> Self {
        Self::new(QuasiFan::new(vec![Cone::zero(0)], 0).expect("rank zero")).expect("pointed")
    }

    /// `ℙ¹` with rays `−1` (index 0) and `+1` (index 1).
    pub fn projective_line() -> Self {
        Self::from_rays(&[vec![Int::from(-1)], vec![Int::from(1)]], &[vec![0], vec![1]], 1)
            .expect("valid fan")
    }

    pub fn rank(&self) -> usize {
        self.fan.ambient_dim()
    }

    pub fn fan(&self) -> &QuasiFan {
        &self.fan
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        self.fan.rays()
    }

    pub fn ray_count(&self) -> usize {
        self.rays().len()
    }

    pub fn ray_index(&self, v: &[Int]) -> Option<usize> {
        self.fan.ray_index(v)
    }

    pub fn ray_label(&self, i: usize) -> String {
        format!("D{}", fmt_vec(&self.rays()[i]))
    }

    /// Maximal cones as sorted ray-index lists.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn has_convex_support(&self) -> bool {
        self.fan.has_convex_support()
    }

    /// Permutation `π` of ray indices with `τ̂_Y(v_i) = v_{π(i)}`; fails unless
    /// the involution maps the fan onto itself.
    pub fn ray_permutation(&self, tau: &LatticeInvolution) -> Result<Vec<usize>> {
        if tau.rank() != self.rank() {
            return Err(Error::RankMismatch(tau.rank(), self.rank()));
        }
        let perm = self
            .rays()
            .iter()
            .map(|r| self.ray_index(&primitive(&tau.apply(r))).ok_or(Error::FanNotStable))
            .collect::<Result<Vec<usize>>>()?;
        for c in &self.cones {
            let mut image: Vec<usize> = c.iter().map(|&i| perm[i]).collect();
            image.sort_unstable();
            if !self.cones.contains(&image) {
                return Err(Error::FanNotStable);
            }
        }
        Ok(perm)
    }

    /// Matrix whose rows are the ray generators.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_int_rows(self.rays().to_vec(), self.rank()).expect("rays share a length")
    }
}

#[derive(Serialize, Deserialize)]
struct BaseWire {
    dim: usize,
    #[serde(with = "wire::int_vecs")]
    rays: Vec<Vec<Int>>,
    cones: Vec<Vec<usize>>,
}

impl Serialize for ToricBase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BaseWire {
            dim: self.rank(),
            rays: self.rays().to_vec(),
            cones: self.cones.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ToricBase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = BaseWire::deserialize(d)?;
        if w.dim == 0 {
            return Ok(ToricBase::point());
        }
        ToricBase::from_rays(&w.rays, &w.cones, w.dim).map_err(serde::de::Error::custom)
    }
}
