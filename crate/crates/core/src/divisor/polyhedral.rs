use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::base::ToricBase;
use super::weil::{is_big, is_cartier, is_q_cartier, is_semiample, WeilQDivisor};
use crate::error::{show, Error, Result};
use crate::geom::{Cone, QuasiFan, TailedPolyhedron};
use crate::num::{fmt_rat_vec, fmt_vec, to_rat, wire, Int, Rat};

/// Polyhedral divisor `Σ Δ_ρ ⊗ D_ρ` over a toric base. Every coefficient has
/// the common tail `ω`; rays without a stored term carry `ω` itself.
/// `extra` holds labeled coefficients on non-toric prime divisors; they are
/// kept for reporting and take no part in evaluation on the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralDivisor {
    base: ToricBase,
    tail: Cone,
    terms: BTreeMap<usize, TailedPolyhedron>,
    extra: Vec<(String, TailedPolyhedron)>,
}

impl PolyhedralDivisor {
    pub fn new(base: ToricBase, tail: Cone, terms: Vec<(Vec<Int>, TailedPolyhedron)>) -> Result<Self> {
        if !tail.is_pointed() {
            return Err(Error::NonPointedTail);
        }
        let mut map = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for (ray, coeff) in terms {
            let i = base.ray_index(&ray).ok_or_else(|| Error::NotARay(show(&ray)))?;
            if base.rays()[i] != ray {
                return Err(Error::NotARay(show(&ray)));
            }
            if coeff.tail() != &tail {
                return Err(Error::TailMismatch);
            }
            if !seen.insert(i) {
                return Err(Error::DuplicateRay(show(&ray)));
            }
            if !coeff.is_tail() {
                map.insert(i, coeff);
            }
        }
        Ok(PolyhedralDivisor {
            base,
            tail,
            terms: map,
            extra: Vec::new(),
        })
    }

    pub fn with_extra(mut self, label: &str, coeff: TailedPolyhedron) -> Result<Self> {
        if coeff.tail() != &self.tail {
            return Err(Error::TailMismatch);
        }
        self.extra.push((label.to_string(), coeff));
        Ok(self)
    }

    pub fn base(&self) -> &ToricBase {
        &self.base
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    /// `ω∨`, the cone of admissible weights.
    pub fn weight_cone(&self) -> Cone {
        self.tail.dual()
    }

    /// Stored (nontrivial) terms by ray index.
    pub fn terms(&self) -> &BTreeMap<usize, TailedPolyhedron> {
        &self.terms
    }

    pub fn extra_terms(&self) -> &[(String, TailedPolyhedron)] {
        &self.extra
    }

    pub fn coefficient(&self, ray_index: usize) -> TailedPolyhedron {
        self.terms
            .get(&ray_index)
            .cloned()
            .unwrap_or_else(|| TailedPolyhedron::from_tail(&self.tail).expect("pointed tail"))
    }

    pub fn coefficient_at(&self, ray: &[Int]) -> Option<TailedPolyhedron> {
        self.base.ray_index(ray).map(|i| self.coefficient(i))
    }

    fn check_weight(&self, m: &[Rat]) -> Result<()> {
        if m.len() != self.tail.ambient_dim() {
            return Err(Error::RankMismatch(m.len(), self.tail.ambient_dim()));
        }
        if !self.weight_cone().contains_rat(m) {
            return Err(Error::OutsideWeightCone(m.iter().map(crate::num::fmt_rat).collect()));
        }
        Ok(())
    }

    /// `𝔇(m) = Σ h_{Δ_ρ}(m) D_ρ`.
    pub fn evaluate_rat(&self, m: &[Rat]) -> Result<WeilQDivisor> {
        self.check_weight(m)?;
        let mut coeffs = Vec::with_capacity(self.base.ray_count());
        for i in 0..self.base.ray_count() {
            coeffs.push(match self.terms.get(&i) {
                Some(c) => c.support_eval(m)?,
                None => Rat::from_integer(Int::from(0)),
            });
        }
        WeilQDivisor::new(&self.base, coeffs)
    }

    pub fn evaluate(&self, m: &[Int]) -> Result<WeilQDivisor> {
        self.evaluate_rat(&to_rat(m))
    }

    /// `𝔇(m + m′) ≥ 𝔇(m) + 𝔇(m′)` coefficientwise.
    pub fn superadditivity_check(&self, m: &[Int], m2: &[Int]) -> Result<bool> {
        let sum: Vec<Int> = m.iter().zip(m2).map(|(a, b)| a + b).collect();
        let lhs = self.evaluate(&sum)?;
        let rhs = self.evaluate(m)?.add(&self.evaluate(m2)?);
        Ok(lhs.dominates(&rhs))
    }

    /// Common refinement of the normal quasifans of all coefficients; the
    /// evaluation map is linear on each of its cones.
    pub fn evaluation_fan(&self) -> Result<QuasiFan> {
        let mut fan = QuasiFan::new(vec![self.weight_cone()], self.tail.ambient_dim())?;
        for c in self.terms.values() {
            fan = fan.common_refinement(&c.normal_quasifan())?;
        }
        Ok(fan)
    }

    /// Full-dimensional cones of the evaluation fan (all cones if the weight
    /// cone is not full-dimensional).
    pub fn chambers(&self) -> Result<Vec<Cone>> {
        Ok(self.evaluation_fan()?.chambers())
    }

    /// Sampled pp-divisor test: on every chamber, the Hilbert basis and the
    /// sum of the chamber's rays are checked for Q-Cartier, Cartier,
    /// semi-ampleness and bigness.
    pub fn pp_check(&self) -> Result<PpReport> {
        if !self.base.has_convex_support() {
            return Err(Error::NonConvexSupport);
        }
        let weight = self.weight_cone();
        let mut chambers = Vec::new();
        for chamber in self.chambers()? {
            let mut points = chamber.monoid_generators();
            let rep = chamber.relint_point();
            if !points.contains(&rep) {
                points.push(rep);
            }
            let samples = points
                .into_iter()
                .map(|m| {
                    let e = self.evaluate(&m)?;
                    Ok(PpSample {
                        q_cartier: is_q_cartier(&self.base, &e),
                        cartier: is_cartier(&self.base, &e),
                        semiample: is_semiample(&self.base, &e),
                        big: is_big(&self.base, &e),
                        in_relative_interior: weight.contains_in_relint(&m),
                        weight: m,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            chambers.push(PpChamber {
                rays: chamber.rays().to_vec(),
                samples,
            });
        }
        Ok(PpReport { chambers })
    }
}

impl fmt::Display for PolyhedralDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show_coeff = |c: &TailedPolyhedron| {
            let verts: Vec<String> = c.vertices().iter().map(|v| fmt_rat_vec(v)).collect();
            format!("[conv{{{}}} + tail]", verts.join(","))
        };
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&i, c)| format!("{} ⊗ D{}", show_coeff(c), fmt_vec(&self.base.rays()[i])))
            .collect();
        parts.extend(self.extra.iter().map(|(l, c)| format!("{} ⊗ {l}", show_coeff(c))));
        let tail_rays: Vec<String> = self.tail.rays().iter().map(|r| fmt_vec(r)).collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}  (tail cone{{{}}})", parts.join(" + "), tail_rays.join(","))
    }
}

/// Outcome of [`PolyhedralDivisor::pp_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpReport {
    pub chambers: Vec<PpChamber>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpChamber {
    #[serde(with = "wire::int_vecs")]
    pub rays: Vec<Vec<Int>>,
    pub samples: Vec<PpSample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpSample {
    #[serde(with = "wire::int_vec")]
    pub weight: Vec<Int>,
    pub q_cartier: bool,
    pub cartier: bool,
    pub semiample: bool,
    pub big: bool,
    pub in_relative_interior: bool,
}

impl PpSample {
    /// The pp-conditions at this weight; bigness is only required inside the
    /// relative interior of the weight cone.
    pub fn passes(&self) -> bool {
        self.q_cartier && self.semiample && (self.big || !self.in_relative_interior)
    }
}

impl PpReport {
    pub fn passes(&self) -> bool {
        self.chambers.iter().all(|c| c.samples.iter().all(PpSample::passes))
    }

    /// First sample violating a pp-condition.
    pub fn first_failure(&self) -> Option<&PpSample> {
        self.chambers
            .iter()
            .flat_map(|c| c.samples.iter())
            .find(|s| !s.passes())
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    #[serde(with = "wire::int_vec")]
    ray: Vec<Int>,
    #[serde(with = "wire::rat_vecs")]
    vertices: Vec<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
struct ExtraWire {
    label: String,
    #[serde(with = "wire::rat_vecs")]
    vertices: Vec<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
struct DivisorWire {
    base: ToricBase,
    tail: Cone,
    terms: Vec<TermWire>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    extra: Vec<ExtraWire>,
}

impl Serialize for PolyhedralDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DivisorWire {
            base: self.base.clone(),
            tail: self.tail.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&i, c)| TermWire {
                    ray: self.base.rays()[i].clone(),
                    vertices: c.vertices().to_vec(),
                })
                .collect(),
            extra: self
                .extra
                .iter()
                .map(|(l, c)| ExtraWire {
                    label: l.clone(),
                    vertices: c.vertices().to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyhedralDivisor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = DivisorWire::deserialize(d)?;
        let terms = w
            .terms
            .into_iter()
            .map(|t| Ok((t.ray, TailedPolyhedron::new(&t.vertices, &w.tail)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let mut div = PolyhedralDivisor::new(w.base, w.tail.clone(), terms).map_err(D::Error::custom)?;
        for e in w.extra {
            let c = TailedPolyhedron::new(&e.vertices, &w.tail).map_err(D::Error::custom)?;
            div = div.with_extra(&e.label, c).map_err(D::Error::custom)?;
        }
        Ok(div)
    }
}
