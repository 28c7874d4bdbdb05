use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cone::Cone;
use super::polyhedron::TailedPolyhedron;
use crate::error::{show, Error, Result};
use crate::lattice::IntMatrix;
use crate::num::{clear_denominators, primitive, Int, Rat};

/// Collection of cones, closed under faces, stored by its maximal cones
/// (canonically sorted). Cones may share a lineality space, hence "quasi".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiFan {
    dim: usize,
    cones: Vec<Cone>,
    rays: Vec<Vec<Int>>,
}

impl QuasiFan {
    /// Keeps the cones not contained in another one; sorts them.
    pub fn new(cones: Vec<Cone>, dim: usize) -> Result<Self> {
        if let Some(c) = cones.iter().find(|c| c.ambient_dim() != dim) {
            return Err(Error::RankMismatch(c.ambient_dim(), dim));
        }
        let mut cones = cones;
        cones.sort();
        cones.dedup();
        let maximal: Vec<Cone> = (0..cones.len())
            .filter(|&i| {
                !(0..cones.len()).any(|j| j != i && cones[j].contains_cone(&cones[i]))
            })
            .map(|i| cones[i].clone())
            .collect();
        let mut rays: Vec<Vec<Int>> = maximal.iter().flat_map(|c| c.rays().to_vec()).collect();
        rays.sort();
        rays.dedup();
        Ok(QuasiFan {
            dim,
            cones: maximal,
            rays,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Primitive generators of the rays, sorted.
    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn ray_index(&self, v: &[Int]) -> Option<usize> {
        let p = primitive(v);
        self.rays.iter().position(|r| r == &p)
    }

    pub fn is_pointed(&self) -> bool {
        self.cones.iter().all(Cone::is_pointed)
    }

    /// All cones, each face listed once.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = self.cones.iter().flat_map(Cone::faces).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn support_contains(&self, v: &[Int]) -> bool {
        self.cones.iter().any(|c| c.contains(v))
    }

    pub fn support_contains_rat(&self, v: &[Rat]) -> bool {
        self.cones.iter().any(|c| c.contains_rat(v))
    }

    /// Maximal cones whose dimension equals the ambient rank.
    pub fn full_dimensional_cones(&self) -> Vec<&Cone> {
        self.cones.iter().filter(|c| c.is_full_dimensional()).collect()
    }

    /// Whether any two maximal cones meet in a common face.
    pub fn is_fan(&self) -> bool {
        for (i, a) in self.cones.iter().enumerate() {
            for b in &self.cones[i + 1..] {
                let Ok(c) = a.intersect(b) else { return false };
                if !a.has_face(&c) || !b.has_face(&c) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the union of the cones is convex. The fan must be pure of the
    /// dimension of the cone spanned by its rays, and every wall lying in
    /// only one maximal cone must sit on the boundary of that span.
    pub fn has_convex_support(&self) -> bool {
        let mut gens: Vec<Vec<Int>> = Vec::new();
        for c in &self.cones {
            gens.extend(c.generators());
        }
        let hull = match Cone::from_generators(&gens, self.dim) {
            Ok(h) => h,
            Err(_) => return false,
        };
        let top = hull.dimension();
        if self.cones.iter().any(|c| c.dimension() != top) {
            return false;
        }
        for (i, c) in self.cones.iter().enumerate() {
            for wall in c.faces().into_iter().filter(|f| f.dimension() + 1 == top) {
                let shared = self
                    .cones
                    .iter()
                    .enumerate()
                    .any(|(j, d)| j != i && d.contains_cone(&wall));
                if shared {
                    continue;
                }
                let p = wall.relint_point();
                if hull.contains_in_relint(&p) {
                    return false;
                }
            }
        }
        true
    }

    /// Pairwise intersections of maximal cones, keeping the maximal ones.
    pub fn common_refinement(&self, other: &QuasiFan) -> Result<QuasiFan> {
        if self.dim != other.dim {
            return Err(Error::RankMismatch(self.dim, other.dim));
        }
        let mut cones = Vec::new();
        for a in &self.cones {
            for b in &other.cones {
                cones.push(a.intersect(b)?);
            }
        }
        QuasiFan::new(cones, self.dim)
    }

    /// Maximal cones of the refinement that have full dimension, or the
    /// whole list when none does.
    pub fn chambers(&self) -> Vec<Cone> {
        let full: Vec<Cone> = self
            .cones
            .iter()
            .filter(|c| c.is_full_dimensional())
            .cloned()
            .collect();
        if full.is_empty() {
            self.cones.clone()
        } else {
            full
        }
    }
}

impl TailedPolyhedron {
    /// Normal quasifan in the dual space: one cone of covectors per vertex,
    /// those minimized there. The support is the dual of the tail.
    pub fn normal_quasifan(&self) -> QuasiFan {
        let dim = self.ambient_dim();
        let verts = self.vertices();
        let mut cones = Vec::with_capacity(verts.len());
        for (i, v) in verts.iter().enumerate() {
            let mut ineqs: Vec<Vec<Int>> = self.tail().rays().to_vec();
            for (j, w) in verts.iter().enumerate() {
                if i != j {
                    let diff: Vec<Rat> = w.iter().zip(v).map(|(a, b)| a - b).collect();
                    ineqs.push(clear_denominators(&diff));
                }
            }
            cones.push(Cone::from_inequalities(&ineqs, &[], dim).expect("lengths match"));
        }
        QuasiFan::new(cones, dim).expect("lengths match")
    }
}

/// Chamber complex of the images `P(τ)` of the faces of `σ′`: the coarsest
/// common refinement, whose maximal cones are intersections of the
/// full-dimensional images containing a generic point.
pub fn image_fan(p: &IntMatrix, sigma: &Cone) -> Result<QuasiFan> {
    if p.cols() != sigma.ambient_dim() {
        return Err(Error::RankMismatch(p.cols(), sigma.ambient_dim()));
    }
    if !sigma.is_pointed() || !sigma.is_full_dimensional() {
        return Err(Error::InvalidCone(
            "ambient cone must be pointed and full-dimensional".into(),
        ));
    }
    let k = p.rows();
    if k == 0 {
        return QuasiFan::new(vec![Cone::zero(0)], 0);
    }
    let mut images: Vec<Cone> = Vec::new();
    for face in sigma.faces() {
        let img = face.image(p)?;
        if img.is_full_dimensional() && !images.contains(&img) {
            images.push(img);
        }
    }
    let mut hyperplanes: Vec<Vec<Int>> = Vec::new();
    for img in &images {
        for f in img.facets() {
            let mut h = f.clone();
            if h.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                h = h.iter().map(|x| -x).collect();
            }
            if !hyperplanes.contains(&h) {
                hyperplanes.push(h);
            }
        }
    }
    hyperplanes.sort();

    let mut cells = vec![sigma.image(p)?];
    for h in &hyperplanes {
        let neg: Vec<Int> = h.iter().map(|x| -x).collect();
        let mut next = Vec::with_capacity(cells.len() * 2);
        for cell in cells {
            let up = cell.intersect(&Cone::from_inequalities(std::slice::from_ref(h), &[], k)?)?;
            let down = cell.intersect(&Cone::from_inequalities(std::slice::from_ref(&neg), &[], k)?)?;
            if up.is_full_dimensional() && down.is_full_dimensional() {
                next.push(up);
                next.push(down);
            } else {
                next.push(cell);
            }
        }
        cells = next;
    }

    let mut chambers: Vec<Cone> = Vec::new();
    for cell in &cells {
        let x = cell.relint_point();
        let mut chamber: Option<Cone> = None;
        for img in images.iter().filter(|c| c.contains(&x)) {
            chamber = Some(match chamber {
                None => img.clone(),
                Some(c) => c.intersect(img)?,
            });
        }
        let chamber = chamber.unwrap_or_else(|| cell.clone());
        if !chamber.is_pointed() {
            return Err(Error::NonPointedImage);
        }
        if !chambers.contains(&chamber) {
            chambers.push(chamber);
        }
    }
    QuasiFan::new(chambers, k)
}

/// `s(σ′ ∩ P⁻¹(v))` as a tailed polyhedron, without checking that `v` is a
/// ray of the image fan.
pub fn fiber_polyhedron(
    p: &IntMatrix,
    s: &IntMatrix,
    sigma: &Cone,
    v: &[Int],
) -> Result<TailedPolyhedron> {
    let n = sigma.ambient_dim();
    if p.cols() != n || s.cols() != n || v.len() != p.rows() {
        return Err(Error::DimensionMismatch(format!(
            "fiber over a {}-vector for P {}x{}, s {}x{}, ambient rank {n}",
            v.len(),
            p.rows(),
            p.cols(),
            s.rows(),
            s.cols()
        )));
    }
    let lift = |row: &[Int], last: Int| -> Vec<Int> {
        let mut r = row.to_vec();
        r.push(last);
        r
    };
    let mut ineqs: Vec<Vec<Int>> = sigma.facets().iter().map(|f| lift(f, Int::zero())).collect();
    let mut lambda = vec![Int::zero(); n + 1];
    lambda[n] = Int::from(1);
    ineqs.push(lambda);
    let mut eqs: Vec<Vec<Int>> = sigma.equations().iter().map(|e| lift(e, Int::zero())).collect();
    for (i, vi) in v.iter().enumerate() {
        eqs.push(lift(p.row(i), -vi.clone()));
    }
    let cone = Cone::from_inequalities(&ineqs, &eqs, n + 1)?;
    if !cone.is_pointed() {
        return Err(Error::NonPointedTail);
    }
    let mut points = Vec::new();
    let mut rays = Vec::new();
    for r in cone.rays() {
        if r[n].is_positive() {
            let x: Vec<Rat> = r[..n]
                .iter()
                .map(|a| Rat::new(a.clone(), r[n].clone()))
                .collect();
            points.push(s.apply_rat(&x));
        } else {
            rays.push(s.apply(&r[..n]));
        }
    }
    if points.is_empty() {
        return Err(Error::NotARay(show(v)));
    }
    TailedPolyhedron::tail_decompose(&points, &rays, s.rows())
}

/// Coefficient `s(σ′ ∩ P⁻¹(v))` of the polyhedral divisor at a ray `v` of
/// the image fan.
pub fn fiber_coefficient(
    p: &IntMatrix,
    s: &IntMatrix,
    sigma: &Cone,
    v: &[Int],
) -> Result<TailedPolyhedron> {
    let fan = image_fan(p, sigma)?;
    if v.iter().all(Zero::is_zero) || fan.rays().iter().all(|r| r.as_slice() != v) {
        return Err(Error::NotARay(show(v)));
    }
    fiber_polyhedron(p, s, sigma, v)
}

#[derive(Serialize, Deserialize)]
struct FanWire {
    dim: usize,
    cones: Vec<Cone>,
}

impl Serialize for QuasiFan {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FanWire {
            dim: self.dim,
            cones: self.cones.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuasiFan {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = FanWire::deserialize(d)?;
        QuasiFan::new(w.cones, w.dim).map_err(serde::de::Error::custom)
    }
}
