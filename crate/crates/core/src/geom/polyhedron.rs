use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::num::{clear_denominators, common_denominator, dot_int_rat, dot_rat, to_rat, wire, Int, Rat};

/// Homogenized generator `(x, 1)` scaled to a primitive integer vector.
fn homogenize_point(p: &[Rat]) -> Vec<Int> {
    let mut h = p.to_vec();
    h.push(Rat::one());
    clear_denominators(&h)
}

fn dehomogenize(r: &[Int]) -> Vec<Rat> {
    let (x, l) = r.split_at(r.len() - 1);
    let l = &l[0];
    x.iter().map(|xi| Rat::new(xi.clone(), l.clone())).collect()
}

/// Rational polyhedron `{x : a·x ≥ b (ineqs), a·x = b (eqs)}` that may be
/// empty, unbounded or have lineality. The V-representation is computed on
/// construction from the homogenized cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    /// Integer rows `[a | −b]` meaning `a·x − b ≥ 0`.
    ineqs: Vec<Vec<Int>>,
    eqs: Vec<Vec<Int>>,
    vertices: Vec<Vec<Rat>>,
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
}

fn homogenize_constraint(a: &[Rat], b: &Rat) -> Vec<Int> {
    let mut row = a.to_vec();
    row.push(-b.clone());
    let (nums, _) = common_denominator(&row);
    nums
}

impl Polyhedron {
    /// Each constraint is `(a, b)`: inequalities mean `a·x ≥ b`, equations
    /// `a·x = b`.
    pub fn new(ineqs: &[(Vec<Rat>, Rat)], eqs: &[(Vec<Rat>, Rat)], dim: usize) -> Result<Self> {
        if let Some((a, _)) = ineqs.iter().chain(eqs).find(|(a, _)| a.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "constraint of length {} in ambient rank {dim}",
                a.len()
            )));
        }
        let hi: Vec<Vec<Int>> = ineqs.iter().map(|(a, b)| homogenize_constraint(a, b)).collect();
        let he: Vec<Vec<Int>> = eqs.iter().map(|(a, b)| homogenize_constraint(a, b)).collect();
        Ok(Self::from_homogeneous(hi, he, dim))
    }

    fn from_homogeneous(ineqs: Vec<Vec<Int>>, eqs: Vec<Vec<Int>>, dim: usize) -> Self {
        let mut all = ineqs.clone();
        let mut lambda = vec![Int::zero(); dim + 1];
        lambda[dim] = Int::one();
        all.push(lambda);
        let cone = Cone::from_inequalities(&all, &eqs, dim + 1).expect("consistent lengths");
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in cone.rays() {
            if r[dim].is_positive() {
                vertices.push(dehomogenize(r));
            } else {
                rays.push(r[..dim].to_vec());
            }
        }
        vertices.sort();
        let lineality: Vec<Vec<Int>> = cone.lineality().iter().map(|l| l[..dim].to_vec()).collect();
        let (vertices, rays, lineality) = if vertices.is_empty() {
            (Vec::new(), Vec::new(), Vec::new())
        } else {
            (vertices, rays, lineality)
        };
        Polyhedron {
            dim,
            ineqs,
            eqs,
            vertices,
            rays,
            lineality,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Representatives of the minimal faces (the vertices when pointed).
    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    pub fn is_bounded(&self) -> bool {
        !self.is_empty() && self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Affine dimension, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let mut dirs: Vec<Vec<Rat>> = Vec::new();
        let v0 = &self.vertices[0];
        for v in &self.vertices[1..] {
            dirs.push(v.iter().zip(v0).map(|(a, b)| a - b).collect());
        }
        for r in self.rays.iter().chain(&self.lineality) {
            dirs.push(to_rat(r));
        }
        Some(crate::lattice::rational::rat_rank(&dirs, self.dim))
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension() == Some(self.dim)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        let eval = |row: &Vec<Int>| -> Rat {
            dot_int_rat(&row[..self.dim], x) + Rat::from_integer(row[self.dim].clone())
        };
        x.len() == self.dim
            && self.eqs.iter().all(|r| eval(r).is_zero())
            && self.ineqs.iter().all(|r| !eval(r).is_negative())
    }

    pub fn contains_int(&self, x: &[Int]) -> bool {
        let eval = |row: &Vec<Int>| -> Int {
            row[..self.dim].iter().zip(x).map(|(a, b)| a * b).sum::<Int>() + &row[self.dim]
        };
        x.len() == self.dim
            && self.eqs.iter().all(|r| eval(r).is_zero())
            && self.ineqs.iter().all(|r| !eval(r).is_negative())
    }

    /// Translate by `u`.
    pub fn translate(&self, u: &[Rat]) -> Polyhedron {
        let shift = |row: &Vec<Int>| -> Vec<Rat> {
            let a = to_rat(&row[..self.dim]);
            let b = -Rat::from_integer(row[self.dim].clone()) + dot_rat(&a, u);
            let mut out = a;
            out.push(-b);
            out
        };
        let ineqs = self.ineqs.iter().map(|r| common_denominator(&shift(r)).0).collect();
        let eqs = self.eqs.iter().map(|r| common_denominator(&shift(r)).0).collect();
        Polyhedron::from_homogeneous(ineqs, eqs, self.dim)
    }

    /// All lattice points in the polyhedron and in the box `lo ≤ x ≤ hi`,
    /// sorted lexicographically.
    pub fn lattice_points(&self, lo: &[Int], hi: &[Int]) -> Vec<Vec<Int>> {
        if self.is_empty() || lo.len() != self.dim || hi.len() != self.dim {
            return Vec::new();
        }
        let mut ineqs = self.ineqs.clone();
        for i in 0..self.dim {
            let mut up = vec![Int::zero(); self.dim + 1];
            up[i] = -Int::one();
            up[self.dim] = hi[i].clone();
            ineqs.push(up);
            let mut down = vec![Int::zero(); self.dim + 1];
            down[i] = Int::one();
            down[self.dim] = -lo[i].clone();
            ineqs.push(down);
        }
        let boxed = Polyhedron::from_homogeneous(ineqs, self.eqs.clone(), self.dim);
        if boxed.is_empty() {
            return Vec::new();
        }
        let mut bounds = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mn = boxed.vertices.iter().map(|v| v[i].clone()).min().expect("nonempty");
            let mx = boxed.vertices.iter().map(|v| v[i].clone()).max().expect("nonempty");
            bounds.push((mn.ceil().to_integer(), mx.floor().to_integer()));
        }
        let mut out = Vec::new();
        let mut cur: Vec<Int> = bounds.iter().map(|b| b.0.clone()).collect();
        if bounds.iter().any(|(a, b)| a > b) {
            return out;
        }
        loop {
            if boxed.contains_int(&cur) {
                out.push(cur.clone());
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < bounds[i].1 {
                    cur[i] += 1;
                    for (j, c) in cur.iter_mut().enumerate().skip(i + 1) {
                        *c = bounds[j].0.clone();
                    }
                    break;
                }
            }
            if self.dim == 0 {
                return out;
            }
        }
    }

    /// The same set as a tailed polyhedron; fails when empty or when the
    /// recession cone has lineality.
    pub fn to_tailed(&self) -> Result<TailedPolyhedron> {
        if self.is_empty() {
            return Err(Error::EmptyInput);
        }
        if !self.lineality.is_empty() {
            return Err(Error::NonPointedTail);
        }
        TailedPolyhedron::tail_decompose(&self.vertices, &self.rays, self.dim)
    }
}

/// Pointed polyhedron `conv(vertices) + tail` with a minimal, sorted vertex
/// list and a pointed tail cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TailedPolyhedron {
    vertices: Vec<Vec<Rat>>,
    tail: Cone,
}

impl TailedPolyhedron {
    /// Minkowski decomposition of `conv(points) + cone(rays)`.
    pub fn tail_decompose(points: &[Vec<Rat>], rays: &[Vec<Int>], dim: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} in ambient rank {dim}",
                p.len()
            )));
        }
        if let Some(r) = rays.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "ray of length {} in ambient rank {dim}",
                r.len()
            )));
        }
        let mut gens: Vec<Vec<Int>> = points.iter().map(|p| homogenize_point(p)).collect();
        for r in rays {
            let mut h = r.clone();
            h.push(Int::zero());
            gens.push(h);
        }
        let cone = Cone::from_generators(&gens, dim + 1)?;
        if !cone.is_pointed() {
            return Err(Error::NonPointedTail);
        }
        let mut vertices = Vec::new();
        let mut tail_rays = Vec::new();
        for r in cone.rays() {
            if r[dim].is_positive() {
                vertices.push(dehomogenize(r));
            } else {
                tail_rays.push(r[..dim].to_vec());
            }
        }
        vertices.sort();
        Ok(TailedPolyhedron {
            vertices,
            tail: Cone::from_generators(&tail_rays, dim)?,
        })
    }

    pub fn new(vertices: &[Vec<Rat>], tail: &Cone) -> Result<Self> {
        if !tail.is_pointed() {
            return Err(Error::NonPointedTail);
        }
        Self::tail_decompose(vertices, tail.rays(), tail.ambient_dim())
    }

    /// The tail cone itself, i.e. the neutral element `{0} + ω`.
    pub fn from_tail(tail: &Cone) -> Result<Self> {
        let origin = vec![Rat::zero(); tail.ambient_dim()];
        Self::new(&[origin], tail)
    }

    pub fn point(p: &[Rat]) -> Self {
        Self::tail_decompose(&[p.to_vec()], &[], p.len()).expect("single point")
    }

    pub fn ambient_dim(&self) -> usize {
        self.tail.ambient_dim()
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    /// Whether this equals its tail cone.
    pub fn is_tail(&self) -> bool {
        self.vertices.len() == 1 && self.vertices[0].iter().all(Zero::is_zero)
    }

    pub fn is_bounded(&self) -> bool {
        self.tail.is_zero()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.to_polyhedron().contains(x)
    }

    /// H-representation of the same set.
    pub fn to_polyhedron(&self) -> Polyhedron {
        let dim = self.ambient_dim();
        let mut gens: Vec<Vec<Int>> = self.vertices.iter().map(|p| homogenize_point(p)).collect();
        for r in self.tail.rays() {
            let mut h = r.clone();
            h.push(Int::zero());
            gens.push(h);
        }
        let cone = Cone::from_generators(&gens, dim + 1).expect("consistent lengths");
        Polyhedron::from_homogeneous(cone.facets().to_vec(), cone.equations().to_vec(), dim)
    }

    /// `min {⟨m, v⟩ : v ∈ Δ}`; `Unbounded` unless `m` is in the dual of the tail.
    pub fn support_eval(&self, m: &[Rat]) -> Result<Rat> {
        if m.len() != self.ambient_dim() {
            return Err(Error::RankMismatch(m.len(), self.ambient_dim()));
        }
        if !self.tail.dual().contains_rat(m) {
            return Err(Error::Unbounded);
        }
        Ok(self
            .vertices
            .iter()
            .map(|v| dot_rat(m, v))
            .min()
            .expect("at least one vertex"))
    }

    pub fn support_eval_int(&self, m: &[Int]) -> Result<Rat> {
        self.support_eval(&to_rat(m))
    }

    /// Vertices attaining the minimum of `⟨m, ·⟩`.
    pub fn minimizing_vertices(&self, m: &[Rat]) -> Result<Vec<usize>> {
        let h = self.support_eval(m)?;
        Ok((0..self.vertices.len())
            .filter(|&i| dot_rat(m, &self.vertices[i]) == h)
            .collect())
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        let dim = self.ambient_dim();
        if other.ambient_dim() != dim {
            return Err(Error::RankMismatch(dim, other.ambient_dim()));
        }
        let mut points = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                points.push(v.iter().zip(w).map(|(a, b)| a + b).collect());
            }
        }
        let mut rays = self.tail.rays().to_vec();
        rays.extend(other.tail.rays().iter().cloned());
        Self::tail_decompose(&points, &rays, dim)
    }

    pub fn translate(&self, u: &[Rat]) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(u).map(|(a, b)| a + b).collect())
            .collect();
        let mut t = TailedPolyhedron {
            vertices,
            tail: self.tail.clone(),
        };
        t.vertices.sort();
        t
    }

    /// Image under `x ↦ A x`; fails if the image of the tail is not pointed.
    pub fn linear_image(&self, a: &IntMatrix) -> Result<Self> {
        if a.cols() != self.ambient_dim() {
            return Err(Error::RankMismatch(a.cols(), self.ambient_dim()));
        }
        let points: Vec<Vec<Rat>> = self.vertices.iter().map(|v| a.apply_rat(v)).collect();
        let rays: Vec<Vec<Int>> = self.tail.rays().iter().map(|r| a.apply(r)).collect();
        Self::tail_decompose(&points, &rays, a.rows())
    }

    /// Bounding box of the vertices, rounded outward to integers.
    pub fn vertex_box(&self) -> (Vec<Int>, Vec<Int>) {
        let dim = self.ambient_dim();
        let lo = (0..dim)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| v[i].floor().to_integer())
                    .min()
                    .expect("nonempty")
            })
            .collect();
        let hi = (0..dim)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| v[i].ceil().to_integer())
                    .max()
                    .expect("nonempty")
            })
            .collect();
        (lo, hi)
    }

    /// Lowest common denominator of the vertex coordinates.
    pub fn denominator(&self) -> Int {
        self.vertices
            .iter()
            .flatten()
            .fold(Int::one(), |l, x| l.lcm(x.denom()))
    }
}

#[derive(Serialize, Deserialize)]
struct TailedWire {
    #[serde(with = "wire::rat_vecs")]
    vertices: Vec<Vec<Rat>>,
    tail: Cone,
}

impl Serialize for TailedPolyhedron {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TailedWire {
            vertices: self.vertices.clone(),
            tail: self.tail.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TailedPolyhedron {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = TailedWire::deserialize(d)?;
        TailedPolyhedron::new(&w.vertices, &w.tail).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{ints, rat, rats};

    fn q2(a: i64, b: i64) -> Vec<Rat> {
        rats(&[a, b])
    }

    #[test]
    fn decomposition_examples() {
        let o = Cone::orthant(2);
        let d = TailedPolyhedron::tail_decompose(&[q2(0, 1), q2(1, 0)], o.rays(), 2).unwrap();
        assert_eq!(d.vertices(), &[q2(0, 1), q2(1, 0)]);
        assert_eq!(d.tail(), &o);

        let tri = TailedPolyhedron::tail_decompose(&[q2(0, 0), q2(1, 0), q2(0, 1), q2(0, 0)], &[], 2)
            .unwrap();
        assert_eq!(tri.vertices().len(), 3);
        assert!(tri.tail().is_zero());

        let ray = TailedPolyhedron::tail_decompose(&[rats(&[1]), rats(&[3])], &[ints(&[1])], 1)
            .unwrap();
        assert_eq!(ray.vertices(), &[rats(&[1])]);
        assert_eq!(ray.tail(), &Cone::orthant(1));

        assert_eq!(
            TailedPolyhedron::tail_decompose(&[], &[], 2),
            Err(Error::EmptyInput)
        );
        assert_eq!(
            TailedPolyhedron::tail_decompose(&[rats(&[0])], &[ints(&[1]), ints(&[-1])], 1),
            Err(Error::NonPointedTail)
        );
    }

    #[test]
    fn minkowski_examples() {
        let o = Cone::orthant(2);
        let d = TailedPolyhedron::new(&[q2(0, 1), q2(1, 0)], &o).unwrap();
        let neutral = TailedPolyhedron::from_tail(&o).unwrap();
        assert_eq!(d.minkowski_sum(&neutral).unwrap(), d);
        let dd = d.minkowski_sum(&d).unwrap();
        let hull = TailedPolyhedron::new(&[q2(0, 2), q2(1, 1), q2(2, 0)], &o).unwrap();
        assert_eq!(dd, hull);
        // (1,1) lies on the segment between the other two points.
        assert_eq!(dd.vertices(), &[q2(0, 2), q2(2, 0)]);
        let zero = TailedPolyhedron::point(&q2(0, 0));
        assert_eq!(zero.minkowski_sum(&d).unwrap(), d);
        let line = TailedPolyhedron::point(&rats(&[0]));
        assert_eq!(d.minkowski_sum(&line), Err(Error::RankMismatch(2, 1)));
    }

    #[test]
    fn support_examples() {
        let o = Cone::orthant(2);
        let d3 = TailedPolyhedron::new(&[q2(0, 1), q2(2, 0)], &o).unwrap();
        assert_eq!(d3.support_eval(&q2(2, 1)).unwrap(), rat(1, 1));
        assert_eq!(d3.support_eval(&q2(1, 3)).unwrap(), rat(2, 1));
        assert_eq!(d3.support_eval(&q2(0, 0)).unwrap(), rat(0, 1));
        assert_eq!(d3.support_eval(&q2(-1, 0)), Err(Error::Unbounded));
    }

    #[test]
    fn polyhedron_lattice_points() {
        // 0 ≤ u ≤ 2
        let p = Polyhedron::new(
            &[(rats(&[1]), rat(0, 1)), (rats(&[-1]), rat(-2, 1))],
            &[],
            1,
        )
        .unwrap();
        assert_eq!(
            p.lattice_points(&ints(&[-5]), &ints(&[5])),
            vec![ints(&[0]), ints(&[1]), ints(&[2])]
        );
        let empty = Polyhedron::new(
            &[(rats(&[1]), rat(0, 1)), (rats(&[-1]), rat(1, 1))],
            &[],
            1,
        )
        .unwrap();
        assert!(empty.is_empty());
        let half = Polyhedron::new(&[(rats(&[1, 1]), rat(1, 2))], &[], 2).unwrap();
        assert_eq!(half.lineality().len(), 1);
        assert_eq!(half.dimension(), Some(2));
        assert!(matches!(half.to_tailed(), Err(Error::NonPointedTail)));
    }

    #[test]
    fn h_and_v_agree() {
        let o = Cone::orthant(2);
        let d = TailedPolyhedron::new(&[q2(0, 1), q2(1, 0)], &o).unwrap();
        let p = d.to_polyhedron();
        assert_eq!(p.to_tailed().unwrap(), d);
        assert!(p.contains(&[rat(1, 2), rat(1, 2)]));
        assert!(!p.contains(&[rat(1, 3), rat(1, 3)]));
    }

    #[test]
    fn serde_round_trip() {
        let d = TailedPolyhedron::new(&[vec![rat(1, 2), rat(0, 1)]], &Cone::orthant(2)).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"1/2\""));
        assert_eq!(serde_json::from_str::<TailedPolyhedron>(&s).unwrap(), d);
    }
}
