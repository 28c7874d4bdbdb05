//! Graded pieces of `A[Y, 𝔇]`, the lattice-point bijection with weight
//! spaces of the ambient coordinate ring, and the graded real structure.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::divisor::sections_polyhedron;
use crate::downgrade::AHDatum;
use crate::error::{show, Error, Result};
use crate::geom::{Polyhedron, TailedPolyhedron};
use crate::num::{wire, Int};

/// Lattice points of the sections polyhedron of `𝔇(m)` inside a box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    #[serde(with = "wire::int_vec")]
    pub weight: Vec<Int>,
    #[serde(with = "wire::int_vecs")]
    pub points: Vec<Vec<Int>>,
    /// `None` when the polyhedron is empty or contains a line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polyhedron: Option<TailedPolyhedron>,
}

fn piece_polyhedron(a: &AHDatum, m: &[Int]) -> Result<Polyhedron> {
    let e = a.divisor().evaluate(m)?;
    sections_polyhedron(a.base(), &e)
}

pub fn graded_piece(a: &AHDatum, m: &[Int], lo: &[Int], hi: &[Int]) -> Result<GradedPiece> {
    let k = a.base().rank();
    if lo.len() != k || hi.len() != k {
        return Err(Error::RankMismatch(lo.len().max(hi.len()), k));
    }
    let poly = piece_polyhedron(a, m)?;
    Ok(GradedPiece {
        weight: m.to_vec(),
        points: poly.lattice_points(lo, hi),
        polyhedron: poly.to_tailed().ok(),
    })
}

/// All `a ≥ 0` with `Σ a_i ≤ degree_bound` and `Σ a_i w_i = m`, sorted.
pub fn weight_fiber_oracle(weights: &[Vec<Int>], m: &[Int], degree_bound: u32) -> Vec<Vec<Int>> {
    fn go(
        weights: &[Vec<Int>],
        i: usize,
        left: u32,
        acc: &mut Vec<Int>,
        rest: &mut Vec<Int>,
        out: &mut Vec<Vec<Int>>,
    ) {
        if i == weights.len() {
            if rest.iter().all(Zero::is_zero) {
                out.push(acc.clone());
            }
            return;
        }
        for c in 0..=left {
            acc.push(Int::from(c));
            go(weights, i + 1, left - c, acc, rest, out);
            acc.pop();
            for (r, w) in rest.iter_mut().zip(&weights[i]) {
                *r -= w;
            }
        }
        for (r, w) in rest.iter_mut().zip(&weights[i]) {
            *r += w * Int::from(left + 1);
        }
    }
    let mut out = Vec::new();
    let mut rest = m.to_vec();
    go(weights, 0, degree_bound, &mut Vec::new(), &mut rest, &mut out);
    out.sort();
    out
}

/// Outcome of comparing the oracle exponents of weight `m` with the points
/// of the graded piece under `a ↦ t*(a − sᵀm)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    #[serde(with = "wire::int_vec")]
    pub weight: Vec<Int>,
    pub oracle_count: usize,
    pub piece_count: usize,
    pub bijective: bool,
}

/// Checks that `a ↦ t*(a − sᵀm)` maps the monomials of weight `m` and
/// degree at most the bound bijectively onto the piece points whose lift
/// `sᵀm + Pᵀu` has that degree. Requires a downgrade of an orthant.
pub fn bijection_report(a: &AHDatum, m: &[Int], degree_bound: u32) -> Result<BijectionReport> {
    let amb = a
        .ambient()
        .ok_or_else(|| Error::Invalid("datum has no ambient embedding".into()))?;
    if !amb.embedding.is_orthant_ambient() {
        return Err(Error::NonOrthantAmbient);
    }
    let (f, p, s, t) = (&amb.embedding.f, &amb.projection, &amb.cosection, &amb.section_t);
    let n = f.rows();
    let oracle = weight_fiber_oracle(&f.row_vecs(), m, degree_bound);
    let sm = s.apply_dual(m);
    let lift = |u: &[Int]| -> Vec<Int> {
        p.apply_dual(u).iter().zip(&sm).map(|(x, y)| x + y).collect()
    };
    let poly = piece_polyhedron(a, m)?;

    let mut images = BTreeSet::new();
    let mut ok = true;
    for x in &oracle {
        let diff: Vec<Int> = x.iter().zip(&sm).map(|(a, b)| a - b).collect();
        let u = t.apply(&diff);
        ok &= lift(&u) == *x && poly.contains_int(&u);
        images.insert(u);
    }

    let bound = Int::from(degree_bound);
    let k = t.rows();
    let hi: Vec<Int> = (0..k)
        .map(|j| {
            (0..n).fold(Int::zero(), |acc, i| {
                acc + t[(j, i)].abs() * (&bound + sm[i].abs())
            })
        })
        .collect();
    let lo: Vec<Int> = hi.iter().map(|x| -x).collect();
    let mut piece_count = 0;
    for u in poly.lattice_points(&lo, &hi) {
        let x = lift(&u);
        if x.iter().any(Signed::is_negative) {
            ok = false;
            continue;
        }
        if x.iter().sum::<Int>() <= bound {
            piece_count += 1;
            ok &= images.contains(&u);
        }
    }
    ok &= piece_count == oracle.len();
    Ok(BijectionReport {
        weight: m.to_vec(),
        oracle_count: oracle.len(),
        piece_count,
        bijective: ok,
    })
}

pub fn bijection_check(a: &AHDatum, m: &[Int], degree_bound: u32) -> Result<bool> {
    Ok(bijection_report(a, m, degree_bound)?.bijective)
}

/// Image of a character-basis element under the graded real structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PieceImage {
    #[serde(with = "wire::int_vec")]
    pub weight: Vec<Int>,
    #[serde(with = "wire::int_vec")]
    pub point: Vec<Int>,
    pub sign: i32,
}

/// `χ^p 𝔛_m ↦ ε(τ̃ m)·χ^{τ̃_Y p + E τ̃ m} 𝔛_{τ̃ m}`.
pub fn piece_involution(a: &AHDatum, m: &[Int], p: &[Int]) -> Result<PieceImage> {
    let poly = piece_polyhedron(a, m)?;
    if p.len() != a.base().rank() || !poly.contains_int(p) {
        return Err(Error::PointNotInPiece(show(p)));
    }
    let tm = a.tau_tilde().apply(m);
    let moved = a.tau_tilde_y().apply(p);
    let shift = a.h_exponent().apply(&tm);
    Ok(PieceImage {
        point: moved.iter().zip(&shift).map(|(x, y)| x + y).collect(),
        sign: a.h_sign().value(&tm),
        weight: tm,
    })
}

/// An orbit of the graded real structure on character-basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub members: Vec<PieceImage>,
}

impl Orbit {
    /// A fixed element up to the sign `ε`: a real generator when `ε = 1`.
    pub fn is_fixed(&self) -> bool {
        self.members.len() == 1
    }
}

/// Orbits on the box points of the pieces of weight `m` and `τ̃ m`.
pub fn involution_orbits(a: &AHDatum, m: &[Int], lo: &[Int], hi: &[Int]) -> Result<Vec<Orbit>> {
    let tm = a.tau_tilde().apply(m);
    let mut seen: BTreeSet<(Vec<Int>, Vec<Int>)> = BTreeSet::new();
    let mut orbits = Vec::new();
    let mut weights = vec![m.to_vec()];
    if tm != m {
        weights.push(tm);
    }
    for w in &weights {
        for p in graded_piece(a, w, lo, hi)?.points {
            if seen.contains(&(w.clone(), p.clone())) {
                continue;
            }
            let img = piece_involution(a, w, &p)?;
            seen.insert((w.clone(), p.clone()));
            let start = PieceImage {
                weight: w.clone(),
                point: p,
                sign: 1,
            };
            let members = if img.weight == start.weight && img.point == start.point {
                vec![PieceImage { sign: img.sign, ..start }]
            } else {
                seen.insert((img.weight.clone(), img.point.clone()));
                vec![start, img]
            };
            orbits.push(Orbit { members });
        }
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ints;

    fn weights(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| ints(r)).collect()
    }

    #[test]
    fn oracle_examples() {
        let w = weights(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(
            weight_fiber_oracle(&w, &ints(&[1, 1]), 4),
            vec![ints(&[0, 0, 1]), ints(&[1, 1, 0])]
        );
        assert_eq!(weight_fiber_oracle(&w, &ints(&[0, 0]), 4), vec![ints(&[0, 0, 0])]);
        let w = weights(&[&[1, 0], &[0, 1], &[1, 2], &[2, 1]]);
        assert_eq!(
            weight_fiber_oracle(&w, &ints(&[1, 2]), 4),
            vec![ints(&[0, 0, 1, 0]), ints(&[1, 2, 0, 0])]
        );
    }

    #[test]
    fn oracle_respects_degree_bound() {
        let w = weights(&[&[1], &[1]]);
        assert_eq!(weight_fiber_oracle(&w, &ints(&[3]), 2), Vec::<Vec<Int>>::new());
        assert_eq!(weight_fiber_oracle(&w, &ints(&[2]), 2).len(), 3);
    }
}
