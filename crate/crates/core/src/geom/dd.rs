//! Double description: from a system of homogeneous inequalities `A x ≥ 0`
//! to the lineality space and extreme rays of the cone it defines.

use num_traits::{Signed, Zero};

use crate::lattice::rational::{int_rank, rref};
use crate::num::{clear_denominators, dot, primitive, Int, Rat};

/// Generators of `{x ∈ ℚ^dim : a·x ≥ 0 for every row a}`: a lineality basis
/// and the extreme rays of the cone modulo lineality. Rays are primitive but
/// not yet canonical (see [`canonical_rays`]).
pub fn double_description(constraints: &[Vec<Int>], dim: usize) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let mut lineality: Vec<Vec<Int>> = (0..dim)
        .map(|i| {
            let mut e = vec![Int::zero(); dim];
            e[i] = Int::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    let mut processed: Vec<Vec<Int>> = Vec::new();

    for a in constraints {
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(k) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(k);
            if dot(a, &l0).is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let al0 = dot(a, &l0);
            let project = |v: &Vec<Int>| -> Vec<Int> {
                let av = dot(a, v);
                let w: Vec<Int> = v
                    .iter()
                    .zip(&l0)
                    .map(|(x, y)| &al0 * x - &av * y)
                    .collect();
                primitive(&w)
            };
            lineality = lineality.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(primitive(&l0));
            processed.push(a.clone());
            continue;
        }

        let values: Vec<Int> = rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            processed.push(a.clone());
            continue;
        }
        let zero_sets: Vec<Vec<usize>> = rays
            .iter()
            .map(|r| {
                (0..processed.len())
                    .filter(|&j| dot(&processed[j], r).is_zero())
                    .collect()
            })
            .collect();
        // Rank of the processed system equals dim minus the lineality rank.
        let target = (dim - lineality.len()).saturating_sub(2);
        let mut next: Vec<Vec<Int>> = (0..rays.len())
            .filter(|&i| !values[i].is_negative())
            .map(|i| rays[i].clone())
            .collect();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<usize> = zero_sets[p]
                    .iter()
                    .filter(|j| zero_sets[n].binary_search(j).is_ok())
                    .copied()
                    .collect();
                if common.len() < target {
                    continue;
                }
                let sub: Vec<Vec<Int>> = common.iter().map(|&j| processed[j].clone()).collect();
                if int_rank(&sub, dim) != target {
                    continue;
                }
                let w: Vec<Int> = rays[n]
                    .iter()
                    .zip(&rays[p])
                    .map(|(x, y)| &values[p] * x - &values[n] * y)
                    .collect();
                next.push(primitive(&w));
            }
        }
        rays = next;
        processed.push(a.clone());
    }
    (lineality, rays)
}

/// Canonical basis of the rational span of `vectors`: reduced echelon rows
/// scaled to primitive integer vectors.
pub fn canonical_span(vectors: &[Vec<Int>], dim: usize) -> Vec<Vec<Int>> {
    let q: Vec<Vec<Rat>> = vectors.iter().map(|v| crate::num::to_rat(v)).collect();
    let (e, _) = rref(&q, dim);
    e.iter().map(|r| clear_denominators(r)).collect()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`,
/// scaled to a primitive integer vector.
pub fn project_out(v: &[Int], basis: &[Vec<Int>]) -> Vec<Int> {
    if basis.is_empty() {
        return primitive(v);
    }
    let k = basis.len();
    let gram: Vec<Vec<Rat>> = (0..k)
        .map(|i| (0..k).map(|j| Rat::from_integer(dot(&basis[i], &basis[j]))).collect())
        .collect();
    let rhs: Vec<Rat> = basis.iter().map(|b| Rat::from_integer(dot(b, v))).collect();
    let coeffs = crate::lattice::rational::rat_solve(&gram, k, &rhs)
        .expect("Gram matrix of a basis is invertible");
    let mut w: Vec<Rat> = crate::num::to_rat(v);
    for (c, b) in coeffs.iter().zip(basis) {
        for (wi, bi) in w.iter_mut().zip(b) {
            *wi -= c * Rat::from_integer(bi.clone());
        }
    }
    clear_denominators(&w)
}

/// Rays made canonical modulo a lineality space: projected onto its
/// orthogonal complement, primitive, deduplicated and sorted.
pub fn canonical_rays(rays: &[Vec<Int>], lineality: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = rays
        .iter()
        .map(|r| project_out(r, lineality))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ints;

    #[test]
    fn orthant_rays() {
        let cons = vec![ints(&[1, 0]), ints(&[0, 1])];
        let (l, mut r) = double_description(&cons, 2);
        r.sort();
        assert!(l.is_empty());
        assert_eq!(r, vec![ints(&[0, 1]), ints(&[1, 0])]);
    }

    #[test]
    fn halfplane_has_lineality() {
        let (l, r) = double_description(&[ints(&[1, 1])], 2);
        assert_eq!(l.len(), 1);
        assert_eq!(canonical_rays(&r, &l), vec![ints(&[1, 1])]);
    }

    #[test]
    fn square_pyramid() {
        // x ≥ |y|, x ≥ |z| has four extreme rays.
        let cons = vec![
            ints(&[1, 1, 0]),
            ints(&[1, -1, 0]),
            ints(&[1, 0, 1]),
            ints(&[1, 0, -1]),
        ];
        let (l, r) = double_description(&cons, 3);
        assert!(l.is_empty());
        assert_eq!(
            canonical_rays(&r, &l),
            vec![
                ints(&[1, -1, -1]),
                ints(&[1, -1, 1]),
                ints(&[1, 1, -1]),
                ints(&[1, 1, 1])
            ]
        );
    }

    #[test]
    fn contradictory_system_is_zero_cone() {
        let (l, r) = double_description(&[ints(&[1]), ints(&[-1])], 1);
        assert!(l.is_empty() && r.is_empty());
    }
}
