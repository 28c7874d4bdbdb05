//! Linear algebra over ℚ on row-major `Vec<Vec<_>>` data: echelon forms,
//! ranks, null spaces and solving. Used wherever a question is about
//! rational spans rather than lattices.

use num_traits::{One, Signed, Zero};

use crate::num::{clear_denominators, primitive, Int, Rat};

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
#[allow(clippy::needless_range_loop)] // rows r and i of the same matrix
pub fn rref(rows: &[Vec<Rat>], ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rat_rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Rank of an integer matrix by fraction-free elimination.
#[allow(clippy::needless_range_loop)] // rows r and i of the same matrix
pub fn int_rank(rows: &[Vec<Int>], ncols: usize) -> usize {
    let mut a: Vec<Vec<Int>> = rows.to_vec();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let piv = a[r][c].clone();
            for j in c..ncols {
                let v = &a[i][j] * &piv - &a[r][j] * &f;
                a[i][j] = v;
            }
            let reduced = primitive(&a[i]);
            a[i] = reduced;
        }
        r += 1;
    }
    r
}

/// Basis of the rational null space `{x : A x = 0}`.
pub fn rat_nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (e, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -e[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Null space basis scaled to primitive integer vectors.
pub fn int_nullspace(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let q: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(Rat::from_integer).collect())
        .collect();
    rat_nullspace(&q, ncols)
        .iter()
        .map(|v| clear_denominators(v))
        .collect()
}

/// One rational solution of `A x = b`, if any.
pub fn rat_solve(rows: &[Vec<Rat>], ncols: usize, b: &[Rat]) -> Option<Vec<Rat>> {
    let aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (e, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = e[r][ncols].clone();
    }
    Some(x)
}

pub fn rat_inverse(rows: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = rows.len();
    let aug: Vec<Vec<Rat>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let (e, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots.last().is_some_and(|&p| p >= n) {
        return None;
    }
    Some(e.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Whether `v` lies in the rational span of `rows`.
pub fn in_span(rows: &[Vec<Int>], v: &[Int]) -> bool {
    let n = v.len();
    let mut ext = rows.to_vec();
    let before = int_rank(&ext, n);
    ext.push(v.to_vec());
    int_rank(&ext, n) == before
}

/// Extends a list of integer rows by unit vectors until the span is full.
pub fn complete_to_full_rank(rows: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let mut out = rows.to_vec();
    let mut r = int_rank(&out, n);
    for i in 0..n {
        if r == n {
            break;
        }
        let mut e = vec![Int::zero(); n];
        e[i] = Int::one();
        out.push(e);
        let r2 = int_rank(&out, n);
        if r2 > r {
            r = r2;
        } else {
            out.pop();
        }
    }
    out
}

pub fn abs_max(v: &[Int]) -> Int {
    v.iter().map(Signed::abs).max().unwrap_or_else(Int::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{ints, rats};

    #[test]
    fn ranks_agree() {
        let rows = vec![ints(&[1, 2, 3]), ints(&[2, 4, 6]), ints(&[0, 1, 1])];
        assert_eq!(int_rank(&rows, 3), 2);
        let q: Vec<Vec<Rat>> = rows.iter().map(|r| crate::num::to_rat(r)).collect();
        assert_eq!(rat_rank(&q, 3), 2);
    }

    #[test]
    fn nullspace_and_solve() {
        let rows = vec![ints(&[1, 0, 1]), ints(&[0, 1, 1])];
        assert_eq!(int_nullspace(&rows, 3), vec![ints(&[-1, -1, 1])]);
        let q = vec![rats(&[1, 1]), rats(&[1, -1])];
        assert_eq!(rat_solve(&q, 2, &rats(&[2, 0])), Some(rats(&[1, 1])));
        let q = vec![rats(&[1, 1]), rats(&[2, 2])];
        assert_eq!(rat_solve(&q, 2, &rats(&[1, 3])), None);
    }
}
