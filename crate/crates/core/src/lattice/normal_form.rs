use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::num::Int;

/// Smith normal form `U·A·V = S` with `U`, `V` unimodular and `S` diagonal
/// with nonnegative entries `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    'outer: for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = Int::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, s, v }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U·A = H`, `U`
/// unimodular, the nonzero rows of `H` first, each with a positive leading
/// entry strictly right of the previous one, and entries above a pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&x, &y| h[(x, c)].abs().cmp(&h[(y, c)].abs()));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, c)] / &h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                clean &= h[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Nonzero rows of the Hermite normal form of the lattice spanned by `rows`.
pub fn hnf_basis(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let a = IntMatrix::from_int_rows(rows.to_vec(), ncols).expect("rows share a length");
    let (h, _) = hermite_normal_form(&a);
    h.row_vecs()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Lattice basis in Hermite form read from the right: each vector's last
/// nonzero coordinate is a positive pivot, pivots strictly move left, and
/// pivot coordinates of the other vectors are reduced into `[0, pivot)`.
pub fn trailing_hnf_basis(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let reversed: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| r.iter().rev().cloned().collect())
        .collect();
    hnf_basis(&reversed, ncols)
        .into_iter()
        .map(|r| r.into_iter().rev().collect())
        .collect()
}

/// Canonical representative of `x` modulo the lattice with the given
/// trailing-pivot basis: every pivot coordinate lands in `[0, pivot)`.
pub fn reduce_mod_trailing(x: &[Int], basis: &[Vec<Int>]) -> Vec<Int> {
    let mut x = x.to_vec();
    for b in basis {
        let Some(p) = b.iter().rposition(|v| !v.is_zero()) else {
            continue;
        };
        let q = x[p].div_floor(&b[p]);
        if q.is_zero() {
            continue;
        }
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi -= &q * bi;
        }
    }
    x
}
