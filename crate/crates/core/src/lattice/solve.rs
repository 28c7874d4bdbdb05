//! Integer linear systems and the sections of the exact sequences
//! `0 → N → N′ → N_Y → 0` built from a saturated embedding `F`.

use num_traits::{One, Zero};

use super::involution::LatticeInvolution;
use super::matrix::IntMatrix;
use super::normal_form::{
    hermite_normal_form, reduce_mod_trailing, smith_normal_form, trailing_hnf_basis,
};
use crate::error::{show, Error, Result};
use crate::num::Int;

/// Saturated basis of the integer kernel `{x ∈ ℤ^cols : A x = 0}`.
pub fn lattice_kernel(a: &IntMatrix) -> Vec<Vec<Int>> {
    let sm = smith_normal_form(a);
    let r = sm.rank();
    (r..a.cols()).map(|j| sm.v.col(j)).collect()
}

/// Some integer solution of `A x = b`, or `None` when there is none.
pub fn solve_int(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(b.len(), a.rows(), "right-hand side length mismatch");
    let sm = smith_normal_form(a);
    let c = sm.u.apply(b);
    let d = sm.diagonal();
    let mut y = vec![Int::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        let di = d.get(i).cloned().unwrap_or_else(Int::zero);
        if di.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            if !(ci % &di).is_zero() {
                return None;
            }
            y[i] = ci / &di;
        }
    }
    Some(sm.v.apply(&y))
}

/// The solution of `A x = b` reduced modulo the kernel lattice, so that the
/// answer depends only on the solution set.
pub fn solve_int_canonical(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    let x = solve_int(a, b)?;
    let basis = trailing_hnf_basis(&lattice_kernel(a), a.cols());
    Some(reduce_mod_trailing(&x, &basis))
}

/// Canonical integer `X` with `A X = B`, solved column by column.
pub fn solve_right(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    if a.rows() != b.rows() {
        return None;
    }
    let basis = trailing_hnf_basis(&lattice_kernel(a), a.cols());
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        let x = solve_int(a, &b.col(j))?;
        cols.push(reduce_mod_trailing(&x, &basis));
    }
    IntMatrix::from_cols(&cols, a.cols()).ok()
}

/// Canonical integer `X` with `X A = B`.
pub fn solve_left(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    solve_right(&a.transpose(), &b.transpose()).map(|x| x.transpose())
}

/// Fails with `NotSaturated` unless `F` is injective with torsion-free
/// cokernel.
pub fn check_saturated(f: &IntMatrix) -> Result<()> {
    let d = smith_normal_form(f).diagonal();
    if d.len() < f.cols() || d.iter().any(|x| !x.is_one()) {
        let mut inv = d;
        inv.resize(f.cols(), Int::zero());
        return Err(Error::NotSaturated(show(&inv)));
    }
    Ok(())
}

/// Surjection `P : ℤ^n → ℤ^k` with kernel exactly the image of `F`, returned
/// with its rows in Hermite normal form.
pub fn cokernel_projection(f: &IntMatrix) -> Result<IntMatrix> {
    check_saturated(f)?;
    let sm = smith_normal_form(f);
    let rows: Vec<Vec<Int>> = (f.cols()..f.rows()).map(|i| sm.u.row(i).to_vec()).collect();
    let p = IntMatrix::from_int_rows(rows, f.rows())?;
    Ok(hermite_normal_form(&p).0)
}

/// Integer `s` with `s·F = I`.
pub fn cosection(f: &IntMatrix) -> Result<IntMatrix> {
    check_saturated(f)?;
    solve_left(f, &IntMatrix::identity(f.cols()))
        .ok_or_else(|| Error::NotSaturated(vec!["no integer left inverse".into()]))
}

/// Integer `R` with `P·R = I` for a surjective `P`.
pub fn right_inverse(p: &IntMatrix) -> Result<IntMatrix> {
    solve_right(p, &IntMatrix::identity(p.rows()))
        .ok_or_else(|| Error::Invalid(format!("{p} is not surjective")))
}

/// Cosection `s` with `s·F = I` that also intertwines the involutions,
/// `τ̂_dom·s = s·τ̂_cod`, when one exists.
pub fn equivariant_cosection(
    f: &IntMatrix,
    tau_dom: &LatticeInvolution,
    tau_cod: &LatticeInvolution,
) -> Result<Option<IntMatrix>> {
    let (n, d) = (f.rows(), f.cols());
    if tau_dom.rank() != d || tau_cod.rank() != n {
        return Err(Error::DimensionMismatch(format!(
            "involution ranks {} and {} for a {n}x{d} embedding",
            tau_dom.rank(),
            tau_cod.rank()
        )));
    }
    if (tau_cod.matrix() * f) != (f * tau_dom.matrix()) {
        return Err(Error::NotEquivariantEmbedding);
    }
    check_saturated(f)?;
    let (td, tc) = (tau_dom.matrix(), tau_cod.matrix());
    let var = |i: usize, j: usize| i * n + j;
    let mut eqs: Vec<Vec<Int>> = Vec::new();
    let mut rhs: Vec<Int> = Vec::new();
    for i in 0..d {
        for k in 0..d {
            let mut row = vec![Int::zero(); d * n];
            for j in 0..n {
                row[var(i, j)] = f[(j, k)].clone();
            }
            eqs.push(row);
            rhs.push(if i == k { Int::one() } else { Int::zero() });
        }
    }
    for i in 0..d {
        for j in 0..n {
            let mut row = vec![Int::zero(); d * n];
            for l in 0..d {
                row[var(l, j)] += &td[(i, l)];
            }
            for l in 0..n {
                row[var(i, l)] -= &tc[(l, j)];
            }
            eqs.push(row);
            rhs.push(Int::zero());
        }
    }
    let a = IntMatrix::from_int_rows(eqs, d * n)?;
    Ok(solve_int_canonical(&a, &rhs).map(|x| IntMatrix::new(d, n, x).expect("d*n entries")))
}
