//! Integer matrices as lattice homomorphisms: normal forms, integer linear
//! systems, sections of split exact sequences and lattice involutions.

mod involution;
mod matrix;
mod normal_form;
pub mod rational;
mod solve;

pub use involution::{classify_involution, InvolutionType, LatticeInvolution};
pub use matrix::{IntMatrix, LatticeMap};
pub use normal_form::{
    hermite_normal_form, hnf_basis, reduce_mod_trailing, smith_normal_form, trailing_hnf_basis,
    Smith,
};
pub use solve::{
    check_saturated, cokernel_projection, cosection, equivariant_cosection, lattice_kernel,
    right_inverse, solve_int, solve_int_canonical, solve_left, solve_right,
};
