//! Polyhedral divisors on toric bases: evaluation, the pp-conditions,
//! global sections and pullback along toric real structures.

mod base;
mod polyhedral;
mod weil;

pub use base::ToricBase;
pub use polyhedral::{PolyhedralDivisor, PpChamber, PpReport, PpSample};
pub use weil::{
    cartier_data, degree, is_big, is_cartier, is_q_cartier, is_semiample, principal_divisor,
    pullback_involution, sections_polyhedron, WeilQDivisor,
};
