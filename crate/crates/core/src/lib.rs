//! Exact computation of Altmann–Hausen presentations `(Y, 𝔇, h)` for subtorus
//! actions on affine toric varieties, together with the real structures they
//! inherit from lattice involutions.
//!
//! Everything is computed over arbitrary-precision integers and rationals.
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: integer matrices, Smith/Hermite forms, sections of exact
//!   sequences, classification of lattice involutions.
//! * [`geom`]: rational cones, tailed polyhedra, support functions, normal
//!   quasifans and image fans.
//! * [`divisor`]: toric bases, polyhedral divisors and their evaluations.
//! * [`downgrade`]: the downgrading pipeline from an equivariant torus
//!   embedding to a presentation with real structure.
//! * [`descent`]: cone stability, splitting of character cocycles, divisor
//!   twists.
//! * [`graded`]: graded pieces, the lattice-point bijection with ambient
//!   monomials and the induced involution on graded pieces.

pub mod descent;
pub mod divisor;
pub mod downgrade;
pub mod error;
pub mod geom;
pub mod graded;
pub mod lattice;
pub mod num;

pub use descent::{CharacterCocycle, Obstruction, SignCharacter, SplitOutcome, Splitting};
pub use divisor::{PolyhedralDivisor, ToricBase, WeilQDivisor};
pub use downgrade::{AHDatum, DowngradeOptions, TorusEmbedding};
pub use error::{Error, Result};
pub use geom::{Cone, Polyhedron, QuasiFan, TailedPolyhedron};
pub use graded::GradedPiece;
pub use lattice::{IntMatrix, InvolutionType, LatticeInvolution};
pub use num::{Int, Rat};
