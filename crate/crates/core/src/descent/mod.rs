//! Descent along real structures: cone stability, splitting of
//! character-valued cocycles with sign obstructions, and divisor twists.

mod cocycle;
mod sign;
mod stability;
mod twist;

pub use cocycle::{
    coboundary_exponent, split_cocycle, CharacterCocycle, Obstruction, SplitOutcome, Splitting,
};
pub use sign::SignCharacter;
pub use stability::{cone_stable, stable_conjugate, StableConjugate, CONJUGATE_SEARCH_MAX_RANK};
pub use twist::{shift_coefficients, twist_divisor, TwistedDivisor};
