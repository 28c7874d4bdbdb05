//! Downgrading the big-torus action on an affine toric variety to a
//! subtorus: quotient fan, polyhedral divisor, induced real structure on the
//! base, and the twisting character.

mod datum;
mod embedding;

pub use datum::{
    check_real_compatibility, cosection_shift, downgrade, downgrade_with,
    induced_quotient_involution, section_t, twisting_exponent, AHDatum, AmbientData,
    CompatibilityFailure, CompatibilityReport, DowngradeOptions,
};
pub use embedding::{validate_embedding, Generator, TorusEmbedding};
