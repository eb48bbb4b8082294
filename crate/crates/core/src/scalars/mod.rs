//! Exact coefficients: the ground field and nilpotent Artin rings over it.

mod field;
mod ring;

pub use field::{Field, Scalar};
pub use ring::{ring_mul, RingElement, RingKind, RingSpec};

pub(crate) use ring::same_ring;
