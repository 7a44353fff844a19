//! Exact finite-field arithmetic and exhaustive verification of
//! Wilson-type identities for the nonzero elements of `GF(p^n)`.
//!
//! The nonzero elements `a_1, .., a_{q-1}` of `GF(q)` are exactly the roots
//! of `x^(q-1) - 1`, so their elementary symmetric values are all zero
//! except `s_{q-1} = (-1)^q`. This crate computes those values by
//! independent routes and checks the consequences: Wilson's theorem,
//! subset-product congruences mod `p`, and Wolstenholme's theorem together
//! with its field analogue.

pub mod cli;
pub mod field;
pub mod identities;
pub mod modnum;
pub mod poly;
pub mod symmetric;

pub use field::{make_field, FieldElement, FieldError, FieldParams};
pub use identities::{CheckResult, IdentityError, VerificationReport};
pub use modnum::{Modulus, Residue};
pub use poly::PolyZp;
pub use symmetric::{PowerSumProfile, Ring, SymmetricProfile};

/// Residue of `Z/pZ`, the prime-field instance of [`Residue`].
pub type Zp = Residue;

/// An element of some `GF(p^n)` borrowed from its parameters.
pub type Gf<'f> = FieldElement<'f>;
