//! Linear codes over GF(2^t) built from Boolean functions on GF(2^n).
//!
//! Given `f: GF(2^n) -> GF(2)` that is constant on the cosets `x F_{2^t}^*`,
//! the nonzero zeros of `f` index the coordinates of a trace code over
//! GF(2^t). This crate builds those codes, computes their complete weight
//! enumerators by exhaustive enumeration, predicts the same enumerators from
//! the Walsh spectrum of `f`, and compares the two.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod boolean;
pub mod code;
pub mod enumerators;
mod error;
pub mod families;
pub mod field;
pub mod gf2poly;

pub use boolean::{BooleanFunction, Descriptor, ProductFunction, QuadraticForm, WalshSpectrum};
pub use code::{CodeInstance, CodeKind, Codeword, Domain, ValidationReport};
pub use enumerators::{
    CertificationReport, ClosedFormPrediction, CompleteWeightEnumerator, WeightEnumerator,
};
pub use error::{Error, Result};
pub use field::{Field, Subfield};
