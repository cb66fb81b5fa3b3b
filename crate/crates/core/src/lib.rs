//! Radical generators for cyclic field extensions, computed exactly and
//! emitted as independently checkable certificates.
//!
//! Given `E/K` cyclic of degree `n`, with a primitive `n`-th root of unity
//! `zeta` in `K` and a generator `sigma` of the Galois group, the [`kummer`]
//! pipeline finds `x` in `E` with `sigma(x) = zeta * x`, `x^n` in `K`, and
//! `E = K(x)`.

pub mod cli;
pub mod error;
pub mod families;
pub mod kummer;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod schema;
pub mod tower;

pub use error::{Error, Result};
pub use kummer::{
    compute_certificate, validate_setup, verify_certificate, CyclicExtensionInput,
    KummerCertificate,
};
pub use poly::Polynomial;
pub use tower::{Elem, Field};
