//! Multiset deletion-correcting codes.
//!
//! * [`gf`], [`poly`], [`ring`]: finite fields, polynomials and the quotient
//!   ring `F_s[X]/(f)` with its unit group and projective quotient.
//! * [`codes`]: the projective and affine polynomial syndrome constructions,
//!   table-driven syndrome decoding and a deletion channel.
//! * [`geometry`]: deletion distance, exact ball sizes, pair enumerator and
//!   average balls, with brute-force oracles.
//! * [`bounds`]: sphere-packing, anticode and Gilbert–Varshamov bounds as
//!   exact rationals, plus an exact maximum-code search for tiny spaces.
//! * [`verify`]: invariant suites shared by the CLI and the test targets.

pub mod bounds;
pub mod codes;
pub mod combinatorics;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod multiset;
pub mod poly;
pub mod ring;
pub mod verify;

pub use combinatorics::Rational;
pub use error::{Error, Result};
pub use multiset::{Multiset, Simplex};
