//! Exact computer algebra for alternating and symmetric superpowers.
//!
//! Everything runs over the rationals, or over the quadratic extension by
//! `i` with `i^2 = -1` when an input demands it.  No floating point is used
//! anywhere; equalities asserted by the test suites are exact.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] — exact field elements,
//! * [`linear`] — vector superspaces, even supermatrices, determinant /
//!   permanent hybrids and parity signs,
//! * [`powers`] — canonical bases of alternating and symmetric superpowers,
//!   superminors, matrix superpowers and kernel classification,
//! * [`lie`] — Lie superalgebras, supermodules, tensor and power modules
//!   with their weighted dual pairings,
//! * [`jordan`] — generalized Jordan superpairs, the Faulkner construction
//!   in both directions, and tensor shifts,
//! * [`pair_powers`] — closed-form tensor/alternating/symmetric superpowers
//!   of metric pairs plus the independent Faulkner-route oracle,
//! * [`catalog`] — the simple Jordan pairs of types I, II, III and the two
//!   worked isomorphism verifications,
//! * [`json`] — the JSON document formats used by the CLI.

pub mod catalog;
pub mod jordan;
pub mod json;
pub mod lie;
pub mod linear;
pub mod pair_powers;
pub mod powers;
pub mod scalar;

mod error;

pub use error::Error;
pub use linear::{EvenMap, Mat, Parity, SuperMatrix, SuperSpace, SuperVector};
pub use powers::{IndexTuple, KernelVerdict, PowerKind, PowerMatrix, PowerVector};
pub use scalar::Scalar;

/// Largest basis size a power construction is allowed to produce.
pub const MAX_POWER_DIM: usize = 200;
