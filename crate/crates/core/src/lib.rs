//! Exact characteristic-class calculus and the combinatorial identities
//! behind the Deligne-Riemann-Roch isomorphism.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, binomials, Bernoulli and harmonic numbers.
//! * [`combin`]: Vandermonde matrices, their exact inverses and the
//!   interpolation coefficients extracted with them.
//! * [`series`]: truncated power series, the Todd series and the
//!   projective-space constants built from the R-genus.
//! * [`classes`]: a truncated ring of formal Chern roots with Chern, Segre,
//!   Todd and Chern-character classes.
//! * [`spaces`]: projective spaces, products and hypersurfaces with exact
//!   fibre integration and a closed-form Euler characteristic oracle.
//! * [`identities`]: the identity checks, each returning an [`IdentityReport`].
//! * [`fiberint`]: numerical push-forward along branched covers.
//! * [`battery`] and [`cli`]: suites, the parallel runner and the command
//!   surface of the `rrkernel` binary.

pub mod battery;
pub mod classes;
pub mod cli;
pub mod combin;
pub mod error;
pub mod exact;
pub mod fiberint;
pub mod identities;
pub mod parse;
pub mod report;
pub mod series;
pub mod spaces;

pub use error::{Error, Result};
pub use exact::Rational;
pub use report::{IdentityReport, Outcome};
