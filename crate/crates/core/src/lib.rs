//! Exact computation of the three-parameter generalized binomial
//! coefficients `gb(n, p, k)`, and exact verification of the identities and
//! generating functions they satisfy.
//!
//! - [`exact`]: big integers, rationals, factorials and binomials.
//! - [`genbinom`]: the independent evaluators and scalar identities.
//! - [`poly`] / [`series`]: polynomial arithmetic and generating functions.
//! - [`partitions`]: partition enumeration, moment polynomials and the
//!   binomial-basis coefficients `c_k`.
//! - [`verify`]: suites that sweep parameter grids, in parallel when the
//!   `parallel` feature is enabled.

pub mod exact;
pub mod genbinom;
pub mod identity;
pub mod par;
pub mod partitions;
pub mod poly;
pub mod series;
pub mod verify;

pub use exact::{ExactInt, ExactRat};
pub use genbinom::{gb_canonical, gb_table, Formula, GbKey, GbTable};
pub use identity::Identity;
pub use par::Exec;
pub use poly::{BiPoly, Poly};
