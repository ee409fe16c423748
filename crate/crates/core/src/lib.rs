//! Trace-of-Frobenius statistics for families of elliptic curves modulo `p`.
//!
//! The crate enumerates the family of all curves `y² = x³ − ax − b` and
//! one-parameter families `y² = x³ + a2(T)x² + a4(T)x + a6(T)` over `ℤ/pℤ`,
//! turns the integer traces into normalized Sato–Tate angles, and measures how
//! far those angles are from the Sato–Tate law: exponential sums, interval and
//! extreme discrepancies, the Erdős–Turán style bound, exact moment sums and
//! the combinatorial identities that tie moments to exponential sums.
//!
//! Enumeration runs on rayon when the `parallel` feature is enabled (the
//! default). Work is split into fixed shards and merged in shard order, so
//! results are bit-identical for every thread count and for
//! [`Execution::Sequential`].

pub mod arith;
pub mod equidist;
mod error;
mod exec;
pub mod families;
pub mod identities;
pub mod measures;
pub mod statistics;

pub use arith::{BigInt, BigRational, IntPoly, Prime, QRTable};
pub use error::{Error, Result};
pub use exec::Execution;
pub use families::{AngleSample, FamilyKind, OneParamFamily, TraceSample};
pub use measures::{FourierMeasure, Interval};
