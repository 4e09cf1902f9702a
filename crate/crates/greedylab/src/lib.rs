//! Numerical toolkit for thresholding-greedy primitives on bases of
//! finite-dimensional quasi-normed spaces.
//!
//! The crate revolves around three layers:
//!
//! * **Spaces and bases** — [`space::QuasiNormedSpace`] pairs a dimension
//!   with a p-convex quasi-norm; [`basis::Basis`] holds a basis of such a
//!   space together with its exact rational dual, so coefficient reads are
//!   never contaminated by floating-point solves.
//! * **Estimators** — [`estimator::estimate`] and its per-quantity
//!   wrappers search the grid of coefficient vectors with entries
//!   `k/m`, `|k| <= m`, either exhaustively (when the enumeration fits the
//!   budget) or by seeded sampling plus coordinate ascent.  Every estimate
//!   carries a [`estimator::Witness`] that reproduces its value.
//! * **Checks** — [`theorems::TheoremSuite`] turns inequalities between
//!   the estimated quantities into executable pass/fail reports, and
//!   [`curves`] tabulates the raw values as CSV.
//!
//! Indices are 1-based throughout the public API: basis vectors are
//! `x_1, ..., x_N` and index sets print as `{1, 3}`.  All searches are
//! deterministic — reruns with equal inputs produce byte-identical
//! witnesses — so estimates can be cached ([`store`]) and diffed.
//!
//! ```
//! use greedylab::basis::Basis;
//! use greedylab::estimator::{estimate_phi, SearchOpts};
//! use greedylab::grid::{GridSpec, Level};
//!
//! let basis = Basis::summing(3).unwrap();
//! let grid = GridSpec::new(1).unwrap();
//! let est = estimate_phi(&basis, &Level::one(), &grid, &SearchOpts::default()).unwrap();
//! assert_eq!(est.value, 2.0);
//! ```

pub mod basis;
pub mod catalog;
pub mod cli;
pub mod coeff;
pub mod constants;
pub mod curves;
pub mod error;
pub mod estimator;
pub mod greedy;
pub mod grid;
pub mod linalg;
pub mod report;
pub mod space;
pub mod store;
pub mod theorems;

pub use basis::Basis;
pub use catalog::{load_catalog, CatalogEntry};
pub use coeff::{CoeffVector, IndexSet, SignPattern};
pub use constants::ConstantPack;
pub use error::{Error, Result};
pub use estimator::{Estimate, Mode, Quantity, SearchOpts, Witness};
pub use grid::{GridSpec, Level};
pub use report::{CheckReport, Verdict};
pub use space::{NormDescriptor, QuasiNormedSpace};
pub use theorems::TheoremSuite;
