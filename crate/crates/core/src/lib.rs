//! Exact computation with Nakajima quiver varieties.
//!
//! The crate models framed representations of a doubled quiver over exact
//! fields and implements the constructions around them:
//!
//! - [`quiver`]: doubled quivers, Cartan data, Weyl group actions, genericity
//!   and dimension bookkeeping;
//! - [`linalg`] and [`field`]: exact matrices over rationals, Gaussian
//!   rationals and prime fields;
//! - [`rep`]: points of the representation space, group actions, moment maps
//!   and a sampler for moment-map level sets;
//! - [`path`]: path and b-path evaluation, invariant generators, intertwiners
//!   and orbit comparison;
//! - [`covariant`]: determinant covariants attached to chi-data, the special
//!   contingency-matrix basis and semistability certificates;
//! - [`reflection`]: point-level reflection functors, Coxeter relation checks
//!   and reduction to the dominant case;
//! - [`strata`]: the V⁺ stratification, stratum dimensions and finite-field
//!   point counts;
//! - [`cli`]: the command-line front end used by the `quiverlab` binary.

pub mod cli;
pub mod covariant;
pub mod error;
pub mod field;
pub mod linalg;
pub mod path;
pub mod quiver;
pub mod reflection;
pub mod rep;
pub mod strata;

pub use error::{Error, Result};
pub use field::{Field, Fp, Q, QI};
pub use linalg::Mat;
