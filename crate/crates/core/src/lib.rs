//! Exact-arithmetic computer algebra for quantum-cohomology structure
//! computations on crepant resolutions and their orbifolds.
//!
//! The library builds, over the exact field Q(i)(t1, t2):
//!
//! * truncated multivariate formal power series with certified Pade
//!   resummation and root-of-unity evaluation ([`series`]),
//! * the symmetric-group class algebra with its `t1 t2` grading
//!   ([`partitions`]),
//! * the orbifold pairing and small quantum multiplication matrix of
//!   `Sym^n(C^2)` together with its verification report ([`symhilb`]),
//! * the fully worked `T*P^1` / `[C^2/±1]` comparison ([`a1`]),
//! * finite-group character tables and the associated change of
//!   variables for (binary) polyhedral groups ([`characters`]).

pub mod a1;
pub mod characters;
pub mod coeff;
pub mod error;
pub mod partitions;
pub mod series;
pub mod symhilb;

pub use coeff::{GaussianRational, Poly2, RatFunc};
pub use error::{Error, Result};
