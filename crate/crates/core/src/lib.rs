//! Reflexive Weyl polytopes, their integral surface measures, and exact
//! optimal transport between the boundaries of a polytope and its dual.

pub mod arith;
pub mod bitset;
pub mod config;
pub mod error;
pub mod io;
pub mod linalg;
pub mod measure;
pub mod polytope;
pub mod roots;
pub mod transport;
pub mod weyl;

pub use arith::{Rational, RationalVector};
pub use error::{Error, Result};
pub use polytope::{Face, Facet, Polytope, UnimodularMap};
