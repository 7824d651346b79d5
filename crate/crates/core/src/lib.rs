//! Normalizing constructors for algebraic data types with equations.
//!
//! A definition declares one data sort, its constructors, equational
//! attributes on binary constructors (associativity, commutativity, neutral
//! element, inverse, idempotence, nilpotence) and oriented user rules.
//! [`theory::classify`] sorts each constructor into the free, rule-defined or
//! associative-commutative case, [`builder`] turns that into construction
//! functions whose images are canonical representatives, and [`oracle`]
//! checks a compiled family against independent decision procedures.

pub mod acnf;
pub mod builder;
pub mod emit;
pub mod enumerate;
pub mod error;
pub mod hashcons;
pub mod oracle;
pub mod store;
pub mod syntax;
pub mod term;
pub mod theory;

pub use error::{Error, Result};
