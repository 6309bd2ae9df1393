//! Split octonions over pluggable fields, their G2 orbits, and a complete
//! solver for polynomial equations `f(x) = c` with scalar coefficients.

#![allow(clippy::wrong_self_convention, clippy::type_complexity)]

pub mod dynamic;
pub mod error;
pub mod field;
pub mod g2;
pub mod octonion;
pub mod oracle;
pub mod polyeq;

pub use error::{Error, Result};
pub use dynamic::AnyField;
pub use field::{ComplexField, Field, FieldSpec, FiniteField, RationalField};
pub use g2::{Automorphism, Eigenpair, Generator, OrbitLabel};
pub use octonion::Octonion;
pub use polyeq::{Cardinality, Completeness, Poly, SolutionSet};
