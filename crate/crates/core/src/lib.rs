//! Exact computation of bisector fields of quadrilaterals over the rationals,
//! prime fields of odd characteristic, and an emulated real-closed field.
//!
//! Lines are written `t·X − u·Y + v = 0`. The dual polynomials, standard-form
//! invariants, boundary curves and finite-field census are all computed in
//! exact arithmetic and can be checked against the brute-force midpoint test
//! in [`plane::bisects_direct`].

pub mod boundary;
pub mod census;
pub mod dual;
pub mod error;
pub mod field;
pub mod forms;
pub mod json;
pub mod plane;
pub mod poly;
pub mod standard;

pub use boundary::{BoundaryCurve, ProjectivePoint};
pub use census::{CensusMode, CensusReport};
pub use dual::{BisectorFieldClass, FieldPolynomials};
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use forms::{BinaryForm, P1Point};

pub use plane::{AffineMap, Line, PlanePoint, Quadrilateral};
pub use poly::MPoly;
pub use standard::{Equivalence, StandardFormField};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
