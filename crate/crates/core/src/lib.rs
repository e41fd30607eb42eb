//! Exact computer algebra for Clifford algebras Cl(s,t) and the geometry of
//! their linear groups on the flat model V = R^{km}.
//!
//! The crate builds k x k matrix representations of Cl(s,t) over the
//! rationals (left regular, right regular, and tensor-periodicity towers),
//! verifies their defining relations exactly, computes first prolongations of
//! gl(m,O) and gl(m,O) + gl(1,O) as exact nullspaces, derives the sign
//! coefficients that make the S^A operators structure-compatible, and checks
//! that the induced one-parameter class of flat connections shares torsion
//! and planar curves.

pub mod blade;
pub mod error;
pub mod matrix;
pub mod planar;
pub mod prolong;
pub mod rep;
pub mod report;

pub use blade::{blade_mul, mv_mul, Blade, BladeBasis, MultiVector, Signature, SignedBlade};
pub use error::{Error, Result};
pub use matrix::{Rational, RationalMatrix};
pub use planar::{CurveState, FlatConnection, Trajectory};
pub use prolong::{Flavor, GroupSpec, OneForm, SignVector, SymBilinearMap};
pub use rep::{RepKind, RepSet};
