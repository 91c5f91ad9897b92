//! Exact-arithmetic toolkit for unimodular-lattice invariants, isometry
//! classification, genus calculus, and the finite computations behind
//! Nielsen-realization obstruction reports.

pub mod arrangement;
pub mod genus;
pub mod graded;
pub mod isometry;
pub mod jsonio;
pub mod lattice;
pub mod linalg;
pub mod obstruction;
pub mod series;
pub mod tensor;
