//! Exact computations with the RTT presentation of quantum general linear
//! superalgebras attached to arbitrary parity sequences.

pub mod affine;
pub mod braid;
pub mod graded;
pub mod highest_weight;
pub mod linalg;
pub mod parity;
pub mod rtt;
pub mod scalar;

pub use parity::{ParitySeq, RootData};
pub use scalar::{Field, QField, QScalar, RationalAt};

/// Graded matrix over the exact field of rational functions in `q`.
pub type QMatrix = graded::GradedMatrix<QScalar>;
/// Spectral-parameter matrix over the same field.
pub type QSeriesMatrix = graded::SeriesMatrix<QScalar>;
