//! Evaluation representations of the affine algebra, their tensor products,
//! highest-weight series and polynomial certificates, all as finite families of
//! exact matrices.

mod certificate;
mod poly;
mod relations;
mod rep;
mod series;

pub use certificate::{check_t1, check_t2, check_t3, even_pair, odd_pair, q_string, CertificateError, EvenPairCertificate, OddPairCertificate, PolyCertificate};
pub use poly::{monomial_sqrt, reduce_ratio, UPoly};
pub use relations::{relation_residual, verify_affine_relations, AffineFailure, AffineFamily, AffineRelationReport};
pub use rep::{direct_sum, evaluation_from_module, evaluation_rep, kron_vector, tensor, twist_dilation, twist_series, AffineRep, Provenance, Series};
pub use series::{highest_weight_series, inverse_series, HWSeries, SeriesOutcome};

use crate::highest_weight::HwError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AffineError {
    #[error("evaluation parameter must be nonzero")]
    ZeroParameter,
    #[error("weight {0} is not of finite type")]
    Infinite(String),
    #[error("module construction did not stabilize")]
    DidNotStabilize,
    #[error("parity sequences differ: {0} vs {1}")]
    SequenceMismatch(String, String),
    #[error("twist violates f^(0) g^(0) = 1")]
    TwistUnit,
    #[error("malformed representation JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Weight(#[from] HwError),
}
