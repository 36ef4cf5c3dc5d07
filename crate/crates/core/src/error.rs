use thiserror::Error;

use crate::lie::AlgebraId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("elements belong to different algebras ({0} vs {1})")]
    ParentMismatch(AlgebraId, AlgebraId),
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix does not lie in {0}")]
    NotInAlgebra(AlgebraId),
    #[error("operation not supported for {0}")]
    UnsupportedFamily(AlgebraId),
    #[error("target element is zero")]
    ZeroTarget,
    #[error("subspace is not closed under the bracket")]
    NotBracketClosed,
    #[error("group element is singular")]
    SingularGroupElement,
    #[error("group element does not preserve the symplectic form")]
    NotSymplectic,
    #[error("tuple components are not in the standard Borel subalgebra")]
    NotUpperTriangular,
    #[error("no spanning pair certified after {attempts} attempts (inconclusive)")]
    CertificateNotFound { attempts: usize },
    #[error(
        "no bracket representation without common centralizer found after {attempts} attempts \
         ({consistent} consistent draws); inconclusive over Q"
    )]
    SeedNotFound { attempts: usize, consistent: usize },
    #[error("campaign accepted no samples in {draws} draws (all inconsistent)")]
    NoSamplesAccepted { draws: usize },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    /// True for the outcomes of randomized searches that came back empty.
    /// Such results are not failures of the computation, and over Q they do
    /// not disprove existence over the algebraic closure.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::CertificateNotFound { .. }
                | Error::SeedNotFound { .. }
                | Error::NoSamplesAccepted { .. }
        )
    }

    pub(crate) fn parse(path: impl Into<String>, message: impl ToString) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
