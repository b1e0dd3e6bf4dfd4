//! Chain complexes of free modules: resolutions, Koszul and tensor complexes, rank loci,
//! exactness and Cohen–Macaulay diagnostics, periodicity.

mod complex;
mod loci;
mod periodicity;
mod resolution;

use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::polyring::PolyError;

pub use complex::{
    canonical_matrix, equal_up_to_units, extend_ring, koszul_complex, poly_cmp, tensor_complexes, ChainComplex,
    Minimality,
};
pub use loci::{
    buchsbaum_eisenbud_check, cohen_macaulay_check, expected_ranks, generic_rank, minor_ideal, minors,
    proper_intersection_check, rank_loci, BeLevel, BeReport, CmReport, ProperIntersection, RankSource,
    ResolutionDiagnostics,
};
pub use periodicity::{detect_periodicity, PeriodicityReport, MIN_PERIODICITY_LEVELS};
pub use resolution::{free_resolution, minimalize, resolved_ideal, DEFAULT_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomalgError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("resolution cap must be at least 1")]
    InvalidCap,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("phi_{level} * phi_{} is not zero", level + 1)]
    NotAComplex { level: usize },
    #[error("complexes live over different quotient rings")]
    ContextMismatch,
    #[error("{0} is not a subring of {1}")]
    NotASubring(String, String),
    #[error("{0} needs a complete (untruncated) complex")]
    Truncated(&'static str),
    #[error("refused over a quotient ring: {0}")]
    QuotientRefused(String),
    #[error("only {levels} levels computed, at least {needed} needed")]
    TooShort { levels: usize, needed: usize },
    #[error("the unit ideal has no proper resolution")]
    UnitIdeal,
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<PolyError> for HomalgError {
    fn from(e: PolyError) -> Self {
        HomalgError::Groebner(GroebnerError::Poly(e))
    }
}
