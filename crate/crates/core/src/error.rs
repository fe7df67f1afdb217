use thiserror::Error;

use crate::polarity::Side;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("relation is not compatible on the {0} side")]
    Incompatible(Side),

    #[error("{what} size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("empty family where at least one member is required")]
    EmptyFamily,

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("not a complete lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid lattice map: {0}")]
    InvalidLatticeMap(String),

    #[error("not an isomorphism: {0}")]
    NotIso(String),
}

impl Error {
    pub(crate) fn dim(what: &'static str, expected: usize, found: usize) -> Self {
        Error::Dimension {
            what,
            expected,
            found,
        }
    }

    pub(crate) fn check_dim(what: &'static str, expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Self::dim(what, expected, found))
        }
    }

    /// True for errors caused by an enumeration or construction cap.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
