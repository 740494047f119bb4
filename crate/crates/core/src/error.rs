use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad class of a failure, used to pick the CLI exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or inconsistent input data.
    Input,
    /// A mathematical contract was violated (ill-defined map, non-commuting diagram, ...).
    Contract,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("homomorphism is not well defined: image of source relation column {column} is not in the target relation lattice")]
    IllDefinedHom { column: usize },

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("poset contains a cycle through '{0}'")]
    Cycle(String),

    #[error("duplicate identifier '{0}'")]
    Duplicate(String),

    #[error("unknown element '{0}'")]
    UnknownElement(String),

    #[error("pair '{upper}>{lower}' is not a covering relation")]
    NotCovering { upper: String, lower: String },

    #[error("open sets belong to different ambient posets")]
    AmbientMismatch,

    #[error("subset is not open (not up-closed): {0}")]
    NotOpen(String),

    #[error("open lattice too large: more than {cap} open sets")]
    OpenLatticeTooLarge { cap: usize },

    #[error("non-commuting diagram between '{upper}' and '{lower}': chain {first:?} differs from chain {second:?}")]
    NonCommutingDiamond {
        upper: String,
        lower: String,
        first: Vec<String>,
        second: Vec<String>,
    },

    #[error("missing structure map for covering pair '{upper}>{lower}'")]
    MissingMap { upper: String, lower: String },

    #[error("missing group for element '{0}'")]
    MissingGroup(String),

    #[error("missing precosheaf table entry: {0}")]
    MissingTableEntry(String),

    #[error("naturality square fails at covering pair '{upper}>{lower}'")]
    NotNatural { upper: String, lower: String },

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::IllDefinedHom { .. }
            | Error::Contract(_)
            | Error::NonCommutingDiamond { .. }
            | Error::NotNatural { .. }
            | Error::Internal(_) => ErrorClass::Contract,
            _ => ErrorClass::Input,
        }
    }

    /// Short machine-readable tag for structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::IllDefinedHom { .. } => "ill_defined_hom",
            Error::EndpointMismatch(_) => "endpoint_mismatch",
            Error::Contract(_) => "contract_violation",
            Error::Cycle(_) => "cycle",
            Error::Duplicate(_) => "duplicate",
            Error::UnknownElement(_) => "unknown_element",
            Error::NotCovering { .. } => "not_covering",
            Error::AmbientMismatch => "ambient_mismatch",
            Error::NotOpen(_) => "not_open",
            Error::OpenLatticeTooLarge { .. } => "open_lattice_too_large",
            Error::NonCommutingDiamond { .. } => "non_commuting_diamond",
            Error::MissingMap { .. } => "missing_map",
            Error::MissingGroup(_) => "missing_group",
            Error::MissingTableEntry(_) => "missing_table_entry",
            Error::NotNatural { .. } => "not_natural",
            Error::Internal(_) => "internal",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }
}
