use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("crossing {0} does not occur exactly once as over and once as under")]
    UnpairedCrossing(u32),
    #[error("crossing {0} carries different signs at its two passages")]
    SignMismatch(u32),
    #[error("move site not found: {0}")]
    SiteNotFound(String),
    #[error("move pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("malformed biquandle table: {0}")]
    MalformedTable(String),
    #[error("biquandle axiom {axiom} fails at {witness:?}")]
    AxiomViolation { axiom: &'static str, witness: Vec<usize> },
    #[error("coefficient domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid variant {0}; expected 1 or 2")]
    InvalidVariant(u8),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
