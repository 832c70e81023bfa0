use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error("joint tree is cyclic or has no unique root (near link '{0}')")]
    CyclicTree(String),

    #[error("non-unit axis on joint '{0}'")]
    NonUnitAxis(String),

    #[error("joint '{joint}' has invalid limits [{lo}, {hi}]")]
    BadLimits { joint: String, lo: f64, hi: f64 },

    #[error("finger '{0}' joints not a chain")]
    FingerNotChain(String),

    #[error("unknown fingertip link '{0}'")]
    UnknownTipLink(String),

    #[error("unknown finger '{0}'")]
    UnknownFinger(String),

    #[error("finger '{0}' has no stored fingertip samples")]
    NoFingertipSamples(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-positive dimension parameter: {0}")]
    NonPositiveDimension(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("cloud-only shape without normals cannot provide a signed distance")]
    MissingNormals,

    #[error("coincident contact centroids; an explicit direction is required")]
    CoincidentCentroids,

    #[error("dataset contains a single class; need both labels")]
    SingleClassDataset,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("empty batch")]
    EmptyBatch,

    #[error("unresolvable object reference '{0}'")]
    UnresolvableRef(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
