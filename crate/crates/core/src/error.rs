use cubechow_poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphismError {
    #[error("coordinate ring mismatch: expected {expected} variables, found {found}")]
    RingMismatch { expected: usize, found: usize },
    #[error("scaling by 0 or 1 is not an isomorphism")]
    InvalidScalar,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("formal parameter count mismatch")]
    ParameterMismatch,
    #[error("composite has a vanishing denominator")]
    UndefinedComposition,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("dimension mismatch: component has dimension {found:?}, expected {expected}")]
    DimensionMismatch { expected: i64, found: Option<usize> },
    #[error("improper face y{index}={eps}")]
    ImproperFace { index: usize, eps: u8 },
    #[error("unsupported multiplicity")]
    UnsupportedMultiplicity,
    #[error("unsupported morphism class")]
    UnsupportedMorphism,
    #[error("cycles live on different spaces")]
    SpaceMismatch,
    #[error("index {index} out of range for cube dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("malformed cycle: {0}")]
    Malformed(String),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubdivisionError {
    #[error("non-general parameter at stage {stage}: {detail}")]
    NonGeneral { stage: usize, detail: String },
    #[error("not normalized: face {face} is nonzero")]
    NotNormalized { face: String },
    #[error("budget exhausted after {attempts} attempts")]
    BudgetExhausted { attempts: usize },
    #[error("parameter value {0} lies on a face")]
    ParameterOnFace(String),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlowupError {
    #[error("not a face: {0:?}")]
    NotAFace(Vec<usize>),
    #[error("codimension < 2")]
    CodimensionTooSmall,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("no anchor vertex")]
    NoAnchor,
    #[error("inconsistent signs at vertex {0}")]
    InconsistentSigns(usize),
    #[error("edge {0:?} does not lie on exactly two vertices")]
    BadEdge(Vec<usize>),
    #[error("chart of vertex {0} fails to invert")]
    ChartInversion(usize),
    #[error("parameter on divisor image at vertex {0}")]
    ParameterOnDivisor(usize),
    #[error("component {component} collapses at vertex {vertex}")]
    ComponentCollapses { vertex: usize, component: usize },
    #[error("non-general parameter: {0}")]
    NonGeneral(String),
    #[error("cycle is not normalized: face {face} is nonzero")]
    NotNormalized { face: String },
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SheafError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("inadmissible glue")]
    InadmissibleGlue,
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("fixture `{name}`: {detail}")]
    Fixture { name: String, detail: String },
    #[error("unknown pipeline step `{0}`")]
    UnknownStep(String),
    #[error("step {step} failed: {detail}")]
    StepFailed { step: usize, detail: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
}
