use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands use different variable sets")]
    VariableSetMismatch,
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u64, cap: u64 },
    #[error("{0}: the zero ideal is not allowed here")]
    ZeroIdeal(&'static str),
    #[error("power exponent must be at least 1")]
    ZeroPower,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}` (expected [A-Za-z][A-Za-z0-9_]*)")]
    InvalidVariableName(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has no edges")]
    NoEdges,
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("weight of `{0}` must be a positive integer")]
    NonPositiveWeight(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}` -> `{1}`")]
    DuplicateEdge(String, String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("invalid vertex name `{0}` (expected [A-Za-z][A-Za-z0-9_]*)")]
    InvalidName(String),
    #[error("expected a graph of family {expected}, found {actual}")]
    FamilyMismatch { expected: &'static str, actual: String },
    #[error("isolated vertex `{0}` is not allowed for closed-form evaluation")]
    IsolatedVertex(String),
    #[error("malformed graph file: {0}")]
    Format(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("weight of `{vertex}` is {weight}; the ordered basis needs every weight >= 2")]
    WeightTooSmall { vertex: String, weight: u32 },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("monomial is not a minimal generator of the power {t}")]
    NotAGenerator { t: u32 },
    #[error("edge divisibility needs k < t, got k = {k}, t = {t}")]
    PowerOrder { k: u32, t: u32 },
    #[error("power must be at least 1")]
    ZeroPower,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("lcm lattice exceeds the cap of {cap} elements; raise `lattice_cap` to continue")]
    LatticeCap { cap: usize },
    #[error("slice at multidegree {multidegree} has {faces} faces, above the cap of {cap}; raise `face_cap` to continue")]
    FaceCap { multidegree: String, faces: usize, cap: usize },
    #[error("{0}")]
    Unsupported(&'static str),
    #[error("Euler characteristic check failed at {0}")]
    EulerMismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("power t = {0} is outside 1..=64")]
    PowerOutOfRange(u32),
    #[error("hypotheses violated: {}", .0.join("; "))]
    Inadmissible(Vec<String>),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("empty range for {0}")]
    EmptyRange(&'static str),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("could not start the worker pool: {0}")]
    Workers(String),
}
