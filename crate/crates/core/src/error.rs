use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at node {0} in a simple graph")]
    SelfLoop(usize),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("node {node} has degree {degree}, below the required {delta}")]
    DegreeBelowDelta { node: usize, degree: usize, delta: usize },

    #[error("synchronous run exceeded the round limit of {0}")]
    RoundLimitExceeded(u64),
    #[error("node {center} read node {target} outside its radius-{radius} view")]
    RadiusViolation { center: usize, target: usize, radius: usize },
    #[error("power graph radius {0} is not supported (use 2 or 4)")]
    UnsupportedRadius(usize),
    #[error("schedule coloring is invalid: nodes {0} and {1} share a color within distance {2}")]
    InvalidScheduleColoring(usize, usize, usize),

    #[error("shrinkage bound violated after iteration {iteration}: {detail}")]
    ShrinkageViolation { iteration: usize, detail: String },
    #[error("minimum degree {delta} is below the required {required:.3}")]
    PreconditionDelta { delta: usize, required: f64 },
    #[error("minimum degree {delta} is below 6 times the rank {rank}")]
    PreconditionRatio { delta: usize, rank: usize },
    #[error("instance has {0} nodes; at least 4 are required")]
    PreconditionSize(usize),
    #[error("U-node {node} has degree {degree}, below the required {required:.3}")]
    PreconditionDegree { node: usize, degree: usize, required: f64 },
    #[error("residual component with {size} nodes exceeds the budget {budget:.1}")]
    ComponentTooLarge { size: usize, budget: f64 },
    #[error("girth {0} is below 10")]
    GirthTooSmall(usize),
    #[error("residual component has min degree {delta} < 6 * rank {rank}")]
    GapViolation { delta: usize, rank: usize },
    #[error("parameter violation: {0}")]
    ParamViolation(String),
    #[error("not a weak multicolor splitting: U-node {node} sees {seen} colors, needs {needed}")]
    NotAWeakMulticolorSplitting { node: usize, seen: usize, needed: usize },
    #[error("gave up after {0} attempts")]
    RetryExhausted(u32),
    #[error("input coloring is not a weak splitting ({0} unsatisfied U-nodes)")]
    NotAWeakSplitting(usize),
    #[error("graph has minimum degree {0}, at least 5 is required")]
    MinDegreeTooSmall(usize),
    #[error("initial pessimistic estimator {0} is not below 1")]
    EstimatorOverflow(f64),
    #[error("iteration budget of {0} exceeded")]
    IterationBudgetExceeded(usize),
    #[error("coloring has {got} entries, the instance has {expected} variable nodes")]
    IncompleteColoring { got: usize, expected: usize },
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
