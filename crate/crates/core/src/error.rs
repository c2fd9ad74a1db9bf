use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("zero form")]
    ZeroForm,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operation undefined in characteristic 2")]
    CharTwo,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("the two quadrics are linearly dependent")]
    DependentForms,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular: {0}")]
    Singular(String),
    #[error("budget exceeded: {needed} evaluations requested, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("field of order {q} exceeds the enumeration bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },
    #[error("line is not contained in X")]
    NotOnX,
    #[error("degenerate normal-bundle matrix: {0}")]
    DegenerateMatrix(String),
    #[error("Hensel lifting obstructed at u^{step}")]
    Obstructed { step: usize },
    #[error("minors do not cut out a curve: {0}")]
    NotACurve(String),
    #[error("singular point on Delta: {0}")]
    SingularDelta(String),
    #[error("Weil bound violated: {0}")]
    WeilBoundViolated(String),
    #[error("parameters are not pairwise distinct")]
    ParamsNotDistinct,
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
    #[error("no rational point found on the slice X0 = X1 = 0")]
    NoSlicePoint,
}

impl Error {
    /// Budget-type failures map to their own CLI exit code.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::FieldTooLarge { .. })
    }
}
