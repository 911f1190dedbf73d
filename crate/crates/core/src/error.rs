use thiserror::Error;

/// Errors raised by group arithmetic, enumeration and spec parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("exponents must be positive, got {0}")]
    ZeroExponent(u32),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid endomorphism matrix: {0}")]
    InvalidMatrix(String),
    #[error("cannot parse group spec `{0}`")]
    BadSpec(String),
    #[error("enumeration cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },
}

/// Errors raised while reading formula text or manipulating syntax.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("predicate `{name}` used with arities {first} and {second}")]
    ArityConflict { name: String, first: usize, second: usize },
    #[error("substituting `{term}` for `{var}` is not admissible")]
    Inadmissible { term: String, var: String },
    #[error("formula is not in the {expected} language: {reason}")]
    WrongLanguage { expected: String, reason: String },
    #[error("unknown formula kind `{0}`")]
    UnknownKind(String),
    #[error("{kind} expects {expected} parameters, got {got}")]
    ParamCount { kind: String, expected: usize, got: usize },
    #[error("{kind}: parameter {index} should be {expected}")]
    ParamType { kind: String, index: usize, expected: String },
}

/// Errors raised by the evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("predicate quantifier over `{name}` needs {size} tuples, full enumeration cap is {cap}")]
    SecondOrderCap { name: String, size: u128, cap: u128 },
    #[error("guard `{guard}` is not available for {context}")]
    UnknownGuard { guard: String, context: String },
    #[error("the {0} signature does not provide this atom")]
    Signature(String),
    #[error("evaluation budget of {0} steps exhausted")]
    Budget(u64),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// Errors raised by the depth calculus and the beautiful-combination classifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DepthError {
    #[error("index {0} is outside the domain")]
    OutsideDomain(usize),
    #[error("map is not total on 1..={0}")]
    NotTotal(usize),
    #[error("cannot parse function graph `{0}`")]
    BadGraph(String),
    #[error("the two maps do not commute")]
    NotCommuting,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("a linear combination needs at least one variable")]
    NoVariables,
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl EvalError {
    /// True for errors caused by a resource limit rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            EvalError::SecondOrderCap { .. } | EvalError::Budget(_) | EvalError::Group(GroupError::CapExceeded { .. })
        )
    }
}

/// Errors raised by the verification suites.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("golden file: {0}")]
    Golden(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Depth(#[from] DepthError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

impl VerifyError {
    pub fn is_cap(&self) -> bool {
        match self {
            VerifyError::Eval(e) => e.is_cap(),
            VerifyError::Depth(DepthError::Budget(_)) => true,
            VerifyError::Group(GroupError::CapExceeded { .. }) => true,
            VerifyError::Depth(DepthError::Group(GroupError::CapExceeded { .. })) => true,
            _ => false,
        }
    }
}

/// Errors raised by the command-line front end.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Syntax { path: String, source: SyntaxError },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Depth(#[from] DepthError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 3 for resource caps, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        let cap = match self {
            CliError::Group(GroupError::CapExceeded { .. }) => true,
            CliError::Eval(e) => e.is_cap(),
            CliError::Depth(DepthError::Budget(_)) => true,
            CliError::Verify(e) => e.is_cap(),
            _ => false,
        };
        if cap {
            3
        } else {
            2
        }
    }
}
