use std::fmt;

/// Which resource cap a computation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitKind {
    Degree,
    Steps,
    Pairs,
    WallClock,
}

impl LimitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LimitKind::Degree => "max_degree",
            LimitKind::Steps => "max_steps",
            LimitKind::Pairs => "max_pairs",
            LimitKind::WallClock => "wall_clock",
        }
    }
}

impl std::str::FromStr for LimitKind {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "max_degree" => Ok(LimitKind::Degree),
            "max_steps" => Ok(LimitKind::Steps),
            "max_pairs" => Ok(LimitKind::Pairs),
            "wall_clock" => Ok(LimitKind::WallClock),
            _ => Err(()),
        }
    }
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("term order mismatch: basis uses {basis}, input uses {input}")]
    OrderMismatch { basis: String, input: String },
    #[error("exponent overflow (exponents are bounded by 2^31)")]
    ExponentOverflow,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable \"{0}\"")]
    UnknownVariable(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(LimitKind),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("characteristic guard: {0}")]
    CharacteristicGuard(String),
    #[error("degenerate matrix: {0}")]
    DegenerateMatrix(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
