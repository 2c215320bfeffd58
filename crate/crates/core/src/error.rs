use thiserror::Error;

/// Errors for operations that can fail on user-supplied data.
///
/// Contract violations (calling an operation outside its documented
/// preconditions, e.g. splitting a standard tableau) panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("entry {entry} outside the alphabet 1..={n}")]
    EntryOutOfRange { entry: u32, n: u32 },

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("rows must have weakly decreasing lengths")]
    RowLengths,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("step budget of {budget} exceeded while straightening; stuck at {state}")]
    StepBudget { budget: u64, state: String },

    #[error("rank {n} exceeds the verification bound {bound}; set allow_large to override")]
    RankBound { n: u8, bound: u8 },
}

pub type Result<T> = std::result::Result<T, Error>;
