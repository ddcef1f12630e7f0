use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A channel or scheme parameter violates its invariant.
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// A scalar function was evaluated outside its domain.
    Domain { what: &'static str, value: f64 },
    /// A power point lies outside the box `[0, pmax_1] x [0, pmax_2]`.
    PowerOutOfBox { p_1: f64, p_2: f64 },
    /// An exhaustive enumeration would exceed the state budget.
    BudgetExceeded { states: u128, budget: u64 },
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    /// A codebook does not match the configured block length or size.
    Codebook(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter {
                field,
                value,
                reason,
            } => write!(f, "invalid parameter `{field}` = {value}: {reason}"),
            Error::Domain { what, value } => write!(f, "{what} is undefined at {value}"),
            Error::PowerOutOfBox { p_1, p_2 } => {
                write!(f, "power point ({p_1}, {p_2}) is outside the feasible box")
            }
            Error::BudgetExceeded { states, budget } => {
                write!(f, "enumeration needs {states} states, budget is {budget}")
            }
            Error::IndexOutOfRange { what, index, len } => {
                write!(f, "{what} index {index} out of range (len {len})")
            }
            Error::Codebook(msg) => write!(f, "bad codebook: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
