use alloc::string::String;
use core::fmt;

use crate::arena::Violation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The arena breaks one of its structural invariants.
    InvalidArena(alloc::vec::Vec<Violation>),
    UnknownVertex(String),
    /// A lasso uses a step that is not an edge of the arena.
    InvalidLasso(String),
    /// The condition does not fit the arena or the requested operation.
    ConditionMismatch(String),
    /// Removing a region would leave a vertex without successors.
    TerminalVertex(String),
    /// A strategy moves along a non-edge or is undefined where it must move.
    InvalidStrategy(String),
    /// An exploration or enumeration exceeded its configured budget.
    BudgetExceeded { what: &'static str, limit: usize },
    /// A checked internal property failed. Signals a solver bug.
    Inconsistent(String),
    /// The strategy handed to a transformation is not winning.
    NotWinning(String),
    InvalidSpec(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArena(violations) => {
                write!(f, "invalid arena:")?;
                for v in violations {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            Error::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            Error::InvalidLasso(msg) => write!(f, "invalid lasso: {msg}"),
            Error::ConditionMismatch(msg) => write!(f, "condition mismatch: {msg}"),
            Error::TerminalVertex(v) => write!(f, "vertex `{v}` would have no successor"),
            Error::InvalidStrategy(msg) => write!(f, "invalid strategy: {msg}"),
            Error::BudgetExceeded { what, limit } => {
                write!(f, "{what} exceeds the configured budget of {limit}")
            }
            Error::Inconsistent(msg) => write!(f, "internal inconsistency: {msg}"),
            Error::NotWinning(msg) => write!(f, "strategy is not winning: {msg}"),
            Error::InvalidSpec(msg) => write!(f, "invalid specification: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
