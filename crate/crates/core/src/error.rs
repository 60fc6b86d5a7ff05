use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor or operation received parameters outside its domain.
    InvalidParameter(String),
    /// `log Γ` (or a Gamma ratio) was requested at a pole.
    Pole(f64),
    /// A series did not meet its tolerance within the term cap.
    NonConvergence { what: &'static str, terms: usize },
    /// The ODE integrator could not reach the requested endpoint.
    StepSizeUnderflow { at: f64 },
    /// Two objects that must share a grid (or a space) do not.
    GridMismatch(&'static str),
    /// A multiplier symbol evaluated to NaN or infinity.
    NonFiniteSymbol { label: String, node: f64 },
    /// A verifier was given nothing to verify.
    EmptyInput(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Pole(z) => write!(f, "pole of the Gamma function at {z}"),
            Error::NonConvergence { what, terms } => {
                write!(f, "{what} did not converge within {terms} terms")
            }
            Error::StepSizeUnderflow { at } => write!(f, "ODE step size underflow at r = {at}"),
            Error::GridMismatch(what) => write!(f, "grid mismatch: {what}"),
            Error::NonFiniteSymbol { label, node } => {
                write!(f, "multiplier `{label}` is not finite at node {node}")
            }
            Error::EmptyInput(what) => write!(f, "empty input: {what}"),
        }
    }
}

impl core::error::Error for Error {}
