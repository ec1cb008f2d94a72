use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-contract input (bad dimensions, non-dominant
    /// weight, inconsistent evaluation point, ...).
    InvalidInput(String),
    /// A root datum failed validation; `field` names the offending field.
    InvalidDatum { field: String, reason: String },
    /// Preset family/rank combination that is not provided.
    UnsupportedPreset(String),
    /// The subgroup generated by a facet exceeded the enumeration cap.
    InfiniteFacet { cap: usize },
    /// Operands belong to different root data.
    MismatchedDatum,
    /// Input was required to be central in the Hecke algebra.
    NotCentral,
    /// A lattice map does not factor the way the operation needs.
    IncompatibleQuotient(String),
    /// Two independent computations disagreed; indicates a convention bug.
    Inconsistency(String),
    /// A statement that holds as a theorem failed on a computed object.
    TheoremViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::InvalidDatum { field, reason } => {
                write!(f, "invalid root datum: field `{field}`: {reason}")
            }
            Error::UnsupportedPreset(p) => write!(f, "unsupported preset: {p}"),
            Error::InfiniteFacet { cap } => {
                write!(f, "facet subgroup exceeds {cap} elements (not a finite parahoric type)")
            }
            Error::MismatchedDatum => f.write_str("operands belong to different root data"),
            Error::NotCentral => f.write_str("element is not central"),
            Error::IncompatibleQuotient(msg) => write!(f, "incompatible quotient: {msg}"),
            Error::Inconsistency(msg) => write!(f, "internal consistency failure: {msg}"),
            Error::TheoremViolation(msg) => write!(f, "theorem violation: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
