use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A numeric argument is outside the operation's domain.
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    /// `∫ |f(t)|² dt/t` diverges because `f(0) ≠ 0`.
    DivergentIntegral,
    /// The eigen-series would need more than the allowed number of terms.
    SeriesOverflow { required: u64 },
    UnsupportedFilter(&'static str),
    /// Target cell diameter is below the desk-scale floor.
    CellCountOverflow { target: f64 },
    BandLimitViolation { field: usize, frame: usize },
    ZeroField,
    /// A scale window extends past the scales carried by a frame.
    ScaleOutOfRange { lo: i32, hi: i32 },
    DegreeOverflow { degree: usize },
    UnknownFilter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, reason } => write!(f, "invalid `{name}`: {reason}"),
            Error::DivergentIntegral => {
                write!(f, "Calderón integral diverges: filter does not vanish at 0")
            }
            Error::SeriesOverflow { required } => write!(
                f,
                "eigen-series needs more than {required} terms; t is too small for series mode"
            ),
            Error::UnsupportedFilter(what) => write!(f, "unsupported filter: {what}"),
            Error::CellCountOverflow { target } => {
                write!(f, "cell diameter {target:e} is below the 1e-3 floor")
            }
            Error::BandLimitViolation { field, frame } => write!(
                f,
                "field band limit {field} exceeds frame band limit {frame}"
            ),
            Error::ZeroField => write!(f, "field is identically zero"),
            Error::ScaleOutOfRange { lo, hi } => {
                write!(f, "scale window [{lo}, {hi}] is not carried by the frame")
            }
            Error::DegreeOverflow { degree } => {
                write!(f, "cubature degree {degree} exceeds the supported maximum")
            }
            Error::UnknownFilter(name) => write!(f, "unknown filter `{name}`"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn invalid(name: &'static str, reason: &'static str) -> Error {
    Error::InvalidParameter { name, reason }
}
