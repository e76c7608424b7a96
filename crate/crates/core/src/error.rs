use core::fmt;

/// Errors raised by the library.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Exact `Z[τ]`/`Q[τ]` arithmetic exceeded the 128-bit integer range.
    Overflow,
    ZeroDenominator,
    /// A window whose lower end is not strictly below its upper end.
    EmptyWindow,
    /// Two consecutive model set points whose gap is neither `τ` nor `1`.
    UnsupportedGap { at: f64 },
    /// A point outside both rectangles of a torus lift.
    OutsideLift { x: f64, y: f64 },
    /// A torus function without a separable rectangle form.
    NonSeparableLift,
    /// A point list that does not cover the requested range.
    InsufficientCoverage { needed: f64 },
    InvalidArgument(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow => f.write_str("exact arithmetic exceeded 128-bit capacity"),
            Error::ZeroDenominator => f.write_str("zero denominator"),
            Error::EmptyWindow => f.write_str("window lower end must be below its upper end"),
            Error::UnsupportedGap { at } => {
                write!(f, "model set gap after {at} is neither τ nor 1")
            }
            Error::OutsideLift { x, y } => {
                write!(f, "point ({x}, {y}) lies outside the torus lift rectangles")
            }
            Error::NonSeparableLift => f.write_str("torus function is not separable"),
            Error::InsufficientCoverage { needed } => {
                write!(f, "point set does not cover {needed}")
            }
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
