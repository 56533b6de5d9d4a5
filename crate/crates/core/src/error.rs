use core::fmt;

/// Everything that can go wrong in this crate.
///
/// Functions never return NaN payloads; a computation that would produce one
/// reports why instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// Division or inversion at a point of the null cone |t| = |x|.
    ZeroDivisor,
    /// A finite input produced a component outside f64 range.
    Overflow,
    /// Input outside the domain of definition. The message names the domain.
    Domain(&'static str),
    /// The function has a pole at (or the defining denominator vanishes at)
    /// the requested point.
    Pole(&'static str),
    /// Invalid branch selection for a multi-valued function.
    Branch(&'static str),
    /// The operation is undefined on the null cone.
    Cone(&'static str),
    /// A transformation matrix is singular (determinant not invertible).
    Degenerate(&'static str),
    /// Hyperbolic angle requested between vectors of different causal class.
    MixedSector,
    /// The map's derivative is null here, so angles are not preserved.
    BrokenConformality,
    /// A closed-contour operation received a contour with a gap.
    OpenContour(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDivisor => write!(f, "zero divisor: point lies on the null cone"),
            Error::Overflow => write!(f, "overflow: result exceeds f64 range"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::Pole(what) => write!(f, "pole: {what}"),
            Error::Branch(what) => write!(f, "branch error: {what}"),
            Error::Cone(what) => write!(f, "null cone: {what}"),
            Error::Degenerate(what) => write!(f, "degenerate: {what}"),
            Error::MixedSector => write!(
                f,
                "mixed sectors: hyperbolic angle needs both vectors timelike or both spacelike"
            ),
            Error::BrokenConformality => {
                write!(f, "broken conformality: derivative is a zero divisor here")
            }
            Error::OpenContour(what) => write!(f, "open contour: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
