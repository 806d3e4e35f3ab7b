//! Error type shared by every module of the crate.
//!
//! Each variant names the condition it reports; `Display` messages always
//! start with the operation that raised them so CLI users can tell where a
//! failure came from.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Scalar and form arithmetic reject mixed fields and inexact division;
/// geometry rejects degenerate inputs (all-zero tuples, singular matrices);
/// lifting rejects the one genuinely ambiguous case (a constant curve sitting
/// at a blown-up point); the census rejects parameters that would exceed its
/// enumeration budget. Parse errors carry the byte position of the offending
/// token.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Error {
    /// Division or inversion by zero in a field.
    DivisionByZero { op: &'static str },
    /// Two operands belong to different ground fields.
    FieldMismatch { op: &'static str },
    /// Addition/subtraction of nonzero forms of different degrees, or a
    /// morphism built from forms of unequal degree.
    DegreeMismatch { op: &'static str, left: usize, right: usize },
    /// Exact form division has a nonzero remainder.
    NotDivisible,
    /// gcd of the zero form with itself is undefined.
    BothZero,
    /// Evaluation of a form at (0, 0), which is not a point of P^1.
    ZeroPoint,
    /// Monic normalization of the zero form.
    ZeroForm,
    /// A projective point or morphism needs at least one nonzero entry.
    AllZero { op: &'static str },
    /// Incompatible dimensions (point vs map, map vs morphism, ...).
    DimensionMismatch { op: &'static str, expected: usize, found: usize },
    /// A projective-linear map must have nonzero determinant.
    SingularMatrix,
    /// A blow-up configuration listed the same point twice.
    DuplicatePoint { rendered: String },
    /// A multiplicity-type operation was handed a degree-0 morphism.
    ConstantMorphism { op: &'static str },
    /// All coordinate forms vanish at the parameter (cannot happen for
    /// normalized morphisms; kept as a checked error rather than a panic).
    IndeterminateAtPoint,
    /// Reparametrization by a constant map.
    ConstantReparametrization,
    /// parametric multiplicity / geometric degree is not an exact integer
    /// multiple — an internal-consistency failure if it ever fires.
    NonIntegralRatio { multiplicity: usize, deg_g: usize },
    /// The sampled fiber minimum cannot be certified as deg(g): either it
    /// does not divide the degree or the field has too few points to
    /// guarantee a sample over a smooth image point.
    InconclusiveOverSmallField { detail: String },
    /// Lifting a constant curve that sits at a blown-up point: every point
    /// of the exceptional fiber is a valid lift, so none is chosen.
    AmbiguousLift { point: String },
    /// Projecting a lifted curve whose base is exceptional.
    ExceptionalCurve { point: String },
    /// An exceptional curve must be non-constant.
    ConstantExceptional,
    /// Exceptional curves require n >= 2 (over P^1 the exceptional fiber of
    /// a point is a single point).
    NoExceptionalCurves,
    /// Stratum dimensions are defined for Interior and Exceptional labels
    /// only.
    ConstantLabel,
    /// Raw enumeration space exceeds the configured ceiling.
    BudgetExceeded { raw_tuples: u128, budget: u64 },
    /// Census enumeration requires a prime field order.
    NonPrimeField { q: u64 },
    /// Dimension estimation needs counts at two distinct primes.
    InsufficientData,
    /// Dimension estimation with a zero count.
    ZeroCount { q: u64 },
    /// Malformed textual input; `pos` is a 0-based byte offset.
    Syntax { pos: usize, message: String },
    /// A parsed polynomial mixes terms of different total degrees.
    NotHomogeneous { pos: usize, degrees: (usize, usize) },
    /// A scalar literal that cannot denote a field element (for F_p: a
    /// denominator divisible by p).
    BadScalarLiteral { pos: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            DivisionByZero { op } => write!(f, "{op}: division by zero"),
            FieldMismatch { op } => write!(f, "{op}: operands from different fields"),
            DegreeMismatch { op, left, right } => {
                write!(f, "{op}: degree mismatch ({left} vs {right})")
            }
            NotDivisible => write!(f, "divide: not exactly divisible"),
            BothZero => write!(f, "gcd: both forms are zero"),
            ZeroPoint => write!(f, "evaluate: (0, 0) is not a point of P^1"),
            ZeroForm => write!(f, "monic: the zero form has no monic representative"),
            AllZero { op } => write!(f, "{op}: all entries are zero"),
            DimensionMismatch { op, expected, found } => {
                write!(f, "{op}: dimension mismatch (expected {expected}, found {found})")
            }
            SingularMatrix => write!(f, "linear map: matrix is singular"),
            DuplicatePoint { rendered } => {
                write!(f, "blow-up configuration: duplicate point {rendered}")
            }
            ConstantMorphism { op } => write!(f, "{op}: morphism is constant"),
            IndeterminateAtPoint => {
                write!(f, "evaluate: all coordinate forms vanish at the parameter")
            }
            ConstantReparametrization => {
                write!(f, "reparametrize: reparametrization map is constant")
            }
            NonIntegralRatio { multiplicity, deg_g } => write!(
                f,
                "image multiplicity: parametric multiplicity {multiplicity} is not a multiple of deg_g {deg_g}"
            ),
            InconclusiveOverSmallField { detail } => {
                write!(f, "geometric degree: inconclusive over this field ({detail})")
            }
            AmbiguousLift { point } => write!(
                f,
                "lift: constant curve at blown-up point {point} has no unique lift (every exceptional-fiber point is a valid choice)"
            ),
            ExceptionalCurve { point } => write!(
                f,
                "project: base is an exceptional curve over {point} (projects to a constant)"
            ),
            ConstantExceptional => {
                write!(f, "exceptional lift: curve in the exceptional fiber is constant")
            }
            NoExceptionalCurves => write!(
                f,
                "exceptional lift: exceptional fibers over P^1 are single points and carry no curves"
            ),
            ConstantLabel => write!(f, "stratum dimension: constant label has no stratum"),
            BudgetExceeded { raw_tuples, budget } => write!(
                f,
                "census: raw enumeration space has {raw_tuples} tuples, over the budget of {budget}"
            ),
            NonPrimeField { q } => write!(f, "census: {q} is not prime"),
            InsufficientData => {
                write!(f, "estimate dimension: need counts at two distinct primes")
            }
            ZeroCount { q } => write!(f, "estimate dimension: count at q={q} is zero"),
            Syntax { pos, message } => write!(f, "syntax error at position {pos}: {message}"),
            NotHomogeneous { pos, degrees } => write!(
                f,
                "not homogeneous: term at position {pos} has degree {}, earlier terms have degree {}",
                degrees.1, degrees.0
            ),
            BadScalarLiteral { pos, message } => {
                write!(f, "bad scalar literal at position {pos}: {message}")
            }
        }
    }
}

impl std::error::Error for Error {}
