//! Error types shared across the crate.

use crate::nodes::NodeIndex;
use crate::spectral::SpectralIndex;

/// Errors produced by node generation, transforms and evaluation.
#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    /// A frequency component was zero.
    #[error("frequency components must be positive, got ({m1}, {m2})")]
    InvalidFrequency { m1: usize, m2: usize },

    /// An operation requiring gcd(m1, m2) = 1 was called with a non-coprime pair.
    #[error("frequencies ({m1}, {m2}) are not coprime (gcd = {g})")]
    NotCoprime { m1: usize, m2: usize, g: usize },

    /// A curve sample number outside 0..4*m1*m2/g.
    #[error("sample number {l} out of range (must be < {count})")]
    SampleOutOfRange { l: usize, count: usize },

    /// A node index outside the nodal index set.
    #[error("index ({0}, {1}) is not in the nodal index set", index.i1, index.i2)]
    IndexOutOfRange { index: NodeIndex },

    /// A spectral index outside the admissible range or of odd parity.
    #[error("spectral index ({0}, {1}) is not admissible", index.g1, index.g2)]
    SpectralIndexOutOfRange { index: SpectralIndex },

    /// A set passed to the flipped-set constructor was not a subset of the
    /// rectangular spectral index set.
    #[error("flip set contains ({0}, {1}) which is not in the rectangular set", index.g1, index.g2)]
    NotInRectangularSet { index: SpectralIndex },

    /// Frequencies of two operands disagree.
    #[error("frequency mismatch: ({0}, {1}) vs ({2}, {3})", .lhs.0, .lhs.1, .rhs.0, .rhs.1)]
    FrequencyMismatch { lhs: (usize, usize), rhs: (usize, usize) },

    /// A value vector whose length does not match the index set.
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// Real-part transforms require real input data.
    #[error("input data has non-negligible imaginary part ({max_imag})")]
    ComplexInput { max_imag: f64 },

    /// An evaluation point outside the closed unit disk.
    #[error("radius {r} outside [0, 1]")]
    RadiusOutOfRange { r: f64 },

    /// A parameter outside its admissible interval.
    #[error("{name} = {value} outside {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
