//! Error type shared across the crate.

use crate::qalgebra::QElem;

/// Everything that can go wrong in the library proper.
///
/// Parse errors live in the CLI crate; this enum only covers algebraic
/// failures, so each variant maps onto one stable machine-readable code there.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Division by the zero scalar.
    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    /// A q-power-exponent query was made on zero, which is not a power of q.
    #[error("zero is not a power of q")]
    ZeroQPower,

    /// An automorphism was given a zero scaling factor.
    #[error("automorphism factors must be nonzero")]
    ZeroScalar,

    /// Root-of-unity modes need a multiplicative order of at least 2.
    #[error("cyclotomic order must be at least 2, got {0}")]
    InvalidOrder(u32),

    /// Flip automorphisms only exist when q = -1 (cyclotomic order 2).
    #[error("flip automorphisms require q = -1, but the mode is {0}")]
    WrongMode(String),

    /// An operation expected the other kind of twisting automorphism.
    #[error("operation expects a {expected} twisting automorphism")]
    WrongSigmaKind {
        /// `"toric"` or `"flip"`.
        expected: &'static str,
    },

    /// The proposed images fail the sigma-compatibility criterion.
    ///
    /// `residual` is the exact defect
    /// `dx*sigma(y) + x*dy - q*(dy*sigma(x) + y*dx)`; it is zero precisely for
    /// compatible image pairs.
    #[error("images are not sigma-compatible; residual = {residual}")]
    IncompatibleImages {
        /// Defect of the compatibility identity, in normal form.
        residual: QElem,
    },

    /// Two values from different field modes met in one operation.
    #[error("mixed field modes: {0} vs {1}")]
    ModeMismatch(String, String),
}
