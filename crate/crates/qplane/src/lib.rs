//! Exact computer algebra for the quantum plane k_q[x, y] (relation x*y = q*y*x).
//!
//! The crate works over two exact coefficient fields, selected by [`FieldMode`]:
//! the rational-function field Q(q) with q an indeterminate, and the cyclotomic
//! field Q(zeta_t) with q = zeta_t a primitive t-th root of unity.  No floating
//! point is used anywhere; every equality test is a decision, not an estimate.
//!
//! Layers, bottom up:
//! - [`coeffield`]: field modes and exact scalars.
//! - [`qalgebra`]: normal forms in the quantum plane, its toric and flip
//!   automorphisms, and the sigma-twisted center.
//! - [`skewder`]: sigma-derivations (twisted Leibniz maps), validity, inner
//!   derivations and innerness decisions.
//! - [`classify`]: canonical decomposition of a sigma-derivation into inner
//!   part plus explicit non-inner families.
//! - [`isotropy`]: character lattices, Smith normal form, and the isotropy
//!   subgroup of a derivation inside the torus (plus flip cosets at q = -1).

pub mod classify;
pub mod coeffield;
pub mod isotropy;
pub mod qalgebra;
pub mod skewder;

mod error;
mod linalg;

pub use coeffield::{FieldElem, FieldMode};
pub use error::Error;
pub use isotropy::{CharacterLattice, FlipPart, IsotropyDescriptor, TorusSubgroupStructure};
pub use qalgebra::{AutKind, Automorphism, QElem, TwistedCenterDesc, TwistedCenterShape};
pub use skewder::SigmaDerivation;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
