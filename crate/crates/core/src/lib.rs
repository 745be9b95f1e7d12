//! Product Weyl-Heisenberg covariant fiducials for mutually unbiased bases
//! and SICs in prime-power dimensions.
//!
//! The cubic-trace states `Σ_j ω^{tr(a j³)} |j⟩` over `GF(p^n)` (`p ≥ 5`) and
//! over the Galois ring `GR(9, n)` generate complete sets of MUBs under the
//! product Weyl-Heisenberg group, each basis being entangled to the same
//! degree. The crate builds these states, verifies the resulting designs, and
//! evaluates the magick measure `Σ_kl |Tr W_kl ρ|` together with its bounds.

pub mod error;
pub mod fiducials;
pub mod finite_field;
pub mod galois_ring;
pub mod io;
pub mod measures;
mod poly;
pub mod search;
pub mod states;
pub mod verify;
pub mod wh;

pub use error::{Error, Result};
pub use fiducials::{FiducialKind, FiducialRecipe, Param};
pub use finite_field::{FieldElement, FieldSpec};
pub use galois_ring::{RingElement, RingSpec};
pub use io::{Document, LogMatrix};
pub use measures::{magick, MagickReport};
pub use search::{SearchConfig, SearchResult};
pub use states::{DensityOperator, DigitOrder, DimProfile, PhaseState, StateVector};
pub use verify::{BasisSet, VerificationReport};
pub use wh::{WhGroup, WhIndex};
