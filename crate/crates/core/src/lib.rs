//! Symbolic computation with free crossed resolutions of groups and
//! groupoids: free crossed modules on presentations, the standard
//! resolution, tensor products and cylinders, amalgamated-sum and
//! HNN-extension constructions, identities among relations, homology
//! certification, and non-abelian 2-cocycle/extension data.

pub mod error;
pub mod words;
pub mod presentation;
pub mod oracle;
pub mod crossed_module;
pub mod complex;
pub mod snf;
pub mod verify;
pub mod cocycle;
pub mod dump;

pub use complex::{CheckReport, ComplexMorphism, CrossedComplex, Element, ModuleElement};
pub use crossed_module::{AbelianizedElement, FreeCrossedModule, PeifferFactor, PeifferSequence};
pub use error::{Error, Result};
pub use oracle::{build_finite_oracle, FiniteGroup, GroupOracle, GroupRingElement};
pub use presentation::{parse_presentation, Presentation};
pub use words::{GeneratorSymbol, Letter, ObjectId, Word};
pub mod constructions;
