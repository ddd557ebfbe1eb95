//! Vector-valued Lyapunov and Morse spectra of matrix cocycles on flag
//! manifolds.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! group decompositions -> flag dynamics -> a-cocycle -> spectrum clouds
//!      (lie)                (flag)         (cocycle)      (spectrum)
//! ```
//!
//! with root-system / Weyl-group bookkeeping (`roots`) shared by every
//! stage, and chamber/figure geometry (`plot`) for the CLI.

pub mod cartan;
pub mod cocycle;
pub mod error;
pub mod flag;
pub mod hull;
pub mod lie;
pub mod plot;
pub mod roots;
pub mod spectrum;

pub use cartan::CartanVector;
pub use cocycle::{BundlePoint, CocycleTrace, DrivingSystem};
pub use error::Error;
pub use flag::{CellLabel, FlagPoint};
pub use lie::{GroupElement, IwasawaTriple, PolarTriple, Tolerances};
pub use roots::{Family, RootSystem, ThetaSubset, WeylElement};
pub use spectrum::{BlockFormEstimate, ChainSpec, CloudKind, SpectrumCloud};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
