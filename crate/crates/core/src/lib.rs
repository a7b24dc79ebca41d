//! Dephasing, non-Markovianity and induced entanglement of impurity qubits
//! immersed in a quasi-one-dimensional two-component Bose-Einstein
//! condensate.
//!
//! All quantities are dimensionless: energies in units of the transverse
//! trap energy ħω⊥, lengths in l₀ = √(ħ/mω⊥), times in 1/ω⊥.
//!
//! ```
//! use bosemix::{Branch, GammaKind, ReservoirConfig};
//!
//! let cfg = ReservoirConfig::canonical().with_r12(0.2).unwrap();
//! let g = bosemix::dephasing::gamma(&cfg, Branch::Upper, GammaKind::Gamma0, 2.0, 0.0).unwrap();
//! assert!(g > 0.0);
//! ```

pub mod cli;
pub mod dephasing;
pub mod entanglement;
pub mod error;
pub mod ini;
pub mod nonmarkov;
pub mod numerics;
pub mod params;
pub mod reservoir;

pub use dephasing::{Decoherence, GammaKind, GammaTrajectory};
pub use entanglement::{ConcurrenceResult, TwoQubitState};
pub use error::{Error, Result};
pub use nonmarkov::{blp_measure, BackflowReport, DephasingProcess};
pub use params::{PairConvention, PhysicalParams, ReservoirConfig};
pub use reservoir::{Branch, CouplingKind, DispersionModel};
