//! Exact Grothendieck-level computations for braided fusion categories.
//!
//! The crate covers fusion rings and their dimension functions and gradings
//! ([`ring`]), ribbon data and balancing-derived S-matrices ([`modular`]),
//! metric groups ([`metric`]), ℤ₂ cohomology, particle-hole gauging and boson
//! condensation ([`gauging`]), and explicit constructions of the metaplectic
//! family SO(N)₂ together with their structure censuses ([`catalog`]).
//!
//! Batch sweeps live in [`sweep`] and run data-parallel when the `parallel`
//! feature is enabled.

pub mod catalog;
pub mod error;
pub mod exact;
pub mod gauging;
pub mod group;
pub mod io;
pub mod metric;
pub mod modular;
pub mod nt;
pub mod par;
pub mod ring;
pub mod sweep;

pub use error::{Error, Result};
pub use exact::{AlgebraicReal, ModOne, Phase};
pub use group::AbelianGroup;
pub use modular::{RibbonData, SMatrix};
pub use metric::MetricGroup;
pub use ring::{FusionRing, Grading};
