//! Executable pointfree topology on finite and countable Priestley spaces.
//!
//! - [`poset`]: finite posets, order closures, upset enumeration, canonical forms.
//! - [`birkhoff`]: finite distributive lattices and their duals.
//! - [`nuclei`]: nuclei on finite frames and their nuclear subsets.
//! - [`d_spectrum`]: the d-nucleus and the spectrum of maximal d-elements over
//!   any [`d_spectrum::PriestleyEngine`].
//! - [`fan_spaces`]: symbolic engines for four countable fan spaces.
//! - [`oracle`]: exhaustive checks of the theory on small instances.

pub mod birkhoff;
pub mod d_spectrum;
pub mod error;
pub mod fan_spaces;
pub mod faults;
pub mod nuclei;
pub mod oracle;
pub mod poset;

pub use error::{Error, Result};
pub use faults::Faults;
