//! Design and simulation of group-velocity-matched difference-frequency
//! conversion: dispersion, phase matching, joint coupling amplitudes,
//! split-step propagation and visibility metrics.

pub mod constants;
pub mod dispersion;
pub mod error;
pub mod jca;
pub mod metrics;
pub mod par;
pub mod phasematch;
pub mod presets;
pub mod propagation;
pub mod roots;
pub mod spectral;

pub use error::{Error, Result};
