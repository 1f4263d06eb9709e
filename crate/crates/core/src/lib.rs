//! Numerical machinery for conformal-block crossing computations on
//! hyperbolic surfaces: Gauss hypergeometric engines, the u- and t-channel
//! blocks, their asymptotics, the averaged weights W and W̌, and a harness
//! for checking the averaged crossing equation on synthetic spectra.

pub mod asymptotics;
pub mod averaging;
pub mod blocks;
pub mod constants;
pub mod error;
pub mod harness;
pub mod hyp;
pub mod quad;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
