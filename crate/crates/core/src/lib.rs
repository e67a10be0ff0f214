pub mod cli;
pub mod dominance;
pub mod error;
pub mod framecert;
pub mod grids;
pub mod ronshen;
pub mod quadrature;
pub mod spectral;
pub mod windows;

pub use error::{Error, Result};
