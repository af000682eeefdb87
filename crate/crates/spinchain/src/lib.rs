//! Parameter sweeps, figure presets, CSV tables, run configuration and
//! verification reports on top of [`spinchain_core`].

pub mod block;
pub mod checks;
pub mod config;
mod error;
pub mod presets;
pub mod sweep;
pub mod table;

pub use error::{Error, Result};
