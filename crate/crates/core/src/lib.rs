//! Disconnected reductive groups over ℂ from root data, finite groups and cohomology.

pub mod abgroup;
pub mod autbrd;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod exactlin;
pub mod extension;
pub mod grouptable;
pub mod rootdatum;

pub use error::{Error, Result};
