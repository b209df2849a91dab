//! Isomorphism testing for central colored Cayley graphs over almost simple groups.

pub mod cayley;
pub mod cli_io;
pub mod coherent;
pub mod error;
pub mod group_core;
pub mod iso_engine;
pub mod perm_core;

pub use error::{Error, Result};
