//! State files, CSV tables and the `bellmix` command line on top of
//! [`bellmix_core`].

pub mod cli;
mod error;
pub mod state_file;
pub mod table;

pub use error::{Error, Result};
