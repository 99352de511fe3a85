pub mod cli;
pub mod error;
pub mod exactnum;
pub mod families;
pub mod graph;

pub use error::{Error, Result};
pub mod search;
pub mod spectral;
pub mod transfer;
