pub mod asym;
pub mod cache;
pub mod cli;
pub mod diagrams;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod gamma;
pub mod hz;
pub mod oracle;
pub mod shadows;

pub use error::{Error, Result};
