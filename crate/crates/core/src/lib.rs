pub mod cli;
pub mod error;
pub mod exactnum;
pub mod localfactors;
pub mod plancherel;
pub mod restricted;
pub mod rootdata;
pub mod verify;

pub use error::{Error, Result};
