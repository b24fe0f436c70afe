pub mod cli;
pub mod error;
pub mod fparith;
pub mod freemod;
pub mod frobstream;
pub mod koszul;
pub mod poly;
pub mod vanish;

pub use error::{Error, Result};
