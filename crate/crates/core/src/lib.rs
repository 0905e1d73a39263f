pub mod error;
pub mod exactring;
pub mod lmov;
pub mod partitions;
pub mod skein;
pub mod symfun;

pub use error::{Error, Result};
