pub mod cli;
pub mod constructors;
pub mod cubic_group;
pub mod curves;
pub mod error;
pub mod gf;
pub mod latin;
pub mod linalg;
pub mod nets;
pub mod plane;

pub use error::{Error, Result};
