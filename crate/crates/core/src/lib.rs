pub mod bridge;
pub mod error;
pub mod hadamard;
pub mod hyper;
pub mod sampling;
pub mod operator;
pub mod triple;
pub mod verify;

pub use error::{Error, Result};
