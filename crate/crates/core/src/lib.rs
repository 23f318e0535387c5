//! Exact growth sequences for tensor powers of quantum sl2 tilting modules.

pub mod asymptotics;
pub mod error;
pub mod io;
pub mod roots;
pub mod series;
pub mod tilting;
pub mod verify;
pub mod walks;

pub use error::{Error, Result};
