pub mod commands;
pub mod error;
pub mod exact;
pub mod family;
pub mod geometry;
pub mod interval;
pub mod io;
pub mod pierce;

pub use error::{Error, Result};
