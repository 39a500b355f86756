pub mod analyzer;
pub mod cayley;
pub mod error;
pub mod exactmath;
pub mod ffalg;
pub mod heights;
pub mod interval;
pub mod mpoly;
pub mod numfield;
pub mod ring;
pub mod ruppert;

pub use error::{Error, Result};
