#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod corpus;
pub mod curves;
pub mod error;
pub mod exprdsl;
pub mod lorentz;
pub mod numeric;
pub mod reconstruct;
pub mod scalar;
pub mod similarity;
pub mod surfaces;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use lorentz::{CausalCharacter, MVec3, Sign};
