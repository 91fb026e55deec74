pub mod automorphism;
pub mod cli;
pub mod derivation;
pub mod error;
pub mod family;
pub mod polyring;
pub mod sureduction;

pub use error::{Error, Result};
