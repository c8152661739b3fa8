//! Exact laboratory for addition-chain lengths and their logarithmic defects.

pub mod bits;
pub mod catalog;
pub mod chain;
pub mod class;
pub mod classifier;
pub mod defect;
pub mod error;
pub mod interval;
pub mod logvalue;
pub mod ordinal;
pub mod search;
mod serde_util;

pub use chain::{binary_chain, validate_chain, AdditionChain, ChainError};
pub use class::{ChainClass, StepRule};
pub use error::LabError;
pub use search::{Engine, LengthCache};
