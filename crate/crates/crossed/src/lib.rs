//! Matched pairs of finite groups, Zappa-Szep products, skeletal pointed crossed tensor
//! categories, their crossed centers, and a bounded coherence checker.

pub mod braided;
pub mod category;
pub mod fixtures;
pub mod center;
pub mod group;
pub mod io;
pub mod matched;
pub mod report;
pub mod scalar;
pub mod words;

pub use report::{Check, VerificationReport};
pub use scalar::UnitScalar;
