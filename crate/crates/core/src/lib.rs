pub mod arith;
pub mod criteria;
pub mod ellcurve;
pub mod error;
pub mod finfield;
pub mod intpoly;
pub mod numfield;

pub use error::{Error, Result};
