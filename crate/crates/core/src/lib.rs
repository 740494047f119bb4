pub mod error;
pub mod cosheaf;
pub mod counterexample;
pub mod group;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod poset;
pub mod random;

pub use error::{Error, ErrorClass, Result};
