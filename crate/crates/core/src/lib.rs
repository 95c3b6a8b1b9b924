pub mod algebra;
pub mod comack;
pub mod error;
pub mod group;
pub mod kg;
pub mod linalg;
pub mod mackey;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
