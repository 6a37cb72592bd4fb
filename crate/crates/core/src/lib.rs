pub mod bgmodel;
pub mod cache;
pub mod config;
pub mod error;
pub mod field;
pub mod filtration;
pub mod koszul;
pub mod linalg;
pub mod matrix;
pub mod mui;
pub mod report;
pub mod series;
pub mod serre;
pub mod steenrod;
pub mod suites;
pub mod weyl;

pub use error::{Error, Result};
