pub mod cli;
pub mod cmhodge;
pub mod error;
pub mod frobpoly;
pub mod frobtorus;
pub mod ingest;
pub mod numfield;
pub mod systems;

pub use error::{Error, Result};
