//! Construction and certification of flexible cubic vertex-transitive graphs
//! of girth `2ℓ`, with the supporting word-length oracles.

pub mod amalgam;
pub mod cli;
pub mod cosetenum;
pub mod error;
pub mod graphs;
pub mod membership;
pub mod nilq;
pub mod report;
pub mod syntax;
pub mod words;

pub use error::{Error, Result};
