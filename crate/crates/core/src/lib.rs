pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod germ;
pub mod oracle;
pub mod ideal;
pub mod parse;
pub mod puiseux;
pub mod query;
pub mod render;
pub mod tree;

pub use error::{Error, Result};
