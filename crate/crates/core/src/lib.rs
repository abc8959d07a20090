//! Covering alignment of labeled DAGs and diploid alignment under
//! recombination, plus a toolkit that builds and checks the reduction from
//! multi-string LCS to covering alignment.

pub mod cover;
pub mod dag;
pub mod diploid;
pub mod error;
pub mod reduction;
pub mod strings;

pub use error::{Error, Result};
