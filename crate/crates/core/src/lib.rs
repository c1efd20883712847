pub mod bmodule;
pub mod characters;
pub mod cli;
pub mod combinat;
pub mod diag_algebra;
pub mod error;
pub mod linalg;
pub mod macdonald;
pub mod oracle;
pub mod series;
pub mod stable;
pub mod symplectic;

pub use error::{Error, Result};
