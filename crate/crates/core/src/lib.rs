pub mod basis;
pub mod error;
pub mod generic;
pub mod germ;
pub mod linalg;
pub mod polar;
pub mod poly;
pub mod topology;
pub mod whitney;

pub use error::{Error, ErrorKind, Result};

use basis::Limits;
use generic::GenericPolicy;

/// Resource limits and genericity policy shared by all computations.
#[derive(Clone, Debug, Default)]
pub struct Config {
    pub limits: Limits,
    pub policy: GenericPolicy,
}
