pub mod branching;
pub mod charlat;
pub mod compare;
pub mod cyclo;
pub mod error;
pub mod finquot;
mod linalg;
pub mod rootsys;
pub mod semidirect;
pub mod stmeasure;
pub mod twining;

pub use error::{Error, Result};
