pub mod curves;
pub mod error;
pub mod geom;
pub mod invariants;
pub mod io;
pub mod reconnection;
pub mod sum;

pub use curves::*;
pub use error::{Error, Result};
pub use geom::{Point3, Vec3};
pub use invariants::*;
pub use reconnection::*;
pub use sum::Execution;
