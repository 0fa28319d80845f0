mod generators;
mod polygon;
pub(crate) mod ribbon;

pub use generators::*;
pub use polygon::*;
pub use ribbon::*;
