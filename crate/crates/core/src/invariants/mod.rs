mod helicity;
mod monte_carlo;
mod projection;
mod solid_angle;
mod torsion;
mod twist;
mod writhe;

pub use helicity::*;
pub use monte_carlo::*;
pub use projection::*;
pub use solid_angle::*;
pub use torsion::*;
pub use twist::*;
pub use writhe::*;
