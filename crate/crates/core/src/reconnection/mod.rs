mod fixtures;
mod ledger;
mod pathway;
mod site;
mod surgery;
mod theta;

pub use fixtures::*;
pub use ledger::*;
pub use pathway::*;
pub use site::*;
pub use surgery::*;
pub use theta::*;
