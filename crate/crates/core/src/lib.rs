pub mod central;
pub mod cyclo;
pub mod error;
pub mod families;
pub mod exactla;
pub mod hilbert;
pub mod ncalg;
pub mod ozone;
pub mod smash;

pub use cyclo::CycNum;
pub use error::{Error, Result};
