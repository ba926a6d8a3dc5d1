pub mod eigen;
pub mod error;
pub mod flows;
pub mod limits;
pub mod polyalg;
pub mod spectral;
pub mod verify;
pub mod wavevector;

pub use error::{Error, Result};
pub use wavevector::Wavevector;
