pub mod bidiff;
pub mod cli;
pub mod closedform;
pub mod error;
pub mod fields;
pub mod glmod;
pub mod linalg;
pub mod rational;
pub mod sampling;
pub mod superpoly;
