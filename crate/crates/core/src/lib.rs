pub mod bohr;
pub mod bourgain;
pub mod config;
pub mod covering;
pub mod error;
pub mod fourier;
pub mod group;
pub mod literal;
pub mod pipeline;
pub mod set;
pub mod spectrum;
pub mod verify;
