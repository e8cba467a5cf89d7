//! Long-distance entanglement in spin-1/2 chains.
//!
//! Models are sums of Pauli-string terms on open chains. Sites are 0-based in
//! the API and in model JSON; display strings print them 1-based (`X1 Z4`).
//! The computational basis has `|0⟩` as the σ^z = +1 state, and site 0 is the
//! most significant tensor factor. Entropies are in nats.

pub mod classicality;
pub mod effective;
pub mod entanglement;
mod error;
pub mod exact;
pub mod fit;
pub mod freefermion;
pub mod model;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex64;
