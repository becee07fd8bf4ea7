//! Spectral distribution of the unitary `S Y_t S Y_t*`, where `S = 2P - 1` is a
//! symmetry of trace `2θ - 1` and `Y` is a free unitary Brownian motion, together
//! with the induced description of the free Jacobi process `P Y_t P Y_t* P`.
//!
//! The crate computes the same quantities along independent routes and checks
//! them against each other:
//!
//! * an exact moment recursion in the ring of exponential polynomials
//!   ([`moments`]),
//! * the stationary measure in closed form ([`stationary`]),
//! * the characteristic flow of the Burgers equation satisfied by the Herglotz
//!   transform ([`flow`]),
//! * non-crossing partition combinatorics and free cumulants ([`ncfree`]),
//! * the R/K-transform layer for the half free convolution of `a1 - a2`
//!   ([`convolution`]),
//! * the binomial bridge to moments of the free Jacobi process and the general
//!   position limit ([`bridge`]).
//!
//! See the crate examples for runnable demonstrations of each capability, and
//! [`verify`] for the cross-check battery behind the `verify` subcommand of the
//! bundled CLI.

pub mod rational;
pub mod poly;
pub mod exppoly;
pub mod rank;
pub mod moments;
pub mod integrate;
pub mod stationary;
pub mod roots;
pub mod flow;
pub mod ncfree;
pub mod cubic;
pub mod convolution;
pub mod bridge;
pub mod verify;
pub mod cli;

#[cfg(feature = "simulation")]
pub mod simulate;

pub use rank::RankParam;
pub use rational::Rational;
