//! L2-type difference approximation of the Caputo derivative and the
//! (3-α)-order-in-time schemes it yields for the 1-D time-fractional
//! diffusion equation, together with a convergence-study harness.
//!
//! * [`kernel`]: weights, discrete Caputo operators, energy functionals.
//! * [`problem`]: problem data, grids, manufactured solutions.
//! * [`solver`]: second-order and compact fourth-order time stepping.
//! * [`analysis`]: grid norms, error reports, convergence tables, property suite.
//! * [`cli`]: the `fracdiff` command-line front end.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod kernel;
pub mod parallel;
pub mod problem;
pub mod solver;

pub use error::{Error, Result};
pub use parallel::Execution;
