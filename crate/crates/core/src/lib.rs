//! Graded Betti numbers of ideals generated by `a`-fold products of linear forms.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactlin`]: exact rationals, prime fields, rank and kernels.
//! - [`forms`]: collections of linear forms with multiplicities, deletion and contraction.
//! - [`matroid`]: the column matroid of the coefficient matrix, Hamming weights, Tutte polynomial.
//! - [`betti`]: closed-form Betti tables and the deletion-contraction recursion.
//! - [`oracle`]: brute-force Hilbert functions and circuit relation spaces used as ground truth.
//! - [`cli`]: instance files, reports and the `foldbetti` command line.

pub mod betti;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod exactlin;
pub mod forms;
pub mod matroid;
pub mod oracle;

#[cfg(test)]
mod test_support;

pub use error::{Error, Result};
