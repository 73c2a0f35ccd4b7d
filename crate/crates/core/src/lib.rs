//! Fuzzy-number spaces on exact piecewise-linear level representations.
//!
//! * [`levelfun`]: piecewise-linear left-continuous level functions and
//!   Riemann–Stieltjes integrals.
//! * [`fuzznum`]: fuzzy numbers, their arithmetic and the metric `D`.
//! * [`spaces`]: sequence and curve spaces over fuzzy numbers.
//! * [`functionals`]: monotone decompositions and linear functionals.
//! * [`checker`]: randomized property suites and counterexample search.

pub mod checker;
pub mod error;
pub mod functionals;
pub mod fuzznum;
pub mod levelfun;
pub mod spaces;

pub use error::{Error, Result};
pub use fuzznum::{FuzzyNum, Interval};
pub use levelfun::{rs_integral, ADecomp, PlFun};
pub use spaces::{FnCurve, FnSeq, FnTypeSpace, Tail};
