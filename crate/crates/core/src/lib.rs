//! Exact arithmetic, generation, symbolic verification and brute-force search
//! for the near-miss family
//!
//! ```text
//! x_n^4 + y_n^4 - 8 = z_n^2
//! ```
//!
//! whose members start at `(22, 23, 717)`, `(1058, 1103, 1653213)`.
//!
//! * [`exactmath`]: big integers, reduced rationals and elements of `Q(sqrt(D))`.
//! * [`sequences`]: recurrences, closed forms over `Q(sqrt(577))`, the residual.
//! * [`identities`]: coefficient identities and expansion tables proving the
//!   residual vanishes for every index.
//! * [`search`]: exhaustive scan for `|x^4 + y^4 - z^2| <= threshold`.
//! * [`cli`]: the `nearmiss` command line.

pub mod cli;
pub mod error;
pub mod exactmath;
pub mod format;
pub mod identities;
pub mod search;
pub mod sequences;

pub use error::{Error, Result};
pub use exactmath::{isqrt, Integer, QuadElem, Rational};
