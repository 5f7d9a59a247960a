//! Verification workbench for the Hardy-Littlewood series f(x) = sum sin(x/n)/n
//! and the web of identities around it: Franel-type integrals, sawtooth and
//! Kubert relations, Poisson/Voronoi/Koshliakov summation formulas, and
//! theta-function lattice sums.
//!
//! Every evaluator returns a value together with a certified absolute error
//! bound, and every identity check compares two independently computed sides.

pub mod dd;
pub mod error;
pub mod eval;
pub mod franel;
pub mod hlseries;
pub mod lattice;
pub mod quad;
pub mod report;
pub mod sawtooth;
pub mod specfun;
pub mod suite;
pub mod summation;

pub use error::{Error, Result};
pub use eval::{CEvalResult, EvalResult};
pub use report::IdentityReport;
