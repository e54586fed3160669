//! Exact reachability and null-controllability analysis for difference
//! inclusions `x_{k+1} ∈ H(x_k)` where `H` is a polyhedral convex process.
//!
//! All decisions use exact rational arithmetic. Real algebraic numbers enter
//! only at irrational eigenvalue candidates, where they are handled exactly
//! by isolating intervals.

pub mod algebraic;
pub mod analysis;
pub mod cone;
pub mod error;
pub mod field;
pub mod io;
pub mod linear_reach;
pub mod lp;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod process;
pub mod rat;
pub mod spectral;
pub mod subspace;

pub use analysis::{
    check_assumptions, check_null_controllability, check_reachability, Property, Verdict, VerdictResult,
};
pub use cone::{ConeJson, PolyhedralCone};
pub use error::{Error, Result};
pub use matrix::RatMatrix;
pub use process::{ConvexProcess, LinearProcess};
pub use rat::Rat;
pub use subspace::Subspace;
