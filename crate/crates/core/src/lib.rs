//! Dirichlet L-functions over F_q[t] at the central point.
//!
//! Builds the multiplicative group mod a prime polynomial Q, evaluates the
//! characters and the coefficient vectors L_n(chi), and averages derivatives
//! L^(k)(1/2, chi) over the non-trivial characters: first, second, and mixed
//! fourth moments, together with the exact identities that pin them down
//! (orthogonality, functional equations, odd/even reductions, the diagonal
//! lattice two-path check) and the exact limiting constants D_m.
//!
//! Layers:
//! - [`ffpoly`]: F_q and F_q[t] arithmetic, irreducibility, enumeration.
//! - [`characters`]: unit group mod Q, generator, dlog table, chi evaluation.
//! - [`lseries`]: coefficient vectors, central derivatives, root numbers,
//!   functional-equation verification.
//! - [`moments`]: moment averages and their exact/brute-force oracles.
//! - [`exact`]: big-rational symbolics — multivariate polynomials, rational
//!   functions in a formal u = q^{1/2}, region integration, D_m.
//! - [`report`]: serialisable run reports (JSON/CSV).

pub mod characters;
pub mod error;
pub mod exact;
pub mod ffpoly;
pub mod lseries;
pub mod moments;
pub mod report;

pub use characters::{CharGroup, Character};
pub use error::{Error, Result};
pub use exact::{BigRational, MultiPoly, RatFunc, SqrtQNumber};
pub use ffpoly::{FieldDesc, PolyFq};
pub use lseries::LSeriesData;
pub use report::MomentReport;
