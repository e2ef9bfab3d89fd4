//! Superoscillating and supershift sequences over the real Clifford algebras
//! R_n, in both hyperholomorphic settings (slice and monogenic), together
//! with the supporting machinery: Clifford arithmetic, Fueter polynomials,
//! Cauchy-Kowalewski extension and product, slice calculus, and the explicit
//! convergence bounds as testable numerics.

pub mod ck;
pub mod clifford;
pub mod combin;
pub mod error;
pub mod fueter;
pub mod grid;
pub mod slice;
pub mod superosc;
pub mod supershift;

pub use clifford::{slice_join, slice_split, Multivector, Paravector};
pub use combin::MultiIndex;
pub use error::{Error, Result};
