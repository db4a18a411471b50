//! Exact algebraic graph theory for the Schreier graphs of the Basilica group.
//!
//! The crate builds the finite Schreier graphs `Γ_n` of the Basilica group as
//! rotation-map multigraphs, forms their generalized replacement and zig-zag
//! products, analyses the resulting unramified coverings (Frobenius
//! permutations, monodromy, normality, deck maps) and computes Ihara zeta and
//! Artin L-function reciprocals as exact integer polynomials.
//!
//! Everything is exact: coefficients are arbitrary-precision integers and no
//! floating point is used anywhere on the computational path.
//!
//! ```
//! use zetagraph::{basilica, multigraph::VertexOrder, zeta};
//!
//! let gamma2 = basilica::build_schreier(2).unwrap();
//! let order = VertexOrder::lexicographic(&gamma2);
//! let recip = zeta::ihara_reciprocal(&gamma2, &order).unwrap();
//! assert_eq!(recip.degree(), Some(16));
//! ```

pub mod basilica;
pub mod cli;
pub mod covering;
mod error;
pub mod multigraph;
pub mod products;
pub mod reproduce;
pub mod zeta;

pub use error::{Error, Result};

/// Largest Schreier level accepted unless overridden.
pub const DEFAULT_MAX_LEVEL: usize = 12;

/// Environment variable that overrides [`DEFAULT_MAX_LEVEL`] for the CLI.
pub const CAP_ENV_VAR: &str = "ZETAGRAPH_CAP";
