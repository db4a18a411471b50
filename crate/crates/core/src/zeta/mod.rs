//! Exact polynomial arithmetic, determinants, Ihara zeta reciprocals and
//! Artin L-function reciprocals.

mod artin;
mod det;
mod factored;
mod ihara;
pub mod modular;
mod poly;

pub use artin::{
    artin_matrices, artin_reciprocal, characters, factorization_check, twisted_adjacency, Character,
    FiniteAbelianGroup, GroupLabeling,
};
pub use det::{
    bareiss, char_poly, det_fraction_free, det_int, det_multimodular, determinant, ExactRing, PolyMatrix,
    BAREISS_MAX_DIM,
};
pub use factored::parse_factored;
pub use ihara::{
    bass_determinant, ihara_reciprocal, nonbacktracking_reciprocal, nonbacktracking_reciprocal_capped,
    nonbacktracking_successors, one_minus_t_squared_pow, NONBACKTRACKING_CAP,
};
pub use poly::{divisibility_check, Divisibility, IntPolynomial};
