use num_bigint::BigInt;
use num_traits::One;

use super::det::{determinant, PolyMatrix};
use super::modular::{self, Crt};
use super::poly::IntPolynomial;
use crate::multigraph::{adjacency_matrix, RotationGraph, VertexOrder};
use crate::{Error, Result};

/// Default bound on `2|E|` for [`nonbacktracking_reciprocal`].
pub const NONBACKTRACKING_CAP: usize = 1024;

fn check_zeta_preconditions(g: &RotationGraph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) < 2) {
        return Err(Error::DegreeTooSmall(g.label(v).to_string()));
    }
    Ok(())
}

/// `(1 − t²)^k`.
pub fn one_minus_t_squared_pow(k: usize) -> IntPolynomial {
    IntPolynomial::from_i64s(&[1, 0, -1]).pow(k as u32)
}

/// `det(I − A t + Q t²)` with `Q = diag(deg − 1)`.
pub fn bass_determinant(g: &RotationGraph, order: &VertexOrder) -> Result<IntPolynomial> {
    let a = adjacency_matrix(g, order)?;
    let q: Vec<BigInt> = (0..g.vertex_count())
        .map(|row| BigInt::from(g.degree(order.vertex_at(row))) - BigInt::one())
        .collect();
    Ok(determinant(&PolyMatrix::bass(&a, &q)?))
}

/// Reciprocal Ihara zeta function `(1 − t²)^{|E|−|V|} det(I − A t + Q t²)`.
pub fn ihara_reciprocal(g: &RotationGraph, order: &VertexOrder) -> Result<IntPolynomial> {
    check_zeta_preconditions(g)?;
    let det = bass_determinant(g, order)?;
    Ok(one_minus_t_squared_pow(g.edge_count() - g.vertex_count()) * det)
}

/// The non-backtracking matrix on half-edges as adjacency lists:
/// `h → f` when `f` leaves the head of `h` and is not `rot(h)`.
pub fn nonbacktracking_successors(g: &RotationGraph) -> Vec<Vec<usize>> {
    (0..g.half_edge_count())
        .map(|id| {
            let back = g.rot(g.half_edge(id));
            (0..g.degree(back.vertex))
                .filter(|&p| p != back.port)
                .map(|p| g.half_edge_id(crate::multigraph::HalfEdge { vertex: back.vertex, port: p }))
                .collect()
        })
        .collect()
}

/// `det(I − t B)` for the non-backtracking matrix `B`, computed from the
/// characteristic polynomial of `B` modulo several primes.
pub fn nonbacktracking_reciprocal(g: &RotationGraph) -> Result<IntPolynomial> {
    nonbacktracking_reciprocal_capped(g, NONBACKTRACKING_CAP)
}

pub fn nonbacktracking_reciprocal_capped(g: &RotationGraph, cap: usize) -> Result<IntPolynomial> {
    check_zeta_preconditions(g)?;
    let n = g.half_edge_count();
    if n > cap {
        return Err(Error::CapExceeded(format!("2|E| = {n} exceeds {cap}")));
    }
    let succ = nonbacktracking_successors(g);
    // Each coefficient of det(xI − B) is a sum of at most 2^n principal minors,
    // each bounded by Hadamard's inequality for 0/1 rows.
    let max_nnz = succ.iter().map(Vec::len).max().unwrap_or(0).max(1);
    let log2_nnz = u64::from(max_nnz.next_power_of_two().trailing_zeros());
    let needed_bits = n as u64 + (n as u64 * log2_nnz).div_ceil(2) + 4;
    let mut crt = Crt::new(n + 1);
    for p in modular::primes() {
        if crt.modulus_bits() > needed_bits {
            break;
        }
        let mut m = vec![0u64; n * n];
        for (h, fs) in succ.iter().enumerate() {
            for &f in fs {
                m[h * n + f] += 1;
            }
        }
        crt.add(p, &modular::charpoly_mod(m, n, p));
    }
    // det(I − tB) = t^n χ_B(1/t)
    Ok(IntPolynomial::new(crt.symmetric()).reversed(n + 1))
}
