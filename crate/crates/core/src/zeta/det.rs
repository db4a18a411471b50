//! Exact determinants of integer and polynomial matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modular::{self, Crt};
use super::poly::IntPolynomial;
use crate::multigraph::IntMatrix;
use crate::{Error, Result};

/// Largest dimension handled by direct fraction-free elimination in
/// [`determinant`]; larger matrices go through [`det_multimodular`].
pub const BAREISS_MAX_DIM: usize = 16;

/// Integral domain with exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other` when the division is exact.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
}

impl ExactRing for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::zero()
    }
    fn one() -> Self {
        IntPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        IntPolynomial::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        IntPolynomial::div_exact(self, other).ok()
    }
}

/// Square matrix of integer polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    data: Vec<IntPolynomial>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![IntPolynomial::zero(); n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<IntPolynomial>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("{n} rows of unequal length")));
        }
        Ok(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPolynomial {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: IntPolynomial) {
        self.data[i * self.n + j] = p;
    }

    /// `I − A t + diag(q) t²`.
    pub fn bass(a: &IntMatrix, q: &[BigInt]) -> Result<Self> {
        let n = a.dim();
        if q.len() != n {
            return Err(Error::Dimension(format!("Q has {} entries for a {n}×{n} matrix", q.len())));
        }
        let mut m = Self::zeros(n);
        for (i, qi) in q.iter().enumerate() {
            for j in 0..n {
                let mut c = vec![<BigInt as Zero>::zero(), -a.get(i, j)];
                if i == j {
                    c[0] = <BigInt as One>::one();
                    c.push(qi.clone());
                }
                m.set(i, j, IntPolynomial::new(c));
            }
        }
        Ok(m)
    }

    /// `x I − A`.
    pub fn characteristic(a: &IntMatrix) -> Self {
        let n = a.dim();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut c = vec![-a.get(i, j)];
                if i == j {
                    c.push(<BigInt as One>::one());
                }
                m.set(i, j, IntPolynomial::new(c));
            }
        }
        m
    }

    fn max_degree(&self) -> usize {
        self.data.iter().filter_map(IntPolynomial::degree).max().unwrap_or(0)
    }

    /// Upper bound on the total degree of the determinant: sum of row degrees.
    fn det_degree_bound(&self) -> usize {
        (0..self.n)
            .map(|i| (0..self.n).filter_map(|j| self.get(i, j).degree()).max().unwrap_or(0))
            .sum()
    }

    /// `∏_i Σ_j ‖M_ij‖₁`, a bound on every coefficient of the determinant.
    fn coefficient_bound(&self) -> BigInt {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).l1_norm()).sum::<BigInt>())
            .product()
    }
}

/// One-step fraction-free (Bareiss) elimination over an exact ring. Every
/// division is exact by Sylvester's identity; an inexact one is a bug and
/// panics.
pub fn bareiss<R: ExactRing>(mut m: Vec<R>, n: usize) -> R {
    if n == 0 {
        return R::one();
    }
    let at = |i: usize, j: usize| i * n + j;
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[at(k, k)].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !m[at(i, k)].is_zero()) else {
                return R::zero();
            };
            for j in 0..n {
                m.swap(at(k, j), at(piv, j));
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[at(i, j)].mul(&m[at(k, k)]).sub(&m[at(i, k)].mul(&m[at(k, j)]));
                m[at(i, j)] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact");
            }
        }
        prev = m[at(k, k)].clone();
    }
    let d = m[at(n - 1, n - 1)].clone();
    if negate { d.neg() } else { d }
}

/// Determinant of a polynomial matrix by fraction-free elimination in `Z[t]`.
pub fn det_fraction_free(m: &PolyMatrix) -> IntPolynomial {
    bareiss(m.data.clone(), m.n)
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn det_int(m: &IntMatrix) -> BigInt {
    let n = m.dim();
    bareiss((0..n).flat_map(|i| m.row(i).to_vec()).collect(), n)
}

/// Determinant of a polynomial matrix by evaluation at `deg + 1` points modulo
/// a sequence of word-size primes, interpolation, and Chinese remaindering.
/// Enough primes are used to exceed twice the a priori coefficient bound, so
/// the result is exact.
pub fn det_multimodular(m: &PolyMatrix) -> IntPolynomial {
    let n = m.n;
    if n == 0 {
        return IntPolynomial::one();
    }
    let deg = m.det_degree_bound();
    let needed_bits = modular::bits_for_bound(&m.coefficient_bound());
    let points: Vec<u64> = (0..=deg as u64).collect();
    let mut crt = Crt::new(deg + 1);
    let md = m.max_degree();
    for p in modular::primes() {
        if crt.modulus_bits() > needed_bits {
            break;
        }
        let entries: Vec<Vec<u64>> = m
            .data
            .iter()
            .map(|e| (0..=md).map(|k| modular::reduce(&e.coeff(k), p)).collect())
            .collect();
        let values: Vec<u64> = points
            .iter()
            .map(|&x| {
                let evaluated = entries
                    .iter()
                    .map(|c| {
                        c.iter()
                            .rev()
                            .fold(0, |acc, &ck| modular::add_mod(modular::mul_mod(acc, x, p), ck, p))
                    })
                    .collect();
                modular::det_mod(evaluated, n, p)
            })
            .collect();
        crt.add(p, &modular::interpolate_mod(&points, &values, p));
    }
    IntPolynomial::new(crt.symmetric())
}

/// Exact determinant, choosing the engine by dimension.
pub fn determinant(m: &PolyMatrix) -> IntPolynomial {
    if m.n <= BAREISS_MAX_DIM {
        det_fraction_free(m)
    } else {
        det_multimodular(m)
    }
}

/// `det(x I − A)` as a polynomial in `x`.
pub fn char_poly(a: &IntMatrix) -> IntPolynomial {
    determinant(&PolyMatrix::characteristic(a))
}
