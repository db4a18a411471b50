//! Word-size modular arithmetic and Chinese remaindering.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b { a - b } else { p - (b - a) }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes descending from `2^62`.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut candidate = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(candidate) {
            candidate -= 2;
        }
        let p = candidate;
        candidate -= 2;
        Some(p)
    })
}

pub fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Incremental CRT reconstruction of a vector of integers.
pub struct Crt {
    modulus: BigUint,
    residues: Vec<BigUint>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Self { modulus: BigUint::one(), residues: vec![BigUint::zero(); len] }
    }

    pub fn modulus_bits(&self) -> u64 {
        self.modulus.bits()
    }

    pub fn add(&mut self, p: u64, values: &[u64]) {
        assert_eq!(values.len(), self.residues.len());
        let m_mod_p = (&self.modulus % p).to_u64().expect("small");
        let m_inv = inv_mod(m_mod_p, p);
        for (acc, &v) in self.residues.iter_mut().zip(values) {
            let a_mod_p = (&*acc % p).to_u64().expect("small");
            let k = mul_mod(sub_mod(v, a_mod_p, p), m_inv, p);
            *acc += &self.modulus * k;
        }
        self.modulus *= p;
    }

    /// Symmetric representatives in `(-M/2, M/2]`.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        let m = BigInt::from(self.modulus.clone());
        self.residues
            .iter()
            .map(|r| {
                let r = BigInt::from(r.clone());
                if r.magnitude() > &half { r - &m } else { r }
            })
            .collect()
    }
}

/// Bits needed so that a modulus exceeding `2 · bound` recovers values of
/// absolute value at most `bound`.
pub fn bits_for_bound(bound: &BigInt) -> u64 {
    bound.abs().bits() + 2
}

/// Determinant of a square matrix over `Z/p` by Gaussian elimination.
pub fn det_mod(mut m: Vec<u64>, n: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| m[i * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            det = p - det;
            if det == p {
                det = 0;
            }
        }
        let pivot = m[k * n + k];
        det = mul_mod(det, pivot, p);
        let inv = inv_mod(pivot, p);
        for i in k + 1..n {
            let f = mul_mod(m[i * n + k], inv, p);
            if f == 0 {
                continue;
            }
            for j in k + 1..n {
                let sub = mul_mod(f, m[k * n + j], p);
                m[i * n + j] = sub_mod(m[i * n + j], sub, p);
            }
        }
    }
    det
}

/// Coefficients (lowest first, `xs.len()` of them) of the polynomial through
/// `(xs[i], ys[i])` over `Z/p`, by Newton's divided differences.
pub fn interpolate_mod(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = sub_mod(dd[i], dd[i - 1], p);
            let den = sub_mod(xs[i], xs[i - level], p);
            dd[i] = mul_mod(num, inv_mod(den, p), p);
        }
    }
    let mut coeffs = vec![0u64; n];
    for i in (0..n).rev() {
        // coeffs = coeffs · (x - xs[i]) + dd[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if coeffs[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = add_mod(next[k + 1], coeffs[k], p);
            }
            next[k] = sub_mod(next[k], mul_mod(coeffs[k], xs[i], p), p);
        }
        next[0] = add_mod(next[0], dd[i], p);
        coeffs = next;
    }
    coeffs
}

/// Characteristic polynomial `det(xI - M)` over `Z/p`, lowest coefficient
/// first (`n + 1` entries), via reduction to upper Hessenberg form.
pub fn charpoly_mod(mut h: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
    let at = |i: usize, j: usize| i * n + j;
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[at(i, k)] != 0) else {
            continue;
        };
        if piv != k + 1 {
            for j in 0..n {
                h.swap(at(piv, j), at(k + 1, j));
            }
            for i in 0..n {
                h.swap(at(i, piv), at(i, k + 1));
            }
        }
        let inv = inv_mod(h[at(k + 1, k)], p);
        for i in k + 2..n {
            let f = mul_mod(h[at(i, k)], inv, p);
            if f == 0 {
                continue;
            }
            // row_i -= f·row_{k+1}; col_{k+1} += f·col_i
            for j in 0..n {
                let s = mul_mod(f, h[at(k + 1, j)], p);
                h[at(i, j)] = sub_mod(h[at(i, j)], s, p);
            }
            for r in 0..n {
                let s = mul_mod(f, h[at(r, i)], p);
                h[at(r, k + 1)] = add_mod(h[at(r, k + 1)], s, p);
            }
        }
    }
    // polys[m] = charpoly of the leading m×m block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mut next = vec![0u64; m + 1];
        let prev = &polys[m - 1];
        let diag = h[at(m - 1, m - 1)];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = add_mod(next[k + 1], c, p);
            next[k] = sub_mod(next[k], mul_mod(c, diag, p), p);
        }
        let mut prod = 1u64;
        for i in (1..m).rev() {
            prod = mul_mod(prod, h[at(i, i - 1)], p);
            if prod == 0 {
                break;
            }
            let coef = mul_mod(prod, h[at(i - 1, m - 1)], p);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[i - 1].iter().enumerate() {
                next[k] = sub_mod(next[k], mul_mod(coef, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n + 1 entries")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime_and_descending() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime(p) && p < 1 << 62));
        assert!(!is_prime(561) && is_prime(1_000_000_007));
    }

    #[test]
    fn crt_recovers_negative_values() {
        let values = [BigInt::from(-123_456_789_012_345_678i64) * 1000, BigInt::from(42)];
        let mut crt = Crt::new(2);
        for p in primes().take(2) {
            let r: Vec<u64> = values.iter().map(|v| reduce(v, p)).collect();
            crt.add(p, &r);
        }
        assert_eq!(crt.symmetric(), values.to_vec());
    }

    #[test]
    fn interpolation_through_known_cubic() {
        let p = 1_000_000_007;
        let f = |x: u64| (3 * x * x * x + 2 * x + 5) % p;
        let xs = [0, 1, 2, 3];
        let ys: Vec<u64> = xs.iter().map(|&x| f(x)).collect();
        assert_eq!(interpolate_mod(&xs, &ys, p), vec![5, 2, 0, 3]);
    }

    #[test]
    fn charpoly_of_small_matrix() {
        let p = 1_000_000_007;
        // [[2,1],[1,2]] -> x^2 - 4x + 3
        assert_eq!(charpoly_mod(vec![2, 1, 1, 2], 2, p), vec![3, p - 4, 1]);
        // cyclic permutation of 3 points -> x^3 - 1
        assert_eq!(charpoly_mod(vec![0, 1, 0, 0, 0, 1, 1, 0, 0], 3, p), vec![p - 1, 0, 0, 1]);
    }
}
