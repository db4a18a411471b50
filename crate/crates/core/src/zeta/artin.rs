//! Artin L-functions of abelian coverings for one-dimensional characters.

use num_bigint::BigInt;
use num_traits::One;

use super::det::{determinant, PolyMatrix};
use super::ihara::{ihara_reciprocal, one_minus_t_squared_pow};
use super::poly::IntPolynomial;
use crate::covering::{deck_transformations, CoverSpec};
use crate::multigraph::{IntMatrix, VertexOrder};
use crate::{Error, Result};

/// A finite abelian group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteAbelianGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        let bad = |m: &str| Error::InvalidCharacter(m.to_string());
        if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(bad("multiplication table is not square over the element list"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| bad("no identity element"))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(bad("element without inverse"));
            }
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return Err(bad("group is not abelian"));
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("multiplication is not associative"));
                    }
                }
            }
        }
        Ok(Self { names, table, identity })
    }

    /// `Z/nZ` with elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, table).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// A one-dimensional character with values in `{±1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<i64>,
}

impl Character {
    pub fn new(group: &FiniteAbelianGroup, values: Vec<i64>) -> Result<Self> {
        let n = group.order();
        if values.len() != n || values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidCharacter(format!("{values:?} is not a ±1 function on the group")));
        }
        let multiplicative =
            (0..n).all(|a| (0..n).all(|b| values[group.mul(a, b)] == values[a] * values[b]));
        if !multiplicative {
            return Err(Error::InvalidCharacter(format!("{values:?} is not multiplicative")));
        }
        Ok(Self { values })
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Self { values: vec![1; group.order()] }
    }

    pub fn value(&self, g: usize) -> i64 {
        self.values[g]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }
}

/// All characters of an elementary abelian 2-group (every character is
/// `±1`-valued there). Other groups have non-real characters and are rejected.
pub fn characters(group: &FiniteAbelianGroup) -> Result<Vec<Character>> {
    let n = group.order();
    let e = group.identity();
    if (0..n).any(|g| group.mul(g, g) != e) {
        return Err(Error::InvalidCharacter(
            "only elementary abelian 2-groups are supported (1-dimensional real characters)".into(),
        ));
    }
    // Greedy basis: each generator doubles the span.
    let mut span = vec![e];
    let mut basis = Vec::new();
    while span.len() < n {
        let g = (0..n).find(|g| !span.contains(g)).expect("span is proper");
        basis.push(g);
        let shifted: Vec<usize> = span.iter().map(|&s| group.mul(s, g)).collect();
        span.extend(shifted);
    }
    (0..1usize << basis.len())
        .map(|signs| {
            // Every element has a unique expression as a product of a basis subset.
            let mut values = vec![0i64; n];
            for subset in 0..1usize << basis.len() {
                let mut g = e;
                let mut v = 1;
                for (k, &b) in basis.iter().enumerate() {
                    if subset >> k & 1 == 1 {
                        g = group.mul(g, b);
                        if signs >> k & 1 == 1 {
                            v = -v;
                        }
                    }
                }
                values[g] = v;
            }
            Character::new(group, values)
        })
        .collect()
}

/// Sheets of a normal cover labelled by elements of its Galois group.
#[derive(Clone, Debug)]
pub struct GroupLabeling {
    group: FiniteAbelianGroup,
    sheet_of_element: Vec<usize>,
}

impl GroupLabeling {
    /// `sheet_of_element[g]` is the sheet labelled `g`. Checks that the number
    /// of edges between `(i,h)` and `(j,hg)` does not depend on `h`.
    pub fn new(c: &CoverSpec, group: FiniteAbelianGroup, sheet_of_element: Vec<usize>) -> Result<Self> {
        let n = group.order();
        let mut seen = vec![false; c.sheet_count()];
        if n != c.sheet_count() || sheet_of_element.iter().any(|&s| s >= n || std::mem::replace(&mut seen[s], true)) {
            return Err(Error::NotGroupLabeling("sheets and group elements are not in bijection".into()));
        }
        let labeling = Self { group, sheet_of_element };
        let nb = c.base.vertex_count();
        let e = labeling.group.identity();
        for i in 0..nb {
            for j in 0..nb {
                for g in 0..n {
                    let expected = labeling.count(c, i, e, j, g);
                    for h in 0..n {
                        let hg = labeling.group.mul(h, g);
                        if labeling.count(c, i, h, j, hg) != expected {
                            return Err(Error::NotGroupLabeling(format!(
                                "edges between ({},{}) and ({},{}) differ from the identity-sheet count",
                                c.base.label(i),
                                labeling.group.name(h),
                                c.base.label(j),
                                labeling.group.name(hg)
                            )));
                        }
                    }
                }
            }
        }
        Ok(labeling)
    }

    /// Label sheets through the deck group: the sheet reached from the first
    /// sheet by a deck map is named after that map. Requires a normal cover
    /// whose deck maps permute whole sheets.
    pub fn from_deck_group(c: &CoverSpec) -> Result<Self> {
        let decks = deck_transformations(c);
        let ns = c.sheet_count();
        if decks.len() != ns {
            return Err(Error::NotNormal);
        }
        let nb = c.base.vertex_count();
        // sheet_perm[d][s]: sheet that deck d sends sheet s to.
        let mut sheet_perm = Vec::with_capacity(ns);
        for d in &decks {
            let mut perm = Vec::with_capacity(ns);
            for s in 0..ns {
                let target = c.sheet_of(d.apply(c.lift(0, s)));
                if (0..nb).any(|v| c.sheet_of(d.apply(c.lift(v, s))) != target) {
                    return Err(Error::NotGroupLabeling("a deck map splits a sheet".into()));
                }
                perm.push(target);
            }
            sheet_perm.push(perm);
        }
        // Order elements by the sheet they send the first sheet to.
        let mut by_sheet = vec![usize::MAX; ns];
        for (d, perm) in sheet_perm.iter().enumerate() {
            by_sheet[perm[0]] = d;
        }
        let names = c.sheet_keys().to_vec();
        let table = (0..ns)
            .map(|a| {
                (0..ns)
                    .map(|b| {
                        // (d_a ∘ d_b)(sheet 0) = d_a(sheet b)
                        sheet_perm[by_sheet[a]][b]
                    })
                    .collect()
            })
            .collect();
        let group = FiniteAbelianGroup::new(names, table)?;
        Self::new(c, group, (0..ns).collect())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn sheet(&self, g: usize) -> usize {
        self.sheet_of_element[g]
    }

    /// Half-edges at the lift of base vertex `i` on sheet `g` whose other end
    /// is the lift of `j` on sheet `h`. Loops count twice.
    fn count(&self, c: &CoverSpec, i: usize, g: usize, j: usize, h: usize) -> usize {
        let x = c.lift(i, self.sheet(g));
        let y = c.lift(j, self.sheet(h));
        c.cover.multiplicity(x, y)
    }
}

/// `A(g)` for every group element `g`, rows and columns in base order `order`.
pub fn artin_matrices(c: &CoverSpec, labeling: &GroupLabeling, order: &VertexOrder) -> Result<Vec<IntMatrix>> {
    let nb = c.base.vertex_count();
    if order.len() != nb {
        return Err(Error::IncompleteOrder { got: order.len(), expected: nb });
    }
    let e = labeling.group.identity();
    Ok((0..labeling.group.order())
        .map(|g| {
            let mut m = IntMatrix::zeros(nb);
            for i in 0..nb {
                for j in 0..nb {
                    let k = labeling.count(c, order.vertex_at(i), e, order.vertex_at(j), g);
                    m.set(i, j, BigInt::from(k));
                }
            }
            m
        })
        .collect())
}

/// `A_χ = Σ_g χ(g) A(g)`.
pub fn twisted_adjacency(mats: &[IntMatrix], chi: &Character) -> Result<IntMatrix> {
    let n = mats.first().map_or(0, IntMatrix::dim);
    mats.iter()
        .enumerate()
        .try_fold(IntMatrix::zeros(n), |acc, (g, m)| acc.checked_add(&m.scaled(&BigInt::from(chi.value(g)))))
}

/// `(1 − t²)^{|E|−|V|} det(I − A_χ t + Q t²)` over the base.
pub fn artin_reciprocal(c: &CoverSpec, labeling: &GroupLabeling, chi: &Character) -> Result<IntPolynomial> {
    let order = VertexOrder::identity(&c.base);
    let a = twisted_adjacency(&artin_matrices(c, labeling, &order)?, chi)?;
    let q: Vec<BigInt> = (0..c.base.vertex_count())
        .map(|v| BigInt::from(c.base.degree(v)) - BigInt::one())
        .collect();
    let det = determinant(&PolyMatrix::bass(&a, &q)?);
    let exponent = c
        .base
        .edge_count()
        .checked_sub(c.base.vertex_count())
        .ok_or_else(|| Error::DegreeTooSmall(c.base.label(0).to_string()))?;
    Ok(one_minus_t_squared_pow(exponent) * det)
}

/// `ζ_cover⁻¹ = ∏_χ L(t, χ)⁻¹` over all characters of the Galois group.
pub fn factorization_check(c: &CoverSpec, labeling: &GroupLabeling) -> Result<bool> {
    let lhs = ihara_reciprocal(&c.cover, &VertexOrder::identity(&c.cover))?;
    let rhs = characters(labeling.group())?
        .iter()
        .map(|chi| artin_reciprocal(c, labeling, chi))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .product::<IntPolynomial>();
    Ok(lhs == rhs)
}
