//! Reference checks: every stored polynomial, matrix, permutation, neighborhood
//! and normality verdict recomputed from scratch and compared exactly.
//!
//! The reference values live in `golden/reference.json`. Polynomials are
//! stored in factored form and expanded at load time.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basilica::build_schreier;
use crate::covering::{
    frobenius_permutations, is_normal, true_monodromy_order, CoverSpec, GroupOrder, Permutation, DEFAULT_GROUP_CAP,
};
use crate::multigraph::{adjacency_matrix, verify_isomorphism, IntMatrix, PortMatching, VertexMap, VertexOrder};
use crate::products::{concatenation_label, generalized_replacement, zigzag_c4};
use crate::zeta::{
    artin_matrices, artin_reciprocal, char_poly, characters, divisibility_check, factorization_check,
    ihara_reciprocal, parse_factored, twisted_adjacency, Character, Divisibility, GroupLabeling, IntPolynomial,
};
use crate::{Error, Result};

/// The bundled reference file.
pub const BUNDLED_REFERENCE: &str = include_str!("../golden/reference.json");

#[derive(Clone, Debug, Deserialize)]
pub struct PermutationRef {
    pub e_a: String,
    pub e_b: String,
    pub e_a_after_e_b: String,
    pub composition_order: u128,
}

#[derive(Clone, Debug, Deserialize)]
pub struct NormalityRef {
    pub normal: bool,
    #[serde(default)]
    pub monodromy_order: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Reference {
    pub orders: BTreeMap<String, Vec<String>>,
    pub polynomials: BTreeMap<String, String>,
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
    pub permutations: BTreeMap<String, PermutationRef>,
    pub neighborhoods: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    pub normality: BTreeMap<String, NormalityRef>,
}

fn missing(kind: &str, key: &str) -> Error {
    Error::Parse(format!("reference {kind} {key:?} is missing"))
}

impl Reference {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn bundled() -> Result<Self> {
        Self::parse(BUNDLED_REFERENCE)
    }

    pub fn order(&self, key: &str) -> Result<&[String]> {
        self.orders.get(key).map(Vec::as_slice).ok_or_else(|| missing("order", key))
    }

    pub fn polynomial(&self, key: &str) -> Result<IntPolynomial> {
        parse_factored(self.polynomials.get(key).ok_or_else(|| missing("polynomial", key))?)
    }

    pub fn matrix(&self, key: &str) -> Result<IntMatrix> {
        IntMatrix::from_rows(self.matrices.get(key).ok_or_else(|| missing("matrix", key))?)
    }

    fn permutations(&self, key: &str) -> Result<&PermutationRef> {
        self.permutations.get(key).ok_or_else(|| missing("permutation set", key))
    }

    fn neighborhoods(&self, key: &str) -> Result<&BTreeMap<String, Vec<String>>> {
        self.neighborhoods.get(key).ok_or_else(|| missing("neighborhood table", key))
    }

    fn normality(&self, key: &str) -> Result<&NormalityRef> {
        self.normality.get(key).ok_or_else(|| missing("normality verdict", key))
    }
}

/// Result of one reference check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub group: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<8} {:<44} {}", self.group, self.name, self.detail)
    }
}

type Outcome = Result<(bool, String)>;
type CheckFn = fn(&Reference) -> Outcome;

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("zeta", "gamma2 zeta reciprocal", check_zeta_gamma2),
    ("zeta", "gamma3/gamma2 sign L-function", check_artin_gamma3),
    ("zeta", "gamma3 zeta factors over characters", check_factorization_gamma3),
    ("zeta", "gamma2 zeta divides gamma3 zeta", check_divisibility_gamma3),
    ("artin", "gamma3/gamma2 Artin matrices", check_matrices_gamma3),
    ("cover", "gamma5/gamma2 Frobenius permutations", check_frobenius_gamma5),
    ("cover", "gamma5/gamma2 normality", check_normality_gamma5),
    ("cover", "gamma3/gamma2 normality", check_normality_gamma3),
    ("product", "gamma1 grp gamma2 is gamma3", check_grp_1_2),
    ("product", "gamma3 grp gamma2 is gamma5", check_grp_3_2),
    ("zigzag", "zigzag1 zeta reciprocal", check_zeta_zigzag1),
    ("zigzag", "zigzag2/zigzag1 sign L-function", check_artin_zigzag2),
    ("zigzag", "zigzag2 zeta factors over characters", check_factorization_zigzag2),
    ("zigzag", "zigzag2/zigzag1 Artin matrices", check_matrices_zigzag2),
    ("zigzag", "zigzag2 characteristic polynomials", check_charpolys_zigzag2),
    ("zigzag", "zigzag2/zigzag1 neighborhoods", check_neighborhoods_zigzag2),
    ("zigzag", "zigzag3/zigzag1 neighborhoods", check_neighborhoods_zigzag3),
    ("zigzag", "zigzag2/zigzag1 normality", check_normality_zigzag2),
    ("zigzag", "zigzag3/zigzag1 normality", check_normality_zigzag3),
];

/// Names of the check groups accepted by [`run_checks`].
pub fn check_groups() -> Vec<&'static str> {
    let mut groups: Vec<&str> = CHECKS.iter().map(|c| c.0).collect();
    groups.dedup();
    groups
}

/// Run every check, or only those in `only` (a group name). A check that
/// errors counts as failed, with the error as its detail.
pub fn run_checks(reference: &Reference, only: Option<&str>) -> Result<Vec<CheckResult>> {
    if let Some(g) = only {
        if !check_groups().contains(&g) {
            return Err(Error::Parse(format!("unknown check group {g:?}; expected one of {:?}", check_groups())));
        }
    }
    Ok(CHECKS
        .iter()
        .filter(|(group, _, _)| only.is_none_or(|g| g == *group))
        .map(|&(group, name, check)| {
            let (passed, detail) = check(reference).unwrap_or_else(|e| (false, format!("error: {e}")));
            CheckResult { group, name, passed, detail }
        })
        .collect())
}

fn compare_poly(got: &IntPolynomial, expected: &IntPolynomial) -> (bool, String) {
    if got == expected {
        (true, format!("degree {}", got.degree().map_or(-1, |d| d as i64)))
    } else {
        (false, format!("got {got}, expected {expected}"))
    }
}

fn compare_matrix(name: &str, got: &IntMatrix, expected: &IntMatrix) -> Option<String> {
    (got != expected).then(|| format!("{name}: got {:?}, expected {:?}", got.to_i64_rows(), expected.to_i64_rows()))
}

fn sign_character(labeling: &GroupLabeling) -> Result<Character> {
    characters(labeling.group())?
        .into_iter()
        .find(|chi| !chi.is_trivial())
        .ok_or_else(|| Error::InvalidCharacter("group has no nontrivial character".into()))
}

fn labelled(c: &CoverSpec) -> Result<GroupLabeling> {
    GroupLabeling::from_deck_group(c)
}

fn check_zeta_gamma2(r: &Reference) -> Outcome {
    let g = build_schreier(2)?;
    Ok(compare_poly(&ihara_reciprocal(&g, &VertexOrder::identity(&g))?, &r.polynomial("zeta_gamma2")?))
}

fn check_artin_gamma3(r: &Reference) -> Outcome {
    let c = CoverSpec::schreier_cover(1, 2)?;
    let lab = labelled(&c)?;
    let got = artin_reciprocal(&c, &lab, &sign_character(&lab)?)?;
    Ok(compare_poly(&got, &r.polynomial("artin_sign_gamma3_over_gamma2")?))
}

fn check_factorization_gamma3(r: &Reference) -> Outcome {
    let c = CoverSpec::schreier_cover(1, 2)?;
    let lab = labelled(&c)?;
    let expected = r.polynomial("zeta_gamma2")? * r.polynomial("artin_sign_gamma3_over_gamma2")?;
    let got = ihara_reciprocal(&c.cover, &VertexOrder::identity(&c.cover))?;
    let (ok, detail) = compare_poly(&got, &expected);
    Ok((ok && factorization_check(&c, &lab)?, detail))
}

fn check_divisibility_gamma3(_: &Reference) -> Outcome {
    let (g2, g3) = (build_schreier(2)?, build_schreier(3)?);
    let base = ihara_reciprocal(&g2, &VertexOrder::identity(&g2))?;
    let cover = ihara_reciprocal(&g3, &VertexOrder::identity(&g3))?;
    Ok(match divisibility_check(&base, &cover)? {
        Divisibility::Quotient(q) => (true, format!("quotient of degree {}", q.degree().unwrap_or(0))),
        Divisibility::Remainder(rem) => (false, format!("remainder {rem}")),
    })
}

fn artin_pair(c: &CoverSpec, order: &[String]) -> Result<(IntMatrix, IntMatrix, IntMatrix)> {
    let lab = labelled(c)?;
    let ord = VertexOrder::from_labels(&c.base, order)?;
    let mats = artin_matrices(c, &lab, &ord)?;
    let e = lab.group().identity();
    let sigma = (0..mats.len()).find(|&g| g != e).ok_or(Error::NotNormal)?;
    let twisted = twisted_adjacency(&mats, &sign_character(&lab)?)?;
    Ok((mats[e].clone(), mats[sigma].clone(), twisted))
}

fn check_matrices_gamma3(r: &Reference) -> Outcome {
    let c = CoverSpec::schreier_cover(1, 2)?;
    let (id, sigma, twisted) = artin_pair(&c, r.order("gamma2")?)?;
    let diffs: Vec<String> = [
        compare_matrix("A(1)", &id, &r.matrix("gamma3_over_gamma2_identity")?),
        compare_matrix("A(sigma)", &sigma, &r.matrix("gamma3_over_gamma2_sigma")?),
        compare_matrix("A_sigma", &twisted, &r.matrix("gamma3_over_gamma2_twisted")?),
    ]
    .into_iter()
    .flatten()
    .collect();
    Ok((diffs.is_empty(), if diffs.is_empty() { "3 matrices entrywise".into() } else { diffs.join("; ") }))
}

fn check_frobenius_gamma5(r: &Reference) -> Outcome {
    let c = CoverSpec::schreier_cover(3, 2)?.with_sheet_order(r.order("gamma5_over_gamma2_sheets")?)?;
    let perms: BTreeMap<String, Permutation> = frobenius_permutations(&c)?.into_iter().collect();
    let get = |name: &str| perms.get(name).cloned().ok_or_else(|| missing("cut edge", name));
    let (ea, eb) = (get("e_a")?, get("e_b")?);
    let product = ea.compose(&eb)?;
    let want = r.permutations("gamma5_over_gamma2")?;
    let ok = ea.to_string() == want.e_a
        && eb.to_string() == want.e_b
        && product.to_string() == want.e_a_after_e_b
        && product.order() == want.composition_order;
    Ok((ok, format!("e_a={ea} e_b={eb} e_a∘e_b={product} of order {}", product.order())))
}

fn check_normality(c: &CoverSpec, want: &NormalityRef) -> Outcome {
    let normal = is_normal(c)?;
    let monodromy = true_monodromy_order(c, DEFAULT_GROUP_CAP)?;
    let order_ok = want.monodromy_order.is_none_or(|k| monodromy == GroupOrder::Exact(k));
    Ok((
        normal == want.normal && order_ok,
        format!("normal={normal} (expected {}), monodromy order {monodromy}", want.normal),
    ))
}

fn check_normality_gamma5(r: &Reference) -> Outcome {
    check_normality(&CoverSpec::schreier_cover(3, 2)?, r.normality("gamma5_over_gamma2")?)
}

fn check_normality_gamma3(r: &Reference) -> Outcome {
    check_normality(&CoverSpec::schreier_cover(1, 2)?, r.normality("gamma3_over_gamma2")?)
}

fn check_grp(n: usize, r: usize) -> Outcome {
    let p = generalized_replacement(n, r)?;
    let g = build_schreier(n + r)?;
    let f = VertexMap::from_fn(&p, &g, concatenation_label)?;
    let verdict = verify_isomorphism(&p, &g, &f, PortMatching::SameLabel);
    Ok((verdict.is_isomorphic(), format!("f(v,u)=uv: {verdict:?}")))
}

fn check_grp_1_2(_: &Reference) -> Outcome {
    check_grp(1, 2)
}

fn check_grp_3_2(_: &Reference) -> Outcome {
    check_grp(3, 2)
}

fn check_zeta_zigzag1(r: &Reference) -> Outcome {
    let g = zigzag_c4(1)?;
    Ok(compare_poly(&ihara_reciprocal(&g, &VertexOrder::identity(&g))?, &r.polynomial("zeta_zigzag1")?))
}

fn check_artin_zigzag2(r: &Reference) -> Outcome {
    let c = CoverSpec::zigzag_cover(1, 1)?;
    let lab = labelled(&c)?;
    let got = artin_reciprocal(&c, &lab, &sign_character(&lab)?)?;
    Ok(compare_poly(&got, &r.polynomial("artin_sign_zigzag2_over_zigzag1")?))
}

fn check_factorization_zigzag2(r: &Reference) -> Outcome {
    let c = CoverSpec::zigzag_cover(1, 1)?;
    let lab = labelled(&c)?;
    let expected = r.polynomial("zeta_zigzag1")? * r.polynomial("artin_sign_zigzag2_over_zigzag1")?;
    let got = ihara_reciprocal(&c.cover, &VertexOrder::identity(&c.cover))?;
    let (ok, detail) = compare_poly(&got, &expected);
    Ok((ok && factorization_check(&c, &lab)?, detail))
}

fn check_matrices_zigzag2(r: &Reference) -> Outcome {
    let c = CoverSpec::zigzag_cover(1, 1)?;
    let (id, sigma, _) = artin_pair(&c, r.order("zigzag1")?)?;
    let diffs: Vec<String> = [
        compare_matrix("A(1)", &id, &r.matrix("zigzag2_over_zigzag1_identity")?),
        compare_matrix("A(Sigma)", &sigma, &r.matrix("zigzag2_over_zigzag1_sigma")?),
    ]
    .into_iter()
    .flatten()
    .collect();
    Ok((diffs.is_empty(), if diffs.is_empty() { "2 matrices entrywise".into() } else { diffs.join("; ") }))
}

fn check_charpolys_zigzag2(r: &Reference) -> Outcome {
    let c = CoverSpec::zigzag_cover(1, 1)?;
    let cover_cp = char_poly(&adjacency_matrix(&c.cover, &VertexOrder::identity(&c.cover))?);
    let (_, _, twisted) = artin_pair(&c, r.order("zigzag1")?)?;
    let twisted_cp = char_poly(&twisted);
    let (want_cover, want_twisted) =
        (r.polynomial("charpoly_zigzag2")?, r.polynomial("charpoly_twisted_zigzag2_over_zigzag1")?);
    let ok = cover_cp == want_cover && twisted_cp == want_twisted;
    Ok((ok, format!("cover {}, twisted {}", cover_cp.display_in("x"), twisted_cp.display_in("x"))))
}

/// `"4''"` is the fourth base vertex (1-based, in `base_order`) on the sheet
/// with index 2.
fn decode_vertex(c: &CoverSpec, base_order: &VertexOrder, label: &str) -> Result<usize> {
    let digits = label.trim_end_matches('\'');
    let sheet = label.len() - digits.len();
    let k: usize = digits.parse().map_err(|_| Error::Parse(format!("bad table vertex {label:?}")))?;
    if k == 0 || k > base_order.len() || sheet >= c.sheet_count() {
        return Err(Error::Parse(format!("table vertex {label:?} out of range")));
    }
    Ok(c.lift(base_order.vertex_at(k - 1), sheet))
}

fn check_neighborhoods(c: &CoverSpec, base_order: &[String], table: &BTreeMap<String, Vec<String>>) -> Outcome {
    let ord = VertexOrder::from_labels(&c.base, base_order)?;
    let mut bad = Vec::new();
    for (vertex, expected) in table {
        let x = decode_vertex(c, &ord, vertex)?;
        let mut want = expected.iter().map(|y| decode_vertex(c, &ord, y)).collect::<Result<Vec<_>>>()?;
        let mut got = c.cover.neighbors(x);
        want.sort_unstable();
        got.sort_unstable();
        if want != got {
            let names: Vec<&str> = got.iter().map(|&y| c.cover.label(y)).collect();
            bad.push(format!("{vertex} = {} has neighbors {names:?}", c.cover.label(x)));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("{} rows", table.len()) } else { bad.join("; ") }))
}

fn check_neighborhoods_zigzag2(r: &Reference) -> Outcome {
    let c = CoverSpec::zigzag_cover(1, 1)?;
    check_neighborhoods(&c, r.order("zigzag1")?, r.neighborhoods("zigzag2_over_zigzag1")?)
}

fn check_neighborhoods_zigzag3(r: &Reference) -> Outcome {
    let c = CoverSpec::zigzag_cover(2, 1)?.with_sheet_order(r.order("zigzag3_over_zigzag1_sheets")?)?;
    check_neighborhoods(&c, r.order("zigzag1")?, r.neighborhoods("zigzag3_over_zigzag1")?)
}

fn check_normality_zigzag2(r: &Reference) -> Outcome {
    check_normality(&CoverSpec::zigzag_cover(1, 1)?, r.normality("zigzag2_over_zigzag1")?)
}

fn check_normality_zigzag3(r: &Reference) -> Outcome {
    check_normality(&CoverSpec::zigzag_cover(2, 1)?, r.normality("zigzag3_over_zigzag1")?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_reference_parses() {
        let r = Reference::bundled().unwrap();
        assert_eq!(r.polynomial("zeta_gamma2").unwrap().degree(), Some(16));
        assert_eq!(r.matrix("zigzag2_over_zigzag1_identity").unwrap().dim(), 8);
    }

    #[test]
    fn zeta_group_passes() {
        let results = run_checks(&Reference::bundled().unwrap(), Some("zeta")).unwrap();
        assert_eq!(results.len(), 4);
        assert!(results.iter().all(|c| c.passed), "{results:#?}");
    }

    #[test]
    fn corrupted_value_is_named() {
        let text = BUNDLED_REFERENCE.replace("(3t^2+1)(9t^4-2t^2+1)", "(3t^2+1)(9t^4-2t^2+2)");
        let results = run_checks(&Reference::parse(&text).unwrap(), Some("zeta")).unwrap();
        let failed: Vec<&str> = results.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert!(failed.contains(&"gamma2 zeta reciprocal"), "{failed:?}");
    }

    #[test]
    fn unknown_group_is_rejected() {
        assert!(run_checks(&Reference::bundled().unwrap(), Some("nope")).is_err());
    }

    #[test]
    fn table_vertex_decoding() {
        let c = CoverSpec::zigzag_cover(1, 1).unwrap();
        let ord = VertexOrder::identity(&c.base);
        let x = decode_vertex(&c, &ord, "2'").unwrap();
        assert_eq!(c.sheet_of(x), 1);
        assert_eq!(c.proj(x), ord.vertex_at(1));
        assert!(decode_vertex(&c, &ord, "9").is_err());
    }
}
