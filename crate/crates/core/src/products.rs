//! The generalized replacement product `Γ_n ⓖ Γ_r`, the zig-zag product and
//! the port-labelled 4-cycle used as its small factor.

use crate::basilica::{self, all_words, apply, Generator, Word, GENERATORS};
use crate::multigraph::{HalfEdge, RotationGraph};
use crate::{Error, Result, DEFAULT_MAX_LEVEL};

/// Label of a product vertex or port: `(x,y)`.
pub fn pair_label(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// Inverse of [`pair_label`]; splits at the top-level comma.
pub fn split_pair(label: &str) -> Option<(&str, &str)> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0i32;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    None
}

/// The 4-cycle on `{a, b^-1, b, a^-1}` with ports `A`, `B`:
/// `(a,B)-(b^-1,B)`, `(b^-1,A)-(b,A)`, `(b,B)-(a^-1,B)`, `(a^-1,A)-(a,A)`.
pub fn c4() -> RotationGraph {
    let mut b = RotationGraph::builder();
    for v in ["a", "b^-1", "b", "a^-1"] {
        b.add_vertex(v, ["A", "B"]).expect("fresh vertex");
    }
    for (v, p, w, q) in [
        ("a", "B", "b^-1", "B"),
        ("b^-1", "A", "b", "A"),
        ("b", "B", "a^-1", "B"),
        ("a^-1", "A", "a", "A"),
    ] {
        b.connect_labels(v, p, w, q).expect("valid C4 pairing");
    }
    b.build().expect("C4 is complete")
}

/// The generator of `Γ_n` that drives the lift of the base port `s ∈ {a, b}`
/// when the second factor has level `r`: `s` itself for even `r`, the other
/// one for odd `r`.
pub fn lift_generator(s: Generator, r: usize) -> Generator {
    match (s, r % 2) {
        (Generator::A, 1) => Generator::B,
        (Generator::B, 1) => Generator::A,
        _ => s,
    }
}

/// `Γ_n ⓖ Γ_r` with basepoint `u₀ = 0^r`.
pub fn generalized_replacement(n: usize, r: usize) -> Result<RotationGraph> {
    generalized_replacement_at(n, r, &Word::zeros(r)?)
}

/// `Γ_n ⓖ Γ_r` cut at an arbitrary basepoint of `X^r`.
///
/// Vertices are `(v,u)`. The base edges `e_a = {(u₀,a), (a(u₀),a^-1)}` and
/// `e_b = {(u₀,b), (b(u₀),b^-1)}` are lifted across sheets along `Γ_n`; every
/// other edge of `Γ_r` is copied into each sheet.
pub fn generalized_replacement_at(n: usize, r: usize, basepoint: &Word) -> Result<RotationGraph> {
    if n == 0 || r == 0 || n + r > DEFAULT_MAX_LEVEL {
        return Err(Error::LevelOutOfRange { level: n + r, cap: DEFAULT_MAX_LEVEL });
    }
    if basepoint.len() != r {
        return Err(Error::ProductMismatch(format!(
            "basepoint {basepoint} is not a word of length {r}"
        )));
    }
    let base = basilica::build_schreier(r)?;
    let outer: Vec<Word> = all_words(n).collect();
    let inner_count = 1usize << r;
    let id = |v: usize, u: usize| v * inner_count + u;

    let mut b = RotationGraph::builder();
    for v in &outer {
        for u in 0..inner_count {
            b.add_vertex(pair_label(&v.to_string(), base.label(u)), GENERATORS.iter().map(|g| g.label()))?;
        }
    }

    let u0 = basepoint.index();
    for s in [Generator::A, Generator::B] {
        let head = apply(s, basepoint)?.index();
        let driver = lift_generator(s, r);
        for v in &outer {
            let moved = apply(driver, v)?.index();
            b.connect(
                HalfEdge { vertex: id(v.index(), u0), port: s.port() },
                HalfEdge { vertex: id(moved, head), port: s.inverse().port() },
            )?;
        }
    }

    let cut = |h: HalfEdge| {
        h.vertex == u0 && (h.port == Generator::A.port() || h.port == Generator::B.port())
    };
    for (x, y) in base.edges() {
        if cut(x) || cut(y) {
            continue;
        }
        for v in 0..outer.len() {
            b.connect(
                HalfEdge { vertex: id(v, x.vertex), port: x.port },
                HalfEdge { vertex: id(v, y.vertex), port: y.port },
            )?;
        }
    }
    b.build()
}

/// `f(v,u) = uv`, the label map from `Γ_n ⓖ Γ_r` to `Γ_{n+r}`.
pub fn concatenation_label(label: &str) -> String {
    match split_pair(label) {
        Some((v, u)) => format!("{u}{v}"),
        None => label.to_string(),
    }
}

/// Whether `table` is a fixed-point-free involution on `0..table.len()`.
pub fn double_rotation_check(table: &[usize]) -> bool {
    table
        .iter()
        .enumerate()
        .all(|(h, &t)| t < table.len() && t != h && table[t] == h)
}

/// Port label alphabet of a graph whose vertices all carry the same ports.
fn uniform_ports(g: &RotationGraph) -> Result<Vec<String>> {
    let first = g.ports(0).to_vec();
    if (0..g.vertex_count()).any(|v| g.ports(v) != first.as_slice()) {
        return Err(Error::ProductMismatch("port alphabet is not uniform".into()));
    }
    Ok(first)
}

/// Dense rotation table of `G1 ⓩ G2` over half-edge ids
/// `((v·|V2| + k)·d2 + i)·d2 + j`.
///
/// Rule: `Rot((v,k),(i,j)) = ((w,l),(j',i'))` where `Rot_G2(k,i) = (k',i')`,
/// `Rot_G1(v,k') = (w,l')`, `Rot_G2(l',j) = (l,j')`. `G2`'s vertices are
/// identified with `G1`'s ports by name.
pub fn zigzag_rotation_table(g1: &RotationGraph, g2: &RotationGraph) -> Result<Vec<usize>> {
    if g1.vertex_count() == 0 || g2.vertex_count() == 0 {
        return Err(Error::ProductMismatch("empty factor".into()));
    }
    let ports1 = uniform_ports(g1)?;
    let ports2 = uniform_ports(g2)?;
    if ports1.len() != g2.vertex_count() {
        return Err(Error::ProductMismatch(format!(
            "first factor has degree {} but second factor has {} vertices",
            ports1.len(),
            g2.vertex_count()
        )));
    }
    // G2 vertex index -> G1 port index, and back.
    let to_port: Vec<usize> = (0..g2.vertex_count())
        .map(|k| {
            ports1.iter().position(|p| p == g2.label(k)).ok_or_else(|| {
                Error::ProductMismatch(format!("{} is not a port of the first factor", g2.label(k)))
            })
        })
        .collect::<Result<_>>()?;
    let mut to_vertex = vec![0; ports1.len()];
    for (k, &p) in to_port.iter().enumerate() {
        to_vertex[p] = k;
    }

    let n2 = g2.vertex_count();
    let d2 = ports2.len();
    let id = |v: usize, k: usize, i: usize, j: usize| ((v * n2 + k) * d2 + i) * d2 + j;
    let mut table = vec![0; g1.vertex_count() * n2 * d2 * d2];
    for v in 0..g1.vertex_count() {
        for k in 0..n2 {
            for i in 0..d2 {
                let HalfEdge { vertex: k1, port: i1 } = g2.rot(HalfEdge { vertex: k, port: i });
                let HalfEdge { vertex: w, port: l1 } =
                    g1.rot(HalfEdge { vertex: v, port: to_port[k1] });
                for j in 0..d2 {
                    let HalfEdge { vertex: l, port: j1 } =
                        g2.rot(HalfEdge { vertex: to_vertex[l1], port: j });
                    table[id(v, k, i, j)] = id(w, l, j1, i1);
                }
            }
        }
    }
    Ok(table)
}

/// `G1 ⓩ G2` with vertices `(v,k)` and ports `(i,j)`.
pub fn zigzag(g1: &RotationGraph, g2: &RotationGraph) -> Result<RotationGraph> {
    let table = zigzag_rotation_table(g1, g2)?;
    if !double_rotation_check(&table) {
        return Err(Error::ProductMismatch("zig-zag rotation is not an involution".into()));
    }
    let ports2 = uniform_ports(g2)?;
    let port_labels: Vec<String> = ports2
        .iter()
        .flat_map(|i| ports2.iter().map(move |j| pair_label(i, j)))
        .collect();
    let mut b = RotationGraph::builder();
    for v in g1.vertices() {
        for k in g2.vertices() {
            b.add_vertex(pair_label(v, k), port_labels.iter().cloned())?;
        }
    }
    let d = port_labels.len();
    for (h, &t) in table.iter().enumerate() {
        if h < t {
            b.connect(
                HalfEdge { vertex: h / d, port: h % d },
                HalfEdge { vertex: t / d, port: t % d },
            )?;
        }
    }
    b.build()
}

/// `Γ_n ⓩ C₄`.
pub fn zigzag_c4(n: usize) -> Result<RotationGraph> {
    zigzag(&basilica::build_schreier(n)?, &c4())
}

/// Ports walked alternately by the spanning path inside an `a`-fixed sheet:
/// `a, b^-1` for even `r`, `b, a^-1` for odd `r`.
pub fn alternation_ports(r: usize) -> [Generator; 2] {
    if r.is_multiple_of(2) {
        [Generator::A, Generator::BInv]
    } else {
        [Generator::B, Generator::AInv]
    }
}

/// Walk `2^{r+1} - 1` steps of the alternation from `(v, 0^r)` in `Γ_n ⓖ Γ_r`,
/// returning the `2^{r+1}` visited vertices.
pub fn alternation_path(product: &RotationGraph, r: usize, v: &Word) -> Result<Vec<usize>> {
    let ports = alternation_ports(r);
    let mut at = product.index_of(&pair_label(&v.to_string(), &Word::zeros(r)?.to_string()))?;
    let steps = (1usize << (r + 1)) - 1;
    let mut path = Vec::with_capacity(steps + 1);
    path.push(at);
    for k in 0..steps {
        at = product.target(at, ports[k % 2].port());
        path.push(at);
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basilica::build_schreier;
    use crate::multigraph::{verify_isomorphism, PortMatching, VertexMap};

    fn grp_iso(n: usize, r: usize) -> bool {
        let p = generalized_replacement(n, r).unwrap();
        let g = build_schreier(n + r).unwrap();
        let f = VertexMap::from_fn(&p, &g, concatenation_label).unwrap();
        verify_isomorphism(&p, &g, &f, PortMatching::SameLabel).is_isomorphic()
    }

    #[test]
    fn pair_labels_round_trip() {
        assert_eq!(split_pair("(01,a^-1)"), Some(("01", "a^-1")));
        assert_eq!(split_pair("((0,a),b)"), Some(("(0,a)", "b")));
        assert_eq!(split_pair("01"), None);
    }

    #[test]
    fn replacement_product_is_next_schreier_graph() {
        for total in 2..=7 {
            for n in 1..total {
                assert!(grp_iso(n, total - n), "Γ_{n} ⓖ Γ_{}", total - n);
            }
        }
    }

    #[test]
    fn lift_edges_match_base_edge_count() {
        for n in 1..=3 {
            for r in 1..=3 {
                let p = generalized_replacement(n, r).unwrap();
                let crossing = p
                    .edges()
                    .iter()
                    .filter(|(x, y)| {
                        split_pair(p.label(x.vertex)).unwrap().0
                            != split_pair(p.label(y.vertex)).unwrap().0
                    })
                    .count();
                // lifts of e_a and e_b: 2^n each, some of which stay in a sheet
                let lifts = p
                    .edges()
                    .iter()
                    .filter(|(x, y)| {
                        let ux = split_pair(p.label(x.vertex)).unwrap().1;
                        let uy = split_pair(p.label(y.vertex)).unwrap().1;
                        let zeros = "0".repeat(r);
                        (ux == zeros && x.port % 2 == 0) || (uy == zeros && y.port % 2 == 0)
                    })
                    .count();
                assert_eq!(lifts, 1 << (n + 1));
                assert!(crossing <= lifts);
            }
        }
    }

    #[test]
    fn c4_is_a_two_regular_cycle() {
        let c = c4();
        assert_eq!(c.is_regular(), Some(2));
        assert!(c.is_connected());
        assert!(double_rotation_check(c.rotation_table()));
    }

    #[test]
    fn zigzag_shapes() {
        for n in 1..=5 {
            let z = zigzag_c4(n).unwrap();
            assert_eq!(z.vertex_count(), 1 << (n + 2));
            assert_eq!(z.edge_count(), 1 << (n + 3));
            assert_eq!(z.is_regular(), Some(4));
        }
    }

    #[test]
    fn zigzag_neighborhood_of_gamma1() {
        let z = zigzag_c4(1).unwrap();
        let mut expected = vec!["(1,a)", "(0,a)", "(1,b)", "(0,b)"];
        expected.sort();
        assert_eq!(z.neighbor_labels("(0,a^-1)").unwrap(), expected);
    }

    #[test]
    fn neighborhoods_of_a_and_b_coincide() {
        for r in 1..=3 {
            let z = zigzag_c4(r).unwrap();
            for w in all_words(r) {
                let w = w.to_string();
                assert_eq!(
                    z.neighbor_labels(&pair_label(&w, "a")).unwrap(),
                    z.neighbor_labels(&pair_label(&w, "b")).unwrap()
                );
                assert_eq!(
                    z.neighbor_labels(&pair_label(&w, "a^-1")).unwrap(),
                    z.neighbor_labels(&pair_label(&w, "b^-1")).unwrap()
                );
            }
        }
    }

    #[test]
    fn corrupted_table_fails_double_rotation() {
        let z = zigzag_c4(1).unwrap();
        assert!(double_rotation_check(z.rotation_table()));
        let mut table = zigzag_rotation_table(&build_schreier(2).unwrap(), &c4()).unwrap();
        assert!(double_rotation_check(&table));
        table.swap(0, 1);
        assert!(!double_rotation_check(&table));
    }

    #[test]
    fn mismatched_factors_are_rejected() {
        assert!(zigzag(&c4(), &c4()).is_err());
        assert!(generalized_replacement_at(1, 2, &"0".parse().unwrap()).is_err());
    }

    #[test]
    fn alternative_basepoint_still_builds() {
        let p = generalized_replacement_at(2, 3, &"110".parse().unwrap()).unwrap();
        assert_eq!(p.is_regular(), Some(4));
        assert_eq!(p.vertex_count(), 32);
    }
}
