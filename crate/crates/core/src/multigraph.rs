//! Port-labelled multigraphs encoded as an involution on half-edges.
//!
//! A half-edge is a pair `(vertex, port)`. The rotation map `rot` pairs every
//! half-edge with exactly one *other* half-edge; a loop is two distinct
//! half-edges at the same vertex. This one representation covers the Schreier
//! graphs, the 4-cycle partner and every product built from them.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub vertex: usize,
    pub port: usize,
}

#[derive(Clone, Debug)]
pub struct RotationGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    ports: Vec<Vec<String>>,
    offsets: Vec<usize>,
    owner: Vec<HalfEdge>,
    rot: Vec<usize>,
}

impl RotationGraph {
    pub fn builder() -> RotationGraphBuilder {
        RotationGraphBuilder::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn half_edge_count(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rot.len() / 2
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn ports(&self, v: usize) -> &[String] {
        &self.ports[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.ports[v].len()
    }

    pub fn port_index(&self, v: usize, port: &str) -> Option<usize> {
        self.ports[v].iter().position(|p| p == port)
    }

    pub fn half_edge_id(&self, h: HalfEdge) -> usize {
        self.offsets[h.vertex] + h.port
    }

    pub fn half_edge(&self, id: usize) -> HalfEdge {
        self.owner[id]
    }

    pub fn rot(&self, h: HalfEdge) -> HalfEdge {
        self.owner[self.rot[self.half_edge_id(h)]]
    }

    /// The dense rotation table: `table[id] = rot(id)` over half-edge ids.
    pub fn rotation_table(&self) -> &[usize] {
        &self.rot
    }

    /// Vertex reached from `v` through `port`.
    pub fn target(&self, v: usize, port: usize) -> usize {
        self.rot(HalfEdge { vertex: v, port }).vertex
    }

    /// Endpoints of all half-edges at `v`, in port order. A loop contributes
    /// `v` twice.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.degree(v)).map(|p| self.target(v, p)).collect()
    }

    /// Label-level neighbor multiset, sorted.
    pub fn neighbor_labels(&self, label: &str) -> Result<Vec<String>> {
        let v = self.index_of(label)?;
        let mut out: Vec<String> = self
            .neighbors(v)
            .into_iter()
            .map(|w| self.vertices[w].clone())
            .collect();
        out.sort();
        Ok(out)
    }

    /// One representative `(h, rot(h))` per edge, with `h` the smaller id.
    pub fn edges(&self) -> Vec<(HalfEdge, HalfEdge)> {
        (0..self.rot.len())
            .filter(|&id| id < self.rot[id])
            .map(|id| (self.owner[id], self.owner[self.rot[id]]))
            .collect()
    }

    /// Number of half-edges at `u` whose partner sits at `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        (0..self.degree(u)).filter(|&p| self.target(u, p) == v).count()
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.ports.first().map(Vec::len)?;
        self.ports.iter().all(|p| p.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        let all = vec![true; self.vertex_count()];
        self.is_connected_within(&all)
    }

    /// Connectivity of the subgraph induced on the vertices flagged in `keep`.
    /// The empty vertex set counts as connected.
    pub fn is_connected_within(&self, keep: &[bool]) -> bool {
        let Some(start) = keep.iter().position(|&k| k) else {
            return true;
        };
        let mut seen = vec![false; self.vertex_count()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == keep.iter().filter(|&&k| k).count()
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson::from_graph(self);
        serde_json::to_string_pretty(&doc).expect("graph JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphJson = serde_json::from_str(text)?;
        doc.into_graph()
    }
}

#[derive(Default)]
pub struct RotationGraphBuilder {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    ports: Vec<Vec<String>>,
    pairing: Vec<Vec<Option<HalfEdge>>>,
}

impl RotationGraphBuilder {
    pub fn add_vertex<S, P>(&mut self, label: S, ports: P) -> Result<usize>
    where
        S: Into<String>,
        P: IntoIterator,
        P::Item: Into<String>,
    {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(Error::DuplicateVertex(label));
        }
        let ports: Vec<String> = ports.into_iter().map(Into::into).collect();
        let id = self.vertices.len();
        self.index.insert(label.clone(), id);
        self.vertices.push(label);
        self.pairing.push(vec![None; ports.len()]);
        self.ports.push(ports);
        Ok(id)
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn port(&self, v: usize, port: &str) -> Result<usize> {
        self.ports[v]
            .iter()
            .position(|p| p == port)
            .ok_or_else(|| Error::UnknownPort {
                vertex: self.vertices[v].clone(),
                port: port.to_string(),
            })
    }

    pub fn is_paired(&self, h: HalfEdge) -> bool {
        self.pairing[h.vertex][h.port].is_some()
    }

    /// Pair two distinct half-edges.
    pub fn connect(&mut self, a: HalfEdge, b: HalfEdge) -> Result<()> {
        for h in [a, b] {
            if h.vertex >= self.vertices.len() || h.port >= self.ports[h.vertex].len() {
                return Err(Error::UnknownPort {
                    vertex: self.vertices.get(h.vertex).cloned().unwrap_or_default(),
                    port: h.port.to_string(),
                });
            }
            if self.is_paired(h) || a == b {
                return Err(Error::HalfEdgeReused {
                    vertex: self.vertices[h.vertex].clone(),
                    port: self.ports[h.vertex][h.port].clone(),
                });
            }
        }
        self.pairing[a.vertex][a.port] = Some(b);
        self.pairing[b.vertex][b.port] = Some(a);
        Ok(())
    }

    pub fn connect_labels(&mut self, v: &str, p: &str, w: &str, q: &str) -> Result<()> {
        let (v, w) = (self.vertex(v)?, self.vertex(w)?);
        let a = HalfEdge { vertex: v, port: self.port(v, p)? };
        let b = HalfEdge { vertex: w, port: self.port(w, q)? };
        self.connect(a, b)
    }

    pub fn build(self) -> Result<RotationGraph> {
        let mut offsets = Vec::with_capacity(self.vertices.len() + 1);
        let mut owner = Vec::new();
        offsets.push(0);
        for (v, ports) in self.ports.iter().enumerate() {
            for p in 0..ports.len() {
                owner.push(HalfEdge { vertex: v, port: p });
            }
            offsets.push(owner.len());
        }
        let mut rot = vec![0; owner.len()];
        for (id, h) in owner.iter().enumerate() {
            let partner = self.pairing[h.vertex][h.port].ok_or_else(|| Error::HalfEdgeUnpaired {
                vertex: self.vertices[h.vertex].clone(),
                port: self.ports[h.vertex][h.port].clone(),
            })?;
            rot[id] = offsets[partner.vertex] + partner.port;
        }
        Ok(RotationGraph {
            vertices: self.vertices,
            index: self.index,
            ports: self.ports,
            offsets,
            owner,
            rot,
        })
    }
}

/// A bijection from vertex keys to matrix rows `0..|V|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    sequence: Vec<usize>,
    position: Vec<usize>,
}

impl VertexOrder {
    pub fn identity(g: &RotationGraph) -> Self {
        let sequence: Vec<usize> = (0..g.vertex_count()).collect();
        Self { position: sequence.clone(), sequence }
    }

    pub fn lexicographic(g: &RotationGraph) -> Self {
        let mut sequence: Vec<usize> = (0..g.vertex_count()).collect();
        sequence.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
        Self::from_sequence(g, sequence).expect("a sorted permutation is total")
    }

    pub fn from_labels<S: AsRef<str>>(g: &RotationGraph, labels: &[S]) -> Result<Self> {
        let sequence = labels
            .iter()
            .map(|l| g.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_sequence(g, sequence)
    }

    pub fn from_sequence(g: &RotationGraph, sequence: Vec<usize>) -> Result<Self> {
        let n = g.vertex_count();
        let incomplete = || Error::IncompleteOrder { got: sequence.len(), expected: n };
        if sequence.len() != n {
            return Err(incomplete());
        }
        let mut position = vec![usize::MAX; n];
        for (row, &v) in sequence.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(incomplete());
            }
            position[v] = row;
        }
        Ok(Self { sequence, position })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Row of vertex `v`.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Vertex at row `row`.
    pub fn vertex_at(&self, row: usize) -> usize {
        self.sequence[row]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }
}

/// Dense square matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("{n} rows of unequal length")));
        }
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| x.into())).collect();
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.n + j] = value;
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: &BigInt) {
        self.data[i * self.n + j] += value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("{} vs {}", self.n, other.n)));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { n: self.n, data })
    }

    /// Entries as `i64`; panics on overflow, intended for small golden matrices.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| i64::try_from(x).expect("matrix entry fits in i64"))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Adjacency matrix under `order`: off-diagonal entries count edges, a loop
/// adds 2 to its diagonal entry.
pub fn adjacency_matrix(g: &RotationGraph, order: &VertexOrder) -> Result<IntMatrix> {
    if order.len() != g.vertex_count() {
        return Err(Error::IncompleteOrder { got: order.len(), expected: g.vertex_count() });
    }
    let mut m = IntMatrix::zeros(g.vertex_count());
    let one = BigInt::one();
    for v in 0..g.vertex_count() {
        for w in g.neighbors(v) {
            m.add_to(order.position(v), order.position(w), &one);
        }
    }
    Ok(m)
}

/// Neighbor multiset of the vertex labelled `label`.
pub fn neighbors(g: &RotationGraph, label: &str) -> Result<Vec<String>> {
    g.neighbor_labels(label)
}

/// The cycle `C_m` on vertices `0..m`, ports `+` (forward) and `-`.
pub fn cycle_graph(m: usize) -> Result<RotationGraph> {
    if m == 0 {
        return Err(Error::Dimension("a cycle needs at least one vertex".into()));
    }
    let mut b = RotationGraph::builder();
    for i in 0..m {
        b.add_vertex(i.to_string(), ["+", "-"])?;
    }
    for i in 0..m {
        b.connect_labels(&i.to_string(), "+", &((i + 1) % m).to_string(), "-")?;
    }
    b.build()
}

/// A total map from the vertices of one graph into another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    targets: Vec<usize>,
}

impl VertexMap {
    pub fn identity(g: &RotationGraph) -> Self {
        Self { targets: (0..g.vertex_count()).collect() }
    }

    pub fn from_targets(targets: Vec<usize>) -> Self {
        Self { targets }
    }

    /// Build the map from a label function; fails if an image is not a vertex of `to`.
    pub fn from_fn<F>(from: &RotationGraph, to: &RotationGraph, f: F) -> Result<Self>
    where
        F: Fn(&str) -> String,
    {
        let targets = from
            .vertices()
            .iter()
            .map(|l| to.index_of(&f(l)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { targets })
    }

    pub fn apply(&self, v: usize) -> usize {
        self.targets[v]
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn is_bijective_onto(&self, size: usize) -> bool {
        if self.targets.len() != size {
            return false;
        }
        let mut hit = vec![false; size];
        self.targets.iter().all(|&t| t < size && !std::mem::replace(&mut hit[t], true))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PortMatching {
    /// Only edge multiplicities are compared.
    Ignore,
    /// Ports correspond by label: `rot_G(u, p) = (v, q)` must map to
    /// `rot_H(f(u), p) = (f(v), q)`.
    SameLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    NotBijective,
    AdjacencyMismatch { u: String, v: String, expected: usize, found: usize },
    PortMismatch { vertex: String, port: String },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic)
    }
}

pub fn verify_isomorphism(
    g: &RotationGraph,
    h: &RotationGraph,
    f: &VertexMap,
    ports: PortMatching,
) -> IsoVerdict {
    if g.vertex_count() != h.vertex_count() || !f.is_bijective_onto(h.vertex_count()) {
        return IsoVerdict::NotBijective;
    }
    for u in 0..g.vertex_count() {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for w in g.neighbors(u) {
            *counts.entry(w).or_default() += 1;
        }
        let fu = f.apply(u);
        let mut image: HashMap<usize, usize> = HashMap::new();
        for w in h.neighbors(fu) {
            *image.entry(w).or_default() += 1;
        }
        for (&w, &expected) in &counts {
            let found = image.get(&f.apply(w)).copied().unwrap_or(0);
            if found != expected {
                return IsoVerdict::AdjacencyMismatch {
                    u: g.label(u).to_string(),
                    v: g.label(w).to_string(),
                    expected,
                    found,
                };
            }
        }
        if g.degree(u) != h.degree(fu) {
            return IsoVerdict::AdjacencyMismatch {
                u: g.label(u).to_string(),
                v: g.label(u).to_string(),
                expected: g.degree(u),
                found: h.degree(fu),
            };
        }
        if ports == PortMatching::SameLabel {
            for p in 0..g.degree(u) {
                let mismatch = || IsoVerdict::PortMismatch {
                    vertex: g.label(u).to_string(),
                    port: g.ports(u)[p].clone(),
                };
                let gh = g.rot(HalfEdge { vertex: u, port: p });
                let Some(hp) = h.port_index(fu, &g.ports(u)[p]) else {
                    return mismatch();
                };
                let hh = h.rot(HalfEdge { vertex: fu, port: hp });
                if hh.vertex != f.apply(gh.vertex)
                    || h.ports(hh.vertex)[hh.port] != g.ports(gh.vertex)[gh.port]
                {
                    return mismatch();
                }
            }
        }
    }
    IsoVerdict::Isomorphic
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Deterministic Graphviz text: one node statement per vertex, one edge
/// statement per involution pair, port labels as `taillabel`/`headlabel`.
pub fn export_dot(g: &RotationGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  \"{}\";", dot_escape(v));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\" [taillabel=\"{}\", headlabel=\"{}\"];",
            dot_escape(g.label(a.vertex)),
            dot_escape(g.label(b.vertex)),
            dot_escape(&g.ports(a.vertex)[a.port]),
            dot_escape(&g.ports(b.vertex)[b.port]),
        );
    }
    out.push_str("}\n");
    out
}

type PortRef = (String, String);

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    ports: BTreeMap<String, Vec<String>>,
    rot: Vec<[PortRef; 2]>,
}

impl GraphJson {
    fn from_graph(g: &RotationGraph) -> Self {
        let name = |h: HalfEdge| (g.label(h.vertex).to_string(), g.ports(h.vertex)[h.port].clone());
        let mut rot: Vec<[PortRef; 2]> = g
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (name(a), name(b));
                if x <= y { [x, y] } else { [y, x] }
            })
            .collect();
        rot.sort();
        let ports = (0..g.vertex_count())
            .map(|v| (g.label(v).to_string(), g.ports(v).to_vec()))
            .collect();
        Self { vertices: g.vertices().to_vec(), ports, rot }
    }

    fn into_graph(self) -> Result<RotationGraph> {
        let mut b = RotationGraph::builder();
        for v in &self.vertices {
            let ports = self.ports.get(v).cloned().unwrap_or_default();
            b.add_vertex(v.clone(), ports)?;
        }
        for [(v, p), (w, q)] in &self.rot {
            b.connect_labels(v, p, w, q)?;
        }
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_loop() -> RotationGraph {
        let mut b = RotationGraph::builder();
        b.add_vertex("x", ["s", "t"]).unwrap();
        b.connect_labels("x", "s", "x", "t").unwrap();
        b.build().unwrap()
    }

    #[test]
    fn loop_counts_two_on_the_diagonal() {
        let g = single_loop();
        let a = adjacency_matrix(&g, &VertexOrder::identity(&g)).unwrap();
        assert_eq!(a.to_i64_rows(), vec![vec![2]]);
    }

    #[test]
    fn half_edge_cannot_pair_with_itself() {
        let mut b = RotationGraph::builder();
        b.add_vertex("x", ["s"]).unwrap();
        assert!(b.connect_labels("x", "s", "x", "s").is_err());
    }

    #[test]
    fn unpaired_half_edge_is_rejected() {
        let mut b = RotationGraph::builder();
        b.add_vertex("x", ["s", "t", "u"]).unwrap();
        b.connect_labels("x", "s", "x", "t").unwrap();
        assert!(matches!(b.build(), Err(Error::HalfEdgeUnpaired { .. })));
    }

    #[test]
    fn incomplete_order_is_an_error() {
        let g = single_loop();
        assert!(VertexOrder::from_sequence(&g, vec![]).is_err());
        assert!(VertexOrder::from_labels(&g, &["y"]).is_err());
    }

    #[test]
    fn empty_port_vertex_exports_one_node() {
        let mut b = RotationGraph::builder();
        b.add_vertex("lonely", Vec::<String>::new()).unwrap();
        let g = b.build().unwrap();
        assert_eq!(export_dot(&g), "graph G {\n  \"lonely\";\n}\n");
    }

    #[test]
    fn json_lists_each_pair_once_sorted() {
        let g = single_loop();
        let json = g.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["rot"], serde_json::json!([[["x", "s"], ["x", "t"]]]));
        let back = RotationGraph::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn non_bijective_map_is_reported_distinctly() {
        let mut b = RotationGraph::builder();
        b.add_vertex("p", ["s", "t"]).unwrap();
        b.add_vertex("q", ["s", "t"]).unwrap();
        b.connect_labels("p", "s", "q", "t").unwrap();
        b.connect_labels("q", "s", "p", "t").unwrap();
        let g = b.build().unwrap();
        let collapse = VertexMap::from_targets(vec![0, 0]);
        assert_eq!(
            verify_isomorphism(&g, &g, &collapse, PortMatching::Ignore),
            IsoVerdict::NotBijective
        );
    }
}
