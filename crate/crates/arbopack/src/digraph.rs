//! Finite multidigraphs with stable edge identity.
//!
//! Graphs here allow parallel edges but no loops. Every edge carries an
//! explicit id that survives quotients, so edge sets can be intersected
//! across different graphs derived from the same structure (truncations,
//! contractions, packings at different depths).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A vertex name. Layered realizations use the form `name@i`; contraction
/// dummies use `beyond(v)` where `v` is the least vertex of the absorbed
/// component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

impl VertexId {
    pub fn new(name: impl Into<String>) -> Self {
        VertexId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

/// Positional edge identity. Ids are unique within a graph and are preserved
/// by every quotient operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u64);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A directed edge `tail -> head`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge {id} at vertex {vertex}")]
    LoopEdge { id: EdgeId, vertex: VertexId },
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("cut side is empty")]
    EmptySide,
    #[error("cut side contains every vertex")]
    FullSide,
    #[error("k must be at least 1")]
    ZeroK,
}

/// A finite multidigraph. Immutable after construction; all operations are
/// pure functions over the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDigraph {
    vertices: BTreeSet<VertexId>,
    edges: Vec<Edge>,
    by_id: BTreeMap<EdgeId, usize>,
    labels: BTreeMap<VertexId, String>,
}

/// One side of a bipartition `(X, Y)` of the vertex set together with the
/// crossing edges: `forward` has tail in `X` and head in `Y`, `backward`
/// the reverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub side_y: BTreeSet<VertexId>,
    pub forward: BTreeSet<EdgeId>,
    pub backward: BTreeSet<EdgeId>,
}

/// Result of contracting everything outside a kept vertex set. Each weak
/// component of the removed part becomes a single dummy vertex; edges keep
/// their original ids, loops arising from the contraction are deleted.
#[derive(Debug, Clone)]
pub struct ContractionResult {
    pub quotient: FinDigraph,
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub dummies: BTreeSet<VertexId>,
}

pub(crate) fn dummy_name(least: &VertexId) -> VertexId {
    VertexId(format!("beyond({})", least.0))
}

impl FinDigraph {
    /// Builds a graph from explicit vertex ids and `(id, tail, head)` edge
    /// triples. Edges are kept in input order.
    pub fn build<V, E>(vertices: V, triples: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    {
        let mut vs = BTreeSet::new();
        for v in vertices {
            if !vs.insert(v.clone()) {
                return Err(GraphError::DuplicateVertex(v));
            }
        }
        let mut edges = Vec::new();
        let mut by_id = BTreeMap::new();
        for (id, tail, head) in triples {
            if tail == head {
                return Err(GraphError::LoopEdge { id, vertex: tail });
            }
            if !vs.contains(&tail) {
                return Err(GraphError::UnknownVertex(tail));
            }
            if !vs.contains(&head) {
                return Err(GraphError::UnknownVertex(head));
            }
            if by_id.insert(id, edges.len()).is_some() {
                return Err(GraphError::DuplicateEdge(id));
            }
            edges.push(Edge { id, tail, head });
        }
        Ok(FinDigraph {
            vertices: vs,
            edges,
            by_id,
            labels: BTreeMap::new(),
        })
    }

    /// Builds a graph from `(tail, head)` pairs, assigning ids `0..` in
    /// input order.
    pub fn from_pairs<V, E>(vertices: V, pairs: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let triples = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (t, h))| (EdgeId(i as u64), t, h));
        Self::build(vertices, triples)
    }

    pub fn set_label(&mut self, v: &VertexId, label: impl Into<String>) -> Result<(), GraphError> {
        if !self.vertices.contains(v) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        self.labels.insert(v.clone(), label.into());
        Ok(())
    }

    pub fn label(&self, v: &VertexId) -> Option<&str> {
        self.labels.get(v).map(String::as_str)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    /// Edges in construction order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.by_id.get(&id).map(|&i| &self.edges[i])
    }

    pub fn edge_ids(&self) -> BTreeSet<EdgeId> {
        self.edges.iter().map(|e| e.id).collect()
    }

    pub fn out_edges<'a>(&'a self, v: &'a VertexId) -> impl Iterator<Item = &'a Edge> {
        self.edges.iter().filter(move |e| &e.tail == v)
    }

    pub fn in_edges<'a>(&'a self, v: &'a VertexId) -> impl Iterator<Item = &'a Edge> {
        self.edges.iter().filter(move |e| &e.head == v)
    }

    /// `(in_degree, out_degree)` with parallel edges counted by multiplicity.
    pub fn degrees(&self, v: &VertexId) -> Result<(usize, usize), GraphError> {
        if !self.vertices.contains(v) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        Ok((self.in_edges(v).count(), self.out_edges(v).count()))
    }

    /// The cut determined by a side `Y` with `∅ ≠ Y ⊊ V`.
    pub fn cut_of(&self, side_y: &BTreeSet<VertexId>) -> Result<Cut, GraphError> {
        if side_y.is_empty() {
            return Err(GraphError::EmptySide);
        }
        for v in side_y {
            if !self.vertices.contains(v) {
                return Err(GraphError::UnknownVertex(v.clone()));
            }
        }
        if side_y.len() == self.vertices.len() {
            return Err(GraphError::FullSide);
        }
        let mut forward = BTreeSet::new();
        let mut backward = BTreeSet::new();
        for e in &self.edges {
            match (side_y.contains(&e.tail), side_y.contains(&e.head)) {
                (false, true) => {
                    forward.insert(e.id);
                }
                (true, false) => {
                    backward.insert(e.id);
                }
                _ => {}
            }
        }
        Ok(Cut {
            side_y: side_y.clone(),
            forward,
            backward,
        })
    }

    /// Vertices reachable from `start` along directed edges, optionally
    /// restricted to the edge set `within`. Includes `start`.
    pub fn reachable_from(
        &self,
        start: &VertexId,
        within: Option<&BTreeSet<EdgeId>>,
    ) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::new();
        if !self.vertices.contains(start) {
            return seen;
        }
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                if e.tail == v
                    && within.is_none_or(|f| f.contains(&e.id))
                    && seen.insert(e.head.clone())
                {
                    queue.push_back(e.head.clone());
                }
            }
        }
        seen
    }

    /// Vertices that can reach `target` along directed edges, optionally
    /// restricted to `within`. Includes `target`.
    pub fn co_reachable(
        &self,
        target: &VertexId,
        within: Option<&BTreeSet<EdgeId>>,
    ) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::new();
        if !self.vertices.contains(target) {
            return seen;
        }
        seen.insert(target.clone());
        let mut queue = VecDeque::from([target.clone()]);
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                if e.head == v
                    && within.is_none_or(|f| f.contains(&e.id))
                    && seen.insert(e.tail.clone())
                {
                    queue.push_back(e.tail.clone());
                }
            }
        }
        seen
    }

    /// Weak components as vertex sets, ordered by least member.
    pub fn weak_components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut remaining: BTreeSet<&VertexId> = self.vertices.iter().collect();
        let mut components = Vec::new();
        while let Some(start) = remaining.iter().next().cloned() {
            let mut comp = BTreeSet::new();
            comp.insert(start.clone());
            remaining.remove(start);
            let mut queue = VecDeque::from([start.clone()]);
            while let Some(v) = queue.pop_front() {
                for e in &self.edges {
                    let other = if e.tail == v {
                        &e.head
                    } else if e.head == v {
                        &e.tail
                    } else {
                        continue;
                    };
                    if comp.insert(other.clone()) {
                        remaining.remove(other);
                        queue.push_back(other.clone());
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.weak_components().len() <= 1
    }

    /// Contracts each weak component of `self - keep` to a single dummy
    /// vertex. Edges with both ends inside one component become loops and
    /// are deleted; every other edge survives with its original id. Dummy
    /// names derive from the least vertex of the absorbed component.
    pub fn contract_outside(
        &self,
        keep: &BTreeSet<VertexId>,
    ) -> Result<ContractionResult, GraphError> {
        for v in keep {
            if !self.vertices.contains(v) {
                return Err(GraphError::UnknownVertex(v.clone()));
            }
        }
        let removed: BTreeSet<VertexId> = self.vertices.difference(keep).cloned().collect();
        // Weak components of the induced subgraph on `removed`.
        let mut comp_of: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut comp_least: Vec<VertexId> = Vec::new();
        let mut todo: BTreeSet<&VertexId> = removed.iter().collect();
        while let Some(start) = todo.iter().next().cloned() {
            let idx = comp_least.len();
            comp_least.push(start.clone());
            comp_of.insert(start.clone(), idx);
            todo.remove(start);
            let mut queue = VecDeque::from([start.clone()]);
            while let Some(v) = queue.pop_front() {
                for e in &self.edges {
                    let other = if e.tail == v {
                        &e.head
                    } else if e.head == v {
                        &e.tail
                    } else {
                        continue;
                    };
                    if removed.contains(other) && !comp_of.contains_key(other) {
                        comp_of.insert(other.clone(), idx);
                        todo.remove(other);
                        queue.push_back(other.clone());
                    }
                }
            }
        }
        // Deterministic, collision-free dummy names.
        let mut dummy_names: Vec<VertexId> = Vec::with_capacity(comp_least.len());
        let mut used: BTreeSet<VertexId> = keep.clone();
        for least in &comp_least {
            let mut name = dummy_name(least);
            while used.contains(&name) {
                name = VertexId(format!("{}'", name.0));
            }
            used.insert(name.clone());
            dummy_names.push(name);
        }

        let map_vertex = |v: &VertexId| -> VertexId {
            match comp_of.get(v) {
                Some(&idx) => dummy_names[idx].clone(),
                None => v.clone(),
            }
        };
        let mut vertex_map = BTreeMap::new();
        for v in &self.vertices {
            vertex_map.insert(v.clone(), map_vertex(v));
        }
        let mut triples = Vec::new();
        for e in &self.edges {
            let t = map_vertex(&e.tail);
            let h = map_vertex(&e.head);
            if t != h {
                triples.push((e.id, t, h));
            }
        }
        let quotient = FinDigraph::build(used, triples)?;
        Ok(ContractionResult {
            quotient,
            vertex_map,
            dummies: dummy_names.into_iter().collect(),
        })
    }

    /// Induced subgraph on `verts`, keeping edge ids.
    pub fn induced(&self, verts: &BTreeSet<VertexId>) -> Result<FinDigraph, GraphError> {
        for v in verts {
            if !self.vertices.contains(v) {
                return Err(GraphError::UnknownVertex(v.clone()));
            }
        }
        let triples = self
            .edges
            .iter()
            .filter(|e| verts.contains(&e.tail) && verts.contains(&e.head))
            .map(|e| (e.id, e.tail.clone(), e.head.clone()));
        FinDigraph::build(verts.iter().cloned(), triples.collect::<Vec<_>>())
    }

    /// DOT rendering. `dummies` get a diamond shape; `part_styles` maps edge
    /// ids to a style index (0 solid, then dashed, dotted, bold, cycling).
    pub fn to_dot(
        &self,
        dummies: &BTreeSet<VertexId>,
        part_styles: &BTreeMap<EdgeId, usize>,
    ) -> String {
        const STYLES: [&str; 4] = ["solid", "dashed", "dotted", "bold"];
        let mut out = String::from("digraph {\n");
        for v in &self.vertices {
            if dummies.contains(v) {
                out.push_str(&format!("  \"{}\" [shape=diamond];\n", v));
            } else {
                out.push_str(&format!("  \"{}\";\n", v));
            }
        }
        for e in &self.edges {
            let mut attrs = format!("label=\"{}\"", e.id);
            if let Some(&p) = part_styles.get(&e.id) {
                attrs.push_str(&format!(", style={}", STYLES[p % STYLES.len()]));
            }
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [{}];\n",
                e.tail, e.head, attrs
            ));
        }
        out.push_str("}\n");
        out
    }
}

// JSON encoding: {"vertices":[...],"edges":[[id,tail,head],...]} with an
// optional "labels" map.
#[derive(Serialize, Deserialize)]
struct DigraphDoc {
    vertices: Vec<VertexId>,
    edges: Vec<(u64, VertexId, VertexId)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<VertexId, String>,
}

impl Serialize for FinDigraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DigraphDoc {
            vertices: self.vertices.iter().cloned().collect(),
            edges: self
                .edges
                .iter()
                .map(|e| (e.id.0, e.tail.clone(), e.head.clone()))
                .collect(),
            labels: self.labels.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FinDigraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = DigraphDoc::deserialize(deserializer)?;
        let mut g = FinDigraph::build(
            doc.vertices,
            doc.edges.into_iter().map(|(id, t, h)| (EdgeId(id), t, h)),
        )
        .map_err(D::Error::custom)?;
        for (v, l) in doc.labels {
            g.set_label(&v, l).map_err(D::Error::custom)?;
        }
        Ok(g)
    }
}

#[cfg(test)]
pub(crate) fn vset<I: IntoIterator<Item = &'static str>>(names: I) -> BTreeSet<VertexId> {
    names.into_iter().map(VertexId::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    fn graph(vs: &[&str], es: &[(&str, &str)]) -> FinDigraph {
        FinDigraph::from_pairs(
            vs.iter().map(|s| v(s)),
            es.iter().map(|(t, h)| (v(t), v(h))),
        )
        .unwrap()
    }

    #[test]
    fn build_single_vertex() {
        let g = graph(&["r"], &[]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn build_parallel_edges() {
        let g = graph(&["r", "a"], &[("r", "a"), ("r", "a")]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degrees(&v("a")).unwrap(), (2, 0));
    }

    #[test]
    fn build_rejects_loop() {
        let err = FinDigraph::from_pairs([v("a")], [(v("a"), v("a"))]).unwrap_err();
        assert!(matches!(err, GraphError::LoopEdge { .. }));
    }

    #[test]
    fn build_rejects_duplicate_ids() {
        let err = FinDigraph::build(
            [v("a"), v("b")],
            [(EdgeId(0), v("a"), v("b")), (EdgeId(0), v("b"), v("a"))],
        )
        .unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge(EdgeId(0)));
    }

    #[test]
    fn cut_single_crossing() {
        let g = graph(&["r", "a", "b"], &[("r", "a"), ("a", "b")]);
        let cut = g.cut_of(&vset(["b"])).unwrap();
        assert_eq!(cut.forward, BTreeSet::from([EdgeId(1)]));
        assert!(cut.backward.is_empty());
    }

    #[test]
    fn cut_counts_parallel_edges() {
        let g = graph(&["r", "a"], &[("r", "a"), ("r", "a")]);
        let cut = g.cut_of(&vset(["a"])).unwrap();
        assert_eq!(cut.forward.len(), 2);
        assert!(cut.backward.is_empty());
    }

    #[test]
    fn cut_excludes_internal_edges() {
        // r→a, a→b, b→a with Y = {a,b}: only r→a crosses.
        let g = graph(&["r", "a", "b"], &[("r", "a"), ("a", "b"), ("b", "a")]);
        let cut = g.cut_of(&vset(["a", "b"])).unwrap();
        assert_eq!(cut.forward, BTreeSet::from([EdgeId(0)]));
        assert!(cut.backward.is_empty());
    }

    #[test]
    fn cut_side_validation() {
        let g = graph(&["r", "a"], &[("r", "a")]);
        assert_eq!(
            g.cut_of(&BTreeSet::new()).unwrap_err(),
            GraphError::EmptySide
        );
        assert_eq!(
            g.cut_of(&vset(["r", "a"])).unwrap_err(),
            GraphError::FullSide
        );
    }

    #[test]
    fn degrees_cases() {
        let g = graph(&["r", "a", "b", "z"], &[("r", "a"), ("a", "b"), ("b", "r")]);
        assert_eq!(g.degrees(&v("z")).unwrap(), (0, 0));
        assert_eq!(g.degrees(&v("a")).unwrap(), (1, 1));
        assert!(g.degrees(&v("nope")).is_err());
    }

    #[test]
    fn contract_path_to_dummy() {
        let g = graph(&["r", "a", "b"], &[("r", "a"), ("a", "b")]);
        let res = g.contract_outside(&vset(["r"])).unwrap();
        assert_eq!(res.quotient.vertex_count(), 2);
        assert_eq!(res.quotient.edge_count(), 1);
        let e = res.quotient.edge(EdgeId(0)).unwrap();
        assert_eq!(e.tail, v("r"));
        assert_eq!(e.head, dummy_name(&v("a")));
        assert_eq!(res.dummies.len(), 1);
        // a→b collapsed into the component: deleted as a loop.
        assert!(res.quotient.edge(EdgeId(1)).is_none());
    }

    #[test]
    fn contract_keep_all_is_identity() {
        let g = graph(&["r", "a"], &[("r", "a")]);
        let res = g.contract_outside(&g.vertex_set().clone()).unwrap();
        assert_eq!(res.quotient, g);
        assert!(res.dummies.is_empty());
    }

    #[test]
    fn contract_keeps_multiplicities() {
        // r→a, r→b, a→b with keep {r}: two parallel edges into the dummy.
        let g = graph(&["r", "a", "b"], &[("r", "a"), ("r", "b"), ("a", "b")]);
        let res = g.contract_outside(&vset(["r"])).unwrap();
        assert_eq!(res.quotient.edge_count(), 2);
        let d = dummy_name(&v("a"));
        for id in [0, 1] {
            let e = res.quotient.edge(EdgeId(id)).unwrap();
            assert_eq!((&e.tail, &e.head), (&v("r"), &d));
        }
        assert!(res.quotient.edge(EdgeId(2)).is_none());
    }

    #[test]
    fn contract_empty_keep() {
        let g = graph(&["r", "a"], &[("r", "a")]);
        let res = g.contract_outside(&BTreeSet::new()).unwrap();
        assert_eq!(res.quotient.vertex_count(), 1);
        assert_eq!(res.quotient.edge_count(), 0);
    }

    #[test]
    fn contraction_commutes_with_nested_keeps() {
        let g = graph(
            &["r", "a", "b", "c", "d"],
            &[
                ("r", "a"),
                ("a", "b"),
                ("b", "c"),
                ("c", "d"),
                ("d", "a"),
                ("r", "c"),
            ],
        );
        let keep1 = vset(["r", "a", "c"]);
        let keep2 = vset(["r"]);
        let step1 = g.contract_outside(&keep1).unwrap();
        let step2 = step1.quotient.contract_outside(&keep2).unwrap();
        let direct = g.contract_outside(&keep2).unwrap();

        assert_eq!(step2.quotient.edge_ids(), direct.quotient.edge_ids());
        // The composed vertex map must agree with the direct one up to a
        // bijection between dummy names.
        let mut pairing: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for orig in g.vertices() {
            let composed = &step2.vertex_map[&step1.vertex_map[orig]];
            let direct_v = &direct.vertex_map[orig];
            match (
                step2.dummies.contains(composed),
                direct.dummies.contains(direct_v),
            ) {
                (false, false) => assert_eq!(composed, direct_v),
                (true, true) => {
                    let prev = pairing
                        .entry(composed.clone())
                        .or_insert_with(|| direct_v.clone());
                    assert_eq!(prev, direct_v);
                }
                _ => panic!("dummy/retained mismatch for {orig}"),
            }
        }
        let targets: BTreeSet<_> = pairing.values().collect();
        assert_eq!(targets.len(), pairing.len());
    }

    #[test]
    fn quotient_of_connected_graph_is_connected() {
        let g = graph(
            &["r", "a", "b", "c"],
            &[("r", "a"), ("a", "b"), ("b", "c"), ("c", "r")],
        );
        assert!(g.is_weakly_connected());
        for keep in [vset(["r"]), vset(["r", "b"]), vset(["a", "c"])] {
            assert!(g
                .contract_outside(&keep)
                .unwrap()
                .quotient
                .is_weakly_connected());
        }
    }

    #[test]
    fn json_round_trip() {
        let g = graph(&["r", "a"], &[("r", "a"), ("r", "a")]);
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.contains("\"vertices\""));
        let back: FinDigraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn dot_output_quotes_names() {
        let g = graph(&["r", "a"], &[("r", "a")]);
        let dot = g.to_dot(&BTreeSet::new(), &BTreeMap::new());
        assert!(dot.contains("\"r\" -> \"a\" [label=\"0\"];"));
    }
}

#[cfg(test)]
pub(crate) mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_graph() -> impl Strategy<Value = FinDigraph> {
        (
            2usize..=6,
            proptest::collection::vec((0usize..6, 0usize..6), 0..14),
        )
            .prop_map(|(n, raw)| {
                let vertices: Vec<VertexId> =
                    (0..n).map(|i| VertexId::new(format!("v{i}"))).collect();
                let pairs: Vec<(VertexId, VertexId)> = raw
                    .into_iter()
                    .filter(|(t, h)| t % n != h % n)
                    .map(|(t, h)| (vertices[t % n].clone(), vertices[h % n].clone()))
                    .collect();
                FinDigraph::from_pairs(vertices, pairs).unwrap()
            })
    }

    proptest! {
        #[test]
        fn degree_sums_match_edge_count(g in arb_graph()) {
            let ins: usize = g.vertices().map(|v| g.degrees(v).unwrap().0).sum();
            let outs: usize = g.vertices().map(|v| g.degrees(v).unwrap().1).sum();
            prop_assert_eq!(ins, g.edge_count());
            prop_assert_eq!(outs, g.edge_count());
        }

        #[test]
        fn cut_partitions_incident_edges(g in arb_graph(), mask in 1u32..63) {
            let side: BTreeSet<VertexId> = g
                .vertices()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect();
            prop_assume!(!side.is_empty() && side.len() < g.vertex_count());
            let cut = g.cut_of(&side).unwrap();
            let crossing = g
                .edges()
                .filter(|e| side.contains(&e.tail) != side.contains(&e.head))
                .count();
            prop_assert_eq!(cut.forward.len() + cut.backward.len(), crossing);
            prop_assert!(cut.forward.is_disjoint(&cut.backward));
        }

        #[test]
        fn quotients_preserve_weak_connectivity(g in arb_graph(), mask in 0u32..63) {
            prop_assume!(g.is_weakly_connected());
            let keep: BTreeSet<VertexId> = g
                .vertices()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect();
            let res = g.contract_outside(&keep).unwrap();
            prop_assert!(res.quotient.is_weakly_connected());
        }
    }
}
