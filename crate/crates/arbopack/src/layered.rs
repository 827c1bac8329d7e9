//! Finite presentations of locally finite infinite digraphs.
//!
//! A spec consists of a finite prefix graph and one layer template repeated
//! forever: layer copy `i` realizes each template vertex `name` as `name@i`,
//! `intra` edges stay inside a copy, `up` edges join consecutive copies
//! (delta +1 points from copy `i` to `i+1`, delta -1 the other way), and
//! `attach` edges join the prefix to copy 0.
//!
//! Everything downstream is computed on two finite views:
//! * `truncate(n)` — the induced subgraph `B_n` on the prefix plus copies
//!   `0..n`;
//! * `contract_at_depth(n)` — the quotient `G_n` that keeps the prefix plus
//!   copies `0..n-1` and collapses each weak component of the rest to a
//!   dummy vertex, keeping parallel edges and their original ids.
//!
//! The weak components of the discarded part are decided by growing a
//! window of layers until the induced partition of one layer's vertices
//! stabilizes; specs whose partition does not stabilize within the probe
//! bound are rejected at construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::digraph::{dummy_name, ContractionResult, EdgeId, FinDigraph, GraphError, VertexId};

/// Canonical label of an end: the least layer-vertex name of its class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EndId(pub String);

impl fmt::Display for EndId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A vertex or an end; roots and reachability targets are sites.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Site {
    Vertex(VertexId),
    End(EndId),
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Vertex(v) => write!(f, "{v}"),
            Site::End(e) => write!(f, "end:{e}"),
        }
    }
}

impl FromStr for Site {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        if let Some(end) = s.strip_prefix("end:") {
            if end.is_empty() {
                return Err(SpecError::UnknownSite(s.to_string()));
            }
            Ok(Site::End(EndId(end.to_string())))
        } else if s.is_empty() {
            Err(SpecError::UnknownSite(s.to_string()))
        } else {
            Ok(Site::Vertex(VertexId::new(s)))
        }
    }
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("template loop at {0}")]
    LoopTemplate(String),
    #[error("unknown template name {0}")]
    UnknownName(String),
    #[error("duplicate template name {0}")]
    DuplicateName(String),
    #[error("direction must be +1 or -1, got {0}")]
    BadDirection(i8),
    #[error("template name {0} is empty or contains '@'")]
    ReservedName(String),
    #[error("prefix has no vertices")]
    EmptyPrefix,
    #[error("layer has no vertices")]
    EmptyLayer,
    #[error("layer 0 does not attach to the prefix")]
    NoAttachment,
    #[error("truncation at depth {depth} is not weakly connected")]
    DisconnectedProbe { depth: usize },
    #[error("layer component partition does not stabilize within the probe bound")]
    NoStabilization,
    #[error("unknown vertex or end: {0}")]
    UnknownSite(String),
    #[error("could not resolve the component of {0} within the probe window")]
    UnresolvedComponent(String),
    #[error("depth must be at least 1")]
    BadDepth,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct PrefixDoc {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct LayerDoc {
    vertices: Vec<String>,
    #[serde(default)]
    intra: Vec<(String, String)>,
    #[serde(default)]
    up: Vec<(String, String, i8)>,
}

/// Raw document form of a spec, matching the input JSON schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDoc {
    prefix: PrefixDoc,
    layer: LayerDoc,
    attach: Vec<(String, String, i8)>,
}

impl SpecDoc {
    pub fn new(
        prefix_vertices: &[&str],
        prefix_edges: &[(&str, &str)],
        layer_vertices: &[&str],
        intra: &[(&str, &str)],
        up: &[(&str, &str, i8)],
        attach: &[(&str, &str, i8)],
    ) -> Self {
        SpecDoc {
            prefix: PrefixDoc {
                vertices: prefix_vertices.iter().map(|s| s.to_string()).collect(),
                edges: prefix_edges
                    .iter()
                    .map(|(t, h)| (t.to_string(), h.to_string()))
                    .collect(),
            },
            layer: LayerDoc {
                vertices: layer_vertices.iter().map(|s| s.to_string()).collect(),
                intra: intra
                    .iter()
                    .map(|(t, h)| (t.to_string(), h.to_string()))
                    .collect(),
                up: up
                    .iter()
                    .map(|(t, h, d)| (t.to_string(), h.to_string(), *d))
                    .collect(),
            },
            attach: attach
                .iter()
                .map(|(p, l, d)| (p.to_string(), l.to_string(), *d))
                .collect(),
        }
    }
}

/// One stabilized weak-component class of the layers beyond any depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailClass {
    pub label: String,
    pub members: BTreeSet<String>,
    /// Whether the component keeps growing with the window, i.e. whether it
    /// carries an end; finite hanging components are dummies but not ends.
    pub infinite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct TailPartition {
    classes: Vec<TailClass>,
    window: usize,
}

/// A validated layered presentation.
#[derive(Debug, Clone)]
pub struct LayeredDigraphSpec {
    doc: SpecDoc,
    // Template edges resolved to layer/prefix indices.
    prefix_edges: Vec<(usize, usize)>,
    intra: Vec<(usize, usize)>,
    up: Vec<(usize, usize, i8)>,
    attach: Vec<(usize, usize, i8)>,
    tail: TailPartition,
}

impl PartialEq for LayeredDigraphSpec {
    fn eq(&self, other: &Self) -> bool {
        self.doc == other.doc
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let root = self.find(self.0[x]);
            self.0[x] = root;
        }
        self.0[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

fn realized(name: &str, i: usize) -> VertexId {
    VertexId(format!("{name}@{i}"))
}

impl LayeredDigraphSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let doc: SpecDoc =
            serde_json::from_str(text).map_err(|e| SpecError::Schema(e.to_string()))?;
        Self::from_doc(doc)
    }

    pub fn from_doc(doc: SpecDoc) -> Result<Self, SpecError> {
        if doc.prefix.vertices.is_empty() {
            return Err(SpecError::EmptyPrefix);
        }
        if doc.layer.vertices.is_empty() {
            return Err(SpecError::EmptyLayer);
        }
        if doc.attach.is_empty() {
            return Err(SpecError::NoAttachment);
        }
        let index_of = |names: &[String]| -> Result<BTreeMap<String, usize>, SpecError> {
            let mut map = BTreeMap::new();
            for (i, n) in names.iter().enumerate() {
                if n.is_empty() || n.contains('@') {
                    return Err(SpecError::ReservedName(n.clone()));
                }
                if map.insert(n.clone(), i).is_some() {
                    return Err(SpecError::DuplicateName(n.clone()));
                }
            }
            Ok(map)
        };
        let prefix_index = index_of(&doc.prefix.vertices)?;
        let layer_index = index_of(&doc.layer.vertices)?;
        let resolve = |map: &BTreeMap<String, usize>, name: &str| {
            map.get(name)
                .copied()
                .ok_or_else(|| SpecError::UnknownName(name.to_string()))
        };

        let mut prefix_edges = Vec::new();
        for (t, h) in &doc.prefix.edges {
            if t == h {
                return Err(SpecError::LoopTemplate(t.clone()));
            }
            prefix_edges.push((resolve(&prefix_index, t)?, resolve(&prefix_index, h)?));
        }
        let mut intra = Vec::new();
        for (t, h) in &doc.layer.intra {
            if t == h {
                return Err(SpecError::LoopTemplate(t.clone()));
            }
            intra.push((resolve(&layer_index, t)?, resolve(&layer_index, h)?));
        }
        let mut up = Vec::new();
        for (t, h, d) in &doc.layer.up {
            if *d != 1 && *d != -1 {
                return Err(SpecError::BadDirection(*d));
            }
            up.push((resolve(&layer_index, t)?, resolve(&layer_index, h)?, *d));
        }
        let mut attach = Vec::new();
        for (p, l, d) in &doc.attach {
            if *d != 1 && *d != -1 {
                return Err(SpecError::BadDirection(*d));
            }
            attach.push((resolve(&prefix_index, p)?, resolve(&layer_index, l)?, *d));
        }

        let tail = compute_tail(&doc.layer.vertices, &intra, &up)?;
        let spec = LayeredDigraphSpec {
            doc,
            prefix_edges,
            intra,
            up,
            attach,
            tail,
        };

        for n in 1..=spec.probe_depth() {
            if !spec.truncate(n).is_weakly_connected() {
                return Err(SpecError::DisconnectedProbe { depth: n });
            }
        }
        Ok(spec)
    }

    pub fn to_doc(&self) -> &SpecDoc {
        &self.doc
    }

    pub fn layer_size(&self) -> usize {
        self.doc.layer.vertices.len()
    }

    /// Depth up to which weak connectivity of truncations is verified.
    pub fn probe_depth(&self) -> usize {
        2 * self.layer_size() + 2
    }

    pub fn prefix_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.doc.prefix.vertices.iter().map(VertexId::new)
    }

    pub fn realized(&self, name: &str, i: usize) -> VertexId {
        realized(name, i)
    }

    pub fn tail_classes(&self) -> &[TailClass] {
        &self.tail.classes
    }

    /// Ends of the presented graph: one per infinite tail class.
    pub fn list_ends(&self) -> BTreeSet<EndId> {
        self.tail
            .classes
            .iter()
            .filter(|c| c.infinite)
            .map(|c| EndId(c.label.clone()))
            .collect()
    }

    // Edge id layout: prefix edges, then attach edges, then per layer copy
    // its intra edges followed by its up edges. The layout is what makes
    // edge identity stable across depths.
    fn block_base(&self, i: usize) -> u64 {
        (self.prefix_edges.len() + self.attach.len() + i * (self.intra.len() + self.up.len()))
            as u64
    }

    fn prefix_edge_id(&self, j: usize) -> EdgeId {
        EdgeId(j as u64)
    }

    fn attach_edge_id(&self, j: usize) -> EdgeId {
        EdgeId((self.prefix_edges.len() + j) as u64)
    }

    fn intra_edge_id(&self, i: usize, j: usize) -> EdgeId {
        EdgeId(self.block_base(i) + j as u64)
    }

    fn up_edge_id(&self, i: usize, j: usize) -> EdgeId {
        EdgeId(self.block_base(i) + (self.intra.len() + j) as u64)
    }

    fn prefix_name(&self, i: usize) -> &str {
        &self.doc.prefix.vertices[i]
    }

    fn layer_name(&self, i: usize) -> &str {
        &self.doc.layer.vertices[i]
    }

    /// The truncation `B_n`: the prefix plus layer copies `0..n`.
    pub fn truncate(&self, n: usize) -> FinDigraph {
        let mut vertices: Vec<VertexId> = self.prefix_vertices().collect();
        for i in 0..n {
            for name in &self.doc.layer.vertices {
                vertices.push(realized(name, i));
            }
        }
        let mut triples = Vec::new();
        for (j, (t, h)) in self.prefix_edges.iter().enumerate() {
            triples.push((
                self.prefix_edge_id(j),
                VertexId::new(self.prefix_name(*t)),
                VertexId::new(self.prefix_name(*h)),
            ));
        }
        if n >= 1 {
            for (j, (p, l, d)) in self.attach.iter().enumerate() {
                let pv = VertexId::new(self.prefix_name(*p));
                let lv = realized(self.layer_name(*l), 0);
                let (t, h) = if *d == 1 { (pv, lv) } else { (lv, pv) };
                triples.push((self.attach_edge_id(j), t, h));
            }
        }
        for i in 0..n {
            for (j, (t, h)) in self.intra.iter().enumerate() {
                triples.push((
                    self.intra_edge_id(i, j),
                    realized(self.layer_name(*t), i),
                    realized(self.layer_name(*h), i),
                ));
            }
            if i + 1 < n {
                for (j, (t, h, d)) in self.up.iter().enumerate() {
                    let (tail, head) = if *d == 1 {
                        (
                            realized(self.layer_name(*t), i),
                            realized(self.layer_name(*h), i + 1),
                        )
                    } else {
                        (
                            realized(self.layer_name(*t), i + 1),
                            realized(self.layer_name(*h), i),
                        )
                    };
                    triples.push((self.up_edge_id(i, j), tail, head));
                }
            }
        }
        FinDigraph::build(vertices, triples).expect("truncation is structurally valid")
    }

    fn class_index_of_name(&self, layer_idx: usize) -> usize {
        let name = self.layer_name(layer_idx);
        self.tail
            .classes
            .iter()
            .position(|c| c.members.contains(name))
            .expect("every layer vertex belongs to a tail class")
    }

    fn dummy_of_class(&self, class: usize, boundary: usize) -> VertexId {
        dummy_name(&realized(&self.tail.classes[class].label, boundary))
    }

    /// The contraction `G_n`: keeps the prefix plus layer copies `0..n-1`
    /// and one dummy vertex per weak component of everything beyond. The
    /// retained part is exactly `truncate(n-1)`; boundary edges survive with
    /// their original ids, redirected to the dummies.
    pub fn contract_at_depth(&self, n: usize) -> Result<ContractionResult, SpecError> {
        if n == 0 {
            return Err(SpecError::BadDepth);
        }
        let boundary = n - 1;
        let retained = self.truncate(boundary);
        let mut vertices: Vec<VertexId> = retained.vertex_set().iter().cloned().collect();
        let mut dummies = BTreeSet::new();
        for class in 0..self.tail.classes.len() {
            let d = self.dummy_of_class(class, boundary);
            vertices.push(d.clone());
            dummies.insert(d);
        }
        let mut triples: Vec<(EdgeId, VertexId, VertexId)> = retained
            .edges()
            .map(|e| (e.id, e.tail.clone(), e.head.clone()))
            .collect();
        if n == 1 {
            for (j, (p, l, d)) in self.attach.iter().enumerate() {
                let pv = VertexId::new(self.prefix_name(*p));
                let dummy = self.dummy_of_class(self.class_index_of_name(*l), boundary);
                let (t, h) = if *d == 1 { (pv, dummy) } else { (dummy, pv) };
                triples.push((self.attach_edge_id(j), t, h));
            }
        } else {
            for (j, (t, h, d)) in self.up.iter().enumerate() {
                let (tail, head) = if *d == 1 {
                    (
                        realized(self.layer_name(*t), boundary - 1),
                        self.dummy_of_class(self.class_index_of_name(*h), boundary),
                    )
                } else {
                    (
                        self.dummy_of_class(self.class_index_of_name(*t), boundary),
                        realized(self.layer_name(*h), boundary - 1),
                    )
                };
                triples.push((self.up_edge_id(boundary - 1, j), tail, head));
            }
        }
        let quotient = FinDigraph::build(vertices, triples)?;
        let mut vertex_map: BTreeMap<VertexId, VertexId> = retained
            .vertex_set()
            .iter()
            .map(|v| (v.clone(), v.clone()))
            .collect();
        for (idx, name) in self.doc.layer.vertices.iter().enumerate() {
            vertex_map.insert(
                realized(name, boundary),
                self.dummy_of_class(self.class_index_of_name(idx), boundary),
            );
        }
        Ok(ContractionResult {
            quotient,
            vertex_map,
            dummies,
        })
    }

    fn parse_layer_vertex(&self, v: &VertexId) -> Option<(usize, usize)> {
        let (name, idx) = v.0.rsplit_once('@')?;
        let i: usize = idx.parse().ok()?;
        let l = self.doc.layer.vertices.iter().position(|n| n == name)?;
        Some((l, i))
    }

    /// The vertex of `G_n` that a site maps to: a retained vertex maps to
    /// itself, everything else to the dummy of the unique component whose
    /// closure holds the site.
    pub fn locate(&self, site: &Site, n: usize) -> Result<VertexId, SpecError> {
        if n == 0 {
            return Err(SpecError::BadDepth);
        }
        let boundary = n - 1;
        match site {
            Site::End(end) => {
                let class = self
                    .tail
                    .classes
                    .iter()
                    .position(|c| c.infinite && c.label == end.0)
                    .ok_or_else(|| SpecError::UnknownSite(format!("end:{end}")))?;
                Ok(self.dummy_of_class(class, boundary))
            }
            Site::Vertex(v) => {
                if self.doc.prefix.vertices.iter().any(|p| p == &v.0) {
                    return Ok(v.clone());
                }
                let (l, i) = self
                    .parse_layer_vertex(v)
                    .ok_or_else(|| SpecError::UnknownSite(v.0.clone()))?;
                if i < boundary {
                    Ok(v.clone())
                } else {
                    let class = self.deep_vertex_class(l, i - boundary)?;
                    Ok(self.dummy_of_class(class, boundary))
                }
            }
        }
    }

    // --- tail/window machinery ---

    fn window_dsu(&self, height: usize) -> Dsu {
        build_window_dsu(self.layer_size(), &self.intra, &self.up, height)
    }

    /// Class of `name@(frontier+offset)` among the components beyond the
    /// frontier layer, resolved through a window tall enough to connect the
    /// vertex back to the frontier.
    fn deep_vertex_class(&self, layer_idx: usize, offset: usize) -> Result<usize, SpecError> {
        if offset == 0 {
            return Ok(self.class_index_of_name(layer_idx));
        }
        let ls = self.layer_size();
        let slack = self.tail.window + 2;
        for attempt in 1..=3usize {
            let height = offset + attempt * slack;
            let mut dsu = self.window_dsu(height);
            let target = dsu.find(offset * ls + layer_idx);
            for l in 0..ls {
                if dsu.find(l) == target {
                    return Ok(self.class_index_of_name(l));
                }
            }
        }
        Err(SpecError::UnresolvedComponent(format!(
            "{}@+{offset}",
            self.layer_name(layer_idx)
        )))
    }

    /// For depth `n`, maps each realized vertex of layers `n-1 ..= top` to
    /// the label of the beyond-depth component it belongs to. Used to expand
    /// dummies of `G_n` back into concrete vertices.
    pub fn beyond_membership(
        &self,
        n: usize,
        top: usize,
    ) -> Result<BTreeMap<VertexId, String>, SpecError> {
        if n == 0 {
            return Err(SpecError::BadDepth);
        }
        let boundary = n - 1;
        if top < boundary {
            return Ok(BTreeMap::new());
        }
        let ls = self.layer_size();
        let height = (top - boundary) + self.tail.window + 2;
        let mut dsu = self.window_dsu(height);
        // Component representative -> class via its frontier members.
        let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        for l in 0..ls {
            class_of_root.insert(dsu.find(l), self.class_index_of_name(l));
        }
        let mut out = BTreeMap::new();
        for o in 0..=(top - boundary) {
            for l in 0..ls {
                if let Some(&class) = class_of_root.get(&dsu.find(o * ls + l)) {
                    out.insert(
                        realized(self.layer_name(l), boundary + o),
                        self.tail.classes[class].label.clone(),
                    );
                }
            }
        }
        Ok(out)
    }

    /// In-degree of a realized vertex in the full infinite graph, derived
    /// from the templates. `None` for names outside the presentation.
    pub fn global_in_degree(&self, v: &VertexId) -> Option<usize> {
        if let Some(p) = self.doc.prefix.vertices.iter().position(|n| n == &v.0) {
            let from_prefix = self.prefix_edges.iter().filter(|(_, h)| *h == p).count();
            let from_layer = self
                .attach
                .iter()
                .filter(|(q, _, d)| *q == p && *d == -1)
                .count();
            return Some(from_prefix + from_layer);
        }
        let (l, i) = self.parse_layer_vertex(v)?;
        let intra = self.intra.iter().filter(|(_, h)| *h == l).count();
        let from_below = self
            .up
            .iter()
            .filter(|(_, h, d)| *h == l && *d == 1)
            .count();
        let from_above = self
            .up
            .iter()
            .filter(|(_, h, d)| *h == l && *d == -1)
            .count();
        let from_attach = self
            .attach
            .iter()
            .filter(|(_, m, d)| *m == l && *d == 1)
            .count();
        Some(
            intra
                + from_above
                + if i >= 1 { from_below } else { 0 }
                + if i == 0 { from_attach } else { 0 },
        )
    }

    /// Ids of the up edges realized inside `B_n`, i.e. between consecutive
    /// layer copies both below depth `n`.
    pub fn up_edge_ids_within(&self, n: usize) -> BTreeSet<EdgeId> {
        let mut ids = BTreeSet::new();
        for i in 0..n.saturating_sub(1) {
            for j in 0..self.up.len() {
                ids.insert(self.up_edge_id(i, j));
            }
        }
        ids
    }

    /// Vertices of `B_n` that may receive further in-edges from beyond the
    /// truncation: heads of downward up-templates realized at the deepest
    /// layer.
    pub fn indeterminate_heads(&self, n: usize) -> BTreeSet<VertexId> {
        if n == 0 {
            return BTreeSet::new();
        }
        self.up
            .iter()
            .filter(|(_, _, d)| *d == -1)
            .map(|(_, h, _)| realized(self.layer_name(*h), n - 1))
            .collect()
    }
}

fn canonical_partition(dsu: &mut Dsu, layer_size: usize) -> Vec<usize> {
    // For each layer vertex, the least layer vertex sharing its component.
    let roots: Vec<usize> = (0..layer_size).map(|l| dsu.find(l)).collect();
    (0..layer_size)
        .map(|l| (0..layer_size).find(|&m| roots[m] == roots[l]).unwrap())
        .collect()
}

fn build_window_dsu(
    ls: usize,
    intra: &[(usize, usize)],
    up: &[(usize, usize, i8)],
    height: usize,
) -> Dsu {
    let mut dsu = Dsu::new((height + 1) * ls);
    for o in 0..=height {
        for (t, h) in intra {
            dsu.union(o * ls + t, o * ls + h);
        }
        if o < height {
            for (t, h, d) in up {
                // Weak components ignore the edge direction, but the layer
                // pairing depends on it: delta +1 realizes t@o -> h@(o+1),
                // delta -1 realizes t@(o+1) -> h@o.
                if *d == 1 {
                    dsu.union(o * ls + t, (o + 1) * ls + h);
                } else {
                    dsu.union((o + 1) * ls + t, o * ls + h);
                }
            }
        }
    }
    dsu
}

fn compute_tail(
    names: &[String],
    intra: &[(usize, usize)],
    up: &[(usize, usize, i8)],
) -> Result<TailPartition, SpecError> {
    let ls = names.len();
    let required_run = ls + 1;
    let t_max = (ls + 2) * (ls + 2) + 2;

    let mut run = 0usize;
    let mut prev: Option<Vec<usize>> = None;
    let mut accepted: Option<(usize, Vec<usize>)> = None;
    for t in 1..=t_max {
        let mut dsu = build_window_dsu(ls, intra, up, t);
        let part = canonical_partition(&mut dsu, ls);
        if prev.as_ref() == Some(&part) {
            run += 1;
        } else {
            run = 1;
            prev = Some(part.clone());
        }
        if run >= required_run {
            accepted = Some((t + 1 - run, part));
            break;
        }
    }
    let Some((window, part)) = accepted else {
        return Err(SpecError::NoStabilization);
    };

    // Infinite classes keep reaching the top of taller windows; a finite
    // hanging component stops. Also re-check that the partition itself has
    // not drifted at the taller window.
    let t_big = window + ls + 2;
    let mut dsu = build_window_dsu(ls, intra, up, t_big);
    if canonical_partition(&mut dsu, ls) != part {
        return Err(SpecError::NoStabilization);
    }
    let top_roots: BTreeSet<usize> = (0..ls).map(|l| dsu.find(t_big * ls + l)).collect();

    let mut classes: Vec<TailClass> = Vec::new();
    for least in 0..ls {
        if part[least] != least {
            continue;
        }
        let members: BTreeSet<String> = (0..ls)
            .filter(|&l| part[l] == least)
            .map(|l| names[l].clone())
            .collect();
        let infinite = top_roots.contains(&dsu.find(least));
        classes.push(TailClass {
            label: names[least].clone(),
            members,
            infinite,
        });
    }
    classes.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(TailPartition { classes, window })
}

impl Serialize for LayeredDigraphSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.doc.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LayeredDigraphSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = SpecDoc::deserialize(deserializer)?;
        LayeredDigraphSpec::from_doc(doc).map_err(D::Error::custom)
    }
}
