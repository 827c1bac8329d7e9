//! Packing edge-disjoint spanning arborescences in finite multidigraphs.
//!
//! A digraph with root `r` has `k` edge-disjoint spanning arborescences
//! rooted in `r` exactly when every vertex set `Y` avoiding `r` receives at
//! least `k` edges from the outside. `pack_arborescences` realizes the
//! constructive direction: it grows one arborescence edge by edge, accepting
//! an edge only while the residual graph can still supply the remaining
//! demand, then recurses on the leftover edges.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::digraph::{EdgeId, FinDigraph, GraphError, VertexId};
use crate::flow::{FlowNet, INF};

/// Minimum over all cut sides avoiding the root of the incoming edge count.
/// `Unbounded` when the graph has no valid cut side (single vertex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootConnectivity {
    Unbounded,
    Finite(usize),
}

impl RootConnectivity {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            RootConnectivity::Unbounded => true,
            RootConnectivity::Finite(c) => c >= k,
        }
    }
}

/// A packing: `parts[i]` is the edge set of the i-th spanning arborescence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArborescencePacking {
    pub root: VertexId,
    pub parts: Vec<BTreeSet<EdgeId>>,
}

/// Witness that a requested packing is impossible: a side `Y` avoiding the
/// root with fewer than `k` incoming edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    pub side_y: BTreeSet<VertexId>,
    pub deficiency: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackOutcome {
    Packed(ArborescencePacking),
    Deficient(CutCertificate),
}

/// Why a claimed packing is not a packing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackingViolation {
    UnknownEdge {
        part: usize,
        edge: EdgeId,
    },
    SharedEdge {
        edge: EdgeId,
        parts: (usize, usize),
    },
    InDegree {
        part: usize,
        vertex: VertexId,
        count: usize,
    },
    RootInDegree {
        part: usize,
        count: usize,
    },
    NotSpanning {
        part: usize,
        vertex: VertexId,
    },
    NotTree {
        part: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackingCheck {
    Ok,
    Violation(PackingViolation),
}

impl PackingCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, PackingCheck::Ok)
    }
}

fn vertex_index(g: &FinDigraph) -> BTreeMap<&VertexId, usize> {
    g.vertices().enumerate().map(|(i, v)| (v, i)).collect()
}

fn build_net(
    g: &FinDigraph,
    allowed: Option<&BTreeSet<EdgeId>>,
    index: &BTreeMap<&VertexId, usize>,
) -> FlowNet {
    let mut net = FlowNet::new(g.vertex_count());
    for e in g.edges() {
        if allowed.is_none_or(|f| f.contains(&e.id)) {
            net.add_arc(index[&e.tail], index[&e.head], 1);
        }
    }
    net
}

/// True when every vertex other than `root` receives flow at least `k`
/// from `root` inside the `allowed` edge set.
pub(crate) fn root_connectivity_at_least(
    g: &FinDigraph,
    allowed: Option<&BTreeSet<EdgeId>>,
    root: &VertexId,
    k: usize,
) -> bool {
    if k == 0 {
        return true;
    }
    let index = vertex_index(g);
    let s = index[root];
    for (v, &t) in &index {
        if *v == root {
            continue;
        }
        let mut net = build_net(g, allowed, &index);
        if net.max_flow(s, t, k as i64) < k as i64 {
            return false;
        }
    }
    true
}

/// Exact minimum together with a worst side, or `None` on a single vertex.
pub(crate) fn min_root_cut(
    g: &FinDigraph,
    allowed: Option<&BTreeSet<EdgeId>>,
    root: &VertexId,
) -> Option<(usize, BTreeSet<VertexId>)> {
    let index = vertex_index(g);
    if g.vertex_count() < 2 {
        return None;
    }
    let s = index[root];
    let mut best: Option<(i64, BTreeSet<VertexId>)> = None;
    for (v, &t) in &index {
        if *v == root {
            continue;
        }
        let mut net = build_net(g, allowed, &index);
        let limit = best.as_ref().map_or(INF, |(b, _)| *b);
        let value = net.max_flow(s, t, limit);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            let reach = net.residual_reachable(s);
            let side_y: BTreeSet<VertexId> = index
                .iter()
                .filter(|(_, &i)| !reach[i])
                .map(|(v, _)| (**v).clone())
                .collect();
            best = Some((value, side_y));
        }
    }
    best.map(|(v, side)| (v as usize, side))
}

/// Minimum rooted edge-connectivity of `g` from `r`, computed by max-flow
/// to each other vertex with parallel edges contributing additively.
pub fn min_root_connectivity(g: &FinDigraph, r: &VertexId) -> Result<RootConnectivity, GraphError> {
    if !g.contains_vertex(r) {
        return Err(GraphError::UnknownVertex(r.clone()));
    }
    Ok(match min_root_cut(g, None, r) {
        None => RootConnectivity::Unbounded,
        Some((value, _)) => RootConnectivity::Finite(value),
    })
}

/// Packs `k` edge-disjoint spanning arborescences rooted in `r`, or returns
/// a deficient cut. Edge selection is lowest-id first so results are stable.
pub fn pack_arborescences(
    g: &FinDigraph,
    r: &VertexId,
    k: usize,
) -> Result<PackOutcome, GraphError> {
    if !g.contains_vertex(r) {
        return Err(GraphError::UnknownVertex(r.clone()));
    }
    if k == 0 {
        return Err(GraphError::ZeroK);
    }
    if g.vertex_count() == 1 {
        return Ok(PackOutcome::Packed(ArborescencePacking {
            root: r.clone(),
            parts: vec![BTreeSet::new(); k],
        }));
    }
    if let Some((value, side_y)) = min_root_cut(g, None, r) {
        if value < k {
            return Ok(PackOutcome::Deficient(CutCertificate {
                side_y,
                deficiency: value,
            }));
        }
    }

    let mut avail = g.edge_ids();
    let mut parts: Vec<BTreeSet<EdgeId>> = Vec::with_capacity(k);
    let edges_sorted: Vec<_> = {
        let mut es: Vec<_> = g.edges().collect();
        es.sort_by_key(|e| e.id);
        es
    };
    for i in 0..k {
        let need = k - i - 1;
        let mut part = BTreeSet::new();
        let mut covered: BTreeSet<&VertexId> = BTreeSet::from([r]);
        while covered.len() < g.vertex_count() {
            let mut accepted = None;
            for e in &edges_sorted {
                if !avail.contains(&e.id)
                    || part.contains(&e.id)
                    || !covered.contains(&e.tail)
                    || covered.contains(&e.head)
                {
                    continue;
                }
                let feasible = need == 0 || {
                    let mut rest = avail.clone();
                    for id in &part {
                        rest.remove(id);
                    }
                    rest.remove(&e.id);
                    root_connectivity_at_least(g, Some(&rest), r, need)
                };
                if feasible {
                    accepted = Some(*e);
                    break;
                }
            }
            let e = accepted.expect("growth cannot stall once the cut condition holds for k parts");
            part.insert(e.id);
            covered.insert(&e.head);
        }
        for id in &part {
            avail.remove(id);
        }
        parts.push(part);
    }
    Ok(PackOutcome::Packed(ArborescencePacking {
        root: r.clone(),
        parts,
    }))
}

/// Checks that `packing` really is a packing of edge-disjoint spanning
/// arborescences of `g`: parts pairwise disjoint and each part spanning,
/// with in-degree 1 everywhere except the root, in-degree 0 at the root,
/// and a tree as underlying graph.
pub fn verify_arborescence_packing(g: &FinDigraph, packing: &ArborescencePacking) -> PackingCheck {
    let r = &packing.root;
    if !g.contains_vertex(r) {
        return PackingCheck::Violation(PackingViolation::NotSpanning {
            part: 0,
            vertex: r.clone(),
        });
    }
    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (i, part) in packing.parts.iter().enumerate() {
        for id in part {
            if g.edge(*id).is_none() {
                return PackingCheck::Violation(PackingViolation::UnknownEdge {
                    part: i,
                    edge: *id,
                });
            }
            if let Some(&j) = owner.get(id) {
                return PackingCheck::Violation(PackingViolation::SharedEdge {
                    edge: *id,
                    parts: (j, i),
                });
            }
            owner.insert(*id, i);
        }
    }
    for (i, part) in packing.parts.iter().enumerate() {
        for v in g.vertices() {
            let indeg = g.in_edges(v).filter(|e| part.contains(&e.id)).count();
            if v == r {
                if indeg != 0 {
                    return PackingCheck::Violation(PackingViolation::RootInDegree {
                        part: i,
                        count: indeg,
                    });
                }
            } else if indeg != 1 {
                return PackingCheck::Violation(PackingViolation::InDegree {
                    part: i,
                    vertex: v.clone(),
                    count: indeg,
                });
            }
        }
        let reached = g.reachable_from(r, Some(part));
        if let Some(missing) = g.vertices().find(|v| !reached.contains(v)) {
            return PackingCheck::Violation(PackingViolation::NotSpanning {
                part: i,
                vertex: missing.clone(),
            });
        }
        if part.len() + 1 != g.vertex_count() {
            return PackingCheck::Violation(PackingViolation::NotTree { part: i });
        }
    }
    PackingCheck::Ok
}

/// All candidate sides `Y` with `exclude ∉ Y` and, when given, `include ∈ Y`.
/// Exponential; callers guard the vertex count.
pub(crate) fn enumerate_sides(
    g: &FinDigraph,
    include: Option<&VertexId>,
    exclude: &VertexId,
) -> Vec<BTreeSet<VertexId>> {
    let free: Vec<&VertexId> = g
        .vertices()
        .filter(|v| *v != exclude && Some(*v) != include)
        .collect();
    assert!(
        free.len() < 48,
        "cut enumeration over {} free vertices is infeasible",
        free.len()
    );
    let mut sides = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut side: BTreeSet<VertexId> = free
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| (*v).clone())
            .collect();
        if let Some(t) = include {
            side.insert(t.clone());
        }
        if !side.is_empty() && side.len() < g.vertex_count() {
            sides.push(side);
        }
    }
    sides
}
