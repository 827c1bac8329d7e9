//! Reachability through an edge set, decided by finite cut criteria.
//!
//! A target is reachable from a source through `F` exactly when every cut
//! separating them is crossed forward by some `F`-edge; the positive answer
//! carries a walk, the negative one a violated cut. Directed paths are the
//! inclusion-minimal sets satisfying the criterion, and any directed walk
//! crosses every separating cut once more forwards than backwards — that
//! count pair is the crossing signature.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::branching::enumerate_sides;
use crate::digraph::{Cut, EdgeId, FinDigraph, GraphError, VertexId};
use crate::layered::{LayeredDigraphSpec, Site, SpecError};

/// Vertex-count bound for exhaustive cut enumeration. The CLI lets the
/// environment raise it.
pub const DEFAULT_ENUM_GUARD: usize = 12;

/// An edge sequence with matching heads and tails, traversing each edge at
/// most once. The empty walk has equal start and end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteWalk {
    pub edges: Vec<EdgeId>,
    pub start: VertexId,
    pub end: VertexId,
}

impl FiniteWalk {
    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edges.iter().copied().collect()
    }

    pub fn validate(&self, g: &FinDigraph) -> Result<(), WalkError> {
        if !g.contains_vertex(&self.start) {
            return Err(GraphError::UnknownVertex(self.start.clone()).into());
        }
        if !g.contains_vertex(&self.end) {
            return Err(GraphError::UnknownVertex(self.end.clone()).into());
        }
        if self.edges.is_empty() {
            if self.start != self.end {
                return Err(WalkError::BrokenWalk(
                    "empty walk with distinct endpoints".into(),
                ));
            }
            return Ok(());
        }
        let mut seen = BTreeSet::new();
        let mut at = self.start.clone();
        for id in &self.edges {
            let e = g.edge(*id).ok_or(GraphError::UnknownEdge(*id))?;
            if !seen.insert(*id) {
                return Err(WalkError::BrokenWalk(format!("edge {id} repeats")));
            }
            if e.tail != at {
                return Err(WalkError::BrokenWalk(format!(
                    "edge {id} starts at {} instead of {at}",
                    e.tail
                )));
            }
            at = e.head.clone();
        }
        if at != self.end {
            return Err(WalkError::BrokenWalk(format!(
                "walk ends at {at} instead of {}",
                self.end
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum WalkError {
    #[error("start and end coincide")]
    SameEndpoints,
    #[error("{to} is not reachable from {from}")]
    NotReachable { from: VertexId, to: VertexId },
    #[error("graph has {vertices} vertices, enumeration guard is {guard}")]
    TooLarge { vertices: usize, guard: usize },
    #[error("broken walk: {0}")]
    BrokenWalk(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReachOutcome {
    Reachable(FiniteWalk),
    Separated(Cut),
}

/// Distance of every vertex to `t` through `f`-edges, by reverse search.
fn dist_to(g: &FinDigraph, f: &BTreeSet<EdgeId>, t: &VertexId) -> BTreeMap<VertexId, usize> {
    let mut dist = BTreeMap::from([(t.clone(), 0usize)]);
    let mut frontier = vec![t.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in frontier {
            let d = dist[&v];
            for e in g.in_edges(&v) {
                if f.contains(&e.id) && !dist.contains_key(&e.tail) {
                    dist.insert(e.tail.clone(), d + 1);
                    next.push(e.tail.clone());
                }
            }
        }
        frontier = next;
    }
    dist
}

/// The lexicographically least shortest `s`-`t` path through `f`, as an
/// ordered edge sequence. `None` when unreachable.
fn least_shortest_path(
    g: &FinDigraph,
    f: &BTreeSet<EdgeId>,
    s: &VertexId,
    t: &VertexId,
) -> Option<Vec<EdgeId>> {
    let dist = dist_to(g, f, t);
    let mut remaining = *dist.get(s)?;
    let mut edges = Vec::with_capacity(remaining);
    let mut at = s.clone();
    while remaining > 0 {
        let step = g
            .edges()
            .filter(|e| {
                e.tail == at && f.contains(&e.id) && dist.get(&e.head) == Some(&(remaining - 1))
            })
            .min_by_key(|e| e.id)
            .expect("distance labels admit a next step");
        at = step.head.clone();
        remaining -= 1;
        edges.push(step.id);
    }
    Some(edges)
}

/// Decides whether `t` is reachable from `s` through `f`: either a walk
/// witness or a cut separating them with no forward `f`-edge.
pub fn reachable_by_cut_criterion(
    g: &FinDigraph,
    f: &BTreeSet<EdgeId>,
    s: &VertexId,
    t: &VertexId,
) -> Result<ReachOutcome, WalkError> {
    if !g.contains_vertex(s) {
        return Err(GraphError::UnknownVertex(s.clone()).into());
    }
    if !g.contains_vertex(t) {
        return Err(GraphError::UnknownVertex(t.clone()).into());
    }
    if s == t {
        return Err(WalkError::SameEndpoints);
    }
    match least_shortest_path(g, f, s, t) {
        Some(edges) => Ok(ReachOutcome::Reachable(FiniteWalk {
            edges,
            start: s.clone(),
            end: t.clone(),
        })),
        None => {
            // Everything that can reach t forms a side no f-edge enters.
            let side_y = g.co_reachable(t, Some(f));
            let cut = g.cut_of(&side_y)?;
            debug_assert!(cut.forward.is_disjoint(f));
            Ok(ReachOutcome::Separated(cut))
        }
    }
}

/// An inclusion-minimal subset of `f` whose edges witness the cut criterion
/// from `s` to `t`: the edge set of a directed path. Deterministic through
/// the shortest-path choice and a descending-id pruning pass.
pub fn extract_directed_path(
    g: &FinDigraph,
    f: &BTreeSet<EdgeId>,
    s: &VertexId,
    t: &VertexId,
) -> Result<BTreeSet<EdgeId>, WalkError> {
    let walk = match reachable_by_cut_criterion(g, f, s, t)? {
        ReachOutcome::Reachable(w) => w,
        ReachOutcome::Separated(_) => {
            return Err(WalkError::NotReachable {
                from: s.clone(),
                to: t.clone(),
            })
        }
    };
    let mut path = walk.edge_set();
    for id in path.iter().rev().copied().collect::<Vec<_>>() {
        let mut without = path.clone();
        without.remove(&id);
        if g.reachable_from(s, Some(&without)).contains(t) {
            path = without;
        }
    }
    Ok(path)
}

/// Forward and backward crossing counts of an edge set over one cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingSignature {
    pub cut: Cut,
    pub forward_count: usize,
    pub backward_count: usize,
}

pub fn crossing_signature(
    g: &FinDigraph,
    w: &BTreeSet<EdgeId>,
    side_y: &BTreeSet<VertexId>,
) -> Result<CrossingSignature, GraphError> {
    let cut = g.cut_of(side_y)?;
    let forward_count = cut.forward.intersection(w).count();
    let backward_count = cut.backward.intersection(w).count();
    Ok(CrossingSignature {
        cut,
        forward_count,
        backward_count,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignatureCheck {
    Ok,
    Violation {
        cut: Cut,
        forward: usize,
        backward: usize,
    },
}

/// Checks `forward = backward + 1` for the walk's edge set over every cut
/// separating its endpoints, by full enumeration. The walk's edges must
/// exist and be distinct; a sequence that is not actually connected shows
/// up as a violated cut.
pub fn verify_walk_signature(
    g: &FinDigraph,
    walk: &FiniteWalk,
    enum_guard: usize,
) -> Result<SignatureCheck, WalkError> {
    if walk.start == walk.end {
        return Err(WalkError::SameEndpoints);
    }
    if g.vertex_count() > enum_guard {
        return Err(WalkError::TooLarge {
            vertices: g.vertex_count(),
            guard: enum_guard,
        });
    }
    if !g.contains_vertex(&walk.start) {
        return Err(GraphError::UnknownVertex(walk.start.clone()).into());
    }
    if !g.contains_vertex(&walk.end) {
        return Err(GraphError::UnknownVertex(walk.end.clone()).into());
    }
    let mut seen = BTreeSet::new();
    for id in &walk.edges {
        if g.edge(*id).is_none() {
            return Err(GraphError::UnknownEdge(*id).into());
        }
        if !seen.insert(*id) {
            return Err(WalkError::BrokenWalk(format!("edge {id} repeats")));
        }
    }
    let w = walk.edge_set();
    for side in enumerate_sides(g, Some(&walk.end), &walk.start) {
        let sig = crossing_signature(g, &w, &side)?;
        if sig.forward_count != sig.backward_count + 1 {
            return Ok(SignatureCheck::Violation {
                forward: sig.forward_count,
                backward: sig.backward_count,
                cut: sig.cut,
            });
        }
    }
    Ok(SignatureCheck::Ok)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetOutcome {
    Reachable { path: BTreeSet<EdgeId> },
    Separated { cut: Cut },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetVerdict {
    pub target: Site,
    pub located: VertexId,
    pub outcome: TargetOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcFamilyReport {
    pub targets: Vec<TargetVerdict>,
}

impl ArcFamilyReport {
    pub fn all_reachable(&self) -> bool {
        self.targets
            .iter()
            .all(|t| matches!(t.outcome, TargetOutcome::Reachable { .. }))
    }
}

fn target_verdict(
    g: &FinDigraph,
    f: &BTreeSet<EdgeId>,
    root: &VertexId,
    target: Site,
    located: VertexId,
) -> Result<TargetVerdict, WalkError> {
    let outcome = if &located == root {
        TargetOutcome::Reachable {
            path: BTreeSet::new(),
        }
    } else {
        match reachable_by_cut_criterion(g, f, root, &located)? {
            ReachOutcome::Reachable(_) => TargetOutcome::Reachable {
                path: extract_directed_path(g, f, root, &located)?,
            },
            ReachOutcome::Separated(cut) => TargetOutcome::Separated { cut },
        }
    };
    Ok(TargetVerdict {
        target,
        located,
        outcome,
    })
}

/// Per-target reachability of `targets` from `root` through `f`, with a
/// directed path or a violated cut for each.
pub fn verify_arc_family(
    g: &FinDigraph,
    f: &BTreeSet<EdgeId>,
    root: &VertexId,
    targets: &[VertexId],
) -> Result<ArcFamilyReport, WalkError> {
    let mut verdicts = Vec::new();
    for t in targets {
        if !g.contains_vertex(t) {
            return Err(GraphError::UnknownVertex(t.clone()).into());
        }
        verdicts.push(target_verdict(
            g,
            f,
            root,
            Site::Vertex(t.clone()),
            t.clone(),
        )?);
    }
    Ok(ArcFamilyReport { targets: verdicts })
}

/// The same on the contraction `G_n` of a layered spec: the root and all
/// targets, vertices or ends, are first located in `G_n`, ends landing on
/// their dummy vertex.
pub fn verify_arc_family_at_depth(
    spec: &LayeredDigraphSpec,
    f: &BTreeSet<EdgeId>,
    root: &Site,
    targets: &[Site],
    n: usize,
) -> Result<ArcFamilyReport, WalkError> {
    let res = spec.contract_at_depth(n)?;
    let g = &res.quotient;
    let located_root = spec.locate(root, n)?;
    let mut verdicts = Vec::new();
    for target in targets {
        let located = spec.locate(target, n)?;
        verdicts.push(target_verdict(
            g,
            f,
            &located_root,
            target.clone(),
            located,
        )?);
    }
    Ok(ArcFamilyReport { targets: verdicts })
}
