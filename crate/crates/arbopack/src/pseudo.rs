//! Minimal spanning root-reachable sets and their tree-like structure.
//!
//! On a finite digraph a spanning root-reachable set is inclusion-minimal
//! exactly when every non-root vertex has a unique in-edge and the root has
//! none; the components of such a set are arborescences. On truncations the
//! same checks apply, except that vertices whose in-edges may live beyond
//! the truncation depth get a third verdict, boundary-indeterminate, and
//! components may legitimately chain out of the visible ball instead of
//! terminating at the root.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Cut, EdgeId, FinDigraph, GraphError, VertexId};
use crate::layered::{LayeredDigraphSpec, Site, SpecError};
use crate::lifting::{
    check_packing_condition, lift_chain, ConditionOutcome, LiftError, LiftOutcome,
};

#[derive(Debug, Error)]
pub enum PseudoError {
    #[error("edge set does not reach {vertex}")]
    NotReachable { vertex: VertexId },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

/// A minimized edge set together with, for every retained edge, a cut that
/// only this edge crosses forward — the witness that it cannot be dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimizeResult {
    pub minimal: BTreeSet<EdgeId>,
    pub witnesses: BTreeMap<EdgeId, Cut>,
}

fn first_unreached(g: &FinDigraph, r: &VertexId, f: &BTreeSet<EdgeId>) -> Option<VertexId> {
    let reached = g.reachable_from(r, Some(f));
    g.vertices().find(|v| !reached.contains(v)).cloned()
}

/// Greedily deletes edges (highest id first) while every vertex stays
/// reachable from `r` through the remaining set. A single descending pass
/// yields an inclusion-minimal set because reachability is monotone in the
/// edge set.
pub fn minimize_r_reachable(
    g: &FinDigraph,
    f: &BTreeSet<EdgeId>,
    r: &VertexId,
) -> Result<MinimizeResult, PseudoError> {
    if !g.contains_vertex(r) {
        return Err(PseudoError::Graph(GraphError::UnknownVertex(r.clone())));
    }
    for id in f {
        if g.edge(*id).is_none() {
            return Err(PseudoError::Graph(GraphError::UnknownEdge(*id)));
        }
    }
    if let Some(vertex) = first_unreached(g, r, f) {
        return Err(PseudoError::NotReachable { vertex });
    }
    let mut minimal = f.clone();
    for id in f.iter().rev().copied().collect::<Vec<_>>() {
        let mut without = minimal.clone();
        without.remove(&id);
        if first_unreached(g, r, &without).is_none() {
            minimal = without;
        }
    }
    let mut witnesses = BTreeMap::new();
    for id in &minimal {
        let mut without = minimal.clone();
        without.remove(id);
        let reached = g.reachable_from(r, Some(&without));
        let side_y: BTreeSet<VertexId> = g
            .vertices()
            .filter(|v| !reached.contains(v))
            .cloned()
            .collect();
        let cut = g
            .cut_of(&side_y)
            .expect("a retained edge leaves a nonempty unreached side");
        witnesses.insert(*id, cut);
    }
    Ok(MinimizeResult { minimal, witnesses })
}

/// Nonempty `M` avoiding `r` with `|M| <= max_size` that receives no edge
/// of `f` from outside, if one exists.
pub fn small_set_violation(
    g: &FinDigraph,
    f: &BTreeSet<EdgeId>,
    r: &VertexId,
    max_size: usize,
) -> Option<BTreeSet<VertexId>> {
    let candidates: Vec<&VertexId> = g.vertices().filter(|v| *v != r).collect();
    let starved = |m: &BTreeSet<VertexId>| {
        !g.edges()
            .any(|e| f.contains(&e.id) && m.contains(&e.head) && !m.contains(&e.tail))
    };
    // Subsets by size, in index order within each size.
    let mut stack: Vec<(BTreeSet<VertexId>, usize)> = vec![(BTreeSet::new(), 0)];
    while let Some((m, next)) = stack.pop() {
        if !m.is_empty() && starved(&m) {
            return Some(m);
        }
        if m.len() == max_size {
            continue;
        }
        for i in (next..candidates.len()).rev() {
            let mut bigger = m.clone();
            bigger.insert(candidates[i].clone());
            stack.push((bigger, i + 1));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InEdgeViolation {
    pub vertex: VertexId,
    pub count: usize,
}

/// Per-vertex verdicts of the unique-in-edge condition. `is_ok` tolerates
/// boundary-indeterminate vertices: a truncation cannot decide them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InEdgeReport {
    pub violations: Vec<InEdgeViolation>,
    pub boundary_indeterminate: BTreeSet<VertexId>,
}

impl InEdgeReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn in_edge_report(
    g: &FinDigraph,
    boundary: &BTreeSet<VertexId>,
    f: &BTreeSet<EdgeId>,
    r: &VertexId,
) -> InEdgeReport {
    let mut violations = Vec::new();
    let mut indeterminate = BTreeSet::new();
    for v in g.vertices() {
        let count = g.in_edges(v).filter(|e| f.contains(&e.id)).count();
        if v == r {
            if count > 0 {
                violations.push(InEdgeViolation {
                    vertex: v.clone(),
                    count,
                });
            } else if boundary.contains(v) {
                indeterminate.insert(v.clone());
            }
        } else if count >= 2 {
            violations.push(InEdgeViolation {
                vertex: v.clone(),
                count,
            });
        } else if boundary.contains(v) {
            indeterminate.insert(v.clone());
        } else if count == 0 {
            violations.push(InEdgeViolation {
                vertex: v.clone(),
                count,
            });
        }
    }
    InEdgeReport {
        violations,
        boundary_indeterminate: indeterminate,
    }
}

/// Unique-in-edge check on a plain finite digraph: every vertex other than
/// `r` has exactly one `f`-in-edge and `r` has none.
pub fn check_in_edges(g: &FinDigraph, f: &BTreeSet<EdgeId>, r: &VertexId) -> InEdgeReport {
    in_edge_report(g, &BTreeSet::new(), f, r)
}

/// The same check on the truncation `B_n`, flagging vertices whose in-edges
/// may lie beyond depth `n` as boundary-indeterminate instead of violated.
pub fn check_in_edges_truncated(
    spec: &LayeredDigraphSpec,
    n: usize,
    f: &BTreeSet<EdgeId>,
    r: &VertexId,
) -> InEdgeReport {
    let g = spec.truncate(n);
    in_edge_report(&g, &spec.indeterminate_heads(n), f, r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    RootedAtRoot,
    ExitsToInfinity(VertexId),
    Violation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub vertices: BTreeSet<VertexId>,
    pub kind: ComponentKind,
    /// Unique in-edge of each vertex that has one inside the component.
    pub parents: BTreeMap<VertexId, EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub components: Vec<ComponentSummary>,
}

impl ComponentReport {
    pub fn violation_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| matches!(c.kind, ComponentKind::Violation(_)))
            .count()
    }

    pub fn kinds(&self) -> Vec<&ComponentKind> {
        self.components.iter().map(|c| &c.kind).collect()
    }
}

fn classify(
    g: &FinDigraph,
    boundary: &BTreeSet<VertexId>,
    f: &BTreeSet<EdgeId>,
    r: &VertexId,
) -> Result<ComponentReport, PseudoError> {
    let report = in_edge_report(g, boundary, f, r);
    if let Some(v) = report.violations.first() {
        return Err(PseudoError::PreconditionFailed(format!(
            "vertex {} has {} in-edges",
            v.vertex, v.count
        )));
    }
    // Weak components of (V, F); untouched vertices form trivial components.
    let sub = FinDigraph::build(
        g.vertices().cloned().collect::<Vec<_>>(),
        g.edges()
            .filter(|e| f.contains(&e.id))
            .map(|e| (e.id, e.tail.clone(), e.head.clone()))
            .collect::<Vec<_>>(),
    )?;
    let mut components = Vec::new();
    for verts in sub.weak_components() {
        let mut parents = BTreeMap::new();
        for v in &verts {
            if let Some(e) = sub.in_edges(v).find(|e| f.contains(&e.id)) {
                parents.insert(v.clone(), e.id);
            }
        }
        let edge_count = sub.edges().filter(|e| verts.contains(&e.tail)).count();
        let rootless: Vec<&VertexId> = verts.iter().filter(|v| !parents.contains_key(*v)).collect();

        let kind = if rootless.is_empty() {
            ComponentKind::Violation("contains a cycle".into())
        } else if rootless.len() > 1 {
            ComponentKind::Violation(format!(
                "multiple in-edge-free vertices: {}",
                rootless
                    .iter()
                    .map(|v| v.0.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        } else {
            let sink = rootless[0];
            // Follow every parent chain; each must end at the unique
            // in-edge-free vertex without revisiting anything.
            let mut chain_ok = true;
            'outer: for v in &verts {
                let mut current = v.clone();
                let mut steps = 0usize;
                while let Some(edge) = parents.get(&current) {
                    current = sub.edge(*edge).expect("parent edge exists").tail.clone();
                    steps += 1;
                    if steps > verts.len() {
                        chain_ok = false;
                        break 'outer;
                    }
                }
                if &current != sink {
                    chain_ok = false;
                    break;
                }
            }
            if !chain_ok {
                ComponentKind::Violation("a parent chain revisits a vertex".into())
            } else if edge_count + 1 != verts.len() {
                ComponentKind::Violation("underlying graph is not a tree".into())
            } else if sink == r {
                ComponentKind::RootedAtRoot
            } else if boundary.contains(sink) {
                ComponentKind::ExitsToInfinity(sink.clone())
            } else {
                ComponentKind::Violation(format!("{sink} has no in-edge"))
            }
        };
        components.push(ComponentSummary {
            vertices: verts,
            kind,
            parents,
        });
    }
    Ok(ComponentReport { components })
}

/// Classifies the weak components of `(V, F)` on a plain finite digraph:
/// with the unique-in-edge condition satisfied, each one must be an
/// arborescence rooted at `r`.
pub fn classify_components(
    g: &FinDigraph,
    f: &BTreeSet<EdgeId>,
    r: &VertexId,
) -> Result<ComponentReport, PseudoError> {
    classify(g, &BTreeSet::new(), f, r)
}

/// Classifies components on the truncation `B_n`. Components whose parent
/// chains leave the visible ball are reported as exits to infinity, the
/// truncated shadow of a backwards directed ray.
pub fn classify_components_truncated(
    spec: &LayeredDigraphSpec,
    n: usize,
    f: &BTreeSet<EdgeId>,
    r: &VertexId,
) -> Result<ComponentReport, PseudoError> {
    let g = spec.truncate(n);
    classify(&g, &spec.indeterminate_heads(n), f, r)
}

/// Per-level record of the equivalence probe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharProbeLevel {
    pub depth: usize,
    pub root: VertexId,
    pub minimal: BTreeSet<EdgeId>,
    pub unique_in_edges: bool,
    pub single_root_component: bool,
    /// Deletion witness per retained edge: a cut crossed forward only by it.
    pub witnesses: BTreeMap<EdgeId, Cut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharProbeReport {
    pub levels: Vec<CharProbeLevel>,
}

impl CharProbeReport {
    pub fn is_ok(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.unique_in_edges && l.single_root_component)
    }
}

/// Runs the minimality characterization on every contraction up to `depth`:
/// lifts a single spanning reachable set, minimizes it per level, and checks
/// that minimality, unique in-edges and arborescence structure coincide,
/// with per-edge deletion witnesses for the converse direction.
pub fn char_equivalence_probe(
    spec: &LayeredDigraphSpec,
    site: &Site,
    depth: usize,
    enum_guard: usize,
) -> Result<CharProbeReport, PseudoError> {
    match check_packing_condition(spec, site, 1, depth)? {
        ConditionOutcome::Ok => {}
        ConditionOutcome::Deficient(c) => {
            return Err(PseudoError::PreconditionFailed(format!(
                "packing condition fails at depth {} with deficiency {}",
                c.depth, c.certificate.deficiency
            )))
        }
    }
    let chain = match lift_chain(spec, site, 1, depth, enum_guard)? {
        LiftOutcome::Chain(c) => c,
        LiftOutcome::Deficient(_) => unreachable!("condition was just verified"),
    };
    let mut levels = Vec::new();
    for level in &chain.levels {
        let g = spec.contract_at_depth(level.depth)?.quotient;
        let minimized = minimize_r_reachable(&g, &level.parts[0], &level.root)?;
        let unique_in_edges = check_in_edges(&g, &minimized.minimal, &level.root).is_ok();
        let components = classify_components(&g, &minimized.minimal, &level.root)?;
        let single_root_component = components.components.len() == 1
            && components
                .kinds()
                .iter()
                .all(|k| matches!(k, ComponentKind::RootedAtRoot));
        levels.push(CharProbeLevel {
            depth: level.depth,
            root: level.root.clone(),
            minimal: minimized.minimal,
            unique_in_edges,
            single_root_component,
            witnesses: minimized.witnesses,
        });
    }
    Ok(CharProbeReport { levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layered::SpecDoc;
    use crate::walk::DEFAULT_ENUM_GUARD;

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

    fn backward_ray() -> LayeredDigraphSpec {
        LayeredDigraphSpec::from_doc(SpecDoc::new(
            &["r"],
            &[],
            &["u"],
            &[],
            &[("u", "u", -1)],
            &[("r", "u", -1)],
        ))
        .unwrap()
    }

    #[test]
    fn minimize_four_edge_graph() {
        // Descending deletion drops b→a then a→b, keeping both root edges.
        let g = graph(
            &["r", "a", "b"],
            &[("r", "a"), ("r", "b"), ("a", "b"), ("b", "a")],
        );
        let all = g.edge_ids();
        let res = minimize_r_reachable(&g, &all, &v("r")).unwrap();
        assert_eq!(res.minimal, BTreeSet::from([EdgeId(0), EdgeId(1)]));
    }

    #[test]
    fn minimize_keeps_an_arborescence_fixed() {
        let g = graph(&["r", "a", "b"], &[("r", "a"), ("a", "b")]);
        let all = g.edge_ids();
        let res = minimize_r_reachable(&g, &all, &v("r")).unwrap();
        assert_eq!(res.minimal, all);
    }

    #[test]
    fn minimize_rejects_unreachable_input() {
        let g = graph(&["r", "a", "b"], &[("r", "a"), ("a", "b")]);
        let f = BTreeSet::from([EdgeId(0)]);
        match minimize_r_reachable(&g, &f, &v("r")) {
            Err(PseudoError::NotReachable { vertex }) => assert_eq!(vertex, v("b")),
            other => panic!("expected NotReachable, got {other:?}"),
        }
    }

    #[test]
    fn minimize_witnesses_are_crossed_once() {
        let g = graph(
            &["r", "a", "b", "c"],
            &[("r", "a"), ("a", "b"), ("b", "c"), ("r", "c"), ("c", "a")],
        );
        let res = minimize_r_reachable(&g, &g.edge_ids(), &v("r")).unwrap();
        for (id, cut) in &res.witnesses {
            let crossing: BTreeSet<EdgeId> =
                cut.forward.intersection(&res.minimal).copied().collect();
            assert_eq!(crossing, BTreeSet::from([*id]));
        }
    }

    #[test]
    fn minimal_set_is_an_arborescence() {
        let g = graph(
            &["r", "a", "b", "c"],
            &[
                ("r", "a"),
                ("a", "b"),
                ("b", "c"),
                ("r", "c"),
                ("c", "a"),
                ("b", "a"),
            ],
        );
        let res = minimize_r_reachable(&g, &g.edge_ids(), &v("r")).unwrap();
        let packing = crate::branching::ArborescencePacking {
            root: v("r"),
            parts: vec![res.minimal.clone()],
        };
        assert!(crate::branching::verify_arborescence_packing(&g, &packing).is_ok());
    }

    #[test]
    fn in_edges_accept_an_arborescence() {
        let g = graph(&["r", "a", "b"], &[("r", "a"), ("a", "b")]);
        assert!(check_in_edges(&g, &g.edge_ids(), &v("r")).is_ok());
    }

    #[test]
    fn in_edges_report_double_head() {
        let g = graph(&["r", "a", "b"], &[("r", "a"), ("b", "a"), ("r", "b")]);
        let report = check_in_edges(&g, &g.edge_ids(), &v("r"));
        assert_eq!(
            report.violations,
            vec![InEdgeViolation {
                vertex: v("a"),
                count: 2
            }]
        );
    }

    #[test]
    fn truncated_in_edges_flag_the_boundary() {
        let spec = backward_ray();
        // Template edges of B_5: ids 1..=4 realize u@i+1 -> u@i; id 0 is the
        // attach edge u@0 -> r, deliberately excluded.
        let f: BTreeSet<EdgeId> = (1..=4).map(EdgeId).collect();
        let report = check_in_edges_truncated(&spec, 5, &f, &v("r"));
        assert!(report.is_ok());
        assert_eq!(report.boundary_indeterminate, BTreeSet::from([v("u@4")]));
    }

    #[test]
    fn classify_single_arborescence() {
        let g = graph(&["r", "a", "b"], &[("r", "a"), ("a", "b")]);
        let report = classify_components(&g, &g.edge_ids(), &v("r")).unwrap();
        assert_eq!(report.components.len(), 1);
        assert_eq!(report.kinds(), vec![&ComponentKind::RootedAtRoot]);
    }

    #[test]
    fn classify_backward_ray_exits_to_infinity() {
        let spec = backward_ray();
        let f: BTreeSet<EdgeId> = (1..=4).map(EdgeId).collect();
        let report = classify_components_truncated(&spec, 5, &f, &v("r")).unwrap();
        assert_eq!(report.components.len(), 2);
        assert_eq!(report.violation_count(), 0);
        let kinds = report.kinds();
        assert!(kinds.contains(&&ComponentKind::RootedAtRoot)); // {r} alone
        assert!(kinds.contains(&&ComponentKind::ExitsToInfinity(v("u@4"))));
    }

    #[test]
    fn classify_rejects_extra_in_edge_into_cycle() {
        let g = graph(&["r", "a", "b"], &[("a", "b"), ("b", "a"), ("r", "a")]);
        match classify_components(&g, &g.edge_ids(), &v("r")) {
            Err(PseudoError::PreconditionFailed(msg)) => assert!(msg.contains("a")),
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn classify_reports_pure_cycle() {
        // In-edge counts are fine (a and b have one each), but the component
        // is a cycle, not a tree.
        let g = graph(&["r", "a", "b"], &[("a", "b"), ("b", "a")]);
        let report = classify_components(&g, &g.edge_ids(), &v("r")).unwrap();
        assert_eq!(report.violation_count(), 1);
        assert!(report
            .kinds()
            .iter()
            .any(|k| matches!(k, ComponentKind::Violation(m) if m.contains("cycle"))));
    }

    #[test]
    fn char_probe_on_forward_ray() {
        let spec = LayeredDigraphSpec::from_doc(SpecDoc::new(
            &["r"],
            &[],
            &["v"],
            &[],
            &[("v", "v", 1)],
            &[("r", "v", 1)],
        ))
        .unwrap();
        let site = Site::Vertex(v("r"));
        let report = char_equivalence_probe(&spec, &site, 6, DEFAULT_ENUM_GUARD).unwrap();
        assert!(report.is_ok());
        assert_eq!(report.levels.len(), 6);
        for level in &report.levels {
            assert_eq!(level.witnesses.len(), level.minimal.len());
        }
    }

    #[test]
    fn char_probe_on_merged_and_split_tails() {
        for (name, depth) in [("forced_circle", 6), ("two_ended", 4)] {
            let entry = crate::gallery::make_example(name).unwrap();
            let report = char_equivalence_probe(
                &entry.spec,
                &entry.expected.root,
                depth,
                DEFAULT_ENUM_GUARD,
            )
            .unwrap();
            assert!(report.is_ok(), "{name}");
            assert_eq!(report.levels.len(), depth, "{name}");
        }
    }

    #[test]
    fn small_set_violation_finds_starved_pairs() {
        let g = graph(&["r", "a", "b"], &[("r", "a"), ("a", "b"), ("b", "a")]);
        // F = {a→b, b→a}: the pair {a, b} receives nothing from outside.
        let f = BTreeSet::from([EdgeId(1), EdgeId(2)]);
        assert_eq!(
            small_set_violation(&g, &f, &v("r"), 2),
            Some(BTreeSet::from([v("a"), v("b")]))
        );
        assert_eq!(small_set_violation(&g, &g.edge_ids(), &v("r"), 2), None);
    }
}
