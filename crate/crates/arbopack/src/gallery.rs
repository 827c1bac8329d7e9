//! Built-in layered specs used as fixtures and demonstrations.
//!
//! Each entry carries a map of expected properties that the library itself
//! re-derives on demand, so the fixtures double as self-checking tests.
//! `forced_circle` is the showpiece: vertices of global in-degree one force
//! their unique in-edge into every spanning root-reachable set, and the
//! forced edges alone already contain two edge-disjoint directed paths from
//! the root into the same component beyond any depth — so every such set
//! closes an infinite circle and admits multiple arcs to the single end.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::branching::min_root_cut;
use crate::digraph::{EdgeId, VertexId};
use crate::layered::{LayeredDigraphSpec, Site, SpecDoc};
use crate::walk::extract_directed_path;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GalleryError {
    #[error("unknown example {0}")]
    UnknownExample(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// Properties an entry promises; `GalleryEntry::self_check` recomputes them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedProps {
    pub root: Site,
    pub end_count: usize,
    pub probe_depth: usize,
    pub min_root_connectivity: usize,
    pub forced_circle: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GalleryEntry {
    pub name: String,
    pub spec: LayeredDigraphSpec,
    pub expected: ExpectedProps,
}

/// Two edge-disjoint directed paths from a source into boundary vertices of
/// one beyond-depth component, using only forced edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedCircleWitness {
    pub class_label: String,
    pub endpoints: (VertexId, VertexId),
    pub paths: (BTreeSet<EdgeId>, BTreeSet<EdgeId>),
}

/// Edges of `B_n` whose head has global in-degree one. Such an edge lies in
/// every spanning root-reachable set: no other edge can serve its head.
pub fn forced_edges(spec: &LayeredDigraphSpec, n: usize) -> BTreeSet<EdgeId> {
    let g = spec.truncate(n);
    g.edges()
        .filter(|e| spec.global_in_degree(&e.head) == Some(1))
        .map(|e| e.id)
        .collect()
}

/// Searches `B_n` for two edge-disjoint forced paths from `source` to
/// boundary vertices of the same beyond-depth component.
pub fn forced_circle_witness(
    spec: &LayeredDigraphSpec,
    source: &VertexId,
    n: usize,
) -> Option<ForcedCircleWitness> {
    if n < 1 {
        return None;
    }
    let g = spec.truncate(n);
    let forced = forced_edges(spec, n);
    for class in spec.tail_classes() {
        let boundary: Vec<VertexId> = class
            .members
            .iter()
            .map(|name| spec.realized(name, n - 1))
            .collect();
        for b1 in &boundary {
            let Ok(p1) = extract_directed_path(&g, &forced, source, b1) else {
                continue;
            };
            let rest: BTreeSet<EdgeId> = forced.difference(&p1).copied().collect();
            for b2 in &boundary {
                if let Ok(p2) = extract_directed_path(&g, &rest, source, b2) {
                    return Some(ForcedCircleWitness {
                        class_label: class.label.clone(),
                        endpoints: (b1.clone(), b2.clone()),
                        paths: (p1, p2),
                    });
                }
            }
        }
    }
    None
}

impl GalleryEntry {
    fn new(name: &str, spec: LayeredDigraphSpec, expected: ExpectedProps) -> Self {
        GalleryEntry {
            name: name.to_string(),
            spec,
            expected,
        }
    }

    /// Recomputes every expected property and reports the first mismatch.
    pub fn self_check(&self) -> Result<(), String> {
        let ends = self.spec.list_ends().len();
        if ends != self.expected.end_count {
            return Err(format!(
                "{}: expected {} ends, derived {ends}",
                self.name, self.expected.end_count
            ));
        }
        let depth = self.expected.probe_depth;
        let res = self
            .spec
            .contract_at_depth(depth)
            .map_err(|e| format!("{}: {e}", self.name))?;
        let root = self
            .spec
            .locate(&self.expected.root, depth)
            .map_err(|e| format!("{}: {e}", self.name))?;
        let mrc = min_root_cut(&res.quotient, None, &root)
            .map(|(value, _)| value)
            .unwrap_or(usize::MAX);
        if mrc != self.expected.min_root_connectivity {
            return Err(format!(
                "{}: expected connectivity {}, derived {mrc}",
                self.name, self.expected.min_root_connectivity
            ));
        }
        let witness = forced_circle_witness(&self.spec, &VertexId::from("r"), depth);
        if witness.is_some() != self.expected.forced_circle {
            return Err(format!(
                "{}: forced-circle flag is {}, witness search says {}",
                self.name,
                self.expected.forced_circle,
                witness.is_some()
            ));
        }
        Ok(())
    }
}

fn root_at_r() -> Site {
    Site::Vertex(VertexId::from("r"))
}

fn forward_ray() -> GalleryEntry {
    let spec = LayeredDigraphSpec::from_doc(SpecDoc::new(
        &["r"],
        &[],
        &["v"],
        &[],
        &[("v", "v", 1)],
        &[("r", "v", 1)],
    ))
    .expect("builtin spec is valid");
    GalleryEntry::new(
        "forward_ray",
        spec,
        ExpectedProps {
            root: root_at_r(),
            end_count: 1,
            probe_depth: 5,
            min_root_connectivity: 1,
            forced_circle: false,
        },
    )
}

fn backward_ray_root() -> GalleryEntry {
    let spec = LayeredDigraphSpec::from_doc(SpecDoc::new(
        &["r"],
        &[],
        &["u"],
        &[],
        &[("u", "u", -1)],
        &[("r", "u", -1)],
    ))
    .expect("builtin spec is valid");
    GalleryEntry::new(
        "backward_ray_root",
        spec,
        ExpectedProps {
            // All edges point towards r, so packing works rooted at the end.
            root: Site::End(crate::layered::EndId("u".into())),
            end_count: 1,
            probe_depth: 5,
            min_root_connectivity: 1,
            forced_circle: false,
        },
    )
}

fn two_ended() -> GalleryEntry {
    let spec = LayeredDigraphSpec::from_doc(SpecDoc::new(
        &["r"],
        &[],
        &["a", "b"],
        &[],
        &[("a", "a", 1), ("b", "b", 1)],
        &[("r", "a", 1), ("r", "b", 1)],
    ))
    .expect("builtin spec is valid");
    GalleryEntry::new(
        "two_ended",
        spec,
        ExpectedProps {
            root: root_at_r(),
            end_count: 2,
            probe_depth: 5,
            min_root_connectivity: 1,
            forced_circle: false,
        },
    )
}

fn forced_circle() -> GalleryEntry {
    // Two rays a, b from r, merged into one end by the shared sinks c@i.
    // Every a@i and b@i has global in-degree one, so both full rays are
    // forced; the c@i keep their two in-edges and force nothing.
    let spec = LayeredDigraphSpec::from_doc(SpecDoc::new(
        &["r"],
        &[],
        &["a", "b", "c"],
        &[("a", "c"), ("b", "c")],
        &[("a", "a", 1), ("b", "b", 1)],
        &[("r", "a", 1), ("r", "b", 1)],
    ))
    .expect("builtin spec is valid");
    GalleryEntry::new(
        "forced_circle",
        spec,
        ExpectedProps {
            root: root_at_r(),
            end_count: 1,
            probe_depth: 5,
            min_root_connectivity: 1,
            forced_circle: true,
        },
    )
}

fn grid(k: usize) -> Result<GalleryEntry, GalleryError> {
    if k < 1 {
        return Err(GalleryError::BadParams("grid needs k >= 1".into()));
    }
    if k > 8 {
        return Err(GalleryError::BadParams("grid supports k <= 8".into()));
    }
    let up: Vec<(&str, &str, i8)> = (0..k).map(|_| ("v", "v", 1)).collect();
    let attach: Vec<(&str, &str, i8)> = (0..k).map(|_| ("r", "v", 1)).collect();
    let spec = LayeredDigraphSpec::from_doc(SpecDoc::new(&["r"], &[], &["v"], &[], &up, &attach))
        .expect("builtin spec is valid");
    Ok(GalleryEntry::new(
        &format!("grid:{k}"),
        spec,
        ExpectedProps {
            root: root_at_r(),
            end_count: 1,
            probe_depth: 5,
            min_root_connectivity: k,
            forced_circle: false,
        },
    ))
}

/// `forward_ray`, `backward_ray_root`, `two_ended`, `forced_circle`,
/// `grid:<k>`.
pub fn make_example(name: &str) -> Result<GalleryEntry, GalleryError> {
    match name {
        "forward_ray" => Ok(forward_ray()),
        "backward_ray_root" => Ok(backward_ray_root()),
        "two_ended" => Ok(two_ended()),
        "forced_circle" => Ok(forced_circle()),
        "grid" => Err(GalleryError::BadParams(
            "grid needs a parameter, e.g. grid:2".into(),
        )),
        other => match other.strip_prefix("grid:") {
            Some(arg) => {
                let k: usize = arg
                    .parse()
                    .map_err(|_| GalleryError::BadParams(format!("bad grid parameter {arg}")))?;
                grid(k)
            }
            None => Err(GalleryError::UnknownExample(other.to_string())),
        },
    }
}

/// The default fixture set.
pub fn gallery_entries() -> Vec<GalleryEntry> {
    vec![
        forward_ray(),
        backward_ray_root(),
        two_ended(),
        forced_circle(),
        grid(2).expect("grid:2 is valid"),
    ]
}
