//! Packing edge-disjoint spanning arborescences, in finite multidigraphs
//! and in lazily presented locally finite infinite digraphs.
//!
//! The finite side is the classic picture: a digraph rooted in `r` packs
//! `k` edge-disjoint spanning arborescences exactly when every vertex set
//! avoiding `r` receives at least `k` edges from outside, and the packing
//! is found constructively. The infinite side works through two families of
//! finite views of a layered presentation: truncations `B_n` and
//! contractions `G_n` that collapse everything beyond depth `n` into dummy
//! vertices. Packings of the deepest contraction restrict level by level
//! into a consistent chain, reachability is decided by finite cut criteria,
//! and minimal spanning reachable sets are characterized by their in-edge
//! structure. Every claim the library makes comes with a machine-checkable
//! witness: a walk, a cut, a parent map, or a per-edge deletion certificate.

pub mod branching;
pub mod digraph;
mod flow;
pub mod gallery;
pub mod layered;
pub mod lifting;
pub mod pseudo;
pub mod walk;

pub use branching::{
    min_root_connectivity, pack_arborescences, verify_arborescence_packing, ArborescencePacking,
    CutCertificate, PackOutcome, PackingCheck, PackingViolation, RootConnectivity,
};
pub use digraph::{ContractionResult, Cut, Edge, EdgeId, FinDigraph, GraphError, VertexId};
pub use gallery::{gallery_entries, make_example, ExpectedProps, GalleryEntry, GalleryError};
pub use layered::{EndId, LayeredDigraphSpec, Site, SpecDoc, SpecError, TailClass};
pub use lifting::{
    check_packing_condition, lift_chain, restrict_packing, validate_level_packing,
    ConditionOutcome, DepthCertificate, LevelPacking, LiftError, LiftOutcome, PackingChain,
};
pub use pseudo::{
    char_equivalence_probe, check_in_edges, check_in_edges_truncated, classify_components,
    classify_components_truncated, minimize_r_reachable, CharProbeLevel, CharProbeReport,
    ComponentKind, ComponentReport, ComponentSummary, InEdgeReport, MinimizeResult, PseudoError,
};
pub use walk::{
    crossing_signature, extract_directed_path, reachable_by_cut_criterion, verify_arc_family,
    verify_arc_family_at_depth, verify_walk_signature, ArcFamilyReport, CrossingSignature,
    FiniteWalk, ReachOutcome, SignatureCheck, TargetVerdict, WalkError, DEFAULT_ENUM_GUARD,
};
