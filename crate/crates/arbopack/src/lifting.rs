//! Level packings on the contractions `G_n` and their restriction chains.
//!
//! A packing of the deepest contraction induces one on every shallower
//! contraction by intersecting each part with the shallower edge set; edge
//! ids are stable across depths, so the intersection is well defined. A
//! restriction-consistent chain down to depth 1 is the finite, checkable
//! surrogate of an inverse-limit ray: the condition that every contraction
//! satisfies the cut bound is certified level by level, and a failure comes
//! with the deficient cut.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::branching::{
    min_root_cut, pack_arborescences, root_connectivity_at_least, CutCertificate, PackOutcome,
};
use crate::digraph::{EdgeId, FinDigraph, GraphError, VertexId};
use crate::layered::{LayeredDigraphSpec, Site, SpecError};

/// `k` pairwise disjoint spanning root-reachable edge sets of `G_depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelPacking {
    #[serde(rename = "n")]
    pub depth: usize,
    pub site: Site,
    pub root: VertexId,
    pub parts: Vec<BTreeSet<EdgeId>>,
}

/// Restriction-consistent level packings for depths `1..=N`, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PackingChain {
    pub levels: Vec<LevelPacking>,
}

/// A deficient cut found at some depth, blocking the requested packing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthCertificate {
    pub depth: usize,
    pub requested: usize,
    pub certificate: CutCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionOutcome {
    Ok,
    Deficient(DepthCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftOutcome {
    Chain(PackingChain),
    Deficient(DepthCertificate),
}

#[derive(Debug, Error)]
pub enum LiftError {
    #[error("invalid level packing at depth {depth}: {reason}")]
    InvalidLevelPacking { depth: usize, reason: String },
    #[error("depth must be at least 1")]
    BadDepth,
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn invalid(depth: usize, reason: impl Into<String>) -> LiftError {
    LiftError::InvalidLevelPacking {
        depth,
        reason: reason.into(),
    }
}

fn part_spans(
    g: &FinDigraph,
    root: &VertexId,
    part: &BTreeSet<EdgeId>,
    enum_guard: usize,
) -> Result<(), VertexId> {
    if g.vertex_count() <= enum_guard {
        // Every cut side avoiding the root must be crossed forward.
        for side in crate::branching::enumerate_sides(g, None, root) {
            let cut = g.cut_of(&side).expect("enumerated sides are valid");
            if cut.forward.is_disjoint(part) {
                let witness = side.iter().next().cloned().expect("side is nonempty");
                return Err(witness);
            }
        }
        Ok(())
    } else {
        // Flow of one per target vertex, which is reachability.
        if root_connectivity_at_least(g, Some(part), root, 1) {
            Ok(())
        } else {
            let reached = g.reachable_from(root, Some(part));
            let missing = g
                .vertices()
                .find(|v| !reached.contains(v))
                .cloned()
                .expect("some vertex is unreachable");
            Err(missing)
        }
    }
}

/// Checks the level packing invariant: parts live inside `G_depth`, are
/// pairwise disjoint, and each is spanning root-reachable (by cut
/// enumeration up to `enum_guard` vertices, by unit flows above it).
pub fn validate_level_packing(
    spec: &LayeredDigraphSpec,
    p: &LevelPacking,
    enum_guard: usize,
) -> Result<(), LiftError> {
    let res = spec.contract_at_depth(p.depth)?;
    let g = &res.quotient;
    let located = spec.locate(&p.site, p.depth)?;
    if located != p.root {
        return Err(invalid(
            p.depth,
            format!("root is {}, but the site maps to {located}", p.root),
        ));
    }
    let all = g.edge_ids();
    let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
    for (i, part) in p.parts.iter().enumerate() {
        for id in part {
            if !all.contains(id) {
                return Err(invalid(p.depth, format!("part {i} uses unknown edge {id}")));
            }
            if !seen.insert(*id) {
                return Err(invalid(p.depth, format!("edge {id} appears in two parts")));
            }
        }
        if let Err(v) = part_spans(g, &p.root, part, enum_guard) {
            return Err(invalid(p.depth, format!("part {i} cannot reach {v}")));
        }
    }
    Ok(())
}

/// Restricts a level packing one depth down by intersecting each part with
/// the shallower edge set. Both the input and the result are validated.
pub fn restrict_packing(
    spec: &LayeredDigraphSpec,
    p: &LevelPacking,
    enum_guard: usize,
) -> Result<LevelPacking, LiftError> {
    if p.depth < 2 {
        return Err(LiftError::BadDepth);
    }
    validate_level_packing(spec, p, enum_guard)?;
    let lower_depth = p.depth - 1;
    let lower = spec.contract_at_depth(lower_depth)?;
    let lower_ids = lower.quotient.edge_ids();
    let result = LevelPacking {
        depth: lower_depth,
        site: p.site.clone(),
        root: spec.locate(&p.site, lower_depth)?,
        parts: p
            .parts
            .iter()
            .map(|part| part.intersection(&lower_ids).copied().collect())
            .collect(),
    };
    validate_level_packing(spec, &result, enum_guard)?;
    Ok(result)
}

/// Verifies the packing condition at every depth `1..=depth`: the located
/// root must have rooted edge-connectivity at least `k` in each `G_n`. A
/// failure reports the first deficient depth and its cut.
pub fn check_packing_condition(
    spec: &LayeredDigraphSpec,
    site: &Site,
    k: usize,
    depth: usize,
) -> Result<ConditionOutcome, LiftError> {
    if k == 0 {
        return Err(LiftError::Graph(GraphError::ZeroK));
    }
    if depth == 0 {
        return Err(LiftError::BadDepth);
    }
    for n in 1..=depth {
        let res = spec.contract_at_depth(n)?;
        let root = spec.locate(site, n)?;
        if let Some((value, side_y)) = min_root_cut(&res.quotient, None, &root) {
            if value < k {
                return Ok(ConditionOutcome::Deficient(DepthCertificate {
                    depth: n,
                    requested: k,
                    certificate: CutCertificate {
                        side_y,
                        deficiency: value,
                    },
                }));
            }
        }
    }
    Ok(ConditionOutcome::Ok)
}

/// Builds a restriction-consistent chain to `depth` by packing arborescences
/// in the deepest contraction and restricting downwards, or returns the
/// deficient cut blocking the condition.
pub fn lift_chain(
    spec: &LayeredDigraphSpec,
    site: &Site,
    k: usize,
    depth: usize,
    enum_guard: usize,
) -> Result<LiftOutcome, LiftError> {
    match check_packing_condition(spec, site, k, depth)? {
        ConditionOutcome::Deficient(c) => return Ok(LiftOutcome::Deficient(c)),
        ConditionOutcome::Ok => {}
    }
    let res = spec.contract_at_depth(depth)?;
    let root = spec.locate(site, depth)?;
    let packing = match pack_arborescences(&res.quotient, &root, k)? {
        PackOutcome::Packed(p) => p,
        PackOutcome::Deficient(c) => {
            return Ok(LiftOutcome::Deficient(DepthCertificate {
                depth,
                requested: k,
                certificate: c,
            }))
        }
    };
    let mut level = LevelPacking {
        depth,
        site: site.clone(),
        root,
        parts: packing.parts,
    };
    validate_level_packing(spec, &level, enum_guard)?;
    let mut levels = vec![level.clone()];
    for _ in 2..=depth {
        level = restrict_packing(spec, &level, enum_guard)?;
        levels.push(level.clone());
    }
    levels.reverse();
    Ok(LiftOutcome::Chain(PackingChain { levels }))
}
