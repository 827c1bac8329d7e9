//! Heavier randomized sweeps, ignored by default. Run explicitly:
//!
//! ```sh
//! cargo test -p arbopack --test stress --release -- --ignored
//! ```

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use arbopack::digraph::{FinDigraph, VertexId};
use arbopack::layered::{LayeredDigraphSpec, Site, SpecDoc};
use arbopack::lifting::LiftOutcome;
use arbopack::walk::DEFAULT_ENUM_GUARD;
use arbopack::{
    lift_chain, minimize_r_reachable, pack_arborescences, restrict_packing,
    validate_level_packing, verify_arborescence_packing, PackOutcome,
};

fn v(s: &str) -> VertexId {
    VertexId::from(s)
}

fn random_graph(rng: &mut ChaCha8Rng, max_v: usize, max_e: usize) -> FinDigraph {
    let n = rng.gen_range(2..=max_v);
    let names: Vec<VertexId> = (0..n).map(|i| VertexId::new(format!("v{i}"))).collect();
    let m = rng.gen_range(1..=max_e);
    let mut pairs = Vec::with_capacity(m);
    for _ in 0..m {
        let t = rng.gen_range(0..n);
        let mut h = rng.gen_range(0..n - 1);
        if h >= t {
            h += 1;
        }
        pairs.push((names[t].clone(), names[h].clone()));
    }
    FinDigraph::from_pairs(names, pairs).unwrap()
}

fn brute_force_min_in_degree(g: &FinDigraph, root: &VertexId) -> usize {
    let others: Vec<&VertexId> = g.vertices().filter(|u| *u != root).collect();
    let mut best = usize::MAX;
    for mask in 1u64..(1u64 << others.len()) {
        let side: BTreeSet<&VertexId> = others
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, u)| *u)
            .collect();
        let entering = g
            .edges()
            .filter(|e| side.contains(&e.head) && !side.contains(&e.tail))
            .count();
        best = best.min(entering);
    }
    best
}

#[test]
#[ignore]
fn packing_sweep_20k() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacc0);
    for round in 0..20_000usize {
        let g = random_graph(&mut rng, 8, 24);
        let root = v("v0");
        let oracle = brute_force_min_in_degree(&g, &root);
        for k in 1..=4usize {
            match pack_arborescences(&g, &root, k).unwrap() {
                PackOutcome::Packed(p) => {
                    assert!(oracle >= k, "round {round}: false packing");
                    assert!(
                        verify_arborescence_packing(&g, &p).is_ok(),
                        "round {round}: invalid packing"
                    );
                }
                PackOutcome::Deficient(c) => {
                    assert!(oracle < k, "round {round}: false certificate");
                    assert_eq!(c.deficiency, oracle, "round {round}");
                }
            }
        }
    }
}

#[test]
#[ignore]
fn minimize_sweep_10k() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce55);
    let mut done = 0usize;
    while done < 10_000 {
        let g = random_graph(&mut rng, 7, 20);
        let root = v("v0");
        let all = g.edge_ids();
        if g.reachable_from(&root, Some(&all)).len() != g.vertex_count() {
            continue;
        }
        let res = minimize_r_reachable(&g, &all, &root).unwrap();
        let packing = arbopack::ArborescencePacking {
            root: root.clone(),
            parts: vec![res.minimal.clone()],
        };
        assert!(verify_arborescence_packing(&g, &packing).is_ok());
        for (id, cut) in &res.witnesses {
            let crossing: Vec<_> = cut.forward.intersection(&res.minimal).collect();
            assert_eq!(crossing, vec![id]);
        }
        done += 1;
    }
}

#[test]
#[ignore]
fn deep_chains_on_wider_specs() {
    for (name, k, depth) in [("grid:3", 3usize, 12usize), ("forced_circle", 1, 24)] {
        let entry = arbopack::make_example(name).unwrap();
        let chain = match lift_chain(&entry.spec, &entry.expected.root, k, depth, DEFAULT_ENUM_GUARD)
            .unwrap()
        {
            LiftOutcome::Chain(c) => c,
            LiftOutcome::Deficient(c) => panic!("{name}: {c:?}"),
        };
        for level in &chain.levels {
            validate_level_packing(&entry.spec, level, DEFAULT_ENUM_GUARD).unwrap();
        }
        for pair in chain.levels.windows(2) {
            assert_eq!(
                restrict_packing(&entry.spec, &pair[1], DEFAULT_ENUM_GUARD).unwrap(),
                pair[0]
            );
        }
    }
}

#[test]
#[ignore]
fn relay_specs_stabilize_to_one_end() {
    // Rails x and y joined only through relay names that carry the
    // connection up a few layers before it descends back: merging needs a
    // window as tall as the relay.
    for relay_len in 1..=4usize {
        let mut names = vec!["x".to_string(), "y".to_string()];
        for i in 0..relay_len {
            names.push(format!("p{i}"));
        }
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut up: Vec<(&str, &str, i8)> = vec![("x", "x", 1), ("y", "y", 1)];
        up.push(("x", name_refs[2], 1));
        for i in 0..relay_len - 1 {
            up.push((name_refs[2 + i], name_refs[3 + i], 1));
        }
        up.push((name_refs[1 + relay_len], "y", -1));
        // Every name attaches to the prefix so shallow truncations stay
        // connected; the attach edges do not exist beyond any depth, so the
        // tail merge still has to travel the whole relay.
        let attach: Vec<(&str, &str, i8)> =
            name_refs.iter().map(|n| ("r", *n, 1i8)).collect();
        let doc = SpecDoc::new(&["r"], &[], &name_refs, &[], &up, &attach);
        let spec = LayeredDigraphSpec::from_doc(doc).unwrap();
        assert_eq!(spec.list_ends().len(), 1, "relay {relay_len}");
        // Two dummies, one end: the frontier copy of the last relay name
        // has both its edges pointing below the frontier, so it is an
        // isolated finite component beyond every depth.
        for n in 1..=6 {
            assert_eq!(
                spec.contract_at_depth(n).unwrap().dummies.len(),
                2,
                "relay {relay_len} depth {n}"
            );
        }
        let site = Site::Vertex(v("r"));
        match lift_chain(&spec, &site, 1, 8, DEFAULT_ENUM_GUARD).unwrap() {
            LiftOutcome::Chain(c) => assert_eq!(c.levels.len(), 8),
            LiftOutcome::Deficient(c) => panic!("relay {relay_len}: {c:?}"),
        }
    }
}
