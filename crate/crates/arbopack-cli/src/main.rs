//! Command-line front end: load a layered spec (file or built-in gallery
//! entry), run packing, condition checks, minimization, reachability and
//! structure probes on its finite views, and emit witnesses as JSON, DOT or
//! text.
//!
//! Exit codes: 0 success, 1 a checked condition is violated (the
//! certificate is printed), 2 usage or input errors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use arbopack::digraph::{EdgeId, FinDigraph};
use arbopack::gallery::{gallery_entries, make_example};
use arbopack::layered::{LayeredDigraphSpec, Site};
use arbopack::lifting::{ConditionOutcome, DepthCertificate, LiftOutcome};
use arbopack::walk::{ReachOutcome, SignatureCheck, TargetOutcome, DEFAULT_ENUM_GUARD};
use arbopack::{
    char_equivalence_probe, check_packing_condition, lift_chain, minimize_r_reachable,
    reachable_by_cut_criterion, verify_arc_family_at_depth, verify_walk_signature, Cut,
};

#[derive(Parser)]
#[command(
    name = "arbopack",
    version,
    about = "Arborescence packing on finite views of layered infinite digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct Source {
    /// Built-in example (see `arbopack gallery`)
    #[arg(long, value_name = "NAME", conflicts_with = "spec")]
    gallery: Option<String>,
    /// Path to a spec JSON file
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<LayeredDigraphSpec> {
        match (&self.gallery, &self.spec) {
            (Some(name), None) => Ok(make_example(name)?.spec),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(LayeredDigraphSpec::parse(&text)?)
            }
            _ => bail!("exactly one of --gallery or --spec is required"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Pack k edge-disjoint spanning reachable sets as a chain to a depth
    Pack {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        root: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the cut condition for k at every depth up to the bound
    Condition {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        root: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Minimize an edge set of the depth contraction, with deletion witnesses
    Minimize {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        root: String,
        #[arg(long)]
        depth: usize,
        /// Comma-separated edge ids; all edges when absent
        #[arg(long, value_delimiter = ',')]
        edges: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Probe the minimality characterization level by level
    VerifyChar {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        root: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Per-target reachability from the root within an edge set
    Reach {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        root: String,
        #[arg(long)]
        depth: usize,
        /// Comma-separated targets; vertices or `end:<label>`
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        edges: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Extract a directed path and verify its crossing signature
    Walk {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_delimiter = ',')]
        edges: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit the truncation at a depth
    Truncate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Emit the contraction at a depth
    Contract {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List built-in examples, or emit one spec
    Gallery {
        name: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn enum_guard() -> usize {
    std::env::var("ARBOPACK_MAX_ENUM")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_ENUM_GUARD)
}

fn parse_site(s: &str) -> Result<Site> {
    Site::from_str(s).map_err(|e| anyhow!("{e}"))
}

fn edge_set(g: &FinDigraph, edges: &Option<Vec<u64>>) -> Result<BTreeSet<EdgeId>> {
    match edges {
        None => Ok(g.edge_ids()),
        Some(ids) => {
            let set: BTreeSet<EdgeId> = ids.iter().map(|id| EdgeId(*id)).collect();
            for id in &set {
                if g.edge(*id).is_none() {
                    bail!("edge {id} does not exist at this depth");
                }
            }
            Ok(set)
        }
    }
}

fn render_cut(cut: &Cut) -> String {
    let side: Vec<&str> = cut.side_y.iter().map(|v| v.as_str()).collect();
    let fwd: Vec<String> = cut.forward.iter().map(|e| e.to_string()).collect();
    format!(
        "side Y = {{{}}}, forward edges [{}], backward edges {}",
        side.join(", "),
        fwd.join(", "),
        cut.backward.len()
    )
}

fn render_certificate(c: &DepthCertificate) -> String {
    format!(
        "condition violated at depth {}: wanted {}, cut admits {} ({})",
        c.depth,
        c.requested,
        c.certificate.deficiency,
        {
            let side: Vec<&str> = c.certificate.side_y.iter().map(|v| v.as_str()).collect();
            format!("side Y = {{{}}}", side.join(", "))
        }
    )
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// Ok(true) for success output, Ok(false) when a condition was violated and
/// a certificate was printed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Pack {
            source,
            root,
            k,
            depth,
            format,
        } => {
            let spec = source.load()?;
            let site = parse_site(&root)?;
            match lift_chain(&spec, &site, k, depth, enum_guard())? {
                LiftOutcome::Chain(chain) => {
                    match format {
                        Format::Json => println!("{}", json(&chain)?),
                        Format::Dot => {
                            let res = spec.contract_at_depth(depth)?;
                            let deepest = chain.levels.last().expect("chain is nonempty");
                            let mut styles: BTreeMap<EdgeId, usize> = BTreeMap::new();
                            for (i, part) in deepest.parts.iter().enumerate() {
                                for id in part {
                                    styles.insert(*id, i);
                                }
                            }
                            print!("{}", res.quotient.to_dot(&res.dummies, &styles));
                        }
                        Format::Text => {
                            for level in &chain.levels {
                                let parts: Vec<String> = level
                                    .parts
                                    .iter()
                                    .map(|p| {
                                        let ids: Vec<String> =
                                            p.iter().map(|e| e.to_string()).collect();
                                        format!("[{}]", ids.join(", "))
                                    })
                                    .collect();
                                println!(
                                    "depth {:>2} root {}: {}",
                                    level.depth,
                                    level.root,
                                    parts.join(" | ")
                                );
                            }
                        }
                    }
                    Ok(true)
                }
                LiftOutcome::Deficient(c) => {
                    match format {
                        Format::Json => println!("{}", json(&c)?),
                        _ => println!("{}", render_certificate(&c)),
                    }
                    Ok(false)
                }
            }
        }
        Command::Condition {
            source,
            root,
            k,
            depth,
            format,
        } => {
            let spec = source.load()?;
            let site = parse_site(&root)?;
            match check_packing_condition(&spec, &site, k, depth)? {
                ConditionOutcome::Ok => {
                    match format {
                        Format::Json => println!("{}", json(&ConditionOutcome::Ok)?),
                        _ => println!("condition holds for k = {k} up to depth {depth}"),
                    }
                    Ok(true)
                }
                ConditionOutcome::Deficient(c) => {
                    match format {
                        Format::Json => println!("{}", json(&c)?),
                        _ => println!("{}", render_certificate(&c)),
                    }
                    Ok(false)
                }
            }
        }
        Command::Minimize {
            source,
            root,
            depth,
            edges,
            format,
        } => {
            let spec = source.load()?;
            let site = parse_site(&root)?;
            let res = spec.contract_at_depth(depth)?;
            let located = spec.locate(&site, depth)?;
            let f = edge_set(&res.quotient, &edges)?;
            match minimize_r_reachable(&res.quotient, &f, &located) {
                Ok(minimized) => {
                    match format {
                        Format::Json => println!("{}", json(&minimized)?),
                        _ => {
                            let ids: Vec<String> =
                                minimized.minimal.iter().map(|e| e.to_string()).collect();
                            println!("minimal set [{}]", ids.join(", "));
                            for (id, cut) in &minimized.witnesses {
                                println!("  edge {id} required: {}", render_cut(cut));
                            }
                        }
                    }
                    Ok(true)
                }
                Err(arbopack::PseudoError::NotReachable { vertex }) => {
                    match format {
                        Format::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(
                                &serde_json::json!({ "not_reachable": vertex })
                            )?
                        ),
                        _ => println!("not root-reachable: no edge of the set reaches {vertex}"),
                    }
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::VerifyChar {
            source,
            root,
            depth,
            format,
        } => {
            let spec = source.load()?;
            let site = parse_site(&root)?;
            let report = char_equivalence_probe(&spec, &site, depth, enum_guard())?;
            match format {
                Format::Json => println!("{}", json(&report)?),
                _ => {
                    for level in &report.levels {
                        println!(
                            "depth {:>2}: minimal size {}, unique in-edges {}, single rooted component {}, {} deletion witnesses",
                            level.depth,
                            level.minimal.len(),
                            level.unique_in_edges,
                            level.single_root_component,
                            level.witnesses.len()
                        );
                    }
                }
            }
            Ok(report.is_ok())
        }
        Command::Reach {
            source,
            root,
            depth,
            targets,
            edges,
            format,
        } => {
            let spec = source.load()?;
            let site = parse_site(&root)?;
            let res = spec.contract_at_depth(depth)?;
            let f = edge_set(&res.quotient, &edges)?;
            let targets = targets
                .iter()
                .map(|t| parse_site(t))
                .collect::<Result<Vec<Site>>>()?;
            let report = verify_arc_family_at_depth(&spec, &f, &site, &targets, depth)?;
            match format {
                Format::Json => println!("{}", json(&report)?),
                _ => {
                    for t in &report.targets {
                        match &t.outcome {
                            TargetOutcome::Reachable { path } => {
                                let ids: Vec<String> = path.iter().map(|e| e.to_string()).collect();
                                println!(
                                    "{} (as {}): reachable via [{}]",
                                    t.target,
                                    t.located,
                                    ids.join(", ")
                                );
                            }
                            TargetOutcome::Separated { cut } => {
                                println!(
                                    "{} (as {}): unreachable, {}",
                                    t.target,
                                    t.located,
                                    render_cut(cut)
                                );
                            }
                        }
                    }
                }
            }
            Ok(report.all_reachable())
        }
        Command::Walk {
            source,
            depth,
            from,
            to,
            edges,
            format,
        } => {
            let spec = source.load()?;
            let res = spec.contract_at_depth(depth)?;
            let g = &res.quotient;
            let s = spec.locate(&parse_site(&from)?, depth)?;
            let t = spec.locate(&parse_site(&to)?, depth)?;
            let f = edge_set(g, &edges)?;
            match reachable_by_cut_criterion(g, &f, &s, &t)? {
                ReachOutcome::Separated(cut) => {
                    match format {
                        Format::Json => println!("{}", json(&cut)?),
                        _ => println!("unreachable: {}", render_cut(&cut)),
                    }
                    Ok(false)
                }
                ReachOutcome::Reachable(walk) => {
                    let signature = verify_walk_signature(g, &walk, enum_guard())?;
                    let path = arbopack::extract_directed_path(g, &f, &s, &t)?;
                    match format {
                        Format::Json => {
                            let out = serde_json::json!({
                                "walk": walk,
                                "path": path,
                                "signature": signature,
                            });
                            println!("{}", serde_json::to_string_pretty(&out)?);
                        }
                        _ => {
                            let ids: Vec<String> =
                                walk.edges.iter().map(|e| e.to_string()).collect();
                            println!("walk {} -> {}: edges [{}]", s, t, ids.join(", "));
                            let pids: Vec<String> = path.iter().map(|e| e.to_string()).collect();
                            println!("minimal path edges [{}]", pids.join(", "));
                            match &signature {
                                SignatureCheck::Ok => {
                                    println!("signature verified on every separating cut")
                                }
                                SignatureCheck::Violation { cut, forward, backward } => println!(
                                    "signature violated ({forward} forward, {backward} backward): {}",
                                    render_cut(cut)
                                ),
                            }
                        }
                    }
                    Ok(matches!(signature, SignatureCheck::Ok))
                }
            }
        }
        Command::Truncate {
            source,
            depth,
            format,
        } => {
            let spec = source.load()?;
            let g = spec.truncate(depth);
            match format {
                Format::Dot => print!("{}", g.to_dot(&BTreeSet::new(), &BTreeMap::new())),
                _ => println!("{}", json(&g)?),
            }
            Ok(true)
        }
        Command::Contract {
            source,
            depth,
            format,
        } => {
            let spec = source.load()?;
            let res = spec.contract_at_depth(depth)?;
            match format {
                Format::Dot => print!("{}", res.quotient.to_dot(&res.dummies, &BTreeMap::new())),
                _ => println!("{}", json(&res.quotient)?),
            }
            Ok(true)
        }
        Command::Gallery { name, format } => {
            match name {
                Some(name) => {
                    let entry = make_example(&name)?;
                    entry.self_check().map_err(|e| anyhow!(e))?;
                    match format {
                        Format::Json => println!("{}", json(&entry.spec)?),
                        _ => {
                            println!("{}", entry.name);
                            println!("  root {}", entry.expected.root);
                            println!("  ends {}", entry.expected.end_count);
                            println!(
                                "  min root connectivity {} at depth {}",
                                entry.expected.min_root_connectivity, entry.expected.probe_depth
                            );
                            println!("  forced circle {}", entry.expected.forced_circle);
                        }
                    }
                }
                None => {
                    let entries = gallery_entries();
                    match format {
                        Format::Json => println!("{}", json(&entries)?),
                        _ => {
                            for entry in entries {
                                entry.self_check().map_err(|e| anyhow!(e))?;
                                let mut line = String::new();
                                write!(
                                    line,
                                    "{:<18} ends {}  connectivity {}",
                                    entry.name,
                                    entry.expected.end_count,
                                    entry.expected.min_root_connectivity
                                )?;
                                if entry.expected.forced_circle {
                                    write!(line, "  forced circle")?;
                                }
                                println!("{line}");
                            }
                        }
                    }
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
