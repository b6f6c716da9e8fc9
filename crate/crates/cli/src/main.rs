//! Command-line front end: validate, classify, query, demo and diff over
//! ontology files.
//!
//! Exit codes: 0 success, 1 inconsistency or differences found, 2 usage or
//! parse errors. All reports go to standard output; `--porcelain` switches
//! to line-oriented `key=value` output.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use owlkb::syntax::parse_document_counted;
use owlkb::{
    serialize_store, scenario, EntityKind, EntityRef, ExpressionKind, Iri, Ontology,
};

#[derive(Parser)]
#[command(
    name = "owlkb",
    version,
    about = "In-memory OWL knowledge base: validate, classify, query and replay ontology files"
)]
struct Cli {
    /// Line-oriented key=value output
    #[arg(long, global = true)]
    porcelain: bool,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Parse a file and report its statement count
    Validate { file: PathBuf },
    /// Run the reasoner and print consistency plus the class hierarchy
    Classify {
        file: PathBuf,
        /// Skip reasoning; print the asserted hierarchy only
        #[arg(long)]
        no_reason: bool,
    },
    /// Print the entity set of one ground and expression
    Query {
        file: PathBuf,
        /// Ground entity, e.g. :ROOM
        #[arg(long)]
        ground: String,
        /// Expression kind, e.g. Super, Instance, ObjectLink
        #[arg(long)]
        expr: String,
        /// Skip reasoning; enumerate asserted axioms only
        #[arg(long)]
        no_reason: bool,
    },
    /// Replay a scripted descriptor walkthrough against a file
    Demo {
        scenario: Scenario,
        file: PathBuf,
        /// Write the post-scenario store to this path
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Compare two files axiom by axiom
    Diff { file_a: PathBuf, file_b: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Scenario {
    /// Write links and definitions, read back, remove the links again
    Listing2,
    /// Find the robot's location and name its most specific class
    Listing3,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(report) => {
            println!("{report}");
            2
        }
    };
    ExitCode::from(code)
}

/// Read a file leniently: invalid UTF-8 is replaced so the parser can still
/// report a position.
fn load(path: &Path) -> Result<String, String> {
    match std::fs::read(path) {
        Ok(bytes) => Ok(String::from_utf8_lossy(&bytes).into_owned()),
        Err(e) => Err(format!("error: cannot read {}: {e}", path.display())),
    }
}

fn parse(path: &Path) -> Result<(Ontology, usize), String> {
    let text = load(path)?;
    parse_document_counted(&text)
        .map_err(|e| format!("error: {}:{e}", path.display()))
}

fn run(cli: &Cli) -> Result<u8, String> {
    match &cli.command {
        Commands::Validate { file } => {
            let (_, statements) = parse(file)?;
            if cli.porcelain {
                println!("statements={statements}");
            } else {
                println!("{}: {} statements", file.display(), statements);
            }
            Ok(0)
        }
        Commands::Classify { file, no_reason } => {
            let (mut store, _) = parse(file)?;
            if *no_reason {
                print_asserted_hierarchy(&store, cli.porcelain);
                return Ok(0);
            }
            let snapshot = store.synchronise_reasoner();
            let consistent = snapshot.consistency.consistent;
            if cli.porcelain {
                println!("consistent={consistent}");
                for class in &snapshot.consistency.unsatisfiable_classes {
                    println!("unsatisfiable={}", class.iri);
                }
                for violation in &snapshot.consistency.violations {
                    println!(
                        "violation={} {}",
                        violation.rule,
                        violation.entities.join(" ")
                    );
                }
                for line in hierarchy_lines(&store) {
                    println!("tree={}", line.trim_start());
                }
            } else {
                println!(
                    "consistency: {}",
                    if consistent { "consistent" } else { "INCONSISTENT" }
                );
                for violation in &snapshot.consistency.violations {
                    println!("  {} {}", violation.rule, violation.detail);
                }
                if !snapshot.consistency.unsatisfiable_classes.is_empty() {
                    let list: Vec<String> = snapshot
                        .consistency
                        .unsatisfiable_classes
                        .iter()
                        .map(|c| c.iri.to_string())
                        .collect();
                    println!("unsatisfiable: {}", list.join(" "));
                }
                println!("hierarchy:");
                for line in hierarchy_lines(&store) {
                    println!("{line}");
                }
            }
            Ok(if consistent { 0 } else { 1 })
        }
        Commands::Query {
            file,
            ground,
            expr,
            no_reason,
        } => {
            let (mut store, _) = parse(file)?;
            let expr = ExpressionKind::parse(expr)
                .ok_or_else(|| format!("error: unknown expression kind {expr}"))?;
            let iri = parse_iri(ground)?;
            let subject = resolve_ground(&store, &iri, expr)?;
            let elements = if *no_reason {
                store
                    .enumerate_axioms(&subject, expr)
                    .map_err(|e| format!("error: {e}"))?
            } else {
                store.synchronise_reasoner();
                store
                    .entailed_entity_set(&subject, expr)
                    .map_err(|e| format!("error: {e}"))?
            };
            for element in &elements {
                if cli.porcelain {
                    println!("element={element}");
                } else {
                    println!("{element}");
                }
            }
            Ok(0)
        }
        Commands::Demo {
            scenario: which,
            file,
            save,
        } => {
            let (store, _) = parse(file)?;
            let output = match which {
                Scenario::Listing2 => scenario::write_read_cycle(store),
                Scenario::Listing3 => scenario::locate_robot(store),
            }
            .map_err(|e| format!("error: {e}"))?;
            for line in &output.lines {
                println!("{line}");
            }
            if let Some(path) = save {
                std::fs::write(path, serialize_store(&output.store))
                    .map_err(|e| format!("error: cannot write {}: {e}", path.display()))?;
            }
            Ok(0)
        }
        Commands::Diff { file_a, file_b } => {
            let (store_a, _) = parse(file_a)?;
            let (store_b, _) = parse(file_b)?;
            let lines_a = statement_lines(&store_a);
            let lines_b = statement_lines(&store_b);
            let removed: Vec<&String> = lines_a.difference(&lines_b).collect();
            let added: Vec<&String> = lines_b.difference(&lines_a).collect();
            for line in &removed {
                if cli.porcelain {
                    println!("removed={line}");
                } else {
                    println!("- {line}");
                }
            }
            for line in &added {
                if cli.porcelain {
                    println!("added={line}");
                } else {
                    println!("+ {line}");
                }
            }
            Ok(if added.is_empty() && removed.is_empty() {
                0
            } else {
                1
            })
        }
    }
}

fn parse_iri(text: &str) -> Result<Iri, String> {
    match text.split_once(':') {
        Some((prefix, local)) if !local.is_empty() => Ok(Iri::new(prefix, local)),
        _ => Err(format!(
            "error: ground must be a prefixed name like :ROOM, got {text:?}"
        )),
    }
}

/// Find the declared entity for an IRI that legally carries the expression.
fn resolve_ground(
    store: &Ontology,
    iri: &Iri,
    expr: ExpressionKind,
) -> Result<EntityRef, String> {
    let declared: Vec<&EntityRef> = store
        .declarations()
        .iter()
        .filter(|e| e.iri == *iri)
        .collect();
    if declared.is_empty() {
        return Err(format!("error: unknown ground {iri}"));
    }
    let legal: Vec<&&EntityRef> = declared
        .iter()
        .filter(|e| expr.legal_for(e.kind))
        .collect();
    match legal.as_slice() {
        [unique] => Ok((**unique).clone()),
        [] => Err(format!(
            "error: {expr} is not legal for {iri} (declared as {})",
            declared
                .iter()
                .map(|e| e.kind.label())
                .collect::<Vec<_>>()
                .join(", ")
        )),
        _ => Err(format!(
            "error: {iri} is ambiguous for {expr}; declared under several kinds"
        )),
    }
}

/// One canonical line per statement (prefix and header lines dropped).
fn statement_lines(store: &Ontology) -> BTreeSet<String> {
    serialize_store(store)
        .lines()
        .filter(|l| l.starts_with("  "))
        .map(|l| l.trim().to_string())
        .collect()
}

/// Indented tree of the entailed class hierarchy under the universal class.
fn hierarchy_lines(store: &Ontology) -> Vec<String> {
    let snapshot = match store.snapshot() {
        Some(s) => s,
        None => return Vec::new(),
    };
    let thing = EntityRef::thing();
    let nothing = EntityRef::nothing();

    // group representative -> members, skipping the bottom group
    let mut group_of: BTreeMap<Iri, usize> = BTreeMap::new();
    for (gid, group) in snapshot.class_groups.iter().enumerate() {
        for iri in group {
            group_of.insert(iri.clone(), gid);
        }
    }
    let bottom = group_of[&nothing.iri];

    let strict_supers = |gid: usize| -> BTreeSet<usize> {
        let representative = snapshot.class_groups[gid].first().expect("nonempty group");
        snapshot
            .entity_set(
                &EntityRef::class(representative.clone()),
                ExpressionKind::Super,
            )
            .into_iter()
            .filter_map(|e| match e {
                owlkb::EntitySetElement::Entity(c) => group_of.get(&c.iri).copied(),
                _ => None,
            })
            .collect()
    };

    let gids: Vec<usize> = (0..snapshot.class_groups.len())
        .filter(|&g| g != bottom)
        .collect();
    let supers: BTreeMap<usize, BTreeSet<usize>> =
        gids.iter().map(|&g| (g, strict_supers(g))).collect();

    // direct children: no third group strictly between
    let children = |parent: usize| -> Vec<usize> {
        gids.iter()
            .copied()
            .filter(|&g| {
                g != parent
                    && supers[&g].contains(&parent)
                    && !supers[&g]
                        .iter()
                        .any(|&mid| mid != parent && supers.get(&mid).is_some_and(|s| s.contains(&parent)))
            })
            .collect()
    };

    let render_group = |gid: usize| -> String {
        snapshot.class_groups[gid]
            .iter()
            .map(|iri| iri.to_string())
            .collect::<Vec<_>>()
            .join(" = ")
    };

    let mut lines = Vec::new();
    let root = group_of[&thing.iri];
    fn visit(
        gid: usize,
        depth: usize,
        lines: &mut Vec<String>,
        children: &dyn Fn(usize) -> Vec<usize>,
        render: &dyn Fn(usize) -> String,
    ) {
        lines.push(format!("{}{}", "  ".repeat(depth), render(gid)));
        for child in children(gid) {
            visit(child, depth + 1, lines, children, render);
        }
    }
    visit(root, 0, &mut lines, &children, &render_group);
    lines
}

/// Asserted-only hierarchy: direct asserted subclass edges under the
/// universal class, no inference.
fn print_asserted_hierarchy(store: &Ontology, porcelain: bool) {
    use owlkb::{Axiom, EntitySetElement};
    let mut children: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    let mut has_parent: BTreeSet<Iri> = BTreeSet::new();
    for axiom in store.axioms() {
        let Axiom {
            subject,
            expression: ExpressionKind::Super,
            object: EntitySetElement::Entity(sup),
        } = axiom
        else {
            continue;
        };
        if subject.kind != EntityKind::Class {
            continue;
        }
        children
            .entry(sup.iri.clone())
            .or_default()
            .insert(subject.iri.clone());
        has_parent.insert(subject.iri.clone());
    }
    let thing = EntityRef::thing();
    let mut lines = vec![thing.iri.to_string()];
    let mut roots: Vec<Iri> = store
        .declared_of_kind(EntityKind::Class)
        .filter(|c| {
            !has_parent.contains(&c.iri) && !c.is_thing() && !c.is_nothing()
        })
        .map(|c| c.iri.clone())
        .collect();
    roots.sort();
    fn visit(
        iri: &Iri,
        depth: usize,
        children: &BTreeMap<Iri, BTreeSet<Iri>>,
        lines: &mut Vec<String>,
    ) {
        lines.push(format!("{}{}", "  ".repeat(depth), iri));
        if let Some(kids) = children.get(iri) {
            for kid in kids {
                visit(kid, depth + 1, children, lines);
            }
        }
    }
    for root in &roots {
        visit(root, 1, &children, &mut lines);
    }
    for line in lines {
        if porcelain {
            println!("tree={}", line.trim_start());
        } else {
            println!("{line}");
        }
    }
}
