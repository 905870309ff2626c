//! Command-line front end for `cgs-core`: instance files, generators, SVG
//! export and the linked-cycle finders.
//!
//! Exit codes: 0 on success, 1 on bad input or a failed validation, 2 when
//! a finder's parity check fails (which indicates a bug, not bad input).

pub mod generate;
pub mod instance;
pub mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};

use cgs_core::embedding::{validate_drawing, validate_embedding, GraphMap, PLEmbedding};
use cgs_core::finders::{
    confirm_report, cycle_polygon, find_linked_cycles_k44, find_linked_cycles_k6, find_linked_triangles_linear,
    oracle_count_linked_pairs, sample_apex, FinderError, Finding,
};
use cgs_core::geometry::{gp_points2, gp_points3, Point3};
use cgs_core::graph::{complete_graph, Cycle, Graph, Vertex};
use cgs_core::invariants::{van_kampen_drawing, van_kampen_points};
use cgs_core::linking::{linking_mod2_cone, SpatialPolyline};
use cgs_core::projection::{find_general_plane, project_orthogonal};
use cgs_core::rng::SplitMix64;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::generate::{generate, GenConfig, GenKind};
use crate::instance::{emit_instance, parse_instance, point2_json, Instance};

/// Environment variable naming a directory for relative output paths.
pub const OUT_DIR_VAR: &str = "CGS_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "cgs", version, about = "Linked cycles in spatial graphs, van Kampen invariants, exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Search {
    /// Seed for directions, apexes and functionals.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Give up after this many rejected samples.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_tries: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an instance file.
    Check { file: PathBuf },
    /// Generate a random instance.
    Gen {
        #[arg(long, value_parser = |s: &str| s.parse::<GenKind>())]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coordinate bound B: coordinates are drawn from [-B, B].
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(i64).range(1..))]
        bound: i64,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        max_tries: u64,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the van Kampen invariant (0 or 1) of a drawing or point set.
    Vankampen { file: PathBuf },
    /// Find two linked cycles: triangles for six points, or cycles of an
    /// embedding of K6 or K4,4.
    FindLinked {
        file: PathBuf,
        #[command(flatten)]
        search: Search,
        /// Re-check the reported pair with the cone count.
        #[arg(long)]
        verify: bool,
    },
    /// Count linked pairs among all disjoint cycle pairs of given lengths.
    Oracle {
        file: PathBuf,
        /// Cycle lengths, e.g. 3,3.
        #[arg(long, value_parser = parse_lengths)]
        cycles: (usize, usize),
        #[command(flatten)]
        search: Search,
    },
    /// Project an embedding along a general direction.
    Project {
        file: PathBuf,
        #[command(flatten)]
        search: Search,
        /// Write an SVG of the diagram.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Mod-2 linking number of two closed polygons: two points3 files, or
    /// one embedding of two disjoint cycles.
    Link {
        a: PathBuf,
        b: Option<PathBuf>,
        #[command(flatten)]
        search: Search,
    },
}

fn parse_lengths(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected two lengths such as 3,3")?;
    let parse = |t: &str| match t.trim().parse::<usize>() {
        Ok(n) if n >= 3 => Ok(n),
        _ => Err(format!("invalid cycle length {t:?} (need an integer >= 3)")),
    };
    Ok((parse(a)?, parse(b)?))
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Parity(String),
}

impl From<FinderError> for Failure {
    fn from(e: FinderError) -> Self {
        match e {
            FinderError::InternalParityFailure(_) => Failure::Parity(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn input(msg: impl ToString) -> Failure {
    Failure::Input(msg.to_string())
}

fn output_path(p: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let bytes = std::fs::read(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_instance(&bytes).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    let path = output_path(path);
    std::fs::write(&path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn to_json_line(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn straight_complete(points: Vec<Point3>) -> PLEmbedding {
    GraphMap::straight(complete_graph(points.len()), points).expect("one position per vertex")
}

fn spatial(inst: Instance, what: &str) -> Result<PLEmbedding, Failure> {
    match inst {
        Instance::Embedding(e) => Ok(e),
        Instance::Points3(p) => Ok(straight_complete(p)),
        other => Err(input(format!("{what} needs an embedding or points3 file, got {}", other.kind()))),
    }
}

fn check(file: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let problems: Vec<String> = match load(file)? {
        Instance::Points3(p) if gp_points3(&p) => Vec::new(),
        Instance::Points3(_) => vec!["four of the points are coplanar".into()],
        Instance::Points2(p) if gp_points2(&p) => Vec::new(),
        Instance::Points2(_) => vec!["three of the points are collinear".into()],
        Instance::Embedding(e) => validate_embedding(&e).iter().map(ToString::to_string).collect(),
        Instance::Drawing(d) => validate_drawing(&d).iter().map(ToString::to_string).collect(),
    };
    if problems.is_empty() {
        let _ = writeln!(out, "ok");
        return Ok(());
    }
    for p in &problems {
        let _ = writeln!(out, "violation: {p}");
    }
    Err(input(format!("{} violation(s)", problems.len())))
}

fn find_linked(file: &Path, s: Search, verify: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let (mut finding, emb): (Finding, PLEmbedding) = match load(file)? {
        Instance::Points3(p) => (find_linked_triangles_linear(&p, s.seed)?, straight_complete(p)),
        Instance::Embedding(e) => {
            let simple = e.smooth_all();
            let g = simple.graph();
            let finding = if g.vertex_count() == 6 && g.is_complete() {
                find_linked_cycles_k6(&e, s.seed, s.max_tries)?
            } else if g.complete_bipartite_parts(4).is_some() {
                find_linked_cycles_k44(&e, s.seed, s.max_tries)?
            } else {
                return Err(input("embedding is neither K6 nor K4,4 (after smoothing degree-2 vertices)"));
            };
            (finding, simple)
        }
        other => return Err(input(format!("find-linked needs points3 or an embedding, got {}", other.kind()))),
    };
    if verify && !confirm_report(&emb, &mut finding.report, s.seed, s.max_tries)? {
        let _ = out.write_all(to_json_line(&finding).as_bytes());
        return Err(Failure::Parity("oracle disagrees with the reported pair".into()));
    }
    let _ = out.write_all(to_json_line(&finding).as_bytes());
    Ok(())
}

fn project(file: &Path, s: Search, svg: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    let emb = spatial(load(file)?, "project")?;
    let d = find_general_plane(&emb, s.seed, s.max_tries).map_err(input)?;
    let diag = project_orthogonal(&emb, d).map_err(input)?;
    let crossings: Vec<Value> = diag
        .crossings
        .iter()
        .map(|c| {
            let (e1, e2) = c.edges();
            let upper = c.upper_edge().expect("projected crossings carry heights");
            json!({
                "edges": [e1, e2],
                "sides": [c.first.side, c.second.side],
                "point": point2_json(&c.point),
                "upper": upper,
                "adjacent": c.adjacent,
            })
        })
        .collect();
    let disjoint = diag.crossings.iter().filter(|c| !c.adjacent).count();
    let report = json!({
        "direction": d,
        "crossings": crossings,
        "disjoint_edge_crossings": disjoint,
        "van_kampen": disjoint % 2,
    });
    if let Some(path) = svg {
        write_file(path, &svg::render_svg(&diag.drawing, Some(&diag.crossings)))?;
    }
    let _ = out.write_all(to_json_line(&report).as_bytes());
    Ok(())
}

/// The cycles of a graph whose vertices all have degree 2.
fn components_as_cycles(g: &Graph) -> Option<Vec<Cycle>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut cycles = Vec::new();
    for start in g.vertices() {
        if seen[start] {
            continue;
        }
        let mut seq: Vec<Vertex> = vec![start];
        seen[start] = true;
        let mut prev = start;
        let mut cur = *g.neighbors(start).first()?;
        while cur != start {
            if g.degree(cur) != 2 || seen[cur] {
                return None;
            }
            seen[cur] = true;
            seq.push(cur);
            let next = g.neighbors(cur).into_iter().find(|&w| w != prev)?;
            prev = cur;
            cur = next;
        }
        if g.degree(start) != 2 || seq.len() < 3 {
            return None;
        }
        cycles.push(Cycle::new(seq));
    }
    Some(cycles)
}

fn link(a: &Path, b: Option<&Path>, s: Search, out: &mut dyn Write) -> Result<(), Failure> {
    let polygon = |inst: Instance| match inst {
        Instance::Points3(p) => SpatialPolyline::closed(p).map_err(input),
        other => Err(input(format!("expected a points3 polygon, got {}", other.kind()))),
    };
    let (pa, pb) = match b {
        Some(b) => (polygon(load(a)?)?, polygon(load(b)?)?),
        None => {
            let Instance::Embedding(emb) = load(a)? else {
                return Err(input("a single file must be an embedding of two disjoint cycles"));
            };
            if let Some(v) = validate_embedding(&emb).first() {
                return Err(input(v));
            }
            let cycles = components_as_cycles(emb.graph()).filter(|c| c.len() == 2);
            let Some(cycles) = cycles else {
                return Err(input("the embedded graph is not two disjoint cycles"));
            };
            (cycle_polygon(&emb, &cycles[0]), cycle_polygon(&emb, &cycles[1]))
        }
    };
    let apex = sample_apex(&pa, &pb, &mut SplitMix64::new(s.seed), s.max_tries)?;
    let value = linking_mod2_cone(&pa, &pb, &apex).map_err(input)?;
    let _ = writeln!(out, "{value}");
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file } => check(&file, out),
        Command::Gen { kind, seed, bound, max_tries, output } => {
            let inst = generate(kind, &GenConfig { seed, bound, max_tries }).map_err(input)?;
            let text = emit_instance(&inst);
            match output {
                Some(path) => write_file(&path, &text),
                None => {
                    let _ = out.write_all(text.as_bytes());
                    Ok(())
                }
            }
        }
        Command::Vankampen { file } => {
            let v = match load(&file)? {
                Instance::Drawing(d) => van_kampen_drawing(&d).map_err(input)?,
                Instance::Points2(p) => van_kampen_points(&p).map_err(input)?,
                other => return Err(input(format!("vankampen needs a drawing or points2 file, got {}", other.kind()))),
            };
            let _ = writeln!(out, "{v}");
            Ok(())
        }
        Command::FindLinked { file, search, verify } => find_linked(&file, search, verify, out),
        Command::Oracle { file, cycles: (l1, l2), search } => {
            let emb = spatial(load(&file)?, "oracle")?;
            let count = oracle_count_linked_pairs(&emb, l1, l2, search.seed, search.max_tries)?;
            let _ = out.write_all(to_json_line(&count).as_bytes());
            Ok(())
        }
        Command::Project { file, search, svg } => project(&file, search, svg.as_deref(), out),
        Command::Link { a, b, search } => link(&a, b.as_deref(), search, out),
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Parity(msg)) => {
            let _ = writeln!(err, "internal parity failure: {msg}");
            2
        }
    }
}
