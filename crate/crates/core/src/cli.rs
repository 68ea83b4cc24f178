//! The `confluent` command line.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::enumeration::{directed_bicliques, list_max_bicliques, list_max_cliques};
use crate::error::{Error, Result};
use crate::graph::{attach_edge_triangles, complement, subdivide, CographExpr, Family, Graph, IntervalModel};
use crate::oracle::{decide_confluence, merge_candidates, witness_result, Budget, Outcome};
use crate::planarity::{embed, is_planar, kuratowski_witness};
use crate::reduction::{reduce, Status, StepKind};
use crate::render::{emit_svg, layout, RenderOptions};
use crate::track::{
    build_cocycle_track, build_cograph_track, build_cotree_track, build_interval_track, from_reduction, TrackNetwork,
};

#[derive(Parser)]
#[command(name = "confluent", version, about = "Crossing-free confluent drawings of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from a named family as an edge list.
    Generate(GenerateArgs),
    /// Test planarity or decide merge-reducibility exactly.
    Check(CheckArgs),
    /// List cliques, bicliques or merge candidates.
    Enumerate(EnumerateArgs),
    /// Replace cliques and bicliques until planar; prints the JSON log.
    Reduce(ReduceArgs),
    /// Render a confluent drawing as SVG.
    Draw(DrawArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// complete, bipartite, path, cycle, hypercube, petersen,
    /// petersen-minus-vertex, interval, prufer, random-tree, cograph, random
    family: String,
    params: Vec<String>,
    /// Seed for random families; defaults to $CONFLUENT_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Replace every edge by a path of length two.
    #[arg(long)]
    subdivide: bool,
    /// Add a vertex adjacent to both ends of every edge.
    #[arg(long)]
    augment: bool,
    #[arg(long)]
    complement: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["planar", "oracle"])))]
struct CheckArgs {
    input: Option<PathBuf>,
    #[arg(long)]
    planar: bool,
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = Budget::default().max_states)]
    max_states: usize,
    #[arg(long, default_value_t = Budget::default().max_depth)]
    max_depth: usize,
    #[arg(long, default_value_t = Budget::default().max_vertices)]
    max_vertices: usize,
    #[arg(long)]
    no_memo: bool,
    /// Reduction log (oracle) or Kuratowski subgraph (planar) output path.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("what").required(true).args(["cliques", "bicliques", "directed_bicliques", "candidates"])))]
struct EnumerateArgs {
    input: Option<PathBuf>,
    #[arg(long)]
    cliques: bool,
    #[arg(long, default_value_t = 4)]
    min_size: usize,
    #[arg(long)]
    bicliques: bool,
    #[arg(long)]
    directed_bicliques: bool,
    /// Every clique of four or more and every biclique of 2x2 or more.
    #[arg(long)]
    candidates: bool,
}

#[derive(Args)]
struct ReduceArgs {
    input: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Interval,
    Cotree,
    Cograph,
    Cocycle,
}

#[derive(Args)]
struct DrawArgs {
    /// Graph file, or `-` / nothing for stdin.
    input: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Build the drawing directly; input is an interval list, a tree, a
    /// cograph expression, or a cycle length.
    #[arg(long, value_enum)]
    construction: Option<Construction>,
    /// Also write the track network as JSON.
    #[arg(long)]
    network: Option<PathBuf>,
    #[arg(long, default_value_t = 600.0)]
    width: f64,
    #[arg(long, default_value_t = 600.0)]
    height: f64,
    #[arg(long)]
    no_labels: bool,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, input: &Option<PathBuf>) -> Result<String> {
        match input {
            Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
            _ => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }

    fn write(&mut self, output: &Option<PathBuf>, text: &str) -> Result<()> {
        match output {
            Some(p) if p.as_os_str() != "-" => std::fs::write(p, text)?,
            _ => self.stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { stdin, stdout, stderr };
    let result = match cli.command {
        Command::Generate(a) => generate(a, &mut io),
        Command::Check(a) => check(a, &mut io),
        Command::Enumerate(a) => enumerate(a, &mut io),
        Command::Reduce(a) => reduce_cmd(a, &mut io),
        Command::Draw(a) => draw(a, &mut io),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            2
        }
    }
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> Result<T> {
    params
        .get(i)
        .ok_or_else(|| Error::InvalidParameter(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad {what}: {}", params[i])))
}

fn seed(explicit: Option<u64>) -> Result<u64> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var("CONFLUENT_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Error::InvalidParameter(format!("CONFLUENT_SEED={v} is not an integer"))),
        Err(_) => Ok(0),
    }
}

fn family(a: &GenerateArgs) -> Result<Family> {
    let p = &a.params;
    Ok(match a.family.as_str() {
        "complete" => Family::Complete(param(p, 0, "n")?),
        "bipartite" | "complete-bipartite" => Family::CompleteBipartite(param(p, 0, "m")?, param(p, 1, "n")?),
        "path" => Family::Path(param(p, 0, "n")?),
        "cycle" => Family::Cycle(param(p, 0, "n")?),
        "hypercube" => Family::Hypercube(param(p, 0, "dimension")?),
        "petersen" => Family::Petersen,
        "petersen-minus-vertex" => Family::PetersenMinusVertex,
        "interval" => {
            let text = if p.len() == 1 {
                std::fs::read_to_string(&p[0])?
            } else {
                p.chunks(2).map(|c| c.join(" ")).collect::<Vec<_>>().join("\n")
            };
            Family::Interval(IntervalModel::parse(&text)?)
        }
        "prufer" => Family::TreePrufer((0..p.len()).map(|i| param(p, i, "sequence entry")).collect::<Result<_>>()?),
        "random-tree" => Family::RandomTree { n: param(p, 0, "n")?, seed: seed(a.seed)? },
        "cograph" => Family::Cograph(CographExpr::parse(&p.join(" "))?),
        "random" => Family::Random { n: param(p, 0, "n")?, p: param(p, 1, "p")?, seed: seed(a.seed)? },
        other => return Err(Error::InvalidParameter(format!("unknown family {other}"))),
    })
}

fn generate(a: GenerateArgs, io: &mut Io) -> Result<i32> {
    let mut g = family(&a)?.generate()?;
    if a.subdivide {
        g = subdivide(&g)?;
    }
    if a.augment {
        g = attach_edge_triangles(&g)?;
    }
    if a.complement {
        g = complement(&g)?;
    }
    io.write(&a.output, &g.to_edge_list())?;
    Ok(0)
}

fn check(a: CheckArgs, io: &mut Io) -> Result<i32> {
    let g = Graph::parse(&io.read(&a.input)?)?;
    if a.planar {
        if is_planar(&g) {
            writeln!(io.stdout, "planar")?;
            return Ok(0);
        }
        writeln!(io.stdout, "non-planar")?;
        if let (Some(path), Some(w)) = (&a.witness, kuratowski_witness(&g)) {
            std::fs::write(path, w.to_edge_list())?;
        }
        return Ok(1);
    }
    let budget =
        Budget { max_states: a.max_states, max_depth: a.max_depth, max_vertices: a.max_vertices, memo: !a.no_memo };
    let v = decide_confluence(&g, budget)?;
    writeln!(io.stdout, "{}", v.label())?;
    writeln!(io.stdout, "states {} memo-hits {}", v.stats.states, v.stats.memo_hits)?;
    match v.outcome {
        Outcome::Reducible(steps) => {
            if let Some(path) = &a.witness {
                std::fs::write(path, witness_result(&g, steps)?.to_json()?)?;
            }
            Ok(0)
        }
        _ => Ok(1),
    }
}

fn describe(k: &StepKind) -> String {
    let join = |s: &[usize]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    match k {
        StepKind::Clique { members } => format!("clique {}", join(members)),
        StepKind::Biclique { sides } => format!("biclique {} | {}", join(&sides.0), join(&sides.1)),
        StepKind::DirectedBiclique { sides } => {
            format!("directed {} -> {}", join(&sides.0), join(&sides.1))
        }
    }
}

fn enumerate(a: EnumerateArgs, io: &mut Io) -> Result<i32> {
    let g = Graph::parse(&io.read(&a.input)?)?;
    let lines: Vec<String> = if a.cliques {
        list_max_cliques(&g.underlying(), a.min_size)?
            .iter()
            .map(|c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect()
    } else if a.bicliques {
        list_max_bicliques(&g.underlying())?.iter().map(|b| b.to_string()).collect()
    } else if a.directed_bicliques {
        directed_bicliques(&g)?.iter().map(|b| b.to_string()).collect()
    } else {
        merge_candidates(&g)?.iter().map(describe).collect()
    };
    for l in lines {
        writeln!(io.stdout, "{l}")?;
    }
    Ok(0)
}

fn reduce_cmd(a: ReduceArgs, io: &mut Io) -> Result<i32> {
    let g = Graph::parse(&io.read(&a.input)?)?;
    let r = reduce(&g)?;
    let mut json = r.to_json()?;
    json.push('\n');
    io.write(&a.output, &json)?;
    match r.status {
        Status::Planar => Ok(0),
        Status::Failed => {
            writeln!(io.stderr, "heuristic failed after {} steps", r.steps.len())?;
            Ok(1)
        }
    }
}

/// Terminal order along a cycle graph, starting at 0 toward its smaller neighbor.
fn cycle_order(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if g.is_directed() || n < 3 || g.m() != n || g.vertices().any(|v| g.degree(v) != 2) || g.components().len() != 1 {
        return Err(Error::InvalidParameter("cocycle input must be a cycle length or a cycle graph".into()));
    }
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    while order.len() < n {
        let next = *g.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
        order.push(next);
        prev = cur;
        cur = next;
    }
    Ok(order)
}

fn network_for(a: &DrawArgs, text: &str) -> Result<Option<(TrackNetwork, Option<Graph>)>> {
    Ok(Some(match a.construction {
        None => {
            let g = Graph::parse(text)?;
            let r = reduce(&g)?;
            if r.status == Status::Failed {
                return Ok(None);
            }
            (from_reduction(&r)?, Some(g))
        }
        Some(Construction::Interval) => (build_interval_track(&IntervalModel::parse(text)?)?, None),
        Some(Construction::Cotree) => {
            let tree = Graph::parse(text)?;
            (build_cotree_track(&tree)?, Some(tree))
        }
        Some(Construction::Cograph) => {
            let e = CographExpr::parse(text.trim())?;
            (build_cograph_track(&e)?, Some(Family::Cograph(e).generate()?))
        }
        Some(Construction::Cocycle) => match text.trim().parse::<usize>() {
            Ok(n) => (build_cocycle_track(n)?, None),
            Err(_) => {
                let g = Graph::parse(text)?;
                let order = cycle_order(&g)?;
                let mut t = build_cocycle_track(g.n())?;
                t.relabel_terminals(|i| order[i]);
                (t, Some(g))
            }
        },
    }))
}

fn draw(a: DrawArgs, io: &mut Io) -> Result<i32> {
    let text = io.read(&a.input)?;
    let Some((t, g)) = network_for(&a, &text)? else {
        writeln!(io.stderr, "heuristic failed: no planar reduction found; try `confluent check --oracle`")?;
        return Ok(1);
    };
    if let Some(path) = &a.network {
        std::fs::write(path, t.to_json()?)?;
    }
    let o = RenderOptions { width: a.width, height: a.height, labels: !a.no_labels, ..RenderOptions::default() };
    let e = embed(&t.underlying())?;
    let mut l = layout(&t, &e, &o)?;
    if let Some(g) = &g {
        l.set_labels(g);
    }
    io.write(&a.output, &emit_svg(&l, &o))?;
    Ok(0)
}
