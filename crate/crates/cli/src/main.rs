use clap::{Parser, Subcommand, ValueEnum};
use plgraph::decomposition::{
    branch_width_exact, carving_width_exact, certify, certify_disc, leaving_graph, make_bond_linked, make_disc,
    make_linked, CarvingTree, ExactOptions, Property, Verdict,
};
use plgraph::embedded_relations::{
    abstract_minor_with, embedded_immersion_with, embedded_minor_with, replay, Engine, OpScript, SearchOptions,
};
use plgraph::gridlib::{grid_embed, unique_embedding_census};
use plgraph::medial::{medial, medial_digraph};
use plgraph::plane_graph::CanonOptions;
use plgraph::{Error, PlaneGraph};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Plane graphs given as rotation systems.
///
/// Graphs are read in PLG format: `vertex <name> : <darts ccw>` lines,
/// `edge <name> : <dart> <dart>` lines (tail first when the file starts with
/// `directed`), optional `nest` and `outer` lines, `#` comments. Trees are
/// s-expressions over vertex names with `_` for the root leaf. Scripts hold
/// one operation per line: `del-edge e`, `del-vertex v`, `contract e`,
/// `subdivide e v`, `lift v e1 e2 cw|ccw`, `bilift v del|contract`.
///
/// Exit status: 0 success or relation holds, 1 relation does not hold,
/// 2 input error, 3 size cap exceeded.
#[derive(Parser, Debug)]
#[command(name = "plg", version)]
struct Cli {
    /// Output style: readable text or one `key value` fact per line.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest dart count accepted by the minor and immersion deciders.
    #[arg(long, default_value_t = 14, global = true)]
    max_darts: usize,
    /// Largest vertex count accepted by the exact width solvers.
    #[arg(long, default_value_t = 12, global = true)]
    max_vertices: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Linked,
    BondLinked,
    Disc,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check that a file describes a sphere embedding.
    Validate { plg: PathBuf },
    /// List the facial walks.
    Faces { plg: PathBuf },
    /// Print the dual graph.
    Dual { plg: PathBuf },
    /// Exact carving width.
    Cw { plg: PathBuf },
    /// Exact branch width.
    Bw { plg: PathBuf },
    /// Build an optimal-width carving decomposition.
    Decompose {
        plg: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Disc)]
        mode: Mode,
    },
    /// Check properties of a carving decomposition.
    Verify {
        plg: PathBuf,
        tree: PathBuf,
        /// Comma-separated subset of width, bond, linked, disc.
        #[arg(long, value_delimiter = ',', default_value = "width")]
        check: Vec<String>,
    },
    /// Print the leaving graph of a tree edge, by index in the width table
    /// of the rooted tree.
    Leaving { plg: PathBuf, tree: PathBuf, edge: usize },
    /// Print the medial graph.
    Medial {
        plg: PathBuf,
        /// Print the medial digraph with its source-edge lines instead.
        #[arg(long)]
        directed: bool,
    },
    /// Decide whether H is an embedded minor of G.
    CheckMinor {
        h: PathBuf,
        g: PathBuf,
        /// Ignore the embeddings.
        #[arg(long = "abstract")]
        abstract_: bool,
    },
    /// Decide whether H is an embedded immersion of G.
    CheckImmersion {
        h: PathBuf,
        g: PathBuf,
        /// Respect edge directions.
        #[arg(long)]
        directed: bool,
        /// Use only the ordered-immersion engine.
        #[arg(long)]
        ordered_only: bool,
    },
    /// Apply a script to a graph and print the result.
    Replay { plg: PathBuf, script: PathBuf },
    /// Print a script turning a grid into the graph.
    GridEmbed { plg: PathBuf },
    /// Decide whether two graphs are equivalent embeddings.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Also identify mirror images.
        #[arg(long)]
        allow_reflection: bool,
    },
    /// Count the distinct sphere embeddings of the n x n grid.
    CensusGrid { n: usize },
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge(_) => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Collected output and whether the checked relation holds.
struct Report {
    format: Format,
    text: String,
    holds: bool,
}

impl Report {
    fn fact(&mut self, key: &str, value: impl std::fmt::Display) {
        match self.format {
            Format::Text => writeln!(self.text, "{key}: {value}"),
            Format::Machine => writeln!(self.text, "{key} {value}"),
        }
        .unwrap();
    }

    fn block(&mut self, s: &str) {
        self.text.push_str(s);
        if !s.is_empty() && !s.ends_with('\n') {
            self.text.push('\n');
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<PlaneGraph, Failure> {
    PlaneGraph::parse_plg(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_tree(path: &Path, g: &PlaneGraph) -> Result<CarvingTree, Failure> {
    CarvingTree::parse(&read(path)?, g).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Script text with an optional `target grid <n>` header removed.
fn load_script(path: &Path) -> Result<OpScript, Failure> {
    let text = read(path)?;
    let body: Vec<&str> = text.lines().filter(|l| !l.trim_start().starts_with("target grid")).collect();
    OpScript::parse(&body.join("\n")).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn width_rows(r: &mut Report, g: &PlaneGraph, t: &CarvingTree) -> Result<(), Failure> {
    let table = t.widths(g)?;
    for (i, row) in table.rows.iter().enumerate() {
        let side: Vec<&str> = row.side1.iter().map(|&v| g.vertex_name(v)).collect();
        r.block(&format!("edge {i} width {} side1 {}", row.width, side.join(" ")));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let mut r = Report { format: cli.format, text: String::new(), holds: true };
    let exact = ExactOptions { max_vertices: cli.max_vertices, ..ExactOptions::default() };
    let search = SearchOptions { max_darts: cli.max_darts, ..SearchOptions::default() };
    match &cli.cmd {
        Cmd::Validate { plg } => {
            let g = load(plg)?;
            r.fact("vertices", g.num_vertices());
            r.fact("edges", g.num_edges());
            r.fact("faces", g.faces().len());
            r.fact("components", g.num_components());
            r.fact("directed", g.is_directed());
            r.fact("outer", g.outer_face().is_some());
        }
        Cmd::Faces { plg } => {
            let g = load(plg)?;
            for (i, f) in g.faces().iter().enumerate() {
                let walk = match f.vertex {
                    Some(v) => format!("isolated {}", g.vertex_name(v)),
                    None => f.darts.iter().map(|&d| g.dart_name(d)).collect::<Vec<_>>().join(" "),
                };
                let mark = if g.outer_face() == Some(i) { " outer" } else { "" };
                r.block(&format!("face {i}{mark} : {walk}"));
            }
        }
        Cmd::Dual { plg } => r.block(&load(plg)?.dual()?.to_plg()),
        Cmd::Cw { plg } => {
            let g = load(plg)?;
            let (w, t) = carving_width_exact(&g, &exact)?;
            match cli.format {
                Format::Text => r.block(&w.to_string()),
                Format::Machine => {
                    r.fact("cw", w);
                    r.fact("tree", t.to_sexpr(&g));
                }
            }
        }
        Cmd::Bw { plg } => {
            let w = branch_width_exact(&load(plg)?, &exact)?;
            match cli.format {
                Format::Text => r.block(&w.to_string()),
                Format::Machine => r.fact("bw", w),
            }
        }
        Cmd::Decompose { plg, mode } => {
            let g = load(plg)?;
            let t = match mode {
                Mode::Linked => make_linked(&g)?,
                Mode::BondLinked => make_bond_linked(&g)?,
                Mode::Disc => make_disc(&g)?.0,
            };
            match cli.format {
                Format::Text => r.block(&t.to_sexpr(&g)),
                Format::Machine => {
                    r.fact("tree", t.to_sexpr(&g));
                    r.fact("width", t.width(&g)?);
                    width_rows(&mut r, &g, &t)?;
                }
            }
        }
        Cmd::Verify { plg, tree, check } => {
            let g = load(plg)?;
            let t = load_tree(tree, &g)?;
            for c in check {
                let prop = match c.as_str() {
                    "width" => {
                        r.fact("width", t.width(&g)?);
                        if cli.format == Format::Machine {
                            width_rows(&mut r, &g, &t)?;
                        }
                        continue;
                    }
                    "bond" => Property::Bond,
                    "linked" => Property::Linked,
                    "disc" => Property::Disc,
                    other => return Err(Failure::Input(format!("unknown check `{other}`"))),
                };
                match certify(&g, &t, prop)? {
                    Verdict::Holds(_) => r.fact(c, "holds"),
                    Verdict::Fails(v) => {
                        r.holds = false;
                        r.fact(c, format!("fails {v:?}"));
                    }
                }
            }
        }
        Cmd::Leaving { plg, tree, edge } => {
            let g = load(plg)?;
            let t = load_tree(tree, &g)?.rooted();
            let e = *t.edges().get(*edge).ok_or_else(|| Failure::Input(format!("no tree edge {edge}")))?;
            let certs = certify_disc(&g, &t)?;
            let l = leaving_graph(&g, &t, &certs, e)?;
            r.block(&format!("# hub {}", l.graph.vertex_name(l.hub)));
            r.block(&l.graph.to_plg());
        }
        Cmd::Medial { plg, directed } => {
            let g = load(plg)?;
            if *directed {
                r.block(&medial_digraph(&g)?.to_plg(&g));
            } else {
                r.block(&medial(&g)?.to_plg());
            }
        }
        Cmd::CheckMinor { h, g, abstract_ } => {
            let (h, g) = (load(h)?, load(g)?);
            if *abstract_ {
                r.holds = abstract_minor_with(&h, &g, &search)?;
                r.fact("abstract-minor", r.holds);
            } else {
                match embedded_minor_with(&h, &g, &search)? {
                    Some(s) => r.block(&s.to_string()),
                    None => r.holds = false,
                }
            }
        }
        Cmd::CheckImmersion { h, g, directed, ordered_only } => {
            let (h, g) = (load(h)?, load(g)?);
            let engine = if *ordered_only { Engine::Ordered } else { Engine::Search };
            match embedded_immersion_with(&h, &g, *directed, engine, &search)? {
                Some(s) => r.block(&s.to_string()),
                None => r.holds = false,
            }
        }
        Cmd::Replay { plg, script } => {
            let g = load(plg)?;
            r.block(&replay(&g, &load_script(script)?)?.to_plg());
        }
        Cmd::GridEmbed { plg } => r.block(&grid_embed(&load(plg)?)?.to_string()),
        Cmd::Iso { a, b, allow_reflection } => {
            let (a, b) = (load(a)?, load(b)?);
            let opts = CanonOptions { allow_reflection: *allow_reflection, ..CanonOptions::default() };
            r.holds = a.canonical_form_with(&opts) == b.canonical_form_with(&opts);
            r.fact("equivalent", r.holds);
        }
        Cmd::CensusGrid { n } => {
            let c = unique_embedding_census(*n)?;
            r.fact("rotation-systems", c.rotation_systems);
            r.fact("planar", c.planar);
            r.fact("classes", c.classes);
            r.fact("classes-up-to-reflection", c.classes_up_to_reflection);
        }
    }
    if !r.holds && r.text.is_empty() {
        r.fact("found", false);
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            print!("{}", r.text);
            ExitCode::from(if r.holds { 0 } else { 1 })
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
