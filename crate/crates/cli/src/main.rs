//! `hgf`: strongly stable ideals, Borel graphs and Gröbner fans of Hilbert schemes.

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hgf_core::adjacency::{borel_graph, BorelGraph};
use hgf_core::analysis::{
    component_lower_bound, hyperplane_section_groups, irregular_intersection_search, is_irregular, maximality_cone,
    segment_cone, spanning_tree,
};
use hgf_core::fan::{cone_rays, fan_rays, groebner_fan, slice, slice_svg, strict_feasible};
use hgf_core::hilbert::{gotzmann_decomposition, parse_polynomial};
use hgf_core::ideal::{enumerate, StronglyStableIdeal};
use hgf_core::monomial::{Comparator, TermOrderMatrix};
use hgf_core::orders::{orient, OrderRegistry};
use hgf_core::Error;

mod emit;

#[derive(Parser)]
#[command(name = "hgf", version, about = "Borel graphs and Gröbner fans of Hilbert schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Strongly stable ideals with their saturations.
    Ideals(Common),
    /// The Borel graph.
    BorelGraph(Common),
    /// The Borel graph oriented by `--order`.
    DegenerationGraph(Common),
    /// Maximal cones of the Gröbner fan inside the closed cone W.
    Fan(Common),
    /// Extreme rays of the fan.
    Rays(Common),
    /// Two-dimensional slice of the fan (n = 2 or 3).
    Slice(Common),
    /// Spanning tree rooted at the hilb-segment ideal of `--order`.
    SpanningTree(Common),
    /// Lower bound on the number of irreducible components.
    LowerBound(Common),
    /// Maximality and segment cones, irregular ideals, compatible sets.
    Mcones(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Hilbert polynomial, e.g. `6t-3` or `1/2t^2+3/2t+1`.
    #[arg(long)]
    hilbert: String,
    /// Dimension n of the ambient projective space P^n.
    #[arg(long)]
    pn: usize,
    /// deglex | revlex | weight:w0,...,wn | matrix:PATH
    #[arg(long)]
    order: Option<String>,
    /// Term order used to refine weights; repeat for several (lower-bound).
    #[arg(long)]
    tiebreak: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Svg,
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 1,
            Failure::Core(e) => match e {
                Error::Parse { .. }
                | Error::UnknownOrder(_)
                | Error::InvalidMatrix(_)
                | Error::InvalidWeight(_)
                | Error::LengthMismatch(..) => 2,
                Error::NotHilbertPolynomial(_) | Error::ImproperSubscheme(_) => 3,
                Error::NoSegmentIdeal | Error::MixedGraph => 4,
                _ => 1,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(s) => f.write_str(s),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

struct Context {
    args: Common,
    registry: OrderRegistry,
    ideals: Vec<StronglyStableIdeal>,
}

impl Context {
    fn new(args: Common) -> Result<Self, Failure> {
        let p = parse_polynomial(&args.hilbert)?;
        let hp = gotzmann_decomposition(&p)?;
        let ideals = enumerate(&hp, args.pn)?;
        Ok(Context { args, registry: OrderRegistry::standard(), ideals })
    }

    fn graph(&self) -> Result<BorelGraph, Failure> {
        Ok(borel_graph(&self.ideals)?)
    }

    fn tiebreaks(&self) -> Result<Vec<TermOrderMatrix>, Failure> {
        let n = self.args.pn;
        if self.args.tiebreak.is_empty() {
            return Ok(vec![TermOrderMatrix::deglex(n), TermOrderMatrix::revlex(n)]);
        }
        self.args
            .tiebreak
            .iter()
            .map(|s| match self.registry.resolve(s, n)? {
                Comparator::Term(m) => Ok(m),
                Comparator::Weight(_) => Err(Failure::Usage(format!("tiebreak `{s}` is not a term order"))),
            })
            .collect()
    }

    fn order_spec(&self) -> Result<&str, Failure> {
        self.args.order.as_deref().ok_or_else(|| Failure::Usage("this command needs --order".into()))
    }

    fn comparator(&self) -> Result<Comparator, Failure> {
        Ok(self.registry.resolve(self.order_spec()?, self.args.pn)?)
    }

    fn term_order(&self) -> Result<TermOrderMatrix, Failure> {
        let tb = self.tiebreaks()?.into_iter().next().expect("non-empty");
        Ok(self.registry.resolve_term_order(self.order_spec()?, self.args.pn, &tb)?)
    }
}

fn unsupported(cmd: &str, f: Format) -> Failure {
    let name = match f {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Csv => "csv",
        Format::Svg => "svg",
    };
    Failure::Usage(format!("format `{name}` is not available for `{cmd}`"))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn run(cmd: Command) -> Result<String, Failure> {
    let (name, args) = match &cmd {
        Command::Ideals(a) => ("ideals", a),
        Command::BorelGraph(a) => ("borel-graph", a),
        Command::DegenerationGraph(a) => ("degeneration-graph", a),
        Command::Fan(a) => ("fan", a),
        Command::Rays(a) => ("rays", a),
        Command::Slice(a) => ("slice", a),
        Command::SpanningTree(a) => ("spanning-tree", a),
        Command::LowerBound(a) => ("lower-bound", a),
        Command::Mcones(a) => ("mcones", a),
    };
    if let Some(j) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let fmt = args.format;
    let cx = Context::new(args.clone())?;
    let out = match cmd {
        Command::Ideals(_) => match fmt {
            Format::Json => json(&cx.ideals),
            Format::Csv => emit::ideals_csv(&cx.ideals),
            f => return Err(unsupported(name, f)),
        },
        Command::BorelGraph(_) => {
            let g = cx.graph()?;
            match fmt {
                Format::Json => json(&g),
                Format::Dot => emit::borel_dot(&g),
                Format::Csv => emit::edges_csv(&g),
                f => return Err(unsupported(name, f)),
            }
        }
        Command::DegenerationGraph(_) => {
            let dg = orient(&cx.graph()?, &cx.comparator()?)?;
            match fmt {
                Format::Json => json(&dg),
                Format::Dot => emit::degeneration_dot(&dg),
                Format::Csv => emit::arcs_csv(&dg),
                f => return Err(unsupported(name, f)),
            }
        }
        Command::Fan(_) => {
            let f = groebner_fan(&cx.graph()?)?;
            match fmt {
                Format::Json => json(&f),
                Format::Csv => format!("cones,rays\n{},{}\n", f.cones.len(), fan_rays(&f).len()),
                fm => return Err(unsupported(name, fm)),
            }
        }
        Command::Rays(_) => {
            let rays = fan_rays(&groebner_fan(&cx.graph()?)?);
            match fmt {
                Format::Json => json(&rays),
                Format::Csv => emit::rows_csv(&rays),
                f => return Err(unsupported(name, f)),
            }
        }
        Command::Slice(_) => {
            let polys = slice(&groebner_fan(&cx.graph()?)?)?;
            match fmt {
                Format::Svg => slice_svg(&polys),
                Format::Json => json(&polys),
                Format::Csv => emit::slice_csv(&polys),
                f => return Err(unsupported(name, f)),
            }
        }
        Command::SpanningTree(_) => {
            let t = spanning_tree(&cx.ideals, &cx.term_order()?)?;
            match fmt {
                Format::Json => json(&t),
                Format::Dot => emit::tree_dot(&cx.ideals, &t),
                Format::Csv => emit::tree_csv(&t),
                f => return Err(unsupported(name, f)),
            }
        }
        Command::LowerBound(_) => {
            let g = cx.graph()?;
            let f = groebner_fan(&g)?;
            let rep = component_lower_bound(&g, &f, &cx.tiebreaks()?)?;
            if !rep.conjecture_gap.is_empty() {
                eprintln!(
                    "warning: {} cone(s) with fewer ⪰⪰-maxima than sources: {:?}",
                    rep.conjecture_gap.len(),
                    rep.conjecture_gap
                );
            }
            match fmt {
                Format::Json => json(&rep),
                Format::Csv => emit::bound_csv(&rep),
                fm => return Err(unsupported(name, fm)),
            }
        }
        Command::Mcones(_) => {
            let g = cx.graph()?;
            let rows = mcone_rows(&g)?;
            let sets = irregular_intersection_search(&g);
            match fmt {
                Format::Json => json(&serde_json::json!({ "ideals": rows, "compatible_sets": sets })),
                Format::Csv => emit::mcones_csv(&rows),
                f => return Err(unsupported(name, f)),
            }
        }
    };
    Ok(out)
}

#[derive(serde::Serialize)]
struct McRow {
    id: usize,
    saturation: String,
    section: String,
    mc_rays: Option<Vec<Vec<i64>>>,
    segment: bool,
    irregular: bool,
}

fn mcone_rows(g: &BorelGraph) -> Result<Vec<McRow>, Failure> {
    let mut section = vec![String::new(); g.len()];
    for grp in hyperplane_section_groups(&g.vertices) {
        for v in grp.members {
            section[v] = grp.section.to_string();
        }
    }
    (0..g.len())
        .map(|v| {
            let mc = maximality_cone(g, v);
            let mc_rays = match strict_feasible(&mc) {
                Some(_) => Some(cone_rays(&mc)?),
                None => None,
            };
            Ok(McRow {
                id: v,
                saturation: hgf_core::ideal::saturate(&g.vertices[v]).to_string(),
                section: std::mem::take(&mut section[v]),
                mc_rays,
                segment: strict_feasible(&segment_cone(&g.vertices[v])).is_some(),
                irregular: is_irregular(g, v),
            })
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match &cli.command {
        Command::Ideals(a)
        | Command::BorelGraph(a)
        | Command::DegenerationGraph(a)
        | Command::Fan(a)
        | Command::Rays(a)
        | Command::Slice(a)
        | Command::SpanningTree(a)
        | Command::LowerBound(a)
        | Command::Mcones(a) => a.output.clone(),
    };
    let result = run(cli.command).and_then(|text| {
        match output {
            Some(p) => fs::write(p, text)?,
            None => io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hgf: {e}");
            ExitCode::from(e.code())
        }
    }
}
