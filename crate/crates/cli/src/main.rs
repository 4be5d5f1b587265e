use std::collections::VecDeque;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chibound::bounds::{
    fr_recursion, identity_bound, multicolor_ramsey_upper, ramsey_upper, rk1_guard_bound, self_guard_bound,
    vizing_bound, BoundError, BoundFn,
};
use chibound::burling::{derive_bundle, generate_random_burling_tree, validate_burling_tree, BurlingTree};
use chibound::constructions::{
    build_trivially_perfect, complete_multipartite, directed_shift_graph, intersection_construction,
    random_bipartite, random_graph, random_tp_recipe, random_unit_interval_family, shift_graph, unit_interval_graph,
};
use chibound::decomposers::{decompose_line_of_bipartite, unit_interval_decomposition, verify_decomposable};
use chibound::experiments::{run_experiment, ExperimentSpec, EXPERIMENTS};
use chibound::graph::Graph;
use chibound::invariants::{
    chromatic_number_with, clique_number_with, girth, independence_number_with, Budget, InvariantError,
};
use chibound::io::{
    format_arc_list, format_burling_tree, format_edge_list, format_graph6, format_intervals, parse_burling_tree,
    parse_edge_list, parse_graph6, parse_intervals,
};
use chibound::label::VertexLabel;
use chibound::par::Execution;
use chibound::recognizers::{
    contains_induced, is_chordal, is_claw_free, is_cluster, is_complete_multipartite, is_forest, is_h_free,
    is_linear_forest, is_rk1_free, is_star, is_strongly_chordal, is_triangle_free, is_trivially_perfect, Pattern,
};

#[derive(Parser)]
#[command(name = "chibound", version, about = "Graph constructions, recognizers and chi-bounding experiments")]
struct Cli {
    /// Graph file format; inferred from the extension when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock limit for solvers and experiments.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    EdgeList,
    Graph6,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and print it.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Test a graph for class membership.
    Recognize {
        class: Class,
        /// Graph file, or - for stdin.
        input: PathBuf,
        /// Independent-set size for rk1-free, or the pattern file for h-free.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Fail unless the answer equals this.
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Compute exact invariants.
    Invariants {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_values = ["chi", "omega", "alpha", "girth"])]
        which: Vec<Invariant>,
    },
    /// Build and verify a decomposition.
    Decompose {
        #[command(subcommand)]
        what: Decompose,
    },
    /// Evaluate chi-bounding functions.
    Bounds {
        #[command(subcommand)]
        what: Bounds,
    },
    /// Work with Burling trees.
    Burling {
        #[command(subcommand)]
        what: Burling,
    },
    /// Run a registered experiment and emit its JSON report.
    Experiment {
        /// Experiment name; omit with --list.
        name: Option<String>,
        /// Parameter as key=value; repeatable.
        #[arg(long = "param", short = 'p')]
        params: Vec<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        pretty: bool,
    },
}

#[derive(Subcommand)]
enum Construct {
    Shift {
        n: usize,
        #[arg(default_value_t = 2)]
        k: usize,
    },
    /// Directed shift graph as an arc list.
    DirectedShift {
        n: usize,
        #[arg(default_value_t = 2)]
        k: usize,
    },
    /// The derived graph of the line-digraph construction over a directed shift graph.
    Intersection { n: usize },
    Multipartite {
        #[arg(value_delimiter = ',', required = true)]
        parts: Vec<usize>,
    },
    Random {
        n: usize,
        #[arg(default_value_t = 0.5)]
        p: f64,
    },
    Bipartite {
        a: usize,
        b: usize,
        #[arg(default_value_t = 0.5)]
        p: f64,
    },
    /// Unit-interval graph of a random family, or of the family in --intervals.
    UnitInterval {
        #[arg(default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        span: i64,
        #[arg(long)]
        intervals: Option<PathBuf>,
        /// Print the interval family instead of the graph.
        #[arg(long)]
        family: bool,
    },
    TriviallyPerfect {
        #[arg(default_value_t = 4)]
        depth: usize,
        #[arg(default_value_t = 14)]
        max_vertices: usize,
    },
    LineGraph { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Cluster,
    CompleteMultipartite,
    TriviallyPerfect,
    Chordal,
    StronglyChordal,
    ClawFree,
    TriangleFree,
    NetFree,
    Rk1Free,
    HFree,
    Forest,
    LinearForest,
    Star,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Invariant {
    Chi,
    Omega,
    Alpha,
    Girth,
}

#[derive(Subcommand)]
enum Decompose {
    /// Parity decomposition of a unit-interval family.
    UnitInterval { intervals: PathBuf },
    /// Two-cluster decomposition of the line graph of a bipartite graph.
    LineBipartite { input: PathBuf },
}

#[derive(Subcommand)]
enum Bounds {
    Eval(BoundArgs),
    /// CSV of every bound for n = 1..=upto.
    Table {
        #[arg(long, default_value_t = 8)]
        upto: u64,
        #[arg(long, default_value_t = 2)]
        r: u64,
    },
}

#[derive(Args)]
struct BoundArgs {
    function: BoundName,
    n: u64,
    /// r for rk1-guard and fr, s for ramsey, colours for multicolor-ramsey.
    #[arg(long, default_value_t = 2)]
    r: u64,
    /// Part sizes for self-guard.
    #[arg(long, value_delimiter = ',', default_values = ["1"])]
    ns: Vec<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundName {
    Identity,
    Vizing,
    Rk1Guard,
    Fr,
    SelfGuard,
    Ramsey,
    MulticolorRamsey,
}

#[derive(Clone, Copy, ValueEnum)]
enum DerivedGraph {
    Oriented,
    Derived,
    CliqueClosure,
    SiblingClosure,
}

#[derive(Subcommand)]
enum Burling {
    Random { n: usize },
    /// Validate a tree and check the closure identities.
    Verify { tree: PathBuf },
    /// Print one of the graphs derived from a tree.
    Derive {
        tree: PathBuf,
        #[arg(long, value_enum, default_value = "derived")]
        graph: DerivedGraph,
    },
}

/// What a subcommand produced and whether its checks held.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }

    fn json(v: &Value, pass: bool) -> Self {
        Outcome {
            text: serde_json::to_string_pretty(v).expect("json"),
            pass,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut text = out.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &cli.out {
                Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
                None => io::stdout().write_all(text.as_bytes()).map_err(Into::into),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn is_graph6_path(path: &Path) -> bool {
    matches!(path.extension().and_then(|e| e.to_str()), Some("g6" | "graph6"))
}

impl Cli {
    fn read_graph(&self, path: &Path) -> Result<Graph> {
        let text = read_text(path)?;
        let g6 = match self.format {
            Some(f) => f == Format::Graph6,
            None => is_graph6_path(path),
        };
        let g = if g6 { parse_graph6(&text) } else { parse_edge_list(&text) };
        g.with_context(|| format!("parsing {}", path.display()))
    }

    fn write_graph(&self, g: &Graph) -> Result<String> {
        let g6 = match self.format {
            Some(f) => f == Format::Graph6,
            None => self.out.as_deref().is_some_and(is_graph6_path),
        };
        Ok(if g6 { format_graph6(g)? } else { format_edge_list(g) })
    }

    fn budget(&self) -> Result<Budget> {
        let b = Budget::unlimited();
        Ok(match self.budget_seconds {
            Some(s) if s.is_finite() && s >= 0.0 => b.with_deadline(Instant::now() + Duration::from_secs_f64(s)),
            Some(s) => bail!("--budget-seconds must be a non-negative number, got {s}"),
            None => b,
        })
    }

    fn read_tree(&self, path: &Path) -> Result<BurlingTree> {
        parse_burling_tree(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Construct { what } => construct(cli, what),
        Command::Recognize {
            class,
            input,
            r,
            pattern,
            expect,
        } => {
            let g = cli.read_graph(input)?;
            let (holds, certificate) = recognize(cli, &g, *class, *r, pattern.as_deref())?;
            let pass = expect.is_none_or(|e| e == holds);
            let v = json!({
                "class": class.to_possible_value().expect("named").get_name(),
                "holds": holds,
                "certificate": certificate,
                "expected": expect,
            });
            Ok(Outcome::json(&v, pass))
        }
        Command::Invariants { input, which } => {
            let g = cli.read_graph(input)?;
            invariants(cli, &g, which)
        }
        Command::Decompose { what } => decompose(cli, what),
        Command::Bounds { what } => bounds(what),
        Command::Burling { what } => burling(cli, what),
        Command::Experiment {
            name,
            params,
            list,
            sequential,
            pretty,
        } => {
            if *list {
                return Ok(Outcome::ok(EXPERIMENTS.join("\n")));
            }
            let name = name.as_deref().ok_or_else(|| anyhow!("an experiment name is required (see --list)"))?;
            let mut spec = ExperimentSpec::new(name, cli.seed);
            for p in params {
                let (k, v) = p.split_once('=').ok_or_else(|| anyhow!("parameter '{p}' is not key=value"))?;
                let v: u64 = v.trim().parse().with_context(|| format!("parameter '{k}'"))?;
                spec = spec.param(k.trim(), v);
            }
            spec.budget = cli.budget_seconds.map(Duration::from_secs_f64);
            if *sequential {
                spec.execution = Execution::Sequential;
            }
            let report = run_experiment(&spec)?;
            let v = report.to_json(true);
            let text = if *pretty {
                serde_json::to_string_pretty(&v)?
            } else {
                serde_json::to_string(&v)?
            };
            if !report.complete {
                eprintln!(
                    "budget exhausted: {} of {} cases skipped",
                    report.summary.skipped, report.summary.cases
                );
            }
            Ok(Outcome {
                text,
                pass: report.all_passed(),
            })
        }
    }
}

fn construct(cli: &Cli, what: &Construct) -> Result<Outcome> {
    let g = match what {
        Construct::Shift { n, k } => shift_graph(*n, *k)?,
        Construct::DirectedShift { n, k } => return Ok(Outcome::ok(format_arc_list(&directed_shift_graph(*n, *k)?))),
        Construct::Intersection { n } => intersection_construction(&directed_shift_graph(*n, 2)?)?.derived,
        Construct::Multipartite { parts } => complete_multipartite(parts)?,
        Construct::Random { n, p } => random_graph(*n, *p, cli.seed)?,
        Construct::Bipartite { a, b, p } => random_bipartite(*a, *b, *p, cli.seed)?.0,
        Construct::UnitInterval {
            n,
            span,
            intervals,
            family,
        } => {
            let f = match intervals {
                Some(p) => parse_intervals(&read_text(p)?)?,
                None => random_unit_interval_family(*n, *span, cli.seed),
            };
            if *family {
                return Ok(Outcome::ok(format_intervals(&f)));
            }
            unit_interval_graph(&f)?
        }
        Construct::TriviallyPerfect { depth, max_vertices } => {
            build_trivially_perfect(&random_tp_recipe(*depth, *max_vertices, cli.seed))?
        }
        Construct::LineGraph { input } => cli.read_graph(input)?.line_graph(),
    };
    Ok(Outcome::ok(cli.write_graph(&g)?))
}

fn labels_json(v: &[VertexLabel]) -> Value {
    Value::Array(v.iter().map(|l| Value::String(l.to_string())).collect())
}

fn pattern_witness(g: &Graph, p: &Pattern) -> Value {
    contains_induced(g, p).map_or(Value::Null, |w| json!({ "induced": p.name(), "vertices": labels_json(&w) }))
}

fn recognize(cli: &Cli, g: &Graph, class: Class, r: Option<usize>, pattern: Option<&Path>) -> Result<(bool, Value)> {
    let free = |p: Pattern| (is_h_free(g, std::slice::from_ref(&p)), pattern_witness(g, &p));
    Ok(match class {
        Class::Cluster => (is_cluster(g), pattern_witness(g, &Pattern::p3())),
        Class::CompleteMultipartite => (is_complete_multipartite(g), pattern_witness(g, &Pattern::k1_plus_k2())),
        Class::TriviallyPerfect => {
            let holds = is_trivially_perfect(g)?;
            let w = if holds {
                Value::Null
            } else {
                json!([pattern_witness(g, &Pattern::p4()), pattern_witness(g, &Pattern::c4())])
            };
            (holds, w)
        }
        Class::Chordal => match is_chordal(g) {
            Some(order) => (true, json!({ "elimination_order": labels_json(&order) })),
            None => (false, Value::Null),
        },
        Class::StronglyChordal => match is_strongly_chordal(g) {
            Some(order) => (true, json!({ "simple_elimination_order": labels_json(&order) })),
            None => (false, Value::Null),
        },
        Class::ClawFree => (is_claw_free(g), pattern_witness(g, &Pattern::claw())),
        Class::TriangleFree => (is_triangle_free(g), pattern_witness(g, &Pattern::triangle())),
        Class::NetFree => free(Pattern::net()),
        Class::Rk1Free => {
            let r = r.ok_or_else(|| anyhow!("rk1-free needs --r"))?;
            (is_rk1_free(g, r)?, pattern_witness(g, &Pattern::rk1(r)))
        }
        Class::HFree => {
            let path = pattern.ok_or_else(|| anyhow!("h-free needs --pattern FILE"))?;
            let h = cli.read_graph(path)?;
            free(Pattern::new(path.display().to_string(), h)?)
        }
        Class::Forest => (is_forest(g), Value::Null),
        Class::LinearForest => (is_linear_forest(g), Value::Null),
        Class::Star => (is_star(g), Value::Null),
    })
}

fn invariants(cli: &Cli, g: &Graph, which: &[Invariant]) -> Result<Outcome> {
    let budget = cli.budget()?;
    let mut out = serde_json::Map::new();
    out.insert("n".into(), json!(g.n()));
    out.insert("m".into(), json!(g.m()));
    let mut pass = true;
    let mut record = |name: &str, r: Result<Value, InvariantError>| -> Result<()> {
        match r {
            Ok(v) => {
                out.insert(name.into(), v);
                Ok(())
            }
            Err(InvariantError::BudgetExceeded { lower, upper, .. }) => {
                pass = false;
                out.insert(name.into(), json!({ "exceeded_budget": true, "lower": lower, "upper": upper }));
                Ok(())
            }
            Err(e) => Err(e.into()),
        }
    };
    for w in which {
        match w {
            Invariant::Chi => record(
                "chi",
                chromatic_number_with(g, &budget).map(|(k, c)| {
                    let colors: serde_json::Map<String, Value> =
                        c.as_map().into_iter().map(|(l, c)| (l.to_string(), json!(c))).collect();
                    json!({ "value": k, "coloring": colors })
                }),
            )?,
            Invariant::Omega => record(
                "omega",
                clique_number_with(g, &budget).map(|(k, s)| json!({ "value": k, "clique": labels_json(&s) })),
            )?,
            Invariant::Alpha => record(
                "alpha",
                independence_number_with(g, &budget).map(|(k, s)| json!({ "value": k, "independent_set": labels_json(&s) })),
            )?,
            Invariant::Girth => record("girth", Ok(serde_json::to_value(girth(g))?))?,
        }
    }
    Ok(Outcome::json(&Value::Object(out), pass))
}

/// Sides of a bipartite graph by BFS 2-colouring.
fn bipartition(g: &Graph) -> Result<(Vec<VertexLabel>, Vec<VertexLabel>)> {
    let mut side = vec![None; g.n()];
    for s in 0..g.n() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].expect("visited");
            for v in g.neighbors(u).iter() {
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        queue.push_back(v);
                    }
                    Some(sv) if sv == su => bail!("graph is not bipartite: odd cycle through {}", g.label(u)),
                    Some(_) => {}
                }
            }
        }
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (i, s) in side.into_iter().enumerate() {
        if s == Some(true) { &mut b } else { &mut a }.push(g.label(i).clone());
    }
    Ok((a, b))
}

fn decompose(cli: &Cli, what: &Decompose) -> Result<Outcome> {
    let (g, d) = match what {
        Decompose::UnitInterval { intervals } => {
            let f = parse_intervals(&read_text(intervals)?)?.normalized();
            (unit_interval_graph(&f)?, unit_interval_decomposition(&f)?)
        }
        Decompose::LineBipartite { input } => {
            let g = cli.read_graph(input)?;
            let (a, b) = bipartition(&g)?;
            let ld = decompose_line_of_bipartite(&g, &a, &b)?;
            (ld.line_graph.clone(), ld.into_decomposition())
        }
    };
    let report = verify_decomposable(&g, &d)?;
    let v = json!({ "t": d.t, "k": d.k, "r": d.r, "report": report });
    Ok(Outcome::json(&v, report.holds))
}

fn bound_fn(name: BoundName, r: u64, ns: &[u64]) -> Result<BoundFn> {
    Ok(match name {
        BoundName::Identity => identity_bound(),
        BoundName::Vizing => vizing_bound(),
        BoundName::Rk1Guard => rk1_guard_bound(&identity_bound(), r)?,
        BoundName::Fr => fr_recursion(&identity_bound(), r),
        BoundName::SelfGuard => {
            let ns = ns.to_vec();
            let guards = vec![identity_bound(); ns.len()];
            BoundFn::new("self-guard", move |n| self_guard_bound(&guards, n, &ns))
        }
        BoundName::Ramsey => BoundFn::new("ramsey", move |n| ramsey_upper(r, n)),
        BoundName::MulticolorRamsey => BoundFn::new("multicolor-ramsey", move |n| multicolor_ramsey_upper(r, n)),
    })
}

fn bounds(what: &Bounds) -> Result<Outcome> {
    match what {
        Bounds::Eval(a) => {
            let f = bound_fn(a.function, a.r, &a.ns)?;
            Ok(Outcome::ok(f.eval(a.n)?.to_string()))
        }
        Bounds::Table { upto, r } => {
            let names = [
                BoundName::Identity,
                BoundName::Vizing,
                BoundName::Rk1Guard,
                BoundName::Fr,
                BoundName::SelfGuard,
                BoundName::Ramsey,
            ];
            let fs: Vec<BoundFn> = names.iter().map(|&n| bound_fn(n, *r, &[1])).collect::<Result<_>>()?;
            let mut csv = String::from("n");
            for n in names {
                csv.push(',');
                csv.push_str(n.to_possible_value().expect("named").get_name());
            }
            csv.push('\n');
            let mut pass = true;
            for n in 1..=*upto {
                csv.push_str(&n.to_string());
                for f in &fs {
                    csv.push(',');
                    // cells that cannot be computed stay empty
                    if let Ok(v) = f.eval(n) {
                        csv.push_str(&v.to_string());
                    }
                }
                csv.push('\n');
            }
            for f in &fs {
                if let Err(e @ BoundError::NotMonotone { .. }) = f.check_non_decreasing(*upto) {
                    eprintln!("{e}");
                    pass = false;
                }
            }
            Ok(Outcome { text: csv, pass })
        }
    }
}

fn burling(cli: &Cli, what: &Burling) -> Result<Outcome> {
    match what {
        Burling::Random { n } => Ok(Outcome::ok(format_burling_tree(&generate_random_burling_tree(*n, cli.seed)?))),
        Burling::Verify { tree } => {
            let t = cli.read_tree(tree)?;
            let report = validate_burling_tree(&t);
            if !report.is_valid() {
                return Ok(Outcome::json(&json!({ "valid": false, "violations": report.violations }), false));
            }
            let b = derive_bundle(&t)?;
            let identity = b.clique_closure.intersect(&b.sibling_closure) == b.derived;
            let triangle_free = is_triangle_free(&b.derived);
            let strongly_chordal = is_strongly_chordal(&b.clique_closure).is_some();
            let trivially_perfect = is_trivially_perfect(&b.sibling_closure)?;
            let v = json!({
                "valid": true,
                "vertices": t.n(),
                "derived_edges": b.derived.m(),
                "meet_equals_derived": identity,
                "derived_triangle_free": triangle_free,
                "clique_closure_strongly_chordal": strongly_chordal,
                "sibling_closure_trivially_perfect": trivially_perfect,
            });
            Ok(Outcome::json(
                &v,
                identity && triangle_free && strongly_chordal && trivially_perfect,
            ))
        }
        Burling::Derive { tree, graph } => {
            let b = derive_bundle(&cli.read_tree(tree)?)?;
            let g = match graph {
                DerivedGraph::Oriented => return Ok(Outcome::ok(format_arc_list(&b.oriented))),
                DerivedGraph::Derived => b.derived,
                DerivedGraph::CliqueClosure => b.clique_closure,
                DerivedGraph::SiblingClosure => b.sibling_closure,
            };
            Ok(Outcome::ok(cli.write_graph(&g)?))
        }
    }
}
