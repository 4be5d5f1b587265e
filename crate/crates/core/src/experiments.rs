//! Named, seeded experiments that sweep the library's constructions against
//! its recognizers and solvers, producing JSON-serializable reports.
//!
//! Reports list cases sorted by key, so they are identical for identical
//! parameters and seed whatever the execution order. Only the `timing`
//! field varies between runs.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bounds::{
    fr_recursion, identity_bound, product_bound, ramsey_exact, ramsey_lower, rk1_guard_bound, self_guard_bound,
    vizing_bound, BoundFn,
};
use crate::burling::{
    bottom_left_vertices, derive_bundle, generate_random_burling_tree, realize_in_clique_closure,
    realize_in_sibling_closure, top_left_vertices, BurlingTree, clique_closure, sibling_closure,
};
use crate::constructions::{
    build_trivially_perfect, directed_shift_graph, intersection_construction, random_bipartite, random_graph,
    random_tp_recipe, random_unit_interval_family, rng, shift_graph, unit_interval_graph, IntervalFamily,
};
use crate::decomposers::{
    decompose_line_of_bipartite, decompose_unit_interval, unit_interval_decomposition, verify_decomposable,
};
use crate::graph::Graph;
use crate::invariants::{
    chromatic_number_with, clique_number_with, independence_number_with, is_proper_coloring, Budget,
    InvariantError,
};
use crate::io::{format_burling_tree, format_edge_list, format_intervals};
use crate::label::VertexLabel;
use crate::par::{self, Execution};
use crate::recognizers::{
    is_claw_free, is_cluster, is_h_free, is_simple_vertex, is_strongly_chordal, is_triangle_free,
    is_trivially_perfect, Pattern,
};

pub const SCHEMA: u32 = 1;

pub const EXPERIMENTS: [&str; 9] = [
    "bounds-table",
    "burling-verify",
    "decompose-line-bipartite",
    "decompose-unit-interval",
    "intersection-construction",
    "linegraph-clawfree",
    "rk1-guard-claim",
    "shift-chi",
    "tp-closure",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExperimentError {
    #[error("unknown experiment '{name}'; registered: {}", EXPERIMENTS.join(", "))]
    Unknown { name: String },
    #[error("parameter error: {0}")]
    Parameter(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub parameters: BTreeMap<String, u64>,
    pub seed: u64,
    #[serde(skip)]
    pub budget: Option<Duration>,
    #[serde(skip)]
    pub execution: Execution,
}

impl ExperimentSpec {
    pub fn new(name: impl Into<String>, seed: u64) -> Self {
        ExperimentSpec {
            name: name.into(),
            parameters: BTreeMap::new(),
            seed,
            budget: None,
            execution: Execution::default(),
        }
    }

    pub fn param(mut self, key: &str, value: u64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }
}

/// One predicate evaluated on a case, with the values it compared.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub predicate: String,
    pub holds: bool,
    pub values: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub key: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Absolute gap between a computed and an expected number, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<f64>,
    /// Replayable input for a failing case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    /// Cases not run because the time budget ran out.
    pub skipped: usize,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub experiment: ExperimentSpec,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub complete: bool,
    pub timing: Value,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.complete && self.summary.failed == 0
    }

    /// The report as JSON, optionally without the timing field.
    pub fn to_json(&self, with_timing: bool) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if !with_timing {
            v.as_object_mut().expect("report is an object").remove("timing");
        }
        v
    }
}

struct CaseBuilder {
    key: String,
    inputs: Value,
    checks: Vec<Check>,
    deviation: Option<f64>,
    witness: Value,
}

impl CaseBuilder {
    fn new(key: String, inputs: Value) -> Self {
        CaseBuilder {
            key,
            inputs,
            checks: Vec::new(),
            deviation: None,
            witness: json!({}),
        }
    }

    fn check(&mut self, predicate: &str, holds: bool, values: Value) -> &mut Self {
        self.checks.push(Check {
            predicate: predicate.to_string(),
            holds,
            values,
        });
        self
    }

    fn witness(&mut self, key: &str, v: Value) -> &mut Self {
        self.witness[key] = v;
        self
    }

    fn finish(self) -> Case {
        let pass = self.checks.iter().all(|c| c.holds);
        Case {
            key: self.key,
            inputs: self.inputs,
            pass,
            deviation: self.deviation,
            witness: (!pass).then_some(self.witness),
            checks: self.checks,
        }
    }
}

struct Ctx {
    params: BTreeMap<String, u64>,
    seed: u64,
    deadline: Option<Instant>,
    exec: Execution,
}

impl Ctx {
    fn get(&self, key: &str, default: u64) -> u64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    fn out_of_time(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn budget(&self) -> Budget {
        let b = Budget::unlimited();
        match self.deadline {
            Some(d) => b.with_deadline(d),
            None => b,
        }
    }

    /// Independent seed for case `i`.
    fn case_seed(&self, i: u64) -> u64 {
        let mut z = self.seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Runs `f` over `items`, skipping cases once the deadline passes.
    fn run<T: Send>(&self, items: Vec<T>, f: impl Fn(&Ctx, T) -> Case + Sync + Send) -> Vec<Option<Case>> {
        par::map(self.exec, items, |item| (!self.out_of_time()).then(|| f(self, item)))
    }
}

fn allowed(name: &str) -> &'static [&'static str] {
    match name {
        "shift-chi" => &["n_min", "n_max"],
        "intersection-construction" => &["n_min", "n_max"],
        "burling-verify" => &["trees", "max_vertices"],
        "decompose-unit-interval" => &["families", "max_n", "span"],
        "decompose-line-bipartite" => &["graphs", "max_side", "percent"],
        "rk1-guard-claim" => &["pairs", "max_n", "r_min", "r_max"],
        "bounds-table" => &["upto"],
        "tp-closure" => &["recipes", "depth", "max_vertices"],
        "linegraph-clawfree" => &["graphs", "max_n", "percent"],
        _ => &[],
    }
}

/// Runs a registered experiment. A report whose budget ran out is still
/// returned, with `complete` false and the unrun cases counted as skipped.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report, ExperimentError> {
    if !EXPERIMENTS.contains(&spec.name.as_str()) {
        return Err(ExperimentError::Unknown { name: spec.name.clone() });
    }
    let ok = allowed(&spec.name);
    if let Some(k) = spec.parameters.keys().find(|k| !ok.contains(&k.as_str())) {
        return Err(ExperimentError::Parameter(format!(
            "'{k}' is not a parameter of {}; expected one of: {}",
            spec.name,
            ok.join(", ")
        )));
    }
    let start = Instant::now();
    let ctx = Ctx {
        params: spec.parameters.clone(),
        seed: spec.seed,
        deadline: spec.budget.map(|b| start + b),
        exec: spec.execution,
    };
    let results = match spec.name.as_str() {
        "shift-chi" => shift_chi(&ctx)?,
        "intersection-construction" => intersection(&ctx)?,
        "burling-verify" => burling_verify(&ctx)?,
        "decompose-unit-interval" => unit_interval(&ctx)?,
        "decompose-line-bipartite" => line_bipartite(&ctx)?,
        "rk1-guard-claim" => rk1_guard_claim(&ctx)?,
        "bounds-table" => bounds_table(&ctx)?,
        "tp-closure" => tp_closure(&ctx)?,
        "linegraph-clawfree" => linegraph_clawfree(&ctx)?,
        _ => unreachable!("name checked above"),
    };
    let skipped = results.iter().filter(|c| c.is_none()).count();
    let mut cases: Vec<Case> = results.into_iter().flatten().collect();
    cases.sort_by(|a, b| a.key.cmp(&b.key));
    let passed = cases.iter().filter(|c| c.pass).count();
    let summary = Summary {
        cases: cases.len() + skipped,
        passed,
        failed: cases.len() - passed,
        skipped,
        max_deviation: cases.iter().filter_map(|c| c.deviation).fold(0.0, f64::max),
    };
    Ok(Report {
        schema: SCHEMA,
        experiment: spec.clone(),
        cases,
        summary,
        complete: skipped == 0,
        timing: json!({ "elapsed_ms": start.elapsed().as_millis() as u64 }),
    })
}

fn range(ctx: &Ctx, lo_key: &str, lo: u64, hi_key: &str, hi: u64) -> Result<Vec<u64>, ExperimentError> {
    let (lo, hi) = (ctx.get(lo_key, lo), ctx.get(hi_key, hi));
    if lo > hi {
        return Err(ExperimentError::Parameter(format!("{lo_key} = {lo} exceeds {hi_key} = {hi}")));
    }
    Ok((lo..=hi).collect())
}

fn positive(ctx: &Ctx, key: &str, default: u64) -> Result<u64, ExperimentError> {
    match ctx.get(key, default) {
        0 => Err(ExperimentError::Parameter(format!("{key} must be positive"))),
        v => Ok(v),
    }
}

fn percent(ctx: &Ctx, default: u64) -> Result<f64, ExperimentError> {
    match ctx.get("percent", default) {
        p @ 0..=100 => Ok(p as f64 / 100.0),
        p => Err(ExperimentError::Parameter(format!("percent must be at most 100, got {p}"))),
    }
}

fn graph_json(g: &Graph) -> Value {
    Value::String(format_edge_list(g))
}

fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        (n - 1).ilog2() as u64 + 1
    }
}

/// Exact χ, or the bracketing interval when the budget runs out.
fn chi(g: &Graph, b: &Budget) -> Result<usize, (usize, usize)> {
    match chromatic_number_with(g, b) {
        Ok((k, _)) => Ok(k),
        Err(InvariantError::BudgetExceeded { lower, upper, .. }) => Err((lower, upper)),
        Err(e) => panic!("unbounded solver failed: {e}"),
    }
}

fn shift_chi(ctx: &Ctx) -> Result<Vec<Option<Case>>, ExperimentError> {
    let ns = range(ctx, "n_min", 3, "n_max", 20)?;
    if ns[0] < 2 {
        return Err(ExperimentError::Parameter("n_min must be at least 2".into()));
    }
    Ok(ctx.run(ns, |ctx, n| {
        let g = shift_graph(n as usize, 2).expect("n >= k");
        let expected = ceil_log2(n);
        let mut c = CaseBuilder::new(format!("n={n:03}"), json!({ "n": n, "k": 2 }));
        match chromatic_number_with(&g, &ctx.budget()) {
            Ok((k, coloring)) => {
                let proper = is_proper_coloring(&g, &coloring).unwrap_or(false);
                c.deviation = Some((k as f64 - expected as f64).abs());
                c.check("chi == ceil(log2 n)", k as u64 == expected, json!({ "chi": k, "expected": expected }));
                c.check(
                    "witness colouring is proper with chi colours",
                    proper && coloring.used_colors() == k,
                    json!({ "colors": coloring.used_colors() }),
                );
            }
            Err(e) => {
                c.check("chi == ceil(log2 n)", false, json!({ "error": e.to_string(), "expected": expected }));
            }
        }
        c.witness("graph", graph_json(&g));
        c.finish()
    }))
}

fn intersection(ctx: &Ctx) -> Result<Vec<Option<Case>>, ExperimentError> {
    let ns = range(ctx, "n_min", 5, "n_max", 12)?;
    if ns[0] < 3 {
        return Err(ExperimentError::Parameter("n_min must be at least 3".into()));
    }
    Ok(ctx.run(ns, |ctx, n| {
        let mut c = CaseBuilder::new(format!("n={n:03}"), json!({ "n": n }));
        let h = directed_shift_graph(n as usize, 2).expect("n >= 2");
        match intersection_construction(&h) {
            Err(e) => {
                c.check("construction succeeds", false, json!({ "error": e.to_string() }));
            }
            Ok(ic) => {
                let (extra, missing) = ic.line_graph.intersect(&ic.multipartite).edge_difference(&ic.derived);
                c.check(
                    "line graph ∩ multipartite == derived",
                    extra.is_empty() && missing.is_empty(),
                    json!({ "extra": extra.len(), "missing": missing.len() }),
                );
                c.check("derived is triangle-free", is_triangle_free(&ic.derived), json!({}));
                let b = ctx.budget();
                let base = shift_graph(n as usize, 2).expect("n >= 2");
                let chi_d = chi(&base, &b);
                let chi_l = chi(&ic.derived, &b);
                // a lower bound for the line side and an upper bound for the base side suffice
                let lower_l = chi_l.unwrap_or_else(|(lo, _)| lo);
                let upper_d = chi_d.unwrap_or_else(|(_, hi)| hi);
                c.check(
                    "chi(derived) >= log2 chi(shift graph)",
                    lower_l as f64 >= (upper_d as f64).log2(),
                    json!({ "chi_derived": format!("{chi_l:?}"), "chi_shift": format!("{chi_d:?}") }),
                );
                c.witness("digraph", Value::String(crate::io::format_arc_list(&h)));
            }
        }
        c.finish()
    }))
}

/// Ancestor chain of `v`, from its parent up to the root.
fn ancestors<'a>(t: &'a BurlingTree, v: &'a VertexLabel) -> Vec<&'a VertexLabel> {
    let mut out = Vec::new();
    let mut x = t.parent(v);
    while let Some(p) = x {
        out.push(p);
        x = t.parent(p);
    }
    out
}

fn burling_verify(ctx: &Ctx) -> Result<Vec<Option<Case>>, ExperimentError> {
    let trees = positive(ctx, "trees", 200)?;
    let max = positive(ctx, "max_vertices", 30)?;
    Ok(ctx.run((0..trees).collect(), |ctx, i| {
        let seed = ctx.case_seed(i);
        let n = 1 + (seed % max) as usize;
        let t = generate_random_burling_tree(n, seed).expect("n >= 1");
        let mut c = CaseBuilder::new(format!("tree={i:05}"), json!({ "n": n, "seed": seed }));
        c.witness("tree", Value::String(format_burling_tree(&t)));
        let b = match derive_bundle(&t) {
            Ok(b) => b,
            Err(e) => {
                c.check("tree is valid", false, json!({ "error": e.to_string() }));
                return c.finish();
            }
        };
        let meet = b.clique_closure.intersect(&b.sibling_closure);
        c.check("G(T) == C(T) ∩ I(T)", meet == b.derived, json!({ "edges": b.derived.m() }));
        c.check("G(T) is triangle-free", is_triangle_free(&b.derived), json!({}));
        c.check(
            "C(T) is strongly chordal",
            is_strongly_chordal(&b.clique_closure).is_some(),
            json!({}),
        );
        c.check("C(T) is net-free", is_h_free(&b.clique_closure, &[Pattern::net()]), json!({}));
        let tp = is_trivially_perfect(&b.sibling_closure);
        c.check(
            "I(T) is trivially perfect",
            tp == Ok(true),
            json!({ "result": format!("{tp:?}") }),
        );
        let cg = &b.clique_closure;
        let mut bad_pairs = Vec::new();
        for v in t.labels() {
            let vi = cg.index_of(v).expect("same vertices");
            for a in ancestors(&t, v) {
                let ai = cg.index_of(a).expect("same vertices");
                if !cg.closed_neighbors(vi).is_subset(&cg.closed_neighbors(ai)) {
                    bad_pairs.push(format!("{a}>{v}"));
                }
            }
        }
        c.check(
            "N_C[descendant] ⊆ N_C[ancestor]",
            bad_pairs.is_empty(),
            json!({ "violations": bad_pairs }),
        );
        let all = t.labels().to_vec();
        let bottom = bottom_left_vertices(&t, &all).unwrap_or_default();
        let simple = bottom.iter().all(|v| is_simple_vertex(cg, v).unwrap_or(false));
        c.check(
            "bottom-left vertices exist and are simple in C(T)",
            !bottom.is_empty() && simple,
            json!({ "bottom_left": bottom.len() }),
        );
        let top = top_left_vertices(&t, &all).unwrap_or_default();
        c.check("a top-left vertex exists", !top.is_empty(), json!({ "top_left": top.len() }));
        c.finish()
    }))
}

/// Some integer of the given parity lies in both intervals.
fn share_parity_integer(f: &IntervalFamily, a: usize, b: usize, parity: i64) -> bool {
    let (la, ra) = f.intervals()[a];
    let (lb, rb) = f.intervals()[b];
    let (lo, hi) = (la.max(lb).ceil().to_integer(), ra.min(rb).floor().to_integer());
    (lo..=hi).any(|m| m.rem_euclid(2) == parity)
}

fn unit_interval(ctx: &Ctx) -> Result<Vec<Option<Case>>, ExperimentError> {
    let families = positive(ctx, "families", 200)?;
    let max_n = positive(ctx, "max_n", 20)?;
    let span = positive(ctx, "span", 6)?;
    Ok(ctx.run((0..families).collect(), |ctx, i| {
        let seed = ctx.case_seed(i);
        let n = 1 + (seed % max_n) as usize;
        let f = random_unit_interval_family(n, span as i64, seed);
        let mut c = CaseBuilder::new(format!("family={i:05}"), json!({ "n": n, "seed": seed }));
        c.witness("intervals", Value::String(format_intervals(&f)));
        let g = unit_interval_graph(&f).expect("generator output is normalized");
        let coloring = decompose_unit_interval(&f).expect("normalized");
        let classes = coloring.classes();
        let clusters = classes
            .values()
            .all(|cl| is_cluster(&g.induced_subgraph(cl).expect("class vertices")));
        c.check("each parity class is a cluster graph", clusters, json!({ "classes": classes.len() }));
        let mut mismatches = 0;
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                let (ca, cb) = (coloring.color_of(g.label(a)), coloring.color_of(g.label(b)));
                if ca == cb {
                    let parity = if ca == Some(1) { 0 } else { 1 };
                    if g.adjacent(a, b) != share_parity_integer(&f, a, b, parity) {
                        mismatches += 1;
                    }
                }
            }
        }
        c.check(
            "same class: adjacent iff a common integer of the class parity",
            mismatches == 0,
            json!({ "mismatches": mismatches }),
        );
        let d = unit_interval_decomposition(&f).expect("normalized");
        let report = verify_decomposable(&g, &d);
        c.check(
            "(1,2,2)-decomposition verifies",
            report.as_ref().is_ok_and(|r| r.holds),
            serde_json::to_value(report.ok()).unwrap_or(Value::Null),
        );
        c.finish()
    }))
}

fn line_bipartite(ctx: &Ctx) -> Result<Vec<Option<Case>>, ExperimentError> {
    let graphs = positive(ctx, "graphs", 200)?;
    let max_side = positive(ctx, "max_side", 8)?;
    let p = percent(ctx, 40)?;
    Ok(ctx.run((0..graphs).collect(), |ctx, i| {
        let seed = ctx.case_seed(i);
        let (a, b) = (1 + (seed % max_side) as usize, 1 + ((seed >> 16) % max_side) as usize);
        let (g, left, right) = random_bipartite(a, b, p, seed).expect("p in range");
        let mut c = CaseBuilder::new(format!("graph={i:05}"), json!({ "a": a, "b": b, "seed": seed }));
        c.witness("graph", graph_json(&g));
        let d = decompose_line_of_bipartite(&g, &left, &right).expect("sides are a bipartition");
        let [e1, e2] = &d.parts;
        c.check("E1 is a cluster graph", is_cluster(e1), json!({ "edges": e1.m() }));
        c.check("E2 is a cluster graph", is_cluster(e2), json!({ "edges": e2.m() }));
        c.check("E1 and E2 are disjoint", e1.intersect(e2).m() == 0, json!({}));
        c.check(
            "E1 ∪ E2 == E(L(g))",
            e1.union(e2) == d.line_graph,
            json!({ "line_edges": d.line_graph.m() }),
        );
        let line = d.line_graph.clone();
        let report = verify_decomposable(&line, &d.into_decomposition());
        c.check(
            "(2,1,2)-decomposition verifies",
            report.as_ref().is_ok_and(|r| r.holds),
            serde_json::to_value(report.ok()).unwrap_or(Value::Null),
        );
        c.finish()
    }))
}

/// Random graph on `0..n` with independence number below `r`: a dense
/// random graph, then edges added inside maximum independent sets.
pub fn random_rk1_free(n: usize, r: usize, seed: u64) -> Graph {
    let mut g = random_graph(n, 0.6, seed).expect("valid probability");
    let mut rng = rng(seed ^ 0x5EED);
    let b = Budget::unlimited();
    loop {
        let (alpha, set) = independence_number_with(&g, &b).expect("unbounded");
        if alpha < r {
            return g;
        }
        let i = rng.gen_range(0..set.len());
        let j = (i + 1 + rng.gen_range(0..set.len() - 1)) % set.len();
        let extra = Graph::new(g.labels().to_vec(), [(set[i].clone(), set[j].clone())]).expect("vertices exist");
        g = g.union(&extra);
    }
}

fn rk1_guard_claim(ctx: &Ctx) -> Result<Vec<Option<Case>>, ExperimentError> {
    let pairs = positive(ctx, "pairs", 100)?;
    let max_n = positive(ctx, "max_n", 10)?;
    let rs = range(ctx, "r_min", 2, "r_max", 3)?;
    if rs[0] < 2 {
        return Err(ExperimentError::Parameter("r_min must be at least 2".into()));
    }
    let items: Vec<(u64, u64)> = rs.iter().flat_map(|&r| (0..pairs).map(move |i| (r, i))).collect();
    Ok(ctx.run(items, |ctx, (r, i)| {
        let seed = ctx.case_seed(r * 1_000_000 + i);
        let n = 1 + (seed % max_n) as usize;
        let g = random_rk1_free(n, r as usize, seed);
        let h = random_graph(n, 0.5, seed.rotate_left(17)).expect("valid probability");
        let b = Budget::unlimited();
        let meet = g.intersect(&h);
        let w_meet = clique_number_with(&meet, &b).expect("unbounded").0 as u64;
        let w_h = clique_number_with(&h, &b).expect("unbounded").0 as u64;
        let alpha = independence_number_with(&g, &b).expect("unbounded").0 as u64;
        let exact = ramsey_exact(w_meet + 1, r).ok();
        let ramsey = ramsey_lower(w_meet + 1, r).expect("positive arguments");
        let mut c = CaseBuilder::new(format!("r={r}/pair={i:05}"), json!({ "n": n, "r": r, "seed": seed }));
        c.check("G is rK1-free", alpha < r, json!({ "alpha": alpha }));
        c.check(
            "omega(H) < R(omega(G∩H)+1, r)",
            w_h < ramsey,
            json!({ "omega_h": w_h, "omega_meet": w_meet, "ramsey": ramsey, "ramsey_exact": exact.is_some() }),
        );
        c.witness("g", graph_json(&g)).witness("h", graph_json(&h));
        c.finish()
    }))
}

fn bounds_table(ctx: &Ctx) -> Result<Vec<Option<Case>>, ExperimentError> {
    let upto = positive(ctx, "upto", 8)?;
    let product = product_bound(&[vizing_bound(), vizing_bound()]).expect("non-empty");
    let guard2 = rk1_guard_bound(&identity_bound(), 2).expect("r >= 1");
    let guard3 = rk1_guard_bound(&identity_bound(), 3).expect("r >= 1");
    let self_guard = BoundFn::new("self-guard t=1 n1=1 over identity", |n| {
        self_guard_bound(&[identity_bound()], n, &[1])
    });
    // (function, pinned values checked against hand evaluation)
    let table: Vec<(BoundFn, Vec<(u64, u64)>)> = vec![
        (identity_bound(), vec![(3, 3)]),
        (vizing_bound(), vec![(1, 2), (5, 6)]),
        (product, vec![(2, 9)]),
        (guard2, vec![(2, 2)]),
        (guard3, vec![(2, 5)]),
        (fr_recursion(&identity_bound(), 1), vec![(1, 1), (2, 4), (3, 11)]),
        (fr_recursion(&identity_bound(), 2), vec![(1, 1), (2, 6)]),
        (self_guard, vec![(1, 1), (2, 17496)]),
    ];
    let items: Vec<_> = table.into_iter().enumerate().collect();
    Ok(ctx.run(items, |_, (i, (f, pinned))| {
        let mut c = CaseBuilder::new(format!("{i:02}:{}", f.name()), json!({ "upto": upto }));
        let values: Vec<String> = (1..=upto)
            .map(|n| f.eval(n).map_or_else(|e| format!("error: {e}"), |v| v.to_string()))
            .collect();
        let monotone = f.check_non_decreasing(upto);
        c.check(
            "non-decreasing on 1..=upto",
            monotone.is_ok(),
            json!({ "values": values, "error": monotone.err().map(|e| e.to_string()) }),
        );
        for (n, want) in pinned {
            let got = f.eval(n).map(|v| v.to_string());
            c.check(
                &format!("f({n}) == {want}"),
                got.as_deref() == Ok(want.to_string().as_str()),
                json!({ "got": format!("{got:?}") }),
            );
        }
        c.finish()
    }))
}

fn tp_closure(ctx: &Ctx) -> Result<Vec<Option<Case>>, ExperimentError> {
    let recipes = positive(ctx, "recipes", 50)?;
    let depth = positive(ctx, "depth", 4)?;
    let max_v = positive(ctx, "max_vertices", 14)?;
    Ok(ctx.run((0..recipes).collect(), |ctx, i| {
        let seed = ctx.case_seed(i);
        let recipe = random_tp_recipe(depth as usize, max_v as usize, seed);
        let g = build_trivially_perfect(&recipe).expect("generated recipes are valid");
        let mut c = CaseBuilder::new(
            format!("recipe={i:05}"),
            json!({ "seed": seed, "recipe": serde_json::to_value(&recipe).expect("serializes") }),
        );
        c.witness("graph", graph_json(&g));
        let tp = is_trivially_perfect(&g);
        c.check("recipe graph is trivially perfect", tp == Ok(true), json!({ "result": format!("{tp:?}") }));
        let in_c = realize_in_clique_closure(&recipe).and_then(|r| {
            let closure = clique_closure(&r.tree)?;
            Ok((r.recipe_graph(&closure)? == g, closure))
        });
        match in_c {
            Ok((eq, closure)) => {
                c.check("realized in C(T) minus helpers", eq, json!({ "tree_vertices": closure.n() }));
                c.check("that C(T) is strongly chordal", is_strongly_chordal(&closure).is_some(), json!({}));
                c.check("that C(T) is net-free", is_h_free(&closure, &[Pattern::net()]), json!({}));
            }
            Err(e) => {
                c.check("realized in C(T) minus helpers", false, json!({ "error": e.to_string() }));
            }
        }
        let in_i = realize_in_sibling_closure(&recipe).and_then(|r| {
            let closure = sibling_closure(&r.tree)?;
            Ok((r.recipe_graph(&closure)? == g, closure))
        });
        match in_i {
            Ok((eq, closure)) => {
                c.check("realized in I(T) minus helpers", eq, json!({ "tree_vertices": closure.n() }));
                c.check("that I(T) is trivially perfect", is_trivially_perfect(&closure) == Ok(true), json!({}));
            }
            Err(e) => {
                c.check("realized in I(T) minus helpers", false, json!({ "error": e.to_string() }));
            }
        }
        c.finish()
    }))
}

fn linegraph_clawfree(ctx: &Ctx) -> Result<Vec<Option<Case>>, ExperimentError> {
    let graphs = positive(ctx, "graphs", 100)?;
    let max_n = positive(ctx, "max_n", 8)?;
    let p = percent(ctx, 50)?;
    Ok(ctx.run((0..graphs).collect(), |ctx, i| {
        let seed = ctx.case_seed(i);
        let n = 1 + (seed % max_n) as usize;
        let g = random_graph(n, p, seed).expect("p in range");
        let line = g.line_graph();
        let mut c = CaseBuilder::new(format!("graph={i:05}"), json!({ "n": n, "seed": seed }));
        c.witness("graph", graph_json(&g));
        c.check("L(g) is claw-free", is_claw_free(&line), json!({ "line_vertices": line.n() }));
        let b = ctx.budget();
        let omega = clique_number_with(&line, &b).map(|w| w.0);
        let chi_l = chi(&line, &b);
        let holds = match (&omega, &chi_l) {
            (Ok(w), Ok(k)) => *k <= w + 1,
            _ => false,
        };
        c.check(
            "chi(L(g)) <= omega(L(g)) + 1",
            holds,
            json!({ "omega": format!("{omega:?}"), "chi": format!("{chi_l:?}") }),
        );
        c.finish()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(name: &str) -> ExperimentSpec {
        let spec = ExperimentSpec::new(name, 7);
        match name {
            "shift-chi" => spec.param("n_max", 10),
            "intersection-construction" => spec.param("n_max", 7),
            "burling-verify" => spec.param("trees", 20),
            "decompose-unit-interval" => spec.param("families", 20),
            "decompose-line-bipartite" => spec.param("graphs", 20),
            "rk1-guard-claim" => spec.param("pairs", 10),
            "bounds-table" => spec.param("upto", 5),
            "tp-closure" => spec.param("recipes", 10),
            "linegraph-clawfree" => spec.param("graphs", 10),
            _ => spec,
        }
    }

    #[test]
    fn every_experiment_passes_small() {
        for name in EXPERIMENTS {
            let report = run_experiment(&quick(name)).unwrap();
            let failed: Vec<_> = report.cases.iter().filter(|c| !c.pass).collect();
            assert!(report.all_passed(), "{name}: {failed:#?}");
            assert!(report.summary.cases > 0);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let mut a = quick("burling-verify");
        a.execution = Execution::Parallel;
        let mut b = quick("burling-verify");
        b.execution = Execution::Sequential;
        let ra = run_experiment(&a).unwrap().to_json(false);
        let rb = run_experiment(&b).unwrap().to_json(false);
        assert_eq!(ra, rb);
        assert_eq!(ra["schema"], 1);
    }

    #[test]
    fn errors() {
        let err = run_experiment(&ExperimentSpec::new("nope", 1)).unwrap_err();
        assert!(err.to_string().contains("shift-chi"));
        let bad = ExperimentSpec::new("shift-chi", 1).param("bogus", 3);
        assert!(matches!(run_experiment(&bad), Err(ExperimentError::Parameter(_))));
        let bad = ExperimentSpec::new("shift-chi", 1).param("n_min", 9).param("n_max", 4);
        assert!(matches!(run_experiment(&bad), Err(ExperimentError::Parameter(_))));
    }

    #[test]
    fn zero_budget_gives_partial_report() {
        let mut spec = ExperimentSpec::new("shift-chi", 1);
        spec.budget = Some(Duration::ZERO);
        let report = run_experiment(&spec).unwrap();
        assert!(!report.complete && !report.all_passed());
        assert_eq!(report.summary.skipped, report.summary.cases);
    }

    #[test]
    fn rk1_free_generator() {
        for seed in 0..20 {
            let g = random_rk1_free(9, 3, seed);
            assert!(independence_number_with(&g, &Budget::unlimited()).unwrap().0 < 3);
        }
    }
}
