//! Acceptance suite: one PASS/FAIL line per criterion, each with a wall
//! clock limit. Exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chibound::bounds::{fr_recursion, identity_bound, self_guard_bound, vizing_bound};
use chibound::burling::{
    attach_root_clique, attach_root_sibling, check_attach_root_clique, check_attach_root_sibling,
    check_combine_trees, clique_closure, combine_trees, generate_random_burling_tree, sibling_closure, BurlingTree,
};
use chibound::constructions::{random_graph, shift_graph};
use chibound::experiments::{run_experiment, ExperimentSpec, Report};
use chibound::graph::Graph;
use chibound::invariants::{chromatic_number, chromatic_number_with, clique_number, Budget};
use chibound::label::VertexLabel;
use chibound::recognizers::{
    contains_induced, is_cluster, is_complete_multipartite, is_h_free, is_strongly_chordal,
    is_trivially_perfect_by_patterns, is_trivially_perfect_by_universal_vertices, Pattern,
};
use common::*;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Result<String, String>,
}

fn experiment(spec: ExperimentSpec) -> Result<String, String> {
    let report: Report = run_experiment(&spec).map_err(|e| e.to_string())?;
    let s = &report.summary;
    if report.all_passed() {
        Ok(format!("{} cases", s.cases))
    } else {
        let first = report.cases.iter().find(|c| !c.pass).map(|c| {
            let bad: Vec<_> = c.checks.iter().filter(|k| !k.holds).map(|k| &k.predicate).collect();
            format!("{}: {bad:?}", c.key)
        });
        Err(format!(
            "{} failed, {} skipped of {}; first failure {first:?}",
            s.failed, s.skipped, s.cases
        ))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shift_chromatic_law() -> Result<String, String> {
    for n in 3..=20u64 {
        let g = shift_graph(n as usize, 2).map_err(|e| e.to_string())?;
        let (chi, _) = chromatic_number_with(&g, &Budget::unlimited()).map_err(|e| e.to_string())?;
        // smallest k with 2^k >= n
        let expected = (0..).find(|&k| 1u64 << k >= n).expect("finite");
        ensure(chi == expected, || format!("n={n}: chi={chi}, expected {expected}"))?;
    }
    experiment(ExperimentSpec::new("shift-chi", 1))
}

fn has_triangle(g: &Graph) -> bool {
    g.edges().any(|(u, v)| (0..g.n()).any(|w| g.adjacent(u, w) && g.adjacent(v, w)))
}

fn shift_triangle_free() -> Result<String, String> {
    let mut checked = 0;
    for (k, max) in [(2, 20), (3, 12)] {
        for n in k..=max {
            let g = shift_graph(n, k).map_err(|e| e.to_string())?;
            ensure(!has_triangle(&g), || format!("shift_graph({n},{k}) has a triangle"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} graphs"))
}

fn random_pair(seed: u64) -> Result<(BurlingTree, BurlingTree), String> {
    let t1 = generate_random_burling_tree(1 + (seed % 15) as usize, seed).map_err(|e| e.to_string())?;
    let t2 = generate_random_burling_tree(1 + (seed / 15 % 12) as usize, seed ^ 0xABCD)
        .and_then(|t| t.relabel(|v| VertexLabel::Int(v.as_int().expect("int labels") + 1000)))
        .map_err(|e| e.to_string())?;
    Ok((t1, t2))
}

/// Edge sets agree on every pair of the given labels.
fn same_on(a: &Graph, b: &Graph, labels: &[VertexLabel]) -> bool {
    labels
        .iter()
        .all(|u| labels.iter().all(|v| u == v || a.has_edge(u, v) == b.has_edge(u, v)))
}

fn surgery_contracts() -> Result<String, String> {
    let e = |e: chibound::burling::BurlingError| e.to_string();
    for seed in 0..100u64 {
        let (t1, t2) = random_pair(seed)?;
        let (t, removed) = combine_trees(&t1, &t2).map_err(e)?;
        ensure(t.n() == t1.n() + t2.n() + 3 && removed.len() == 3, || format!("seed {seed}: combine size"))?;
        for closure in [clique_closure, sibling_closure] {
            let (g, g1, g2) = (closure(&t).map_err(e)?, closure(&t1).map_err(e)?, closure(&t2).map_err(e)?);
            ensure(same_on(&g, &g1, t1.labels()) && same_on(&g, &g2, t2.labels()), || {
                format!("seed {seed}: combine changes a part")
            })?;
            let crossing = t1.labels().iter().any(|u| t2.labels().iter().any(|v| g.has_edge(u, v)));
            ensure(!crossing, || format!("seed {seed}: combine joins the parts"))?;
        }
        ensure(check_combine_trees(&t1, &t2).map_err(e)?, || format!("seed {seed}: combine self-check"))?;

        let t = attach_root_clique(&t1).map_err(e)?;
        let (c, c1) = (clique_closure(&t).map_err(e)?, clique_closure(&t1).map_err(e)?);
        ensure(same_on(&c, &c1, t1.labels()), || format!("seed {seed}: clique attach changes C"))?;
        ensure(c.degree(c.index_of(t.root()).expect("root")) == t1.n(), || {
            format!("seed {seed}: new root not universal in C")
        })?;
        ensure(check_attach_root_clique(&t1).map_err(e)?, || format!("seed {seed}: clique self-check"))?;

        let (t, r, rp) = attach_root_sibling(&t1).map_err(e)?;
        let (i, i1) = (sibling_closure(&t).map_err(e)?, sibling_closure(&t1).map_err(e)?);
        ensure(same_on(&i, &i1, t1.labels()), || format!("seed {seed}: sibling attach changes I"))?;
        let universal = t1.labels().iter().all(|v| i.has_edge(&rp, v)) && !i.has_edge(&rp, &r);
        ensure(universal, || format!("seed {seed}: r' not universal in I - r"))?;
        ensure(check_attach_root_sibling(&t1).map_err(e)?, || format!("seed {seed}: sibling self-check"))?;
    }
    Ok("100 pairs, 300 surgeries".into())
}

fn decomposition_contracts() -> Result<String, String> {
    let a = experiment(ExperimentSpec::new("decompose-unit-interval", 11).param("families", 200).param("max_n", 20))?;
    let b = experiment(ExperimentSpec::new("decompose-line-bipartite", 11).param("graphs", 200).param("max_side", 8))?;
    Ok(format!("unit interval {a}; line of bipartite {b}"))
}

fn solver_oracles() -> Result<String, String> {
    for seed in 0..500u64 {
        let n = 1 + (seed % 9) as usize;
        let p = [0.2, 0.4, 0.5, 0.6, 0.8][(seed / 9 % 5) as usize];
        let g = random_graph(n, p, seed).map_err(|e| e.to_string())?;
        let chi = chromatic_number(&g).map_err(|e| e.to_string())?.0;
        let omega = clique_number(&g).map_err(|e| e.to_string())?.0;
        let (bc, bw) = (brute_chromatic_number(&g), brute_clique_number(&g));
        ensure(chi == bc && omega == bw, || {
            format!("seed {seed}: chi {chi} vs {bc}, omega {omega} vs {bw}")
        })?;
    }
    Ok("500 graphs".into())
}

fn recognizer_biconditionals() -> Result<String, String> {
    let mut count = 0;
    for n in 1..=7 {
        for g in graphs_up_to_iso(n) {
            let p3_free = is_h_free(&g, &[Pattern::p3()]);
            ensure(is_cluster(&g) == p3_free && p3_free == !has_induced_p3(&g), || format!("cluster {g:?}"))?;
            let k1k2_free = is_h_free(&g, &[Pattern::k1_plus_k2()]);
            ensure(
                is_complete_multipartite(&g) == k1k2_free && k1k2_free == !has_induced_k1_plus_k2(&g),
                || format!("complete multipartite {g:?}"),
            )?;
            ensure(
                is_trivially_perfect_by_patterns(&g) == is_trivially_perfect_by_universal_vertices(&g),
                || format!("trivially perfect {g:?}"),
            )?;
            count += 1;
        }
    }
    let mut chordal_checked = 0;
    for n in 1..=8 {
        for g in graphs_up_to_iso(n) {
            ensure(is_strongly_chordal(&g).is_some() == is_strongly_chordal_by_definition(&g), || {
                format!("strongly chordal {g:?}")
            })?;
            chordal_checked += 1;
        }
    }
    Ok(format!("{count} graphs on <= 7 vertices, {chordal_checked} on <= 8 for strong chordality"))
}

/// A random graph with vertices of induced `P3 + K2` copies removed until
/// none is left.
fn p3_plus_k2_free(seed: u64) -> Graph {
    let n = 4 + (seed % 7) as usize;
    let p = [0.3, 0.5, 0.7, 0.85][(seed / 7 % 4) as usize];
    let mut g = random_graph(n, p, seed).expect("valid probability");
    let pattern = Pattern::p3_plus_rk2(1);
    while let Some(w) = contains_induced(&g, &pattern) {
        let drop = &w[(seed as usize + g.n()) % w.len()];
        g = g.remove_vertices([drop]).expect("witness vertex");
    }
    g
}

fn bound_recursions() -> Result<String, String> {
    let f1 = fr_recursion(&identity_bound(), 1);
    let big = |v: u64| num_bigint::BigUint::from(v);
    let e = |e: chibound::bounds::BoundError| e.to_string();
    ensure(f1.eval(2).map_err(e)? == big(4), || "f_1(2) != 4".into())?;
    ensure(f1.eval(3).map_err(e)? == big(11), || "f_1(3) != 11".into())?;
    let guards = [identity_bound(), vizing_bound()];
    ensure(self_guard_bound(&guards, 1, &[2, 3]).map_err(e)? == big(1), || "f(1, ..) != 1".into())?;
    ensure(self_guard_bound(&guards, 5, &[3, 0]).map_err(e)? == big(6), || "n_2 = 0 should give g_2(5)".into())?;
    ensure(self_guard_bound(&guards, 5, &[0, 0]).map_err(e)? == big(5), || "min over zero counts".into())?;
    let mut sizes = Vec::new();
    for seed in 0..100u64 {
        let g = p3_plus_k2_free(seed);
        let chi = brute_chromatic_number(&g) as u64;
        let omega = brute_clique_number(&g) as u64;
        let bound = f1.eval(omega).map_err(e)?;
        ensure(big(chi) <= bound, || format!("seed {seed}: chi {chi} > f_1({omega}) = {bound}"))?;
        sizes.push(g.n());
    }
    Ok(format!(
        "pinned values exact; 100 graphs with {}..={} vertices",
        sizes.iter().min().expect("non-empty"),
        sizes.iter().max().expect("non-empty")
    ))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "shift-graph chromatic law", limit: secs(60), run: shift_chromatic_law },
        Criterion { id: 2, name: "shift graphs are triangle-free", limit: secs(10), run: shift_triangle_free },
        Criterion {
            id: 3,
            name: "intersection-construction identity",
            limit: secs(120),
            run: || experiment(ExperimentSpec::new("intersection-construction", 1)),
        },
        Criterion {
            id: 4,
            name: "Burling bundle identities",
            limit: secs(120),
            run: || experiment(ExperimentSpec::new("burling-verify", 7).param("trees", 200).param("max_vertices", 30)),
        },
        Criterion { id: 5, name: "tree-surgery contracts", limit: secs(60), run: surgery_contracts },
        Criterion { id: 6, name: "decomposition contracts", limit: secs(60), run: decomposition_contracts },
        Criterion {
            id: 7,
            name: "Ramsey guard claim",
            limit: secs(60),
            run: || experiment(ExperimentSpec::new("rk1-guard-claim", 3).param("pairs", 100).param("max_n", 10)),
        },
        Criterion { id: 8, name: "solver oracle equivalence", limit: secs(120), run: solver_oracles },
        Criterion { id: 9, name: "recognizer biconditionals", limit: secs(300), run: recognizer_biconditionals },
        Criterion { id: 10, name: "bound recursions", limit: secs(60), run: bound_recursions },
    ];
    let mut failed = 0;
    for c in criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(d) => (false, d),
        };
        failed += usize::from(!ok);
        println!(
            "{} {:>2} {} [{:.2}s / {}s] {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
