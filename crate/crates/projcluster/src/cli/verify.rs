use super::{assignment_json, parse_loop, random_assignment, Outcome};
use crate::arith::Rat;
use crate::cluster::{check_poisson_preserved, mutate_x, mutation_class_search, DynkinType, DEFAULT_STATE_CAP};
use crate::geom::{coords_of_polygon_pair, polygon_pair_from_coords, realize};
use crate::monodromy::{certify_loop_positivity, check_regular_hyperbolic, trace_of_power, MonodromyGraph};
use crate::quantum::{verify_quantum, QuantumOptions};
use crate::surface::{
    as_permutation, double_flip_relabeling, epsilon_of_triangulation, flip_closed_form, flip_compatible_patterns,
    flip_via_mutations, pentagon_geometric, pentagon_keys, sigma_assignment, sigma_map, slot_run, triangle_pattern,
    Assignment, MarkedPoint, Triangulation,
};
use crate::{Error, Result};
use clap::{Args, ValueEnum};
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(ValueEnum, Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    FlipInvolution,
    Pentagon,
    Poisson,
    Positivity,
    Sigma,
    Roundtrip,
    Counts,
    Classes,
    Quantum,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct VerifyArgs {
    /// Checks to run; all classical checks when empty.
    #[arg(value_enum)]
    pub targets: Vec<Target>,
    /// Same as the `pentagon` target.
    #[arg(long)]
    pub pentagon: bool,
    /// Classical pentagon (the default).
    #[arg(long)]
    pub classical: bool,
    /// Quantum pentagon; implied by --N.
    #[arg(long)]
    pub quantum: bool,
    /// Order of the root of unity for the quantum checks.
    #[arg(long = "N")]
    pub order: Option<u32>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 3)]
    pub aux_trials: usize,
    /// Random points for the sampled checks.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Task {
    FlipInvolution,
    PentagonClassical,
    Poisson,
    Positivity,
    Sigma,
    Roundtrip,
    Counts,
    Classes,
    Quantum,
}

impl Task {
    fn name(self) -> &'static str {
        match self {
            Task::FlipInvolution => "flip-involution",
            Task::PentagonClassical => "pentagon-classical",
            Task::Poisson => "poisson",
            Task::Positivity => "positivity",
            Task::Sigma => "sigma",
            Task::Roundtrip => "roundtrip",
            Task::Counts => "counts",
            Task::Classes => "classes",
            Task::Quantum => "quantum",
        }
    }
}

fn tasks(args: &VerifyArgs) -> Vec<Task> {
    let mut targets = args.targets.clone();
    if args.pentagon {
        targets.push(Target::Pentagon);
    }
    if targets.is_empty() {
        targets = vec![
            Target::FlipInvolution,
            Target::Pentagon,
            Target::Poisson,
            Target::Positivity,
            Target::Sigma,
            Target::Roundtrip,
            Target::Counts,
            Target::Classes,
        ];
    }
    let quantum_pentagon = args.quantum || args.order.is_some();
    let mut out = Vec::new();
    for t in targets {
        let add: Vec<Task> = match t {
            Target::FlipInvolution => vec![Task::FlipInvolution],
            Target::Pentagon => match (args.classical, quantum_pentagon) {
                (true, true) => vec![Task::PentagonClassical, Task::Quantum],
                (false, true) => vec![Task::Quantum],
                _ => vec![Task::PentagonClassical],
            },
            Target::Poisson => vec![Task::Poisson],
            Target::Positivity => vec![Task::Positivity],
            Target::Sigma => vec![Task::Sigma],
            Target::Roundtrip => vec![Task::Roundtrip],
            Target::Counts => vec![Task::Counts],
            Target::Classes => vec![Task::Classes],
            Target::Quantum => vec![Task::Quantum],
        };
        for a in add {
            if !out.contains(&a) {
                out.push(a);
            }
        }
    }
    out
}

struct Ctx<'a> {
    args: &'a VerifyArgs,
    seed: u64,
    c: &'a Rat,
    tolerance: f64,
}

struct Check {
    passed: bool,
    details: Value,
}

fn check(passed: bool, details: Value) -> Result<Check> {
    Ok(Check { passed, details })
}

/// Runs the requested checks on the current thread pool; output order follows the request.
pub fn run_verify(args: &VerifyArgs, seed: u64, c: &Rat, tolerance: f64) -> Result<Outcome> {
    let ctx = Ctx { args, seed, c, tolerance };
    let list = tasks(args);
    let results: Vec<Result<Check>> = list.par_iter().map(|&t| run_task(&ctx, t)).collect();
    let mut checks = Vec::new();
    let mut passed = true;
    for (t, r) in list.iter().zip(results) {
        let r = r?;
        passed &= r.passed;
        checks.push(json!({ "name": t.name(), "passed": r.passed, "details": r.details }));
    }
    Ok(Outcome { result: json!({ "checks": checks }), passed })
}

fn run_task(ctx: &Ctx, t: Task) -> Result<Check> {
    match t {
        Task::FlipInvolution => flip_involution(),
        Task::PentagonClassical => pentagon_classical(),
        Task::Poisson => poisson(ctx.c),
        Task::Positivity => positivity(ctx.args.samples, ctx.seed),
        Task::Sigma => sigma(ctx.args.samples, ctx.seed),
        Task::Roundtrip => roundtrip(ctx.args.samples, ctx.seed),
        Task::Counts => counts(),
        Task::Classes => classes(),
        Task::Quantum => quantum(ctx),
    }
}

fn test_surfaces() -> Result<Vec<(String, Triangulation)>> {
    let mut v = Vec::new();
    for n in 4..=6 {
        v.push((format!("polygon {n}"), Triangulation::polygon(n)?));
    }
    v.push(("g1s1".into(), Triangulation::surface(1, 1)?));
    Ok(v)
}

fn flip_involution() -> Result<Check> {
    let mut edges = 0;
    let mut failures = Vec::new();
    for (label, tri) in test_surfaces()? {
        for e in tri.internal_edges() {
            edges += 1;
            let (after, closed) = flip_closed_form(&tri, e)?;
            let (_, via) = flip_via_mutations(&tri, e)?;
            let (_, back) = flip_closed_form(&after, e)?;
            let twice = closed.then(&back)?.then(&double_flip_relabeling(&tri, e)?)?;
            if !closed.same_as(&via) {
                failures.push(format!("{label} {}: mutations differ", tri.edge_key(e)));
            }
            if !twice.is_identity() {
                failures.push(format!("{label} {}: flip twice is not the identity", tri.edge_key(e)));
            }
        }
    }
    check(failures.is_empty(), json!({ "edges": edges, "failures": failures }))
}

fn pentagon_classical() -> Result<Check> {
    let tri = Triangulation::polygon(5)?;
    let keys = pentagon_keys()?;
    let twice: Vec<String> = keys.iter().chain(keys.iter()).cloned().collect();
    let run = slot_run(&tri, &twice)?;
    let interior = tri.clone().without_boundary_coords().point_names();
    let perm = as_permutation(&run.map);
    let (pure, moved) = match &perm {
        Some(p) => {
            let pure = p.iter().all(|(a, b)| interior.contains(a) == interior.contains(b) && (interior.contains(a) || a == b));
            let moved: BTreeMap<&String, &String> = p.iter().filter(|(a, b)| a != b).collect();
            (pure, json!(moved))
        }
        None => (false, Value::Null),
    };
    let geometric = pentagon_geometric()?.is_identity();
    check(
        pure && geometric,
        json!({
            "flips": twice,
            "variables": run.map.source().len(),
            "permutation": moved,
            "boundary_fixed": pure,
            "geometric_identity": geometric,
        }),
    )
}

fn poisson(c: &Rat) -> Result<Check> {
    let mut failures = Vec::new();
    let mut maps = 0;
    for n in [4, 5] {
        let seed = epsilon_of_triangulation(&Triangulation::polygon(n)?)?;
        for k in 0..seed.len() {
            maps += 1;
            if !check_poisson_preserved(&mutate_x(&seed, k)?, c) {
                failures.push(format!("polygon {n}: mutation at {}", seed.name(k)));
            }
        }
    }
    for (label, tri) in test_surfaces()?.into_iter().filter(|(l, _)| l != "polygon 6") {
        for e in tri.internal_edges() {
            maps += 1;
            if !check_poisson_preserved(&flip_closed_form(&tri, e)?.1, c) {
                failures.push(format!("{label}: flip at {}", tri.edge_key(e)));
            }
        }
        maps += 1;
        let t = if tri.is_polygon() { tri.clone().without_boundary_coords() } else { tri.clone() };
        if !check_poisson_preserved(&sigma_map(&t)?, c) {
            failures.push(format!("{label}: sigma"));
        }
    }
    let found = flip_compatible_patterns(c)?;
    let p = triangle_pattern();
    let neg = p.map(|r| r.map(|v| -v));
    let bootstrap = found.len() == 2 && found.contains(&p) && found.contains(&neg);
    check(
        failures.is_empty() && bootstrap,
        json!({ "maps": maps, "failures": failures, "bootstrap_patterns": found.len(), "bootstrap_recovers_pattern": bootstrap }),
    )
}

const TORUS_LOOPS: [&str; 4] = ["a", "b", "ab", "aB"];

fn positivity(samples: usize, seed: u64) -> Result<Check> {
    let tri = Triangulation::surface(1, 1)?;
    let g = MonodromyGraph::new(&tri)?;
    let vars = epsilon_of_triangulation(&tri)?.vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut loops = Vec::new();
    let mut passed = true;
    for name in TORUS_LOOPS {
        let w = parse_loop(name, &tri)?;
        let mut traces = Vec::new();
        for n in 1..=3 {
            let (t, cert) = trace_of_power(&g, &w, n)?;
            let ok = t.is_laurent() && cert.is_positive();
            passed &= ok;
            traces.push(json!({ "power": n, "positive_laurent": ok }));
        }
        let (rotation, _) = certify_loop_positivity(&g, &w)?;
        let m = g.monodromy(&w)?;
        let mut hyperbolic = 0;
        for _ in 0..samples {
            if check_regular_hyperbolic(&m, &crate::arith::random_positive_point(&vars, &mut rng))? {
                hyperbolic += 1;
            }
        }
        passed &= rotation.is_some() && hyperbolic == samples;
        loops.push(json!({
            "loop": name,
            "traces": traces,
            "totally_positive": rotation.is_some(),
            "hyperbolic_samples": hyperbolic,
        }));
    }
    let boundary = parse_loop("boundary", &tri)?;
    let (rotation, cert) = certify_loop_positivity(&g, &boundary)?;
    let peripheral = g.is_peripheral(&boundary)?;
    passed &= peripheral && rotation.is_some();
    check(
        passed,
        json!({
            "loops": loops,
            "samples": samples,
            "boundary": { "peripheral": peripheral, "triangular_totally_positive": rotation.is_some(), "status": cert.status },
        }),
    )
}

fn edge_pairs(tri: &Triangulation) -> Vec<(String, String)> {
    tri.internal_edges()
        .into_iter()
        .map(|e| {
            (
                tri.point_name(MarkedPoint::Edge { edge: e, at_tail: true }),
                tri.point_name(MarkedPoint::Edge { edge: e, at_tail: false }),
            )
        })
        .collect()
}

/// Unit centers and equal values on both points of every internal edge.
fn on_fixed_locus(tri: &Triangulation, a: &Assignment) -> bool {
    (0..tri.triangles().len()).all(|t| a[&tri.center_name(t)].is_one())
        && edge_pairs(tri).iter().all(|(p, q)| a[p] == a[q])
}

fn sigma(samples: usize, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut tris = Vec::new();
    for n in 4..=6 {
        tris.push((format!("polygon {n}"), Triangulation::polygon(n)?.without_boundary_coords()));
    }
    tris.push(("g1s1".into(), Triangulation::surface(1, 1)?));
    for (label, tri) in &tris {
        let s = sigma_map(tri)?;
        if !s.then(&s)?.is_identity() {
            failures.push(format!("{label}: sigma squared"));
        }
        for i in 0..samples {
            let mut a = random_assignment(tri, &mut rng);
            if i % 2 == 0 {
                for t in 0..tri.triangles().len() {
                    a.insert(tri.center_name(t), Rat::one());
                }
                for (p, q) in edge_pairs(tri) {
                    let v = a[&p].clone();
                    a.insert(q, v);
                }
            }
            let fixed = sigma_assignment(tri, &a)? == a;
            if fixed != on_fixed_locus(tri, &a) {
                failures.push(format!("{label}: fixed locus at {}", assignment_json(&a)));
            }
        }
    }
    let tri = Triangulation::polygon(4)?.without_boundary_coords();
    for _ in 0..samples {
        let a = random_assignment(&tri, &mut rng);
        let pp = polygon_pair_from_coords(&a, &tri)?;
        if coords_of_polygon_pair(&pp.dual(), &tri)? != sigma_assignment(&tri, &a)? {
            failures.push(format!("duality at {}", assignment_json(&a)));
        }
    }
    check(failures.is_empty(), json!({ "samples": samples, "failures": failures }))
}

fn roundtrip(samples: usize, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for n in 3..=6 {
        let tri = Triangulation::polygon(n)?.without_boundary_coords();
        for _ in 0..samples {
            let a = random_assignment(&tri, &mut rng);
            let pp = polygon_pair_from_coords(&a, &tri)?;
            if coords_of_polygon_pair(&pp, &tri)? != a {
                failures.push(format!("polygon {n}: round trip at {}", assignment_json(&a)));
            }
            if n > 4 {
                continue;
            }
            if !pp.is_convex_inscribed() {
                failures.push(format!("polygon {n}: positive coordinates gave a non-convex pair"));
            }
            let dual = coords_of_polygon_pair(&pp.dual(), &tri)?;
            if !dual.values().all(|v| v.is_positive()) {
                failures.push(format!("polygon {n}: convex pair gave non-positive coordinates"));
            }
            let mut b = a.clone();
            let key = b.keys().nth(rng.gen_range(0..b.len())).cloned().unwrap();
            let v = -b[&key].clone();
            b.insert(key, v);
            match realize(&b, &tri) {
                Ok(bad) if bad.is_convex_inscribed() => {
                    failures.push(format!("polygon {n}: non-positive coordinates gave a convex pair"))
                }
                _ => {}
            }
        }
    }
    check(failures.is_empty(), json!({ "polygons": [3, 4, 5, 6], "samples": samples, "failures": failures }))
}

fn counts() -> Result<Check> {
    let mut rows = Vec::new();
    let mut passed = true;
    for (g, s) in [(1, 1), (0, 3), (1, 2)] {
        let tri = Triangulation::surface(g, s)?;
        let size = tri.point_names().len();
        let chi = tri.euler_characteristic();
        passed &= size as i64 == 8 * chi.abs();
        rows.push(json!({ "genus": g, "punctures": s, "coordinates": size, "euler_characteristic": chi }));
    }
    check(passed, json!(rows))
}

fn classes() -> Result<Check> {
    let mut rows = Vec::new();
    let mut passed = true;
    for (n, target, size) in [(4, DynkinType::D(4), 6), (5, DynkinType::E(7), 416)] {
        let seed = epsilon_of_triangulation(&Triangulation::polygon(n)?.without_boundary_coords())?;
        let hit = mutation_class_search(&seed, Some(target), None, DEFAULT_STATE_CAP)?;
        let full = mutation_class_search(&seed, None, None, DEFAULT_STATE_CAP)?;
        let ok = hit.witness.is_some() && full.complete && full.class_size == size;
        passed &= ok;
        rows.push(json!({
            "polygon": n,
            "type": target.to_string(),
            "witness": hit.witness,
            "class_size": full.class_size,
            "complete": full.complete,
        }));
    }
    check(passed, json!(rows))
}

fn quantum(ctx: &Ctx) -> Result<Check> {
    let opts = QuantumOptions {
        order: ctx.args.order.unwrap_or(5),
        trials: ctx.args.trials,
        aux_trials: ctx.args.aux_trials,
        seed: ctx.seed,
        tolerance: ctx.tolerance,
        ..Default::default()
    };
    let report = verify_quantum(&opts)?;
    if report.checks.iter().any(|c| !c.residual.is_finite()) {
        return Err(Error::Degenerate("non-finite residual".into()));
    }
    check(report.passed, serde_json::to_value(&report)?)
}
