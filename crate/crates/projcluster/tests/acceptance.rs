//! Acceptance criteria, one test each. Every test prints a single PASS/FAIL line.

use num_traits::{One, Signed, Zero};
use projcluster::arith::{rat, random_positive_point};
use projcluster::cli::random_assignment;
use projcluster::cluster::{
    check_poisson_preserved, mutate_x, mutation_class_search, mutation_sequence, DynkinType, DEFAULT_STATE_CAP,
};
use projcluster::geom::{coords_of_polygon_pair, polygon_pair_from_coords, realize, PolygonPair, Vec3};
use projcluster::monodromy::{
    certify_loop_positivity, check_regular_hyperbolic, e_matrix, t_inverse, t_matrix, trace_of_power, LoopWord,
    Matrix3, MonodromyGraph, TpStatus,
};
use projcluster::quantum::{
    apply_mutations, clock_shift_representation, quantum_flip, quantum_flip_intermediate, residual, role_names,
    verify_quantum, Evaluator, QuantumOptions,
};
use projcluster::surface::{
    as_permutation, double_flip_relabeling, epsilon_of_triangulation, flip_closed_form, flip_compatible_patterns,
    flip_via_mutations, pentagon_keys, sigma_assignment, sigma_map, slot_run, Assignment, Flip, MarkedPoint,
    Triangulation,
};
use projcluster::{Rat, RatFunc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

const QUANTUM_TOLERANCE: f64 = 1e-9;
const QUANTUM_TRIALS: usize = 20;
const RANDOM_ASSIGNMENTS: usize = 50;
const HYPERBOLIC_POINTS: usize = 100;
const SEED: u64 = 20_240_601;

fn report(id: u32, what: &str, start: Instant, budget_secs: u64, failures: &[String]) {
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_secs);
    let ok = failures.is_empty() && elapsed < budget;
    println!(
        "criterion {id:>2}: {} {what} ({:.2}s of {budget_secs}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(failures.is_empty(), "criterion {id}: {failures:#?}");
    assert!(elapsed < budget, "criterion {id}: took {elapsed:?}");
}

fn named(n: &str) -> RatFunc {
    RatFunc::named(n)
}

fn inv(f: &RatFunc) -> RatFunc {
    f.inv().unwrap()
}

fn matrix(rows: [[RatFunc; 3]; 3]) -> Matrix3 {
    Matrix3(rows)
}

#[test]
fn c01_matrix_identities() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (x, z, w) = (named("acc1_x"), named("acc1_z"), named("acc1_w"));
    let one = RatFunc::one();
    let zero = RatFunc::zero();

    let t = t_matrix(&x);
    let cube = t.mul(&t).mul(&t);
    let x_id = matrix([
        [x.clone(), zero.clone(), zero.clone()],
        [zero.clone(), x.clone(), zero.clone()],
        [zero.clone(), zero.clone(), x.clone()],
    ]);
    if cube != x_id {
        failures.push(format!("T^3 = {cube}"));
    }

    let e = e_matrix(&z, &w).unwrap();
    let lower = matrix([
        [inv(&z), zero.clone(), zero.clone()],
        [one.clone(), one.clone(), zero.clone()],
        [w.clone(), &w * &(&one + &inv(&x)), &w * &inv(&x)],
    ]);
    let et_inv = e.mul(&t_inverse(&x).unwrap());
    if et_inv != lower {
        failures.push(format!("E T^-1 = {et_inv}"));
    }

    let et = e.mul(&t);
    let upper_rows = [
        [&inv(&z) * &x, &inv(&z) * &(&one + &x), inv(&z)],
        [zero.clone(), one.clone(), one.clone()],
    ];
    for (i, row) in upper_rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if et.get(i, j) != v {
                failures.push(format!("E T entry ({}, {}) = {}", i + 1, j + 1, et.get(i, j)));
            }
        }
    }
    if et.get(2, 0) != &zero || et.get(2, 1) != &zero || et.get(2, 2) != &w {
        failures.push(format!("E T row 3 = {} {} {}", et.get(2, 0), et.get(2, 1), et.get(2, 2)));
    }
    report(1, "T^3 = X Id, E T^-1 entry for entry, E T rows 1-2 with (3,3) = W", start, 1, &failures);
}

/// The twelve flip formulas at q = 1, keyed by the target name.
fn flip_oracle(tri: &Triangulation, edge: usize) -> BTreeMap<String, RatFunc> {
    let fl = Flip::new(tri, edge).unwrap();
    let names: HashMap<&str, String> = fl.roles.labeled().into_iter().collect();
    let v = |l: &str| named(&names[l]);
    let one = RatFunc::one();
    let (x, y, z, w) = (v("X"), v("Y"), v("Z"), v("W"));
    let pz = &one + &z;
    let pw = &one + &w;
    let pzi = &one + &inv(&z);
    let pwi = &one + &inv(&w);
    let sz = &(&(&one + &z) + &(&z * &x)) + &(&(&z * &x) * &w);
    let sw = &(&(&one + &w) + &(&w * &y)) + &(&(&w * &y) * &z);
    let mut out = BTreeMap::new();
    let mut put = |l: &str, f: RatFunc| {
        if let Some(n) = names.get(l) {
            out.insert(n.clone(), f);
        }
    };
    if names.contains_key("A") {
        put("A", &v("A") * &pz);
        put("B", &(&v("B") * &sz) / &pz);
        put("C", &(&(&(&v("C") * &z) * &x) * &pw) / &sz);
        put("D", &v("D") / &pwi);
        put("E", &v("E") * &pw);
        put("F", &(&v("F") * &sw) / &pw);
        put("G", &(&(&(&v("G") * &w) * &y) * &pz) / &sw);
        put("H", &v("H") / &pzi);
    }
    let n = &fl.new_roles;
    out.insert(n.near_p2.clone(), &(&pzi / &pw) * &inv(&x));
    out.insert(n.near_p4.clone(), &(&pwi / &pz) * &inv(&y));
    out.insert(n.n1.clone(), &(&x * &sw) / &sz);
    out.insert(n.n2.clone(), &(&y * &sz) / &sw);
    out
}

#[test]
fn c02_flip_via_mutations() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let tri = Triangulation::polygon(4).unwrap();
    let e = tri.edge_by_key("0.2").unwrap();
    let (after, closed) = flip_closed_form(&tri, e).unwrap();
    let (after2, via) = flip_via_mutations(&tri, e).unwrap();
    if after != after2 {
        failures.push("flipped triangulations differ".into());
    }
    let oracle = flip_oracle(&tri, e);
    if oracle.len() != 12 {
        failures.push(format!("{} oracle formulas", oracle.len()));
    }
    for (name, f) in closed.named_images() {
        if via.image(&name).unwrap() != &f {
            failures.push(format!("{name}: mutations give {}", via.image(&name).unwrap()));
        }
        match oracle.get(&name) {
            Some(g) if g != &f => failures.push(format!("{name}: closed form {f}, formula {g}")),
            None if f != named(&name) => failures.push(format!("{name} should be unchanged")),
            _ => {}
        }
    }
    let (_, back) = flip_closed_form(&after, e).unwrap();
    if !closed.then(&back).unwrap().is_identity() {
        failures.push("flip twice is not the identity".into());
    }
    let torus = Triangulation::surface(1, 1).unwrap();
    for e in torus.internal_edges() {
        let (t1, m1) = flip_closed_form(&torus, e).unwrap();
        let (_, m2) = flip_closed_form(&t1, e).unwrap();
        if !m1.same_as(&flip_via_mutations(&torus, e).unwrap().1) {
            failures.push(format!("torus edge {e}: mutations differ"));
        }
        if !m1.then(&m2).unwrap().then(&double_flip_relabeling(&torus, e).unwrap()).unwrap().is_identity() {
            failures.push(format!("torus edge {e}: flip twice"));
        }
    }
    report(2, "flip by four mutations equals the 12 closed formulas; flip twice is the identity", start, 5, &failures);
}

#[test]
fn c03_classical_pentagon() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let tri = Triangulation::polygon(5).unwrap();
    let keys = pentagon_keys().unwrap();
    let twice: Vec<String> = keys.iter().chain(&keys).cloned().collect();
    let run = slot_run(&tri, &twice).unwrap();
    if run.map.source().len() != 17 {
        failures.push(format!("{} variables", run.map.source().len()));
    }
    let fixture: BTreeMap<&str, &str> = [
        ("edge:0.2:near:0", "edge:0.2:near:2"),
        ("edge:0.2:near:2", "edge:0.3:near:3"),
        ("edge:0.3:near:0", "tri:0.1.2:center"),
        ("edge:0.3:near:3", "edge:0.3:near:0"),
        ("tri:0.1.2:center", "tri:0.2.3:center"),
        ("tri:0.2.3:center", "tri:0.3.4:center"),
        ("tri:0.3.4:center", "edge:0.2:near:0"),
    ]
    .into_iter()
    .collect();
    match as_permutation(&run.map) {
        None => failures.push("not a permutation".into()),
        Some(p) => {
            for (a, b) in &p {
                let want = fixture.get(a.as_str()).copied().unwrap_or(a.as_str());
                if b != want {
                    failures.push(format!("{a} <- {b}, expected {want}"));
                }
            }
        }
    }
    report(3, "(f5...f1)^2 on 17 variables is the frozen permutation of the 7 interior slots", start, 60, &failures);
}

fn pattern_oracle() -> [[i32; 7]; 7] {
    [
        [0, 0, 0, 0, 0, -1, 1],
        [0, 0, 1, 0, 0, 0, -1],
        [0, -1, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 0, -1],
        [0, 0, 0, -1, 0, 0, 1],
        [1, 0, 0, 0, 0, 0, -1],
        [-1, 1, -1, 1, -1, 1, 0],
    ]
}

#[test]
fn c04_poisson_preserved() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for c in [rat(1, 1), rat(2, 1)] {
        for n in [4, 5] {
            let tri = Triangulation::polygon(n).unwrap();
            let seed = epsilon_of_triangulation(&tri).unwrap();
            for k in 0..seed.len() {
                if !check_poisson_preserved(&mutate_x(&seed, k).unwrap(), &c) {
                    failures.push(format!("c = {c}, {n}-gon: mutation at {}", seed.name(k)));
                }
            }
            for e in tri.internal_edges() {
                if !check_poisson_preserved(&flip_closed_form(&tri, e).unwrap().1, &c) {
                    failures.push(format!("c = {c}, {n}-gon: flip at {}", tri.edge_key(e)));
                }
            }
        }
        let torus = Triangulation::surface(1, 1).unwrap();
        for e in torus.internal_edges() {
            if !check_poisson_preserved(&flip_closed_form(&torus, e).unwrap().1, &c) {
                failures.push(format!("c = {c}, torus: flip at {e}"));
            }
        }
    }
    let found = flip_compatible_patterns(&rat(2, 1)).unwrap();
    let p = pattern_oracle();
    let neg = p.map(|r| r.map(|v| -v));
    if found.len() != 2 || !found.contains(&p) || !found.contains(&neg) {
        failures.push(format!("bootstrap found {found:?}"));
    }
    report(4, "mutations and flips preserve the bracket; bootstrap on the quad recovers the pattern (c = 2)", start, 10, &failures);
}

fn random_twists(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.5..2.0)).collect()
}

#[test]
fn c05_quantum_flip_classical_limit() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in [4, 5] {
        let tri = Triangulation::polygon(n).unwrap();
        for e in tri.internal_edges() {
            let q1 = quantum_flip(&tri, e).unwrap().at_q_one().unwrap();
            let oracle = flip_oracle(&tri, e);
            for (name, f) in q1.named_images() {
                let want = oracle.get(&name).cloned().unwrap_or_else(|| named(&name));
                if f != want {
                    failures.push(format!("{n}-gon {}: {name} at q = 1 is {f}", tri.edge_key(e)));
                }
            }
        }
    }

    let tri = Triangulation::polygon(4).unwrap().without_boundary_coords();
    let e = tri.edge_by_key("0.2").unwrap();
    let seed = epsilon_of_triangulation(&tri).unwrap();
    let names = role_names(&Flip::new(&tri, e).unwrap()).unwrap();
    let stage = quantum_flip_intermediate(&seed, names.clone()).unwrap();
    let half = mutation_sequence(&seed, &[names["Z"].clone(), names["W"].clone()]).unwrap();
    for (label, expr) in &stage {
        let slot = &names[&label[..1]];
        let classical = expr.at_q_one(&seed).unwrap();
        if half.image(slot).unwrap() != &classical {
            failures.push(format!("{label} at q = 1 is {classical}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for order in [5, 7] {
        for _ in 0..5 {
            let rep = clock_shift_representation(&seed, order, &random_twists(seed.len(), &mut rng), 4096).unwrap();
            let (mid, mutated) =
                apply_mutations(&seed, order, &rep.gens, &[names["Z"].clone(), names["W"].clone()]).unwrap();
            let mut ev = Evaluator::new(&seed, order, &rep.gens);
            for (label, expr) in &stage {
                let r = residual(&ev.expr(expr).unwrap(), &mutated[mid.index_of(&names[&label[..1]]).unwrap()]);
                if r > QUANTUM_TOLERANCE {
                    failures.push(format!("N = {order}: {label} residual {r:e}"));
                }
            }
        }
    }
    report(5, "quantum flip at q = 1 is classical; intermediate A1..Y1 reproduced", start, 30, &failures);
}

#[test]
fn c06_quantum_pentagon() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for order in [5, 7] {
        let opts = QuantumOptions {
            order,
            trials: QUANTUM_TRIALS,
            aux_trials: 1,
            seed: SEED,
            tolerance: QUANTUM_TOLERANCE,
            ..Default::default()
        };
        let r = verify_quantum(&opts).unwrap();
        let pent = r.checks.iter().find(|c| c.name == "pentagon").unwrap();
        if pent.trials < QUANTUM_TRIALS || !(pent.residual < QUANTUM_TOLERANCE) {
            failures.push(format!("N = {order}: residual {:e} over {} trials", pent.residual, pent.trials));
        }
        if pent.dim != (order as usize).pow(3) {
            failures.push(format!("N = {order}: dimension {}", pent.dim));
        }
        for c in r.checks.iter().filter(|c| !c.passed) {
            failures.push(format!("N = {order}: {} residual {:e}", c.name, c.residual));
        }
    }
    report(6, "quantum pentagon residual < 1e-9 at N = 5 and 7 over 20 twists", start, 120, &failures);
}

#[test]
fn c07_finite_mutation_classes() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (n, target, size) in [(4, DynkinType::D(4), 6), (5, DynkinType::E(7), 416)] {
        let seed = epsilon_of_triangulation(&Triangulation::polygon(n).unwrap().without_boundary_coords()).unwrap();
        let hit = mutation_class_search(&seed, Some(target), None, DEFAULT_STATE_CAP).unwrap();
        match hit.witness {
            Some(w) => {
                let reached = w.iter().fold(seed.clone(), |s, k| s.mutate_named(k).unwrap());
                if projcluster::cluster::dynkin_type(&reached) != Some(target) {
                    failures.push(format!("{n}-gon: witness does not reach {target}"));
                }
            }
            None => failures.push(format!("{n}-gon: {target} not reached")),
        }
        let full = mutation_class_search(&seed, None, None, DEFAULT_STATE_CAP).unwrap();
        if !full.complete || full.class_size != size {
            failures.push(format!("{n}-gon: class size {} complete {}", full.class_size, full.complete));
        }
    }
    report(7, "quad reaches D4 and pentagon reaches E7; classes finite (6 and 416)", start, 120, &failures);
}

fn torus_loops(tri: &Triangulation) -> Vec<(&'static str, LoopWord)> {
    let a = LoopWord::parse("0+ 2+", tri).unwrap();
    let b = LoopWord::parse("1+ 2+", tri).unwrap();
    let cat = |x: &LoopWord, y: &LoopWord| LoopWord(x.0.iter().chain(&y.0).copied().collect());
    vec![("a", a.clone()), ("b", b.clone()), ("ab", cat(&a, &b)), ("aB", cat(&a, &b.inverse()))]
}

type M3 = [[Rat; 3]; 3];

fn mul3(a: &M3, b: &M3) -> M3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(Rat::zero(), |s, k| s + &a[i][k] * &b[k][j])))
}

#[test]
fn c08_trace_positivity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let tri = Triangulation::surface(1, 1).unwrap();
    let g = MonodromyGraph::new(&tri).unwrap();
    let vars = epsilon_of_triangulation(&tri).unwrap().vars();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (name, w) in torus_loops(&tri) {
        let m = g.monodromy(&w).unwrap();
        let point = random_positive_point(&vars, &mut rng);
        let mv = m.eval(&point).unwrap();
        let mut power = mv.clone();
        for n in 1..=3u32 {
            let (t, _) = trace_of_power(&g, &w, n).unwrap();
            match t.as_laurent() {
                Some(l) if l.terms().all(|(_, c)| c.is_integer() && c.is_positive()) => {}
                _ => failures.push(format!("{name}^{n}: trace is not a positive integral Laurent polynomial")),
            }
            let direct = &power[0][0] + &power[1][1] + &power[2][2];
            if t.eval_at(&point).unwrap() != direct {
                failures.push(format!("{name}^{n}: trace differs from the numeric product"));
            }
            power = mul3(&power, &mv);
        }
    }
    report(8, "traces of powers 1-3 of four torus loops are positive integral Laurent polynomials", start, 120, &failures);
}

/// Three distinct real roots of the characteristic polynomial, by the cubic discriminant.
fn discriminant_positive(m: &M3) -> bool {
    let tr = &m[0][0] + &m[1][1] + &m[2][2];
    let minors = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0] + &m[0][0] * &m[2][2] - &m[0][2] * &m[2][0]
        + &m[1][1] * &m[2][2]
        - &m[1][2] * &m[2][1];
    let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    let (b, c, d) = (-tr, minors, -det);
    let n = |k: i64| Rat::from_integer(k.into());
    let disc = n(18) * &b * &c * &d - n(4) * &b * &b * &b * &d + &b * &b * &c * &c - n(4) * &c * &c * &c
        - n(27) * &d * &d;
    disc.is_positive()
}

#[test]
fn c09_hyperbolic_and_boundary() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let tri = Triangulation::surface(1, 1).unwrap();
    let g = MonodromyGraph::new(&tri).unwrap();
    let vars = epsilon_of_triangulation(&tri).unwrap().vars();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let a = LoopWord::parse("0+ 2+", &tri).unwrap();
    if g.is_peripheral(&a).unwrap() {
        failures.push("loop a is peripheral".into());
    }
    let m = g.monodromy(&a).unwrap();
    for _ in 0..HYPERBOLIC_POINTS {
        let p = random_positive_point(&vars, &mut rng);
        let sturm = check_regular_hyperbolic(&m, &p).unwrap();
        if !sturm || !discriminant_positive(&m.eval(&p).unwrap()) {
            failures.push(format!("not regular hyperbolic at a point (Sturm: {sturm})"));
        }
    }
    let boundary = LoopWord::parse("0- 2- 1- 0+ 2+ 1+", &tri).unwrap();
    if !g.is_peripheral(&boundary).unwrap() {
        failures.push("boundary loop is not peripheral".into());
    }
    let (rotation, cert) = certify_loop_positivity(&g, &boundary).unwrap();
    match rotation {
        Some(k) if cert.status == TpStatus::Certified => {
            let mb = g.monodromy(&boundary.rotated(k)).unwrap();
            if !(mb.is_upper_triangular() || mb.is_lower_triangular()) {
                failures.push("boundary monodromy is not triangular".into());
            }
            for _ in 0..20 {
                let v = mb.eval(&random_positive_point(&vars, &mut rng)).unwrap();
                let bad = (0..3).any(|i| !v[i][i].is_positive())
                    || (0..3).any(|i| (0..3).any(|j| v[i][j].is_negative()));
                if bad {
                    failures.push("boundary monodromy has a negative entry".into());
                }
            }
        }
        _ => failures.push(format!("boundary loop not certified: {:?}", cert.status)),
    }
    report(9, "loop a regular hyperbolic at 100 points; boundary loop triangular totally positive", start, 60, &failures);
}

fn jitter(rng: &mut ChaCha8Rng, scale: i64) -> Rat {
    rat(rng.gen_range(-scale..=scale), 100)
}

/// Points on the unit circle with lines through them turned slightly off the tangent.
fn conic_pair(ts: &[Rat], turns: &[Rat]) -> PolygonPair {
    let one = Rat::one();
    let two = rat(2, 1);
    let points: Vec<Vec3> = ts.iter().map(|t| [&one - t * t, &two * t, &one + t * t]).collect();
    let lines = points
        .iter()
        .zip(turns)
        .map(|(p, s)| [&p[0] + s * &p[1], &p[1] - s * &p[0], -p[2].clone()])
        .collect();
    PolygonPair::new(points, lines).unwrap()
}

#[test]
fn c10_polygon_round_trip() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 3..=6 {
        let tri = Triangulation::polygon(n).unwrap().without_boundary_coords();
        for _ in 0..RANDOM_ASSIGNMENTS {
            let a = random_assignment(&tri, &mut rng);
            let pp = polygon_pair_from_coords(&a, &tri).unwrap();
            if coords_of_polygon_pair(&pp, &tri).unwrap() != a {
                failures.push(format!("{n}-gon: round trip"));
            }
            if n <= 4 && !pp.is_convex_inscribed() {
                failures.push(format!("{n}-gon: positive coordinates, non-convex pair"));
            }
        }
    }
    let bases: [&[i64]; 2] = [&[-200, 0, 200], &[-240, -40, 40, 240]];
    for base in bases {
        let n = base.len();
        let tri = Triangulation::polygon(n).unwrap().without_boundary_coords();
        for _ in 0..RANDOM_ASSIGNMENTS {
            let ts: Vec<Rat> = base.iter().map(|&b| rat(b, 100) + jitter(&mut rng, 10)).collect();
            let turns: Vec<Rat> = (0..n).map(|_| jitter(&mut rng, 15)).collect();
            let pp = conic_pair(&ts, &turns);
            if !pp.is_convex_inscribed() {
                failures.push(format!("{n}-gon: conic pair not recognised as convex"));
                continue;
            }
            let c = coords_of_polygon_pair(&pp, &tri).unwrap();
            if !c.values().all(|v| v.is_positive()) {
                failures.push(format!("{n}-gon: convex pair with a non-positive coordinate"));
            }
            let mut b = c.clone();
            let key = tri.center_name(0);
            let v = -b[&key].clone();
            b.insert(key, v);
            if polygon_pair_from_coords(&b, &tri).is_ok() || realize(&b, &tri).is_ok_and(|q| q.is_convex_inscribed()) {
                failures.push(format!("{n}-gon: negative center accepted"));
            }
        }
    }
    report(10, "coordinates and polygon pairs round trip for n = 3..6; positivity both ways for n = 3, 4", start, 120, &failures);
}

#[test]
fn c11_coordinate_count() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (g, s) in [(1i64, 1i64), (0, 3), (1, 2)] {
        let tri = Triangulation::surface(g as usize, s as usize).unwrap();
        let chi = 2 - 2 * g - s;
        let size = tri.point_names().len() as i64;
        if size != 8 * chi.abs() {
            failures.push(format!("g = {g}, s = {s}: {size} coordinates"));
        }
    }
    report(11, "|I3| = 8|chi| for (1,1), (0,3), (1,2)", start, 1, &failures);
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

fn on_locus(tri: &Triangulation, a: &Assignment) -> bool {
    (0..tri.triangles().len()).all(|t| a[&tri.center_name(t)].is_one()) && edge_pairs(tri).iter().all(|(p, q)| a[p] == a[q])
}

#[test]
fn c12_sigma() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut tris: Vec<Triangulation> =
        (4..=6).map(|n| Triangulation::polygon(n).unwrap().without_boundary_coords()).collect();
    tris.push(Triangulation::surface(1, 1).unwrap());
    for tri in &tris {
        let s = sigma_map(tri).unwrap();
        if !s.then(&s).unwrap().is_identity() {
            failures.push("sigma squared is not the identity".into());
        }
        for i in 0..20 {
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
            if (sigma_assignment(tri, &a).unwrap() == a) != on_locus(tri, &a) {
                failures.push("fixed locus mismatch".into());
            }
        }
    }
    for n in 3..=6 {
        let tri = Triangulation::polygon(n).unwrap().without_boundary_coords();
        let ts: Vec<Rat> = (0..n).map(|i| rat(2 * i as i64 - n as i64, 2)).collect();
        let pp = conic_pair(&ts, &vec![Rat::zero(); n]);
        let c = coords_of_polygon_pair(&pp, &tri).unwrap();
        if !on_locus(&tri, &c) || sigma_assignment(&tri, &c).unwrap() != c {
            failures.push(format!("{n}-gon: self-dual conic pair is not fixed"));
        }
    }
    let tri = Triangulation::polygon(4).unwrap().without_boundary_coords();
    for _ in 0..20 {
        let a = random_assignment(&tri, &mut rng);
        let pp = polygon_pair_from_coords(&a, &tri).unwrap();
        if coords_of_polygon_pair(&pp.dual(), &tri).unwrap() != sigma_assignment(&tri, &a).unwrap() {
            failures.push("sigma differs from projective duality".into());
        }
    }
    report(12, "sigma^2 = id; fixed locus is equal edge pairs with unit centers; sigma is duality for n = 4", start, 30, &failures);
}
