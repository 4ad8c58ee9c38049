//! Command-line front end. Every command prints one JSON envelope
//! `{"command", "config", "seed", "result"}`; exit code 0 on success, 1 when a check
//! fails, 2 on malformed input.

mod verify;

use crate::arith::{parse_rat, random_positive_point, Rat};
use crate::cluster::{
    check_poisson_preserved, dynkin_type, mutation_class_search, mutation_sequence, DynkinType, Seed,
};
use crate::geom::{coords_of_polygon_pair, polygon_pair_from_coords, PolygonPair};
use crate::monodromy::{
    certify_loop_positivity, check_regular_hyperbolic, trace_laurent, trace_of_power, LoopWord, MonodromyGraph,
};
use crate::quantum::{quantum_flip, quantum_flip_formulas, quantum_flip_intermediate, role_names};
use crate::surface::{
    double_flip_relabeling, epsilon_of_triangulation, flip_closed_form, flip_via_mutations, Assignment, Flip, Kind,
    Triangulation,
};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::PathBuf;

pub use verify::{run_verify, Target, VerifyArgs};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser, Serialize, Debug)]
#[command(name = "projcluster", version, about = "Exact cluster coordinates for PGL(3) on surfaces")]
pub struct Cli {
    /// JSON input file; `-` reads stdin.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the JSON envelope here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// The constant c in {X_i, X_j} = c ε_ij X_i X_j.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub poisson_constant: u8,
    /// Numerical tolerance for the quantum checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Serialize, Debug, Clone, Default)]
pub struct SystemArgs {
    /// Triangulated n-gon (fan at vertex 0).
    #[arg(long)]
    pub polygon: Option<usize>,
    /// Punctured surface such as `g1s1`.
    #[arg(long)]
    pub surface: Option<String>,
    /// Drop the boundary coordinates of a polygon.
    #[arg(long)]
    pub no_boundary: bool,
}

#[derive(Subcommand, Serialize, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Describe a triangulation: marked points, internal edges, ε.
    Triangulate(#[command(flatten)] SystemArgs),
    /// Flip an internal edge.
    Flip {
        #[command(flatten)]
        system: SystemArgs,
        /// Edge key such as `0.2`.
        #[arg(long)]
        edge: String,
    },
    /// Quantum flip formulas.
    QuantumFlip {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value = "0.2")]
        edge: String,
        /// Print the formulas with q symbolic instead of their q = 1 specialization.
        #[arg(long)]
        q_symbolic: bool,
    },
    /// Mutate a seed (from --input or a triangulation) at a sequence of vertices.
    Mutate {
        #[command(flatten)]
        system: SystemArgs,
        /// Comma-separated vertex names or indices.
        #[arg(long, value_delimiter = ',')]
        at: Vec<String>,
    },
    /// Monodromy matrix of a loop and its positivity certificate.
    Monodromy {
        #[command(flatten)]
        system: SystemArgs,
        /// Crossing word (`0+ 2+`), torus letters (`ab`, `A` inverts) or `boundary`.
        #[arg(long = "loop")]
        word: String,
        /// Random points for the hyperbolicity test.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Trace of a power of a loop monodromy.
    Trace {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long = "loop")]
        word: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Run checks.
    Verify(VerifyArgs),
    /// Dynkin type and size of the mutation class of the interior seed.
    Classify {
        #[command(flatten)]
        system: SystemArgs,
        /// Bound on the number of classes visited.
        #[arg(long, default_value_t = 200_000)]
        cap: usize,
    },
    /// Polygon pair from coordinates, or coordinates from a pair with --inverse.
    Reconstruct {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        inverse: bool,
        /// Use random positive coordinates instead of --input.
        #[arg(long)]
        random: bool,
    },
    /// SVG picture of a polygon pair.
    Render {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        random: bool,
        /// Write the SVG here; otherwise it is embedded in the result.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Triangulate(_) => "triangulate",
            Command::Flip { .. } => "flip",
            Command::QuantumFlip { .. } => "quantum-flip",
            Command::Mutate { .. } => "mutate",
            Command::Monodromy { .. } => "monodromy",
            Command::Trace { .. } => "trace",
            Command::Verify(_) => "verify",
            Command::Classify { .. } => "classify",
            Command::Reconstruct { .. } => "reconstruct",
            Command::Render { .. } => "render",
        }
    }
}

/// Result of a command: the JSON payload and whether its checks passed.
pub struct Outcome {
    pub result: Value,
    pub passed: bool,
}

fn ok(result: Value) -> Result<Outcome> {
    Ok(Outcome { result, passed: true })
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonPositive(_)
        | Error::Degenerate(_)
        | Error::SearchLimit(_)
        | Error::TooLarge(_)
        | Error::PoleAtPoint(_)
        | Error::DenominatorVanishes(_)
        | Error::ZeroDenominator => 1,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    if exit_code(e) == 1 {
        "check-failure"
    } else {
        "malformed-input"
    }
}

pub fn read_input(path: &Option<PathBuf>) -> Result<Option<Value>> {
    let Some(p) = path else { return Ok(None) };
    let text = if p.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(p)?
    };
    Ok(Some(serde_json::from_str(&text)?))
}

fn parse_surface(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("surface {s} should look like g1s1"));
    let rest = s.strip_prefix('g').ok_or_else(bad)?;
    let (g, p) = rest.split_once('s').ok_or_else(bad)?;
    Ok((g.parse().map_err(|_| bad())?, p.parse().map_err(|_| bad())?))
}

impl SystemArgs {
    /// Triangulation from the flags, else from a triangulation object in `input`.
    pub fn triangulation(&self, input: Option<&Value>) -> Result<Triangulation> {
        let t = match (self.polygon, &self.surface) {
            (Some(_), Some(_)) => return Err(Error::Invalid("give either --polygon or --surface".into())),
            (Some(n), None) => Triangulation::polygon(n)?,
            (None, Some(s)) => {
                let (g, p) = parse_surface(s)?;
                Triangulation::surface(g, p)?
            }
            (None, None) => {
                let v = input.ok_or_else(|| Error::Invalid("no triangulation given".into()))?;
                Triangulation::from_json(v.get("triangulation").unwrap_or(v))?
            }
        };
        Ok(if self.no_boundary { t.without_boundary_coords() } else { t })
    }
}

/// Loop text: `boundary`, torus letters over `a, b, A, B`, or a crossing word.
pub fn parse_loop(text: &str, tri: &Triangulation) -> Result<LoopWord> {
    let torus = tri.kind() == (Kind::Surface { genus: 1, punctures: 1 });
    let t = text.trim();
    if torus && t == "boundary" {
        return LoopWord::parse("0- 2- 1- 0+ 2+ 1+", tri);
    }
    if torus && !t.is_empty() && t.chars().all(|c| "abAB".contains(c)) {
        let a = LoopWord::parse("0+ 2+", tri)?;
        let b = LoopWord::parse("1+ 2+", tri)?;
        let mut out = Vec::new();
        for c in t.chars() {
            let w = match c {
                'a' => a.clone(),
                'b' => b.clone(),
                'A' => a.inverse(),
                _ => b.inverse(),
            };
            out.extend(w.0);
        }
        return Ok(LoopWord(out));
    }
    LoopWord::parse(t, tri)
}

fn json_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Error::Parse(format!("expected an integer or a \"p/q\" string, got {v}"))),
    }
}

pub fn assignment_json(a: &Assignment) -> Value {
    Value::Object(a.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect())
}

fn assignment_from_json(v: &Value) -> Result<Assignment> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("coordinates must be an object".into()))?;
    obj.iter().map(|(k, x)| Ok((k.clone(), json_rat(x)?))).collect()
}

/// Random positive values at every coordinate of `tri`.
pub fn random_assignment(tri: &Triangulation, rng: &mut ChaCha8Rng) -> Assignment {
    let vars: Vec<_> = tri.point_names().iter().map(|n| crate::Var::new(n)).collect();
    let p = random_positive_point(&vars, rng);
    vars.iter().map(|v| (v.name(), p[v].clone())).collect()
}

fn polygon_system(system: &SystemArgs, input: Option<&Value>) -> Result<Triangulation> {
    let t = system.triangulation(input)?;
    if !t.is_polygon() {
        return Err(Error::Invalid("polygon pairs need a polygon triangulation".into()));
    }
    Ok(t.without_boundary_coords())
}

/// Coordinates and triangulation from `--random` or an input `{"coordinates": ...}`.
fn coords_input(system: &SystemArgs, input: Option<&Value>, random: bool, seed: u64) -> Result<(Triangulation, Assignment)> {
    let tri = polygon_system(system, input)?;
    let values = if random {
        random_assignment(&tri, &mut ChaCha8Rng::seed_from_u64(seed))
    } else {
        let v = input.and_then(|v| v.get("coordinates")).ok_or_else(|| Error::Invalid("no coordinates given".into()))?;
        assignment_from_json(v)?
    };
    Ok((tri, values))
}

fn images_json(names: Vec<(String, crate::RatFunc)>) -> Value {
    Value::Object(names.into_iter().map(|(k, f)| (k, Value::String(f.to_string()))).collect())
}

fn cmd_triangulate(system: &SystemArgs, input: Option<&Value>) -> Result<Outcome> {
    let tri = system.triangulation(input)?;
    let seed = epsilon_of_triangulation(&tri)?;
    ok(json!({
        "triangulation": tri.to_json(),
        "euler_characteristic": tri.euler_characteristic(),
        "internal_edges": tri.internal_edges().into_iter().map(|e| tri.edge_key(e)).collect::<Vec<_>>(),
        "coordinates": seed.len(),
        "seed": seed.to_json(),
    }))
}

fn cmd_flip(system: &SystemArgs, edge: &str, input: Option<&Value>) -> Result<Outcome> {
    let tri = system.triangulation(input)?;
    let e = tri.edge_by_key(edge)?;
    let (after, closed) = flip_closed_form(&tri, e)?;
    let (_, via) = flip_via_mutations(&tri, e)?;
    let agree = closed.same_as(&via);
    let (_, back) = flip_closed_form(&after, e)?;
    let involution = closed.then(&back)?.then(&double_flip_relabeling(&tri, e)?)?.is_identity();
    Ok(Outcome {
        result: json!({
            "edge": edge,
            "new_edge": after.edge_key(e),
            "after": after.to_json(),
            "images": images_json(closed.named_images()),
            "mutations_agree": agree,
            "involution": involution,
        }),
        passed: agree && involution,
    })
}

fn cmd_quantum_flip(system: &SystemArgs, edge: &str, symbolic: bool, input: Option<&Value>) -> Result<Outcome> {
    let tri = system.triangulation(input)?;
    let e = tri.edge_by_key(edge)?;
    if !symbolic {
        let m = quantum_flip(&tri, e)?.at_q_one()?;
        return ok(json!({ "edge": edge, "q": "1", "images": images_json(m.named_images()) }));
    }
    let fl = Flip::new(&tri, e)?;
    let names = role_names(&fl)?;
    let seed = epsilon_of_triangulation(&tri)?;
    let show = |v: Vec<(&'static str, crate::quantum::QExpr)>| -> Value {
        Value::Object(v.into_iter().map(|(k, x)| (k.to_string(), Value::String(x.display(&seed)))).collect())
    };
    let roles: BTreeMap<&str, String> = names.iter().map(|(k, v)| (*k, v.clone())).collect();
    ok(json!({
        "edge": edge,
        "q": "symbolic",
        "roles": roles,
        "formulas": show(quantum_flip_formulas(&seed, names.clone())?),
        "intermediate": show(quantum_flip_intermediate(&seed, names)?),
    }))
}

fn seed_input(system: &SystemArgs, input: Option<&Value>) -> Result<Seed> {
    match input {
        Some(v) if v.get("vertices").is_some() && system.polygon.is_none() && system.surface.is_none() => {
            Seed::from_json(v)
        }
        _ => epsilon_of_triangulation(&system.triangulation(input)?),
    }
}

fn vertex_name(seed: &Seed, s: &str) -> Result<String> {
    if seed.contains(s) {
        return Ok(s.to_string());
    }
    match s.parse::<usize>() {
        Ok(i) if i < seed.len() => Ok(seed.name(i).to_string()),
        _ => Err(Error::UnknownVertex(s.into())),
    }
}

fn cmd_mutate(system: &SystemArgs, at: &[String], input: Option<&Value>, c: &Rat) -> Result<Outcome> {
    let seed = seed_input(system, input)?;
    let names = at.iter().map(|s| vertex_name(&seed, s)).collect::<Result<Vec<_>>>()?;
    let map = mutation_sequence(&seed, &names)?;
    let poisson = check_poisson_preserved(&map, c);
    Ok(Outcome {
        result: json!({
            "sequence": names,
            "seed": map.target().to_json(),
            "images": images_json(map.named_images()),
            "poisson_preserved": poisson,
        }),
        passed: poisson,
    })
}

fn cmd_monodromy(system: &SystemArgs, word: &str, samples: usize, seed: u64, input: Option<&Value>) -> Result<Outcome> {
    let tri = system.triangulation(input)?;
    let g = MonodromyGraph::new(&tri)?;
    let w = parse_loop(word, &tri)?;
    let m = g.monodromy(&w)?;
    let peripheral = g.is_peripheral(&w)?;
    let (rotation, cert) = certify_loop_positivity(&g, &w)?;
    let mut result = json!({
        "loop": w.display(&tri),
        "peripheral": peripheral,
        "matrix": m.to_json(),
        "total_positivity": { "rotation": rotation, "certificate": cert },
    });
    let mut passed = rotation.is_some();
    if samples > 0 && !peripheral {
        let vars: Vec<_> = epsilon_of_triangulation(&tri)?.vars();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hyperbolic = 0;
        for _ in 0..samples {
            if check_regular_hyperbolic(&m, &random_positive_point(&vars, &mut rng))? {
                hyperbolic += 1;
            }
        }
        result["regular_hyperbolic"] = json!({ "samples": samples, "hyperbolic": hyperbolic });
        passed &= hyperbolic == samples;
    }
    Ok(Outcome { result, passed })
}

fn cmd_trace(system: &SystemArgs, word: &str, power: u32, input: Option<&Value>) -> Result<Outcome> {
    let tri = system.triangulation(input)?;
    let g = MonodromyGraph::new(&tri)?;
    let w = parse_loop(word, &tri)?;
    let (t, cert) = trace_of_power(&g, &w, power)?;
    let laurent = trace_laurent(&t).is_some();
    Ok(Outcome {
        result: json!({
            "loop": w.display(&tri),
            "power": power,
            "trace": t.to_string(),
            "laurent": laurent,
            "positivity": cert,
        }),
        passed: laurent && cert.is_positive(),
    })
}

/// Dynkin types of rank `n`, in the order they are tried.
fn candidates(n: usize) -> Vec<DynkinType> {
    let mut v = vec![DynkinType::A(n)];
    if n >= 4 {
        v.push(DynkinType::D(n));
    }
    if (6..=8).contains(&n) {
        v.push(DynkinType::E(n));
    }
    v
}

fn cmd_classify(system: &SystemArgs, cap: usize, input: Option<&Value>) -> Result<Outcome> {
    let seed = match input {
        Some(v) if v.get("vertices").is_some() && system.polygon.is_none() && system.surface.is_none() => {
            Seed::from_json(v)?
        }
        _ => {
            let t = system.triangulation(input)?;
            epsilon_of_triangulation(&if t.is_polygon() { t.without_boundary_coords() } else { t })?
        }
    };
    let full = match mutation_class_search(&seed, None, None, cap) {
        Ok(o) => Some(o),
        Err(Error::SearchLimit(_)) => None,
        Err(e) => return Err(e),
    };
    let mut found = None;
    if full.is_some() {
        for t in candidates(seed.len()) {
            let o = mutation_class_search(&seed, Some(t), None, cap)?;
            if let Some(w) = o.witness {
                found = Some((t, w));
                break;
            }
        }
    }
    ok(json!({
        "vertices": seed.len(),
        "initial_type": dynkin_type(&seed).map(|t| t.to_string()),
        "type": found.as_ref().map(|(t, _)| t.to_string()),
        "witness": found.map(|(_, w)| w),
        "finite": full.is_some(),
        "class_size": full.as_ref().map(|o| o.class_size),
        "max_depth": full.map(|o| o.max_depth),
    }))
}

fn cmd_reconstruct(system: &SystemArgs, inverse: bool, random: bool, seed: u64, input: Option<&Value>) -> Result<Outcome> {
    if inverse {
        let v = input.ok_or_else(|| Error::Invalid("--inverse needs a polygon pair on --input".into()))?;
        let pp = PolygonPair::from_json(v.get("pair").unwrap_or(v))?;
        let tri = match (system.polygon, v.get("triangulation")) {
            (None, None) => Triangulation::polygon(pp.len())?.without_boundary_coords(),
            _ => polygon_system(system, Some(v))?,
        };
        let coords = coords_of_polygon_pair(&pp, &tri)?;
        let positive = coords.values().all(|x| x > &Rat::from_integer(0.into()));
        return Ok(Outcome {
            result: json!({
                "triangulation": tri.to_json(),
                "convex": pp.is_convex_inscribed(),
                "positive": positive,
                "coordinates": assignment_json(&coords),
            }),
            passed: positive,
        });
    }
    let (tri, values) = coords_input(system, input, random, seed)?;
    let pp = polygon_pair_from_coords(&values, &tri)?;
    let back = coords_of_polygon_pair(&pp, &tri)?;
    let round_trip = back == values;
    Ok(Outcome {
        result: json!({
            "triangulation": tri.to_json(),
            "coordinates": assignment_json(&values),
            "pair": pp.to_json(),
            "convex": pp.is_convex_inscribed(),
            "round_trip": round_trip,
        }),
        passed: round_trip,
    })
}

fn cmd_render(system: &SystemArgs, random: bool, svg: &Option<PathBuf>, seed: u64, input: Option<&Value>) -> Result<Outcome> {
    let pp = match input {
        Some(v) if !random && v.get("points").is_some() => PolygonPair::from_json(v)?,
        _ => {
            let (tri, values) = coords_input(system, input, random, seed)?;
            polygon_pair_from_coords(&values, &tri)?
        }
    };
    let text = pp.to_svg();
    let result = match svg {
        Some(p) => {
            std::fs::write(p, &text)?;
            json!({ "pair": pp.to_json(), "svg_file": p })
        }
        None => json!({ "pair": pp.to_json(), "svg": text }),
    };
    ok(result)
}

/// Runs the parsed command and returns the envelope and the exit code.
pub fn run(cli: &Cli) -> (Value, i32) {
    let config = serde_json::to_value(cli).unwrap_or(Value::Null);
    let envelope = |body: (&str, Value)| {
        let mut m = serde_json::Map::new();
        m.insert("command".into(), json!(cli.command.name()));
        m.insert("config".into(), config.clone());
        m.insert("seed".into(), json!(cli.seed));
        m.insert(body.0.into(), body.1);
        Value::Object(m)
    };
    let outcome = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))
        .and_then(|pool| pool.install(|| dispatch(cli)));
    match outcome {
        Ok(o) => {
            let mut env = envelope(("result", o.result));
            env["passed"] = json!(o.passed);
            (env, if o.passed { 0 } else { 1 })
        }
        Err(e) => {
            let code = exit_code(&e);
            (envelope(("error", json!({ "kind": error_kind(&e), "message": e.to_string() }))), code)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let input = read_input(&cli.input)?;
    let input = input.as_ref();
    let c = Rat::from_integer(cli.poisson_constant.into());
    match &cli.command {
        Command::Triangulate(s) => cmd_triangulate(s, input),
        Command::Flip { system, edge } => cmd_flip(system, edge, input),
        Command::QuantumFlip { system, edge, q_symbolic } => cmd_quantum_flip(system, edge, *q_symbolic, input),
        Command::Mutate { system, at } => cmd_mutate(system, at, input, &c),
        Command::Monodromy { system, word, samples } => cmd_monodromy(system, word, *samples, cli.seed, input),
        Command::Trace { system, word, power } => cmd_trace(system, word, *power, input),
        Command::Verify(args) => run_verify(args, cli.seed, &c, cli.tolerance),
        Command::Classify { system, cap } => cmd_classify(system, *cap, input),
        Command::Reconstruct { system, inverse, random } => cmd_reconstruct(system, *inverse, *random, cli.seed, input),
        Command::Render { system, random, svg } => cmd_render(system, *random, svg, cli.seed, input),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_exit() -> i32 {
    let cli = Cli::parse();
    let (env, code) = run(&cli);
    let text = serde_json::to_string_pretty(&env).unwrap_or_default() + "\n";
    let written = match &cli.output {
        Some(p) => std::fs::write(p, &text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("projcluster: {e}");
        return 2;
    }
    if let Some(err) = env.get("error") {
        eprintln!("projcluster: {}", err["message"].as_str().unwrap_or_default());
    }
    code
}
