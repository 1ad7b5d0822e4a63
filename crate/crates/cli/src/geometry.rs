use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use qcob::frobenius::{load_any, quantum_point, samples, AnyFrobenius, FrobeniusData};
use qcob::tft::{catalog, dimension, glue, random_stable_graph, Amplitude, CurveType, LegMode, StableGraph, Tft};
use qcob::Ring;

use crate::report::{input, read_file, CliError, Report};
use crate::{FrobCommand, TftCommand};

macro_rules! with_frob {
    ($any:expr, $d:ident => $body:expr) => {
        match $any {
            AnyFrobenius::Rational($d) => $body,
            AnyFrobenius::Laurent($d) => $body,
            AnyFrobenius::Novikov($d) => $body,
        }
    };
}

fn load(path: &Path) -> Result<AnyFrobenius, CliError> {
    load_any(&read_file(path)?).map_err(input("frobenius data"))
}

fn load_or_point(path: Option<&Path>) -> Result<AnyFrobenius, CliError> {
    path.map_or_else(|| Ok(AnyFrobenius::Laurent(quantum_point())), load)
}

fn vector_text<R: Ring>(x: &[R]) -> String {
    let parts: Vec<String> = x.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn vector_json<R: Ring>(x: &[R]) -> Value {
    Value::Array(x.iter().map(Ring::to_json).collect())
}

fn matrix_report<R: Ring>(m: &[Vec<R>]) -> Report {
    let text: Vec<String> = m.iter().map(|row| vector_text(row)).collect();
    let json = Value::Array(m.iter().map(|row| vector_json(row)).collect());
    Report::value(text.join("\n"), json)
}

fn validate<R: Ring>(d: &FrobeniusData<R>) -> Report {
    let report = d.validate();
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({"axiom": c.axiom.to_string(), "passed": c.passed, "witness": c.witness}))
        .collect();
    let json = json!({"ring": R::NAME, "rank": d.rank(), "passed": report.passed(), "checks": checks});
    Report::check(report.to_string().trim_end(), json, report.passed())
}

fn star<R: Ring>(d: &FrobeniusData<R>, x: &str, k: u32) -> Result<Report, CliError> {
    let x = d.parse_element(x).map_err(input("element"))?;
    let p = d.star_power(&x, k).map_err(input("quantum power"))?;
    Ok(Report::value(vector_text(&p), vector_json(&p)))
}

fn assoc<R: Ring>(d: &FrobeniusData<R>, inputs: Option<Vec<String>>) -> Result<Report, CliError> {
    let tuples: Vec<[Vec<R>; 4]> = match inputs {
        Some(srcs) => {
            let xs = srcs
                .iter()
                .map(|s| d.parse_element(s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(input("element"))?;
            let [a, b, c, e]: [Vec<R>; 4] = xs.try_into().expect("clap enforces four inputs");
            vec![[a, b, c, e]]
        }
        None => {
            let r = d.rank();
            let mut all = Vec::with_capacity(r.pow(4));
            for i in 0..r.pow(4) {
                let idx = [i / r.pow(3), (i / r.pow(2)) % r, (i / r) % r, i % r];
                all.push(idx.map(|j| d.basis_vector(j)));
            }
            all
        }
    };
    for t in &tuples {
        let p = d
            .associator_partitions([&t[0], &t[1], &t[2], &t[3]])
            .map_err(input("associator"))?;
        if !(p[0] == p[1] && p[1] == p[2]) {
            let text = format!(
                "partitions disagree at {} {} {} {}: {}, {}, {}",
                vector_text(&t[0]),
                vector_text(&t[1]),
                vector_text(&t[2]),
                vector_text(&t[3]),
                p[0],
                p[1],
                p[2]
            );
            let json = json!({
                "agree": false,
                "inputs": t.iter().map(|x| vector_json(x)).collect::<Vec<_>>(),
                "values": p.iter().map(Ring::to_json).collect::<Vec<_>>(),
            });
            return Ok(Report::check(text, json, false));
        }
    }
    let text = format!("all three partitions agree on {} input tuple(s)", tuples.len());
    Ok(Report::check(text, json!({"agree": true, "tuples": tuples.len()}), true))
}

pub fn frob(command: FrobCommand) -> Result<Report, CliError> {
    match command {
        FrobCommand::Validate { file } => Ok(with_frob!(load(&file)?, d => validate(&d))),
        FrobCommand::Star { frob, x, k } => with_frob!(load_or_point(frob.as_deref())?, d => star(&d, &x, k)),
        FrobCommand::Assoc { file, inputs } => with_frob!(load(&file)?, d => assoc(&d, inputs)),
        FrobCommand::Copairing { file } => with_frob!(load(&file)?, d => {
            let c = d.copairing().map_err(input("copairing"))?;
            Ok(matrix_report(&c.inverse))
        }),
    }
}

fn amplitude_report<R: Ring>(amp: &Amplitude<R>) -> Report {
    let text = match amp.as_scalar() {
        Some(x) => x.to_string(),
        None => amp
            .indices()
            .iter()
            .zip(amp.data())
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| format!("{i:?}: {v}"))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    let json = json!({
        "rank": amp.rank(),
        "arity": amp.arity(),
        "data": amp.data().iter().map(Ring::to_json).collect::<Vec<_>>(),
    });
    Report::value(text, json)
}

fn eval<R: Ring>(d: FrobeniusData<R>, graph: &StableGraph) -> Result<Report, CliError> {
    let tft = Tft::new(d).map_err(input("frobenius data"))?;
    let amp = tft.evaluate(graph).map_err(input("evaluation"))?;
    Ok(amplitude_report(&amp))
}

struct GraphOutcome {
    graph: String,
    witness: Option<String>,
}

fn check_one<R: Ring>(d: FrobeniusData<R>, rng: &mut ChaCha8Rng, trials: usize) -> Result<GraphOutcome, CliError> {
    let graph = random_stable_graph(rng, 3, 4, 6);
    let tft = Tft::new(d).map_err(input("frobenius data"))?;
    let report = tft.check_gluing_invariance(&graph, trials, rng).map_err(input("evaluation"))?;
    let witness = report.discrepancy.map(|w| {
        format!("trial {} at {:?}: expected {}, found {}", w.trial, w.index, w.expected, w.found)
    });
    Ok(GraphOutcome { graph: graph.to_json(), witness })
}

fn check(trials: usize, graphs: usize, seed: u64, frob: Option<&Path>) -> Result<Report, CliError> {
    let fixed = frob.map(load).transpose()?;
    let outcomes = (0..graphs)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            match &fixed {
                Some(any) => with_frob!(any.clone(), d => check_one(d, &mut rng, trials)),
                None => check_one(samples::random_frobenius(&mut rng, 3), &mut rng, trials),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let failures: Vec<&GraphOutcome> = outcomes.iter().filter(|o| o.witness.is_some()).collect();
    let passed = failures.is_empty();
    let mut text = format!(
        "{} of {graphs} graphs invariant under {trials} random decompositions",
        graphs - failures.len()
    );
    for f in &failures {
        text.push_str(&format!("\n{}: {}", f.graph, f.witness.as_deref().unwrap_or_default()));
    }
    let json = json!({
        "graphs": graphs,
        "trials": trials,
        "seed": seed,
        "passed": passed,
        "failures": failures.iter().map(|f| json!({"graph": f.graph, "witness": f.witness})).collect::<Vec<_>>(),
    });
    Ok(Report::check(text, json, passed))
}

fn curve_type(v: &[u32], name: &str) -> Result<CurveType, CliError> {
    match v {
        [g, n] => Ok(CurveType::new(*g, *n)),
        _ => Err(CliError(format!("{name}: expected g,n"))),
    }
}

pub fn tft(command: TftCommand) -> Result<Report, CliError> {
    match command {
        TftCommand::Eval { graph, frob } => {
            let g = StableGraph::from_json(&read_file(&graph)?).map_err(input("graph"))?;
            with_frob!(load_or_point(frob.as_deref())?, d => eval(d, &g))
        }
        TftCommand::Check { trials, graphs, seed, frob } => check(trials, graphs, seed, frob.as_deref()),
        TftCommand::Dim { g, n } => {
            let d = dimension(CurveType::new(g, n));
            Ok(Report::value(d.to_string(), json!(d)))
        }
        TftCommand::Glue { first, second, s } => {
            let t = glue(curve_type(&first, "first")?, curve_type(&second, "second")?, s).map_err(input("gluing"))?;
            Ok(Report::value(t.to_string(), json!({"g": t.g, "n": t.n})))
        }
        TftCommand::Catalog { g, n, unlabelled } => {
            let mode = if unlabelled { LegMode::Unlabelled } else { LegMode::Labelled };
            let graphs = catalog(CurveType::new(g, n), mode).map_err(input("catalog"))?;
            let mut text = format!("{} graphs", graphs.len());
            for graph in &graphs {
                text.push('\n');
                text.push_str(&graph.to_json());
            }
            let list: Vec<Value> = graphs
                .iter()
                .map(|g| serde_json::from_str(&g.to_json()).expect("graph JSON"))
                .collect();
            Ok(Report::value(text, json!({"count": graphs.len(), "graphs": list})))
        }
    }
}
