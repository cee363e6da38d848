use std::collections::HashMap;
use std::error::Error as StdError;
use std::fs;
use std::io::Read;
use std::path::Path;
use std::time::Instant;

use hyperpf::circuit::{self, AffineForm, AffineSubstitution, Circuit};
use hyperpf::invariants::{
    self, classical_pfaffian, expansion_size, hyperpfaffian, hyperpfaffian_expand, hyperpfaffian_with_stats,
    HyperpfaffianInstance,
};
use hyperpf::kernel::MultiIndex;
use hyperpf::projection::verify_projection_theorem;
use hyperpf::repcheck::{
    invariant_dimension_bruteforce, invariant_dimension_predicted, verify_proposition, CheckStatus,
    InvariantDimensionQuery,
};
use hyperpf::tensor::format::{parse_matrix, parse_tensor};
use hyperpf::tensor::{random_sparse_tensor, random_special_linear_with, SparseTensor, SquareMatrix};
use hyperpf::{Error, Scalar};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::output::Report;
use crate::{CircuitCommand, MatrixInput};

pub type CmdResult = Result<Report, Box<dyn StdError>>;

fn read_input(path: &Path) -> Result<String, Box<dyn StdError>> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn with_path(path: &Path) -> impl Fn(Error) -> Box<dyn StdError> + '_ {
    move |e| format!("{}: {e}", path.display()).into()
}

fn load_instance(path: &Path, k: usize) -> Result<HyperpfaffianInstance, Box<dyn StdError>> {
    let tensor = parse_tensor(&read_input(path)?).map_err(with_path(path))?;
    Ok(HyperpfaffianInstance::new(k, tensor)?)
}

fn load_matrix(input: &MatrixInput) -> Result<SquareMatrix, Box<dyn StdError>> {
    match (&input.input, &input.matrix) {
        (Some(path), _) => Ok(parse_matrix(&read_input(path)?).map_err(with_path(path))?),
        (None, Some(inline)) => Ok(parse_matrix(inline)?),
        (None, None) => Err("either --input or --matrix is required".into()),
    }
}

fn instance_records(r: &mut Report, inst: &HyperpfaffianInstance) {
    r.record("k", inst.k())
        .record("n", inst.n())
        .record("d", inst.d());
}

pub fn eval(path: &Path, k: usize) -> CmdResult {
    let inst = load_instance(path, k)?;
    let (value, stats) = hyperpfaffian_with_stats(&inst);
    let mut r = Report::new();
    instance_records(&mut r, &inst);
    r.record("value", &value)
        .record("nodes", stats.nodes)
        .record("leaves", stats.leaves);
    r.line(value);
    Ok(r)
}

pub fn expand(path: &Path, k: usize, budget: u64) -> CmdResult {
    let inst = load_instance(path, k)?;
    let value = hyperpfaffian_expand(&inst, budget)?;
    let mut r = Report::new();
    instance_records(&mut r, &inst);
    r.record("value", &value).record("terms", expansion_size(&inst));
    r.line(value);
    Ok(r)
}

fn scalar_report(name: &str, n: usize, value: Scalar) -> Report {
    let mut r = Report::new();
    r.record("n", n).record(name, &value);
    r.line(value);
    r
}

pub fn permanent(input: &MatrixInput, naive: bool) -> CmdResult {
    let a = load_matrix(input)?;
    let value = if naive {
        invariants::permanent_naive(&a)
    } else {
        invariants::permanent(&a)
    };
    Ok(scalar_report("permanent", a.dim(), value))
}

pub fn determinant(input: &MatrixInput) -> CmdResult {
    let a = load_matrix(input)?;
    Ok(scalar_report("determinant", a.dim(), invariants::determinant(&a)))
}

pub fn pfaffian(input: &MatrixInput) -> CmdResult {
    let a = load_matrix(input)?;
    Ok(scalar_report("pfaffian", a.dim(), classical_pfaffian(&a)?))
}

pub fn verify_projection(k: usize, d: usize, force: bool, show: bool) -> CmdResult {
    let report = verify_projection_theorem(k, d, force)?;
    let mut r = Report::new();
    for line in report.to_records().lines() {
        if let Some((key, value)) = line.split_once('=') {
            r.record(key, value);
        }
    }
    if show {
        r.line(&report);
    } else {
        r.line(format!(
            "k={} d={}: hyperpfaffian {} {}!·{}_{} ({} and {} terms)",
            k,
            d,
            if report.equal() { "equals" } else { "DIFFERS FROM" },
            d,
            report.target.name(),
            d,
            report.lhs.len(),
            report.rhs.len()
        ));
    }
    r.success = report.equal();
    Ok(r)
}

pub fn invariant_dim(n: usize, orders: &[usize], b: Option<usize>, budget: u64) -> CmdResult {
    let mut r = Report::new();
    r.line(format!(
        "{:>3} {:>3} {:>3} {:>9} {:>11} {:>5}",
        "n", "m", "b", "predicted", "brute_force", "match"
    ));
    for &m in orders {
        let q = InvariantDimensionQuery::new(n, m, b)?;
        let brute = match invariant_dimension_bruteforce(&q, budget) {
            Ok(v) => Some(v),
            Err(Error::Budget { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        // the hook-length count is for the full tensor space only
        let predicted = b.is_none().then(|| invariant_dimension_predicted(n, m));
        let matched = match (predicted, brute) {
            (Some(p), Some(v)) => Some(p == v),
            _ => None,
        };
        if matched == Some(false) {
            r.success = false;
        }
        let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let (b, predicted, brute, matched) = (
            show(b.map(|v| v.to_string())),
            show(predicted.map(|v| v.to_string())),
            show(brute.map(|v| v.to_string())),
            show(matched.map(|v| v.to_string())),
        );
        r.line(format!(
            "{n:>3} {m:>3} {b:>3} {predicted:>9} {brute:>11} {matched:>5}"
        ));
        r.record("n", n)
            .record("m", m)
            .record("b", &b)
            .record("predicted", &predicted)
            .record("brute_force", &brute)
            .record("match", &matched);
    }
    Ok(r)
}

pub fn verify_uniqueness(k: usize, n: usize, budget: u64) -> CmdResult {
    let report = verify_proposition(k, n, budget)?;
    let mut r = Report::new();
    let status = |s: &CheckStatus| match s {
        CheckStatus::Verified => "verified".to_string(),
        CheckStatus::PredictedOnly => "predicted-only".to_string(),
        CheckStatus::Failed(why) => format!("failed ({why})"),
    };
    r.record("k", k).record("n", n).record("d", report.d);
    for c in &report.lower_degrees {
        let key = format!("degree_{}", c.degree);
        r.record(&format!("{key}_order"), c.order);
        r.record(
            &format!("{key}_brute_force"),
            c.brute_force.map_or("-".into(), |v| v.to_string()),
        );
        r.record(&format!("{key}_status"), status(&c.status));
    }
    r.record(
        "top_dimension",
        report.top_dimension.map_or("-".into(), |v| v.to_string()),
    );
    r.record("top_status", status(&report.top_status));
    r.record("antisymmetrizer_status", status(&report.antisymmetrizer_status));
    r.record("passed", report.passed());
    r.line(&report);
    r.success = report.passed();
    Ok(r)
}

pub fn check_invariance(
    k: usize,
    n: usize,
    trials: usize,
    seed: u64,
    factors: usize,
    entries: usize,
    perturb: bool,
) -> CmdResult {
    if k == 0 || n == 0 || !n.is_multiple_of(2 * k) {
        return Err(Error::InvalidInstance(format!("2k = {} must divide n = {n}", 2 * k)).into());
    }
    let marker: Vec<usize> = (1..=2 * k).collect();
    // The negative control adds the coefficient at (1, ..., 2k), which
    // the group action moves around.
    let f = |t: &SparseTensor| -> Result<Scalar, Error> {
        let value = hyperpfaffian(&HyperpfaffianInstance::new(k, t.clone())?);
        Ok(match (perturb, t.get(&marker)) {
            (true, Some(c)) => value + c.clone(),
            _ => value,
        })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut passed, mut failed) = (0usize, 0usize);
    let mut first_failure = None;
    for trial in 0..trials {
        let mut p = random_sparse_tensor(&mut rng, n, 2 * k, entries);
        if perturb && p.get(&marker).is_none() {
            p.add_term(MultiIndex::new(marker.clone()), Scalar::from(1));
        }
        let g = random_special_linear_with(&mut rng, n, factors);
        let before = f(&p)?;
        let after = f(&p.apply_group_element(&g)?)?;
        if before == after {
            passed += 1;
        } else {
            failed += 1;
            first_failure.get_or_insert((trial, before, after));
        }
    }
    let mut r = Report::new();
    r.record("k", k)
        .record("n", n)
        .record("seed", seed)
        .record("trials", trials)
        .record("factors", factors)
        .record("entries", entries)
        .record("perturb", perturb)
        .record("passed", passed)
        .record("failed", failed);
    r.line(format!(
        "invariance of Pf_{{{k},{n}}}{}: {passed}/{trials} passed, {failed} failed (seed {seed})",
        if perturb { " + perturbation" } else { "" }
    ));
    if let Some((trial, before, after)) = first_failure {
        r.line(format!(
            "first failure at trial {trial}: f(p) = {before}, f(g·p) = {after}"
        ));
    }
    r.success = failed == 0;
    Ok(r)
}

fn load_circuit(path: &Path) -> Result<Circuit, Box<dyn StdError>> {
    circuit::parse_circuit(&read_input(path)?).map_err(with_path(path))
}

fn split_assignment(s: &str) -> Result<(&str, &str), Box<dyn StdError>> {
    s.split_once('=')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| format!("expected name=value, found `{s}`").into())
}

pub fn circuit(cmd: CircuitCommand) -> CmdResult {
    let mut r = Report::new();
    match cmd {
        CircuitCommand::Parse { input } => {
            let c = load_circuit(&input)?;
            r.record("size", c.size())
                .record("output", c.output())
                .record("variables", c.variables().join(" "));
            r.text = c.to_string();
        }
        CircuitCommand::Eval { input, at } => {
            let c = load_circuit(&input)?;
            let mut point = HashMap::new();
            for a in &at {
                let (name, value) = split_assignment(a)?;
                point.insert(name.to_string(), value.parse::<Scalar>()?);
            }
            let value = c.evaluate(&point)?;
            r.record("value", &value);
            r.line(value);
        }
        CircuitCommand::Expand { input, budget } => {
            let p = load_circuit(&input)?.to_polynomial(budget)?;
            r.record("terms", p.len()).record("polynomial", &p);
            r.line(p);
        }
        CircuitCommand::Project {
            input,
            sub,
            expand,
            budget,
        } => {
            let c = load_circuit(&input)?;
            let mut s = AffineSubstitution::new();
            for a in &sub {
                let (name, form) = split_assignment(a)?;
                s.insert(name, form.parse::<AffineForm>()?);
            }
            let projected = circuit::project(&c, &s)?;
            r.record("size_before", c.size())
                .record("size_after", projected.size())
                .record("size_bound", circuit::projection_size_bound(&c, &s));
            r.text = projected.to_string();
            if expand {
                let p = projected.to_polynomial(budget)?;
                r.record("polynomial", &p);
                r.text = format!("# {p}\n{}", r.text);
            }
        }
        CircuitCommand::Permanent { n } => {
            let c = circuit::build_permanent_circuit(n)?;
            r.record("n", n).record("size", c.size());
            r.text = c.to_string();
        }
    }
    Ok(r)
}

pub fn bench(k: usize, n: usize, density: f64, seed: u64, trials: usize) -> CmdResult {
    if !(density > 0.0 && density <= 1.0) {
        return Err(format!("density must be in (0, 1], got {density}").into());
    }
    if k == 0 || n == 0 || !n.is_multiple_of(2 * k) {
        return Err(Error::InvalidInstance(format!("2k = {} must divide n = {n}", 2 * k)).into());
    }
    let possible = (n as f64).powi(2 * k as i32);
    let entries = ((density * possible).round() as usize).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new();
    r.record("k", k)
        .record("n", n)
        .record("seed", seed)
        .record("density", density)
        .record("entries", entries);
    r.line(format!(
        "Pf_{{{k},{n}}} on {trials} random tensors, {entries} entries each (seed {seed})"
    ));
    let mut total = std::time::Duration::ZERO;
    for trial in 0..trials {
        let t = random_sparse_tensor(&mut rng, n, 2 * k, entries);
        let stored = t.len();
        let inst = HyperpfaffianInstance::new(k, t)?;
        let start = Instant::now();
        let (value, stats) = hyperpfaffian_with_stats(&inst);
        let elapsed = start.elapsed();
        total += elapsed;
        r.record("trial", trial)
            .record("stored", stored)
            .record("nodes", stats.nodes)
            .record("leaves", stats.leaves)
            .record("value", &value);
        r.line(format!(
            "  trial {trial}: {stored} stored, {} nodes, {} leaves, {:.3} ms, value {value}",
            stats.nodes,
            stats.leaves,
            elapsed.as_secs_f64() * 1e3
        ));
        r.diagnostics.push(format!(
            "trial={trial} elapsed_ms={:.3}",
            elapsed.as_secs_f64() * 1e3
        ));
    }
    r.line(format!("  total {:.3} ms", total.as_secs_f64() * 1e3));
    Ok(r)
}
