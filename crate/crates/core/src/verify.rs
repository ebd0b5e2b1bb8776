//! Formula-vs-engine campaigns, reproduction of the reference examples and
//! the structural checks on ordered powers of cycle edge ideals.
//!
//! Reports are deterministic given the spec and seed: instances are
//! enumerated lexicographically over `(n, weights, t)` and results keep that
//! order whatever order the workers finish in. Timings are the only
//! nondeterministic field and are dropped by [`CampaignReport::to_json`]
//! when asked.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::betti::{betti_table, regularity, EngineConfig, Field};
use crate::closed_form::formula;
use crate::constructions::{edge_ideal, CycleIdeal};
use crate::digraph::{make_cycle, FamilyKind, WeightedDigraph};
use crate::error::VerifyError;
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};

/// Version tag written into every campaign report.
pub const REPORT_SCHEMA: &str = "edgereg.verify/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cycle,
    Forest,
    Unicyclic,
    RawIdeal,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::Forest => "forest",
            Family::Unicyclic => "unicyclic",
            Family::RawIdeal => "raw-ideal",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cycle" => Ok(Family::Cycle),
            "forest" => Ok(Family::Forest),
            "unicyclic" => Ok(Family::Unicyclic),
            "raw-ideal" | "raw" => Ok(Family::RawIdeal),
            other => Err(VerifyError::InvalidSpec(format!("unknown family `{other}`"))),
        }
    }
}

/// Inclusive integer range written `a..b` or `a`.
pub fn parse_range<T: FromStr + PartialOrd + Copy>(text: &str) -> Result<(T, T), VerifyError> {
    let bad = || VerifyError::InvalidSpec(format!("bad range `{text}` (expected `a..b` or `a`)"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim_start_matches('=').trim().parse().map_err(|_| bad())?),
        None => {
            let v = text.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Comma-separated weight alphabet, e.g. `2,3`.
pub fn parse_alphabet(text: &str) -> Result<Vec<u32>, VerifyError> {
    let mut out: Vec<u32> = text
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| VerifyError::InvalidSpec(format!("bad weight `{s}`"))))
        .collect::<Result<_, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignSpec {
    pub family: Family,
    /// Vertex count (variables for `raw-ideal`).
    pub n: (usize, usize),
    pub t: (u32, u32),
    /// Weight alphabet (exponent bound for `raw-ideal` is its maximum).
    pub weights: Vec<u32>,
    pub seed: u64,
    /// Per `n`, enumerate exhaustively while the instance count stays at or
    /// below this; otherwise draw `samples` weight assignments.
    pub exhaustive_cap: usize,
    pub samples: usize,
    pub field: Field,
    pub lattice_cap: usize,
    pub face_cap: usize,
    /// `None` uses the global rayon pool.
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl CampaignSpec {
    pub fn new(family: Family, n: (usize, usize), t: (u32, u32), weights: Vec<u32>) -> Self {
        let defaults = EngineConfig::default();
        Self {
            family,
            n,
            t,
            weights,
            seed: 0,
            exhaustive_cap: 64,
            samples: 12,
            field: Field::Rationals,
            lattice_cap: defaults.lattice_cap,
            face_cap: defaults.face_cap,
            workers: None,
        }
    }

    pub fn engine_config(&self) -> EngineConfig {
        EngineConfig { field: self.field, lattice_cap: self.lattice_cap, face_cap: self.face_cap, ..EngineConfig::default() }
    }

    fn validate(&self) -> Result<(), VerifyError> {
        if self.n.0 > self.n.1 {
            return Err(VerifyError::EmptyRange("n"));
        }
        if self.t.0 > self.t.1 {
            return Err(VerifyError::EmptyRange("t"));
        }
        if self.t.0 == 0 {
            return Err(VerifyError::InvalidSpec("t must be at least 1".into()));
        }
        if self.weights.is_empty() {
            return Err(VerifyError::EmptyRange("weights"));
        }
        if self.weights.contains(&0) {
            return Err(VerifyError::InvalidSpec("weights must be positive".into()));
        }
        if self.samples == 0 {
            return Err(VerifyError::InvalidSpec("samples must be at least 1".into()));
        }
        let n_max = match self.family {
            Family::Cycle | Family::Unicyclic | Family::Forest => 12,
            Family::RawIdeal => 8,
        };
        if self.n.1 > n_max {
            return Err(VerifyError::InvalidSpec(format!("n = {} is above {n_max} for {}", self.n.1, self.family)));
        }
        Ok(())
    }
}

/// One unit of work: a weighted digraph (or a raw ideal) and a power.
#[derive(Clone, Debug)]
enum Subject {
    Graph(WeightedDigraph),
    Ideal(MonomialIdeal),
}

#[derive(Clone, Debug)]
struct Instance {
    n: usize,
    subject: Subject,
    weights: Vec<u32>,
    t: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
    Inadmissible,
    Skipped,
}

/// Flat so that it serializes the same way to JSON and CSV.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub id: usize,
    pub family: Family,
    pub n: usize,
    pub instance: String,
    pub weights: String,
    pub t: u32,
    /// Graph family of the instance; empty for raw ideals.
    pub class: String,
    pub admissible: bool,
    /// Formula value for graphs, engine regularity of the polarization for
    /// raw ideals.
    pub predicted: Option<i64>,
    pub engine: Option<i64>,
    pub status: Status,
    pub reason: String,
    pub field: Field,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl VerificationRecord {
    pub fn without_timing(&self) -> Self {
        Self { elapsed_ms: None, ..self.clone() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub schema: &'static str,
    pub spec: CampaignSpec,
    pub records: Vec<VerificationRecord>,
}

impl CampaignReport {
    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    /// 1 on any mismatch, else 2 if anything was skipped, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Mismatch) > 0 {
            1
        } else if self.count(Status::Skipped) > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self, with_timing: bool) -> String {
        if with_timing {
            serde_json::to_string_pretty(self).expect("report serializes")
        } else {
            let stripped = CampaignReport {
                schema: self.schema,
                spec: self.spec.clone(),
                records: self.records.iter().map(VerificationRecord::without_timing).collect(),
            };
            serde_json::to_string_pretty(&stripped).expect("report serializes")
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "{} instances: {} match, {} mismatch, {} inadmissible, {} skipped",
            self.records.len(),
            self.count(Status::Match),
            self.count(Status::Mismatch),
            self.count(Status::Inadmissible),
            self.count(Status::Skipped)
        )
    }
}

fn with_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T, VerifyError> {
    match workers {
        None => Ok(job()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| VerifyError::Workers(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

pub fn run_campaign(spec: &CampaignSpec) -> Result<CampaignReport, VerifyError> {
    spec.validate()?;
    let instances = enumerate(spec)?;
    let config = spec.engine_config();
    let records = with_pool(spec.workers, || {
        instances
            .par_iter()
            .enumerate()
            .map(|(id, inst)| evaluate(id, spec.family, inst, &config))
            .collect::<Vec<_>>()
    })?;
    Ok(CampaignReport { schema: REPORT_SCHEMA, spec: spec.clone(), records })
}

fn weights_text(w: &[u32]) -> String {
    w.iter().join(",")
}

fn describe(graph: &WeightedDigraph) -> String {
    graph.edges().iter().map(|&(a, b)| format!("{}->{}", graph.name(a), graph.name(b))).join(",")
}

fn evaluate(id: usize, family: Family, inst: &Instance, config: &EngineConfig) -> VerificationRecord {
    let start = Instant::now();
    let mut rec = VerificationRecord {
        id,
        family,
        n: inst.n,
        instance: String::new(),
        weights: weights_text(&inst.weights),
        t: inst.t,
        class: String::new(),
        admissible: false,
        predicted: None,
        engine: None,
        status: Status::Skipped,
        reason: String::new(),
        field: config.field,
        elapsed_ms: None,
    };
    match &inst.subject {
        Subject::Graph(graph) => evaluate_graph(&mut rec, graph, inst.t, config),
        Subject::Ideal(ideal) => evaluate_ideal(&mut rec, ideal, inst.t, config),
    }
    rec.elapsed_ms = Some((start.elapsed().as_secs_f64() * 1e3 * 1e3).round() / 1e3);
    rec
}

fn evaluate_graph(rec: &mut VerificationRecord, graph: &WeightedDigraph, t: u32, config: &EngineConfig) {
    rec.instance = describe(graph);
    match formula(graph, t) {
        Ok(f) => {
            rec.class = f.family.to_string();
            rec.admissible = f.admissible;
            rec.predicted = Some(f.predicted);
            if !f.admissible {
                rec.reason = f.violations.join("; ");
            }
        }
        Err(e) => {
            rec.reason = e.to_string();
            if let Ok(tag) = graph.classify() {
                rec.class = tag.kind.to_string();
            }
        }
    }
    let engine = edge_ideal(graph)
        .map_err(|e| e.to_string())
        .and_then(|i| i.power(t).map_err(|e| e.to_string()))
        .and_then(|p| regularity(&p, config).map_err(|e| e.to_string()));
    match engine {
        Ok(r) => rec.engine = Some(r.value),
        Err(e) => {
            rec.status = Status::Skipped;
            rec.reason = e;
            return;
        }
    }
    rec.status = match (rec.admissible, rec.predicted) {
        (true, Some(p)) if Some(p) == rec.engine => Status::Match,
        (true, Some(_)) => Status::Mismatch,
        _ => Status::Inadmissible,
    };
}

/// Raw ideals are checked against the engine on their polarization.
fn evaluate_ideal(rec: &mut VerificationRecord, ideal: &MonomialIdeal, t: u32, config: &EngineConfig) {
    rec.instance = ideal.to_string();
    rec.admissible = true;
    let power = match ideal.power(t) {
        Ok(p) => p,
        Err(e) => {
            rec.reason = e.to_string();
            return;
        }
    };
    let direct = regularity(&power, config);
    let polar = power.polarize().map_err(|e| e.to_string()).and_then(|(p, _)| regularity(&p, config).map_err(|e| e.to_string()));
    match (direct, polar) {
        (Ok(d), Ok(p)) => {
            rec.engine = Some(d.value);
            rec.predicted = Some(p.value);
            rec.status = if d.value == p.value { Status::Match } else { Status::Mismatch };
        }
        (Err(e), _) => rec.reason = e.to_string(),
        (_, Err(e)) => rec.reason = e,
    }
}

fn enumerate(spec: &CampaignSpec) -> Result<Vec<Instance>, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let ts: Vec<u32> = (spec.t.0..=spec.t.1).collect();
    let mut out = Vec::new();
    for n in spec.n.0..=spec.n.1 {
        let graphs: Vec<(WeightedDigraph, Vec<u32>)> = match spec.family {
            Family::Cycle => {
                if n < 3 {
                    continue;
                }
                choose(weight_tuples(&spec.weights, n), ts.len(), spec, &mut rng)
                    .into_iter()
                    .map(|w| (make_cycle(&w).expect("n >= 3 and positive weights"), w))
                    .collect()
            }
            Family::Forest => {
                if n < 2 {
                    continue;
                }
                choose(weighted_trees(n, &spec.weights), ts.len(), spec, &mut rng)
                    .into_iter()
                    .map(|(parent, w)| {
                        let edges: Vec<(usize, usize)> = parent.iter().enumerate().skip(1).map(|(v, &p)| (p, v)).collect();
                        (WeightedDigraph::indexed(&w, &edges).expect("tree edges are valid"), w)
                    })
                    .collect()
            }
            Family::Unicyclic => {
                if n < 3 {
                    continue;
                }
                choose(weight_tuples(&spec.weights, n), ts.len(), spec, &mut rng)
                    .into_iter()
                    .map(|w| (cycle_with_tail(&w), w))
                    .collect()
            }
            Family::RawIdeal => {
                if n == 0 {
                    continue;
                }
                let max_exp = *spec.weights.iter().max().expect("validated non-empty");
                for _ in 0..spec.samples {
                    let ideal = random_ideal(&mut rng, n, 4, max_exp);
                    for &t in &ts {
                        out.push(Instance { n, subject: Subject::Ideal(ideal.clone()), weights: Vec::new(), t });
                    }
                }
                continue;
            }
        };
        for (graph, weights) in graphs {
            for &t in &ts {
                out.push(Instance { n, subject: Subject::Graph(graph.clone()), weights: weights.clone(), t });
            }
        }
    }
    Ok(out)
}

/// Keeps all items when `items * per_item` fits the exhaustive cap,
/// otherwise a seeded sample in the original order.
fn choose<T>(items: Vec<T>, per_item: usize, spec: &CampaignSpec, rng: &mut ChaCha8Rng) -> Vec<T> {
    if items.len() * per_item <= spec.exhaustive_cap || items.len() <= spec.samples {
        return items;
    }
    let mut picked = sample(rng, items.len(), spec.samples).into_vec();
    picked.sort_unstable();
    let keep: HashSet<usize> = picked.into_iter().collect();
    items.into_iter().enumerate().filter(|(i, _)| keep.contains(i)).map(|(_, x)| x).collect()
}

/// All tuples in `alphabet^n`, lexicographic.
pub fn weight_tuples(alphabet: &[u32], n: usize) -> Vec<Vec<u32>> {
    (0..n).map(|_| alphabet.iter().copied()).multi_cartesian_product().collect()
}

/// `C_3` on `x1 -> x2 -> x3 -> x1` with the path `x3 -> x4 -> ...` hanging
/// off `x3`.
pub fn cycle_with_tail(weights: &[u32]) -> WeightedDigraph {
    let n = weights.len();
    let mut edges = vec![(0, 1), (1, 2), (2, 0)];
    edges.extend((3..n).map(|v| (v - 1, v)));
    WeightedDigraph::indexed(weights, &edges).expect("valid unicyclic graph")
}

/// Parent arrays (`parent[0] = 0` is the root) of every rooted tree on `n`
/// vertices up to isomorphism, in a fixed order.
pub fn rooted_trees(n: usize) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let choices = (1..n).map(|v| 0..v);
    for parents in choices.multi_cartesian_product() {
        let mut parent = vec![0];
        parent.extend(parents);
        if seen.insert(canonical(&parent, None, 0)) {
            out.push(parent);
        }
    }
    out
}

fn canonical(parent: &[usize], weights: Option<&[u32]>, v: usize) -> String {
    let children: Vec<String> = (1..parent.len())
        .filter(|&c| parent[c] == v)
        .map(|c| canonical(parent, weights, c))
        .sorted()
        .collect();
    let w = weights.map(|w| w[v].to_string()).unwrap_or_default();
    format!("{w}({})", children.join(""))
}

/// Rooted trees on `n` vertices with weights from `alphabet` on every
/// non-root vertex, deduplicated up to weighted isomorphism. The root is a
/// source and carries weight 1.
pub fn weighted_trees(n: usize, alphabet: &[u32]) -> Vec<(Vec<usize>, Vec<u32>)> {
    let mut out = Vec::new();
    for parent in rooted_trees(n) {
        let mut seen = HashSet::new();
        for rest in weight_tuples(alphabet, n - 1) {
            let mut w = vec![1];
            w.extend(rest);
            if seen.insert(canonical(&parent, Some(&w), 0)) {
                out.push((parent.clone(), w));
            }
        }
    }
    out
}

/// Up to `max_gens` random generators on `n` variables with exponents in
/// `0..=max_exp`, none of them the unit.
pub fn random_ideal(rng: &mut impl Rng, n: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    let vars = Arc::new(VariableSet::indexed("x", n));
    let count = rng.gen_range(1..=max_gens);
    let gens: Vec<Monomial> = (0..count)
        .map(|_| loop {
            let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            if exps.iter().any(|&e| e > 0) {
                break Monomial::from_dense(&exps);
            }
        })
        .collect();
    MonomialIdeal::new(vars, gens).expect("generators fit the variable set")
}

/// A fixed instance from the literature with its known values.
#[derive(Clone, Debug)]
pub struct ReferenceExample {
    pub name: &'static str,
    pub graph: WeightedDigraph,
    pub t: u32,
    pub engine: i64,
    pub formula: i64,
}

pub fn reference_examples() -> Vec<ReferenceExample> {
    let c5 = make_cycle(&[1, 3, 3, 1, 3]).expect("valid cycle");
    // the cycle x1 x2 x3 x4 x5 with the edge between x1 and x5 reversed
    let bent = WeightedDigraph::indexed(&[1, 3, 3, 3, 3], &[(0, 4), (0, 1), (1, 2), (2, 3), (3, 4)]).expect("valid graph");
    let path_tail = WeightedDigraph::indexed(
        &[2, 2, 2, 2, 1, 1, 2],
        &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6)],
    )
    .expect("valid graph");
    let split_tail = WeightedDigraph::indexed(
        &[2, 2, 2, 2, 2, 1, 2],
        &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (5, 4), (5, 6)],
    )
    .expect("valid graph");
    vec![
        ReferenceExample { name: "cycle-low-weights", graph: c5, t: 2, engine: 10, formula: 11 },
        ReferenceExample { name: "cycle-reversed-edge", graph: bent, t: 2, engine: 14, formula: 13 },
        ReferenceExample { name: "unicyclic-weight-one-path", graph: path_tail, t: 2, engine: 10, formula: 9 },
        ReferenceExample { name: "unicyclic-two-sources", graph: split_tail, t: 2, engine: 11, formula: 10 },
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleOutcome {
    pub name: &'static str,
    pub ideal: String,
    pub t: u32,
    pub class: FamilyKind,
    pub expected_engine: i64,
    pub engine: Option<i64>,
    pub expected_formula: i64,
    pub formula: Option<i64>,
    pub admissible: bool,
    pub violations: Vec<String>,
    pub error: Option<String>,
    pub pass: bool,
    pub elapsed_ms: f64,
}

/// Runs every reference example; engine failures are reported per example.
pub fn reproduce_examples(config: &EngineConfig) -> Vec<ExampleOutcome> {
    reference_examples()
        .into_iter()
        .map(|ex| {
            let start = Instant::now();
            let ideal = edge_ideal(&ex.graph).expect("examples have edges");
            let class = ex.graph.classify().map(|t| t.kind).unwrap_or(FamilyKind::Other);
            let f = formula(&ex.graph, ex.t);
            let (formula_value, admissible, violations, mut error) = match f {
                Ok(f) => (Some(f.predicted), f.admissible, f.violations, None),
                Err(e) => (None, false, Vec::new(), Some(e.to_string())),
            };
            let engine = ideal.power(ex.t).map_err(|e| e.to_string()).and_then(|p| regularity(&p, config).map_err(|e| e.to_string()));
            let engine = match engine {
                Ok(r) => Some(r.value),
                Err(e) => {
                    error.get_or_insert(e);
                    None
                }
            };
            let pass = engine == Some(ex.engine) && formula_value == Some(ex.formula) && !admissible;
            ExampleOutcome {
                name: ex.name,
                ideal: ideal.to_string(),
                t: ex.t,
                class,
                expected_engine: ex.engine,
                engine,
                expected_formula: ex.formula,
                formula: formula_value,
                admissible,
                violations,
                error,
                pass,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureSpec {
    /// Cycle lengths and powers for the decomposition, order and
    /// edge-divisibility checks.
    pub n: (usize, usize),
    pub t: (u32, u32),
    pub weights: Vec<u32>,
    /// Colon checks run on the part of the range within these bounds.
    pub colon_max_n: usize,
    pub colon_max_t: u32,
    /// Splitting runs on constant weight vectors within these bounds.
    pub splitting_max_n: usize,
    pub splitting_max_t: u32,
    pub field: Field,
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl StructureSpec {
    pub fn new(n: (usize, usize), t: (u32, u32), weights: Vec<u32>) -> Self {
        Self {
            n,
            t,
            weights,
            colon_max_n: 5,
            colon_max_t: 2,
            splitting_max_n: 4,
            splitting_max_t: 2,
            field: Field::Rationals,
            workers: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub skipped: usize,
    pub first_failure: Option<String>,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.skipped == 0
    }

    fn absorb(&mut self, o: Outcome) {
        self.cases += 1;
        match o {
            Outcome::Pass => {}
            Outcome::Fail(msg) => {
                self.failures += 1;
                self.first_failure.get_or_insert(msg);
            }
            Outcome::Skip(msg) => {
                self.skipped += 1;
                self.first_failure.get_or_insert(msg);
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub schema: &'static str,
    pub spec: StructureSpec,
    pub checks: Vec<CheckSummary>,
}

impl StructureReport {
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.failures > 0) {
            1
        } else if self.checks.iter().any(|c| c.skipped > 0) {
            2
        } else {
            0
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

fn outcome(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(what())
    }
}

pub const CHECK_DECOMPOSITION: &str = "unique-decomposition";
pub const CHECK_ORDER: &str = "lex-descent";
pub const CHECK_EDGE_DIVISIBILITY: &str = "edge-divisibility";
pub const CHECK_COLON: &str = "colon-structure";
pub const CHECK_COLON_FORMS: &str = "colon-forms";
pub const CHECK_SPLITTING: &str = "betti-splitting";

/// Structural checks over oriented cycles with weights from the alphabet.
pub fn run_structure_checks(spec: &StructureSpec) -> Result<StructureReport, VerifyError> {
    if spec.n.0 > spec.n.1 {
        return Err(VerifyError::EmptyRange("n"));
    }
    if spec.t.0 > spec.t.1 || spec.t.0 == 0 {
        return Err(VerifyError::EmptyRange("t"));
    }
    if spec.weights.is_empty() || spec.weights.iter().any(|&w| w < 2) {
        return Err(VerifyError::InvalidSpec("structure checks need weights >= 2".into()));
    }
    let n_lo = spec.n.0.max(3);
    let cases: Vec<(Vec<u32>, u32)> = (n_lo..=spec.n.1)
        .flat_map(|n| weight_tuples(&spec.weights, n))
        .flat_map(|w| (spec.t.0..=spec.t.1).map(move |t| (w.clone(), t)))
        .collect();
    let config = EngineConfig::with_field(spec.field);

    let per_case: Vec<Vec<(&'static str, Outcome)>> =
        with_pool(spec.workers, || cases.par_iter().map(|(w, t)| structure_case(spec, &config, w, *t)).collect())?;

    let names = [CHECK_DECOMPOSITION, CHECK_ORDER, CHECK_EDGE_DIVISIBILITY, CHECK_COLON, CHECK_COLON_FORMS, CHECK_SPLITTING];
    let mut by_name: BTreeMap<&str, CheckSummary> =
        names.iter().map(|&n| (n, CheckSummary { name: n.to_string(), ..CheckSummary::default() })).collect();
    for results in per_case {
        for (name, o) in results {
            by_name.get_mut(name).expect("known check").absorb(o);
        }
    }
    let checks = names.iter().map(|n| by_name.remove(n).expect("known check")).collect();
    Ok(StructureReport { schema: REPORT_SCHEMA, spec: spec.clone(), checks })
}

fn structure_case(spec: &StructureSpec, config: &EngineConfig, w: &[u32], t: u32) -> Vec<(&'static str, Outcome)> {
    let mut out = Vec::new();
    let label = format!("weights ({}), t = {t}", weights_text(w));
    let cycle = match make_cycle(w).map_err(|e| e.to_string()).and_then(|g| CycleIdeal::new(&g).map_err(|e| e.to_string())) {
        Ok(c) => c,
        Err(e) => {
            out.push((CHECK_DECOMPOSITION, Outcome::Skip(format!("{label}: {e}"))));
            return out;
        }
    };
    let basis = match cycle.ordered_power_basis(t) {
        Ok(b) => b,
        Err(e) => {
            out.push((CHECK_DECOMPOSITION, Outcome::Skip(format!("{label}: {e}"))));
            return out;
        }
    };

    // distinct vectors give distinct monomials, and together they are G(I^t)
    let monos: HashSet<&Monomial> = basis.entries().iter().map(|e| &e.monomial).collect();
    let power = cycle.ideal().power(t).expect("small power");
    let power_set: HashSet<&Monomial> = power.generators().iter().collect();
    out.push((
        CHECK_DECOMPOSITION,
        outcome(monos.len() == basis.len() && monos == power_set, || {
            format!("{label}: {} vectors, {} distinct products, {} generators of the power", basis.len(), monos.len(), power.len())
        }),
    ));

    let descending = basis.entries().windows(2).all(|p| p[0].vector > p[1].vector);
    out.push((CHECK_ORDER, outcome(descending, || format!("{label}: basis not in descending lex order"))));

    for k in 1..t {
        let small = cycle.ordered_power_basis(k).expect("k >= 1");
        let rest = cycle.ordered_power_basis(t - k).expect("t - k >= 1");
        let mut bad = None;
        for a in small.entries() {
            for b in basis.entries() {
                let by_definition = b.monomial.quotient(&a.monomial).is_some_and(|q| rest.position(&q).is_some());
                let by_vectors = a.vector.iter().zip(&b.vector).all(|(x, y)| x <= y);
                let reported = cycle.edge_divides(&a.monomial, k, &b.monomial, t).unwrap_or(!by_definition);
                if by_definition != by_vectors || reported != by_definition {
                    bad.get_or_insert_with(|| format!("{label}: {:?} vs {:?}", a.vector, b.vector));
                }
            }
        }
        out.push((CHECK_EDGE_DIVISIBILITY, outcome(bad.is_none(), || bad.clone().unwrap_or_default())));
    }

    let n = w.len();
    if n <= spec.colon_max_n && t <= spec.colon_max_t {
        for i in 1..basis.len() {
            let o = match cycle.build_colon_structure(&basis, i) {
                Ok(s) => {
                    let (p, b) = (s.predicted(), s.brute_force(&basis));
                    outcome(p.generators() == b.generators(), || format!("{label}, i = {i}: predicted {p}, actual {b}"))
                }
                Err(e) => Outcome::Fail(format!("{label}, i = {i}: {e}")),
            };
            out.push((CHECK_COLON, o));
        }
        if t >= 2 {
            for i in 1..basis.len() {
                let missing = (i + 1..=basis.len()).find(|&j| cycle.colon_form_witness(&basis, i, j).is_none());
                out.push((CHECK_COLON_FORMS, outcome(missing.is_none(), || format!("{label}: no witness for i = {i}, j = {}", missing.unwrap()))));
            }
        }
    }

    let constant = w.iter().all(|&x| x == w[0]);
    if constant && n <= spec.splitting_max_n && t <= spec.splitting_max_t {
        out.push((CHECK_SPLITTING, splitting_case(&cycle, t, config, &label)));
    }
    out
}

/// `β_{i,j}(I) = β_{i,j}(J) + β_{i,j}(K) + β_{i-1,j}(J ∩ K)` entrywise and
/// `reg(I) = max(reg J, reg K, reg(J ∩ K) - 1)`.
pub fn check_splitting(cycle: &CycleIdeal, t: u32, config: &EngineConfig) -> Result<Result<(), String>, String> {
    let power = cycle.ideal().power(t).map_err(|e| e.to_string())?;
    let (j, k) = cycle.betti_split_power(t).map_err(|e| e.to_string())?;
    let jk = j.intersect(&k).map_err(|e| e.to_string())?;
    let tables = [&power, &j, &k, &jk].map(|i| betti_table(i, config).map_err(|e| e.to_string()));
    let [ti, tj, tk, tjk] = tables;
    let (ti, tj, tk, tjk) = (ti?, tj?, tk?, tjk?);
    let degrees: HashSet<(usize, u64)> = ti
        .entries()
        .chain(tj.entries())
        .chain(tk.entries())
        .map(|(key, _)| key)
        .chain(tjk.entries().map(|((i, d), _)| (i + 1, d)))
        .collect();
    for (i, d) in degrees.into_iter().sorted() {
        let rhs = tj.get(i, d) + tk.get(i, d) + if i > 0 { tjk.get(i - 1, d) } else { 0 };
        if ti.get(i, d) != rhs {
            return Ok(Err(format!("β_{{{i},{d}}}: {} != {rhs}", ti.get(i, d))));
        }
    }
    let reg = |t: &crate::betti::BettiTable| t.regularity().map(|r| r.value).unwrap_or(i64::MIN);
    let expected = reg(&tj).max(reg(&tk)).max(reg(&tjk) - 1);
    if reg(&ti) != expected {
        return Ok(Err(format!("reg {} != max(...) = {expected}", reg(&ti))));
    }
    Ok(Ok(()))
}

fn splitting_case(cycle: &CycleIdeal, t: u32, config: &EngineConfig, label: &str) -> Outcome {
    match check_splitting(cycle, t, config) {
        Ok(Ok(())) => Outcome::Pass,
        Ok(Err(msg)) => Outcome::Fail(format!("{label}: {msg}")),
        Err(msg) => Outcome::Skip(format!("{label}: {msg}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_alphabets() {
        assert_eq!(parse_range::<usize>("3..5").unwrap(), (3, 5));
        assert_eq!(parse_range::<usize>("3..=5").unwrap(), (3, 5));
        assert_eq!(parse_range::<u32>("2").unwrap(), (2, 2));
        assert!(parse_range::<u32>("5..3").is_err());
        assert_eq!(parse_alphabet("3, 2,3").unwrap(), vec![2, 3]);
        assert!(parse_alphabet("2,x").is_err());
        assert_eq!("raw-ideal".parse::<Family>().unwrap(), Family::RawIdeal);
    }

    #[test]
    fn rooted_tree_counts() {
        // unlabeled rooted trees: 1, 1, 2, 4, 9
        let counts: Vec<usize> = (1..=5).map(|n| rooted_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9]);
    }

    #[test]
    fn weighted_tree_dedup() {
        // cherry with two weighted leaves: {2,2}, {2,3}, {3,3}
        let trees = weighted_trees(3, &[2, 3]);
        let cherries = trees.iter().filter(|(p, _)| p == &vec![0, 0, 0]).count();
        assert_eq!(cherries, 3);
        assert_eq!(trees.len(), 3 + 4);
    }

    #[test]
    fn enumeration_is_lex_and_sampled() {
        let mut spec = CampaignSpec::new(Family::Cycle, (3, 4), (1, 2), vec![2, 3]);
        spec.exhaustive_cap = 16;
        spec.samples = 5;
        let inst = enumerate(&spec).unwrap();
        // n = 3 exhaustive (8 * 2 = 16), n = 4 sampled
        assert_eq!(inst.len(), 16 + 10);
        let keys: Vec<(usize, Vec<u32>, u32)> = inst.iter().map(|i| (i.n, i.weights.clone(), i.t)).collect();
        assert!(keys.windows(2).all(|p| p[0] < p[1]));
        let again: Vec<_> = enumerate(&spec).unwrap().iter().map(|i| (i.n, i.weights.clone(), i.t)).collect();
        assert_eq!(keys, again);
    }

    #[test]
    fn small_cycle_campaign_matches() {
        let spec = CampaignSpec::new(Family::Cycle, (3, 3), (1, 2), vec![2, 3]);
        let report = run_campaign(&spec).unwrap();
        assert_eq!(report.records.len(), 16);
        assert_eq!(report.count(Status::Match), 16, "{}", report.summary());
        assert_eq!(report.exit_code(), 0);
        assert_eq!(report.to_json(false), run_campaign(&spec).unwrap().to_json(false));
        assert!(!report.to_json(false).contains("elapsed_ms"));
        assert!(report.to_json(true).contains("elapsed_ms"));
    }

    #[test]
    fn inadmissible_instances_are_flagged() {
        let spec = CampaignSpec::new(Family::Cycle, (3, 3), (1, 1), vec![1]);
        let report = run_campaign(&spec).unwrap();
        assert_eq!(report.records[0].status, Status::Inadmissible);
        assert!(report.records[0].reason.contains("w(x1)=1"));
    }

    #[test]
    fn caps_give_skips() {
        let mut spec = CampaignSpec::new(Family::Cycle, (3, 3), (2, 2), vec![2]);
        spec.lattice_cap = 2;
        let report = run_campaign(&spec).unwrap();
        assert_eq!(report.records[0].status, Status::Skipped);
        assert!(report.records[0].reason.contains("lattice"));
        assert_eq!(report.exit_code(), 2);
    }

    #[test]
    fn bad_specs() {
        let spec = CampaignSpec::new(Family::Cycle, (4, 3), (1, 1), vec![2]);
        assert_eq!(run_campaign(&spec).unwrap_err(), VerifyError::EmptyRange("n"));
        let spec = CampaignSpec::new(Family::Cycle, (3, 3), (0, 1), vec![2]);
        assert!(run_campaign(&spec).is_err());
        let spec = StructureSpec::new((3, 3), (1, 1), vec![1, 2]);
        assert!(run_structure_checks(&spec).is_err());
    }

    #[test]
    fn structure_small() {
        let spec = StructureSpec::new((3, 4), (1, 2), vec![2]);
        let report = run_structure_checks(&spec).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "{c:?}");
            assert!(c.cases > 0, "{}", c.name);
        }
        assert_eq!(report.exit_code(), 0);
    }
}
