//! Experiment runner: seeded trials, pass/memory audits, CSV output, and
//! per-run invariant verification.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algo::{
    self, greedy, one_pass_random_order, random_subset_greedy, sample_vertex_subset, semi,
    two_pass_deterministic, two_pass_randomized, AlgoError, ParamError, PhaseSplit,
};
use crate::generators::{self, GenError};
use crate::graph::{ArrivalOrder, BipartiteGraph};
use crate::io::{read_graph, ParseError};
use crate::matching::is_valid_matching;
use crate::oracle::{count_3_augmentable, max_matching};
use crate::stream::{AuditReport, StreamError, StreamSource};

/// Peak-retained-edge budget: the algorithms keep at most a handful of
/// matchings and bitsets, so a run holding more than this many edges at once
/// is not streaming.
pub fn retained_edge_budget(n_a: usize, n_b: usize) -> usize {
    4 * (n_a + n_b)
}

/// Exact check of `covered >= lambda / (lambda + 1) * opt` in integers.
pub fn semi_coverage_holds(covered: usize, opt: usize, lambda: usize) -> bool {
    (covered as u128) * (lambda as u128 + 1) >= (lambda as u128) * (opt as u128)
}

/// Exact check of `matched >= (1/2 + (lambda-1)/(8l^2+10l+2)) * opt` in
/// integers.
pub fn det_floor_holds(matched: usize, opt: usize, lambda: usize) -> bool {
    let l = lambda as u128;
    let denom = 8 * l * l + 10 * l + 2;
    (matched as u128) * 2 * denom >= (opt as u128) * (denom + 2 * (l - 1))
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid experiment spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("audit violation: {0}")]
    Audit(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<AlgoError> for HarnessError {
    fn from(e: AlgoError) -> Self {
        match e {
            AlgoError::Param(p) => HarnessError::Param(p),
            AlgoError::Stream(s) => HarnessError::Stream(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmId {
    Greedy,
    OnePass,
    SubsetGreedy,
    TwoPassRand,
    Semi,
    TwoPassDet,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 6] = [
        AlgorithmId::Greedy,
        AlgorithmId::OnePass,
        AlgorithmId::SubsetGreedy,
        AlgorithmId::TwoPassRand,
        AlgorithmId::Semi,
        AlgorithmId::TwoPassDet,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::Greedy => "greedy",
            AlgorithmId::OnePass => "one_pass",
            AlgorithmId::SubsetGreedy => "subset_greedy",
            AlgorithmId::TwoPassRand => "two_pass_rand",
            AlgorithmId::Semi => "semi",
            AlgorithmId::TwoPassDet => "two_pass_det",
        }
    }

    pub fn declared_passes(self) -> u32 {
        match self {
            AlgorithmId::Greedy
            | AlgorithmId::OnePass
            | AlgorithmId::SubsetGreedy
            | AlgorithmId::Semi => 1,
            AlgorithmId::TwoPassRand | AlgorithmId::TwoPassDet => 2,
        }
    }

    /// Whether the algorithm consumes a per-trial sample seed.
    pub fn is_randomized(self) -> bool {
        matches!(self, AlgorithmId::SubsetGreedy | AlgorithmId::TwoPassRand)
    }
}

impl std::str::FromStr for AlgorithmId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorId {
    HalfTrap,
    Random,
    PerfectNoise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderModel {
    /// As listed in the graph file (for generated graphs: generation order).
    File,
    /// Fisher-Yates shuffle per trial, seeded from `order_seeds`.
    Uniform,
    /// The generator's worst-case order; only `half_trap` defines one.
    Adversarial,
}

/// A flat description of one experiment: which algorithm, on which graph,
/// under which orders and seeds. Seed lists are explicit so a spec file
/// pins every trial.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub algorithm: AlgorithmId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen_n_a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen_n_b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen_m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen_d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen_seed: Option<u64>,
    pub order: OrderModel,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub order_seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sample_seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<usize>,
    pub trials: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

/// Resolved per-run algorithm parameters with their documented defaults.
#[derive(Debug, Clone, Copy)]
pub struct AlgoParams {
    pub split: PhaseSplit,
    pub p: f64,
    pub lambda: usize,
}

impl Default for AlgoParams {
    fn default() -> Self {
        Self {
            split: PhaseSplit::default(),
            p: algo::DEFAULT_SUBSET_P,
            lambda: algo::DEFAULT_SEMI_LAMBDA,
        }
    }
}

impl ExperimentSpec {
    fn params(&self) -> Result<AlgoParams, ParamError> {
        let defaults = AlgoParams::default();
        let split = PhaseSplit::new(
            self.alpha.unwrap_or(algo::DEFAULT_ALPHA),
            self.beta.unwrap_or(algo::DEFAULT_BETA),
        )?;
        Ok(AlgoParams {
            split,
            p: self.p.unwrap_or(defaults.p),
            lambda: self.lambda.unwrap_or(defaults.lambda),
        })
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let spec_err = |msg: String| Err(HarnessError::Spec(msg));
        if self.trials == 0 {
            return spec_err("trials must be at least 1".into());
        }
        match (&self.graph_file, &self.generator) {
            (Some(_), Some(_)) => {
                return spec_err("give either graph_file or generator, not both".into())
            }
            (None, None) => return spec_err("one of graph_file or generator is required".into()),
            _ => {}
        }
        if self.order == OrderModel::Adversarial && self.generator != Some(GeneratorId::HalfTrap) {
            return spec_err("adversarial order is only defined for the half_trap family".into());
        }
        if self.order == OrderModel::Uniform {
            if self.order_seeds.len() != self.trials {
                return spec_err(format!(
                    "uniform order needs exactly {} order_seeds, got {}",
                    self.trials,
                    self.order_seeds.len()
                ));
            }
        } else if !self.order_seeds.is_empty() {
            return spec_err("order_seeds are only meaningful with the uniform order model".into());
        }
        if self.algorithm.is_randomized() {
            if self.sample_seeds.len() != self.trials {
                return spec_err(format!(
                    "{} needs exactly {} sample_seeds, got {}",
                    self.algorithm.as_str(),
                    self.trials,
                    self.sample_seeds.len()
                ));
            }
        } else if !self.sample_seeds.is_empty() {
            return spec_err(format!(
                "{} is deterministic and takes no sample_seeds",
                self.algorithm.as_str()
            ));
        }
        let params = self.params()?;
        if self.algorithm == AlgorithmId::TwoPassDet && params.lambda < 2 {
            return Err(ParamError::LambdaTooSmall {
                min: 2,
                got: params.lambda,
            }
            .into());
        }
        if self.algorithm == AlgorithmId::Semi && params.lambda < 1 {
            return Err(ParamError::LambdaTooSmall {
                min: 1,
                got: params.lambda,
            }
            .into());
        }
        if !(0.0..=1.0).contains(&params.p) {
            return Err(ParamError::ProbabilityOutOfRange { got: params.p }.into());
        }
        Ok(())
    }
}

/// A graph plus the orders it defines.
struct Instance {
    id: String,
    graph: BipartiteGraph,
    base_order: ArrivalOrder,
    adversarial: Option<ArrivalOrder>,
}

fn materialize(spec: &ExperimentSpec) -> Result<Instance, HarnessError> {
    if let Some(path) = &spec.graph_file {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.clone(),
            source,
        })?;
        let (graph, base_order) = read_graph(&text)?;
        return Ok(Instance {
            id: path.clone(),
            graph,
            base_order,
            adversarial: None,
        });
    }
    let need = |field: Option<usize>, name: &str| {
        field.ok_or_else(|| HarnessError::Spec(format!("generator requires {name}")))
    };
    match spec.generator.expect("validated: generator present") {
        GeneratorId::HalfTrap => {
            let n = need(spec.gen_n, "gen_n")?;
            if n == 0 {
                return Err(HarnessError::Spec("half_trap requires gen_n >= 1".into()));
            }
            let (graph, adversarial) = generators::half_trap(n);
            Ok(Instance {
                id: format!("half_trap_{n}"),
                graph,
                // Generation order is the adversarial order; it is also what
                // `gen` writes to disk, so file and in-memory runs agree.
                base_order: adversarial.clone(),
                adversarial: Some(adversarial),
            })
        }
        GeneratorId::Random => {
            let n_a = need(spec.gen_n_a, "gen_n_a")?;
            let n_b = need(spec.gen_n_b, "gen_n_b")?;
            let m = need(spec.gen_m, "gen_m")?;
            let seed = spec.gen_seed.unwrap_or(0);
            let graph = generators::random_bipartite(n_a, n_b, m, seed)?;
            Ok(Instance {
                id: format!("random_{n_a}x{n_b}_m{m}_s{seed}"),
                graph,
                base_order: ArrivalOrder::identity(m),
                adversarial: None,
            })
        }
        GeneratorId::PerfectNoise => {
            let n = need(spec.gen_n, "gen_n")?;
            let d = need(spec.gen_d, "gen_d")?;
            let seed = spec.gen_seed.unwrap_or(0);
            let graph = generators::perfect_plus_noise(n, d, seed)?;
            let m = graph.m();
            Ok(Instance {
                id: format!("perfect_noise_{n}_d{d}_s{seed}"),
                graph,
                base_order: ArrivalOrder::identity(m),
                adversarial: None,
            })
        }
    }
}

/// One finished trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub algorithm: AlgorithmId,
    pub graph_id: String,
    pub order_seed: Option<u64>,
    pub sample_seed: Option<u64>,
    pub matched: usize,
    pub opt: usize,
    pub ratio: f64,
    pub passes: u32,
    pub peak_edges: usize,
    pub ms: u64,
}

/// Mean, sample standard deviation, and extremes of the per-trial ratios,
/// accumulated in trial order.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub mean_ratio: f64,
    pub stddev_ratio: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub records: Vec<TrialRecord>,
    pub aggregate: Aggregate,
}

fn ratio_of(matched: usize, opt: usize) -> f64 {
    if opt == 0 {
        // An edgeless optimum is matched vacuously.
        1.0
    } else {
        matched as f64 / opt as f64
    }
}

/// Runs `algorithm` once over `(graph, order)` with the pass budget armed,
/// returning the achieved size and the audit. The size is the matching
/// cardinality, or the number of covered A vertices for `semi`.
pub fn run_algorithm(
    graph: &BipartiteGraph,
    order: &ArrivalOrder,
    algorithm: AlgorithmId,
    params: &AlgoParams,
    sample_seed: Option<u64>,
) -> Result<(usize, AuditReport), HarnessError> {
    let mut src = StreamSource::new(graph, order)?;
    src.arm_pass_budget(algorithm.declared_passes());
    let matched = match algorithm {
        AlgorithmId::Greedy => {
            let pass = src.open_pass()?;
            let m = greedy(pass, None);
            src.note_work(graph.m() as u64);
            src.note_stored(m.len());
            m.len()
        }
        AlgorithmId::Semi => {
            let pass = src.open_pass()?;
            let s = semi(pass, params.lambda)?;
            src.note_work(graph.m() as u64);
            src.note_stored(s.len());
            s.covered_a()
        }
        AlgorithmId::OnePass => one_pass_random_order(&mut src, params.split)?.len(),
        AlgorithmId::SubsetGreedy => {
            let seed = sample_seed
                .ok_or_else(|| HarnessError::Spec("subset_greedy needs a sample seed".into()))?;
            let sample = sample_vertex_subset(graph.n_a(), params.p, seed)?;
            random_subset_greedy(&mut src, &sample)?.len()
        }
        AlgorithmId::TwoPassRand => {
            let seed = sample_seed
                .ok_or_else(|| HarnessError::Spec("two_pass_rand needs a sample seed".into()))?;
            let sample = sample_vertex_subset(graph.n_a(), params.p, seed)?;
            two_pass_randomized(&mut src, &sample)?.len()
        }
        AlgorithmId::TwoPassDet => two_pass_deterministic(&mut src, params.lambda)?.len(),
    };
    Ok((matched, src.audit_report()))
}

fn check_audit(
    audit: &AuditReport,
    algorithm: AlgorithmId,
    n_a: usize,
    n_b: usize,
) -> Result<(), HarnessError> {
    if audit.passes_used != algorithm.declared_passes() {
        return Err(HarnessError::Audit(format!(
            "{} used {} passes, declared {}",
            algorithm.as_str(),
            audit.passes_used,
            algorithm.declared_passes()
        )));
    }
    let budget = retained_edge_budget(n_a, n_b);
    if audit.peak_retained_edges > budget {
        return Err(HarnessError::Audit(format!(
            "{} retained {} edges, budget {}",
            algorithm.as_str(),
            audit.peak_retained_edges,
            budget
        )));
    }
    if !audit.per_edge_work_bound_ok {
        return Err(HarnessError::Audit(format!(
            "{} exceeded the per-edge work bound",
            algorithm.as_str()
        )));
    }
    Ok(())
}

/// Runs every trial of `spec` (concurrently; records stay in trial order),
/// computing the optimum once per graph. Any audit violation aborts the run.
pub fn run(spec: &ExperimentSpec) -> Result<RunResult, HarnessError> {
    spec.validate()?;
    let params = spec.params()?;
    let instance = materialize(spec)?;
    let opt = max_matching(&instance.graph).len();

    let records: Vec<TrialRecord> = (0..spec.trials)
        .into_par_iter()
        .map(|i| {
            let order_seed = (spec.order == OrderModel::Uniform).then(|| spec.order_seeds[i]);
            let sample_seed = spec.algorithm.is_randomized().then(|| spec.sample_seeds[i]);
            let order = match spec.order {
                OrderModel::File => instance.base_order.clone(),
                OrderModel::Adversarial => instance
                    .adversarial
                    .clone()
                    .expect("validated: adversarial implies half_trap"),
                OrderModel::Uniform => {
                    generators::uniform_order(instance.graph.m(), spec.order_seeds[i])
                }
            };
            let started = Instant::now();
            let (matched, audit) =
                run_algorithm(&instance.graph, &order, spec.algorithm, &params, sample_seed)?;
            let ms = started.elapsed().as_millis() as u64;
            check_audit(&audit, spec.algorithm, instance.graph.n_a(), instance.graph.n_b())?;
            Ok(TrialRecord {
                algorithm: spec.algorithm,
                graph_id: instance.id.clone(),
                order_seed,
                sample_seed,
                matched,
                opt,
                ratio: ratio_of(matched, opt),
                passes: audit.passes_used,
                peak_edges: audit.peak_retained_edges,
                ms,
            })
        })
        .collect::<Result<_, HarnessError>>()?;

    let aggregate = aggregate_ratios(&records);
    Ok(RunResult { records, aggregate })
}

fn aggregate_ratios(records: &[TrialRecord]) -> Aggregate {
    let n = records.len();
    let mut sum = 0.0;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for r in records {
        sum += r.ratio;
        min = min.min(r.ratio);
        max = max.max(r.ratio);
    }
    let mean = sum / n as f64;
    let stddev = if n >= 2 {
        let mut ss = 0.0;
        for r in records {
            let d = r.ratio - mean;
            ss += d * d;
        }
        (ss / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Aggregate {
        mean_ratio: mean,
        stddev_ratio: stddev,
        min_ratio: min,
        max_ratio: max,
        trials: n,
    }
}

pub const CSV_HEADER: &str =
    "algorithm,graph,order_seed,sample_seed,matched,opt,ratio,passes,peak_edges,ms";

fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

fn opt_seed(seed: Option<u64>) -> String {
    seed.map(|s| s.to_string()).unwrap_or_default()
}

/// Renders the pinned CSV layout: the header, one row per trial, and a final
/// `aggregate` row carrying mean, sample stddev, min, max, and trial count
/// in columns 3-7.
pub fn render_csv(result: &RunResult) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &result.records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.algorithm.as_str(),
            csv_field(&r.graph_id),
            opt_seed(r.order_seed),
            opt_seed(r.sample_seed),
            r.matched,
            r.opt,
            r.ratio,
            r.passes,
            r.peak_edges,
            r.ms
        )
        .expect("writing to String cannot fail");
    }
    let a = &result.aggregate;
    let graph_id = result
        .records
        .first()
        .map(|r| csv_field(&r.graph_id))
        .unwrap_or_default();
    writeln!(
        out,
        "aggregate,{},{},{},{},{},{},,,",
        graph_id, a.mean_ratio, a.stddev_ratio, a.min_ratio, a.max_ratio, a.trials
    )
    .expect("writing to String cannot fail");
    out
}

/// Convenience wrapper: run the spec and write the CSV next to it.
pub fn run_to_csv(spec: &ExperimentSpec, output: &Path) -> Result<RunResult, HarnessError> {
    let result = run(spec)?;
    std::fs::write(output, render_csv(&result)).map_err(|source| HarnessError::Io {
        path: output.display().to_string(),
        source,
    })?;
    Ok(result)
}

/// What `verify` runs: a benchmark algorithm, or the deliberately
/// non-streaming baseline that buffers the whole stream (a negative control
/// for the memory audit).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyTarget {
    Algorithm(AlgorithmId),
    StoreAll,
}

impl std::str::FromStr for VerifyTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "store_all" {
            Ok(VerifyTarget::StoreAll)
        } else {
            s.parse().map(VerifyTarget::Algorithm)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub target: String,
    pub matched: usize,
    pub opt: usize,
    pub audit: AuditReport,
    pub checks: Vec<Check>,
}

impl VerifyOutcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn store_all_baseline(
    graph: &BipartiteGraph,
    order: &ArrivalOrder,
) -> Result<(usize, AuditReport), HarnessError> {
    let mut src = StreamSource::new(graph, order)?;
    src.arm_pass_budget(1);
    let pass = src.open_pass()?;
    let mut buffered = Vec::with_capacity(graph.m());
    for (a, b) in pass {
        src.note_work(1);
        buffered.push((a, b));
        src.note_stored(1);
    }
    let mut m = crate::matching::Matching::new(graph.n_a(), graph.n_b());
    for (a, b) in buffered {
        m.try_insert(a, b);
    }
    src.note_stored(m.len());
    Ok((m.len(), src.audit_report()))
}

/// Runs one algorithm under instrumentation and evaluates every invariant
/// that applies to it against the exact oracle.
pub fn verify(
    graph: &BipartiteGraph,
    order: &ArrivalOrder,
    target: VerifyTarget,
    params: &AlgoParams,
    sample_seed: u64,
) -> Result<VerifyOutcome, HarnessError> {
    let opt_matching = max_matching(graph);
    let opt = opt_matching.len();
    let mut checks = Vec::new();

    let (target_name, matched, audit, output) = match target {
        VerifyTarget::StoreAll => {
            let (matched, audit) = store_all_baseline(graph, order)?;
            ("store_all".to_string(), matched, audit, None)
        }
        VerifyTarget::Algorithm(algorithm) => {
            let (matched, audit, output) =
                verify_output(graph, order, algorithm, params, sample_seed)?;
            (algorithm.as_str().to_string(), matched, audit, output)
        }
    };

    let declared = match target {
        VerifyTarget::StoreAll => 1,
        VerifyTarget::Algorithm(a) => a.declared_passes(),
    };
    checks.push(Check {
        name: "pass_count",
        passed: audit.passes_used == declared,
        detail: format!("used {} of {} declared", audit.passes_used, declared),
    });
    let budget = retained_edge_budget(graph.n_a(), graph.n_b());
    checks.push(Check {
        name: "peak_retained_edges",
        passed: audit.peak_retained_edges <= budget,
        detail: format!("{} <= {}", audit.peak_retained_edges, budget),
    });
    checks.push(Check {
        name: "per_edge_work",
        passed: audit.per_edge_work_bound_ok,
        detail: "constant work per arriving edge".to_string(),
    });

    if let Some(ref out) = output {
        match out {
            VerifiedOutput::Matching(m) => {
                checks.push(Check {
                    name: "matching_valid",
                    passed: is_valid_matching(graph, m),
                    detail: format!("{} edges", m.len()),
                });
            }
            VerifiedOutput::Semi(s) => {
                let edge_set: std::collections::HashSet<(usize, usize)> =
                    graph.edges().iter().copied().collect();
                let caps_ok = s
                    .edges()
                    .all(|(a, b)| edge_set.contains(&(a, b)) && s.deg_b(b) <= s.lambda());
                checks.push(Check {
                    name: "semi_degree_caps",
                    passed: caps_ok,
                    detail: format!("lambda = {}", s.lambda()),
                });
                checks.push(Check {
                    name: "semi_coverage",
                    passed: semi_coverage_holds(s.covered_a(), opt, s.lambda()),
                    detail: format!(
                        "covered {} >= {}/{} * {}",
                        s.covered_a(),
                        s.lambda(),
                        s.lambda() + 1,
                        opt
                    ),
                });
            }
        }
    }

    if let VerifyTarget::Algorithm(AlgorithmId::Greedy) = target {
        if let Some(VerifiedOutput::Matching(m)) = &output {
            let addable = graph
                .edges()
                .iter()
                .find(|&&(a, b)| !m.covers_a(a) && !m.covers_b(b));
            checks.push(Check {
                name: "greedy_maximality",
                passed: addable.is_none(),
                detail: match addable {
                    Some(&(a, b)) => format!("edge ({a}, {b}) is addable"),
                    None => "no addable edge".to_string(),
                },
            });
            // A maximal matching far from the optimum in size is also far
            // in overlap: edges shared with the optimum number at most
            // 2|M| - |M*|.
            let intersection = m
                .edges()
                .filter(|&(a, b)| opt_matching.contains(a, b))
                .count();
            let overlap_cap = 2 * m.len() as i64 - opt as i64;
            checks.push(Check {
                name: "intersection_bound",
                passed: (intersection as i64) <= overlap_cap,
                detail: format!("{intersection} shared edges <= {overlap_cap}"),
            });
            // And it contains many 3-augmentable edges: at least 2|M*| - 3|M|.
            let augmentable = count_3_augmentable(graph, m, &opt_matching)
                .expect("greedy output is maximal and the oracle maximum");
            let augmentable_floor = 2 * opt as i64 - 3 * m.len() as i64;
            checks.push(Check {
                name: "three_augmentable_bound",
                passed: augmentable as i64 >= augmentable_floor,
                detail: format!("{augmentable} 3-augmentable edges >= {augmentable_floor}"),
            });
        }
    }

    if let VerifyTarget::Algorithm(AlgorithmId::TwoPassDet) = target {
        checks.push(Check {
            name: "two_pass_det_floor",
            passed: det_floor_holds(matched, opt, params.lambda),
            detail: format!(
                "matched {} >= (1/2 + {}/{}) * {}",
                matched,
                params.lambda - 1,
                8 * params.lambda * params.lambda + 10 * params.lambda + 2,
                opt
            ),
        });
    }

    Ok(VerifyOutcome {
        target: target_name,
        matched,
        opt,
        audit,
        checks,
    })
}

enum VerifiedOutput {
    Matching(crate::matching::Matching),
    Semi(crate::matching::SemiMatching),
}

fn verify_output(
    graph: &BipartiteGraph,
    order: &ArrivalOrder,
    algorithm: AlgorithmId,
    params: &AlgoParams,
    sample_seed: u64,
) -> Result<(usize, AuditReport, Option<VerifiedOutput>), HarnessError> {
    let mut src = StreamSource::new(graph, order)?;
    src.arm_pass_budget(algorithm.declared_passes());
    let (matched, output) = match algorithm {
        AlgorithmId::Greedy => {
            let pass = src.open_pass()?;
            let m = greedy(pass, None);
            src.note_work(graph.m() as u64);
            src.note_stored(m.len());
            (m.len(), VerifiedOutput::Matching(m))
        }
        AlgorithmId::Semi => {
            let pass = src.open_pass()?;
            let s = semi(pass, params.lambda)?;
            src.note_work(graph.m() as u64);
            src.note_stored(s.len());
            (s.covered_a(), VerifiedOutput::Semi(s))
        }
        AlgorithmId::OnePass => {
            let m = one_pass_random_order(&mut src, params.split)?;
            (m.len(), VerifiedOutput::Matching(m))
        }
        AlgorithmId::SubsetGreedy => {
            let sample = sample_vertex_subset(graph.n_a(), params.p, sample_seed)?;
            let m = random_subset_greedy(&mut src, &sample)?;
            (m.len(), VerifiedOutput::Matching(m))
        }
        AlgorithmId::TwoPassRand => {
            let sample = sample_vertex_subset(graph.n_a(), params.p, sample_seed)?;
            let m = two_pass_randomized(&mut src, &sample)?;
            (m.len(), VerifiedOutput::Matching(m))
        }
        AlgorithmId::TwoPassDet => {
            let m = two_pass_deterministic(&mut src, params.lambda)?;
            (m.len(), VerifiedOutput::Matching(m))
        }
    };
    Ok((matched, src.audit_report(), Some(output)))
}
