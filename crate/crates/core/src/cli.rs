//! The `kwc` command line: argument parsing, dispatch and report output.
//!
//! Exit codes: 0 on success, 2 when a check found a violation, 1 on usage,
//! input or budget errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::codes::{hamming_bound, transport_bound};
use crate::constructions::{
    bnk_graph, construct_ft, construction_78, extend_to_maximal, free_edges, good_triple_count, good_triple_pipeline,
    good_triples, is_isp, is_maximal_independent, is_skew, isp_min_violations, matching_lower_bound, GoodTriple,
    SetPairFamily,
};
use crate::containers::{enumerate_containers, run_kw, verify_container_property, Schedule};
use crate::error::{Error, Result};
use crate::graphs::AuxGraph;
use crate::katona::{katona_k, monte_carlo_katona, Probability};
use crate::lattice::{BigCount, Family, SetMask};
use crate::oracles::{
    count_independent_sets, enumerate_maximal_independent_sets, log2_count, max_independent_set, EnumBudget,
};
use crate::supersat::{
    check_claim_cd, check_hamming, check_hamming_degree, check_kleitman, check_mono, check_prop64, check_tilt,
    check_transport, tilt_excess_bound, LemmaCheck, SearchMode,
};
use crate::verify::{run_criterion, CRITERIA};

#[derive(Parser, Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[command(name = "kwc", version, about = "Graph containers and supersaturation on the Boolean lattice")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GlobalOpts {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add wall-clock seconds to the report (makes it run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub budget_nodes: u64,
    /// Seconds per oracle call.
    #[arg(long, global = true, default_value_t = 60)]
    pub timeout: u64,
    #[arg(long, global = true, default_value_t = 4096)]
    pub max_vertices: usize,
}

impl GlobalOpts {
    pub fn budget(&self) -> EnumBudget {
        EnumBudget {
            max_vertices: self.max_vertices,
            max_nodes_expanded: self.budget_nodes,
            timeout: Duration::from_secs(self.timeout),
        }
    }
}

#[derive(ValueEnum, Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Count independent sets, or find a maximum one, or count maximal ones.
    Count(CountArgs),
    /// Run the container algorithm over every independent set of a graph.
    Containers(ContainersArgs),
    /// Search for the sparsest families of a given size.
    Supersat(SupersatArgs),
    /// Exact packing bounds.
    Bounds(BoundsArgs),
    /// Largest t-intersecting families in random subfamilies of P(n).
    RandomKatona(KatonaArgs),
    /// Explicit constructions and set-pair checks.
    Construct(ConstructArgs),
    /// Run the acceptance suite.
    VerifyAll(VerifyArgs),
}

#[derive(ValueEnum, Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    Independent,
    Max,
    Maximal,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CountArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long, value_enum, default_value_t = CountMode::Independent)]
    pub mode: CountMode,
    /// With `maximal`, list every maximal independent set.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ContainersArgs {
    #[arg(long)]
    pub graph: String,
    /// Comma-separated, strictly decreasing.
    #[arg(long, value_delimiter = ',', required = true)]
    pub delta: Vec<u64>,
    /// One threshold per stage change.
    #[arg(long = "switch", value_delimiter = ',')]
    pub switch: Vec<usize>,
    /// Also enumerate all realizable fingerprints of at most this size.
    #[arg(long)]
    pub max_s: Option<usize>,
    /// Include the full audit in the report.
    #[arg(long)]
    pub verify: bool,
    /// Run once on this independent family and report the trace.
    #[arg(long)]
    pub family: Option<PathBuf>,
}

#[derive(ValueEnum, Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    Kleitman,
    Hamming,
    HammingDegree,
    Tilt,
    Transport,
    Mono,
    ClaimCd,
    Prop64,
}

#[derive(ValueEnum, Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SupersatArgs {
    #[arg(long, value_enum)]
    pub lemma: Lemma,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Red colour class as a hex mask.
    #[arg(long = "R")]
    pub red: Option<String>,
    #[arg(long = "N")]
    pub big_n: Option<u32>,
    #[arg(long)]
    pub x: Option<u64>,
    /// Family size for `hamming-degree`.
    #[arg(long)]
    pub size: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 32)]
    pub trials: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum BoundFamily {
    Hamming,
    Transport,
    Katona,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub family: BoundFamily,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct KatonaArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub t: u32,
    /// `NUM/DEN`.
    #[arg(long)]
    pub p: String,
    #[arg(long, default_value_t = 8)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum What {
    GoodTriples,
    #[value(name = "fT", alias = "ft")]
    #[serde(rename = "fT")]
    Ft,
    Matching,
    C78,
    Pipeline,
    IspCheck,
    SkewCheck,
    IspMin,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub what: What,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Element whose matching is used by `matching`.
    #[arg(long)]
    pub i: Option<u32>,
    /// Base set `B` of a good triple, as a hex mask.
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    /// Free-edge choices for `fT` as a 0/1 string; defaults to all lower ends.
    #[arg(long)]
    pub choices: Option<String>,
    /// Size bounds for `skew-check`.
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
    /// Set-pair file for the checks.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Ground set and family size for `isp-min`.
    #[arg(long)]
    pub ground: Option<u32>,
    #[arg(long)]
    pub size: Option<usize>,
    /// Family index for `c78`, written with `--emit`.
    #[arg(long)]
    pub index: Option<u64>,
    /// Write the constructed family in text format.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(ValueEnum, Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Desk,
}

#[derive(Args, Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Level::Desk)]
    pub level: Level,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
}

/// A command's result before the report envelope is added.
struct Outcome {
    fields: Map<String, Value>,
    table: Option<Table>,
    pass: bool,
}

struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Outcome {
    fn ok(fields: Value) -> Outcome {
        Outcome::checked(fields, true)
    }

    fn checked(fields: Value, pass: bool) -> Outcome {
        let fields = match fields {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("result".into(), other);
                m
            }
        };
        Outcome {
            fields,
            table: None,
            pass,
        }
    }

    fn with_table(mut self, headers: &[&str], rows: Vec<Vec<String>>) -> Outcome {
        self.table = Some(Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows,
        });
        self
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParams(format!("--{flag} is required here")))
}

fn parse_hex(s: &str) -> Result<SetMask> {
    let hex = s.trim().trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(hex, 16)
        .map(SetMask)
        .map_err(|_| Error::InvalidParams(format!("`{s}` is not a hex mask")))
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::InvalidParams(format!("cannot write {}: {e}", path.display())))
}

fn rational(r: &BigRational) -> Value {
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
        "decimal": r.to_f64(),
    })
}

fn count_cmd(a: &CountArgs, g: &GlobalOpts) -> Result<Outcome> {
    let graph = AuxGraph::parse(&a.graph)?;
    let budget = g.budget();
    let vertices = |set: &[usize]| -> Vec<String> { set.iter().map(|&v| graph.vertex(v).to_string()).collect() };
    let (count, witness) = match a.mode {
        CountMode::Independent => (count_independent_sets(&graph, &budget)?, None),
        CountMode::Max => {
            let (size, w) = max_independent_set(&graph, &budget)?;
            (BigCount::from(size), Some(to_value(&vertices(&w))))
        }
        CountMode::Maximal => {
            let (count, sets) = enumerate_maximal_independent_sets(&graph, &budget, a.witness)?;
            let w = sets.map(|s| to_value(&s.iter().map(|set| vertices(set)).collect::<Vec<_>>()));
            (count, w)
        }
    };
    let mut out = json!({
        "graph": graph.spec().to_string(),
        "mode": a.mode,
        "count": count.to_string(),
        "log2_count": log2_count(&count),
    });
    if let Some(w) = witness {
        out["witness"] = w;
    }
    Ok(Outcome::ok(out))
}

fn containers_cmd(a: &ContainersArgs, g: &GlobalOpts) -> Result<Outcome> {
    let graph = AuxGraph::parse(&a.graph)?;
    let schedule = Schedule::from_lists(&a.delta, &a.switch)?;
    let budget = g.budget();
    let schedule_json = json!({ "delta": a.delta, "switch": a.switch });
    let names = |set: &[usize]| -> Vec<String> { set.iter().map(|&v| graph.vertex(v).to_string()).collect() };
    if let Some(path) = &a.family {
        let family = Family::parse_text(&read_file(path)?)?;
        let run = run_kw(&graph, &graph.indices_of(&family)?, &schedule)?;
        return Ok(Outcome::ok(json!({
            "graph": graph.spec().to_string(),
            "schedule": schedule_json,
            "fingerprint": names(&run.fingerprint),
            "container": names(&run.container),
            "terminated": run.terminated,
            "trace": run.trace,
        })));
    }
    let report = verify_container_property(&graph, &schedule, &budget)?;
    let mut out = json!({
        "graph": graph.spec().to_string(),
        "schedule": schedule_json,
        "n_independent_sets": report.n_independent_sets,
        "covered": report.all_covered,
        "max_fingerprint": report.max_fingerprint,
        "max_container": report.max_container,
        "n_containers": report.n_containers,
    });
    if a.verify {
        out["audit"] = json!({
            "fingerprints_inside": report.fingerprints_inside,
            "replay_deterministic": report.replay_deterministic,
            "well_defined": report.well_defined,
            "fingerprint_bound": report.fingerprint_bound,
        });
    }
    if let Some(max_s) = a.max_s {
        let runs = enumerate_containers(&graph, &schedule, max_s, budget.max_nodes_expanded, g.threads)?;
        let mut distinct: Vec<&Vec<usize>> = runs.iter().map(|r| &r.container).collect();
        distinct.sort();
        distinct.dedup();
        out["enumerated"] = json!({
            "max_s": max_s,
            "realizable_fingerprints": runs.len(),
            "distinct_containers": distinct.len(),
            "largest_container": distinct.iter().map(|c| c.len()).max().unwrap_or(0),
        });
    }
    Ok(Outcome::checked(out, report.passed()))
}

fn supersat_cmd(a: &SupersatArgs, g: &GlobalOpts) -> Result<Outcome> {
    let budget = g.budget();
    let mode = match a.mode {
        ModeArg::Exhaustive => SearchMode::Exhaustive,
        ModeArg::Random => SearchMode::Random {
            trials: a.trials,
            seed: a.seed,
        },
    };
    let n = a.n;
    let x = || need(a.x, "x");
    let t = || need(a.t, "t");
    let mut extra = Map::new();
    let checks: Vec<LemmaCheck> = match a.lemma {
        Lemma::Kleitman => vec![check_kleitman(n, x()?, mode, &budget)?],
        Lemma::Hamming => vec![check_hamming(n, t()?, x()?, mode, &budget)?],
        Lemma::HammingDegree => vec![check_hamming_degree(n, t()?, need(a.size, "size")?, mode, &budget)?],
        Lemma::Transport => vec![check_transport(n, need(a.k, "k")?, t()?, x()?, mode, &budget)?],
        Lemma::Tilt => {
            let (p, q) = (need(a.p, "p")?, need(a.q, "q")?);
            let c = check_tilt(n, p, q, x()?, mode, &budget)?;
            let graph = crate::graphs::build_graph(n, crate::graphs::GraphKind::Tilt { p, q })?;
            let excess = tilt_excess_bound(&graph, c.size, &budget)?;
            extra.insert("excess_bound".into(), json!(excess));
            extra.insert("excess_bound_holds".into(), json!(c.observed_min >= excess));
            vec![c]
        }
        Lemma::Mono => {
            let red = parse_hex(&need(a.red.clone(), "R")?)?;
            vec![check_mono(n, red, x()?, mode, &budget)?]
        }
        Lemma::ClaimCd => check_claim_cd(n, mode, &budget)?,
        Lemma::Prop64 => vec![check_prop64(n, need(a.big_n, "N")?, x()?, &budget)?],
    };
    let pass = checks.iter().all(|c| c.pass);
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                c.lemma.clone(),
                c.size.to_string(),
                c.bound.clone(),
                c.required.to_string(),
                c.observed_min.to_string(),
                c.exhaustive.to_string(),
                c.pass.to_string(),
            ]
        })
        .collect();
    let mut out = if let [single] = checks.as_slice() {
        to_value(single)
    } else {
        json!({ "lemma": "claim-cd", "checks": checks })
    };
    if let Value::Object(m) = &mut out {
        m.extend(extra);
    }
    Ok(Outcome::checked(out, pass).with_table(
        &["lemma", "size", "bound", "required", "observed_min", "exhaustive", "pass"],
        rows,
    ))
}

fn bounds_cmd(a: &BoundsArgs) -> Result<Outcome> {
    let (value, params) = match a.family {
        BoundFamily::Hamming => {
            let t = need(a.t, "t")?;
            (hamming_bound(a.n, t), json!({ "n": a.n, "t": t }))
        }
        BoundFamily::Transport => {
            let (k, d) = (need(a.k, "k")?, need(a.d, "d")?);
            (transport_bound(a.n, k, d)?, json!({ "n": a.n, "k": k, "d": d }))
        }
        BoundFamily::Katona => {
            let t = need(a.t, "t")?;
            let k = katona_k(a.n, t)?;
            (BigRational::from_integer(k.into()), json!({ "n": a.n, "t": t }))
        }
    };
    let mut out = rational(&value);
    out["family"] = to_value(&a.family);
    out["params"] = params;
    Ok(Outcome::ok(out))
}

fn katona_cmd(a: &KatonaArgs, g: &GlobalOpts) -> Result<Outcome> {
    let p: Probability = a.p.parse()?;
    let report = monte_carlo_katona(a.n, a.t, p, a.trials, a.seed, &g.budget(), g.threads)?;
    let rows = report
        .per_trial
        .iter()
        .map(|r| vec![r.trial.to_string(), r.sample_size.to_string(), r.max.to_string(), r.ratio.to_string()])
        .collect();
    Ok(Outcome::ok(to_value(&report)).with_table(&["trial", "sample_size", "max", "ratio"], rows))
}

fn parse_choices(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidParams(format!("choices must be a 0/1 string, got `{s}`"))),
        })
        .collect()
}

fn construct_cmd(a: &ConstructArgs, g: &GlobalOpts) -> Result<Outcome> {
    let budget = g.budget();
    let n = || need(a.n, "n");
    let k = || need(a.k, "k");
    let emit = |text: &str| -> Result<()> {
        match &a.emit {
            Some(path) => write_file(path, text),
            None => Ok(()),
        }
    };
    match a.what {
        What::GoodTriples => {
            let (n, k) = (n()?, k()?);
            let triples = good_triples(n, k)?;
            let rows = triples
                .iter()
                .map(|t| vec![t.b.to_string(), t.r.to_string(), t.s.to_string()])
                .collect();
            Ok(Outcome::ok(json!({
                "n": n,
                "k": k,
                "count": triples.len().to_string(),
                "formula_count": good_triple_count(n, k).to_string(),
                "triples": triples.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            }))
            .with_table(&["B", "r", "s"], rows))
        }
        What::Ft => {
            let (n, k) = (n()?, k()?);
            let t = GoodTriple::new(n, k, parse_hex(&need(a.base.clone(), "base")?)?, need(a.r, "r")?, need(a.s, "s")?)?;
            let free = free_edges(&t, n, k).len();
            let choices = match &a.choices {
                Some(c) => parse_choices(c)?,
                None => vec![false; free],
            };
            let family = construct_ft(&t, n, k, &choices)?;
            let graph = bnk_graph(n, k)?;
            let independent = graph.is_independent(&graph.indices_of(&family)?);
            emit(&family.to_text())?;
            Ok(Outcome::checked(
                json!({
                    "triple": t.to_string(),
                    "partner": t.partner().to_string(),
                    "free_edges": free,
                    "size": family.len(),
                    "members": family.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    "independent": independent,
                }),
                independent,
            ))
        }
        What::Matching => {
            let (n, k, i) = (n()?, k()?, need(a.i, "i")?);
            let graph = bnk_graph(n, k)?;
            let edges = crate::lattice::binomial_u64(n as u64 - 1, k as u64).unwrap_or(u64::MAX);
            if edges > 16 {
                return Err(Error::BudgetExceeded(format!("2^{edges} transversals")));
            }
            let mut extensions = std::collections::BTreeSet::new();
            let (mut count, mut independent, mut maximal) = (0u64, true, true);
            for f in matching_lower_bound(n, k, i)? {
                let idx = graph.indices_of(&f)?;
                independent &= graph.is_independent(&idx);
                let ext = extend_to_maximal(&graph, &idx)?;
                maximal &= is_maximal_independent(&graph, &ext);
                extensions.insert(ext);
                count += 1;
            }
            let pass = independent && maximal && extensions.len() as u64 == count;
            Ok(Outcome::checked(
                json!({
                    "n": n, "k": k, "i": i,
                    "transversals": count.to_string(),
                    "all_independent": independent,
                    "distinct_maximal_extensions": extensions.len(),
                    "all_maximal": maximal,
                }),
                pass,
            ))
        }
        What::C78 => {
            let c = construction_78(n()?)?;
            let count = c.count();
            if let Some(index) = a.index {
                if BigCount::from(index) >= count {
                    return Err(Error::InvalidParams(format!("index {index} out of range (count {count})")));
                }
                let fam = c.family_at(index);
                emit(&fam.to_text())?;
                let skew = is_skew(&fam, c.n / 2, c.n / 2);
                return Ok(Outcome::checked(
                    json!({ "n": c.n, "index": index, "pairs": fam.len(), "skew": skew, "count": count.to_string() }),
                    skew,
                ));
            }
            if count > BigCount::from(budget.max_nodes_expanded) {
                return Err(Error::BudgetExceeded(format!("{count} families")));
            }
            let mut seen = std::collections::BTreeSet::new();
            let mut all_skew = true;
            for fam in c.families() {
                all_skew &= is_skew(&fam, c.n / 2, c.n / 2);
                seen.insert(fam);
            }
            let distinct = BigCount::from(seen.len()) == count;
            emit(&c.full_family().to_text())?;
            Ok(Outcome::checked(
                json!({
                    "n": c.n,
                    "count": count.to_string(),
                    "log2_count": log2_count(&count),
                    "bad_pairs": c.f1.len(),
                    "free_pairs": c.f2_double_prime.len(),
                    "all_distinct": distinct,
                    "all_skew": all_skew,
                }),
                distinct && all_skew,
            ))
        }
        What::Pipeline => {
            let r = good_triple_pipeline(n()?, k()?, &budget)?;
            let pass = r.all_independent && r.two_to_one && r.consistent;
            Ok(Outcome::checked(to_value(&r), pass))
        }
        What::IspCheck => {
            let fam = SetPairFamily::parse_text(&read_file(&need(a.input.clone(), "input")?)?)?;
            let n = a.n.unwrap_or(fam.ground);
            let ok = is_isp(&fam, n);
            Ok(Outcome::checked(json!({ "pairs": fam.len(), "n": n, "isp": ok }), ok))
        }
        What::SkewCheck => {
            let fam = SetPairFamily::parse_text(&read_file(&need(a.input.clone(), "input")?)?)?;
            let (sa, sb) = (need(a.a, "a")?, need(a.b, "b")?);
            let ok = is_skew(&fam, sa, sb);
            Ok(Outcome::checked(json!({ "pairs": fam.len(), "a": sa, "b": sb, "skew": ok }), ok))
        }
        What::IspMin => {
            let ground = need(a.ground, "ground")?;
            let n = a.n.unwrap_or(ground);
            let (v, fam) = isp_min_violations(ground, n, need(a.size, "size")?, &budget)?;
            emit(&fam.to_text())?;
            Ok(Outcome::ok(json!({
                "ground": ground,
                "n": n,
                "size": fam.len(),
                "min_violations": v,
                "witness": fam.pairs.iter().map(|(x, y)| format!("{x} | {y}")).collect::<Vec<_>>(),
            })))
        }
    }
}

fn verify_cmd(a: &VerifyArgs, g: &GlobalOpts, progress: &mut dyn Write) -> Result<Outcome> {
    let ids: Vec<u32> = if a.only.is_empty() {
        CRITERIA.iter().map(|(i, _)| *i).collect()
    } else {
        a.only.clone()
    };
    if let Some(bad) = ids.iter().find(|i| !CRITERIA.iter().any(|(c, _)| c == *i)) {
        return Err(Error::InvalidParams(format!("no criterion {bad}")));
    }
    let budget = g.budget().unlimited_nodes();
    let mut results = Vec::new();
    for id in ids {
        let r = run_criterion(id, &budget, g.threads, g.timing);
        let _ = writeln!(progress, "criterion {:>2} {:<36} {}", r.id, r.title, if r.pass { "PASS" } else { "FAIL" });
        results.push(r);
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    let rows = results
        .iter()
        .map(|r| vec![r.id.to_string(), r.title.clone(), r.pass.to_string()])
        .collect();
    Ok(Outcome::checked(
        json!({
            "level": a.level,
            "criteria": results,
            "passed": results.len() - failed,
            "failed": failed,
        }),
        failed == 0,
    )
    .with_table(&["id", "title", "pass"], rows))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Count(_) => "count",
        Command::Containers(_) => "containers",
        Command::Supersat(_) => "supersat",
        Command::Bounds(_) => "bounds",
        Command::RandomKatona(_) => "random-katona",
        Command::Construct(_) => "construct",
        Command::VerifyAll(_) => "verify-all",
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn render_csv(report: &Map<String, Value>, table: Option<&Table>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    match table {
        Some(t) => {
            w.write_record(&t.headers).expect("in-memory write");
            for row in &t.rows {
                w.write_record(row).expect("in-memory write");
            }
        }
        None => {
            let fields: Vec<(&String, &Value)> = report.iter().filter(|(k, _)| k.as_str() != "config").collect();
            w.write_record(fields.iter().map(|(k, _)| k.as_str())).expect("in-memory write");
            w.write_record(fields.iter().map(|(_, v)| scalar(v))).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// Builds the full report for a parsed command line.
fn execute(cli: &Cli, progress: &mut dyn Write) -> Result<(String, bool)> {
    let started = Instant::now();
    let g = &cli.global;
    let outcome = match &cli.command {
        Command::Count(a) => count_cmd(a, g)?,
        Command::Containers(a) => containers_cmd(a, g)?,
        Command::Supersat(a) => supersat_cmd(a, g)?,
        Command::Bounds(a) => bounds_cmd(a)?,
        Command::RandomKatona(a) => katona_cmd(a, g)?,
        Command::Construct(a) => construct_cmd(a, g)?,
        Command::VerifyAll(a) => verify_cmd(a, g, progress)?,
    };
    let mut report = Map::new();
    report.insert("tool".into(), json!("kwc"));
    report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    report.insert("command".into(), json!(command_name(&cli.command)));
    report.insert("config".into(), to_value(cli));
    report.extend(outcome.fields);
    report.insert("pass".into(), json!(outcome.pass));
    if g.timing {
        report.insert("wall_clock_seconds".into(), json!(started.elapsed().as_secs_f64()));
    }
    let text = match g.format {
        Format::Json => serde_json::to_string_pretty(&Value::Object(report)).expect("report serializes") + "\n",
        Format::Csv => render_csv(&report, outcome.table.as_ref()),
    };
    Ok((text, outcome.pass))
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Reports go to `stdout` unless `--out` is given.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, stderr) {
        Ok((text, pass)) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write report: {e}");
                return 1;
            }
            if pass {
                0
            } else {
                let _ = writeln!(stderr, "check failed");
                2
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("kwc").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn json_of(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn count_antichains() {
        let (code, out, _) = run_capture(&["count", "--graph", "comparability:n=3"]);
        assert_eq!(code, 0);
        assert_eq!(json_of(&out)["count"], "20");
    }

    #[test]
    fn hamming_bound_report() {
        let (code, out, _) = run_capture(&["bounds", "--family", "hamming", "--n", "7", "--t", "1"]);
        assert_eq!(code, 0);
        let v = json_of(&out);
        assert_eq!((v["num"].as_str(), v["den"].as_str()), (Some("16"), Some("1")));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["count"]).0, 1);
        assert_eq!(run_capture(&["bogus"]).0, 1);
        assert_eq!(run_capture(&["count", "--graph", "nope:n=3"]).0, 1);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn budget_errors_exit_one() {
        let (code, _, err) = run_capture(&["count", "--graph", "comparability:n=6", "--budget-nodes", "100"]);
        assert_eq!(code, 1, "{err}");
    }

    #[test]
    fn failing_check_exits_two() {
        let (code, out, _) = run_capture(&["supersat", "--lemma", "tilt", "--n", "3", "--p", "1", "--q", "2", "--x", "2"]);
        assert_eq!(code, 2);
        let v = json_of(&out);
        assert_eq!(v["pass"], false);
        assert_eq!(v["excess_bound_holds"], true);
    }

    #[test]
    fn config_round_trips() {
        let cli = Cli::try_parse_from(["kwc", "--threads", "3", "containers", "--graph", "bnk:n=3,k=1", "--delta", "2,1", "--switch", "4"])
            .unwrap();
        let text = serde_json::to_string(&cli).unwrap();
        let back: Cli = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cli);
    }

    #[test]
    fn csv_output() {
        let (code, out, _) = run_capture(&["--format", "csv", "bounds", "--family", "transport", "--n", "4", "--k", "2", "--d", "3"]);
        assert_eq!(code, 0);
        let mut r = csv::Reader::from_reader(out.as_bytes());
        let headers = r.headers().unwrap().clone();
        let row = r.records().next().unwrap().unwrap();
        let get = |k: &str| &row[headers.iter().position(|h| h == k).unwrap()];
        assert_eq!((get("num"), get("den")), ("3", "2"));
    }
}
