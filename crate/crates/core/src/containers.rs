//! The Kleitman-Winston graph container algorithm.
//!
//! Given an independent set `I`, the algorithm repeatedly takes the
//! maximum-degree vertex `u` of the shrinking graph (ties by canonical
//! index). If `u` is outside `I` it is dropped. If `u` is in `I` it joins the
//! fingerprint `S`; with degree at least the current `delta` it is removed
//! together with its neighborhood in the original graph, otherwise the run
//! stops and the remaining vertices form `f(S)`. The container is `S ∪ f(S)`.
//!
//! Because every choice depends only on `S`, the same walk can be replayed
//! from a fingerprint alone; [`replay`] does exactly that.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::AuxGraph;
use crate::oracles::{for_each_independent_set, DenseGraph, EnumBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    /// Advance to the next stage once fewer than this many vertices remain.
    pub switch_below: Option<usize>,
    pub delta: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Schedule {
    stages: Vec<Stage>,
}

impl Schedule {
    pub fn new(stages: Vec<Stage>) -> Result<Schedule> {
        if stages.is_empty() {
            return Err(Error::InvalidSchedule("empty schedule".into()));
        }
        if stages.iter().any(|s| s.delta == 0) {
            return Err(Error::InvalidSchedule("delta must be positive".into()));
        }
        if stages.windows(2).any(|w| w[1].delta >= w[0].delta) {
            return Err(Error::InvalidSchedule("deltas must strictly decrease".into()));
        }
        if stages[..stages.len() - 1].iter().any(|s| s.switch_below.is_none()) {
            return Err(Error::InvalidSchedule(
                "only the final stage may omit its switch threshold".into(),
            ));
        }
        Ok(Schedule { stages })
    }

    pub fn single(delta: u64) -> Result<Schedule> {
        Schedule::new(vec![Stage {
            switch_below: None,
            delta,
        }])
    }

    /// Runs with `first` until fewer than `switch_below` vertices remain, then
    /// with `second`.
    pub fn two_stage(first: u64, switch_below: usize, second: u64) -> Result<Schedule> {
        Schedule::new(vec![
            Stage {
                switch_below: Some(switch_below),
                delta: first,
            },
            Stage {
                switch_below: None,
                delta: second,
            },
        ])
    }

    /// From parallel lists as taken on the command line; `switches` has one
    /// entry fewer than `deltas`.
    pub fn from_lists(deltas: &[u64], switches: &[usize]) -> Result<Schedule> {
        if deltas.is_empty() {
            return Err(Error::InvalidSchedule("empty schedule".into()));
        }
        if switches.len() + 1 != deltas.len() {
            return Err(Error::InvalidSchedule(format!(
                "{} deltas need {} switch thresholds, got {}",
                deltas.len(),
                deltas.len() - 1,
                switches.len()
            )));
        }
        Schedule::new(
            deltas
                .iter()
                .enumerate()
                .map(|(i, &delta)| Stage {
                    switch_below: switches.get(i).copied(),
                    delta,
                })
                .collect(),
        )
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn final_delta(&self) -> u64 {
        self.stages.last().unwrap().delta
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Skip,
    Expand,
    Terminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub vertex: usize,
    pub degree: usize,
    pub stage: usize,
    pub branch: Branch,
    /// Vertices removed by this step, `vertex` included.
    pub removed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainerRun {
    /// Sorted vertex indices of `S`.
    pub fingerprint: Vec<usize>,
    /// Sorted vertex indices of `S ∪ f(S)`.
    pub container: Vec<usize>,
    pub trace: Vec<TraceStep>,
    /// False when the graph emptied without a low-degree member of `I`.
    pub terminated: bool,
}

/// A graph with neighbor lists and initial degrees cached, ready for many
/// runs.
pub struct ContainerEngine<'g> {
    graph: &'g AuxGraph,
    neighbors: Vec<Vec<usize>>,
}

impl<'g> ContainerEngine<'g> {
    pub fn new(graph: &'g AuxGraph) -> ContainerEngine<'g> {
        let neighbors = (0..graph.order()).map(|i| graph.neighbors(i)).collect();
        ContainerEngine { graph, neighbors }
    }

    pub fn graph(&self) -> &AuxGraph {
        self.graph
    }

    fn execute(&self, schedule: &Schedule, in_set: &dyn Fn(usize) -> bool) -> ContainerRun {
        let order = self.neighbors.len();
        let mut present = vec![true; order];
        let mut degree: Vec<usize> = self.neighbors.iter().map(Vec::len).collect();
        let mut queue: BTreeSet<(Reverse<usize>, usize)> =
            (0..order).map(|v| (Reverse(degree[v]), v)).collect();
        let mut remaining = order;
        let mut stage = 0;
        let stages = schedule.stages();
        let mut fingerprint = Vec::new();
        let mut trace = Vec::new();
        let mut terminated = false;

        let remove = |v: usize,
                          present: &mut Vec<bool>,
                          degree: &mut Vec<usize>,
                          queue: &mut BTreeSet<(Reverse<usize>, usize)>| {
            present[v] = false;
            queue.remove(&(Reverse(degree[v]), v));
            for &w in &self.neighbors[v] {
                if present[w] {
                    queue.remove(&(Reverse(degree[w]), w));
                    degree[w] -= 1;
                    queue.insert((Reverse(degree[w]), w));
                }
            }
        };

        while let Some(&(Reverse(deg), u)) = queue.first() {
            while stage + 1 < stages.len()
                && stages[stage].switch_below.is_some_and(|th| remaining < th)
            {
                stage += 1;
            }
            let delta = stages[stage].delta;
            let step = trace.len() + 1;
            if !in_set(u) {
                remove(u, &mut present, &mut degree, &mut queue);
                remaining -= 1;
                trace.push(TraceStep {
                    step,
                    vertex: u,
                    degree: deg,
                    stage,
                    branch: Branch::Skip,
                    removed: 1,
                });
            } else if deg as u64 >= delta {
                fingerprint.push(u);
                remove(u, &mut present, &mut degree, &mut queue);
                let mut removed = 1;
                for &w in &self.neighbors[u] {
                    if present[w] {
                        remove(w, &mut present, &mut degree, &mut queue);
                        removed += 1;
                    }
                }
                remaining -= removed;
                trace.push(TraceStep {
                    step,
                    vertex: u,
                    degree: deg,
                    stage,
                    branch: Branch::Expand,
                    removed,
                });
            } else {
                fingerprint.push(u);
                remove(u, &mut present, &mut degree, &mut queue);
                trace.push(TraceStep {
                    step,
                    vertex: u,
                    degree: deg,
                    stage,
                    branch: Branch::Terminate,
                    removed: 1,
                });
                terminated = true;
                break;
            }
        }

        let mut container: Vec<usize> = (0..order).filter(|&v| present[v]).collect();
        if !terminated {
            debug_assert!(container.is_empty());
        }
        container.extend(fingerprint.iter().copied());
        container.sort_unstable();
        fingerprint.sort_unstable();
        ContainerRun {
            fingerprint,
            container,
            trace,
            terminated,
        }
    }

    /// Runs the algorithm for the independent set `independent` (vertex
    /// indices, any order).
    pub fn run(&self, independent: &[usize], schedule: &Schedule) -> Result<ContainerRun> {
        let mut member = vec![false; self.neighbors.len()];
        for &v in independent {
            if v >= member.len() {
                return Err(Error::NotAVertex(format!("index {v}")));
            }
            member[v] = true;
        }
        for &v in independent {
            if let Some(&w) = self.neighbors[v].iter().find(|&&w| member[w]) {
                return Err(Error::NotIndependent(v.min(w), v.max(w)));
            }
        }
        Ok(self.execute(schedule, &|u| member[u]))
    }

    /// Reconstructs the container from a fingerprint alone.
    pub fn replay(&self, fingerprint: &[usize], schedule: &Schedule) -> Result<Vec<usize>> {
        let mut member = vec![false; self.neighbors.len()];
        for &v in fingerprint {
            if v >= member.len() {
                return Err(Error::NotAVertex(format!("index {v}")));
            }
            member[v] = true;
        }
        let run = self.execute(schedule, &|u| member[u]);
        let mut wanted: Vec<usize> = fingerprint.to_vec();
        wanted.sort_unstable();
        wanted.dedup();
        if run.fingerprint != wanted {
            let missing: Vec<usize> = wanted
                .iter()
                .filter(|v| run.fingerprint.binary_search(v).is_err())
                .copied()
                .collect();
            return Err(Error::InvalidFingerprint(format!(
                "vertices {missing:?} were never selected"
            )));
        }
        Ok(run.container)
    }
}

pub fn run_kw(graph: &AuxGraph, independent: &[usize], schedule: &Schedule) -> Result<ContainerRun> {
    ContainerEngine::new(graph).run(independent, schedule)
}

pub fn replay(graph: &AuxGraph, fingerprint: &[usize], schedule: &Schedule) -> Result<Vec<usize>> {
    ContainerEngine::new(graph).replay(fingerprint, schedule)
}

/// `|S| <= |V| / delta_final + stages`, checked in integers.
pub fn fingerprint_bound_holds(order: usize, schedule: &Schedule, fingerprint_len: usize) -> bool {
    let delta = schedule.final_delta() as u128;
    (fingerprint_len as u128) * delta <= order as u128 + schedule.stages().len() as u128 * delta
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintContainer {
    pub fingerprint: Vec<usize>,
    pub container: Vec<usize>,
}

/// Every realizable fingerprint of size at most `max_s` with its container,
/// ordered by fingerprint (shorter first, then lexicographic).
pub fn enumerate_containers(
    graph: &AuxGraph,
    schedule: &Schedule,
    max_s: usize,
    max_candidates: u64,
    threads: usize,
) -> Result<Vec<FingerprintContainer>> {
    let order = graph.order();
    let mut total: u128 = 0;
    for size in 0..=max_s.min(order) {
        total += crate::lattice::binomial_u64(order as u64, size as u64).unwrap_or(u64::MAX) as u128;
        if total > max_candidates as u128 {
            return Err(Error::BudgetExceeded(format!(
                "more than {max_candidates} candidate fingerprints"
            )));
        }
    }
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(total as usize);
    for size in 0..=max_s.min(order) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            candidates.push(combo.clone());
            // advance to the next combination in lexicographic order
            let mut i = size;
            while i > 0 && combo[i - 1] == order - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    let engine = ContainerEngine::new(graph);
    let threads = threads.max(1);
    let chunk = candidates.len().div_ceil(threads).max(1);
    let results: Vec<Vec<FingerprintContainer>> = std::thread::scope(|scope| {
        let handles: Vec<_> = candidates
            .chunks(chunk)
            .map(|part| {
                let engine = &engine;
                scope.spawn(move || {
                    part.iter()
                        .filter_map(|s| {
                            engine.replay(s, schedule).ok().map(|container| FingerprintContainer {
                                fingerprint: s.clone(),
                                container,
                            })
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    Ok(results.into_iter().flatten().collect())
}

/// Distinct containers with the number of fingerprints producing each.
pub fn container_multiplicities(runs: &[FingerprintContainer]) -> Vec<(Vec<usize>, usize)> {
    let mut counts: HashMap<&[usize], usize> = HashMap::new();
    for r in runs {
        *counts.entry(r.container.as_slice()).or_default() += 1;
    }
    let mut out: Vec<(Vec<usize>, usize)> =
        counts.into_iter().map(|(c, m)| (c.to_vec(), m)).collect();
    out.sort();
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub n_independent_sets: u64,
    pub max_fingerprint: usize,
    pub max_container: usize,
    pub n_containers: usize,
    /// Every independent set lies in its run's container.
    pub all_covered: bool,
    /// Every fingerprint is a subset of its independent set.
    pub fingerprints_inside: bool,
    /// Replaying each fingerprint reproduces the run's container.
    pub replay_deterministic: bool,
    /// Equal fingerprints always gave equal containers.
    pub well_defined: bool,
    pub fingerprint_bound: bool,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.all_covered
            && self.fingerprints_inside
            && self.replay_deterministic
            && self.well_defined
            && self.fingerprint_bound
    }
}

/// Runs the algorithm on every independent set of `graph` and audits the
/// container properties.
pub fn verify_container_property(
    graph: &AuxGraph,
    schedule: &Schedule,
    budget: &EnumBudget,
) -> Result<PropertyReport> {
    let dense = DenseGraph::from_aux(graph, budget)?;
    let engine = ContainerEngine::new(graph);
    let mut report = PropertyReport {
        all_covered: true,
        fingerprints_inside: true,
        replay_deterministic: true,
        well_defined: true,
        fingerprint_bound: true,
        ..PropertyReport::default()
    };
    let mut by_fingerprint: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut failure = None;
    for_each_independent_set(&dense, budget, &mut |set: &[usize]| {
        let run = match engine.run(set, schedule) {
            Ok(run) => run,
            Err(e) => {
                failure = Some(e);
                return false;
            }
        };
        report.n_independent_sets += 1;
        report.max_fingerprint = report.max_fingerprint.max(run.fingerprint.len());
        report.max_container = report.max_container.max(run.container.len());
        if !set.iter().all(|v| run.container.binary_search(v).is_ok()) {
            report.all_covered = false;
        }
        if !run.fingerprint.iter().all(|v| set.contains(v)) {
            report.fingerprints_inside = false;
        }
        match engine.replay(&run.fingerprint, schedule) {
            Ok(c) if c == run.container => {}
            _ => report.replay_deterministic = false,
        }
        if !fingerprint_bound_holds(graph.order(), schedule, run.fingerprint.len()) {
            report.fingerprint_bound = false;
        }
        match by_fingerprint.get(&run.fingerprint) {
            Some(c) if *c != run.container => report.well_defined = false,
            Some(_) => {}
            None => {
                by_fingerprint.insert(run.fingerprint, run.container);
            }
        }
        true
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut distinct: Vec<&Vec<usize>> = by_fingerprint.values().collect();
    distinct.sort();
    distinct.dedup();
    report.n_containers = distinct.len();
    Ok(report)
}
