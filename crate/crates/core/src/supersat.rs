//! Pair counting in induced subgraphs and minimizer searches for
//! supersaturation checks.
//!
//! A supersaturation statement says that a family of size above the extremal
//! bound must contain many edges of some auxiliary graph. At desk scale we
//! compute the minimum edge count (or maximum degree) over all families of a
//! given size, exactly where the number of families is small and by seeded
//! local search otherwise, and compare it with the claimed bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::codes::{ceil_to_u64, hamming_bound, transport_bound};
use crate::error::{Error, Result};
use crate::graphs::{build_graph, AuxGraph, GraphKind};
use crate::lattice::{binom_at_least, binomial, binomial_u64, k_subsets, BigCount, Family, Scd, SetMask};
use crate::oracles::{max_independent_set, DenseGraph, EnumBudget};

/// Number of edges of `graph` inside the vertex set `indices`.
pub fn edges_among(graph: &AuxGraph, indices: &[usize]) -> u64 {
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut count = 0;
    for (x, &a) in sorted.iter().enumerate() {
        for &b in &sorted[x + 1..] {
            if graph.adjacent(a, b) {
                count += 1;
            }
        }
    }
    count
}

pub fn count_edges_in_induced(graph: &AuxGraph, family: &Family) -> Result<BigCount> {
    Ok(BigCount::from(edges_among(graph, &graph.indices_of(family)?)))
}

/// The vertex of maximum degree inside `indices` (smallest index on ties)
/// and that degree.
pub fn max_degree_among(graph: &AuxGraph, indices: &[usize]) -> Result<(usize, usize)> {
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut best: Option<(usize, usize)> = None;
    for &a in &sorted {
        let d = sorted.iter().filter(|&&b| graph.adjacent(a, b)).count();
        if best.is_none_or(|(_, bd)| d > bd) {
            best = Some((a, d));
        }
    }
    best.ok_or(Error::EmptyFamily)
}

pub fn max_degree_induced(graph: &AuxGraph, family: &Family) -> Result<(SetMask, usize)> {
    let (v, d) = max_degree_among(graph, &graph.indices_of(family)?)?;
    Ok((graph.set_at(v).expect("set-valued graph"), d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Edges of the induced subgraph.
    Edges,
    /// Maximum degree of the induced subgraph.
    MaxDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random { trials: u32, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinSearch {
    pub value: u64,
    /// Sorted vertex indices attaining `value`.
    pub witness: Vec<usize>,
    pub exhaustive: bool,
}

fn objective_value(g: &DenseGraph, set: &BitSet, objective: Objective) -> u64 {
    let degrees = set.iter().map(|v| g.neighbors(v).intersection_len(set) as u64);
    match objective {
        Objective::Edges => degrees.sum::<u64>() / 2,
        Objective::MaxDegree => degrees.max().unwrap_or(0),
    }
}

/// Minimum of `objective` over all `size`-subsets of the vertices of `g`.
/// Both objectives only grow as vertices are added, which drives the
/// pruning.
pub fn minimize_exhaustive(
    g: &DenseGraph,
    size: usize,
    objective: Objective,
    budget: &EnumBudget,
) -> Result<MinSearch> {
    let order = g.order();
    if size > order {
        return Err(Error::InvalidParams(format!("no {size}-subset of {order} vertices")));
    }
    struct State<'a> {
        g: &'a DenseGraph,
        size: usize,
        objective: Objective,
        chosen: Vec<usize>,
        set: BitSet,
        degree: Vec<u64>,
        best: Option<(u64, Vec<usize>)>,
        nodes: u64,
        max_nodes: u64,
    }
    fn rec(s: &mut State, from: usize, edges: u64, max_deg: u64) -> Result<()> {
        s.nodes += 1;
        if s.nodes > s.max_nodes {
            return Err(Error::BudgetExceeded(format!(
                "minimizer expanded more than {} nodes",
                s.max_nodes
            )));
        }
        let current = match s.objective {
            Objective::Edges => edges,
            Objective::MaxDegree => max_deg,
        };
        if let Some((b, _)) = &s.best {
            if current >= *b {
                return Ok(());
            }
        }
        if s.chosen.len() == s.size {
            s.best = Some((current, s.chosen.clone()));
            return Ok(());
        }
        let need = s.size - s.chosen.len();
        for v in from..=s.g.order() - need {
            let nbrs: Vec<usize> = s.g.neighbors(v).and(&s.set).iter().collect();
            let dv = nbrs.len() as u64;
            let mut top = max_deg.max(dv);
            for &w in &nbrs {
                s.degree[w] += 1;
                top = top.max(s.degree[w]);
            }
            s.degree[v] = dv;
            s.chosen.push(v);
            s.set.insert(v);
            rec(s, v + 1, edges + dv, top)?;
            s.set.remove(v);
            s.chosen.pop();
            s.degree[v] = 0;
            for &w in &nbrs {
                s.degree[w] -= 1;
            }
            if matches!(&s.best, Some((0, _))) {
                break;
            }
        }
        Ok(())
    }
    let mut state = State {
        g,
        size,
        objective,
        chosen: Vec::with_capacity(size),
        set: BitSet::new(order),
        degree: vec![0; order],
        best: None,
        nodes: 0,
        max_nodes: budget.max_nodes_expanded,
    };
    rec(&mut state, 0, 0, 0)?;
    let (value, witness) = state.best.expect("some subset exists");
    Ok(MinSearch {
        value,
        witness,
        exhaustive: true,
    })
}

/// Seeded local search: random start, best improving single swap until
/// none is left, repeated `trials` times. Each trial draws from its own
/// stream of the generator.
pub fn minimize_random(
    g: &DenseGraph,
    size: usize,
    objective: Objective,
    trials: u32,
    seed: u64,
) -> Result<MinSearch> {
    let order = g.order();
    if size > order {
        return Err(Error::InvalidParams(format!("no {size}-subset of {order} vertices")));
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    for trial in 0..trials.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut all: Vec<usize> = (0..order).collect();
        all.shuffle(&mut rng);
        let mut set = BitSet::new(order);
        for &v in &all[..size] {
            set.insert(v);
        }
        let mut value = objective_value(g, &set, objective);
        loop {
            let inside: Vec<usize> = set.iter().collect();
            let outside: Vec<usize> = (0..order).filter(|v| !set.contains(*v)).collect();
            let mut improved: Option<(u64, usize, usize)> = None;
            for &u in &inside {
                for &v in &outside {
                    set.remove(u);
                    set.insert(v);
                    let candidate = objective_value(g, &set, objective);
                    set.remove(v);
                    set.insert(u);
                    if candidate < improved.map_or(value, |(c, _, _)| c) {
                        improved = Some((candidate, u, v));
                    }
                }
            }
            match improved {
                Some((c, u, v)) => {
                    set.remove(u);
                    set.insert(v);
                    value = c;
                }
                None => break,
            }
            if value == 0 {
                break;
            }
        }
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, set.iter().collect()));
        }
        if value == 0 {
            break;
        }
        // keep the generator's draw count independent of the outcome
        let _: u32 = rng.gen();
    }
    let (value, witness) = best.expect("at least one trial");
    Ok(MinSearch {
        value,
        witness,
        exhaustive: false,
    })
}

pub fn minimize(
    g: &DenseGraph,
    size: usize,
    objective: Objective,
    mode: SearchMode,
    budget: &EnumBudget,
) -> Result<MinSearch> {
    match mode {
        SearchMode::Exhaustive => minimize_exhaustive(g, size, objective, budget),
        SearchMode::Random { trials, seed } => minimize_random(g, size, objective, trials, seed),
    }
}

/// Minimum number of induced edges over families of `size` vertices.
pub fn min_edges_over_families(
    graph: &AuxGraph,
    size: usize,
    mode: SearchMode,
    budget: &EnumBudget,
) -> Result<MinSearch> {
    let g = DenseGraph::from_aux(graph, budget)?;
    minimize(&g, size, Objective::Edges, mode, budget)
}

/// Pairs of members of `family` lying on a common chain of `scd`.
pub fn scd_bad_pairs(family: &Family, scd: &Scd) -> Result<BigCount> {
    if scd.ground() != family.ground() {
        return Err(Error::GroundMismatch {
            left: family.ground(),
            right: scd.ground(),
        });
    }
    scd.validate()?;
    let index = scd.chain_index();
    let mut per_chain = vec![0u64; scd.chains().len()];
    for m in family.iter() {
        per_chain[index[m.0 as usize] as usize] += 1;
    }
    Ok(per_chain.iter().map(|&c| BigCount::from(c * c.saturating_sub(1) / 2)).sum())
}

/// Comparable pairs of a family split by the size of their difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceProfile {
    pub n: u32,
    /// `counts[i]` for `i` in `0..=n`; `counts[0]` is always zero.
    pub counts: Vec<u64>,
}

impl DifferenceProfile {
    pub fn of(family: &Family) -> DifferenceProfile {
        let n = family.ground();
        let mut counts = vec![0u64; n as usize + 1];
        let m = family.members();
        for (i, &a) in m.iter().enumerate() {
            for &b in &m[i + 1..] {
                if a.comparable(b) {
                    counts[a.distance(b) as usize] += 1;
                }
            }
        }
        DifferenceProfile { n, counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn at(&self, i: u32) -> u64 {
        self.counts.get(i as usize).copied().unwrap_or(0)
    }

    pub fn at_least(&self, i: u32) -> u64 {
        self.counts.iter().skip(i as usize).sum()
    }

    /// The weighted sum `B_{>=N} / binom(h + ceil(N/2), N) + sum_{k<N}
    /// B_k / binom(h + ceil(k/2), k)` with `h = floor(n/2)`.
    pub fn weighted_value(&self, big_n: u32) -> BigRational {
        let h = (self.n / 2) as u64;
        let weight = |count: u64, k: u32| {
            let k = k as u64;
            BigRational::new(BigInt::from(count), BigInt::from(binomial(h + k.div_ceil(2), k)))
        };
        let mut value = weight(self.at_least(big_n), big_n);
        for k in 1..big_n {
            value += weight(self.at(k), k);
        }
        value
    }
}

pub fn difference_profile(family: &Family) -> DifferenceProfile {
    DifferenceProfile::of(family)
}

/// Comparable pairs whose difference lies inside `red` or inside its
/// complement.
pub fn count_mono_pairs(family: &Family, red: SetMask) -> BigCount {
    let n = family.ground();
    let white = red.complement(n);
    let m = family.members();
    let mut count = 0u64;
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if a.comparable(b) {
                let diff = SetMask(a.0 ^ b.0);
                if diff.is_subset_of(red) || diff.is_subset_of(white) {
                    count += 1;
                }
            }
        }
    }
    BigCount::from(count)
}

/// Outcome of one supersaturation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub lemma: String,
    pub graph: String,
    pub size: usize,
    /// The claimed lower bound as an exact rational.
    pub bound: String,
    /// Smallest integer meeting `bound`.
    pub required: u64,
    pub objective: Objective,
    pub observed_min: u64,
    pub witness: Vec<String>,
    pub exhaustive: bool,
    pub pass: bool,
}

fn run_check(
    lemma: &str,
    graph: &AuxGraph,
    size: usize,
    bound: BigRational,
    objective: Objective,
    mode: SearchMode,
    budget: &EnumBudget,
) -> Result<LemmaCheck> {
    let g = DenseGraph::from_aux(graph, budget)?;
    let found = minimize(&g, size, objective, mode, budget)?;
    let bound = if bound < BigRational::zero() {
        BigRational::zero()
    } else {
        bound
    };
    let required = ceil_to_u64(&bound);
    Ok(LemmaCheck {
        lemma: lemma.into(),
        graph: graph.spec().to_string(),
        size,
        bound: bound.to_string(),
        required,
        objective,
        observed_min: found.value,
        witness: found.witness.iter().map(|&v| graph.vertex(v).to_string()).collect(),
        exhaustive: found.exhaustive,
        pass: found.value >= required,
    })
}

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn middle(n: u32) -> u64 {
    binomial_u64(n as u64, (n / 2) as u64).expect("small n")
}

/// Families of size `binom(n, n/2) + x` span at least `(floor(n/2)+1) x`
/// comparable pairs.
pub fn check_kleitman(n: u32, x: u64, mode: SearchMode, budget: &EnumBudget) -> Result<LemmaCheck> {
    let graph = build_graph(n, GraphKind::Comparability)?;
    let size = (middle(n) + x) as usize;
    if size > graph.order() {
        return Err(Error::InvalidParams(format!("x = {x} exceeds 2^n - binom(n, n/2)")));
    }
    let bound = int((n / 2 + 1) as u64 * x);
    run_check("kleitman", &graph, size, bound, Objective::Edges, mode, budget)
}

/// Families of size `floor(H(n,t)) + x` contain at least `(size - H) n / 2t`
/// pairs at distance at most `2t`.
pub fn check_hamming(n: u32, t: u32, x: u64, mode: SearchMode, budget: &EnumBudget) -> Result<LemmaCheck> {
    let graph = build_graph(n, GraphKind::Hamming { t })?;
    let h = hamming_bound(n, t);
    let size = h.floor().to_integer() + BigInt::from(x);
    let size: usize = size.try_into().map_err(|_| Error::InvalidParams("size overflow".into()))?;
    let excess = int(size as u64) - &h;
    let bound = excess * int(n) / int(2 * t);
    run_check("hamming", &graph, size, bound, Objective::Edges, mode, budget)
}

/// Families of size at least `2 H(n,t)` have an induced vertex of degree at
/// least `alpha |F|`, `alpha = n / (10 t H(n,t))`.
pub fn check_hamming_degree(n: u32, t: u32, size: usize, mode: SearchMode, budget: &EnumBudget) -> Result<LemmaCheck> {
    let graph = build_graph(n, GraphKind::Hamming { t })?;
    let h = hamming_bound(n, t);
    if int(size as u64) < &h * int(2u32) {
        return Err(Error::InvalidParams(format!("size {size} is below 2 H({n},{t})")));
    }
    let bound = crate::codes::alpha(n, t)? * int(size as u64);
    run_check("hamming-degree", &graph, size, bound, Objective::MaxDegree, mode, budget)
}

/// Families of disjoint k-set pairs of size `floor(H(n,k,2t+1)) + x` contain
/// at least `(size - H) k / t` pairs at transportation distance at most `2t`.
pub fn check_transport(n: u32, k: u32, t: u32, x: u64, mode: SearchMode, budget: &EnumBudget) -> Result<LemmaCheck> {
    let graph = build_graph(n, GraphKind::Transport { k, t })?;
    let h = transport_bound(n, k, 2 * t + 1)?;
    let size: usize = (h.floor().to_integer() + BigInt::from(x))
        .try_into()
        .map_err(|_| Error::InvalidParams("size overflow".into()))?;
    if size > graph.order() {
        return Err(Error::InvalidParams(format!("only {} pairs exist", graph.order())));
    }
    let bound = (int(size as u64) - &h) * int(k) / int(t);
    run_check("transport", &graph, size, bound, Objective::Edges, mode, budget)
}

/// Families of size `(q-p) binom(n, n/2) + x` contain at least `x` tilted
/// pairs. This monotone form does not hold at small `n`; see
/// [`tilt_excess_bound`] for the form that always holds.
pub fn check_tilt(n: u32, p: u32, q: u32, x: u64, mode: SearchMode, budget: &EnumBudget) -> Result<LemmaCheck> {
    let graph = build_graph(n, GraphKind::Tilt { p, q })?;
    let size = ((q - p) as u64 * middle(n) + x) as usize;
    if size > graph.order() {
        return Err(Error::InvalidParams(format!("size {size} exceeds 2^n")));
    }
    run_check("tilt", &graph, size, int(x), Objective::Edges, mode, budget)
}

/// `|F| - alpha(G)`: deleting one endpoint per edge leaves an independent
/// set, so every family spans at least this many edges.
pub fn tilt_excess_bound(graph: &AuxGraph, size: usize, budget: &EnumBudget) -> Result<u64> {
    let (alpha, _) = max_independent_set(graph, budget)?;
    Ok(size.saturating_sub(alpha) as u64)
}

/// Families of size `binom(n, n/2) + x` contain at least `x` comparable
/// pairs with monochromatic difference. Deleting one set per such pair
/// leaves a family free of them, which has at most `binom(n, n/2)` members.
pub fn check_mono(n: u32, red: SetMask, x: u64, mode: SearchMode, budget: &EnumBudget) -> Result<LemmaCheck> {
    let graph = build_graph(n, GraphKind::MonoDiff { red })?;
    let size = (middle(n) + x) as usize;
    if size > graph.order() {
        return Err(Error::InvalidParams(format!("size {size} exceeds 2^n")));
    }
    run_check("mono", &graph, size, int(x), Objective::Edges, mode, budget)
}

/// For every `j`, no family of size `sum_{i>=j} binom(n,i)` spans fewer
/// disjoint pairs than the top layers `{A : |A| >= j}`.
pub fn check_claim_cd(n: u32, mode: SearchMode, budget: &EnumBudget) -> Result<Vec<LemmaCheck>> {
    let graph = build_graph(n, GraphKind::Intersection { t: 1 })?;
    let g = DenseGraph::from_aux(&graph, budget)?;
    let mut out = Vec::new();
    for j in (0..=n).rev() {
        let size: usize = binom_at_least(n as u64, j as u64)
            .try_into()
            .map_err(|_| Error::InvalidParams("size overflow".into()))?;
        let top: Vec<usize> = (j..=n).flat_map(|i| k_subsets(n, i).map(|m| m.0 as usize)).collect();
        let top_edges = edges_among(&graph, &top);
        let found = minimize(&g, size, Objective::Edges, mode, budget)?;
        out.push(LemmaCheck {
            lemma: format!("claim-cd(j={j})"),
            graph: graph.spec().to_string(),
            size,
            bound: top_edges.to_string(),
            required: top_edges,
            objective: Objective::Edges,
            observed_min: found.value,
            witness: found.witness.iter().map(|&v| graph.vertex(v).to_string()).collect(),
            exhaustive: found.exhaustive,
            pass: found.value == top_edges,
        });
    }
    Ok(out)
}

/// Minimum of the weighted difference sum over every family of size
/// `binom(n, n/2) + x` whose members have sizes in `[N, n-N]`.
pub fn check_prop64(n: u32, big_n: u32, x: u64, budget: &EnumBudget) -> Result<LemmaCheck> {
    if n > 6 || 2 * big_n > n || big_n == 0 {
        return Err(Error::InvalidParams(format!("need 1 <= N <= n/2 and n <= 6, got n={n}, N={big_n}")));
    }
    let eligible: Vec<SetMask> = (big_n..=n - big_n).flat_map(|i| k_subsets(n, i)).collect();
    let size = (middle(n) + x) as usize;
    if size > eligible.len() {
        return Err(Error::InvalidParams(format!("only {} sets have admissible size", eligible.len())));
    }
    let families = binomial(eligible.len() as u64, size as u64);
    if families > BigCount::from(budget.max_nodes_expanded) {
        return Err(Error::BudgetExceeded(format!("{families} families to scan")));
    }
    let mut best: Option<(BigRational, Vec<SetMask>)> = None;
    let mut combo: Vec<usize> = (0..size).collect();
    loop {
        let members: Vec<SetMask> = combo.iter().map(|&i| eligible[i]).collect();
        let family = Family::new(n, members.clone())?;
        let value = DifferenceProfile::of(&family).weighted_value(big_n);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, members));
        }
        let mut i = size;
        while i > 0 && combo[i - 1] == eligible.len() - size + i - 1 {
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
    let (value, witness) = best.expect("at least one family");
    Ok(LemmaCheck {
        lemma: format!("prop64(N={big_n})"),
        graph: format!("comparability:n={n}"),
        size,
        bound: x.to_string(),
        required: x,
        objective: Objective::Edges,
        observed_min: value.floor().to_integer().try_into().unwrap_or(u64::MAX),
        witness: witness.iter().map(|m| m.to_string()).collect(),
        exhaustive: true,
        pass: value >= int(x),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_scd;

    fn fam(n: u32, sets: &[&[u32]]) -> Family {
        Family::new(n, sets.iter().map(|s| SetMask::from_elements(s)).collect()).unwrap()
    }

    #[test]
    fn induced_counts() {
        let g = build_graph(2, GraphKind::Comparability).unwrap();
        assert_eq!(count_edges_in_induced(&g, &Family::power_set(2).unwrap()).unwrap(), BigCount::from(5u32));
        let h = build_graph(3, GraphKind::Hamming { t: 1 }).unwrap();
        let f = fam(3, &[&[], &[1, 2], &[1, 3]]);
        assert_eq!(count_edges_in_induced(&h, &f).unwrap(), BigCount::from(3u32));
        assert_eq!(max_degree_induced(&h, &Family::power_set(3).unwrap()).unwrap().1, 6);
        let f = fam(2, &[&[], &[1], &[2]]);
        assert_eq!(max_degree_induced(&g, &f).unwrap(), (SetMask::EMPTY, 2));
        assert_eq!(max_degree_induced(&g, &Family::empty(2)), Err(Error::EmptyFamily));
        let tr = build_graph(4, GraphKind::Transport { k: 2, t: 1 }).unwrap();
        assert_eq!(max_degree_among(&tr, &[0, 1, 2]).unwrap().1, 2);
    }

    #[test]
    fn minimizers() {
        let g = build_graph(2, GraphKind::Comparability).unwrap();
        let b = EnumBudget::default();
        assert_eq!(min_edges_over_families(&g, 3, SearchMode::Exhaustive, &b).unwrap().value, 2);
        let h = build_graph(3, GraphKind::Hamming { t: 1 }).unwrap();
        assert_eq!(min_edges_over_families(&h, 3, SearchMode::Exhaustive, &b).unwrap().value, 2);
        let c4 = build_graph(4, GraphKind::Comparability).unwrap();
        let r = min_edges_over_families(&c4, 6, SearchMode::Random { trials: 5, seed: 1 }, &b).unwrap();
        assert_eq!(r.value, 0);
        let e = min_edges_over_families(&c4, 9, SearchMode::Exhaustive, &b).unwrap();
        assert_eq!(e.value, 9);
        assert_eq!(edges_among(&c4, &e.witness), 9);
    }

    #[test]
    fn scd_pairs() {
        let scd = build_scd(2).unwrap();
        assert_eq!(scd_bad_pairs(&fam(2, &[&[], &[1], &[2]]), &scd).unwrap(), BigCount::from(1u32));
        assert_eq!(scd_bad_pairs(&fam(2, &[&[1], &[2]]), &scd).unwrap(), BigCount::from(0u32));
        assert!(scd_bad_pairs(&fam(3, &[&[1]]), &scd).is_err());
    }

    #[test]
    fn profiles() {
        let p = difference_profile(&Family::power_set(2).unwrap());
        assert_eq!(p.counts, vec![0, 4, 1]);
        assert_eq!(p.total(), 5);
        assert_eq!(difference_profile(&Family::layer(4, 2).unwrap()).total(), 0);
        let mut f = Family::layer(4, 2).unwrap().into_members();
        f.push(SetMask::from_elements(&[1, 2, 3]));
        let p = difference_profile(&Family::new(4, f).unwrap());
        assert!(p.weighted_value(1) >= int(1u32));
    }

    #[test]
    fn mono_pairs() {
        let all = Family::power_set(2).unwrap();
        assert_eq!(count_mono_pairs(&all, SetMask::from_elements(&[1])), BigCount::from(4u32));
        assert_eq!(count_mono_pairs(&all, SetMask::EMPTY), BigCount::from(5u32));
    }

    #[test]
    fn lemma_checks() {
        let b = EnumBudget::default();
        let k = check_kleitman(3, 2, SearchMode::Exhaustive, &b).unwrap();
        assert!(k.pass);
        assert_eq!(k.observed_min, 4);
        let h = check_hamming(3, 1, 1, SearchMode::Exhaustive, &b).unwrap();
        assert_eq!((h.required, h.observed_min, h.pass), (2, 2, true));
        assert!(check_hamming_degree(3, 1, 4, SearchMode::Exhaustive, &b).unwrap().pass);
        assert!(check_transport(5, 2, 1, 1, SearchMode::Exhaustive, &b).unwrap().pass);
        assert!(check_mono(3, SetMask::from_elements(&[1]), 1, SearchMode::Exhaustive, &b).unwrap().pass);
        assert!(check_claim_cd(3, SearchMode::Exhaustive, &b).unwrap().iter().all(|c| c.pass));
        assert!(check_prop64(4, 1, 1, &b).unwrap().pass);
    }

    #[test]
    fn tilt_monotone_form_fails_at_three() {
        // tilt(3,1,2) is three disjoint edges plus two isolated vertices, so
        // its independence number 5 exceeds binom(3,1) = 3
        let b = EnumBudget::default();
        let c = check_tilt(3, 1, 2, 1, SearchMode::Exhaustive, &b).unwrap();
        assert_eq!(c.size, 4);
        assert_eq!(c.observed_min, 0);
        assert!(!c.pass);
        let g = build_graph(3, GraphKind::Tilt { p: 1, q: 2 }).unwrap();
        assert_eq!(tilt_excess_bound(&g, 4, &b).unwrap(), 0);
        assert_eq!(tilt_excess_bound(&g, 7, &b).unwrap(), 2);
    }
}
