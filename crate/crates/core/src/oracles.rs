//! Exact brute-force oracles: independent-set counting, maximum independent
//! set and maximal-independent-set enumeration.
//!
//! All three work on [`DenseGraph`], a bit-matrix copy of a small graph. The
//! dense copy is local to the oracle; the auxiliary graphs themselves stay
//! implicit.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graphs::AuxGraph;
use crate::lattice::BigCount;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBudget {
    pub max_vertices: usize,
    pub max_nodes_expanded: u64,
    pub timeout: Duration,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget {
            max_vertices: 4096,
            max_nodes_expanded: 1 << 20,
            timeout: Duration::from_secs(60),
        }
    }
}

impl EnumBudget {
    pub fn unlimited_nodes(mut self) -> Self {
        self.max_nodes_expanded = u64::MAX;
        self
    }
}

/// Node and time accounting for one oracle call.
struct Meter {
    budget: EnumBudget,
    nodes: u64,
    started: Instant,
}

impl Meter {
    fn new(budget: EnumBudget) -> Meter {
        Meter {
            budget,
            nodes: 0,
            started: Instant::now(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes_expanded {
            return Err(Error::BudgetExceeded(format!(
                "expanded {} nodes (limit {})",
                self.nodes - 1,
                self.budget.max_nodes_expanded
            )));
        }
        if self.nodes.is_multiple_of(1024) && self.started.elapsed() > self.budget.timeout {
            return Err(Error::BudgetExceeded(format!(
                "timeout after {} nodes ({:?})",
                self.nodes, self.budget.timeout
            )));
        }
        Ok(())
    }
}

/// Adjacency bit matrix on vertices `0..order`.
#[derive(Clone, Debug)]
pub struct DenseGraph {
    adj: Vec<BitSet>,
}

impl DenseGraph {
    pub fn empty(order: usize) -> DenseGraph {
        DenseGraph {
            adj: vec![BitSet::new(order); order],
        }
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> DenseGraph {
        let mut g = DenseGraph::empty(order);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    pub fn from_aux(graph: &AuxGraph, budget: &EnumBudget) -> Result<DenseGraph> {
        let order = graph.order();
        if order > budget.max_vertices {
            return Err(Error::BudgetExceeded(format!(
                "graph {} has {order} vertices (limit {})",
                graph.spec(),
                budget.max_vertices
            )));
        }
        let mut g = DenseGraph::empty(order);
        for i in 0..order {
            for j in graph.neighbors(i) {
                g.adj[i].insert(j);
            }
        }
        Ok(g)
    }

    /// Subgraph induced on `vertices` of `graph`, relabelled `0..len` in the
    /// given order.
    pub fn induced(graph: &AuxGraph, vertices: &[usize], budget: &EnumBudget) -> Result<DenseGraph> {
        if vertices.len() > budget.max_vertices {
            return Err(Error::BudgetExceeded(format!(
                "induced subgraph has {} vertices (limit {})",
                vertices.len(),
                budget.max_vertices
            )));
        }
        let mut g = DenseGraph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if graph.adjacent(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(x, &a)| set[x + 1..].iter().all(|&b| !self.adjacent(a, b)))
    }

    fn all(&self) -> BitSet {
        BitSet::full(self.order())
    }

    /// Connected components of the subgraph induced on `within`.
    fn components(&self, within: &BitSet) -> Vec<BitSet> {
        let mut rest = within.clone();
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = BitSet::new(self.order());
            comp.insert(start);
            let mut frontier = comp.clone();
            rest.remove(start);
            while !frontier.is_empty() {
                let mut next = BitSet::new(self.order());
                for v in frontier.iter() {
                    next.or_assign(&self.adj[v].and(&rest));
                }
                rest.and_not_assign(&next);
                comp.or_assign(&next);
                frontier = next;
            }
            out.push(comp);
        }
        out
    }

    fn max_degree_vertex(&self, within: &BitSet) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for v in within.iter() {
            let d = self.adj[v].intersection_len(within);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((v, d));
            }
        }
        best
    }
}

const MEMO_CAP: usize = 1 << 20;

/// Exact number of independent sets, the empty set included.
pub fn count_independent_sets(graph: &AuxGraph, budget: &EnumBudget) -> Result<BigCount> {
    count_independent_sets_dense(&DenseGraph::from_aux(graph, budget)?, budget)
}

/// Branching `count(P) = count(P - v) + count(P - N[v])` on a maximum-degree
/// vertex, with component factorization and memoization.
pub fn count_independent_sets_dense(graph: &DenseGraph, budget: &EnumBudget) -> Result<BigCount> {
    let mut meter = Meter::new(*budget);
    let mut memo = HashMap::new();
    count_rec(graph, graph.all(), &mut memo, &mut meter)
}

fn count_rec(
    g: &DenseGraph,
    within: BitSet,
    memo: &mut HashMap<BitSet, BigUint>,
    meter: &mut Meter,
) -> Result<BigUint> {
    let size = within.len();
    if size == 0 {
        return Ok(BigUint::one());
    }
    if let Some(hit) = memo.get(&within) {
        return Ok(hit.clone());
    }
    meter.tick()?;
    let (v, deg) = g.max_degree_vertex(&within).unwrap();
    let result = if deg == 0 {
        BigUint::one() << size
    } else {
        let comps = g.components(&within);
        if comps.len() > 1 {
            let mut acc = BigUint::one();
            for comp in comps {
                acc *= count_rec(g, comp, memo, meter)?;
            }
            acc
        } else {
            let mut without = within.clone();
            without.remove(v);
            let mut closed = within.and_not(&g.adj[v]);
            closed.remove(v);
            count_rec(g, without, memo, meter)? + count_rec(g, closed, memo, meter)?
        }
    };
    if memo.len() < MEMO_CAP {
        memo.insert(within, result.clone());
    }
    Ok(result)
}

/// Independent-set count by scanning every vertex subset. Only for tiny
/// graphs; serves as the cross-check for the branching counter.
pub fn count_independent_sets_scan(graph: &DenseGraph) -> Result<u64> {
    let order = graph.order();
    if order > 26 {
        return Err(Error::BudgetExceeded(format!("subset scan over {order} vertices")));
    }
    let adj: Vec<u64> = (0..order)
        .map(|v| graph.adj[v].iter().fold(0u64, |m, u| m | 1 << u))
        .collect();
    let mut count = 0u64;
    for subset in 0u64..1 << order {
        let mut ok = true;
        let mut bits = subset;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if adj[v] & subset != 0 {
                ok = false;
                break;
            }
        }
        count += ok as u64;
    }
    Ok(count)
}

/// Maximum independent set size with a witness (sorted vertex indices).
pub fn max_independent_set(graph: &AuxGraph, budget: &EnumBudget) -> Result<(usize, Vec<usize>)> {
    max_independent_set_dense(&DenseGraph::from_aux(graph, budget)?, budget)
}

pub fn max_independent_set_dense(graph: &DenseGraph, budget: &EnumBudget) -> Result<(usize, Vec<usize>)> {
    let mut meter = Meter::new(*budget);
    let mut best = Vec::new();
    let mut current = Vec::new();
    // a greedy start gives the bound something to prune against
    let mut rest = graph.all();
    while let Some((v, _)) = min_degree_vertex(graph, &rest) {
        best.push(v);
        rest.remove(v);
        rest.and_not_assign(&graph.adj[v]);
    }
    mis_rec(graph, graph.all(), &mut current, &mut best, &mut meter)?;
    best.sort_unstable();
    Ok((best.len(), best))
}

fn min_degree_vertex(g: &DenseGraph, within: &BitSet) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for v in within.iter() {
        let d = g.adj[v].intersection_len(within);
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((v, d));
        }
    }
    best
}

/// Greedy clique cover of `within`; its size bounds the independence number.
fn clique_cover_bound(g: &DenseGraph, within: &BitSet) -> usize {
    let mut rest = within.clone();
    let mut cliques = 0;
    while let Some(v) = rest.first() {
        rest.remove(v);
        let mut candidates = g.adj[v].and(&rest);
        while let Some(u) = candidates.first() {
            rest.remove(u);
            candidates.remove(u);
            candidates.and_assign(&g.adj[u]);
        }
        cliques += 1;
    }
    cliques
}

fn mis_rec(
    g: &DenseGraph,
    mut within: BitSet,
    current: &mut Vec<usize>,
    best: &mut Vec<usize>,
    meter: &mut Meter,
) -> Result<()> {
    meter.tick()?;
    let base = current.len();
    // vertices of degree 0 or 1 can always be taken
    loop {
        let mut changed = false;
        for v in within.iter().collect::<Vec<_>>() {
            if !within.contains(v) {
                continue;
            }
            if g.adj[v].intersection_len(&within) <= 1 {
                current.push(v);
                within.remove(v);
                within.and_not_assign(&g.adj[v]);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let result = (|| {
        if within.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return Ok(());
        }
        if current.len() + clique_cover_bound(g, &within) <= best.len() {
            return Ok(());
        }
        let comps = g.components(&within);
        if comps.len() > 1 {
            // solve components separately and combine their optima
            let mut combined = current.clone();
            for comp in comps {
                let mut sub_best = Vec::new();
                let mut sub_cur = Vec::new();
                mis_rec(g, comp, &mut sub_cur, &mut sub_best, meter)?;
                combined.extend(sub_best);
            }
            if combined.len() > best.len() {
                *best = combined;
            }
            return Ok(());
        }
        let (v, _) = g.max_degree_vertex(&within).unwrap();
        let mut with_v = within.and_not(&g.adj[v]);
        with_v.remove(v);
        current.push(v);
        mis_rec(g, with_v, current, best, meter)?;
        current.pop();
        let mut without_v = within;
        without_v.remove(v);
        mis_rec(g, without_v, current, best, meter)
    })();
    current.truncate(base);
    result
}

/// Number of maximal independent sets, optionally collecting them in
/// canonical (sorted, then lexicographic) order.
pub fn enumerate_maximal_independent_sets(
    graph: &AuxGraph,
    budget: &EnumBudget,
    collect: bool,
) -> Result<(BigCount, Option<Vec<Vec<usize>>>)> {
    enumerate_maximal_dense(&DenseGraph::from_aux(graph, budget)?, budget, collect)
}

/// Bron-Kerbosch with pivoting, run on the complement implicitly.
pub fn enumerate_maximal_dense(
    graph: &DenseGraph,
    budget: &EnumBudget,
    collect: bool,
) -> Result<(BigCount, Option<Vec<Vec<usize>>>)> {
    let mut meter = Meter::new(*budget);
    let mut count = BigUint::zero();
    let mut sets = collect.then(Vec::new);
    let mut current = Vec::new();
    bk_rec(
        graph,
        &mut current,
        graph.all(),
        BitSet::new(graph.order()),
        &mut count,
        &mut sets,
        &mut meter,
    )?;
    if let Some(sets) = sets.as_mut() {
        for s in sets.iter_mut() {
            s.sort_unstable();
        }
        sets.sort();
    }
    Ok((count, sets))
}

fn bk_rec(
    g: &DenseGraph,
    current: &mut Vec<usize>,
    candidates: BitSet,
    mut excluded: BitSet,
    count: &mut BigUint,
    sets: &mut Option<Vec<Vec<usize>>>,
    meter: &mut Meter,
) -> Result<()> {
    meter.tick()?;
    if candidates.is_empty() {
        if excluded.is_empty() {
            *count += 1u32;
            if let Some(sets) = sets.as_mut() {
                sets.push(current.clone());
            }
        }
        return Ok(());
    }
    // In the complement, N(u) = V \ N_G[u], so the branching set
    // P \ N_compl(u) is P ∩ N_G[u]. Choose u minimizing it.
    let mut pivot = None;
    let mut pivot_size = usize::MAX;
    for u in candidates.iter().chain(excluded.iter()) {
        let mut closed = g.adj[u].and(&candidates);
        if candidates.contains(u) {
            closed.insert(u);
        }
        let size = closed.len();
        if size < pivot_size {
            pivot_size = size;
            pivot = Some(closed);
        }
    }
    let branch = pivot.unwrap();
    let mut candidates = candidates;
    for v in branch.iter() {
        let mut next_p = candidates.and_not(&g.adj[v]);
        next_p.remove(v);
        let mut next_x = excluded.and_not(&g.adj[v]);
        next_x.remove(v);
        current.push(v);
        bk_rec(g, current, next_p, next_x, count, sets, meter)?;
        current.pop();
        candidates.remove(v);
        excluded.insert(v);
    }
    Ok(())
}

/// Calls `visit` on every independent set (sorted indices, empty set first,
/// then in lexicographic order). `visit` returns false to stop early. Each
/// set visited counts one node against the budget.
pub fn for_each_independent_set(
    graph: &DenseGraph,
    budget: &EnumBudget,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    let mut meter = Meter::new(*budget);
    let mut current = Vec::new();
    indep_rec(graph, &mut current, 0, &graph.all(), visit, &mut meter)?;
    Ok(())
}

fn indep_rec(
    g: &DenseGraph,
    current: &mut Vec<usize>,
    from: usize,
    allowed: &BitSet,
    visit: &mut dyn FnMut(&[usize]) -> bool,
    meter: &mut Meter,
) -> Result<bool> {
    meter.tick()?;
    if !visit(current) {
        return Ok(false);
    }
    for v in allowed.iter().filter(|&v| v >= from) {
        let next = allowed.and_not(&g.adj[v]);
        current.push(v);
        let go_on = indep_rec(g, current, v + 1, &next, visit, meter)?;
        current.pop();
        if !go_on {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `log2` of a count, for reports only.
pub fn log2_count(count: &BigCount) -> f64 {
    if count.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = count.bits();
    if bits <= 1000 {
        count.to_f64().map(f64::log2).unwrap_or(f64::NAN)
    } else {
        let shift = bits - 64;
        let top = (count >> shift).to_f64().unwrap_or(f64::NAN);
        top.log2() + shift as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_graph, GraphKind};

    fn budget() -> EnumBudget {
        EnumBudget::default()
    }

    #[test]
    fn empty_and_path_graphs() {
        let g = DenseGraph::empty(7);
        assert_eq!(count_independent_sets_dense(&g, &budget()).unwrap(), BigUint::from(128u32));
        let (mis, _) = enumerate_maximal_dense(&g, &budget(), false).unwrap();
        assert_eq!(mis, BigUint::from(1u32));
        let p3 = DenseGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let (count, sets) = enumerate_maximal_dense(&p3, &budget(), true).unwrap();
        assert_eq!(count, BigUint::from(2u32));
        assert_eq!(sets.unwrap(), vec![vec![0, 2], vec![1]]);
        assert_eq!(max_independent_set_dense(&p3, &budget()).unwrap().0, 2);
    }

    #[test]
    fn small_known_counts() {
        let g = build_graph(3, GraphKind::Hamming { t: 1 }).unwrap();
        assert_eq!(count_independent_sets(&g, &budget()).unwrap(), BigUint::from(13u32));
        let g = build_graph(3, GraphKind::Tilt { p: 1, q: 2 }).unwrap();
        assert_eq!(count_independent_sets(&g, &budget()).unwrap(), BigUint::from(108u32));
        assert_eq!(max_independent_set(&g, &budget()).unwrap().0, 5);
    }

    #[test]
    fn budget_is_enforced() {
        let g = build_graph(5, GraphKind::Comparability).unwrap();
        let tight = EnumBudget {
            max_nodes_expanded: 3,
            ..EnumBudget::default()
        };
        assert!(matches!(
            count_independent_sets(&g, &tight),
            Err(Error::BudgetExceeded(_))
        ));
        let few = EnumBudget {
            max_vertices: 8,
            ..EnumBudget::default()
        };
        assert!(count_independent_sets(&g, &few).is_err());
    }

    #[test]
    fn streaming_matches_count() {
        let g = DenseGraph::from_aux(&build_graph(3, GraphKind::Tilt { p: 1, q: 2 }).unwrap(), &budget())
            .unwrap();
        let mut seen = Vec::new();
        for_each_independent_set(&g, &budget(), &mut |s| {
            assert!(g.is_independent(s));
            seen.push(s.to_vec());
            true
        })
        .unwrap();
        assert_eq!(seen.len(), 108);
        assert!(seen[0].is_empty());
        let mut dedup = seen.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 108);
        let mut n = 0;
        for_each_independent_set(&g, &budget(), &mut |_| {
            n += 1;
            n < 5
        })
        .unwrap();
        assert_eq!(n, 5);
    }

    #[test]
    fn log2_of_counts() {
        assert_eq!(log2_count(&BigUint::from(1024u32)), 10.0);
        let huge = BigUint::one() << 5000u32;
        assert!((log2_count(&huge) - 5000.0).abs() < 1e-9);
    }
}
