//! Explicit extremal constructions: cross-intersecting set-pair systems, a
//! skew family without supersaturation, and large collections of maximal
//! independent sets in the bipartite graph between two consecutive layers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{build_graph, AuxGraph, GraphKind};
use crate::lattice::{binomial_u64, k_subsets, BigCount, Family, SetMask};
use crate::oracles::{enumerate_maximal_independent_sets, EnumBudget};

/// An ordered list of set pairs over the ground set `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SetPairFamily {
    pub ground: u32,
    pub pairs: Vec<(SetMask, SetMask)>,
}

impl SetPairFamily {
    pub fn new(ground: u32, pairs: Vec<(SetMask, SetMask)>) -> Result<SetPairFamily> {
        for &(a, b) in &pairs {
            for m in [a, b] {
                if !m.fits(ground) {
                    return Err(Error::MaskOutOfRange { mask: m.0, n: ground });
                }
            }
        }
        Ok(SetPairFamily { ground, pairs })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Same layout as the family text format: `n=<ground>`, then one pair
    /// per line as two lowercase hex masks.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.ground);
        for (a, b) in &self.pairs {
            out.push_str(&format!("{:x} {:x}\n", a.0, b.0));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<SetPairFamily> {
        let mut ground = None;
        let mut pairs = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fail = |reason: String| Error::Parse { line: no + 1, reason };
            let Some(n) = ground else {
                let n = line
                    .strip_prefix("n=")
                    .and_then(|v| v.trim().parse::<u32>().ok())
                    .ok_or_else(|| fail(format!("expected `n=<int>`, found `{line}`")))?;
                ground = Some(n);
                continue;
            };
            let mut parts = line.split_whitespace();
            let mut mask = || -> Result<SetMask> {
                let tok = parts.next().ok_or_else(|| fail("expected two hex masks".into()))?;
                let bits = u64::from_str_radix(tok, 16).map_err(|_| fail(format!("bad hex mask `{tok}`")))?;
                if !SetMask(bits).fits(n) {
                    return Err(fail(format!("mask {bits:#x} exceeds n={n}")));
                }
                Ok(SetMask(bits))
            };
            let pair = (mask()?, mask()?);
            if parts.next().is_some() {
                return Err(fail("expected exactly two hex masks".into()));
            }
            pairs.push(pair);
        }
        let ground = ground.ok_or(Error::Parse {
            line: 0,
            reason: "missing `n=<int>` header".into(),
        })?;
        SetPairFamily::new(ground, pairs)
    }
}

/// `A_j ∩ B_j = ∅`, `A_j ∩ B_k ≠ ∅` for `j ≠ k`, and `|A_j| + |B_j| <= n`.
pub fn is_isp(family: &SetPairFamily, n: u32) -> bool {
    let p = &family.pairs;
    p.iter().all(|&(a, b)| a.intersection(b).is_empty() && a.len() + b.len() <= n)
        && p.iter().enumerate().all(|(j, &(a, _))| {
            p.iter()
                .enumerate()
                .all(|(k, &(_, b))| j == k || !a.intersection(b).is_empty())
        })
}

/// `|A_i| <= a`, `|B_i| <= b`, `A_i ∩ B_i = ∅`, and `A_i ∩ B_j ≠ ∅` whenever
/// `i < j`.
pub fn is_skew(family: &SetPairFamily, a: u32, b: u32) -> bool {
    let p = &family.pairs;
    p.iter()
        .all(|&(x, y)| x.len() <= a && y.len() <= b && x.intersection(y).is_empty())
        && p.iter()
            .enumerate()
            .all(|(i, &(x, _))| p[i + 1..].iter().all(|&(_, y)| !x.intersection(y).is_empty()))
}

/// Longest skew sequence of distinct pairs with `|A| <= a`, `|B| <= b` over
/// `[ground]`, by exhaustive search.
pub fn max_skew_family(ground: u32, a: u32, b: u32) -> Result<SetPairFamily> {
    if ground > 4 {
        return Err(Error::BudgetExceeded(format!("skew search over [{ground}]")));
    }
    let mut candidates = Vec::new();
    for x in (0..1u64 << ground).map(SetMask) {
        for y in (0..1u64 << ground).map(SetMask) {
            if x.len() <= a && y.len() <= b && x.intersection(y).is_empty() {
                candidates.push((x, y));
            }
        }
    }
    fn rec(
        cands: &[(SetMask, SetMask)],
        used: &mut Vec<bool>,
        seq: &mut Vec<(SetMask, SetMask)>,
        best: &mut Vec<(SetMask, SetMask)>,
    ) {
        if seq.len() > best.len() {
            *best = seq.clone();
        }
        for (i, &(x, y)) in cands.iter().enumerate() {
            if used[i] || !seq.iter().all(|&(px, _)| !px.intersection(y).is_empty()) {
                continue;
            }
            used[i] = true;
            seq.push((x, y));
            rec(cands, used, seq, best);
            seq.pop();
            used[i] = false;
        }
    }
    let mut best = Vec::new();
    rec(&candidates, &mut vec![false; candidates.len()], &mut Vec::new(), &mut best);
    SetPairFamily::new(ground, best)
}

/// Smallest number of ordered pairs `j ≠ k` with `A_j ∩ B_k = ∅` over
/// families of `size` distinct pairs over `[ground]` meeting conditions (1)
/// and (3) of [`is_isp`].
pub fn isp_min_violations(ground: u32, n: u32, size: usize, budget: &EnumBudget) -> Result<(u64, SetPairFamily)> {
    if ground > 4 {
        return Err(Error::BudgetExceeded(format!("ISP search over [{ground}]")));
    }
    let mut candidates = Vec::new();
    for x in (0..1u64 << ground).map(SetMask) {
        for y in (0..1u64 << ground).map(SetMask) {
            if x.intersection(y).is_empty() && x.len() + y.len() <= n {
                candidates.push((x, y));
            }
        }
    }
    if size > candidates.len() {
        return Err(Error::InvalidParams(format!("only {} admissible pairs", candidates.len())));
    }
    let families = binomial_u64(candidates.len() as u64, size as u64).unwrap_or(u64::MAX);
    if families > budget.max_nodes_expanded {
        return Err(Error::BudgetExceeded(format!("{families} families to scan")));
    }
    let bad = |i: usize, j: usize| candidates[i].0.intersection(candidates[j].1).is_empty() as u64;
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut combo: Vec<usize> = (0..size).collect();
    let total = candidates.len();
    loop {
        let mut v = 0;
        for &i in &combo {
            for &j in &combo {
                if i != j {
                    v += bad(i, j);
                }
            }
        }
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, combo.clone()));
        }
        let mut i = size;
        while i > 0 && combo[i - 1] == total - size + i - 1 {
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
    let (v, picks) = best.expect("nonempty search");
    Ok((v, SetPairFamily::new(ground, picks.into_iter().map(|i| candidates[i]).collect())?))
}

/// The three blocks of the skew construction over `[n+1]` and the lazily
/// enumerated families built from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction78 {
    pub n: u32,
    /// `(A, {2..n+1} \ A)` for `A ⊂ {2..n}`, `|A| = n/2`.
    pub f1: Vec<(SetMask, SetMask)>,
    /// `(A, [n] \ A)` for the same `A`; `f1[i]` and `f2_prime[i]` form a bad
    /// pair.
    pub f2_prime: Vec<(SetMask, SetMask)>,
    /// `(A, [n] \ A)` for `A ⊂ [n]`, `1 ∈ A`, `|A| = n/2`.
    pub f2_double_prime: Vec<(SetMask, SetMask)>,
}

pub fn construction_78(n: u32) -> Result<Construction78> {
    if n == 0 || n % 2 == 1 || n > 20 {
        return Err(Error::InvalidParams(format!("need a positive even n <= 20, got {n}")));
    }
    let half = n / 2;
    let without_one = SetMask::full(n).without(1);
    let upper = without_one.with(n + 1);
    let mut f1 = Vec::new();
    let mut f2_prime = Vec::new();
    let mut f2_double_prime = Vec::new();
    for a in k_subsets(n, half) {
        if a.contains(1) {
            f2_double_prime.push((a, SetMask::full(n).difference(a)));
        } else {
            f1.push((a, upper.difference(a)));
            f2_prime.push((a, SetMask::full(n).difference(a)));
        }
    }
    Ok(Construction78 {
        n,
        f1,
        f2_prime,
        f2_double_prime,
    })
}

impl Construction78 {
    /// `3^{#bad pairs} 2^{|F2''|}`.
    pub fn count(&self) -> BigCount {
        BigUint::from(3u32).pow(self.f1.len() as u32) * BigUint::from(2u32).pow(self.f2_double_prime.len() as u32)
    }

    /// The whole ordered family: `F1` then `F2` (`F2'` and `F2''` merged in
    /// order of their first sets).
    pub fn full_family(&self) -> SetPairFamily {
        let mut f2: Vec<(SetMask, SetMask)> = self.f2_prime.iter().chain(&self.f2_double_prime).copied().collect();
        f2.sort();
        let mut pairs = self.f1.clone();
        pairs.extend(f2);
        SetPairFamily {
            ground: self.n + 1,
            pairs,
        }
    }

    /// The family with mixed-radix index `index`: one base-3 digit per bad
    /// pair (none, the `F1` member, the `F2'` member), then one bit per `F2''`
    /// member.
    pub fn family_at(&self, index: u64) -> SetPairFamily {
        let mut rest = index;
        let mut first = Vec::new();
        let mut second = Vec::new();
        for i in 0..self.f1.len() {
            match rest % 3 {
                1 => first.push(self.f1[i]),
                2 => second.push(self.f2_prime[i]),
                _ => {}
            }
            rest /= 3;
        }
        for &pair in &self.f2_double_prime {
            if rest % 2 == 1 {
                second.push(pair);
            }
            rest /= 2;
        }
        second.sort();
        first.extend(second);
        SetPairFamily {
            ground: self.n + 1,
            pairs: first,
        }
    }

    /// All families, lazily. Panics if the count does not fit in `u64`.
    pub fn families(&self) -> impl Iterator<Item = SetPairFamily> + '_ {
        let total: u64 = self.count().try_into().expect("count fits in u64");
        (0..total).map(move |i| self.family_at(i))
    }
}

/// A triple `(B, r, s)` with `|B| = k`, `1 ∉ B`, `r ∉ B`, `r ≠ 1`, `s ∈ B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GoodTriple {
    pub b: SetMask,
    pub r: u32,
    pub s: u32,
}

impl GoodTriple {
    pub fn new(n: u32, k: u32, b: SetMask, r: u32, s: u32) -> Result<GoodTriple> {
        let t = GoodTriple { b, r, s };
        if t.is_good(n, k) {
            Ok(t)
        } else {
            Err(Error::InvalidParams(format!("({b}, {r}, {s}) is not a good triple for n={n}, k={k}")))
        }
    }

    pub fn is_good(&self, n: u32, k: u32) -> bool {
        self.b.fits(n)
            && self.b.len() == k
            && (1..=n).contains(&self.r)
            && (1..=n).contains(&self.s)
            && !self.b.contains(1)
            && !self.b.contains(self.r)
            && self.r != 1
            && self.b.contains(self.s)
    }

    /// `B ∪ {r}`, a (k+1)-set placed in the independent set.
    pub fn upper_vertex(&self) -> SetMask {
        self.b.with(self.r)
    }

    /// `(B ∪ {1}) \ {s}`, a k-set placed in the independent set.
    pub fn lower_vertex(&self) -> SetMask {
        self.b.with(1).without(self.s)
    }

    /// `(B^r_s, s, r)`, the other triple on the same 6-cycle.
    pub fn partner(&self) -> GoodTriple {
        GoodTriple {
            b: self.b.with(self.r).without(self.s),
            r: self.s,
            s: self.r,
        }
    }

    /// The two matching edges left without an endpoint, by lower end.
    pub fn skipped_edges(&self) -> [SetMask; 2] {
        [self.b, self.b.with(self.r).without(self.s)]
    }
}

impl std::fmt::Display for GoodTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.b, self.r, self.s)
    }
}

fn check_nk(n: u32, k: u32) -> Result<()> {
    if n > 20 || k == 0 || k + 2 > n {
        return Err(Error::InvalidParams(format!("need 1 <= k <= n-2 and n <= 20, got n={n}, k={k}")));
    }
    Ok(())
}

/// Every good triple, ordered by `(B, r, s)`.
pub fn good_triples(n: u32, k: u32) -> Result<Vec<GoodTriple>> {
    check_nk(n, k)?;
    let mut out = Vec::new();
    for b in k_subsets(n, k).filter(|b| !b.contains(1)) {
        for r in 2..=n {
            if b.contains(r) {
                continue;
            }
            for s in b.elements() {
                out.push(GoodTriple { b, r, s });
            }
        }
    }
    Ok(out)
}

/// `binom(n-1, k) k (n-k-1)`.
pub fn good_triple_count(n: u32, k: u32) -> BigCount {
    crate::lattice::binomial((n - 1) as u64, k as u64) * BigCount::from(k as u64 * (n - k - 1) as u64)
}

/// Lower ends `C` of the matching `{(C, C ∪ {1}) : 1 ∉ C, |C| = k}`, in
/// increasing order.
pub fn matching_lower_ends(n: u32, k: u32) -> Vec<SetMask> {
    k_subsets(n, k).filter(|c| !c.contains(1)).collect()
}

/// Matching edges (by lower end) untouched by the triple's down-set and
/// up-set; these are the free choices of [`construct_ft`].
pub fn free_edges(t: &GoodTriple, n: u32, k: u32) -> Vec<SetMask> {
    let upper = t.upper_vertex();
    let lower = t.lower_vertex();
    matching_lower_ends(n, k)
        .into_iter()
        .filter(|&c| !c.is_subset_of(upper) && !lower.is_subset_of(c.with(1)))
        .collect()
}

/// Builds the independent set of `B_{n,k}` attached to `t` and the free
/// edge choices: bit `i` of `choices` picks the upper end of free edge `i`.
pub fn construct_ft(t: &GoodTriple, n: u32, k: u32, choices: &[bool]) -> Result<Family> {
    check_nk(n, k)?;
    if !t.is_good(n, k) {
        return Err(Error::InvalidParams(format!("{t} is not a good triple")));
    }
    let upper = t.upper_vertex();
    let lower = t.lower_vertex();
    let skipped = t.skipped_edges();
    let free = free_edges(t, n, k);
    if choices.len() != free.len() {
        return Err(Error::InvalidParams(format!(
            "{} free edges but {} choices",
            free.len(),
            choices.len()
        )));
    }
    let mut members = vec![upper, lower];
    let mut free_pos = 0;
    for c in matching_lower_ends(n, k) {
        if skipped.contains(&c) {
            continue;
        }
        let in_down = c.is_subset_of(upper);
        let in_up = lower.is_subset_of(c.with(1));
        match (in_down, in_up) {
            (true, false) => members.push(c.with(1)),
            (false, true) => members.push(c),
            (false, false) => {
                members.push(if choices[free_pos] { c.with(1) } else { c });
                free_pos += 1;
            }
            (true, true) => unreachable!("only the skipped edges meet both sides"),
        }
    }
    members.sort_unstable();
    Family::new(n, members)
}

/// Every independent set attached to `t` (all free choices).
pub fn all_ft(t: &GoodTriple, n: u32, k: u32) -> Result<Vec<Family>> {
    let free = free_edges(t, n, k).len();
    if free > 20 {
        return Err(Error::BudgetExceeded(format!("2^{free} choices")));
    }
    (0..1u64 << free)
        .map(|bits| {
            let choices: Vec<bool> = (0..free).map(|i| bits >> i & 1 == 1).collect();
            construct_ft(t, n, k, &choices)
        })
        .collect()
}

pub fn bnk_graph(n: u32, k: u32) -> Result<AuxGraph> {
    build_graph(n, GraphKind::Bnk { k })
}

/// Greedy first-fit completion in canonical vertex order.
pub fn extend_to_maximal(graph: &AuxGraph, independent: &[usize]) -> Result<Vec<usize>> {
    graph.check_independent(independent)?;
    let mut chosen = vec![false; graph.order()];
    for &v in independent {
        chosen[v] = true;
    }
    for v in 0..graph.order() {
        if !chosen[v] && !graph.neighbors(v).iter().any(|&w| chosen[w]) {
            chosen[v] = true;
        }
    }
    Ok((0..graph.order()).filter(|&v| chosen[v]).collect())
}

pub fn extend_family_to_maximal(graph: &AuxGraph, family: &Family) -> Result<Family> {
    let idx = graph.indices_of(family)?;
    graph.family_of(&extend_to_maximal(graph, &idx)?)
}

/// No vertex outside `set` can be added.
pub fn is_maximal_independent(graph: &AuxGraph, set: &[usize]) -> bool {
    if !graph.is_independent(set) {
        return false;
    }
    let inside: BTreeSet<usize> = set.iter().copied().collect();
    (0..graph.order()).all(|v| inside.contains(&v) || graph.neighbors(v).iter().any(|w| inside.contains(w)))
}

/// The `2^{binom(n-1,k)}` transversals of the matching
/// `M_i = {(B, B ∪ {i}) : i ∉ B, |B| = k}`; transversal `x` takes the upper
/// end of edge `j` when bit `j` of `x` is set.
pub fn matching_lower_bound(n: u32, k: u32, i: u32) -> Result<impl Iterator<Item = Family>> {
    if n > 20 || k == 0 || k >= n || i == 0 || i > n {
        return Err(Error::InvalidParams(format!("need 1 <= k < n and i in [n], got n={n}, k={k}, i={i}")));
    }
    let edges: Vec<SetMask> = k_subsets(n, k).filter(|b| !b.contains(i)).collect();
    if edges.len() > 40 {
        return Err(Error::BudgetExceeded(format!("2^{} transversals", edges.len())));
    }
    let total = 1u64 << edges.len();
    Ok((0..total).map(move |bits| {
        let mut members: Vec<SetMask> = edges
            .iter()
            .enumerate()
            .map(|(j, &b)| if bits >> j & 1 == 1 { b.with(i) } else { b })
            .collect();
        members.sort_unstable();
        Family::new(n, members).expect("k-sets of [n]")
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub n: u32,
    pub k: u32,
    pub good_triples: u64,
    pub sets_per_triple: u64,
    pub all_independent: bool,
    /// Each emitted set arises from exactly two triples, `T` and its partner.
    pub two_to_one: bool,
    pub distinct_sets: u64,
    pub distinct_maximal: u64,
    pub transversal_lower_bound: u64,
    pub mis: String,
    pub consistent: bool,
}

/// Runs the good-triple construction end to end and compares it with the
/// maximal independent set oracle.
pub fn good_triple_pipeline(n: u32, k: u32, budget: &EnumBudget) -> Result<PipelineReport> {
    let graph = bnk_graph(n, k)?;
    let triples = good_triples(n, k)?;
    let mut provenance: BTreeMap<Family, Vec<GoodTriple>> = BTreeMap::new();
    let mut all_independent = true;
    let mut per_triple = 0;
    for t in &triples {
        let sets = all_ft(t, n, k)?;
        per_triple = sets.len() as u64;
        for f in sets {
            if !graph.is_independent(&graph.indices_of(&f)?) {
                all_independent = false;
            }
            provenance.entry(f).or_default().push(*t);
        }
    }
    let two_to_one = provenance.values().all(|ts| {
        ts.len() == 2 && ts.contains(&ts[0].partner()) && ts[0] != ts[0].partner()
    });
    let mut maximal = BTreeSet::new();
    for f in provenance.keys() {
        maximal.insert(extend_family_to_maximal(&graph, f)?);
    }
    let (mis, _) = enumerate_maximal_independent_sets(&graph, budget, false)?;
    let transversal = 1u64 << matching_lower_ends(n, k).len();
    let consistent = mis >= BigCount::from(maximal.len() as u64) && mis >= BigCount::from(transversal);
    Ok(PipelineReport {
        n,
        k,
        good_triples: triples.len() as u64,
        sets_per_triple: per_triple,
        all_independent,
        two_to_one,
        distinct_sets: provenance.len() as u64,
        distinct_maximal: maximal.len() as u64,
        transversal_lower_bound: transversal,
        mis: mis.to_string(),
        consistent,
    })
}

/// Matching edges (by lower end) touched by the triple's down-set or up-set.
pub fn touched_edges(t: &GoodTriple, n: u32, k: u32) -> Vec<SetMask> {
    let upper = t.upper_vertex();
    let lower = t.lower_vertex();
    matching_lower_ends(n, k)
        .into_iter()
        .filter(|&c| c.is_subset_of(upper) || lower.is_subset_of(c.with(1)))
        .collect()
}

/// Greedily picks up to `max_count` good triples whose base sets are
/// pairwise at Hamming distance at least `radius` and whose touched edges
/// are pairwise disjoint.
pub fn separated_triples(n: u32, k: u32, max_count: usize, radius: u32) -> Result<Vec<GoodTriple>> {
    let mut picked: Vec<GoodTriple> = Vec::new();
    let mut touched: BTreeSet<SetMask> = BTreeSet::new();
    for t in good_triples(n, k)? {
        if picked.len() == max_count {
            break;
        }
        let mine = touched_edges(&t, n, k);
        if picked.iter().all(|p| p.b.distance(t.b) >= radius) && mine.iter().all(|c| !touched.contains(c)) {
            touched.extend(mine);
            picked.push(t);
        }
    }
    Ok(picked)
}

/// The joint modification for several triples: each triple's two vertices,
/// forced ends on matching edges touched by exactly one of its sides, and
/// `choices` on edges no triple touches. Fails if the triples interfere.
pub fn construct_multi(triples: &[GoodTriple], n: u32, k: u32, choices: &[bool]) -> Result<Family> {
    check_nk(n, k)?;
    let mut forced: BTreeMap<SetMask, Option<SetMask>> = BTreeMap::new();
    let mut members = Vec::new();
    for t in triples {
        if !t.is_good(n, k) {
            return Err(Error::InvalidParams(format!("{t} is not a good triple")));
        }
        members.push(t.upper_vertex());
        members.push(t.lower_vertex());
        for c in matching_lower_ends(n, k) {
            let in_down = c.is_subset_of(t.upper_vertex());
            let in_up = t.lower_vertex().is_subset_of(c.with(1));
            let pick = match (in_down, in_up) {
                (false, false) => continue,
                (true, true) => None,
                (true, false) => Some(c.with(1)),
                (false, true) => Some(c),
            };
            if forced.insert(c, pick).is_some() {
                return Err(Error::InvalidParams(format!("triples interfere at edge {c}")));
            }
        }
    }
    let free: Vec<SetMask> = matching_lower_ends(n, k)
        .into_iter()
        .filter(|c| !forced.contains_key(c))
        .collect();
    if choices.len() != free.len() {
        return Err(Error::InvalidParams(format!(
            "{} free edges but {} choices",
            free.len(),
            choices.len()
        )));
    }
    members.extend(forced.values().flatten());
    for (c, &up) in free.iter().zip(choices) {
        members.push(if up { c.with(1) } else { *c });
    }
    members.sort_unstable();
    let before = members.len();
    members.dedup();
    if members.len() != before {
        return Err(Error::InvalidParams("triples interfere: repeated vertex".into()));
    }
    Family::new(n, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[u32]) -> SetMask {
        SetMask::from_elements(e)
    }

    #[test]
    fn isp_checks() {
        let f = SetPairFamily::new(2, vec![(s(&[1]), s(&[2])), (s(&[2]), s(&[1]))]).unwrap();
        assert!(is_isp(&f, 2));
        let comp: Vec<_> = k_subsets(4, 2).map(|a| (a, SetMask::full(4).difference(a))).collect();
        assert!(is_isp(&SetPairFamily::new(4, comp).unwrap(), 4));
        let bad = SetPairFamily::new(2, vec![(s(&[1]), s(&[1, 2]))]).unwrap();
        assert!(!is_isp(&bad, 2));
        assert!(is_skew(&f, 1, 1));
    }

    #[test]
    fn skew_is_order_sensitive() {
        let f = SetPairFamily::new(2, vec![(s(&[1, 2]), s(&[])), (s(&[1]), s(&[2]))]).unwrap();
        assert!(is_skew(&f, 2, 2));
        let rev = SetPairFamily::new(2, f.pairs.iter().rev().copied().collect()).unwrap();
        assert!(!is_skew(&rev, 2, 2));
    }

    #[test]
    fn construction_small() {
        let c = construction_78(2).unwrap();
        assert_eq!(c.f1, vec![(s(&[2]), s(&[3]))]);
        assert_eq!(c.f2_prime, vec![(s(&[2]), s(&[1]))]);
        assert_eq!(c.f2_double_prime, vec![(s(&[1]), s(&[2]))]);
        assert_eq!(c.count(), BigCount::from(6u32));
        let fams: BTreeSet<SetPairFamily> = c.families().collect();
        assert_eq!(fams.len(), 6);
        assert!(fams.iter().all(|f| is_skew(f, 1, 1)));
        assert_eq!(c.full_family().len(), 3);
        assert!(construction_78(3).is_err());
    }

    #[test]
    fn triples() {
        let all = good_triples(4, 2).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(good_triple_count(4, 2), BigCount::from(6u32));
        assert!(GoodTriple::new(4, 2, s(&[2, 3]), 4, 2).is_ok());
        assert!(GoodTriple::new(4, 2, s(&[1, 2]), 3, 1).is_err());
        for t in &all {
            assert!(t.partner().is_good(4, 2));
            assert_eq!(t.partner().partner(), *t);
            assert!(free_edges(t, 4, 2).is_empty());
        }
    }

    #[test]
    fn ft_is_independent() {
        for (n, k) in [(4, 2), (5, 2)] {
            let g = bnk_graph(n, k).unwrap();
            for t in good_triples(n, k).unwrap() {
                let free = free_edges(&t, n, k).len() as u32;
                assert_eq!(free as u64 + n as u64, binomial_u64((n - 1) as u64, k as u64).unwrap() + 1);
                assert_eq!(touched_edges(&t, n, k).len() as u32, n - 1);
                for f in all_ft(&t, n, k).unwrap() {
                    assert!(g.is_independent(&g.indices_of(&f).unwrap()));
                    assert!(f.contains(t.upper_vertex()) && f.contains(t.lower_vertex()));
                }
            }
        }
    }

    #[test]
    fn maximal_extension() {
        let g = bnk_graph(3, 1).unwrap();
        let ext = extend_to_maximal(&g, &[]).unwrap();
        assert_eq!(g.family_of(&ext).unwrap().members(), &[s(&[1]), s(&[2]), s(&[3])]);
        assert!(is_maximal_independent(&g, &ext));
        assert_eq!(extend_to_maximal(&g, &ext).unwrap(), ext);
    }

    #[test]
    fn transversals() {
        let g = bnk_graph(3, 1).unwrap();
        let all: Vec<Family> = matching_lower_bound(3, 1, 1).unwrap().collect();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|f| g.is_independent(&g.indices_of(f).unwrap())));
        assert_eq!(matching_lower_bound(4, 2, 3).unwrap().count(), 8);
    }

    #[test]
    fn pipeline_4_2() {
        let r = good_triple_pipeline(4, 2, &EnumBudget::default()).unwrap();
        assert_eq!(r.good_triples, 6);
        assert_eq!(r.sets_per_triple, 1);
        assert!(r.all_independent && r.two_to_one && r.consistent);
        assert_eq!(r.distinct_sets, 3);
    }

    #[test]
    fn skew_maximum() {
        assert_eq!(max_skew_family(2, 1, 1).unwrap().len(), 2);
    }

    #[test]
    fn text_round_trip() {
        let c = construction_78(2).unwrap().full_family();
        assert_eq!(SetPairFamily::parse_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn multi_triples() {
        let ts = separated_triples(8, 4, 3, 4).unwrap();
        assert!(ts.len() >= 2);
        let g = bnk_graph(8, 4).unwrap();
        let free = matching_lower_ends(8, 4).len();
        assert!(construct_multi(&ts, 8, 4, &vec![false; free]).is_err());
        let left = free - ts.len() * 7;
        for bit in [false, true] {
            let f = construct_multi(&ts, 8, 4, &vec![bit; left]).unwrap();
            assert!(g.is_independent(&g.indices_of(&f).unwrap()));
        }
        let overlap = [ts[0], ts[0].partner()];
        assert!(construct_multi(&overlap, 8, 4, &[]).is_err());
    }

    #[test]
    fn ft_skips_exactly_two_edges_on_a_six_cycle() {
        for (n, k) in [(4, 2), (5, 2)] {
            let g = bnk_graph(n, k).unwrap();
            for t in good_triples(n, k).unwrap() {
                let [e, f] = t.skipped_edges();
                let cycle = [e, t.upper_vertex(), f, f.with(1), t.lower_vertex(), e.with(1)];
                for w in 0..6 {
                    let (a, b) = (g.index_of_set(cycle[w]).unwrap(), g.index_of_set(cycle[(w + 1) % 6]).unwrap());
                    assert!(g.adjacent(a, b), "{t}: cycle broken at {}", cycle[w]);
                }
                for fam in all_ft(&t, n, k).unwrap() {
                    for c in matching_lower_ends(n, k) {
                        let hits = fam.contains(c) as u32 + fam.contains(c.with(1)) as u32;
                        assert_eq!(hits, if c == e || c == f { 0 } else { 1 }, "{t} at edge {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn maximal_antichains_dominate_bnk() {
        let budget = EnumBudget::default();
        for n in 1..=4u32 {
            let cube = build_graph(n, GraphKind::Comparability).unwrap();
            let (ma, _) = enumerate_maximal_independent_sets(&cube, &budget, false).unwrap();
            for k in 0..n {
                let (mis, _) = enumerate_maximal_independent_sets(&bnk_graph(n, k).unwrap(), &budget, false).unwrap();
                assert!(ma >= mis, "n={n} k={k}: {ma} < {mis}");
            }
        }
    }
}
