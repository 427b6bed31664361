//! Implicit auxiliary graphs whose independent sets are the families being
//! counted: antichains, tilted Sperner families, codes, intersecting
//! families, transportation codes, two-coloured Sperner families and
//! antichains of the two-layer graph `B(n,k)`.
//!
//! No edge list is ever stored. Vertices live in a canonical universe
//! (masks by integer value, disjoint pairs lexicographically) and adjacency
//! is evaluated from the masks on demand.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice::{check_ground, k_subsets, Family, SetMask};

/// Largest ground set for graphs on all of `P(n)`.
pub const MAX_CUBE_N: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// `A ~ B` iff `A` and `B` are distinct and comparable.
    Comparability,
    /// `A ~ B` iff `p|A\B| = q|B\A|` or `q|A\B| = p|B\A|`.
    Tilt { p: u32, q: u32 },
    /// `A ~ B` iff `0 < d(A,B) <= 2t`.
    Hamming { t: u32 },
    /// `A ~ B` iff `|A ∩ B| < t`.
    Intersection { t: u32 },
    /// Disjoint k-set pairs at transportation distance `<= 2t`.
    Transport { k: u32, t: u32 },
    /// Comparable with a difference inside `R` or inside its complement.
    MonoDiff { red: SetMask },
    /// Inclusion between layers `k` and `k + 1`.
    Bnk { k: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphSpec {
    pub n: u32,
    pub kind: GraphKind,
}

impl GraphSpec {
    pub fn new(n: u32, kind: GraphKind) -> Result<GraphSpec> {
        let spec = GraphSpec { n, kind };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        check_ground(self.n)?;
        let n = self.n;
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        match self.kind {
            GraphKind::Comparability => {}
            GraphKind::Tilt { p, q } => {
                if p == 0 || p >= q {
                    return bad(format!("tilt needs 1 <= p < q, got p={p}, q={q}"));
                }
                if p.gcd(&q) != 1 {
                    return bad(format!("tilt needs coprime p, q, got p={p}, q={q}"));
                }
            }
            GraphKind::Hamming { t } | GraphKind::Intersection { t } => {
                if t == 0 {
                    return bad("t must be at least 1".into());
                }
            }
            GraphKind::Transport { k, t } => {
                if t == 0 {
                    return bad("t must be at least 1".into());
                }
                if k == 0 || 2 * k > n {
                    return bad(format!("transport needs 1 <= k and 2k <= n, got n={n}, k={k}"));
                }
            }
            GraphKind::MonoDiff { red } => {
                if !red.fits(n) {
                    return bad(format!("colouring {:#x} is not a subset of [{n}]", red.0));
                }
            }
            GraphKind::Bnk { k } => {
                if k >= n {
                    return bad(format!("bnk needs 0 <= k < n, got n={n}, k={k}"));
                }
            }
        }
        let cube = !matches!(self.kind, GraphKind::Transport { .. } | GraphKind::Bnk { .. });
        if cube && n > MAX_CUBE_N {
            return bad(format!("graphs on P(n) are limited to n <= {MAX_CUBE_N}"));
        }
        Ok(())
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match self.kind {
            GraphKind::Comparability => write!(f, "comparability:n={n}"),
            GraphKind::Tilt { p, q } => write!(f, "tilt:n={n},p={p},q={q}"),
            GraphKind::Hamming { t } => write!(f, "hamming:n={n},t={t}"),
            GraphKind::Intersection { t } => write!(f, "intersection:n={n},t={t}"),
            GraphKind::Transport { k, t } => write!(f, "transport:n={n},k={k},t={t}"),
            GraphKind::MonoDiff { red } => write!(f, "mono_diff:n={n},R={:#x}", red.0),
            GraphKind::Bnk { k } => write!(f, "bnk:n={n},k={k}"),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphSpec> {
        let fail = |reason: &str| Error::GraphSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let (name, params) = s.split_once(':').ok_or_else(|| fail("expected `<kind>:<params>`"))?;
        let mut values: Vec<(&str, &str)> = Vec::new();
        for item in params.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| fail(&format!("parameter `{item}` is not key=value")))?;
            values.push((key.trim(), value.trim()));
        }
        let get = |key: &str| -> Result<u32> {
            let raw = values
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| fail(&format!("missing parameter `{key}`")))?;
            raw.parse()
                .map_err(|_| fail(&format!("parameter `{key}` is not a nonnegative integer")))
        };
        let expected: &[&str] = match name.trim() {
            "comparability" => &["n"],
            "tilt" => &["n", "p", "q"],
            "hamming" | "intersection" => &["n", "t"],
            "transport" => &["n", "k", "t"],
            "mono_diff" => &["n", "R"],
            "bnk" => &["n", "k"],
            other => return Err(fail(&format!("unknown graph kind `{other}`"))),
        };
        if let Some((k, _)) = values.iter().find(|(k, _)| !expected.contains(k)) {
            return Err(fail(&format!("unexpected parameter `{k}`")));
        }
        let n = get("n")?;
        let kind = match name.trim() {
            "comparability" => GraphKind::Comparability,
            "tilt" => GraphKind::Tilt { p: get("p")?, q: get("q")? },
            "hamming" => GraphKind::Hamming { t: get("t")? },
            "intersection" => GraphKind::Intersection { t: get("t")? },
            "transport" => GraphKind::Transport { k: get("k")?, t: get("t")? },
            "mono_diff" => {
                let raw = values
                    .iter()
                    .find(|(k, _)| *k == "R")
                    .map(|(_, v)| *v)
                    .ok_or_else(|| fail("missing parameter `R`"))?;
                let hex = raw.trim_start_matches("0x").trim_start_matches("0X");
                let bits = u64::from_str_radix(hex, 16)
                    .map_err(|_| fail("parameter `R` is not a hex mask"))?;
                GraphKind::MonoDiff { red: SetMask(bits) }
            }
            "bnk" => GraphKind::Bnk { k: get("k")? },
            _ => unreachable!(),
        };
        GraphSpec::new(n, kind).map_err(|e| fail(&e.to_string()))
    }
}

/// An unordered pair of disjoint k-sets, stored with `first <= second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DisjointPair {
    first: SetMask,
    second: SetMask,
}

impl DisjointPair {
    pub fn new(a: SetMask, b: SetMask) -> Result<DisjointPair> {
        if !a.intersection(b).is_empty() {
            return Err(Error::InvalidParams(format!("{a} and {b} are not disjoint")));
        }
        if a.len() != b.len() {
            return Err(Error::InvalidParams(format!("{a} and {b} differ in size")));
        }
        Ok(DisjointPair::canonical(a, b))
    }

    #[inline]
    pub(crate) fn canonical(a: SetMask, b: SetMask) -> DisjointPair {
        if a <= b {
            DisjointPair { first: a, second: b }
        } else {
            DisjointPair { first: b, second: a }
        }
    }

    pub fn first(&self) -> SetMask {
        self.first
    }

    pub fn second(&self) -> SetMask {
        self.second
    }

    /// Size of each side.
    pub fn k(&self) -> u32 {
        self.first.len()
    }

    pub fn support(&self) -> SetMask {
        self.first.union(self.second)
    }
}

impl fmt::Display for DisjointPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

#[inline]
fn transport_distance_raw(x: &DisjointPair, y: &DisjointPair) -> u32 {
    let straight = x.first.difference(y.first).len() + x.second.difference(y.second).len();
    let crossed = x.first.difference(y.second).len() + x.second.difference(y.first).len();
    straight.min(crossed)
}

/// Enomoto-Katona (transportation) distance.
pub fn transport_distance(x: &DisjointPair, y: &DisjointPair) -> Result<u32> {
    if x.k() != y.k() {
        return Err(Error::InvalidParams(format!(
            "pair sizes differ: {} vs {}",
            x.k(),
            y.k()
        )));
    }
    Ok(transport_distance_raw(x, y))
}

/// All unordered pairs of disjoint k-subsets of `[n]`, lexicographic.
pub fn disjoint_pairs(n: u32, k: u32) -> Vec<DisjointPair> {
    let mut out = Vec::new();
    for first in k_subsets(n, k) {
        for second in k_subsets(n, k) {
            if second > first && first.intersection(second).is_empty() {
                out.push(DisjointPair { first, second });
            }
        }
    }
    if k == 0 {
        out.push(DisjointPair {
            first: SetMask::EMPTY,
            second: SetMask::EMPTY,
        });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vertex {
    Set(SetMask),
    Pair(DisjointPair),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Set(m) => write!(f, "{m}"),
            Vertex::Pair(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug)]
enum Universe {
    /// All of `P(n)`; the vertex index is the mask value.
    Cube,
    /// Sorted masks; index is the position.
    Sets(Vec<SetMask>),
    Pairs(Vec<DisjointPair>),
}

/// A graph on a canonical vertex universe with adjacency computed on demand.
#[derive(Clone, Debug)]
pub struct AuxGraph {
    spec: GraphSpec,
    universe: Universe,
}

pub fn build_graph(n: u32, kind: GraphKind) -> Result<AuxGraph> {
    AuxGraph::new(GraphSpec::new(n, kind)?)
}

impl AuxGraph {
    pub fn new(spec: GraphSpec) -> Result<AuxGraph> {
        spec.validate()?;
        let universe = match spec.kind {
            GraphKind::Transport { k, .. } => Universe::Pairs(disjoint_pairs(spec.n, k)),
            GraphKind::Bnk { k } => {
                let mut sets: Vec<SetMask> =
                    k_subsets(spec.n, k).chain(k_subsets(spec.n, k + 1)).collect();
                sets.sort_unstable();
                Universe::Sets(sets)
            }
            _ => Universe::Cube,
        };
        Ok(AuxGraph { spec, universe })
    }

    pub fn parse(spec: &str) -> Result<AuxGraph> {
        AuxGraph::new(spec.parse()?)
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn n(&self) -> u32 {
        self.spec.n
    }

    pub fn kind(&self) -> GraphKind {
        self.spec.kind
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        match &self.universe {
            Universe::Cube => 1usize << self.spec.n,
            Universe::Sets(v) => v.len(),
            Universe::Pairs(v) => v.len(),
        }
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        match &self.universe {
            Universe::Cube => Vertex::Set(SetMask(i as u64)),
            Universe::Sets(v) => Vertex::Set(v[i]),
            Universe::Pairs(v) => Vertex::Pair(v[i]),
        }
    }

    /// The set at index `i`, for graphs whose vertices are sets.
    pub fn set_at(&self, i: usize) -> Option<SetMask> {
        match &self.universe {
            Universe::Cube => Some(SetMask(i as u64)),
            Universe::Sets(v) => v.get(i).copied(),
            Universe::Pairs(_) => None,
        }
    }

    pub fn pair_at(&self, i: usize) -> Option<DisjointPair> {
        match &self.universe {
            Universe::Pairs(v) => v.get(i).copied(),
            _ => None,
        }
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        match (&self.universe, v) {
            (Universe::Cube, Vertex::Set(m)) => m.fits(self.spec.n).then_some(m.0 as usize),
            (Universe::Sets(list), Vertex::Set(m)) => list.binary_search(m).ok(),
            (Universe::Pairs(list), Vertex::Pair(p)) => list.binary_search(p).ok(),
            _ => None,
        }
    }

    pub fn index_of_set(&self, m: SetMask) -> Option<usize> {
        self.index_of(&Vertex::Set(m))
    }

    /// Maps a family of sets to sorted vertex indices.
    pub fn indices_of(&self, family: &Family) -> Result<Vec<usize>> {
        let mut out = family
            .iter()
            .map(|m| {
                self.index_of_set(m)
                    .ok_or_else(|| Error::NotAVertex(m.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn indices_of_pairs(&self, pairs: &[DisjointPair]) -> Result<Vec<usize>> {
        let mut out = pairs
            .iter()
            .map(|p| {
                self.index_of(&Vertex::Pair(*p))
                    .ok_or_else(|| Error::NotAVertex(p.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Converts vertex indices back to a family; fails on pair universes.
    pub fn family_of(&self, indices: &[usize]) -> Result<Family> {
        let members = indices
            .iter()
            .map(|&i| {
                self.set_at(i)
                    .ok_or_else(|| Error::InvalidParams("graph vertices are not sets".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Family::new(self.spec.n, members)
    }

    fn sets_adjacent(&self, a: SetMask, b: SetMask) -> bool {
        if a == b {
            return false;
        }
        match self.spec.kind {
            GraphKind::Comparability | GraphKind::Bnk { .. } => a.comparable(b),
            GraphKind::Tilt { p, q } => {
                let x = a.difference(b).len();
                let y = b.difference(a).len();
                p * x == q * y || q * x == p * y
            }
            GraphKind::Hamming { t } => a.distance(b) <= 2 * t,
            GraphKind::Intersection { t } => a.intersection(b).len() < t,
            GraphKind::MonoDiff { red } => {
                if !a.comparable(b) {
                    return false;
                }
                let diff = SetMask(a.0 ^ b.0);
                diff.is_subset_of(red) || diff.intersection(red).is_empty()
            }
            GraphKind::Transport { .. } => unreachable!("pair universe"),
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        match &self.universe {
            Universe::Pairs(v) => {
                let GraphKind::Transport { t, .. } = self.spec.kind else {
                    unreachable!()
                };
                transport_distance_raw(&v[i], &v[j]) <= 2 * t
            }
            _ => self.sets_adjacent(self.set_at(i).unwrap(), self.set_at(j).unwrap()),
        }
    }

    /// Neighbors of `i` in increasing index order.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let n = self.spec.n;
        let mut out: Vec<usize> = match (&self.universe, self.spec.kind) {
            (Universe::Cube, GraphKind::Comparability) => {
                let a = SetMask(i as u64);
                let mut v = Vec::new();
                for_each_submask(a.0, |s| v.push(s as usize));
                for_each_submask(a.complement(n).0, |s| v.push((s | a.0) as usize));
                v.retain(|&x| x != i);
                v
            }
            (Universe::Cube, GraphKind::Hamming { t }) => {
                let mut v = Vec::new();
                for d in 1..=(2 * t).min(n) {
                    v.extend(k_subsets(n, d).map(|flip| (i as u64 ^ flip.0) as usize));
                }
                v
            }
            (Universe::Cube, GraphKind::Intersection { t }) => {
                let a = SetMask(i as u64);
                let mut v = Vec::new();
                for small in 0..t.min(a.len() + 1) {
                    let inside: Vec<u64> = k_subsets(a.len(), small)
                        .map(|sel| deposit(sel.0, a.0))
                        .collect();
                    for_each_submask(a.complement(n).0, |outside| {
                        for &y in &inside {
                            v.push((outside | y) as usize);
                        }
                    });
                }
                v.retain(|&x| x != i);
                v
            }
            (Universe::Cube, GraphKind::MonoDiff { red }) => {
                let a = SetMask(i as u64);
                let white = red.complement(n);
                let mut v = Vec::new();
                for colour in [red, white] {
                    for_each_submask(a.intersection(colour).0, |d| {
                        if d != 0 {
                            v.push((a.0 & !d) as usize);
                        }
                    });
                    for_each_submask(a.complement(n).intersection(colour).0, |d| {
                        if d != 0 {
                            v.push((a.0 | d) as usize);
                        }
                    });
                }
                v
            }
            _ => (0..self.order()).filter(|&j| self.adjacent(i, j)).collect(),
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).len()
    }

    /// Ok when no two of `indices` are adjacent; reports the first edge found.
    pub fn check_independent(&self, indices: &[usize]) -> Result<()> {
        for (x, &i) in indices.iter().enumerate() {
            if i >= self.order() {
                return Err(Error::NotAVertex(format!("index {i}")));
            }
            for &j in &indices[x + 1..] {
                if self.adjacent(i, j) {
                    return Err(Error::NotIndependent(i.min(j), i.max(j)));
                }
            }
        }
        Ok(())
    }

    pub fn is_independent(&self, indices: &[usize]) -> bool {
        self.check_independent(indices).is_ok()
    }

    /// Edge count of the whole graph.
    pub fn edge_count(&self) -> u64 {
        (0..self.order()).map(|i| self.degree(i) as u64).sum::<u64>() / 2
    }
}

/// Calls `f` on every submask of `mask`, including 0 and `mask`.
pub(crate) fn for_each_submask(mask: u64, mut f: impl FnMut(u64)) {
    let mut s = mask;
    loop {
        f(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & mask;
    }
}

/// Scatters the low bits of `src` onto the set bits of `mask`.
fn deposit(src: u64, mask: u64) -> u64 {
    let mut out = 0;
    let mut m = mask;
    let mut bit = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if src >> bit & 1 == 1 {
            out |= low;
        }
        m &= m - 1;
        bit += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[u32]) -> SetMask {
        SetMask::from_elements(e)
    }

    fn idx(g: &AuxGraph, e: &[u32]) -> usize {
        g.index_of_set(s(e)).unwrap()
    }

    #[test]
    fn spec_round_trip() {
        for text in [
            "comparability:n=4",
            "tilt:n=5,p=1,q=2",
            "hamming:n=6,t=1",
            "intersection:n=4,t=2",
            "transport:n=6,k=2,t=1",
            "mono_diff:n=4,R=0x3",
            "bnk:n=5,k=2",
        ] {
            let spec: GraphSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        let spec: GraphSpec = "mono_diff:n=4,R=3".parse().unwrap();
        assert_eq!(spec.kind, GraphKind::MonoDiff { red: SetMask(3) });
    }

    #[test]
    fn spec_rejects_bad_params() {
        for text in [
            "tilt:n=4,p=2,q=4",
            "tilt:n=4,p=0,q=1",
            "tilt:n=4,p=3,q=2",
            "transport:n=3,k=2,t=1",
            "mono_diff:n=2,R=0x4",
            "bnk:n=3,k=3",
            "hamming:n=3,t=0",
            "hamming:n=3",
            "cube:n=3",
            "comparability:n=3,t=1",
            "comparability",
        ] {
            assert!(text.parse::<GraphSpec>().is_err(), "{text}");
        }
    }

    #[test]
    fn comparability_degrees() {
        let g = build_graph(2, GraphKind::Comparability).unwrap();
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn tilt_edges_n3() {
        let g = build_graph(3, GraphKind::Tilt { p: 1, q: 2 }).unwrap();
        let mut edges = Vec::new();
        for i in 0..8 {
            for j in i + 1..8 {
                if g.adjacent(i, j) {
                    edges.push((SetMask(i as u64), SetMask(j as u64)));
                }
            }
        }
        assert_eq!(
            edges,
            vec![(s(&[1]), s(&[2, 3])), (s(&[2]), s(&[1, 3])), (s(&[1, 2]), s(&[3]))]
        );
        assert_eq!(g.degree(0), 0);
    }

    #[test]
    fn hamming_and_intersection_degrees() {
        let g = build_graph(3, GraphKind::Hamming { t: 1 }).unwrap();
        assert!((0..8).all(|i| g.degree(i) == 6));
        let g = build_graph(3, GraphKind::Intersection { t: 1 }).unwrap();
        assert_eq!(
            g.neighbors(idx(&g, &[1])),
            vec![idx(&g, &[]), idx(&g, &[2]), idx(&g, &[3]), idx(&g, &[2, 3])]
        );
    }

    #[test]
    fn transport_triangle() {
        let g = build_graph(4, GraphKind::Transport { k: 2, t: 1 }).unwrap();
        assert_eq!(g.order(), 3);
        for i in 0..3 {
            assert_eq!(g.degree(i), 2);
        }
        let x = DisjointPair::new(s(&[1, 2]), s(&[3, 4])).unwrap();
        let y = DisjointPair::new(s(&[1, 3]), s(&[2, 4])).unwrap();
        assert_eq!(transport_distance(&x, &y).unwrap(), 2);
        assert_eq!(transport_distance(&x, &x).unwrap(), 0);
        let z = DisjointPair::new(s(&[1]), s(&[2])).unwrap();
        assert!(transport_distance(&x, &z).is_err());
        assert!(DisjointPair::new(s(&[1, 2]), s(&[2, 3])).is_err());
    }

    #[test]
    fn mono_diff_four_cycle() {
        let g = build_graph(2, GraphKind::MonoDiff { red: s(&[1]) }).unwrap();
        let e = idx(&g, &[]);
        let one = idx(&g, &[1]);
        let two = idx(&g, &[2]);
        let full = idx(&g, &[1, 2]);
        assert_eq!(g.neighbors(e), vec![one, two]);
        assert_eq!(g.neighbors(full), vec![one, two]);
        assert!(!g.adjacent(e, full));
        assert!(!g.adjacent(one, two));
    }

    #[test]
    fn bnk_six_cycle() {
        let g = build_graph(3, GraphKind::Bnk { k: 1 }).unwrap();
        assert_eq!(g.order(), 6);
        let cycle = [
            s(&[1]),
            s(&[1, 2]),
            s(&[2]),
            s(&[2, 3]),
            s(&[3]),
            s(&[1, 3]),
        ];
        for w in 0..6 {
            let a = g.index_of_set(cycle[w]).unwrap();
            let b = g.index_of_set(cycle[(w + 1) % 6]).unwrap();
            assert!(g.adjacent(a, b));
            assert_eq!(g.degree(a), 2);
        }
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn generators_match_predicate() {
        let specs = [
            "comparability:n=5",
            "hamming:n=5,t=1",
            "hamming:n=5,t=2",
            "intersection:n=5,t=1",
            "intersection:n=5,t=2",
            "intersection:n=5,t=3",
            "mono_diff:n=5,R=0x5",
            "mono_diff:n=4,R=0x0",
            "tilt:n=4,p=1,q=3",
        ];
        for spec in specs {
            let g = AuxGraph::parse(spec).unwrap();
            for i in 0..g.order() {
                let brute: Vec<usize> = (0..g.order()).filter(|&j| g.adjacent(i, j)).collect();
                assert_eq!(g.neighbors(i), brute, "{spec} vertex {i}");
            }
        }
    }

    #[test]
    fn deposit_scatters_bits() {
        assert_eq!(deposit(0b11, 0b1010), 0b1010);
        assert_eq!(deposit(0b10, 0b1010), 0b1000);
    }
}
