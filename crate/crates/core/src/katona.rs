//! t-intersecting families: Katona's maximum, the random sublattice
//! `P(n, p)`, explicit large families inside it and Monte Carlo estimates of
//! the largest t-intersecting subfamily.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{binom_at_least, check_ground, k_subsets, BigCount, Family, SetMask};
use crate::oracles::{max_independent_set_dense, DenseGraph, EnumBudget};

/// Katona's `K(n, t)`, the size of the largest t-intersecting family in
/// `P(n)`.
pub fn katona_k(n: u32, t: u32) -> Result<BigCount> {
    if t == 0 || t > n {
        return Err(Error::InvalidParams(format!("need 1 <= t <= n, got n={n}, t={t}")));
    }
    let (n, t) = (n as u64, t as u64);
    Ok(if (n + t) % 2 == 0 {
        binom_at_least(n, (n + t) / 2)
    } else {
        binom_at_least(n - 1, (n + t - 1) / 2) * 2u32
    })
}

/// A probability `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Probability {
    pub num: u64,
    pub den: u64,
}

impl Probability {
    pub fn new(num: u64, den: u64) -> Result<Probability> {
        if den == 0 || num > den {
            return Err(Error::InvalidParams(format!("{num}/{den} is not a probability")));
        }
        Ok(Probability { num, den })
    }

    pub fn as_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Probability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Probability> {
        let bad = || Error::InvalidParams(format!("cannot read probability {s:?}"));
        match s.split_once('/') {
            Some((a, b)) => Probability::new(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => {
                let v: u64 = s.trim().parse().map_err(|_| bad())?;
                Probability::new(v, 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSample {
    pub n: u32,
    pub p: Probability,
    pub seed: u64,
    pub stream: u64,
    pub members: Family,
}

/// Keeps each subset of `[n]` independently with probability `p`, visiting
/// masks in increasing order and drawing once per mask.
pub fn sample_lattice_stream(n: u32, p: Probability, seed: u64, stream: u64) -> Result<RandomSample> {
    check_ground(n)?;
    if n > 30 {
        return Err(Error::BudgetExceeded(format!("sampling P({n})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut members = Vec::new();
    for bits in 0..1u64 << n {
        if rng.gen_range(0..p.den) < p.num {
            members.push(SetMask(bits));
        }
    }
    Ok(RandomSample {
        n,
        p,
        seed,
        stream,
        members: Family::from_sorted_unchecked(n, members),
    })
}

pub fn sample_lattice(n: u32, p: Probability, seed: u64) -> Result<RandomSample> {
    sample_lattice_stream(n, p, seed, 0)
}

/// One bit per subset of `[n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct SetBitmap {
    n: u32,
    words: Vec<u64>,
}

impl SetBitmap {
    pub fn new(n: u32) -> Result<SetBitmap> {
        check_ground(n)?;
        if n > 32 {
            return Err(Error::BudgetExceeded(format!("bitmap over P({n})")));
        }
        Ok(SetBitmap {
            n,
            words: vec![0; ((1u64 << n) as usize).div_ceil(64)],
        })
    }

    pub fn from_family(family: &Family) -> Result<SetBitmap> {
        let mut b = SetBitmap::new(family.ground())?;
        for m in family.iter() {
            b.insert(m);
        }
        Ok(b)
    }

    pub fn insert(&mut self, m: SetMask) {
        self.words[(m.0 >> 6) as usize] |= 1 << (m.0 & 63);
    }

    pub fn contains(&self, m: SetMask) -> bool {
        self.words[(m.0 >> 6) as usize] >> (m.0 & 63) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// The up-set generated by the members: `X` is set iff some member is a
    /// subset of `X`.
    pub fn up_closure(&self) -> SetBitmap {
        let mut out = self.clone();
        let n = self.n;
        // within-word positions: bit i of the mask is bit i of the position
        const LOW: [u64; 6] = [
            0x5555_5555_5555_5555,
            0x3333_3333_3333_3333,
            0x0f0f_0f0f_0f0f_0f0f,
            0x00ff_00ff_00ff_00ff,
            0x0000_ffff_0000_ffff,
            0x0000_0000_ffff_ffff,
        ];
        for i in 0..n.min(6) {
            let shift = 1u32 << i;
            for w in out.words.iter_mut() {
                *w |= (*w & LOW[i as usize]) << shift;
            }
        }
        if n < 6 {
            let live = (1u64 << (1u64 << n)) - 1;
            out.words[0] &= live;
        }
        for i in 6..n {
            let stride = 1usize << (i - 6);
            for j in 0..out.words.len() {
                if j & stride != 0 {
                    out.words[j] |= out.words[j ^ stride];
                }
            }
        }
        out
    }
}

impl fmt::Debug for SetBitmap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetBitmap(n={}, len={})", self.n, self.len())
    }
}

/// Answers "does some member meet `a` in fewer than `t` elements?" for a
/// fixed family, in time depending on `|a|` and `t` only.
pub struct IntersectionOracle {
    n: u32,
    t: u32,
    members: u64,
    up: SetBitmap,
    members_map: SetBitmap,
}

impl IntersectionOracle {
    pub fn new(family: &Family, t: u32) -> Result<IntersectionOracle> {
        let map = SetBitmap::from_family(family)?;
        Ok(IntersectionOracle {
            n: family.ground(),
            t,
            members: family.len() as u64,
            up: map.up_closure(),
            members_map: map,
        })
    }

    /// Whether a member `B != a` has `|a ∩ B| < t`.
    pub fn conflicts(&self, a: SetMask) -> bool {
        if self.t == 0 {
            return false;
        }
        if a.len() < self.t {
            let others = self.members - self.members_map.contains(a) as u64;
            return others > 0;
        }
        // B meets a in T with |T| < t iff B ⊆ (complement of a) ∪ T; for
        // |a| >= t such a B cannot be a itself
        self.any_below(a.complement(self.n), a.0, self.t - 1)
    }

    /// Whether some `x ∪ T` with `T ⊆ rest`, `|T| <= left` contains a member.
    fn any_below(&self, x: SetMask, rest: u64, left: u32) -> bool {
        if self.up.contains(x) {
            return true;
        }
        if left == 0 {
            return false;
        }
        let mut r = rest;
        while r != 0 {
            let bit = r & r.wrapping_neg();
            r &= r - 1;
            if self.any_below(SetMask(x.0 | bit), r, left - 1) {
                return true;
            }
        }
        false
    }
}

const PAIRWISE_LIMIT: usize = 4096;

/// Every two distinct members share at least `t` elements.
pub fn is_t_intersecting(family: &Family, t: u32) -> Result<bool> {
    Ok(first_violation(family, t)?.is_none())
}

/// A pair of members sharing fewer than `t` elements, if any.
pub fn first_violation(family: &Family, t: u32) -> Result<Option<(SetMask, SetMask)>> {
    let m = family.members();
    if m.len() <= PAIRWISE_LIMIT || family.ground() > 30 {
        for (i, &a) in m.iter().enumerate() {
            for &b in &m[i + 1..] {
                if a.intersection(b).len() < t {
                    return Ok(Some((a, b)));
                }
            }
        }
        return Ok(None);
    }
    let oracle = IntersectionOracle::new(family, t)?;
    for &a in m {
        if oracle.conflicts(a) {
            let b = m
                .iter()
                .copied()
                .find(|&b| b != a && a.intersection(b).len() < t)
                .expect("oracle reported a conflict");
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// Largest t-intersecting subfamily of `family`, with a witness.
pub fn max_t_intersecting(family: &Family, t: u32, budget: &EnumBudget) -> Result<(usize, Family)> {
    let m = family.members();
    if m.len() > budget.max_vertices {
        return Err(Error::BudgetExceeded(format!(
            "{} members (limit {})",
            m.len(),
            budget.max_vertices
        )));
    }
    let mut g = DenseGraph::empty(m.len());
    for (i, &a) in m.iter().enumerate() {
        for (j, &b) in m.iter().enumerate().skip(i + 1) {
            if a.intersection(b).len() < t {
                g.add_edge(i, j);
            }
        }
    }
    let (size, witness) = max_independent_set_dense(&g, budget)?;
    let members = witness.into_iter().map(|i| m[i]).collect();
    Ok((size, Family::new(family.ground(), members)?))
}

/// `{A : |A| >= (n + t) / 2}`.
pub fn build_a_ex(n: u32, t: u32) -> Result<Family> {
    check_ground(n)?;
    if n > 30 {
        return Err(Error::BudgetExceeded(format!("layers of P({n})")));
    }
    let members = (0..1u64 << n)
        .map(SetMask)
        .filter(|m| 2 * m.len() >= n + t)
        .collect();
    Ok(Family::from_sorted_unchecked(n, members))
}

/// Exact membership test for the lower family: size between
/// `n/2 - a sqrt(n)/2` and `n/2 - a sqrt(n)/4`, and at least `n/4 + t/2`
/// elements inside `[floor(n/2)]`.
pub fn in_a_lower(n: u32, t: u32, a: &BigRational, set: SetMask) -> bool {
    let half = SetMask::full(n / 2);
    let inside = set.intersection(half).len();
    a_lower_size_ok(n, a, set.len()) && 4 * inside >= n + 2 * t
}

fn a_lower_size_ok(n: u32, a: &BigRational, size: u32) -> bool {
    let gap = BigInt::from(n as i64 - 2 * size as i64);
    let a2n = a * a * BigRational::from_integer(BigInt::from(n));
    let gap2 = BigRational::from_integer(&gap * &gap);
    let low_ok = gap <= BigInt::zero() || a2n >= gap2;
    let high_ok = gap >= BigInt::zero() && a2n <= gap2 * BigInt::from(4);
    low_ok && high_ok
}

/// The family of all sets passing [`in_a_lower`]; may be empty.
pub fn build_a_lower(n: u32, t: u32, a: &BigRational) -> Result<Family> {
    check_ground(n)?;
    if n > 30 {
        return Err(Error::BudgetExceeded(format!("window of P({n})")));
    }
    if *a <= BigRational::zero() {
        return Err(Error::InvalidParams("a must be positive".into()));
    }
    let mut members = Vec::new();
    let half = SetMask::full(n / 2);
    for size in (0..=n / 2).filter(|&size| a_lower_size_ok(n, a, size)) {
        members.extend(k_subsets(n, size).filter(|&m| 4 * m.intersection(half).len() >= n + 2 * t));
    }
    members.sort_unstable();
    Ok(Family::from_sorted_unchecked(n, members))
}

/// Sizes of the pieces of the random-model lower construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerConstruction {
    pub sample_size: u64,
    pub upper_part: u64,
    pub lower_candidates: u64,
    pub lower_part: u64,
    pub total: u64,
    pub verified: bool,
}

/// In one sample: `A_ex` restricted to the sample, plus each sampled member
/// of the lower family meeting all of those in at least `t` elements.
pub fn random_lower_construction(
    n: u32,
    t: u32,
    a: &BigRational,
    p: Probability,
    seed: u64,
) -> Result<(LowerConstruction, Family)> {
    let sample = sample_lattice(n, p, seed)?;
    let upper: Vec<SetMask> = sample.members.iter().filter(|m| 2 * m.len() >= n + t).collect();
    let upper = Family::from_sorted_unchecked(n, upper);
    let candidates: Vec<SetMask> = sample
        .members
        .iter()
        .filter(|&m| in_a_lower(n, t, a, m))
        .collect();
    let oracle = IntersectionOracle::new(&upper, t)?;
    let lower: Vec<SetMask> = candidates.iter().copied().filter(|&m| !oracle.conflicts(m)).collect();
    let mut all: Vec<SetMask> = upper.members().to_vec();
    all.extend(&lower);
    all.sort_unstable();
    let family = Family::from_sorted_unchecked(n, all);
    let verified = is_t_intersecting(&family, t)?;
    Ok((
        LowerConstruction {
            sample_size: sample.members.len() as u64,
            upper_part: upper.len() as u64,
            lower_candidates: candidates.len() as u64,
            lower_part: lower.len() as u64,
            total: family.len() as u64,
            verified,
        },
        family,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialResult {
    pub trial: u64,
    pub sample_size: u64,
    pub max: u64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KatonaReport {
    pub n: u32,
    pub t: u32,
    pub p: String,
    pub trials: u64,
    pub seed: u64,
    #[serde(rename = "K")]
    pub k: String,
    pub p2n: String,
    pub per_trial: Vec<TrialResult>,
    pub mean_ratio: f64,
    pub max_ratio: f64,
    pub note: String,
}

/// Exact largest t-intersecting family in each of `trials` samples of
/// `P(n, p)`. Trial `i` samples from stream `i` of the seeded generator, so
/// the report does not depend on `threads`.
pub fn monte_carlo_katona(
    n: u32,
    t: u32,
    p: Probability,
    trials: u64,
    seed: u64,
    budget: &EnumBudget,
    threads: usize,
) -> Result<KatonaReport> {
    let k = katona_k(n, t)?;
    let p2n = p.as_rational() * BigRational::from_integer(BigInt::from(1u64) << n);
    let p2n_f = p2n.to_f64().unwrap_or(f64::NAN);
    let run = |trial: u64| -> Result<TrialResult> {
        let sample = sample_lattice_stream(n, p, seed, trial)?;
        let (max, _) = max_t_intersecting(&sample.members, t, budget)?;
        Ok(TrialResult {
            trial,
            sample_size: sample.members.len() as u64,
            max: max as u64,
            ratio: if p2n.is_zero() { 0.0 } else { max as f64 / p2n_f },
        })
    };
    let threads = threads.max(1) as u64;
    let mut per_trial: Vec<TrialResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let run = &run;
                scope.spawn(move || {
                    (w..trials)
                        .step_by(threads as usize)
                        .map(run)
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect::<Result<Vec<Vec<_>>>>()
    })?
    .into_iter()
    .flatten()
    .collect();
    per_trial.sort_by_key(|r| r.trial);
    let mean_ratio = if per_trial.is_empty() {
        0.0
    } else {
        per_trial.iter().map(|r| r.ratio).sum::<f64>() / per_trial.len() as f64
    };
    let max_ratio = per_trial.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(KatonaReport {
        n,
        t,
        p: p.to_string(),
        trials,
        seed,
        k: k.to_string(),
        p2n: p2n.to_string(),
        per_trial,
        mean_ratio,
        max_ratio,
        note: "finite-n ratios only; the asymptotic prediction for t = o(sqrt n) and \
               p = 2^(-o(sqrt n log n)) is a ratio of 1/2 + o(1)"
            .into(),
    })
}
