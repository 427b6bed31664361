//! Subsets of `[n]` as bit masks, families of them, exact binomial
//! arithmetic, symmetric chain decompositions and permutation actions.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Exact nonnegative count.
pub type BigCount = BigUint;

pub const MAX_GROUND: u32 = 63;

pub(crate) fn check_ground(n: u32) -> Result<()> {
    if n > MAX_GROUND {
        Err(Error::GroundTooLarge(n))
    } else {
        Ok(())
    }
}

#[inline]
pub(crate) fn ground_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `[n]`; element `i` is stored in bit `i - 1`.
///
/// The ground size is carried by the surrounding [`Family`] or graph, not by
/// the mask itself. Masks order by integer value, which is the canonical
/// total order used everywhere in this crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SetMask(pub u64);

impl serde::Serialize for SetMask {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl SetMask {
    pub const EMPTY: SetMask = SetMask(0);

    /// Builds a mask from 1-based elements.
    pub fn from_elements(elements: &[u32]) -> SetMask {
        SetMask(elements.iter().fold(0, |m, &e| m | 1 << (e - 1)))
    }

    /// `[n]` itself.
    pub fn full(n: u32) -> SetMask {
        SetMask(ground_mask(n))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, element: u32) -> bool {
        element >= 1 && self.0 >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: SetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: SetMask) -> SetMask {
        SetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SetMask) -> SetMask {
        SetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: SetMask) -> SetMask {
        SetMask(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, element: u32) -> SetMask {
        SetMask(self.0 | 1 << (element - 1))
    }

    #[inline]
    pub fn without(self, element: u32) -> SetMask {
        SetMask(self.0 & !(1 << (element - 1)))
    }

    #[inline]
    pub fn complement(self, n: u32) -> SetMask {
        SetMask(!self.0 & ground_mask(n))
    }

    pub fn fits(self, n: u32) -> bool {
        self.0 & !ground_mask(n) == 0
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros() + 1;
            bits &= bits - 1;
            Some(e)
        })
    }

    /// `|A \ B| + |B \ A|`.
    #[inline]
    pub fn distance(self, other: SetMask) -> u32 {
        (self.0 ^ other.0).count_ones()
    }

    #[inline]
    pub fn comparable(self, other: SetMask) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }
}

impl fmt::Debug for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Hamming distance between two subsets of the same ground set.
pub fn hamming_distance(a: SetMask, b: SetMask) -> u32 {
    a.distance(b)
}

/// Hamming distance with an explicit ground-set check on both operands.
pub fn hamming_distance_in(n: u32, a: SetMask, b: SetMask) -> Result<u32> {
    for m in [a, b] {
        if !m.fits(n) {
            return Err(Error::MaskOutOfRange { mask: m.0, n });
        }
    }
    Ok(a.distance(b))
}

/// An ordered, duplicate-free collection of subsets of `[n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family {
    n: u32,
    members: Vec<SetMask>,
}

impl Family {
    pub fn new(n: u32, members: Vec<SetMask>) -> Result<Family> {
        check_ground(n)?;
        let mut seen = HashSet::with_capacity(members.len());
        for &m in &members {
            if !m.fits(n) {
                return Err(Error::MaskOutOfRange { mask: m.0, n });
            }
            if !seen.insert(m) {
                return Err(Error::InvalidParams(format!("duplicate member {m}")));
            }
        }
        Ok(Family { n, members })
    }

    /// Skips validation; callers guarantee range and uniqueness.
    pub(crate) fn from_sorted_unchecked(n: u32, members: Vec<SetMask>) -> Family {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Family { n, members }
    }

    pub fn empty(n: u32) -> Family {
        Family { n, members: Vec::new() }
    }

    /// All of `P(n)` in canonical order.
    pub fn power_set(n: u32) -> Result<Family> {
        check_ground(n)?;
        if n > 30 {
            return Err(Error::BudgetExceeded(format!("power set of [{n}] is too large")));
        }
        Ok(Family {
            n,
            members: (0..1u64 << n).map(SetMask).collect(),
        })
    }

    /// The layer `binom([n], k)` in canonical order.
    pub fn layer(n: u32, k: u32) -> Result<Family> {
        check_ground(n)?;
        Ok(Family {
            n,
            members: k_subsets(n, k).collect(),
        })
    }

    pub fn ground(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[SetMask] {
        &self.members
    }

    pub fn into_members(self) -> Vec<SetMask> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: SetMask) -> bool {
        self.members.contains(&m)
    }

    pub fn iter(&self) -> impl Iterator<Item = SetMask> + '_ {
        self.members.iter().copied()
    }

    /// Same members in canonical order.
    pub fn sorted(&self) -> Family {
        let mut members = self.members.clone();
        members.sort_unstable();
        Family { n: self.n, members }
    }

    /// Writes the shared text format: `n=<int>` then one lowercase hex mask
    /// per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for m in &self.members {
            out.push_str(&format!("{:x}\n", m.0));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Family> {
        let mut n = None;
        let mut members = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match n {
                None => {
                    let value = line.strip_prefix("n=").ok_or_else(|| Error::Parse {
                        line: line_no,
                        reason: format!("expected `n=<int>`, found `{line}`"),
                    })?;
                    let parsed: u32 = value.trim().parse().map_err(|_| Error::Parse {
                        line: line_no,
                        reason: format!("bad ground size `{value}`"),
                    })?;
                    check_ground(parsed)?;
                    n = Some(parsed);
                }
                Some(ground) => {
                    let bits = u64::from_str_radix(line, 16).map_err(|_| Error::Parse {
                        line: line_no,
                        reason: format!("bad hex mask `{line}`"),
                    })?;
                    if !SetMask(bits).fits(ground) {
                        return Err(Error::Parse {
                            line: line_no,
                            reason: format!("mask {bits:#x} exceeds n={ground}"),
                        });
                    }
                    members.push(SetMask(bits));
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            reason: "missing `n=<int>` header".into(),
        })?;
        Family::new(n, members)
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, ", self.n)?;
        f.debug_list().entries(&self.members).finish()?;
        write!(f, ")")
    }
}

/// Iterates the k-subsets of `[n]` in increasing mask order (Gosper's hack).
pub fn k_subsets(n: u32, k: u32) -> impl Iterator<Item = SetMask> {
    let limit: u128 = 1u128 << n;
    let mut next: Option<u128> = if k > n {
        None
    } else {
        Some((1u128 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nx = (((r ^ cur) >> 2) / c) | r;
            (nx < limit).then_some(nx)
        };
        Some(SetMask(cur as u64))
    })
}

pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Exact binomial in machine arithmetic; `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// `sum_{i >= k} binom(n, i)`.
pub fn binom_at_least(n: u64, k: u64) -> BigCount {
    (k..=n).map(|i| binomial(n, i)).sum()
}

/// A partition of `P(n)` into symmetric saturated chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scd {
    n: u32,
    chains: Vec<Vec<SetMask>>,
}

/// Unmatched positions of the bracket word of `mask`: an element in the set
/// reads as `)`, an element outside reads as `(`, scanning 1..=n.
fn unmatched(n: u32, mask: SetMask) -> (u64, u64) {
    let mut open_stack: Vec<u32> = Vec::new();
    let mut unmatched_close = 0u64;
    for pos in 0..n {
        if mask.0 >> pos & 1 == 1 {
            if open_stack.pop().is_none() {
                unmatched_close |= 1 << pos;
            }
        } else {
            open_stack.push(pos);
        }
    }
    let unmatched_open = open_stack.iter().fold(0u64, |m, &p| m | 1 << p);
    (unmatched_open, unmatched_close)
}

pub fn build_scd(n: u32) -> Result<Scd> {
    check_ground(n)?;
    if n > 26 {
        return Err(Error::BudgetExceeded(format!("SCD of P({n}) is too large")));
    }
    let mut chains = Vec::new();
    for bits in 0..1u64 << n {
        let head = SetMask(bits);
        let (_, close) = unmatched(n, head);
        if close != 0 {
            continue;
        }
        let mut chain = vec![head];
        let mut cur = head;
        loop {
            let (open, _) = unmatched(n, cur);
            if open == 0 {
                break;
            }
            cur = SetMask(cur.0 | open & open.wrapping_neg());
            chain.push(cur);
        }
        chains.push(chain);
    }
    Ok(Scd { n, chains })
}

impl Scd {
    /// Wraps arbitrary chains; use [`Scd::validate`] before trusting them.
    pub fn from_chains(n: u32, chains: Vec<Vec<SetMask>>) -> Scd {
        Scd { n, chains }
    }

    pub fn ground(&self) -> u32 {
        self.n
    }

    pub fn chains(&self) -> &[Vec<SetMask>] {
        &self.chains
    }

    /// Checks partition, saturation, inclusion order and symmetry.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n > 26 {
            return Err(Error::BudgetExceeded(format!("cannot validate SCD of P({n})")));
        }
        let mut seen = vec![false; 1usize << n];
        for (ci, chain) in self.chains.iter().enumerate() {
            let first = *chain
                .first()
                .ok_or_else(|| Error::InvalidScd(format!("chain {ci} is empty")))?;
            let last = *chain.last().unwrap();
            if first.len() + last.len() != n {
                return Err(Error::InvalidScd(format!(
                    "chain {ci} is not symmetric: sizes {}..{}",
                    first.len(),
                    last.len()
                )));
            }
            for w in chain.windows(2) {
                if !w[0].is_subset_of(w[1]) || w[1].len() != w[0].len() + 1 {
                    return Err(Error::InvalidScd(format!(
                        "chain {ci} is not saturated at {} -> {}",
                        w[0], w[1]
                    )));
                }
            }
            for &m in chain {
                if !m.fits(n) {
                    return Err(Error::MaskOutOfRange { mask: m.0, n });
                }
                let slot = &mut seen[m.0 as usize];
                if *slot {
                    return Err(Error::InvalidScd(format!("{m} appears twice")));
                }
                *slot = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidScd(format!("{} is not covered", SetMask(missing as u64))));
        }
        Ok(())
    }

    /// `chain_of[mask]` is the index of the chain holding `mask`.
    pub fn chain_index(&self) -> Vec<u32> {
        let mut idx = vec![u32::MAX; 1usize << self.n];
        for (ci, chain) in self.chains.iter().enumerate() {
            for m in chain {
                idx[m.0 as usize] = ci as u32;
            }
        }
        idx
    }

    pub fn permuted(&self, pi: &Permutation) -> Result<Scd> {
        if pi.len() != self.n {
            return Err(Error::GroundMismatch {
                left: pi.len(),
                right: self.n,
            });
        }
        Ok(Scd {
            n: self.n,
            chains: self
                .chains
                .iter()
                .map(|c| c.iter().map(|&m| pi.apply(m)).collect())
                .collect(),
        })
    }
}

/// A bijection of `[n]`, stored 0-based: `images[i] = pi(i + 1) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: u32) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From 1-based images `pi(1), ..., pi(n)`.
    pub fn from_images(images: &[u32]) -> Result<Permutation> {
        let n = images.len() as u32;
        check_ground(n)?;
        let mut seen = vec![false; images.len()];
        for &im in images {
            if im == 0 || im > n {
                return Err(Error::BadPermutation(format!("image {im} outside [1, {n}]")));
            }
            if std::mem::replace(&mut seen[(im - 1) as usize], true) {
                return Err(Error::BadPermutation(format!("image {im} repeated")));
            }
        }
        Ok(Permutation {
            images: images.iter().map(|&i| i - 1).collect(),
        })
    }

    pub fn len(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<u32> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// `{pi(a) : a in A}`.
    pub fn apply(&self, a: SetMask) -> SetMask {
        let mut out = 0u64;
        let mut bits = a.0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= 1 << self.images[i];
        }
        SetMask(out)
    }

    pub fn apply_family(&self, family: &Family) -> Result<Family> {
        if self.len() != family.ground() {
            return Err(Error::GroundMismatch {
                left: self.len(),
                right: family.ground(),
            });
        }
        Ok(Family {
            n: family.ground(),
            members: family.iter().map(|m| self.apply(m)).collect(),
        })
    }
}

pub fn apply_permutation(pi: &Permutation, a: SetMask) -> Result<SetMask> {
    if !a.fits(pi.len()) {
        return Err(Error::MaskOutOfRange { mask: a.0, n: pi.len() });
    }
    Ok(pi.apply(a))
}

/// Uniform permutation of `[n]` (Fisher-Yates over a ChaCha8 stream).
pub fn sample_permutation(n: u32, seed: u64) -> Permutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    permutation_from_rng(n, &mut rng)
}

pub(crate) fn permutation_from_rng<R: Rng>(n: u32, rng: &mut R) -> Permutation {
    let mut images: Vec<u32> = (0..n).collect();
    for i in (1..images.len()).rev() {
        let j = rng.gen_range(0..=i);
        images.swap(i, j);
    }
    Permutation { images }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[u32]) -> SetMask {
        SetMask::from_elements(e)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), BigCount::from(35u32));
        assert_eq!(binomial(4, 2), BigCount::from(6u32));
        assert_eq!(binomial(5, 9), BigCount::zero());
        assert_eq!(binom_at_least(4, 3), BigCount::from(5u32));
        assert_eq!(binom_at_least(3, 0), BigCount::from(8u32));
        assert_eq!(binom_at_least(3, 2), BigCount::from(4u32));
        assert_eq!(binomial_u64(64, 32), Some(1832624140942590534));
        assert_eq!(binomial_u64(100, 50), None);
    }

    #[test]
    fn distances() {
        assert_eq!(hamming_distance(s(&[1]), s(&[2])), 2);
        assert_eq!(hamming_distance(s(&[1, 3]), s(&[1, 3])), 0);
        assert_eq!(hamming_distance_in(3, SetMask::EMPTY, s(&[1, 2, 3])).unwrap(), 3);
        assert!(hamming_distance_in(2, SetMask::EMPTY, s(&[3])).is_err());
    }

    #[test]
    fn k_subsets_counts() {
        for n in 0..=12u32 {
            for k in 0..=n + 1 {
                let v: Vec<_> = k_subsets(n, k).collect();
                assert_eq!(v.len() as u64, binomial_u64(n as u64, k as u64).unwrap());
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                assert!(v.iter().all(|m| m.len() == k && m.fits(n)));
            }
        }
        assert_eq!(k_subsets(63, 63).count(), 1);
        assert_eq!(k_subsets(63, 62).count(), 63);
    }

    #[test]
    fn scd_small() {
        let scd = build_scd(2).unwrap();
        assert_eq!(
            scd.chains(),
            &[vec![s(&[]), s(&[1]), s(&[1, 2])], vec![s(&[2])]]
        );
        assert_eq!(build_scd(3).unwrap().chains().len(), 3);
        let four = build_scd(4).unwrap();
        four.validate().unwrap();
        let mut lengths: Vec<usize> = four.chains().iter().map(Vec::len).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![1, 1, 3, 3, 3, 5]);
        assert_eq!(build_scd(0).unwrap().chains(), &[vec![SetMask::EMPTY]]);
    }

    #[test]
    fn scd_validation_rejects_broken() {
        let bad = Scd::from_chains(2, vec![vec![s(&[]), s(&[1, 2])], vec![s(&[1])], vec![s(&[2])]]);
        assert!(matches!(bad.validate(), Err(Error::InvalidScd(_))));
        let missing = Scd::from_chains(1, vec![vec![s(&[])]]);
        assert!(missing.validate().is_err());
    }

    #[test]
    fn permutations() {
        let id = Permutation::identity(4);
        assert_eq!(id.apply(s(&[1, 3])), s(&[1, 3]));
        let swap = Permutation::from_images(&[2, 1]).unwrap();
        assert_eq!(apply_permutation(&swap, s(&[1])).unwrap(), s(&[2]));
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert_eq!(sample_permutation(1, 99), Permutation::identity(1));
        assert_eq!(sample_permutation(9, 5), sample_permutation(9, 5));
        let fam = Family::layer(5, 2).unwrap();
        let pi = sample_permutation(5, 11);
        let image = pi.apply_family(&fam).unwrap();
        assert_eq!(image.len(), fam.len());
        assert_eq!(Family::new(5, image.into_members()).unwrap().len(), 10);
    }

    #[test]
    fn family_text_format() {
        let fam = Family::new(5, vec![s(&[1, 2]), s(&[]), s(&[5])]).unwrap();
        let text = fam.to_text();
        assert_eq!(text, "n=5\n3\n0\n10\n");
        assert_eq!(Family::parse_text(&text).unwrap(), fam);
        let commented = "# header\nn=5 # five\n3\n\n0 # empty\n10\n";
        assert_eq!(Family::parse_text(commented).unwrap(), fam);
        assert!(Family::parse_text("3\n").is_err());
        assert!(Family::parse_text("n=2\n7\n").is_err());
        assert!(Family::parse_text("n=2\n1\n1\n").is_err());
        assert!(Family::parse_text("n=2\nzz\n").is_err());
    }

    #[test]
    fn family_rejects_out_of_range() {
        assert!(Family::new(2, vec![SetMask(4)]).is_err());
        assert!(Family::new(64, vec![]).is_err());
    }
}
