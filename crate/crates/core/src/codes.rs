//! Hamming balls and the sphere-packing bound, perfect codes, and the
//! transportation-distance analogues on pairs of disjoint k-sets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::{disjoint_pairs, transport_distance, DisjointPair};
use crate::lattice::{binomial, check_ground, k_subsets, BigCount, Family, SetMask};

pub fn ratio(num: BigCount, den: BigCount) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ceil_to_u64(r: &BigRational) -> u64 {
    use num_traits::ToPrimitive;
    r.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

/// `V(n, t) = sum_{k <= t} binom(n, k)`.
pub fn ball_volume(n: u32, t: u32) -> BigCount {
    (0..=t.min(n)).map(|k| binomial(n as u64, k as u64)).sum()
}

/// `H(n, t) = 2^n / V(n, t)`.
pub fn hamming_bound(n: u32, t: u32) -> BigRational {
    ratio(BigCount::one() << n, ball_volume(n, t))
}

/// All subsets of `[n]` within distance `r` of `center`, in increasing order.
pub fn ball(n: u32, center: SetMask, r: u32) -> Result<Family> {
    check_ground(n)?;
    if !center.fits(n) {
        return Err(Error::MaskOutOfRange { mask: center.0, n });
    }
    let mut members = Vec::new();
    for k in 0..=r.min(n) {
        members.extend(k_subsets(n, k).map(|flip| SetMask(center.0 ^ flip.0)));
    }
    members.sort_unstable();
    Family::new(n, members)
}

/// Pairwise distance at least `d`.
pub fn is_code(family: &Family, d: u32) -> bool {
    let m = family.members();
    m.iter()
        .enumerate()
        .all(|(i, a)| m[i + 1..].iter().all(|b| a.distance(*b) >= d))
}

/// A `t`-error-correcting code meeting the sphere-packing bound, with its
/// radius-`t` balls partitioning the cube.
pub fn is_perfect(family: &Family, t: u32) -> bool {
    let n = family.ground();
    if n > 30 || !is_code(family, 2 * t + 1) {
        return false;
    }
    let size = BigRational::from_integer(BigInt::from(family.len()));
    if size != hamming_bound(n, t) {
        return false;
    }
    let mut covered = vec![false; 1usize << n];
    for c in family.iter() {
        for k in 0..=t.min(n) {
            for flip in k_subsets(n, k) {
                let x = (c.0 ^ flip.0) as usize;
                if covered[x] {
                    return false;
                }
                covered[x] = true;
            }
        }
    }
    covered.into_iter().all(|c| c)
}

/// The binary Hamming code of length 7: positions 1..=7, parity at 1, 2, 4.
pub fn hamming_7_4() -> Family {
    let data_positions = [3u32, 5, 6, 7];
    let mut words = Vec::new();
    for data in 0u32..16 {
        let mut word = 0u64;
        for (bit, &pos) in data_positions.iter().enumerate() {
            if data >> bit & 1 == 1 {
                word |= 1 << (pos - 1);
            }
        }
        for parity in [1u32, 2, 4] {
            let ones = (1..=7u32)
                .filter(|p| p & parity != 0 && *p != parity && word >> (p - 1) & 1 == 1)
                .count();
            if ones % 2 == 1 {
                word |= 1 << (parity - 1);
            }
        }
        words.push(SetMask(word));
    }
    words.sort_unstable();
    Family::new(7, words).expect("codewords lie in P(7)")
}

/// Sizes `|B(A,t) ∩ B(B,t)|` over every pair of centers at distance `d` in
/// `P(n)`, deduplicated.
pub fn ball_intersection_sizes(n: u32, t: u32, d: u32) -> Result<Vec<u64>> {
    check_ground(n)?;
    if n > 12 {
        return Err(Error::BudgetExceeded(format!("brute force over P({n})")));
    }
    let ball_pts: Vec<u64> = (0..=t.min(n)).flat_map(|k| k_subsets(n, k).map(|m| m.0)).collect();
    let mut sizes = std::collections::BTreeSet::new();
    for a in 0..1u64 << n {
        for flip in k_subsets(n, d) {
            let b = a ^ flip.0;
            if b < a {
                continue;
            }
            let common = ball_pts
                .iter()
                .filter(|&&x| ((a ^ x) ^ b).count_ones() <= t)
                .count();
            sizes.insert(common as u64);
        }
    }
    Ok(sizes.into_iter().collect())
}

/// `W(t, d)` by brute force; errors if the intersection size depends on
/// the choice of centers.
pub fn w_brute(n: u32, t: u32, d: u32) -> Result<u64> {
    let sizes = ball_intersection_sizes(n, t, d)?;
    match sizes.as_slice() {
        [w] => Ok(*w),
        [] => Err(Error::InvalidParams(format!("no centers at distance {d} in P({n})"))),
        _ => Err(Error::InvalidParams(format!("W({t},{d}) not constant: {sizes:?}"))),
    }
}

fn falling(from: u64, to: u64) -> BigCount {
    let mut acc = BigCount::one();
    let mut i = from;
    while i >= to && i > 0 {
        acc *= i;
        i -= 1;
    }
    acc
}

/// `H(n, k, d)`, the sphere-packing bound for 2-(n,k,d)-codes.
pub fn transport_bound(n: u32, k: u32, d: u32) -> Result<BigRational> {
    if 2 * k > n || d == 0 || d > 2 * k {
        return Err(Error::InvalidParams(format!(
            "transport bound needs 2k <= n and 1 <= d <= 2k, got n={n}, k={k}, d={d}"
        )));
    }
    let (n, k, d) = (n as u64, k as u64, d as u64);
    let num = falling(n, n - 2 * k + d);
    let den = falling(k, (d + 2) / 2) * falling(k, d.div_ceil(2)) * 2u32;
    Ok(ratio(num, den))
}

/// `|Z(u)| = binom(n,u) binom(n-u,u) / 2`, the number of unordered disjoint
/// u-set pairs.
pub fn pair_space_size(n: u32, u: u32) -> BigRational {
    let (n, u) = (n as u64, u as u64);
    ratio(binomial(n, u) * binomial(n.saturating_sub(u), u), BigCount::from(2u32))
}

/// All unordered pairs `(U, V)` of u-sets with `U ⊆ A, V ⊆ B` (or the
/// reverse), sorted.
pub fn pair_ball(x: &DisjointPair, u: u32) -> Result<Vec<DisjointPair>> {
    if u > x.k() {
        return Err(Error::InvalidParams(format!("radius {u} exceeds k = {}", x.k())));
    }
    let side_a: Vec<u32> = x.first().elements().collect();
    let side_b: Vec<u32> = x.second().elements().collect();
    let subsets = |side: &[u32]| -> Vec<SetMask> {
        k_subsets(side.len() as u32, u)
            .map(|pick| SetMask::from_elements(&pick.elements().map(|i| side[i as usize - 1]).collect::<Vec<_>>()))
            .collect()
    };
    let mut out = Vec::new();
    for a in subsets(&side_a) {
        for b in subsets(&side_b) {
            out.push(DisjointPair::new(a, b)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn sorted_intersection_len<T: Ord>(a: &[T], b: &[T]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Largest `|P(x,u) ∩ P(y,u)|` over distinct pairs `x, y` of disjoint k-sets
/// in `[n]` at transportation distance `distance`.
pub fn max_pair_ball_intersection(n: u32, k: u32, u: u32, distance: u32) -> Result<u64> {
    let pairs = disjoint_pairs(n, k);
    let balls: Vec<Vec<DisjointPair>> = pairs.iter().map(|p| pair_ball(p, u)).collect::<Result<_>>()?;
    let mut best = 0;
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if transport_distance(&pairs[i], &pairs[j])? == distance {
                best = best.max(sorted_intersection_len(&balls[i], &balls[j]) as u64);
            }
        }
    }
    Ok(best)
}

/// `binom(k,k-t)^2 binom(k-1,t-1) / binom(k,t)`, the pair-ball analogue of
/// `W(t,1)` at radius `k - t`.
pub fn pair_ball_w_formula(k: u32, t: u32) -> BigRational {
    let (k, t) = (k as u64, t as u64);
    let c = binomial(k, k - t);
    ratio(&c * &c * binomial(k.saturating_sub(1), t.saturating_sub(1)), binomial(k, t))
}

/// Pairs of disjoint k-sets whose radius-`(k-t)` pair-balls meet but whose
/// transportation distance exceeds `2t`. Empty when the implication holds.
pub fn pair_ball_distance_violations(n: u32, k: u32, t: u32) -> Result<Vec<(DisjointPair, DisjointPair)>> {
    if t > k {
        return Err(Error::InvalidParams(format!("t = {t} exceeds k = {k}")));
    }
    let pairs = disjoint_pairs(n, k);
    let balls: Vec<Vec<DisjointPair>> =
        pairs.iter().map(|p| pair_ball(p, k - t)).collect::<Result<_>>()?;
    let mut bad = Vec::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if sorted_intersection_len(&balls[i], &balls[j]) > 0
                && transport_distance(&pairs[i], &pairs[j])? > 2 * t
            {
                bad.push((pairs[i], pairs[j]));
            }
        }
    }
    Ok(bad)
}

/// `n / (10 t H(n,t))`.
pub fn alpha(n: u32, t: u32) -> Result<BigRational> {
    if t == 0 {
        return Err(Error::InvalidParams("alpha needs t >= 1".into()));
    }
    Ok(BigRational::from_integer(BigInt::from(n)) / (hamming_bound(n, t) * BigInt::from(10 * t)))
}

/// `k / (10 t H(n,k,2t+1))`.
pub fn alpha_transport(n: u32, k: u32, t: u32) -> Result<BigRational> {
    if t == 0 {
        return Err(Error::InvalidParams("alpha needs t >= 1".into()));
    }
    let h = transport_bound(n, k, 2 * t + 1)?;
    if h.is_zero() {
        return Err(Error::InvalidParams("degenerate transport bound".into()));
    }
    Ok(BigRational::from_integer(BigInt::from(k)) / (h * BigInt::from(10 * t)))
}
