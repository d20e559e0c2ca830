//! Counting and enumeration of partitions, overpartitions and their
//! generalized cubic / overcubic variants.
//!
//! In a generalized cubic partition with `c` colors, odd parts carry the
//! single color 1 and even parts carry any of the colors `1..=c`. A part
//! *type* is a `(size, color)` pair. The overcubic variant lets the first
//! occurrence of every type be overlined, so a colored partition with `r`
//! distinct types gives rise to `2^r` overcubic partitions.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Largest weight accepted by the exhaustive enumerators.
pub const BRUTE_FORCE_CAP: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("brute-force enumeration is capped at n <= {cap}, got n = {n}; use the dp engine")]
    AboveBruteForceCap { n: u64, cap: u64 },
    #[error("number of colors must be at least 1, got {0}")]
    InvalidColors(u32),
    #[error("n must be at least 1")]
    ZeroWeight,
    #[error("part {size} cannot carry color {color} with {colors} colors available")]
    InvalidPart { size: u32, color: u32, colors: u32 },
    #[error("more than one overlined part of size {size} and color {color}")]
    RepeatedOverline { size: u32, color: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPart {
    pub size: u32,
    pub color: u32,
    pub overlined: bool,
}

impl ColoredPart {
    pub fn new(size: u32, color: u32, overlined: bool, colors: u32) -> Result<Self, EnumError> {
        let ok = size >= 1 && color >= 1 && if size % 2 == 1 { color == 1 } else { color <= colors };
        if !ok {
            return Err(EnumError::InvalidPart { size, color, colors });
        }
        Ok(ColoredPart { size, color, overlined })
    }
}

/// A generalized overcubic partition. Parts are kept in canonical order:
/// size descending, then color ascending, overlined copy first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredOverPartition {
    parts: Vec<ColoredPart>,
}

impl ColoredOverPartition {
    pub fn new(mut parts: Vec<ColoredPart>) -> Result<Self, EnumError> {
        parts.sort_by(|a, b| {
            b.size.cmp(&a.size).then(a.color.cmp(&b.color)).then(b.overlined.cmp(&a.overlined))
        });
        for w in parts.windows(2) {
            if w[0].overlined && w[1].overlined && w[0].size == w[1].size && w[0].color == w[1].color {
                return Err(EnumError::RepeatedOverline { size: w[0].size, color: w[0].color });
            }
        }
        Ok(ColoredOverPartition { parts })
    }

    pub fn parts(&self) -> &[ColoredPart] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|p| p.size as u64).sum()
    }
}

/// One `(size, color)` type of a colored partition with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartType {
    pub size: u32,
    pub color: u32,
    pub multiplicity: u32,
}

fn check_colors(c: u32) -> Result<(), EnumError> {
    if c == 0 {
        Err(EnumError::InvalidColors(c))
    } else {
        Ok(())
    }
}

fn check_cap(n: u64) -> Result<(), EnumError> {
    if n > BRUTE_FORCE_CAP {
        Err(EnumError::AboveBruteForceCap { n, cap: BRUTE_FORCE_CAP })
    } else {
        Ok(())
    }
}

fn colors_for(size: u32, c: u32) -> u32 {
    if size % 2 == 1 {
        1
    } else {
        c
    }
}

/// Walks every colored partition of `n` (no overlines), emitting its types
/// in canonical order. Types are chosen strictly decreasing in
/// `(size desc, color asc)` so each multiset is produced exactly once.
pub fn for_each_colored_partition<F: FnMut(&[PartType])>(
    c: u32,
    n: u64,
    mut visit: F,
) -> Result<(), EnumError> {
    check_colors(c)?;
    check_cap(n)?;
    fn go<F: FnMut(&[PartType])>(
        rem: u32,
        max_size: u32,
        min_color: u32,
        c: u32,
        stack: &mut Vec<PartType>,
        visit: &mut F,
    ) {
        if rem == 0 {
            visit(stack);
            return;
        }
        for size in (1..=max_size.min(rem)).rev() {
            let first_color = if size == max_size { min_color } else { 1 };
            for color in first_color..=colors_for(size, c) {
                for multiplicity in 1..=rem / size {
                    stack.push(PartType { size, color, multiplicity });
                    go(rem - multiplicity * size, size, color + 1, c, stack, visit);
                    stack.pop();
                }
            }
        }
    }
    let n = n as u32;
    go(n, n, 1, c, &mut Vec::new(), &mut visit);
    Ok(())
}

/// Materializes every overcubic partition of `n` by choosing, for each
/// colored partition, which of its types carry an overline.
pub fn for_each_overcubic_partition<F: FnMut(&ColoredOverPartition)>(
    c: u32,
    n: u64,
    mut visit: F,
) -> Result<(), EnumError> {
    for_each_colored_partition(c, n, |types| {
        for mask in 0u64..(1 << types.len()) {
            let mut parts = Vec::new();
            for (i, t) in types.iter().enumerate() {
                let over = mask >> i & 1 == 1;
                for copy in 0..t.multiplicity {
                    parts.push(ColoredPart { size: t.size, color: t.color, overlined: over && copy == 0 });
                }
            }
            visit(&ColoredOverPartition { parts });
        }
    })
}

/// `ā_c(n)` by exhaustive enumeration, weighting each colored partition by
/// `2^{number of types}`.
pub fn count_gen_overcubic_brute(c: u32, n: u64) -> Result<u64, EnumError> {
    let mut total = 0u64;
    for_each_colored_partition(c, n, |types| total += 1 << types.len())?;
    Ok(total)
}

/// `ā_c(n)` by materializing each overcubic partition individually.
pub fn count_gen_overcubic_by_overlines(c: u32, n: u64) -> Result<u64, EnumError> {
    let mut total = 0u64;
    for_each_overcubic_partition(c, n, |_| total += 1)?;
    Ok(total)
}

fn num_types(size: usize, c: u32) -> u32 {
    colors_for(size as u32, c)
}

/// Multiplies the running table by `1 / (1 - q^s)`.
fn coin(table: &mut [BigUint], s: usize) {
    for w in s..table.len() {
        let prev = table[w - s].clone();
        table[w] += prev;
    }
}

/// Multiplies the running table by `1 + q^s`.
fn maybe_once(table: &mut [BigUint], s: usize) {
    for w in (s..table.len()).rev() {
        let prev = table[w - s].clone();
        table[w] += prev;
    }
}

fn unit_table(n: u64) -> Vec<BigUint> {
    let mut t = vec![BigUint::zero(); n as usize + 1];
    t[0] = BigUint::one();
    t
}

/// `p(n)` by the coin-change recurrence over part sizes.
pub fn count_partitions(n: u64) -> BigUint {
    let mut t = unit_table(n);
    for s in 1..=n as usize {
        coin(&mut t, s);
    }
    t.swap_remove(n as usize)
}

/// `a_c(n)`: each even size contributes `c` independent part types.
pub fn count_gen_cubic(c: u32, n: u64) -> Result<BigUint, EnumError> {
    check_colors(c)?;
    let mut t = unit_table(n);
    for s in 1..=n as usize {
        for _ in 0..num_types(s, c) {
            coin(&mut t, s);
        }
    }
    Ok(t.swap_remove(n as usize))
}

/// `ā_c(n)` from the product of `(1 + q^s) / (1 - q^s)` over part types.
pub fn count_gen_overcubic_dp(c: u32, n: u64) -> Result<BigUint, EnumError> {
    check_colors(c)?;
    let mut t = unit_table(n);
    for s in 1..=n as usize {
        for _ in 0..num_types(s, c) {
            coin(&mut t, s);
            maybe_once(&mut t, s);
        }
    }
    Ok(t.swap_remove(n as usize))
}

pub fn count_overpartitions(n: u64) -> BigUint {
    count_gen_overcubic_dp(1, n).expect("one color is valid")
}

/// Number of colored partitions of `n` (with `c` colors) having exactly `r`
/// distinct `(size, color)` types, for every `r`. Index `r` of the result.
pub fn chi_distinct_table(c: u32, n: u64) -> Result<Vec<BigUint>, EnumError> {
    check_colors(c)?;
    let n = n as usize;
    // table[w][r]
    let mut table = vec![vec![BigUint::zero(); n + 1]; n + 1];
    table[0][0] = BigUint::one();
    for s in 1..=n {
        for _ in 0..num_types(s, c) {
            // at_least_one[w][r]: ways to reach weight w with this type used
            // at least once, the type counted once in r.
            let mut at_least_one = vec![vec![BigUint::zero(); n + 1]; n + 1];
            for w in s..=n {
                for r in 1..=n {
                    let mut v = table[w - s][r - 1].clone();
                    v += &at_least_one[w - s][r];
                    at_least_one[w][r] = v;
                }
            }
            for w in s..=n {
                for r in 1..=n {
                    let add = std::mem::take(&mut at_least_one[w][r]);
                    table[w][r] += add;
                }
            }
        }
    }
    Ok(table.swap_remove(n))
}

pub fn chi_distinct(c: u32, n: u64, r: usize) -> Result<BigUint, EnumError> {
    let table = chi_distinct_table(c, n)?;
    Ok(table.get(r).cloned().unwrap_or_default())
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of odd divisors of `n >= 1`.
pub fn tau_odd(n: u64) -> u64 {
    assert!(n >= 1, "tau_odd needs n >= 1");
    factorize(n).iter().filter(|(p, _)| *p != 2).map(|&(_, e)| e as u64 + 1).product()
}

/// Number of even divisors of `n >= 1`: `v_2(n) · tau_odd(n)`.
pub fn tau_even(n: u64) -> u64 {
    assert!(n >= 1, "tau_even needs n >= 1");
    n.trailing_zeros() as u64 * tau_odd(n)
}

/// The split of `ā_c(n)` into overpartitions built from a single part size
/// (`p1`) and those with two or more sizes (`p_geq2`).
///
/// `kappa1` and `kappa21` count underlying colored partitions: one odd size,
/// or one even size in one color. Each gives two overcubic partitions.
/// `kappa22` counts overcubic partitions (overlines included) with one even
/// size spread over two or more colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct DecompositionCounts {
    pub p1: u64,
    pub p_geq2: u64,
    pub kappa1: u64,
    pub kappa21: u64,
    pub kappa22: u64,
    pub tau_odd: u64,
    pub tau_even: u64,
}

pub fn decompose(c: u32, n: u64) -> Result<DecompositionCounts, EnumError> {
    if n == 0 {
        return Err(EnumError::ZeroWeight);
    }
    let mut d = DecompositionCounts { tau_odd: tau_odd(n), tau_even: tau_even(n), ..Default::default() };
    for_each_colored_partition(c, n, |types| {
        let weight = 1u64 << types.len();
        let single_size = types.iter().all(|t| t.size == types[0].size);
        if !single_size {
            d.p_geq2 += weight;
            return;
        }
        d.p1 += weight;
        if types[0].size % 2 == 1 {
            d.kappa1 += 1;
        } else if types.len() == 1 {
            d.kappa21 += 1;
        } else {
            d.kappa22 += weight;
        }
    })?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn partition_counts() {
        assert_eq!(count_partitions(0), big(1));
        assert_eq!(count_partitions(4), big(5));
        assert_eq!(count_partitions(100), "190569292".parse().unwrap());
        for n in 0..=20 {
            assert_eq!(count_partitions(5 * n + 4) % 5u32, big(0));
        }
    }

    #[test]
    fn overpartition_counts() {
        assert_eq!(count_overpartitions(0), big(1));
        assert_eq!(count_overpartitions(1), big(2));
        assert_eq!(count_overpartitions(3), big(8));
    }

    #[test]
    fn cubic_counts() {
        assert_eq!(count_gen_cubic(2, 4).unwrap(), big(9));
        for n in 0..=30 {
            assert_eq!(count_gen_cubic(1, n).unwrap(), count_partitions(n));
        }
        for n in 0..=8 {
            assert_eq!(count_gen_cubic(2, 3 * n + 2).unwrap() % 3u32, big(0));
        }
        assert_eq!(count_gen_cubic(0, 3), Err(EnumError::InvalidColors(0)));
    }

    #[test]
    fn the_nine_cubic_partitions_of_four() {
        let mut seen = Vec::new();
        for_each_colored_partition(2, 4, |types| seen.push(types.to_vec())).unwrap();
        assert_eq!(seen.len(), 9);
        let t = |size, color, multiplicity| PartType { size, color, multiplicity };
        assert!(seen.contains(&vec![t(2, 1, 1), t(2, 2, 1)]));
        assert!(seen.contains(&vec![t(2, 2, 1), t(1, 1, 2)]));
        assert!(seen.contains(&vec![t(1, 1, 4)]));
    }

    #[test]
    fn brute_force_small_values() {
        for c in 1..=5 {
            assert_eq!(count_gen_overcubic_brute(c, 0).unwrap(), 1);
            assert_eq!(count_gen_overcubic_brute(c, 1).unwrap(), 2);
            assert_eq!(count_gen_overcubic_dp(c, 1).unwrap(), big(2));
        }
        assert_eq!(count_gen_overcubic_brute(1, 3).unwrap(), 8);
        // frozen from the enumerator, matches the generating function below
        assert_eq!(count_gen_overcubic_brute(2, 4).unwrap(), 26);
        assert_eq!(
            count_gen_overcubic_brute(2, 40),
            Err(EnumError::AboveBruteForceCap { n: 40, cap: 30 })
        );
    }

    #[test]
    fn explicit_overlines_agree_with_weighting() {
        for c in 1..=3 {
            for n in 0..=12 {
                assert_eq!(
                    count_gen_overcubic_by_overlines(c, n).unwrap(),
                    count_gen_overcubic_brute(c, n).unwrap()
                );
            }
        }
    }

    #[test]
    fn enumerated_overpartitions_are_valid_and_distinct() {
        let c = 3;
        let mut all = std::collections::HashSet::new();
        for_each_overcubic_partition(c, 9, |p| {
            assert_eq!(p.weight(), 9);
            let rebuilt = ColoredOverPartition::new(p.parts().to_vec()).unwrap();
            assert_eq!(&rebuilt, p);
            for part in p.parts() {
                ColoredPart::new(part.size, part.color, part.overlined, c).unwrap();
            }
            assert!(all.insert(p.clone()));
        })
        .unwrap();
        assert_eq!(all.len() as u64, count_gen_overcubic_brute(c, 9).unwrap());
    }

    #[test]
    fn part_validation() {
        assert!(ColoredPart::new(3, 2, false, 4).is_err());
        assert!(ColoredPart::new(4, 5, false, 4).is_err());
        assert!(ColoredPart::new(4, 4, true, 4).is_ok());
        let p = ColoredPart { size: 2, color: 1, overlined: true };
        assert_eq!(
            ColoredOverPartition::new(vec![p, p]),
            Err(EnumError::RepeatedOverline { size: 2, color: 1 })
        );
    }

    #[test]
    fn dp_reduces_to_overpartitions() {
        for n in 0..=100 {
            assert_eq!(count_gen_overcubic_dp(1, n).unwrap(), count_overpartitions(n));
        }
    }

    #[test]
    fn distinct_type_counts() {
        assert_eq!(chi_distinct(1, 3, 2).unwrap(), big(1));
        for n in 1..=10 {
            assert_eq!(chi_distinct(2, n, 0).unwrap(), big(0));
        }
        // reconstruction: Σ_r 2^r χ(r) = ā_c(n)
        for c in 1..=3 {
            for n in 1..=20 {
                let table = chi_distinct_table(c, n).unwrap();
                let total: BigUint = table.iter().enumerate().map(|(r, x)| x << r).sum();
                assert_eq!(total, count_gen_overcubic_dp(c, n).unwrap());
            }
        }
    }

    #[test]
    fn distinct_type_counts_match_enumeration() {
        for c in 1..=3 {
            for n in 1..=14u64 {
                let mut by_r = vec![0u64; n as usize + 1];
                for_each_colored_partition(c, n, |types| by_r[types.len()] += 1).unwrap();
                let table = chi_distinct_table(c, n).unwrap();
                let table: Vec<u64> = table.iter().map(|x| x.to_string().parse().unwrap()).collect();
                assert_eq!(table, by_r);
            }
        }
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(tau_odd(12), 2);
        assert_eq!(tau_even(12), 4);
        for n in (1..200).step_by(2) {
            assert_eq!(tau_even(n), 0);
        }
        for n in 1..=500u64 {
            let odd = (1..=n).filter(|d| n % d == 0 && d % 2 == 1).count() as u64;
            let even = (1..=n).filter(|d| n % d == 0 && d % 2 == 0).count() as u64;
            assert_eq!((tau_odd(n), tau_even(n)), (odd, even), "n = {n}");
        }
        for k in 1..=50u64 {
            assert_eq!(tau_odd(k * k) % 2, 1);
        }
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn decomposition_small_cases() {
        for c in 1..=4 {
            let d = decompose(c, 1).unwrap();
            assert_eq!((d.p1, d.p_geq2), (2, 0));
        }
        // n = 4, c = 2: sizes 1, 2 (two colors), 4 (two colors).
        let d = decompose(2, 4).unwrap();
        assert_eq!(d.kappa1, 1);
        assert_eq!(d.kappa21, 4);
        // 2R+2G with both, one or neither overlined
        assert_eq!(d.kappa22, 4);
        assert_eq!(d.p1, 2 * (d.kappa1 + d.kappa21) + d.kappa22);
        assert_eq!(d.p1 + d.p_geq2, 26);
        assert_eq!(d.p_geq2, 12);
        assert_eq!(decompose(2, 0), Err(EnumError::ZeroWeight));
        assert!(decompose(2, 31).is_err());
    }
}
