//! Truncated formal power series in `q` with exact coefficients.
//!
//! A [`Series`] stores the coefficients of `q^0 ..= q^N` densely, where `N`
//! is its truncation order. Coefficients are either arbitrary-precision
//! integers or canonical residues in `[0, m)` for a fixed modulus `m`.
//! Binary operations on series of different orders truncate to the smaller
//! order, which mirrors the `+ O(q^{N+1})` convention of hand computation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("operands have different coefficient rings ({left} vs {right})")]
    ModulusMismatch { left: String, right: String },
    #[error("series is not invertible: constant term {0} is not a unit")]
    NotInvertible(String),
    #[error("coefficient index {index} is beyond truncation order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("residue {residue} is not below step {step}")]
    ResidueOutOfRange { residue: usize, step: usize },
    #[error("step must be positive")]
    ZeroStep,
    #[error("cannot reduce a series modulo {requested}: existing modulus {current} is not a multiple")]
    IncompatibleModulus { current: u64, requested: u64 },
    #[error("a series needs at least one coefficient")]
    Empty,
}

pub type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Int(Vec<BigInt>),
    Mod { modulus: u64, coeffs: Vec<u64> },
}

/// An exact power series `c_0 + c_1 q + ... + c_N q^N + O(q^{N+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    repr: Repr,
}

fn check_modulus(m: u64) -> Result<u64> {
    if m < 2 {
        Err(SeriesError::ModulusTooSmall(m))
    } else {
        Ok(m)
    }
}

fn residue_of(value: &BigInt, m: u64) -> u64 {
    value
        .mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("residue fits in u64")
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

fn ring_name(m: Option<u64>) -> String {
    match m {
        None => "Z".to_string(),
        Some(m) => format!("Z/{m}Z"),
    }
}

/// Indices of the nonzero entries, used to skip work against sparse factors.
fn support<T, F: Fn(&T) -> bool>(coeffs: &[T], is_zero: F) -> Vec<usize> {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !is_zero(c))
        .map(|(i, _)| i)
        .collect()
}

fn mul_mod_slices(a: &[u64], b: &[u64], len: usize, m: u64) -> Vec<u64> {
    let sa = support(&a[..len], |c| *c == 0);
    let sb = support(&b[..len], |c| *c == 0);
    let (sparse_idx, sparse, dense) = if sa.len() <= sb.len() { (sa, a, b) } else { (sb, b, a) };
    if m <= u32::MAX as u64 {
        // products fit in u64, so a u128 accumulator cannot overflow
        let mut acc = vec![0u128; len];
        for &i in &sparse_idx {
            let ai = sparse[i] as u128;
            for (j, &bj) in dense[..len - i].iter().enumerate() {
                acc[i + j] += ai * bj as u128;
            }
        }
        acc.into_iter().map(|c| (c % m as u128) as u64).collect()
    } else {
        let mut acc = vec![0u64; len];
        for &i in &sparse_idx {
            for (j, &bj) in dense[..len - i].iter().enumerate() {
                let t = mulmod(sparse[i], bj, m);
                acc[i + j] = ((acc[i + j] as u128 + t as u128) % m as u128) as u64;
            }
        }
        acc
    }
}

fn mul_int_slices(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let sa = support(&a[..len], Zero::is_zero);
    let sb = support(&b[..len], Zero::is_zero);
    let (sparse_idx, sparse, dense) = if sa.len() <= sb.len() { (sa, a, b) } else { (sb, b, a) };
    let mut acc = vec![BigInt::zero(); len];
    for &i in &sparse_idx {
        let ai = &sparse[i];
        if ai.is_one() {
            for (j, bj) in dense[..len - i].iter().enumerate() {
                acc[i + j] += bj;
            }
        } else if (-ai).is_one() {
            for (j, bj) in dense[..len - i].iter().enumerate() {
                acc[i + j] -= bj;
            }
        } else {
            for (j, bj) in dense[..len - i].iter().enumerate() {
                acc[i + j] += ai * bj;
            }
        }
    }
    acc
}

impl Series {
    /// The constant series `value + O(q^{order+1})`.
    pub fn constant(value: impl Into<BigInt>, order: usize, modulus: Option<u64>) -> Result<Self> {
        let value = value.into();
        let repr = match modulus {
            None => {
                let mut coeffs = vec![BigInt::zero(); order + 1];
                coeffs[0] = value;
                Repr::Int(coeffs)
            }
            Some(m) => {
                let m = check_modulus(m)?;
                let mut coeffs = vec![0; order + 1];
                coeffs[0] = residue_of(&value, m);
                Repr::Mod { modulus: m, coeffs }
            }
        };
        Ok(Series { repr })
    }

    pub fn zero(order: usize, modulus: Option<u64>) -> Result<Self> {
        Self::constant(0, order, modulus)
    }

    pub fn one(order: usize, modulus: Option<u64>) -> Result<Self> {
        Self::constant(1, order, modulus)
    }

    /// `coeff * q^exponent`, which is the zero series if `exponent > order`.
    pub fn monomial(
        coeff: impl Into<BigInt>,
        exponent: usize,
        order: usize,
        modulus: Option<u64>,
    ) -> Result<Self> {
        Self::constant(coeff, order, modulus)?.shift(exponent).map(|s| s.truncate(order))
    }

    /// Builds a series whose order is `coeffs.len() - 1`.
    pub fn from_coeffs<T: Into<BigInt>>(coeffs: Vec<T>, modulus: Option<u64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        let ints = coeffs.into_iter().map(Into::into);
        let repr = match modulus {
            None => Repr::Int(ints.collect()),
            Some(m) => {
                let m = check_modulus(m)?;
                Repr::Mod { modulus: m, coeffs: ints.map(|c| residue_of(&c, m)).collect() }
            }
        };
        Ok(Series { repr })
    }

    /// Sparse constructor: `Σ c·q^e` over the given terms, truncated at `order`.
    /// Repeated exponents accumulate.
    pub fn from_terms<I, T>(terms: I, order: usize, modulus: Option<u64>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, T)>,
        T: Into<BigInt>,
    {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (e, c) in terms {
            if e <= order {
                coeffs[e] += c.into();
            }
        }
        Self::from_coeffs(coeffs, modulus)
    }

    pub fn order(&self) -> usize {
        self.len() - 1
    }

    fn len(&self) -> usize {
        match &self.repr {
            Repr::Int(c) => c.len(),
            Repr::Mod { coeffs, .. } => coeffs.len(),
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match &self.repr {
            Repr::Int(_) => None,
            Repr::Mod { modulus, .. } => Some(*modulus),
        }
    }

    /// The coefficient of `q^n`. Indices past the truncation order are an
    /// error: those coefficients are unknown, not zero.
    pub fn coefficient(&self, n: usize) -> Result<BigInt> {
        if n > self.order() {
            return Err(SeriesError::OutOfRange { index: n, order: self.order() });
        }
        Ok(match &self.repr {
            Repr::Int(c) => c[n].clone(),
            Repr::Mod { coeffs, .. } => BigInt::from(coeffs[n]),
        })
    }

    /// All retained coefficients, `q^0` first.
    pub fn coefficients(&self) -> Vec<BigInt> {
        match &self.repr {
            Repr::Int(c) => c.clone(),
            Repr::Mod { coeffs, .. } => coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// Borrowed residues when the series has a modulus.
    pub fn residues(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Int(_) => None,
            Repr::Mod { coeffs, .. } => Some(coeffs),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Int(c) => c.iter().all(Zero::is_zero),
            Repr::Mod { coeffs, .. } => coeffs.iter().all(|&c| c == 0),
        }
    }

    /// Exponent of the first coefficient where `self` and `other` differ,
    /// comparing up to the smaller order.
    pub fn first_difference(&self, other: &Series) -> Result<Option<usize>> {
        let len = self.len().min(other.len());
        Ok(match (&self.repr, &other.repr) {
            (Repr::Int(a), Repr::Int(b)) => (0..len).find(|&i| a[i] != b[i]),
            (Repr::Mod { modulus: m1, coeffs: a }, Repr::Mod { modulus: m2, coeffs: b })
                if m1 == m2 =>
            {
                (0..len).find(|&i| a[i] != b[i])
            }
            _ => return Err(self.mismatch(other)),
        })
    }

    fn mismatch(&self, other: &Series) -> SeriesError {
        SeriesError::ModulusMismatch {
            left: ring_name(self.modulus()),
            right: ring_name(other.modulus()),
        }
    }

    /// Drops every coefficient above `order`. A larger `order` is a no-op.
    pub fn truncate(mut self, order: usize) -> Self {
        let len = order + 1;
        match &mut self.repr {
            Repr::Int(c) => c.truncate(len),
            Repr::Mod { coeffs, .. } => coeffs.truncate(len),
        }
        self
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Series) -> Result<Series> {
        let len = self.len().min(other.len());
        let repr = match (&self.repr, &other.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int((0..len).map(|i| &a[i] + &b[i]).collect()),
            (Repr::Mod { modulus: m1, coeffs: a }, Repr::Mod { modulus: m2, coeffs: b })
                if m1 == m2 =>
            {
                let m = *m1 as u128;
                Repr::Mod {
                    modulus: *m1,
                    coeffs: (0..len).map(|i| ((a[i] as u128 + b[i] as u128) % m) as u64).collect(),
                }
            }
            _ => return Err(self.mismatch(other)),
        };
        Ok(Series { repr })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Series {
        let repr = match &self.repr {
            Repr::Int(c) => Repr::Int(c.iter().map(|x| -x).collect()),
            Repr::Mod { modulus, coeffs } => Repr::Mod {
                modulus: *modulus,
                coeffs: coeffs.iter().map(|&c| if c == 0 { 0 } else { modulus - c }).collect(),
            },
        };
        Series { repr }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by an integer.
    pub fn scale(&self, factor: impl Into<BigInt>) -> Series {
        let factor = factor.into();
        let repr = match &self.repr {
            Repr::Int(c) => Repr::Int(c.iter().map(|x| x * &factor).collect()),
            Repr::Mod { modulus, coeffs } => {
                let f = residue_of(&factor, *modulus);
                Repr::Mod {
                    modulus: *modulus,
                    coeffs: coeffs.iter().map(|&c| mulmod(c, f, *modulus)).collect(),
                }
            }
        };
        Series { repr }
    }

    /// Truncated Cauchy product. Zero coefficients of the sparser operand
    /// are skipped, so multiplying by a lacunary series such as `f_n` costs
    /// `O(N·nnz)` rather than `O(N²)`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Series) -> Result<Series> {
        let len = self.len().min(other.len());
        let repr = match (&self.repr, &other.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(mul_int_slices(a, b, len)),
            (Repr::Mod { modulus: m1, coeffs: a }, Repr::Mod { modulus: m2, coeffs: b })
                if m1 == m2 =>
            {
                Repr::Mod { modulus: *m1, coeffs: mul_mod_slices(a, b, len, *m1) }
            }
            _ => return Err(self.mismatch(other)),
        };
        Ok(Series { repr })
    }

    /// `self / divisor`, computed by the triangular recurrence
    /// `d_0 x_n = s_n - Σ_{i≥1} d_i x_{n-i}`. The divisor's constant term
    /// must be a unit (`±1` over the integers, coprime to `m` otherwise).
    pub fn div(&self, divisor: &Series) -> Result<Series> {
        let len = self.len().min(divisor.len());
        let repr = match (&self.repr, &divisor.repr) {
            (Repr::Int(a), Repr::Int(d)) => {
                let d0 = &d[0];
                let negated = if d0.is_one() {
                    false
                } else if (-d0).is_one() {
                    true
                } else {
                    return Err(SeriesError::NotInvertible(d0.to_string()));
                };
                let sd = support(&d[1..len], Zero::is_zero);
                let mut out: Vec<BigInt> = Vec::with_capacity(len);
                for n in 0..len {
                    let mut acc = a[n].clone();
                    for &k in &sd {
                        let i = k + 1;
                        if i > n {
                            break;
                        }
                        acc -= &d[i] * &out[n - i];
                    }
                    out.push(if negated { -acc } else { acc });
                }
                Repr::Int(out)
            }
            (Repr::Mod { modulus: m1, coeffs: a }, Repr::Mod { modulus: m2, coeffs: d })
                if m1 == m2 =>
            {
                let m = *m1;
                let inv = inv_mod(d[0], m).ok_or_else(|| SeriesError::NotInvertible(d[0].to_string()))?;
                let sd = support(&d[1..len], |c| *c == 0);
                let mut out: Vec<u64> = Vec::with_capacity(len);
                for n in 0..len {
                    let mut acc: u128 = 0;
                    for &k in &sd {
                        let i = k + 1;
                        if i > n {
                            break;
                        }
                        acc = (acc + d[i] as u128 * out[n - i] as u128) % m as u128;
                    }
                    let diff = (a[n] as u128 + m as u128 - acc) % m as u128;
                    out.push(mulmod(diff as u64, inv, m));
                }
                Repr::Mod { modulus: m, coeffs: out }
            }
            _ => return Err(self.mismatch(divisor)),
        };
        Ok(Series { repr })
    }

    pub fn invert(&self) -> Result<Series> {
        Series::one(self.order(), self.modulus())?.div(self)
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<Series> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Series::one(self.order(), self.modulus())?;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Multiplies by `q^k`. The order grows by `k`: the first unknown
    /// coefficient moves from `N+1` to `N+1+k`.
    pub fn shift(&self, k: usize) -> Result<Series> {
        let repr = match &self.repr {
            Repr::Int(c) => {
                let mut out = vec![BigInt::zero(); k];
                out.extend(c.iter().cloned());
                Repr::Int(out)
            }
            Repr::Mod { modulus, coeffs } => {
                let mut out = vec![0; k];
                out.extend_from_slice(coeffs);
                Repr::Mod { modulus: *modulus, coeffs: out }
            }
        };
        Ok(Series { repr })
    }

    /// The substitution `q -> q^k`. Coefficients up to exponent
    /// `k·N + k - 1` are determined, and that is the order of the result.
    pub fn substitute_power(&self, k: usize) -> Result<Series> {
        if k == 0 {
            return Err(SeriesError::ZeroStep);
        }
        let len = self.len() * k;
        let repr = match &self.repr {
            Repr::Int(c) => {
                let mut out = vec![BigInt::zero(); len];
                for (n, x) in c.iter().enumerate() {
                    out[n * k] = x.clone();
                }
                Repr::Int(out)
            }
            Repr::Mod { modulus, coeffs } => {
                let mut out = vec![0; len];
                for (n, &x) in coeffs.iter().enumerate() {
                    out[n * k] = x;
                }
                Repr::Mod { modulus: *modulus, coeffs: out }
            }
        };
        Ok(Series { repr })
    }

    /// `Σ c_{kn+r} q^n`, of order `⌊(N - r)/k⌋`.
    pub fn extract_progression(&self, k: usize, r: usize) -> Result<Series> {
        if k == 0 {
            return Err(SeriesError::ZeroStep);
        }
        if r >= k {
            return Err(SeriesError::ResidueOutOfRange { residue: r, step: k });
        }
        if r > self.order() {
            return Err(SeriesError::OutOfRange { index: r, order: self.order() });
        }
        let repr = match &self.repr {
            Repr::Int(c) => Repr::Int(c.iter().skip(r).step_by(k).cloned().collect()),
            Repr::Mod { modulus, coeffs } => Repr::Mod {
                modulus: *modulus,
                coeffs: coeffs.iter().skip(r).step_by(k).copied().collect(),
            },
        };
        Ok(Series { repr })
    }

    /// The substitution `q -> -q`.
    pub fn negate_variable(&self) -> Series {
        let repr = match &self.repr {
            Repr::Int(c) => Repr::Int(
                c.iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() }).collect(),
            ),
            Repr::Mod { modulus, coeffs } => Repr::Mod {
                modulus: *modulus,
                coeffs: coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if i % 2 == 1 && x != 0 { modulus - x } else { x })
                    .collect(),
            },
        };
        Series { repr }
    }

    /// Reduces coefficients to canonical residues mod `m`. A series that
    /// already has a modulus can only be reduced to a divisor of it.
    pub fn reduce_mod(&self, m: u64) -> Result<Series> {
        let m = check_modulus(m)?;
        let coeffs = match &self.repr {
            Repr::Int(c) => c.iter().map(|x| residue_of(x, m)).collect(),
            Repr::Mod { modulus, coeffs } => {
                if modulus % m != 0 {
                    return Err(SeriesError::IncompatibleModulus { current: *modulus, requested: m });
                }
                coeffs.iter().map(|&c| c % m).collect()
            }
        };
        Ok(Series { repr: Repr::Mod { modulus: m, coeffs } })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)?;
        if let Some(m) = self.modulus() {
            write!(f, " (mod {m})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.coefficients().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    fn z(c: Vec<i64>) -> Series {
        Series::from_coeffs(c, None).unwrap()
    }

    #[test]
    fn constants() {
        assert_eq!(ints(&Series::constant(1, 5, None).unwrap()), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(ints(&Series::constant(7, 3, Some(4)).unwrap()), vec![3, 0, 0, 0]);
        assert_eq!(ints(&Series::constant(0, 2, None).unwrap()), vec![0, 0, 0]);
        assert_eq!(Series::constant(-1, 1, Some(5)).unwrap().residues(), Some(&[4u64, 0][..]));
        assert_eq!(Series::constant(1, 3, Some(1)), Err(SeriesError::ModulusTooSmall(1)));
        assert_eq!(Series::constant(1, 3, Some(0)), Err(SeriesError::ModulusTooSmall(0)));
    }

    #[test]
    fn ring_basics() {
        let a = z(vec![1, 1, 0, 0]);
        let b = z(vec![1, -1, 0, 0]);
        assert_eq!(ints(&a.mul(&b).unwrap()), vec![1, 0, -1, 0]);
        let s = z(vec![3, -1, 4, 1, -5]);
        assert_eq!(s.mul(&Series::one(4, None).unwrap()).unwrap(), s);
        assert!(s.add(&s.neg()).unwrap().is_zero());
        // mixed orders truncate
        assert_eq!(s.add(&a).unwrap().order(), 3);
        let m = Series::one(4, Some(3)).unwrap();
        assert!(matches!(s.mul(&m), Err(SeriesError::ModulusMismatch { .. })));
        let m4 = Series::one(4, Some(4)).unwrap();
        assert!(matches!(m.add(&m4), Err(SeriesError::ModulusMismatch { .. })));
    }

    #[test]
    fn inversion() {
        let geo = z(vec![1, -1, 0, 0, 0, 0]).invert().unwrap();
        assert_eq!(ints(&geo), vec![1; 6]);
        assert_eq!(ints(&Series::one(3, None).unwrap().invert().unwrap()), vec![1, 0, 0, 0]);
        assert_eq!(ints(&z(vec![-1, 1, 0]).invert().unwrap()), vec![-1, -1, -1]);
        assert!(matches!(z(vec![2, 1]).invert(), Err(SeriesError::NotInvertible(_))));
        assert!(matches!(
            Series::from_coeffs(vec![2, 1], Some(4)).unwrap().invert(),
            Err(SeriesError::NotInvertible(_))
        ));
        // 2 is a unit mod 5: (2 + q)^{-1} = 3 + q + 2q^2 + ... mod 5
        let inv = Series::from_coeffs(vec![2, 1, 0, 0], Some(5)).unwrap().invert().unwrap();
        let prod = inv.mul(&Series::from_coeffs(vec![2, 1, 0, 0], Some(5)).unwrap()).unwrap();
        assert_eq!(prod, Series::one(3, Some(5)).unwrap());
    }

    #[test]
    fn partition_numbers_by_inversion() {
        // Euler's product truncated at q^10, multiplied out directly.
        let mut f1 = Series::one(10, None).unwrap();
        for j in 1..=10 {
            f1 = f1.mul(&Series::from_terms([(0, 1), (j, -1)], 10, None).unwrap()).unwrap();
        }
        let p = f1.invert().unwrap();
        assert_eq!(ints(&p), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(p.coefficient(4).unwrap(), BigInt::from(5));
    }

    #[test]
    fn powers() {
        let a = z(vec![1, 1, 0, 0]);
        assert_eq!(ints(&a.pow(2).unwrap()), vec![1, 2, 1, 0]);
        assert_eq!(ints(&a.pow(0).unwrap()), vec![1, 0, 0, 0]);
        assert_eq!(ints(&a.pow(3).unwrap()), vec![1, 3, 3, 1]);
        let b = z(vec![1, -1, 0, 0, 0]);
        assert_eq!(b.pow(-1).unwrap(), b.invert().unwrap());
        assert_eq!(b.pow(-3).unwrap(), b.invert().unwrap().pow(3).unwrap());
        assert!(z(vec![3, 1]).pow(-2).is_err());
    }

    #[test]
    fn substitution_and_extraction() {
        let s = z(vec![1, 1, 1]);
        let sub = s.substitute_power(3).unwrap();
        assert_eq!(ints(&sub), vec![1, 0, 0, 1, 0, 0, 1, 0, 0]);
        assert_eq!(sub.order(), 8);
        assert_eq!(s.substitute_power(1).unwrap(), s);
        assert_eq!(s.substitute_power(0), Err(SeriesError::ZeroStep));

        let ramp = z((0..=8).collect());
        assert_eq!(ints(&ramp.extract_progression(3, 2).unwrap()), vec![2, 5, 8]);
        assert_eq!(ramp.extract_progression(3, 0).unwrap().order(), 2);
        assert_eq!(ramp.extract_progression(1, 0).unwrap(), ramp);
        assert_eq!(
            ramp.extract_progression(3, 3),
            Err(SeriesError::ResidueOutOfRange { residue: 3, step: 3 })
        );
        assert_eq!(ramp.extract_progression(0, 0), Err(SeriesError::ZeroStep));
        assert!(z(vec![1, 2]).extract_progression(5, 3).is_err());
    }

    #[test]
    fn reduction() {
        let s = z(vec![1, -1]);
        assert_eq!(s.reduce_mod(3).unwrap().residues(), Some(&[1u64, 2][..]));
        let big = z(vec![17, -23, 40, 5]);
        assert_eq!(big.reduce_mod(12).unwrap().reduce_mod(3).unwrap(), big.reduce_mod(3).unwrap());
        assert_eq!(
            big.reduce_mod(4).unwrap().reduce_mod(3),
            Err(SeriesError::IncompatibleModulus { current: 4, requested: 3 })
        );
        assert_eq!(big.reduce_mod(1), Err(SeriesError::ModulusTooSmall(1)));
    }

    #[test]
    fn coefficient_bounds() {
        let s = z(vec![1, 2]);
        assert_eq!(s.coefficient(1).unwrap(), BigInt::from(2));
        assert_eq!(s.coefficient(2), Err(SeriesError::OutOfRange { index: 2, order: 1 }));
    }

    #[test]
    fn shifting_and_sign_flip() {
        let s = z(vec![1, 2, 3]);
        assert_eq!(ints(&s.shift(2).unwrap()), vec![0, 0, 1, 2, 3]);
        assert_eq!(ints(&s.negate_variable()), vec![1, -2, 3]);
        let m = s.reduce_mod(5).unwrap();
        assert_eq!(m.negate_variable(), s.negate_variable().reduce_mod(5).unwrap());
        assert_eq!(ints(&Series::monomial(4, 2, 3, None).unwrap()), vec![0, 0, 4, 0]);
        assert!(Series::monomial(4, 9, 3, None).unwrap().is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(z(vec![1, -1, 0, 2]).to_string(), "1 - q + 2q^3 + O(q^4)");
        assert_eq!(z(vec![0, 0]).reduce_mod(3).unwrap().to_string(), "0 + O(q^2) (mod 3)");
    }

    #[test]
    fn large_modulus_paths() {
        let m = u64::MAX - 58; // prime 2^64 - 59
        let a = Series::from_coeffs(vec![1i64, -1, 5, 7], Some(m)).unwrap();
        let inv = a.invert().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Series::one(3, Some(m)).unwrap());
        let ai = Series::from_coeffs(vec![1i64, -1, 5, 7], None).unwrap();
        assert_eq!(ai.pow(5).unwrap().reduce_mod(m).unwrap(), a.pow(5).unwrap());
    }

    fn small_series(len: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-9i64..=9, len)
    }

    fn unit_series(len: usize) -> impl Strategy<Value = Vec<i64>> {
        (prop_oneof![Just(1i64), Just(-1i64)], small_series(len - 1)).prop_map(|(c0, mut rest)| {
            rest.insert(0, c0);
            rest
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_series(33), b in small_series(33), c in small_series(33)) {
            let (a, b, c) = (z(a), z(b), z(c));
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn inverse_is_two_sided(a in unit_series(65)) {
            let a = z(a);
            prop_assert_eq!(a.mul(&a.invert().unwrap()).unwrap(), Series::one(64, None).unwrap());
        }

        #[test]
        fn extract_undoes_substitute(a in small_series(20), k in 1usize..6) {
            let a = z(a);
            prop_assert_eq!(a.substitute_power(k).unwrap().extract_progression(k, 0).unwrap(), a);
        }

        #[test]
        fn dissection_is_complete(a in small_series(40), k in 1usize..8) {
            let a = z(a);
            let mut total = Series::zero(a.order(), None).unwrap();
            for r in 0..k {
                let piece = a.extract_progression(k, r).unwrap().substitute_power(k).unwrap().shift(r).unwrap();
                total = total.add(&piece).unwrap();
            }
            prop_assert_eq!(total, a);
        }

        #[test]
        fn reduction_is_a_homomorphism(
            a in small_series(25),
            b in small_series(25),
            m in prop::sample::select(vec![2u64, 3, 4, 6, 12]),
        ) {
            let (a, b) = (z(a), z(b));
            let red = |s: &Series| s.reduce_mod(m).unwrap();
            prop_assert_eq!(red(&a.mul(&b).unwrap()), red(&a).mul(&red(&b)).unwrap());
            prop_assert_eq!(red(&a.add(&b).unwrap()), red(&a).add(&red(&b)).unwrap());
        }

        #[test]
        fn modular_division_matches_integer(a in small_series(30), d in unit_series(30), m in 2u64..40) {
            let (a, d) = (z(a), z(d));
            let exact = a.div(&d).unwrap().reduce_mod(m).unwrap();
            prop_assert_eq!(exact, a.reduce_mod(m).unwrap().div(&d.reduce_mod(m).unwrap()).unwrap());
        }
    }
}
