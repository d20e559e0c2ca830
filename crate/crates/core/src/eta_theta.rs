//! Eta quotients `∏ f_n^k` and Ramanujan's theta function `f(a, b)`.
//!
//! Here `f_n = ∏_{j≥1} (1 - q^{jn})`. Each `f_n` is expanded through Euler's
//! pentagonal number series, which has only `O(√N)` nonzero terms up to
//! `q^N`, so multiplying or dividing by it is cheap.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::series::{Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EtaError {
    #[error("eta factor index must be positive")]
    ZeroIndex,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("theta function f(a, b) needs a positive total exponent")]
    DegenerateTheta,
    #[error("number of colors must be at least 1, got {0}")]
    InvalidColors(u32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A finite product `∏ f_n^k`, normalized: indices sorted and distinct,
/// no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EtaQuotient {
    factors: Vec<(u32, i64)>,
}

impl EtaQuotient {
    pub fn new<I: IntoIterator<Item = (u32, i64)>>(factors: I) -> Result<Self, EtaError> {
        let mut merged: Vec<(u32, i64)> = Vec::new();
        for (n, k) in factors {
            if n == 0 {
                return Err(EtaError::ZeroIndex);
            }
            match merged.iter_mut().find(|(m, _)| *m == n) {
                Some(slot) => slot.1 += k,
                None => merged.push((n, k)),
            }
        }
        merged.retain(|&(_, k)| k != 0);
        merged.sort_unstable();
        Ok(EtaQuotient { factors: merged })
    }

    pub fn factors(&self) -> &[(u32, i64)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of two quotients.
    pub fn times(&self, other: &EtaQuotient) -> EtaQuotient {
        EtaQuotient::new(self.factors.iter().chain(&other.factors).copied())
            .expect("factors are already valid")
    }

    /// Raises the whole quotient to an integer power.
    pub fn powi(&self, k: i64) -> EtaQuotient {
        EtaQuotient::new(self.factors.iter().map(|&(n, e)| (n, e * k)))
            .expect("factors are already valid")
    }

    pub fn expand(&self, order: usize, modulus: Option<u64>) -> Result<Series, EtaError> {
        expand_eta_quotient(self, order, modulus)
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (n, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *k == 1 {
                write!(f, "f{n}")?;
            } else {
                write!(f, "f{n}^{k}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, EtaError> {
        Err(EtaError::Parse { position: self.pos, message: message.into() })
    }

    fn number(&mut self) -> Result<u64, EtaError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    /// `fN` or `fN^k`; a bare `1` is the empty product.
    fn term(&mut self) -> Result<Option<(u32, i64)>, EtaError> {
        match self.peek() {
            Some(b'f') => {
                self.pos += 1;
                let at = self.pos;
                let n = self.number()?;
                let n = u32::try_from(n).map_err(|_| EtaError::Parse {
                    position: at,
                    message: "index too large".into(),
                })?;
                if n == 0 {
                    self.pos = at;
                    return self.err("eta index must be positive");
                }
                let mut k = 1i64;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let negative = self.peek() == Some(b'-');
                    if negative {
                        self.pos += 1;
                    }
                    let at = self.pos;
                    let e = self.number()?;
                    let e = i64::try_from(e).map_err(|_| EtaError::Parse {
                        position: at,
                        message: "exponent too large".into(),
                    })?;
                    k = if negative { -e } else { e };
                }
                Ok(Some((n, k)))
            }
            Some(b'1') => {
                let at = self.pos;
                if self.number()? != 1 {
                    self.pos = at;
                    return self.err("only the constant 1 may appear as a bare number");
                }
                Ok(None)
            }
            Some(_) => self.err("expected a factor like f2 or f4^3"),
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for EtaQuotient {
    type Err = EtaError;

    /// Grammar: terms `fN` or `fN^k` (k may be negative) joined by `*` or
    /// `/`, e.g. `f4^1/f1^2*f2^-1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let mut factors = Vec::new();
        factors.extend(p.term()?);
        loop {
            match p.peek() {
                None => break,
                Some(op @ (b'*' | b'/')) => {
                    p.pos += 1;
                    if let Some((n, k)) = p.term()? {
                        factors.push((n, if op == b'/' { -k } else { k }));
                    }
                }
                Some(_) => return p.err("expected '*' or '/'"),
            }
        }
        EtaQuotient::new(factors)
    }
}

/// `f_n` through the pentagonal number theorem:
/// `f_1 = Σ_{j∈Z} (-1)^j q^{j(3j-1)/2}`.
fn pentagonal(n: usize, order: usize, modulus: Option<u64>) -> Result<Series, SeriesError> {
    let mut terms: Vec<(usize, i64)> = vec![(0, 1)];
    for j in 1usize.. {
        let sign = if j % 2 == 1 { -1 } else { 1 };
        let e1 = j * (3 * j - 1) / 2 * n;
        let e2 = j * (3 * j + 1) / 2 * n;
        if e1 > order {
            break;
        }
        terms.push((e1, sign));
        if e2 <= order {
            terms.push((e2, sign));
        }
    }
    Series::from_terms(terms, order, modulus)
}

// Above this many repetitions a dense binary power is cheaper than repeated
// sparse products.
const SPARSE_REPEAT_LIMIT: u64 = 48;

fn apply_factor(acc: Series, n: u32, k: i64, order: usize) -> Result<Series, SeriesError> {
    let f = pentagonal(n as usize, order, acc.modulus())?;
    if k.unsigned_abs() > SPARSE_REPEAT_LIMIT {
        return acc.mul(&f.pow(k)?);
    }
    let mut acc = acc;
    for _ in 0..k.unsigned_abs() {
        acc = if k > 0 { acc.mul(&f)? } else { acc.div(&f)? };
    }
    Ok(acc)
}

/// Truncated expansion of `f_n^k`.
pub fn expand_f(n: u32, k: i64, order: usize) -> Result<Series, EtaError> {
    if n == 0 {
        return Err(EtaError::ZeroIndex);
    }
    Ok(apply_factor(Series::one(order, None)?, n, k, order)?)
}

/// Expands `∏ f_n^k` to `q^order`. With a modulus every intermediate product
/// is reduced, which keeps long sweeps in machine-word arithmetic.
pub fn expand_eta_quotient(
    e: &EtaQuotient,
    order: usize,
    modulus: Option<u64>,
) -> Result<Series, EtaError> {
    let mut acc = Series::one(order, modulus)?;
    for &(n, k) in e.factors() {
        acc = apply_factor(acc, n, k, order)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// Ramanujan's `f(a, b)` with `a = ±q^{a_exp}` and `b = ±q^{b_exp}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThetaSpec {
    a_sign: Sign,
    a_exp: usize,
    b_sign: Sign,
    b_exp: usize,
}

impl ThetaSpec {
    pub fn new(a_sign: Sign, a_exp: usize, b_sign: Sign, b_exp: usize) -> Result<Self, EtaError> {
        if a_exp + b_exp == 0 {
            return Err(EtaError::DegenerateTheta);
        }
        Ok(ThetaSpec { a_sign, a_exp, b_sign, b_exp })
    }

    /// `f(q^a, q^b)` with both arguments positive.
    pub fn plus(a_exp: usize, b_exp: usize) -> Result<Self, EtaError> {
        Self::new(Sign::Plus, a_exp, Sign::Plus, b_exp)
    }
}

/// The bilateral sum `Σ_k a^{k(k+1)/2} b^{k(k-1)/2}` truncated at `q^order`.
pub fn theta_sum(t: &ThetaSpec, order: usize, modulus: Option<u64>) -> Result<Series, SeriesError> {
    let term = |k: i64| -> (u128, bool) {
        let up = (k * (k + 1) / 2) as u128;
        let down = (k * (k - 1) / 2) as u128;
        let exp = t.a_exp as u128 * up + t.b_exp as u128 * down;
        let negative = (t.a_sign == Sign::Minus && up % 2 == 1) ^ (t.b_sign == Sign::Minus && down % 2 == 1);
        (exp, negative)
    };
    let mut terms: Vec<(usize, i64)> = Vec::new();
    // the exponent is non-decreasing moving away from k = 0 in either direction
    for dir in [1i64, -1] {
        let mut k = if dir == 1 { 0 } else { -1 };
        loop {
            let (exp, negative) = term(k);
            if exp > order as u128 {
                break;
            }
            terms.push((exp as usize, if negative { -1 } else { 1 }));
            k += dir;
        }
    }
    Series::from_terms(terms, order, modulus)
}

fn eta(factors: &[(u32, i64)]) -> EtaQuotient {
    EtaQuotient::new(factors.iter().copied()).expect("static factors are valid")
}

/// `ψ(q) = f_2^2 / f_1`.
pub fn psi_quotient() -> EtaQuotient {
    eta(&[(2, 2), (1, -1)])
}

/// `ψ(-q) = f_1 f_4 / f_2`.
pub fn psi_neg_quotient() -> EtaQuotient {
    eta(&[(1, 1), (4, 1), (2, -1)])
}

/// `φ(q) = f_2^5 / (f_1^2 f_4^2)`.
pub fn phi_quotient() -> EtaQuotient {
    eta(&[(2, 5), (1, -2), (4, -2)])
}

/// `χ(q) = f_2^2 / (f_1 f_4)`.
pub fn chi_quotient() -> EtaQuotient {
    eta(&[(2, 2), (1, -1), (4, -1)])
}

pub fn psi(order: usize) -> Series {
    expand_eta_quotient(&psi_quotient(), order, None).expect("integer expansion")
}

pub fn psi_neg(order: usize) -> Series {
    expand_eta_quotient(&psi_neg_quotient(), order, None).expect("integer expansion")
}

pub fn phi(order: usize) -> Series {
    expand_eta_quotient(&phi_quotient(), order, None).expect("integer expansion")
}

pub fn chi(order: usize) -> Series {
    expand_eta_quotient(&chi_quotient(), order, None).expect("integer expansion")
}

fn check_colors(c: u32) -> Result<i64, EtaError> {
    if c == 0 {
        Err(EtaError::InvalidColors(c))
    } else {
        Ok(c as i64)
    }
}

/// `1 / (f_1 f_2^{c-1})`, the generating function of `a_c(n)`.
pub fn cubic_quotient(c: u32) -> Result<EtaQuotient, EtaError> {
    let c = check_colors(c)?;
    EtaQuotient::new([(1, -1), (2, 1 - c)])
}

/// `f_4^{c-1} / (f_1^2 f_2^{2c-3})`, the generating function of `ā_c(n)`.
pub fn overcubic_quotient(c: u32) -> Result<EtaQuotient, EtaError> {
    let c = check_colors(c)?;
    EtaQuotient::new([(4, c - 1), (1, -2), (2, 3 - 2 * c)])
}

pub fn gen_cubic_gf(c: u32, order: usize) -> Result<Series, EtaError> {
    expand_eta_quotient(&cubic_quotient(c)?, order, None)
}

pub fn gen_overcubic_gf(c: u32, order: usize, modulus: Option<u64>) -> Result<Series, EtaError> {
    expand_eta_quotient(&overcubic_quotient(c)?, order, modulus)
}

/// The three eta-quotient pieces of the 3-dissection of `f_2 / (f_1 f_4)`,
/// paired with their monomial shifts `q^0, q^1, q^2`.
pub fn toh_terms() -> [(usize, EtaQuotient); 3] {
    [
        (0, eta(&[(18, 9), (3, -2), (9, -3), (12, -2), (36, -3)])),
        (1, eta(&[(6, 2), (18, 3), (3, -3), (12, -3)])),
        (2, eta(&[(6, 4), (9, 3), (36, 3), (3, -4), (12, -4), (18, -3)])),
    ]
}

/// Right-hand side of the 3-dissection of `f_2 / (f_1 f_4)`.
pub fn toh_rhs(order: usize, modulus: Option<u64>) -> Result<Series, EtaError> {
    let mut total = Series::zero(order, modulus)?;
    for (shift, quotient) in toh_terms() {
        let piece = expand_eta_quotient(&quotient, order, modulus)?.shift(shift)?;
        total = total.add(&piece)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    fn ints(s: &Series) -> Vec<i64> {
        s.coefficients().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    /// `∏_{j≤N/n} (1 - q^{jn})` multiplied out one binomial at a time.
    fn direct_product(n: usize, order: usize) -> Series {
        let mut acc = Series::one(order, None).unwrap();
        for j in 1..=order / n {
            let factor = Series::from_terms([(0, 1), (j * n, -1)], order, None).unwrap();
            acc = acc.mul(&factor).unwrap();
        }
        acc
    }

    fn parts_count(n: usize) -> Vec<i64> {
        // brute-force partition counts from recursive enumeration
        fn go(rem: usize, max: usize) -> i64 {
            if rem == 0 {
                return 1;
            }
            (1..=max.min(rem)).map(|p| go(rem - p, p)).sum()
        }
        (0..=n).map(|m| go(m, m)).collect()
    }

    #[test]
    fn euler_function() {
        assert_eq!(ints(&expand_f(1, 1, 8).unwrap()), vec![1, -1, -1, 0, 0, 1, 0, 1, 0]);
        for n in 1..=5 {
            assert_eq!(expand_f(n, 1, 200).unwrap(), direct_product(n as usize, 200));
        }
        assert_eq!(expand_f(3, 0, 10).unwrap(), Series::one(10, None).unwrap());
        assert_eq!(ints(&expand_f(1, -1, 10).unwrap()), parts_count(10));
        assert_eq!(expand_f(0, 1, 3), Err(EtaError::ZeroIndex));
        // large exponents take the dense route
        let big = expand_f(2, -60, 40).unwrap();
        assert_eq!(big, direct_product(2, 40).pow(-60).unwrap());
        assert_eq!(expand_f(1, 7, 150).unwrap(), direct_product(1, 150).pow(7).unwrap());
    }

    #[test]
    fn substitution_matches_higher_index() {
        let f1 = expand_f(1, 1, 50).unwrap();
        assert_eq!(f1.substitute_power(2).unwrap().truncate(50), expand_f(2, 1, 50).unwrap());
    }

    #[test]
    fn quotient_normalization() {
        let e = EtaQuotient::new([(2, 1), (1, -2), (2, 2), (4, 0)]).unwrap();
        assert_eq!(e.factors(), &[(1, -2), (2, 3)]);
        assert!(EtaQuotient::new([(1, 1), (1, -1)]).unwrap().is_one());
        assert_eq!(EtaQuotient::new([(0, 1)]), Err(EtaError::ZeroIndex));
        assert_eq!(e.powi(2).factors(), &[(1, -4), (2, 6)]);
        assert_eq!(e.to_string(), "f1^-2*f2^3");
    }

    #[test]
    fn overpartition_quotient() {
        let e = EtaQuotient::new([(2, 1), (1, -2)]).unwrap();
        assert_eq!(ints(&e.expand(3, None).unwrap()), vec![1, 2, 4, 8]);
        assert_eq!(EtaQuotient::default().expand(4, None).unwrap(), Series::one(4, None).unwrap());
        let cancel = EtaQuotient::new([(1, 1), (1, -1)]).unwrap();
        assert_eq!(cancel.expand(6, None).unwrap(), Series::one(6, None).unwrap());
    }

    #[test]
    fn parsing() {
        let e: EtaQuotient = "f4^1/f1^2*f2^-1".parse().unwrap();
        assert_eq!(e.factors(), &[(1, -2), (2, -1), (4, 1)]);
        let same: EtaQuotient = "f4 * f1^-2 / f2".parse().unwrap();
        assert_eq!(e, same);
        assert!(" f1^0 ".parse::<EtaQuotient>().unwrap().is_one());
        assert_eq!("1/f1".parse::<EtaQuotient>().unwrap().factors(), &[(1, -1)]);
        assert_eq!(
            "f2/g1".parse::<EtaQuotient>(),
            Err(EtaError::Parse { position: 3, message: "expected a factor like f2 or f4^3".into() })
        );
        assert!(matches!("f0".parse::<EtaQuotient>(), Err(EtaError::Parse { position: 1, .. })));
        assert!(matches!("f2 f1".parse::<EtaQuotient>(), Err(EtaError::Parse { position: 3, .. })));
        assert!(matches!("f2^".parse::<EtaQuotient>(), Err(EtaError::Parse { position: 3, .. })));
        assert!(matches!("".parse::<EtaQuotient>(), Err(EtaError::Parse { position: 0, .. })));
        assert!(matches!("f2*".parse::<EtaQuotient>(), Err(EtaError::Parse { position: 3, .. })));
        // display output parses back
        assert_eq!(e.to_string().parse::<EtaQuotient>().unwrap(), e);
    }

    #[test]
    fn theta_sums() {
        let psi_sum = theta_sum(&ThetaSpec::plus(1, 3).unwrap(), 10, None).unwrap();
        assert_eq!(ints(&psi_sum), vec![1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1]);
        let phi_sum = theta_sum(&ThetaSpec::plus(1, 1).unwrap(), 9, None).unwrap();
        assert_eq!(ints(&phi_sum), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
        assert_eq!(ThetaSpec::plus(0, 0), Err(EtaError::DegenerateTheta));
        // f(1, q) = Σ q^{k(k-1)/2}: each triangular number arises from k and 1-k
        let lop = theta_sum(&ThetaSpec::plus(0, 1).unwrap(), 6, None).unwrap();
        assert_eq!(ints(&lop), vec![2, 2, 0, 2, 0, 0, 2]);

        let f_neg = ThetaSpec::new(Sign::Minus, 1, Sign::Plus, 2).unwrap();
        let lhs = theta_sum(&f_neg, 7, None).unwrap();
        let rhs = phi(7).substitute_power(3).unwrap().div(&chi(7)).unwrap();
        assert_eq!(lhs, rhs.truncate(7));
    }

    #[test]
    fn named_functions_agree_with_theta_sums() {
        assert_eq!(psi(10), theta_sum(&ThetaSpec::plus(1, 3).unwrap(), 10, None).unwrap());
        assert_eq!(phi(9), theta_sum(&ThetaSpec::plus(1, 1).unwrap(), 9, None).unwrap());
        assert_eq!(psi_neg(40), psi(40).negate_variable());
        let neg = ThetaSpec::new(Sign::Minus, 1, Sign::Minus, 3).unwrap();
        assert_eq!(psi_neg(60), theta_sum(&neg, 60, None).unwrap());
    }

    #[test]
    fn named_generating_functions() {
        assert_eq!(gen_cubic_gf(2, 10).unwrap().coefficient(4).unwrap(), BigInt::from(9));
        assert_eq!(gen_cubic_gf(1, 30).unwrap(), expand_f(1, -1, 30).unwrap());
        let cubic = gen_cubic_gf(2, 95).unwrap();
        for n in 0..=30 {
            assert_eq!(cubic.coefficient(3 * n + 2).unwrap() % 3, BigInt::from(0));
        }
        let over = gen_overcubic_gf(1, 10, None).unwrap();
        assert_eq!(over.coefficient(3).unwrap(), BigInt::from(8));
        assert_eq!(over, EtaQuotient::new([(2, 1), (1, -2)]).unwrap().expand(10, None).unwrap());
        for c in 1..=6 {
            assert_eq!(gen_overcubic_gf(c, 5, None).unwrap().coefficient(0).unwrap(), BigInt::from(1));
        }
        assert_eq!(gen_overcubic_gf(0, 5, None), Err(EtaError::InvalidColors(0)));
        assert_eq!(cubic_quotient(0), Err(EtaError::InvalidColors(0)));
    }

    #[test]
    fn modular_expansion_matches_reduction() {
        for c in [2, 5, 8, 11] {
            let exact = gen_overcubic_gf(c, 120, None).unwrap().reduce_mod(12).unwrap();
            assert_eq!(gen_overcubic_gf(c, 120, Some(12)).unwrap(), exact);
        }
    }

    #[test]
    fn toh_dissection() {
        let lhs = EtaQuotient::new([(2, 1), (1, -1), (4, -1)]).unwrap().expand(60, None).unwrap();
        let rhs = toh_rhs(60, None).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs.coefficient(0).unwrap(), BigInt::from(1));
        let (_, first) = &toh_terms()[0];
        let rest = rhs.sub(&first.expand(60, None).unwrap()).unwrap();
        assert!(rest.extract_progression(3, 0).unwrap().is_zero());
    }
}
