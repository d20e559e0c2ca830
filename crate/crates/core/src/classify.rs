//! The mod-4 classification of `ā_c(n)`, congruence-family sweeps and the
//! series identity checker.
//!
//! Every check produces a [`VerificationReport`]. A harness never reads a
//! coefficient past the truncation order it was given: sweeps refuse to run
//! when the order does not cover the requested `n`-range.

use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::factorize;
use crate::eta_theta::{
    self, expand_eta_quotient, gen_overcubic_gf, theta_sum, EtaError,
    EtaQuotient, Sign, ThetaSpec,
};
use crate::series::{Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("truncation order {order} is too small: at least {required} is needed")]
    InsufficientOrder { required: usize, order: usize },
    #[error("invalid congruence family: {0}")]
    InvalidFamily(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("modulus {modulus} and its prime-power components disagree at i = {i}, n = {n}")]
    CrtMismatch { modulus: u64, i: u64, n: u64 },
    #[error(transparent)]
    Eta(#[from] EtaError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, VerifyError>;

/// Which of the three cases of the mod-4 theorem an integer falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "tag", content = "witness")]
pub enum Mod4Class {
    /// `n = k^2`
    Square(u64),
    /// `n = 2k^2`
    TwiceSquare(u64),
    Other,
}

impl Mod4Class {
    pub fn witness(&self) -> Option<u64> {
        match *self {
            Mod4Class::Square(k) | Mod4Class::TwiceSquare(k) => Some(k),
            Mod4Class::Other => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Mod4Class::Square(_) => "square",
            Mod4Class::TwiceSquare(_) => "twice_square",
            Mod4Class::Other => "other",
        }
    }
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

pub fn classify_n(n: u64) -> Mod4Class {
    assert!(n >= 1, "classify_n needs n >= 1");
    if let Some(k) = exact_sqrt(n) {
        Mod4Class::Square(k)
    } else if let Some(k) = n.is_multiple_of(2).then(|| exact_sqrt(n / 2)).flatten() {
        Mod4Class::TwiceSquare(k)
    } else {
        Mod4Class::Other
    }
}

/// `ā_c(n) mod 4` as predicted: 2 on squares, `2(c+1)` on twice squares,
/// 0 elsewhere.
pub fn theorem_mod4_residue(c: u32, n: u64) -> u64 {
    match classify_n(n) {
        Mod4Class::Square(_) => 2,
        Mod4Class::TwiceSquare(_) => 2 * (c as u64 + 1) % 4,
        Mod4Class::Other => 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A coefficient that broke the claim. For family sweeps `i` is the family
/// parameter; for the mod-4 sweep it is the color count `c`; identities use 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub i: u64,
    pub n: u64,
    pub observed: String,
    pub expected: String,
}

/// Outcome of one check restricted to a single prime-power modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentCheck {
    pub modulus: u64,
    pub status: Status,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub description: String,
    /// Inclusive parameter range, absent when no parameter applies or the
    /// range is empty.
    pub i_range: Option<(u64, u64)>,
    /// Inclusive range of checked `n`.
    pub n_range: Option<(u64, u64)>,
    pub order: usize,
    pub modulus: Option<u64>,
    pub status: Status,
    /// Set when the requested parameter range was empty.
    pub vacuous: bool,
    pub counterexamples: Vec<Counterexample>,
    pub components: Vec<ComponentCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn first_counterexample(&self) -> Option<&Counterexample> {
        self.counterexamples.first()
    }

    fn finish(mut self) -> Self {
        self.counterexamples.sort_by_key(|c| (c.i, c.n));
        self.status = if self.counterexamples.is_empty() { Status::Pass } else { Status::Fail };
        self
    }
}

fn ensure_order(required: usize, order: usize) -> Result<()> {
    if order < required {
        Err(VerifyError::InsufficientOrder { required, order })
    } else {
        Ok(())
    }
}

#[cfg(feature = "parallel")]
fn map_ordered<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_ordered<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}

/// Compares `ā_c(n) mod 4` from the series expansion against
/// [`theorem_mod4_residue`] for `1 <= c <= c_max`, `1 <= n <= n_max`.
pub fn verify_theorem_mod4(c_max: u32, n_max: u64, order: usize) -> Result<VerificationReport> {
    ensure_order(n_max as usize, order)?;
    let per_c = map_ordered((1..=c_max).collect(), |c| -> Result<Vec<Counterexample>> {
        let s = gen_overcubic_gf(c, order, Some(4))?;
        let res = s.residues().expect("series has a modulus");
        Ok((1..=n_max)
            .filter_map(|n| {
                let expected = theorem_mod4_residue(c, n);
                let observed = res[n as usize];
                (observed != expected).then(|| Counterexample {
                    i: c as u64,
                    n,
                    observed: observed.to_string(),
                    expected: expected.to_string(),
                })
            })
            .collect())
    });
    let mut counterexamples = Vec::new();
    for r in per_c {
        counterexamples.extend(r?);
    }
    Ok(VerificationReport {
        description: format!("abar_c(n) mod 4 follows the square/twice-square rule for c <= {c_max}"),
        i_range: (c_max >= 1).then_some((1, c_max as u64)),
        n_range: (n_max >= 1).then_some((1, n_max)),
        order,
        modulus: Some(4),
        status: Status::Pass,
        vacuous: c_max == 0 || n_max == 0,
        counterexamples,
        components: Vec::new(),
    }
    .finish())
}

/// The claim `ā_{a·i+b}(s·n+t) ≡ ρ (mod m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CongruenceFamily {
    pub c_slope: u32,
    pub c_intercept: u32,
    pub prog_slope: u64,
    pub prog_intercept: u64,
    pub modulus: u64,
    pub residue: u64,
}

impl CongruenceFamily {
    pub fn new(
        c_slope: u32,
        c_intercept: u32,
        prog_slope: u64,
        prog_intercept: u64,
        modulus: u64,
        residue: u64,
    ) -> Result<Self> {
        let bad = |m: &str| Err(VerifyError::InvalidFamily(m.to_string()));
        if c_intercept < 1 {
            return bad("the color intercept must be at least 1");
        }
        if prog_slope < 1 {
            return bad("the progression slope must be at least 1");
        }
        if prog_intercept >= prog_slope {
            return bad("the progression intercept must be below its slope");
        }
        if modulus < 2 {
            return bad("the modulus must be at least 2");
        }
        if residue >= modulus {
            return bad("the residue must be below the modulus");
        }
        Ok(CongruenceFamily { c_slope, c_intercept, prog_slope, prog_intercept, modulus, residue })
    }

    pub fn colors(&self, i: u64) -> u32 {
        (self.c_slope as u64 * i + self.c_intercept as u64) as u32
    }

    pub fn describe(&self) -> String {
        let c = match (self.c_slope, self.c_intercept) {
            (0, b) => b.to_string(),
            (1, b) => format!("i+{b}"),
            (a, b) => format!("{a}i+{b}"),
        };
        let arg = match (self.prog_slope, self.prog_intercept) {
            (1, 0) => "n".to_string(),
            (s, 0) => format!("{s}n"),
            (1, t) => format!("n+{t}"),
            (s, t) => format!("{s}n+{t}"),
        };
        format!("abar_{{{c}}}({arg}) = {} mod {}", self.residue, self.modulus)
    }

    fn required_order(&self, n_max: u64) -> usize {
        (self.prog_slope * n_max + self.prog_intercept) as usize
    }
}

/// Failing `(i, n)` pairs of a family checked modulo `m`, for `i` in
/// `1..=i_max` and `n` in `0..=n_max`.
fn family_failures(
    f: &CongruenceFamily,
    m: u64,
    i_max: u64,
    n_max: u64,
    order: usize,
) -> Result<Vec<(u64, u64, u64)>> {
    let rho = f.residue % m;
    let per_i = map_ordered((1..=i_max).collect(), |i| -> Result<Vec<(u64, u64, u64)>> {
        let s = gen_overcubic_gf(f.colors(i), order, Some(m))?;
        let part = s.extract_progression(f.prog_slope as usize, f.prog_intercept as usize)?;
        let res = part.residues().expect("series has a modulus");
        Ok((0..=n_max).filter(|&n| res[n as usize] != rho).map(|n| (i, n, res[n as usize])).collect())
    });
    let mut out = Vec::new();
    for r in per_i {
        out.extend(r?);
    }
    Ok(out)
}

fn prime_power_components(m: u64) -> Vec<u64> {
    factorize(m).into_iter().map(|(p, e)| p.pow(e)).collect()
}

/// Sweeps a congruence family for `1 <= i <= i_max`, `0 <= n <= n_max`.
///
/// Composite moduli are also checked one prime-power component at a time;
/// the set of failing `(i, n)` must be the union of the component failures.
pub fn verify_family(
    f: &CongruenceFamily,
    i_max: u64,
    n_max: u64,
    order: usize,
) -> Result<VerificationReport> {
    ensure_order(f.required_order(n_max), order)?;
    let direct = family_failures(f, f.modulus, i_max, n_max, order)?;
    let mut components = Vec::new();
    let parts = prime_power_components(f.modulus);
    if parts.len() > 1 {
        let mut union: Vec<(u64, u64)> = Vec::new();
        for q in parts {
            let fails = family_failures(f, q, i_max, n_max, order)?;
            components.push(ComponentCheck {
                modulus: q,
                status: if fails.is_empty() { Status::Pass } else { Status::Fail },
                failures: fails.len() as u64,
            });
            union.extend(fails.iter().map(|&(i, n, _)| (i, n)));
        }
        union.sort_unstable();
        union.dedup();
        let direct_pairs: Vec<(u64, u64)> = direct.iter().map(|&(i, n, _)| (i, n)).collect();
        if union != direct_pairs {
            let (i, n) = union
                .iter()
                .zip(&direct_pairs)
                .find(|(a, b)| a != b)
                .map(|(a, _)| *a)
                .or_else(|| union.get(direct_pairs.len()).copied())
                .or_else(|| direct_pairs.get(union.len()).copied())
                .unwrap_or((0, 0));
            return Err(VerifyError::CrtMismatch { modulus: f.modulus, i, n });
        }
    }
    let vacuous = i_max == 0;
    Ok(VerificationReport {
        description: f.describe(),
        i_range: (!vacuous).then_some((1, i_max)),
        n_range: Some((0, n_max)),
        order,
        modulus: Some(f.modulus),
        status: Status::Pass,
        vacuous,
        counterexamples: direct
            .into_iter()
            .map(|(i, n, r)| Counterexample {
                i,
                n,
                observed: r.to_string(),
                expected: f.residue.to_string(),
            })
            .collect(),
        components,
    }
    .finish())
}

fn family(a: u32, b: u32, s: u64, t: u64, m: u64) -> CongruenceFamily {
    CongruenceFamily::new(a, b, s, t, m, 0).expect("built-in family is valid")
}

/// `ā_{3i+2}(3n+2) ≡ 0 (mod 6)` and `ā_{9i+5}(9n+3)`, `ā_{9i+8}(9n+3) ≡ 0 (mod 12)`.
pub fn theorem15_families() -> [CongruenceFamily; 3] {
    [family(3, 2, 3, 2, 6), family(9, 5, 9, 3, 12), family(9, 8, 9, 3, 12)]
}

/// The five families at progressions mod 9.
pub fn conjecture73_families() -> [CongruenceFamily; 5] {
    [
        family(3, 2, 9, 2, 6),
        family(3, 2, 9, 5, 6),
        family(3, 2, 9, 8, 6),
        family(9, 5, 9, 3, 12),
        family(9, 8, 9, 3, 12),
    ]
}

pub fn verify_theorem15(i_max: u64, n_max: u64, order: usize) -> Result<Vec<VerificationReport>> {
    theorem15_families().iter().map(|f| verify_family(f, i_max, n_max, order)).collect()
}

pub fn verify_conjecture73(i_max: u64, n_max: u64, order: usize) -> Result<Vec<VerificationReport>> {
    conjecture73_families().iter().map(|f| verify_family(f, i_max, n_max, order)).collect()
}

/// Compares two series coefficientwise up to the smaller order, optionally
/// after reducing both modulo `modulus`.
pub fn check_identity(
    description: impl Into<String>,
    lhs: &Series,
    rhs: &Series,
    modulus: Option<u64>,
) -> Result<VerificationReport> {
    let (lhs, rhs) = match modulus {
        Some(m) => (lhs.reduce_mod(m)?, rhs.reduce_mod(m)?),
        None => (lhs.clone(), rhs.clone()),
    };
    let order = lhs.order().min(rhs.order());
    let counterexamples = match lhs.first_difference(&rhs)? {
        None => Vec::new(),
        Some(n) => vec![Counterexample {
            i: 0,
            n: n as u64,
            observed: lhs.coefficient(n)?.to_string(),
            expected: rhs.coefficient(n)?.to_string(),
        }],
    };
    Ok(VerificationReport {
        description: description.into(),
        i_range: None,
        n_range: Some((0, order as u64)),
        order,
        modulus,
        status: Status::Pass,
        vacuous: false,
        counterexamples,
        components: Vec::new(),
    }
    .finish())
}

/// The catalog of series identities that can be checked by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// `f(q, q^3) = f_2^2 / f_1`
    Psi,
    /// `f(-q, -q^3) = f_1 f_4 / f_2`
    PsiNeg,
    /// `f(q, q) = f_2^5 / (f_1^2 f_4^2)`
    Phi,
    /// `ψ(q) = f(q^3, q^6) + q ψ(q^9)`
    PsiDissection,
    /// `ψ(-q) = f(-q^3, q^6) - q ψ(-q^9)`
    PsiNegDissection,
    /// `f(-q, q^2) χ(q) = φ(q^3)`
    ThetaNegQ,
    /// 3-dissection of `f_2 / (f_1 f_4)`
    Toh,
    /// `Σ p(5n+4) q^n = 5 f_5^5 / f_1^6`
    Ramanujan,
    /// `Σ a_2(3n+2) q^n = 3 f_3^3 f_6^3 / (f_1^4 f_2^4)`
    Chan,
    /// mod-3 reduction of the `c = 3i+2` generating function
    Overcubic3i2Mod3 { i: u64 },
    /// `ā_{3i+2}(3n+2) ≡ 0 (mod 3)`
    Overcubic3i2Vanish { i: u64 },
    /// mod-3 reduction of the `c = 9i+5` generating function and its
    /// theta-function rewriting
    Overcubic9i5Mod3 { i: u64 },
    /// the `q^{3n}` part of the `c = 9i+5` series, mod 3
    Overcubic9i5Trisection { i: u64 },
    /// `ā_{9i+5}(9n+3) ≡ 0 (mod 3)`
    Overcubic9i5Vanish { i: u64 },
    /// mod-3 reduction of the `c = 9i+8` generating function
    Overcubic9i8Mod3 { i: u64 },
    /// `ā_{9i+8}(9n+3) ≡ 0 (mod 3)`
    Overcubic9i8Vanish { i: u64 },
}

impl Identity {
    pub const NAMES: [&'static str; 16] = [
        "psi",
        "psi-neg",
        "phi",
        "psi-dissection",
        "psi-neg-dissection",
        "theta-neg-q",
        "toh",
        "ramanujan",
        "chan",
        "overcubic-3i2-mod3",
        "overcubic-3i2-vanish",
        "overcubic-9i5-mod3",
        "overcubic-9i5-trisection",
        "overcubic-9i5-vanish",
        "overcubic-9i8-mod3",
        "overcubic-9i8-vanish",
    ];

    /// Looks up an identity by name; parametrized identities take `i`.
    pub fn from_name(name: &str, i: u64) -> Result<Identity> {
        Ok(match name {
            "psi" => Identity::Psi,
            "psi-neg" => Identity::PsiNeg,
            "phi" => Identity::Phi,
            "psi-dissection" => Identity::PsiDissection,
            "psi-neg-dissection" => Identity::PsiNegDissection,
            "theta-neg-q" => Identity::ThetaNegQ,
            "toh" => Identity::Toh,
            "ramanujan" => Identity::Ramanujan,
            "chan" => Identity::Chan,
            "overcubic-3i2-mod3" => Identity::Overcubic3i2Mod3 { i },
            "overcubic-3i2-vanish" => Identity::Overcubic3i2Vanish { i },
            "overcubic-9i5-mod3" => Identity::Overcubic9i5Mod3 { i },
            "overcubic-9i5-trisection" => Identity::Overcubic9i5Trisection { i },
            "overcubic-9i5-vanish" => Identity::Overcubic9i5Vanish { i },
            "overcubic-9i8-mod3" => Identity::Overcubic9i8Mod3 { i },
            "overcubic-9i8-vanish" => Identity::Overcubic9i8Vanish { i },
            other => return Err(VerifyError::UnknownIdentity(other.to_string())),
        })
    }

    /// Every identity, parametrized ones at `i`.
    pub fn all(i: u64) -> Vec<Identity> {
        Self::NAMES
            .iter()
            .map(|n| Self::from_name(n, i).expect("catalog names resolve"))
            .collect()
    }

    /// Runs the identity at truncation `order`. Some identities consist of
    /// more than one equality and yield one report each.
    pub fn check(&self, order: usize) -> Result<Vec<VerificationReport>> {
        let eta = |e: &EtaQuotient, m: Option<u64>| expand_eta_quotient(e, order, m);
        let q = |e: &[(u32, i64)]| EtaQuotient::new(e.iter().copied()).expect("valid factors");
        let theta = |a: Sign, ae, b: Sign, be, n: usize| -> Result<Series> {
            Ok(theta_sum(&ThetaSpec::new(a, ae, b, be)?, n, None)?)
        };
        use Sign::{Minus, Plus};
        Ok(match *self {
            Identity::Psi => vec![check_identity(
                "f(q,q^3) = f2^2/f1",
                &theta(Plus, 1, Plus, 3, order)?,
                &eta(&eta_theta::psi_quotient(), None)?,
                None,
            )?],
            Identity::PsiNeg => vec![
                check_identity(
                    "f(-q,-q^3) = f1*f4/f2",
                    &theta(Minus, 1, Minus, 3, order)?,
                    &eta(&eta_theta::psi_neg_quotient(), None)?,
                    None,
                )?,
                check_identity(
                    "psi(q) at -q = f1*f4/f2",
                    &eta_theta::psi(order).negate_variable(),
                    &eta(&eta_theta::psi_neg_quotient(), None)?,
                    None,
                )?,
            ],
            Identity::Phi => vec![check_identity(
                "f(q,q) = f2^5/(f1^2*f4^2)",
                &theta(Plus, 1, Plus, 1, order)?,
                &eta(&eta_theta::phi_quotient(), None)?,
                None,
            )?],
            Identity::PsiDissection => {
                let rhs = theta(Plus, 3, Plus, 6, order)?
                    .add(&eta_theta::psi(order / 9).substitute_power(9)?.shift(1)?)?;
                vec![check_identity("psi(q) = f(q^3,q^6) + q*psi(q^9)", &eta_theta::psi(order), &rhs, None)?]
            }
            Identity::PsiNegDissection => {
                let rhs = theta(Minus, 3, Plus, 6, order)?
                    .sub(&eta_theta::psi_neg(order / 9).substitute_power(9)?.shift(1)?)?;
                vec![check_identity(
                    "psi(-q) = f(-q^3,q^6) - q*psi(-q^9)",
                    &eta_theta::psi_neg(order),
                    &rhs,
                    None,
                )?]
            }
            Identity::ThetaNegQ => {
                let lhs = theta(Minus, 1, Plus, 2, order)?.mul(&eta_theta::chi(order))?;
                let rhs = eta_theta::phi(order / 3).substitute_power(3)?;
                vec![check_identity("f(-q,q^2)*chi(q) = phi(q^3)", &lhs, &rhs, None)?]
            }
            Identity::Toh => vec![check_identity(
                "f2/(f1*f4) = f18^9/(f3^2*f9^3*f12^2*f36^3) + q*f6^2*f18^3/(f3^3*f12^3) + q^2*f6^4*f9^3*f36^3/(f3^4*f12^4*f18^3)",
                &eta(&q(&[(2, 1), (1, -1), (4, -1)]), None)?,
                &eta_theta::toh_rhs(order, None)?,
                None,
            )?],
            Identity::Ramanujan => {
                let p = expand_eta_quotient(&q(&[(1, -1)]), 5 * order + 4, None)?;
                let lhs = p.extract_progression(5, 4)?;
                let rhs = eta(&q(&[(5, 5), (1, -6)]), None)?.scale(5);
                vec![check_identity("sum p(5n+4) q^n = 5*f5^5/f1^6", &lhs, &rhs, None)?]
            }
            Identity::Chan => {
                let a2 = eta_theta::gen_cubic_gf(2, 3 * order + 2)?;
                let lhs = a2.extract_progression(3, 2)?;
                let rhs = eta(&q(&[(3, 3), (6, 3), (1, -4), (2, -4)]), None)?.scale(3);
                vec![check_identity("sum a_2(3n+2) q^n = 3*f3^3*f6^3/(f1^4*f2^4)", &lhs, &rhs, None)?]
            }
            Identity::Overcubic3i2Mod3 { i } => {
                let c = (3 * i + 2) as u32;
                let i = i as i64;
                let rhs = q(&[(12, i + 1), (6, -(2 * i + 1))]).times(&q(&[(2, 1), (1, -1), (4, -1)]).powi(2));
                vec![check_identity(
                    format!("abar_{c} GF = f12^{}/f6^{} * (f2/(f1*f4))^2 mod 3", i + 1, 2 * i + 1),
                    &gen_overcubic_gf(c, order, Some(3))?,
                    &eta(&rhs, Some(3))?,
                    Some(3),
                )?]
            }
            Identity::Overcubic3i2Vanish { i } => {
                let c = (3 * i + 2) as u32;
                let lhs = gen_overcubic_gf(c, order, Some(3))?.extract_progression(3, 2)?;
                let zero = Series::zero(lhs.order(), Some(3))?;
                vec![check_identity(format!("abar_{c}(3n+2) = 0 mod 3"), &lhs, &zero, Some(3))?]
            }
            Identity::Overcubic9i5Mod3 { i } => {
                let c = (9 * i + 5) as u32;
                let i = i as i64;
                let front = q(&[(12, 3 * i + 1), (6, -(6 * i + 2)), (3, -1)]);
                let lhs = gen_overcubic_gf(c, order, Some(3))?;
                let eta_form = eta(&front.times(&eta_theta::psi_neg_quotient()), Some(3))?;
                let dissected = theta(Minus, 3, Plus, 6, order)?
                    .sub(&eta_theta::psi_neg(order / 9).substitute_power(9)?.shift(1)?)?
                    .reduce_mod(3)?
                    .mul(&eta(&front, Some(3))?)?;
                vec![
                    check_identity(
                        format!("abar_{c} GF = f12^{}/(f6^{}*f3) * f1*f4/f2 mod 3", 3 * i + 1, 6 * i + 2),
                        &lhs,
                        &eta_form,
                        Some(3),
                    )?,
                    check_identity(
                        format!("abar_{c} GF = f12^{}/(f6^{}*f3) * (f(-q^3,q^6) - q*psi(-q^9)) mod 3", 3 * i + 1, 6 * i + 2),
                        &lhs,
                        &dissected,
                        Some(3),
                    )?,
                ]
            }
            Identity::Overcubic9i5Trisection { i } => {
                let c = (9 * i + 5) as u32;
                let lhs = gen_overcubic_gf(c, order, Some(3))?.extract_progression(3, 0)?;
                trisection_reports(c, i as i64, &lhs)?
            }
            Identity::Overcubic9i5Vanish { i } => vanish_9n3(((9 * i) + 5) as u32, order, Some(i as i64))?,
            Identity::Overcubic9i8Mod3 { i } => {
                let c = (9 * i + 8) as u32;
                let i = i as i64;
                let rhs = q(&[(12, 3 * i + 2), (6, -(6 * i + 4)), (3, -1)]).times(&eta_theta::psi_neg_quotient());
                vec![check_identity(
                    format!("abar_{c} GF = f12^{}/(f6^{}*f3) * f1*f4/f2 mod 3", 3 * i + 2, 6 * i + 4),
                    &gen_overcubic_gf(c, order, Some(3))?,
                    &eta(&rhs, Some(3))?,
                    Some(3),
                )?]
            }
            Identity::Overcubic9i8Vanish { i } => vanish_9n3(((9 * i) + 8) as u32, order, None)?,
        })
    }
}

/// The chain of mod-3 rewritings of `Σ ā_{9i+5}(3n) q^n`.
fn trisection_reports(c: u32, i: i64, lhs: &Series) -> Result<Vec<VerificationReport>> {
    let n = lhs.order();
    let q = |e: &[(u32, i64)]| EtaQuotient::new(e.iter().copied()).expect("valid factors");
    let theta_neg = theta_sum(&ThetaSpec::new(Sign::Minus, 1, Sign::Plus, 2)?, n, None)?.reduce_mod(3)?;
    let front = expand_eta_quotient(&q(&[(4, 3 * i + 1), (2, -(6 * i + 2)), (1, -1)]), n, Some(3))?;
    let step1 = front.mul(&theta_neg)?;
    let phi3 = eta_theta::phi(n / 3).substitute_power(3)?.truncate(n).reduce_mod(3)?;
    let front2 = expand_eta_quotient(&q(&[(12, i), (6, -(2 * i + 1))]), n, Some(3))?;
    let step2 = front2.mul(&phi3)?.mul(&eta_theta::psi(n / 2).substitute_power(2)?.truncate(n).reduce_mod(3)?)?;
    let psi2 = theta_sum(&ThetaSpec::plus(6, 12)?, n, None)?
        .add(&eta_theta::psi(n / 18).substitute_power(18)?.shift(2)?)?
        .truncate(n)
        .reduce_mod(3)?;
    let step3 = front2.mul(&phi3)?.mul(&psi2)?;
    Ok(vec![
        check_identity(format!("sum abar_{c}(3n) q^n = f4^{}/(f2^{}*f1) * f(-q,q^2) mod 3", 3 * i + 1, 6 * i + 2), lhs, &step1, Some(3))?,
        check_identity(format!("sum abar_{c}(3n) q^n = f12^{i}/f6^{} * phi(q^3) * psi(q^2) mod 3", 2 * i + 1), lhs, &step2, Some(3))?,
        check_identity(
            format!("sum abar_{c}(3n) q^n = f12^{i}/f6^{} * phi(q^3) * (f(q^6,q^12) + q^2*psi(q^18)) mod 3", 2 * i + 1),
            lhs,
            &step3,
            Some(3),
        )?,
        check_identity(
            format!("q^(3n+1) part of f12^{i}/f6^{} * phi(q^3) * psi(q^2) = 0 mod 3", 2 * i + 1),
            &step2.extract_progression(3, 1)?,
            &Series::zero(n.saturating_sub(1) / 3, Some(3))?,
            Some(3),
        )?,
    ])
}

/// `Σ ā_c(9n+3) q^n ≡ 0 (mod 3)`, read off as the `(3,1)` part of the
/// `(3,0)` part. With `i` given, the same vanishing is also checked on the
/// rewritten right-hand side.
fn vanish_9n3(c: u32, order: usize, i: Option<i64>) -> Result<Vec<VerificationReport>> {
    let tri = gen_overcubic_gf(c, order, Some(3))?.extract_progression(3, 0)?;
    let lhs = tri.extract_progression(3, 1)?;
    let mut out = vec![check_identity(
        format!("abar_{c}(9n+3) = 0 mod 3"),
        &lhs,
        &Series::zero(lhs.order(), Some(3))?,
        Some(3),
    )?];
    if let Some(i) = i {
        out.extend(trisection_reports(c, i, &tri)?.into_iter().skip(3));
    }
    Ok(out)
}
