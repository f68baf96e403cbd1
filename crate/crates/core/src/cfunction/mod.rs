//! The c-function as a product over indivisible positive restricted roots:
//! a Γ-ratio per anisotropic root and the monomial `⟨λ,α⟩^q` per isotropic
//! root (`m_α = −2q`), with the constant normalized to 1.
//!
//! Zeros and poles are decided exactly on rational `λ`; the floating-point
//! value is for display.

pub mod gamma;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{fmt_rational, int, rat, Rational};
use crate::error::{Error, Result};
use crate::roots::{AStarWeight, RestrictedRootDatum};

pub use gamma::{gamma_complex, recip_gamma, sin_pi};

/// `λ_α = ⟨λ,α⟩ / ⟨α,α⟩` under the signature form.
pub fn lambda_alpha(lam: &AStarWeight, alpha: &AStarWeight) -> Result<Rational> {
    let aa = alpha.norm_sqr();
    if aa.is_zero() {
        return Err(Error::IsotropicRoot(alpha.root_name()));
    }
    Ok(lam.pairing(alpha) / aa)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CFactor {
    Anisotropic {
        alpha: AStarWeight,
        m: i64,
        m_double: i64,
    },
    /// `qexp = −m_α / 2`.
    Isotropic {
        alpha: AStarWeight,
        qexp: u32,
    },
}

impl CFactor {
    pub fn from_datum(d: &RestrictedRootDatum) -> Result<Self> {
        if !d.indivisible {
            return Err(Error::DivisibleRoot(d.name()));
        }
        if d.isotropic {
            if d.m >= 0 || d.m % 2 != 0 {
                return Err(Error::BadIsotropicMultiplicity(d.name(), d.m));
            }
            Ok(CFactor::Isotropic {
                alpha: d.root.clone(),
                qexp: (-d.m / 2) as u32,
            })
        } else {
            Ok(CFactor::Anisotropic {
                alpha: d.root.clone(),
                m: d.m,
                m_double: d.m_double,
            })
        }
    }

    pub fn alpha(&self) -> &AStarWeight {
        match self {
            CFactor::Anisotropic { alpha, .. } | CFactor::Isotropic { alpha, .. } => alpha,
        }
    }

    pub fn is_isotropic(&self) -> bool {
        matches!(self, CFactor::Isotropic { .. })
    }
}

impl fmt::Display for CFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CFactor::Anisotropic { alpha, m, m_double } => {
                write!(f, "{} (anisotropic, m={m}, m2={m_double})", alpha.root_name())
            }
            CFactor::Isotropic { alpha, qexp } => write!(f, "{} (isotropic, q={qexp})", alpha.root_name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorStatus {
    Regular,
    Zero(u32),
    Pole(u32),
    /// A Γ-pole cancelled by a zero of equal order; the value is the limit.
    Indeterminate,
}

impl FactorStatus {
    /// Zero order minus pole order.
    pub fn net_order(&self) -> i64 {
        match *self {
            FactorStatus::Zero(k) => k as i64,
            FactorStatus::Pole(k) => -(k as i64),
            _ => 0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FactorStatus::Regular => "regular",
            FactorStatus::Zero(_) => "zero",
            FactorStatus::Pole(_) => "pole",
            FactorStatus::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FactorEvaluation {
    pub factor: CFactor,
    /// `λ_α` for anisotropic factors, `⟨λ,α⟩` for isotropic ones.
    pub argument: Rational,
    pub status: FactorStatus,
    /// `None` at poles.
    pub value: Option<Complex64>,
}

#[derive(Clone, Debug)]
pub struct CValue {
    /// `None` at poles and where zero and pole orders tie across factors.
    pub value: Option<Complex64>,
    pub zero_flag: bool,
    pub pole_flag: bool,
    pub zero_order: u32,
    pub pole_order: u32,
    pub notes: Vec<String>,
    pub per_factor: Vec<FactorEvaluation>,
}

/// The indivisible positive roots, which index the product.
pub fn indivisible_positive(sigma_plus: &[RestrictedRootDatum]) -> Vec<RestrictedRootDatum> {
    sigma_plus.iter().filter(|d| d.indivisible).cloned().collect()
}

fn nonpositive_integer(x: &Rational) -> Option<u64> {
    if x.is_integer() && !x.is_positive() {
        (-x.to_integer()).to_u64()
    } else {
        None
    }
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn evaluate_anisotropic(t: &Rational, m: i64, m_double: i64) -> (FactorStatus, Option<Complex64>) {
    let half_m = rat(m, 2);
    let a = (&half_m + int(1) + t) / int(2);
    let b = (&half_m + int(m_double) + t) / int(2);
    let num_pole = nonpositive_integer(t);
    let zero_a = nonpositive_integer(&a);
    let zero_b = nonpositive_integer(&b);
    let zeros = zero_a.is_some() as u32 + zero_b.is_some() as u32;
    let poles = num_pole.is_some() as u32;
    let tf = to_f64(t);
    let ca = Complex64::new(to_f64(&a), 0.0);
    let cb = Complex64::new(to_f64(&b), 0.0);
    let two_pow = 2f64.powf(-tf);
    match (zeros, poles) {
        (_, 0) => {
            let g = gamma_complex(Complex64::new(tf, 0.0)).expect("t is not a pole");
            let v = two_pow * g * recip_gamma(ca) * recip_gamma(cb);
            let status = if zeros == 0 {
                FactorStatus::Regular
            } else {
                FactorStatus::Zero(zeros)
            };
            (status, Some(v))
        }
        (0, _) => (FactorStatus::Pole(1), None),
        (1, _) => {
            // Γ(t) ~ (−1)^n / (n! (t + n)); 1/Γ(X) ~ (−1)^k k! (X + k) with dX/dt = ½.
            let n = num_pole.unwrap();
            let (k, other) = match zero_a {
                Some(k) => (k, cb),
                None => (zero_b.unwrap(), ca),
            };
            let sign = if (n + k).is_multiple_of(2) { 1.0 } else { -1.0 };
            let limit = two_pow * sign * factorial(k) / (2.0 * factorial(n)) * recip_gamma(other);
            (FactorStatus::Indeterminate, Some(limit))
        }
        _ => (FactorStatus::Zero(zeros - poles), Some(Complex64::new(0.0, 0.0))),
    }
}

fn evaluate_factor(factor: &CFactor, lam: &AStarWeight) -> FactorEvaluation {
    evaluate_factor_with_norm(factor, &factor.alpha().norm_sqr(), lam)
}

fn evaluate_factor_with_norm(factor: &CFactor, norm: &Rational, lam: &AStarWeight) -> FactorEvaluation {
    match factor {
        CFactor::Anisotropic { alpha, m, m_double } => {
            let t = lam.pairing(alpha) / norm;
            let (status, value) = evaluate_anisotropic(&t, *m, *m_double);
            FactorEvaluation {
                factor: factor.clone(),
                argument: t,
                status,
                value,
            }
        }
        CFactor::Isotropic { alpha, qexp } => {
            let x = lam.pairing(alpha);
            let status = if x.is_zero() && *qexp > 0 {
                FactorStatus::Zero(*qexp)
            } else {
                FactorStatus::Regular
            };
            let value = Complex64::new(to_f64(&x).powi(*qexp as i32), 0.0);
            FactorEvaluation {
                factor: factor.clone(),
                argument: x,
                status,
                value: Some(value),
            }
        }
    }
}

/// Evaluates each factor over `index`, which must contain only indivisible roots.
pub fn c_factorize(index: &[RestrictedRootDatum], lam: &AStarWeight) -> Result<Vec<FactorEvaluation>> {
    index.iter().map(|d| Ok(evaluate_factor(&CFactor::from_datum(d)?, lam))).collect()
}

/// The factors of `c` over a fixed positive system, built once and evaluated
/// at many points.
#[derive(Clone, Debug)]
pub struct CFunction {
    factors: Vec<CFactor>,
    norms: Vec<Rational>,
    notes: Vec<String>,
}

impl CFunction {
    pub fn new(sigma_plus: &[RestrictedRootDatum]) -> Self {
        let mut factors = Vec::new();
        let mut notes = Vec::new();
        for d in sigma_plus.iter().filter(|d| d.indivisible) {
            match CFactor::from_datum(d) {
                Ok(f) => {
                    if let CFactor::Isotropic { qexp, .. } = f {
                        if qexp > 1 {
                            notes.push(format!("isotropic root {} has m = {} < -2", d.name(), d.m));
                        }
                    }
                    factors.push(f);
                }
                Err(e) => notes.push(format!("skipped {}: {e}", d.name())),
            }
        }
        let norms = factors.iter().map(|f| f.alpha().norm_sqr()).collect();
        Self { factors, norms, notes }
    }

    pub fn factors(&self) -> &[CFactor] {
        &self.factors
    }

    pub fn evaluate(&self, lam: &AStarWeight) -> CValue {
        let mut notes = self.notes.clone();
        let per_factor: Vec<FactorEvaluation> = self
            .factors
            .iter()
            .zip(&self.norms)
            .map(|(f, n)| evaluate_factor_with_norm(f, n, lam))
            .collect();
        let mut zero_order = 0u32;
        let mut pole_order = 0u32;
        let mut product = Complex64::new(1.0, 0.0);
        let mut any_pole = false;
        for fe in &per_factor {
            match fe.status {
                FactorStatus::Zero(k) => zero_order += k,
                FactorStatus::Pole(k) => pole_order += k,
                FactorStatus::Indeterminate => notes.push(format!(
                    "{}: Γ-pole cancelled at λ_α = {}, limit used",
                    fe.factor.alpha().root_name(),
                    fmt_rational(&fe.argument)
                )),
                FactorStatus::Regular => {}
            }
            match fe.value {
                Some(v) => product *= v,
                None => any_pole = true,
            }
        }
        let zero_flag = zero_order > pole_order;
        let pole_flag = pole_order > zero_order;
        if zero_order > 0 && zero_order == pole_order {
            notes.push(format!("zero and pole orders tie at {zero_order}; value undefined"));
        }
        let value = if !any_pole {
            Some(product)
        } else if zero_flag {
            Some(Complex64::new(0.0, 0.0))
        } else {
            None
        };
        CValue {
            value,
            zero_flag,
            pole_flag,
            zero_order,
            pole_order,
            notes,
            per_factor,
        }
    }
}

/// `c(λ)` with exact zero and pole flags.
pub fn c_evaluate(sigma_plus: &[RestrictedRootDatum], lam: &AStarWeight) -> CValue {
    CFunction::new(sigma_plus).evaluate(lam)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroClause {
    /// Isotropic with `⟨λ,α⟩ = 0`.
    IsotropicOrthogonal,
    /// `λ_α + m_α + 2m_{2α} ∈ {0, −2, −4, …}`.
    EvenNonPositive,
    /// `λ_α + m_α + m_{2α} ∈ {−1, −3, −5, …}`.
    OddNegative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroWitness {
    pub root: AStarWeight,
    pub clause: ZeroClause,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroVerdict {
    pub zero: bool,
    pub witnesses: Vec<ZeroWitness>,
}

fn in_minus_two_n(x: &Rational) -> bool {
    x.is_integer() && !x.is_positive() && (x.to_integer() % BigInt::from(2)).is_zero()
}

fn odd_negative(x: &Rational) -> bool {
    x.is_integer() && x.is_negative() && !(x.to_integer() % BigInt::from(2)).is_zero()
}

/// The three zero clauses, evaluated on the unshifted `λ` over the
/// indivisible positive roots.
pub fn zeros_predicate(sigma_plus: &[RestrictedRootDatum], lam: &AStarWeight) -> ZeroVerdict {
    let mut witnesses = Vec::new();
    for d in sigma_plus.iter().filter(|d| d.indivisible) {
        if d.isotropic {
            let x = lam.pairing(&d.root);
            if x.is_zero() {
                witnesses.push(ZeroWitness {
                    root: d.root.clone(),
                    clause: ZeroClause::IsotropicOrthogonal,
                    value: x,
                });
            }
            continue;
        }
        let t = lambda_alpha(lam, &d.root).expect("anisotropic");
        let even = &t + int(d.m) + int(2 * d.m_double);
        if in_minus_two_n(&even) {
            witnesses.push(ZeroWitness {
                root: d.root.clone(),
                clause: ZeroClause::EvenNonPositive,
                value: even,
            });
        }
        let odd = &t + int(d.m) + int(d.m_double);
        if odd_negative(&odd) {
            witnesses.push(ZeroWitness {
                root: d.root.clone(),
                clause: ZeroClause::OddNegative,
                value: odd,
            });
        }
    }
    ZeroVerdict {
        zero: !witnesses.is_empty(),
        witnesses,
    }
}

fn odd_anisotropic(d: &RestrictedRootDatum) -> bool {
    d.indivisible && !d.isotropic && d.odd_dim > 0
}

/// Strict positivity of `⟨λ,β⟩` on isotropic positive roots and of
/// `λ_α + m_α + 2m_{2α}`, `λ_α + m_α + m_{2α} + 1` on odd anisotropic
/// indivisible positive roots.
pub fn high_enough(sigma_plus: &[RestrictedRootDatum], lam: &AStarWeight) -> bool {
    sigma_plus.iter().all(|d| {
        if d.isotropic {
            lam.pairing(&d.root).is_positive()
        } else if odd_anisotropic(d) {
            let t = lambda_alpha(lam, &d.root).expect("anisotropic");
            (&t + int(d.m) + int(2 * d.m_double)).is_positive() && (&t + int(d.m) + int(d.m_double) + int(1)).is_positive()
        } else {
            true
        }
    })
}

/// `⟨λ,β⟩ ≠ 0` on isotropic positive roots, and neither
/// `λ_α + m_α + 2m_{2α}` nor `λ_α + m_α + m_{2α} + 1` in `−2ℕ` on odd
/// anisotropic indivisible positive roots.
pub fn km_nonvanishing(sigma_plus: &[RestrictedRootDatum], lam: &AStarWeight) -> bool {
    sigma_plus.iter().all(|d| {
        if d.isotropic {
            !lam.pairing(&d.root).is_zero()
        } else if odd_anisotropic(d) {
            let t = lambda_alpha(lam, &d.root).expect("anisotropic");
            !in_minus_two_n(&(&t + int(d.m) + int(2 * d.m_double))) && !in_minus_two_n(&(&t + int(d.m) + int(d.m_double) + int(1)))
        } else {
            true
        }
    })
}

/// `(t − 1)(t − 2)⋯(t − q)`: the zero structure obtained by formally
/// continuing the anisotropic Γ-ratio to `m = −2q`.
pub fn naive_duplication_polynomial(qexp: u32, t: &Rational) -> Result<Rational> {
    if qexp == 0 {
        return Err(Error::InvalidParams("qexp must be at least 1".into()));
    }
    Ok((1..=qexp as i64).fold(Rational::one(), |acc, k| acc * (t - int(k))))
}

/// Zero multiset `{0^q}` of the isotropic factor `t^q`.
pub fn isotropic_factor_zeros(qexp: u32) -> Vec<(Rational, u32)> {
    vec![(Rational::zero(), qexp)]
}

/// Zero multiset `{1, …, q}` of [`naive_duplication_polynomial`].
pub fn naive_duplication_zeros(qexp: u32) -> Vec<(Rational, u32)> {
    (1..=qexp as i64).map(|k| (int(k), 1)).collect()
}
