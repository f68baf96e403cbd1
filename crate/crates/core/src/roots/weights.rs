//! Functionals on `h` (δ/ε coordinates) and on `a` (Helgason coordinates).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{fmt_rational, int, rat, GaussianRational as G, Rational};
use crate::error::{Error, Result};
use crate::pair::{HSlot, PairParams};

/// `Σ delta_i δ_i + Σ eps_j ε_j` with `⟨δ_i,δ_j⟩ = δ_ij`, `⟨ε_i,ε_j⟩ = −δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HWeight {
    pub delta: Vec<Rational>,
    pub eps: Vec<Rational>,
}

impl HWeight {
    pub fn zero(n_delta: usize, n_eps: usize) -> Self {
        Self {
            delta: vec![Rational::zero(); n_delta],
            eps: vec![Rational::zero(); n_eps],
        }
    }

    pub fn zero_for(params: &PairParams) -> Self {
        Self::zero(params.m(), params.n())
    }

    /// `δ_i` (1-based).
    pub fn delta_unit(n_delta: usize, n_eps: usize, i: usize) -> Self {
        let mut w = Self::zero(n_delta, n_eps);
        w.delta[i - 1] = Rational::one();
        w
    }

    /// `ε_j` (1-based).
    pub fn eps_unit(n_delta: usize, n_eps: usize, j: usize) -> Self {
        let mut w = Self::zero(n_delta, n_eps);
        w.eps[j - 1] = Rational::one();
        w
    }

    pub fn from_ints(delta: &[i64], eps: &[i64]) -> Self {
        Self {
            delta: delta.iter().map(|&x| int(x)).collect(),
            eps: eps.iter().map(|&x| int(x)).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(
            (self.delta.len(), self.eps.len()),
            (other.delta.len(), other.eps.len()),
            "weight shapes differ"
        );
        Self {
            delta: self.delta.iter().zip(&other.delta).map(|(a, b)| f(a, b)).collect(),
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self {
            delta: self.delta.iter().map(|x| -x).collect(),
            eps: self.eps.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            delta: self.delta.iter().map(|x| x * c).collect(),
            eps: self.eps.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.delta.iter().chain(&self.eps).all(Zero::is_zero)
    }

    /// The signature form.
    pub fn pairing(&self, other: &Self) -> Rational {
        let d: Rational = self.delta.iter().zip(&other.delta).map(|(a, b)| a * b).sum();
        let e: Rational = self.eps.iter().zip(&other.eps).map(|(a, b)| a * b).sum();
        d - e
    }

    /// Values on the h-basis, in the global slot order.
    pub fn h_values(&self, params: &PairParams) -> Vec<G> {
        let PairParams { p, q, r, s } = *params;
        let i = G::i();
        params
            .slots()
            .into_iter()
            .map(|slot| match slot {
                HSlot::BosonB(k) => G::real(&self.delta[k - 1] + &self.delta[p + k - 1]),
                HSlot::BosonC(j) => G::real(self.delta[q + j - 1].clone()),
                HSlot::FermionB(l) => G::real(&self.eps[l - 1] + &self.eps[r + l - 1]),
                HSlot::FermionC(j) => G::real(self.eps[s + j - 1].clone()),
                HSlot::BosonA(k) => &i * &G::real(&self.delta[p + k - 1] - &self.delta[k - 1]),
                HSlot::FermionA(l) => &i * &G::real(&self.eps[r + l - 1] - &self.eps[l - 1]),
            })
            .collect()
    }

    /// Inverse of [`HWeight::h_values`]; fails when the δ/ε coordinates are not real.
    pub fn from_h_values(params: &PairParams, values: &[G]) -> Result<Self> {
        let PairParams { p, q, r, s } = *params;
        if values.len() != params.size() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for dim h = {}",
                values.len(),
                params.size()
            )));
        }
        let v = |slot| &values[params.slot_index(slot)];
        let half = G::real(rat(1, 2));
        let i = G::i();
        let mut delta = vec![G::zero(); p + q];
        let mut eps = vec![G::zero(); r + s];
        for k in 1..=q {
            let (b, a) = (v(HSlot::BosonB(k)), v(HSlot::BosonA(k)));
            delta[k - 1] = &(b + &(&i * a)) * &half;
            delta[p + k - 1] = &(b - &(&i * a)) * &half;
        }
        for j in 1..=p - q {
            delta[q + j - 1] = v(HSlot::BosonC(j)).clone();
        }
        for l in 1..=s {
            let (b, a) = (v(HSlot::FermionB(l)), v(HSlot::FermionA(l)));
            eps[l - 1] = &(b + &(&i * a)) * &half;
            eps[r + l - 1] = &(b - &(&i * a)) * &half;
        }
        for j in 1..=r - s {
            eps[s + j - 1] = v(HSlot::FermionC(j)).clone();
        }
        let real = |xs: Vec<G>| -> Result<Vec<Rational>> {
            xs.into_iter()
                .map(|x| {
                    if x.is_real() {
                        Ok(x.re)
                    } else {
                        Err(Error::InvalidWeight(format!("non-real δ/ε coordinate {x}")))
                    }
                })
                .collect()
        };
        Ok(Self {
            delta: real(delta)?,
            eps: real(eps)?,
        })
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(Rational, String)]) -> fmt::Result {
    let mut first = true;
    for (c, name) in terms {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() {
            "-"
        } else if first {
            ""
        } else {
            "+"
        };
        let mag = c.abs();
        if mag.is_one() {
            write!(f, "{sign}{name}")?;
        } else {
            write!(f, "{sign}{}*{name}", fmt_rational(&mag))?;
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for HWeight {
    /// Compact form such as `d2-d1` or `2*d1-e3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, String)> = self
            .delta
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), format!("d{}", i + 1)))
            .chain(self.eps.iter().enumerate().map(|(j, c)| (c.clone(), format!("e{}", j + 1))))
            .collect();
        write_terms(f, &terms)
    }
}

/// `λ = Σ ldelta_k (δ_k − δ_{p+k}) + Σ leps_l (ε_l − ε_{r+l}) ∈ a*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AStarWeight {
    pub ldelta: Vec<Rational>,
    pub leps: Vec<Rational>,
}

impl AStarWeight {
    pub fn zero(q: usize, s: usize) -> Self {
        Self {
            ldelta: vec![Rational::zero(); q],
            leps: vec![Rational::zero(); s],
        }
    }

    pub fn zero_for(params: &PairParams) -> Self {
        Self::zero(params.q, params.s)
    }

    pub fn new(ldelta: Vec<Rational>, leps: Vec<Rational>) -> Self {
        Self { ldelta, leps }
    }

    pub fn from_ints(ldelta: &[i64], leps: &[i64]) -> Self {
        Self {
            ldelta: ldelta.iter().map(|&x| int(x)).collect(),
            leps: leps.iter().map(|&x| int(x)).collect(),
        }
    }

    /// Parses a flat coefficient list `λ^δ_1..q, λ^ε_1..s`.
    pub fn from_flat(params: &PairParams, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != params.rank() {
            return Err(Error::InvalidWeight(format!(
                "expected q + s = {} coefficients (λ^δ_1..{} then λ^ε_1..{}), got {}",
                params.rank(),
                params.q,
                params.s,
                coeffs.len()
            )));
        }
        let mut it = coeffs.into_iter();
        let ldelta = it.by_ref().take(params.q).collect();
        let leps = it.collect();
        Ok(Self { ldelta, leps })
    }

    pub fn flat(&self) -> Vec<Rational> {
        self.ldelta.iter().chain(&self.leps).cloned().collect()
    }

    /// Coefficients on `(i a^B_1..q, i a^F_1..s)`; e.g. `2i a^B_1` ↦ `(2, 0, …)`.
    pub fn ia_coeffs(&self) -> Vec<Rational> {
        let m2 = int(-2);
        self.ldelta.iter().chain(&self.leps).map(|x| x * &m2).collect()
    }

    pub fn from_ia_coeffs(q: usize, coeffs: &[Rational]) -> Self {
        let h = rat(-1, 2);
        Self {
            ldelta: coeffs[..q].iter().map(|x| x * &h).collect(),
            leps: coeffs[q..].iter().map(|x| x * &h).collect(),
        }
    }

    /// `i a^B_k` (1-based).
    pub fn ia_boson(q: usize, s: usize, k: usize) -> Self {
        let mut w = Self::zero(q, s);
        w.ldelta[k - 1] = rat(-1, 2);
        w
    }

    /// `i a^F_l` (1-based).
    pub fn ia_fermion(q: usize, s: usize, l: usize) -> Self {
        let mut w = Self::zero(q, s);
        w.leps[l - 1] = rat(-1, 2);
        w
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(
            (self.ldelta.len(), self.leps.len()),
            (other.ldelta.len(), other.leps.len()),
            "weight shapes differ"
        );
        Self {
            ldelta: self.ldelta.iter().zip(&other.ldelta).map(|(a, b)| f(a, b)).collect(),
            leps: self.leps.iter().zip(&other.leps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self {
            ldelta: self.ldelta.iter().map(|x| -x).collect(),
            leps: self.leps.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            ldelta: self.ldelta.iter().map(|x| x * c).collect(),
            leps: self.leps.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ldelta.iter().chain(&self.leps).all(Zero::is_zero)
    }

    /// The signature form restricted to a*: `2Σ λ^δ μ^δ − 2Σ λ^ε μ^ε`.
    pub fn pairing(&self, other: &Self) -> Rational {
        let terms = self.ldelta.iter().zip(&other.ldelta).map(|t| (t, false));
        let terms = terms.chain(self.leps.iter().zip(&other.leps).map(|t| (t, true)));
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for ((a, b), negate) in terms {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let pn = a.numer() * b.numer();
            let pd = a.denom() * b.denom();
            let pn = if negate { -pn } else { pn };
            if pd == den {
                num += pn;
            } else {
                num = num * &pd + pn * &den;
                den *= pd;
            }
        }
        Rational::new(num * 2, den)
    }

    pub fn norm_sqr(&self) -> Rational {
        self.pairing(self)
    }

    /// First nonzero coefficient on `(i a^B, i a^F)` is positive.
    pub fn is_lex_positive(&self) -> bool {
        self.ia_coeffs().iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
    }

    /// `Some(c)` with `self = c · other`, `c > 0`. `other` must be nonzero.
    pub fn positive_multiple_of(&self, other: &Self) -> Option<Rational> {
        let a = self.flat();
        let b = other.flat();
        let idx = b.iter().position(|x| !x.is_zero())?;
        let c = &a[idx] / &b[idx];
        (c.is_positive() && other.scale(&c) == *self).then_some(c)
    }

    /// Embedding into h*.
    pub fn embed(&self, params: &PairParams) -> HWeight {
        let PairParams { p, r, .. } = *params;
        let mut w = HWeight::zero_for(params);
        for (k, c) in self.ldelta.iter().enumerate() {
            w.delta[k] = c.clone();
            w.delta[p + k] = -c;
        }
        for (l, c) in self.leps.iter().enumerate() {
            w.eps[l] = c.clone();
            w.eps[r + l] = -c;
        }
        w
    }

    /// Readable name in terms of `i a^B_k`, `i a^F_l`, e.g. `2ia^B_1` or `i(a^B_1-a^F_1)`.
    pub fn root_name(&self) -> String {
        let q = self.ldelta.len();
        let coeffs = self.ia_coeffs();
        let terms: Vec<(Rational, String)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                (
                    c.clone(),
                    if i < q {
                        format!("a^B_{}", i + 1)
                    } else {
                        format!("a^F_{}", i - q + 1)
                    },
                )
            })
            .collect();
        match terms.len() {
            0 => "0".into(),
            1 => {
                let (c, name) = &terms[0];
                let lead = if c.is_one() {
                    String::new()
                } else if (-c).is_one() {
                    "-".into()
                } else if c.is_integer() {
                    fmt_rational(c)
                } else {
                    format!("({})", fmt_rational(c))
                };
                format!("{lead}i{name}")
            }
            _ => {
                struct T<'a>(&'a [(Rational, String)]);
                impl fmt::Display for T<'_> {
                    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                        write_terms(f, self.0)
                    }
                }
                format!("i({})", T(&terms))
            }
        }
    }
}

impl fmt::Display for AStarWeight {
    /// `(λ^δ_1,…;λ^ε_1,…)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.ldelta.iter().map(fmt_rational).collect();
        let e: Vec<String> = self.leps.iter().map(fmt_rational).collect();
        write!(f, "({};{})", d.join(","), e.join(","))
    }
}

/// Restriction of an h*-weight to a: the c-coordinates drop out.
pub fn restrict_weight(w: &HWeight, params: &PairParams) -> AStarWeight {
    let PairParams { p, q, r, s } = *params;
    let h = rat(1, 2);
    AStarWeight {
        ldelta: (0..q).map(|k| (&w.delta[k] - &w.delta[p + k]) * &h).collect(),
        leps: (0..s).map(|l| (&w.eps[l] - &w.eps[r + l]) * &h).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: usize, q: usize, r: usize, s: usize) -> PairParams {
        PairParams::new(p, q, r, s).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let params = pp(2, 1, 1, 1);
        let c = HWeight::delta_unit(3, 2, 2);
        assert!(restrict_weight(&c, &params).is_zero());

        let w = HWeight::delta_unit(3, 2, 3).sub(&HWeight::delta_unit(3, 2, 1));
        let a = restrict_weight(&w, &params);
        assert_eq!(a, AStarWeight::ia_boson(1, 1, 1).scale(&int(2)));
        assert_eq!(a.pairing(&AStarWeight::ia_boson(1, 1, 1)), int(-1) * int(-1));

        let w = HWeight::delta_unit(3, 2, 1).sub(&HWeight::eps_unit(3, 2, 1));
        let a = restrict_weight(&w, &params);
        assert_eq!(a, AStarWeight::ia_boson(1, 1, 1).neg().add(&AStarWeight::ia_fermion(1, 1, 1)));
        assert!(a.norm_sqr().is_zero());
    }

    #[test]
    fn derived_pairings() {
        let lam = AStarWeight::from_ints(&[3], &[5]);
        assert_eq!(lam.pairing(&AStarWeight::ia_boson(1, 1, 1)), int(-3));
        assert_eq!(lam.pairing(&AStarWeight::ia_fermion(1, 1, 1)), int(5));
        // Restriction inverts the embedding, and the embedded pairing agrees.
        let params = pp(2, 1, 2, 1);
        let mu = AStarWeight::from_ints(&[-1], &[2]);
        assert_eq!(restrict_weight(&lam.embed(&params), &params), lam);
        assert_eq!(lam.embed(&params).pairing(&mu.embed(&params)), lam.pairing(&mu));
    }

    #[test]
    fn h_values_round_trip() {
        let params = pp(2, 1, 2, 1);
        let w = HWeight::from_ints(&[1, -2, 3], &[4, 0, -5]);
        let v = w.h_values(&params);
        assert_eq!(HWeight::from_h_values(&params, &v).unwrap(), w);
        // δ_1 = b^B_1 − i a^B_1
        let d1 = HWeight::delta_unit(3, 3, 1).h_values(&params);
        assert_eq!(d1[params.slot_index(HSlot::BosonB(1))], G::from(1));
        assert_eq!(d1[params.slot_index(HSlot::BosonA(1))], G::from_ints(0, -1));
    }

    #[test]
    fn names() {
        assert_eq!(AStarWeight::ia_boson(1, 1, 1).scale(&int(2)).root_name(), "2ia^B_1");
        assert_eq!(AStarWeight::ia_boson(1, 1, 1).root_name(), "ia^B_1");
        let mixed = AStarWeight::ia_boson(1, 1, 1).sub(&AStarWeight::ia_fermion(1, 1, 1));
        assert_eq!(mixed.root_name(), "i(a^B_1-a^F_1)");
        assert_eq!(HWeight::from_ints(&[1, -1], &[2]).to_string(), "d1-d2+2*e1");
    }
}
