//! Spherical highest weights for the gl pair.
//!
//! Weights are given in a* coordinates `(λ^δ_1..q; λ^ε_1..s)`. The spherical
//! cone is `−λ^δ_1 ≥ … ≥ −λ^δ_q ≥ λ^ε_1 ≥ … ≥ λ^ε_s ≥ 0` with every
//! coefficient even.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{int, Rational};
use crate::cfunction::{high_enough, km_nonvanishing, lambda_alpha};
use crate::chains::{apply_chain, compatible_chain, reversal_chain};
use crate::error::Result;
use crate::pair::PairParams;
use crate::roots::{positive_closed_form, restrict_weight, AStarWeight, HWeight, RestrictedRootDatum};

fn is_natural(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}

fn is_even_integer(x: &Rational) -> bool {
    x.is_integer() && (x.to_integer() % BigInt::from(2)).is_zero()
}

/// `λ_α ∈ ℕ` for every even positive restricted root.
pub fn cond_even_lambda_alpha(sigma_plus: &[RestrictedRootDatum], lam: &AStarWeight) -> bool {
    sigma_plus
        .iter()
        .filter(|d| d.even_dim > 0 && !d.isotropic)
        .all(|d| lambda_alpha(lam, &d.root).is_ok_and(|t| is_natural(&t)))
}

/// `⟨λ,α⟩ ∈ 2ℕ` for every positive restricted root, isotropic ones included.
pub fn cond_gl_pairing(sigma_plus: &[RestrictedRootDatum], lam: &AStarWeight) -> bool {
    sigma_plus.iter().all(|d| {
        let x = lam.pairing(&d.root);
        is_natural(&x) && is_even_integer(&x)
    })
}

/// The cone inequalities together with evenness of every coefficient.
pub fn gl_dominance_check(params: &PairParams, lam: &AStarWeight) -> bool {
    if lam.ldelta.len() != params.q || lam.leps.len() != params.s {
        return false;
    }
    let chain: Vec<Rational> = lam.ldelta.iter().map(|x| -x).chain(lam.leps.iter().cloned()).collect();
    chain.iter().all(is_even_integer) && chain.windows(2).all(|w| w[0] >= w[1]) && chain.last().is_none_or(|x| !x.is_negative())
}

fn non_increasing_even(len: usize, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    let cap = prefix.last().copied().unwrap_or(max);
    for x in (0..=cap).step_by(2) {
        prefix.push(x);
        non_increasing_even(len, max, prefix, out);
        prefix.pop();
    }
}

/// Every weight in the cone with coefficients bounded by `bound` in absolute
/// value, sorted lexicographically by `(−λ^δ, λ^ε)`.
pub fn enumerate_spherical(params: &PairParams, bound: u32) -> Vec<AStarWeight> {
    let (q, s) = (params.q, params.s);
    let max = (bound as i64) - (bound as i64) % 2;
    let mut seqs = Vec::new();
    non_increasing_even(q + s, max, &mut Vec::with_capacity(q + s), &mut seqs);
    seqs.sort();
    seqs.into_iter()
        .map(|x| AStarWeight::new(x[..q].iter().map(|a| int(-a)).collect(), x[q..].iter().map(|&b| int(b)).collect()))
        .collect()
}

/// An odd root of gl(p+q|r+s) vanishing on a, if one exists: `δ_{q+1} − ε_{s+1}`
/// (the `c^B_1 − c^F_1` direction) when `p > q` and `r > s`.
pub fn atypical_flag(params: &PairParams, _lam: &AStarWeight) -> Option<HWeight> {
    let (nd, ne) = (params.m(), params.n());
    for i in 1..=nd {
        for j in 1..=ne {
            let root = HWeight::delta_unit(nd, ne, i).sub(&HWeight::eps_unit(nd, ne, j));
            if restrict_weight(&root, params).is_zero() {
                return Some(root);
            }
        }
    }
    None
}

/// Embeds `λ`, applies the reversal of the compatible chain and tests
/// `R(λ) = −λ`.
pub fn self_dual_check(params: &PairParams, lam: &AStarWeight) -> Result<bool> {
    let w = lam.embed(params);
    let chain = compatible_chain(params);
    if chain.len() < 2 {
        return Ok(w.is_zero());
    }
    Ok(apply_chain(&w, &reversal_chain(&chain))? == w.neg())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericityReport {
    pub params: PairParams,
    pub lam: AStarWeight,
    pub gl_dominant: bool,
    pub cond_even_lambda_alpha: bool,
    pub cond_gl_pairing: bool,
    pub high_enough: bool,
    pub c_nonzero_at_shift: bool,
    pub self_dual: bool,
    pub atypical: bool,
    pub atypical_witness: Option<HWeight>,
    pub notes: Vec<String>,
}

pub fn classify(params: &PairParams, lam: &AStarWeight) -> Result<SphericityReport> {
    let sigma_plus = positive_closed_form(params);
    classify_with(params, &sigma_plus, lam)
}

/// [`classify`] against precomputed positive roots.
pub fn classify_with(params: &PairParams, sigma_plus: &[RestrictedRootDatum], lam: &AStarWeight) -> Result<SphericityReport> {
    let mut notes = Vec::new();
    for d in sigma_plus {
        if d.indivisible && !d.isotropic && d.odd_dim > 0 && d.norm_sqr().is_negative() {
            notes.push(format!("λ_α taken with the signed form at the negative-norm odd root {}", d.name()));
        }
    }
    let atypical_witness = atypical_flag(params, lam);
    Ok(SphericityReport {
        params: *params,
        lam: lam.clone(),
        gl_dominant: gl_dominance_check(params, lam),
        cond_even_lambda_alpha: cond_even_lambda_alpha(sigma_plus, lam),
        cond_gl_pairing: cond_gl_pairing(sigma_plus, lam),
        high_enough: high_enough(sigma_plus, lam),
        c_nonzero_at_shift: km_nonvanishing(sigma_plus, lam),
        self_dual: self_dual_check(params, lam)?,
        atypical: atypical_witness.is_some(),
        atypical_witness,
        notes,
    })
}
