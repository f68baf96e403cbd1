//! Restricted roots `Σ(g : a)` with signed multiplicities, positive systems,
//! simple roots, flips and Weyl vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::oracle::oracle_roots;
use super::weights::{restrict_weight, AStarWeight, HWeight};
use crate::algebra::{bracket, int, rat, GaussianRational as G, Parity, Rational, SuperMatrix};
use crate::error::{Error, Result};
use crate::pair::{PairData, PairParams};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RestrictedRootDatum {
    pub root: AStarWeight,
    pub even_dim: usize,
    pub odd_dim: usize,
    /// `even_dim − odd_dim`.
    pub m: i64,
    pub isotropic: bool,
    pub indivisible: bool,
    pub has_double: bool,
    /// `m_{2α}`, 0 when `2α ∉ Σ`.
    pub m_double: i64,
}

impl RestrictedRootDatum {
    pub fn name(&self) -> String {
        self.root.root_name()
    }

    /// The datum of `−α`; multiplicities are symmetric.
    pub fn negated(&self) -> Self {
        Self {
            root: self.root.neg(),
            ..self.clone()
        }
    }

    pub fn norm_sqr(&self) -> Rational {
        self.root.norm_sqr()
    }
}

/// Listing order: pure `a^B` roots, pure `a^F` roots, mixed roots; within a
/// class `ia_k`, then `i(a_k ∓ a_l)`, then `2ia_k`; negative roots after all
/// positive ones.
fn listing_key(root: &AStarWeight) -> (bool, u8, u8, Vec<usize>, Vec<i8>, Vec<Rational>) {
    let neg = !root.is_lex_positive();
    let r = if neg { root.neg() } else { root.clone() };
    let q = r.ldelta.len();
    let c = r.ia_coeffs();
    let support: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
    let class = match (support.iter().any(|&i| i < q), support.iter().any(|&i| i >= q)) {
        (true, false) => 0,
        (false, true) => 1,
        _ => 2,
    };
    let kind = match support.as_slice() {
        [i] if c[*i] == int(1) => 0,
        [_, _] => 1,
        [i] if c[*i] == int(2) => 2,
        _ => 3,
    };
    let signs = support.iter().skip(1).map(|&i| if c[i].is_negative() { 0 } else { 1 }).collect();
    let neg_coeffs = c.iter().map(|x| -x).collect();
    (neg, class, kind, support, signs, neg_coeffs)
}

pub fn cmp_listing(a: &AStarWeight, b: &AStarWeight) -> Ordering {
    listing_key(a).cmp(&listing_key(b))
}

/// Groups full roots by nonzero restriction and counts root spaces by parity.
pub fn restricted_from_full(params: &PairParams, full: &[(HWeight, Parity)]) -> Vec<RestrictedRootDatum> {
    let mut groups: BTreeMap<AStarWeight, (usize, usize)> = BTreeMap::new();
    for (w, parity) in full {
        let a = restrict_weight(w, params);
        if a.is_zero() {
            continue;
        }
        let e = groups.entry(a).or_default();
        match parity {
            Parity::Even => e.0 += 1,
            Parity::Odd => e.1 += 1,
        }
    }
    let two = int(2);
    let half = rat(1, 2);
    let mut out: Vec<RestrictedRootDatum> = groups
        .iter()
        .map(|(root, &(even_dim, odd_dim))| {
            let double = groups.get(&root.scale(&two));
            RestrictedRootDatum {
                root: root.clone(),
                even_dim,
                odd_dim,
                m: even_dim as i64 - odd_dim as i64,
                isotropic: root.norm_sqr().is_zero(),
                indivisible: !groups.contains_key(&root.scale(&half)),
                has_double: double.is_some(),
                m_double: double.map_or(0, |&(e, o)| e as i64 - o as i64),
            }
        })
        .collect();
    out.sort_by(|a, b| cmp_listing(&a.root, &b.root));
    out
}

/// Full roots (from the diagonalization) together with the restricted data.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub params: PairParams,
    pub full: Vec<(HWeight, Parity, SuperMatrix)>,
    pub sigma: Vec<RestrictedRootDatum>,
}

impl RootSystem {
    pub fn compute(pair: &PairData) -> Result<Self> {
        let full = oracle_roots(pair)?;
        let flat: Vec<(HWeight, Parity)> = full.iter().map(|(w, p, _)| (w.clone(), *p)).collect();
        let sigma = restricted_from_full(&pair.params, &flat);
        Ok(Self {
            params: pair.params,
            full,
            sigma,
        })
    }

    pub fn positive(&self) -> Vec<RestrictedRootDatum> {
        positive_from(&self.sigma)
    }
}

/// `Σ` with multiplicities, computed from the diagonalization.
pub fn restricted_root_data(pair: &PairData) -> Result<Vec<RestrictedRootDatum>> {
    Ok(RootSystem::compute(pair)?.sigma)
}

/// `Σ` from the closed-form roots `S_a − S_b` of gl(m|n), odd exactly when
/// one symbol is a δ and the other an ε. Needs no diagonalization.
pub fn restricted_root_data_closed_form(params: &PairParams) -> Vec<RestrictedRootDatum> {
    let (nd, ne) = (params.m(), params.n());
    let symbols: Vec<(HWeight, bool)> = (1..=nd)
        .map(|i| (HWeight::delta_unit(nd, ne, i), false))
        .chain((1..=ne).map(|j| (HWeight::eps_unit(nd, ne, j), true)))
        .collect();
    let mut full = Vec::with_capacity(symbols.len() * symbols.len());
    for (a, (sa, ka)) in symbols.iter().enumerate() {
        for (b, (sb, kb)) in symbols.iter().enumerate() {
            if a != b {
                full.push((sa.sub(sb), if ka == kb { Parity::Even } else { Parity::Odd }));
            }
        }
    }
    restricted_from_full(params, &full)
}

/// Positive part of [`restricted_root_data_closed_form`].
pub fn positive_closed_form(params: &PairParams) -> Vec<RestrictedRootDatum> {
    positive_from(&restricted_root_data_closed_form(params))
}

fn positive_from(sigma: &[RestrictedRootDatum]) -> Vec<RestrictedRootDatum> {
    sigma.iter().filter(|d| d.root.is_lex_positive()).cloned().collect()
}

/// The θ-compatible positive system: roots whose first nonzero coefficient on
/// `(i a^B_1, …, i a^B_q, i a^F_1, …, i a^F_s)` is positive.
pub fn positive_restricted_system(pair: &PairData) -> Result<Vec<RestrictedRootDatum>> {
    Ok(positive_from(&restricted_root_data(pair)?))
}

/// `ρ = ½ Σ_{β∈Σ⁺} m_β β`.
pub fn weyl_vector(sigma_plus: &[RestrictedRootDatum]) -> AStarWeight {
    let (q, s) = shape(sigma_plus);
    let sum = sigma_plus
        .iter()
        .fold(AStarWeight::zero(q, s), |acc, d| acc.add(&d.root.scale(&int(d.m))));
    sum.scale(&rat(1, 2))
}

fn shape(data: &[RestrictedRootDatum]) -> (usize, usize) {
    data.first().map_or((0, 0), |d| (d.root.ldelta.len(), d.root.leps.len()))
}

/// `ρ = ½ str_n ad|_a` with `n` spanned by the positive root vectors.
pub fn weyl_vector_supertrace(pair: &PairData) -> Result<AStarWeight> {
    let sys = RootSystem::compute(pair)?;
    weyl_vector_supertrace_from(pair, &sys.full)
}

pub fn weyl_vector_supertrace_from(pair: &PairData, full: &[(HWeight, Parity, SuperMatrix)]) -> Result<AStarWeight> {
    let params = &pair.params;
    let positive: Vec<&(HWeight, Parity, SuperMatrix)> = full
        .iter()
        .filter(|(w, _, _)| restrict_weight(w, params).is_lex_positive())
        .collect();
    let half = G::real(rat(1, 2));
    let mut values = Vec::with_capacity(pair.a_basis.len());
    for h in pair.a_elements() {
        let mut str_ = G::zero();
        for (_, parity, x) in &positive {
            let hx = bracket(&h.matrix, x)?;
            let ev = hx
                .ratio_to(x)
                .ok_or_else(|| Error::NotInvariant("positive root vector is not an ad(a)-eigenvector".into()))?;
            match parity {
                Parity::Even => str_ += &ev,
                Parity::Odd => str_ -= &ev,
            }
        }
        values.push(&str_ * &half);
    }
    // λ(a_k) = −2i λ_k, so λ_k = value · i / 2.
    let coeff = |v: &G| -> Result<Rational> {
        let c = &(v * &G::i()) * &half;
        if c.is_real() {
            Ok(c.re)
        } else {
            Err(Error::NotInvariant(format!("ρ has non-real coordinate {c}")))
        }
    };
    let q = params.q;
    let ldelta = values[..q].iter().map(coeff).collect::<Result<_>>()?;
    let leps = values[q..].iter().map(coeff).collect::<Result<_>>()?;
    Ok(AStarWeight { ldelta, leps })
}

/// `α⁺ = Σ ∩ ℚ_{>0} α`, drawn from `roots`.
fn positive_multiples<'a>(roots: &'a [RestrictedRootDatum], alpha: &AStarWeight) -> Vec<&'a RestrictedRootDatum> {
    roots.iter().filter(|d| d.root.positive_multiple_of(alpha).is_some()).collect()
}

/// `B(Φ) = Φ \ (Φ + Φ)`.
pub fn simple_roots(phi: &[RestrictedRootDatum]) -> Vec<RestrictedRootDatum> {
    phi.iter()
        .filter(|d| !phi.iter().any(|x| phi.iter().any(|y| x.root.add(&y.root) == d.root)))
        .cloned()
        .collect()
}

/// `Ψ = α⁻ ∪ Φ \ α⁺` for an indivisible simple `α ∈ B(Φ)`.
pub fn flip_positive_system(phi: &[RestrictedRootDatum], alpha: &RestrictedRootDatum) -> Result<Vec<RestrictedRootDatum>> {
    if !alpha.indivisible {
        return Err(Error::NotSimple(format!("{} (divisible)", alpha.name())));
    }
    if !simple_roots(phi).iter().any(|d| d.root == alpha.root) {
        return Err(Error::NotSimple(alpha.name()));
    }
    let mut out: Vec<RestrictedRootDatum> = Vec::with_capacity(phi.len());
    for d in phi {
        if d.root.positive_multiple_of(&alpha.root).is_some() {
            out.push(d.negated());
        } else {
            out.push(d.clone());
        }
    }
    out.sort_by(|a, b| cmp_listing(&a.root, &b.root));
    Ok(out)
}

/// `ρ_α = ½ Σ_{β∈α⁺} m_β β`.
pub fn rho_alpha(alpha: &RestrictedRootDatum, sigma: &[RestrictedRootDatum]) -> AStarWeight {
    let zero = AStarWeight::zero(alpha.root.ldelta.len(), alpha.root.leps.len());
    positive_multiples(sigma, &alpha.root)
        .into_iter()
        .fold(zero, |acc, d| acc.add(&d.root.scale(&int(d.m))))
        .scale(&rat(1, 2))
}

/// `Σ = Φ ⊔ −Φ` and `(Φ + Φ) ∩ Σ ⊆ Φ`.
pub fn is_positive_system(phi: &[RestrictedRootDatum], sigma: &[RestrictedRootDatum]) -> bool {
    let has = |set: &[RestrictedRootDatum], w: &AStarWeight| set.iter().any(|d| d.root == *w);
    for d in sigma {
        if has(phi, &d.root) == has(phi, &d.root.neg()) {
            return false;
        }
    }
    if phi.iter().any(|d| !has(sigma, &d.root)) {
        return false;
    }
    for x in phi {
        for y in phi {
            let s = x.root.add(&y.root);
            if has(sigma, &s) && !has(phi, &s) {
                return false;
            }
        }
    }
    true
}

fn root_set(phi: &[RestrictedRootDatum]) -> Vec<AStarWeight> {
    let mut v: Vec<AStarWeight> = phi.iter().map(|d| d.root.clone()).collect();
    v.sort();
    v
}

/// All positive systems reachable from `start` by at most `max_flips` flips at
/// indivisible simple roots, in breadth-first discovery order, each with its
/// flip distance.
pub fn positive_systems_within(start: &[RestrictedRootDatum], max_flips: usize) -> Vec<(usize, Vec<RestrictedRootDatum>)> {
    let mut seen = vec![root_set(start)];
    let mut out = vec![(0, start.to_vec())];
    let mut frontier = vec![start.to_vec()];
    for depth in 1..=max_flips {
        let mut next = Vec::new();
        for phi in &frontier {
            for alpha in simple_roots(phi).iter().filter(|a| a.indivisible) {
                let psi = flip_positive_system(phi, alpha).expect("simple by construction");
                let key = root_set(&psi);
                if !seen.contains(&key) {
                    seen.push(key);
                    out.push((depth, psi.clone()));
                    next.push(psi);
                }
            }
        }
        frontier = next;
    }
    out
}

/// One instance of `⟨ρ_Φ, α⟩ = ⟨ρ_α, α⟩` for `α ∈ B(Φ)` indivisible.
#[derive(Clone, Debug)]
pub struct RhoCheck {
    pub flips: usize,
    pub system: Vec<AStarWeight>,
    pub alpha: AStarWeight,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl RhoCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Checks `⟨ρ_Φ, α⟩ = ⟨ρ_α, α⟩` for every positive system `Φ` within
/// `max_flips` of `sigma_plus` and every indivisible `α ∈ B(Φ)`.
///
/// The Weyl vector is that of the system in which `α` is simple (the source of
/// the flip `Φ →α Ψ`). On the target side `α ∉ Ψ` and the identity holds with
/// `−α` instead; see the tests.
pub fn prop_rho_checks(sigma_plus: &[RestrictedRootDatum], sigma: &[RestrictedRootDatum], max_flips: usize) -> Vec<RhoCheck> {
    let mut out = Vec::new();
    for (flips, phi) in positive_systems_within(sigma_plus, max_flips) {
        let rho = weyl_vector(&phi);
        for alpha in simple_roots(&phi).iter().filter(|a| a.indivisible) {
            out.push(RhoCheck {
                flips,
                system: root_set(&phi),
                alpha: alpha.root.clone(),
                lhs: rho.pairing(&alpha.root),
                rhs: rho_alpha(alpha, sigma).pairing(&alpha.root),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::build_pair;

    fn system(p: usize, q: usize, r: usize, s: usize) -> (PairData, RootSystem) {
        let d = build_pair(PairParams::new(p, q, r, s).unwrap()).unwrap();
        let sys = RootSystem::compute(&d).unwrap();
        (d, sys)
    }

    fn summary(data: &[RestrictedRootDatum]) -> Vec<(String, i64)> {
        data.iter().map(|d| (d.name(), d.m)).collect()
    }

    #[test]
    fn closed_form_matches_diagonalization() {
        for params in PairParams::grid(5) {
            let d = build_pair(params).unwrap();
            assert_eq!(
                restricted_root_data(&d).unwrap(),
                restricted_root_data_closed_form(&params),
                "{params}"
            );
        }
    }

    #[test]
    fn one_one_one_one() {
        let (_, sys) = system(1, 1, 1, 1);
        let plus = sys.positive();
        assert_eq!(
            summary(&plus),
            vec![
                ("2ia^B_1".to_string(), 1),
                ("2ia^F_1".to_string(), 1),
                ("i(a^B_1-a^F_1)".to_string(), -2),
                ("i(a^B_1+a^F_1)".to_string(), -2)
            ]
        );
        assert_eq!(plus.iter().map(|d| d.isotropic).collect::<Vec<_>>(), vec![false, false, true, true]);
        let rho = weyl_vector(&plus);
        assert_eq!(rho.pairing(&AStarWeight::ia_boson(1, 1, 1)), rat(-1, 2));
        assert_eq!(rho.pairing(&AStarWeight::ia_fermion(1, 1, 1)), rat(-1, 2));
        let simple: Vec<String> = simple_roots(&plus).iter().map(|d| d.name()).collect();
        assert_eq!(simple, vec!["2ia^F_1", "i(a^B_1-a^F_1)"]);
    }

    #[test]
    fn two_one_one_one() {
        let (_, sys) = system(2, 1, 1, 1);
        let plus = sys.positive();
        let ia = plus.iter().find(|d| d.name() == "ia^B_1").unwrap();
        assert_eq!((ia.even_dim, ia.odd_dim, ia.m, ia.has_double, ia.m_double), (2, 0, 2, true, 1));
        let iaf = plus.iter().find(|d| d.name() == "ia^F_1").unwrap();
        assert_eq!((iaf.even_dim, iaf.odd_dim, iaf.m), (0, 2, -2));
        assert!(!iaf.isotropic);
        assert_eq!(rho_alpha(ia, &sys.sigma), AStarWeight::ia_boson(1, 1, 1).scale(&int(2)));
        assert_eq!(plus.len(), 6);
        assert!(weyl_vector(&plus).is_zero());
    }

    #[test]
    fn balanced_pairs_lack_single_roots() {
        for (p, q, r, s) in [(1, 1, 1, 1), (2, 2, 1, 1), (1, 1, 2, 2), (2, 2, 0, 0)] {
            let (_, sys) = system(p, q, r, s);
            let single = |d: &RestrictedRootDatum| {
                let c: Vec<Rational> = d.root.ia_coeffs().into_iter().filter(|x| !x.is_zero()).collect();
                c.len() == 1 && c[0].abs() == int(1)
            };
            assert!(!sys.sigma.iter().any(single), "({p},{q},{r},{s})");
        }
    }

    #[test]
    fn flips() {
        let (_, sys) = system(1, 1, 1, 1);
        let plus = sys.positive();
        let alpha = plus.iter().find(|d| d.name() == "i(a^B_1-a^F_1)").unwrap().clone();
        let psi = flip_positive_system(&plus, &alpha).unwrap();
        let mut names: Vec<String> = psi.iter().map(|d| d.name()).collect();
        names.sort();
        assert_eq!(names, vec!["2ia^B_1", "2ia^F_1", "i(-a^B_1+a^F_1)", "i(a^B_1+a^F_1)"]);
        assert!(is_positive_system(&psi, &sys.sigma));
        let back = flip_positive_system(&psi, &alpha.negated()).unwrap();
        assert_eq!(root_set(&back), root_set(&plus));
        let non_simple = plus.iter().find(|d| d.name() == "2ia^B_1").unwrap();
        assert!(matches!(flip_positive_system(&plus, non_simple), Err(Error::NotSimple(_))));
    }

    #[test]
    fn rank_one_flip_negates() {
        let (_, sys) = system(1, 1, 0, 0);
        let plus = sys.positive();
        let psi = flip_positive_system(&plus, &plus[0]).unwrap();
        assert_eq!(root_set(&psi), root_set(&plus.iter().map(|d| d.negated()).collect::<Vec<_>>()));
    }

    #[test]
    fn rho_identity_on_source_side_and_sign_on_target_side() {
        for (p, q, r, s) in [(1, 1, 1, 1), (2, 1, 1, 1)] {
            let (_, sys) = system(p, q, r, s);
            let checks = prop_rho_checks(&sys.positive(), &sys.sigma, 3);
            assert!(!checks.is_empty());
            assert!(checks.iter().all(RhoCheck::holds));
            for (_, phi) in positive_systems_within(&sys.positive(), 3) {
                for alpha in simple_roots(&phi).iter().filter(|a| a.indivisible) {
                    let psi = flip_positive_system(&phi, alpha).unwrap();
                    let lhs = weyl_vector(&psi).pairing(&alpha.root);
                    let rhs = rho_alpha(alpha, &sys.sigma).pairing(&alpha.root);
                    assert_eq!(lhs, -rhs);
                }
            }
        }
    }
}
