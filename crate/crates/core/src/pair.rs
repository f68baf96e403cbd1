//! The symmetric superpair (gl(p+q|r+s), θ) in matrix form.
//!
//! Indices: even rows `1..=p+q`, odd rows `p+q+1..=p+q+r+s`. The involution is
//! conjugation by `σ = diag(1_p, −1_q | 1_r, −1_s)`.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{bracket, rat, GaussianRational as G, SuperDims, SuperMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairParams {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
}

impl PairParams {
    /// Validates the even-type and orientation constraints.
    pub fn new(p: usize, q: usize, r: usize, s: usize) -> Result<Self> {
        if p + q + r + s == 0 {
            return Err(Error::InvalidParams("p + q + r + s ≥ 1 is violated (all four are 0)".into()));
        }
        if p < q {
            return Err(Error::InvalidParams(format!(
                "p ≥ q is violated (p = {p}, q = {q}); relabel by swapping p ↔ q"
            )));
        }
        if r < s {
            return Err(Error::InvalidParams(format!(
                "r ≥ s is violated (r = {r}, s = {s}); relabel by swapping r ↔ s"
            )));
        }
        // With p ≥ q and r ≥ s this is automatic; kept to name the condition.
        if ((p as i64) - (q as i64)) * ((r as i64) - (s as i64)) < 0 {
            return Err(Error::InvalidParams("(p − q)(r − s) ≥ 0 is violated".into()));
        }
        Ok(Self { p, q, r, s })
    }

    /// Even size `m = p + q`.
    pub fn m(&self) -> usize {
        self.p + self.q
    }

    /// Odd size `n = r + s`.
    pub fn n(&self) -> usize {
        self.r + self.s
    }

    pub fn size(&self) -> usize {
        self.m() + self.n()
    }

    pub fn dims(&self) -> SuperDims {
        SuperDims {
            even_dim: self.m(),
            odd_dim: self.n(),
        }
    }

    /// `dim a = q + s`.
    pub fn rank(&self) -> usize {
        self.q + self.s
    }

    /// All valid parameters with `1 ≤ p+q+r+s ≤ max_total`, in lexicographic order.
    pub fn grid(max_total: usize) -> Vec<PairParams> {
        let mut out = Vec::new();
        for p in 0..=max_total {
            for q in 0..=p {
                for r in 0..=max_total {
                    for s in 0..=r {
                        let t = p + q + r + s;
                        if (1..=max_total).contains(&t) {
                            out.push(PairParams { p, q, r, s });
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for PairParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p, self.q, self.r, self.s)
    }
}

/// Which coordinate of `h` a basis element carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HSlot {
    /// `b^B_k`, `k ∈ 1..=q`
    BosonB(usize),
    /// `c^B_j`, `j ∈ 1..=p−q`
    BosonC(usize),
    /// `b^F_l`, `l ∈ 1..=s`
    FermionB(usize),
    /// `c^F_j`, `j ∈ 1..=r−s`
    FermionC(usize),
    /// `a^B_k`, `k ∈ 1..=q`
    BosonA(usize),
    /// `a^F_l`, `l ∈ 1..=s`
    FermionA(usize),
}

impl fmt::Display for HSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HSlot::BosonB(k) => write!(f, "b^B_{k}"),
            HSlot::BosonC(k) => write!(f, "c^B_{k}"),
            HSlot::FermionB(k) => write!(f, "b^F_{k}"),
            HSlot::FermionC(k) => write!(f, "c^F_{k}"),
            HSlot::BosonA(k) => write!(f, "a^B_{k}"),
            HSlot::FermionA(k) => write!(f, "a^F_{k}"),
        }
    }
}

impl PairParams {
    /// Position of a slot in the global h-basis order
    /// `(b^B, c^B, b^F, c^F, a^B, a^F)`.
    pub fn slot_index(&self, slot: HSlot) -> usize {
        let PairParams { p, q, r, .. } = *self;
        match slot {
            HSlot::BosonB(k) => k - 1,
            HSlot::BosonC(j) => q + j - 1,
            HSlot::FermionB(l) => p + l - 1,
            HSlot::FermionC(j) => p + self.s + j - 1,
            HSlot::BosonA(k) => p + r + k - 1,
            HSlot::FermionA(l) => p + r + q + l - 1,
        }
    }

    /// Slots in the global h-basis order.
    pub fn slots(&self) -> Vec<HSlot> {
        let PairParams { p, q, r, s } = *self;
        (1..=q)
            .map(HSlot::BosonB)
            .chain((1..=p - q).map(HSlot::BosonC))
            .chain((1..=s).map(HSlot::FermionB))
            .chain((1..=r - s).map(HSlot::FermionC))
            .chain((1..=q).map(HSlot::BosonA))
            .chain((1..=s).map(HSlot::FermionA))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct HBasisElement {
    pub slot: HSlot,
    pub matrix: SuperMatrix,
}

#[derive(Clone, Debug)]
pub struct PairData {
    pub params: PairParams,
    pub sigma: SuperMatrix,
    pub h_basis: Vec<HBasisElement>,
    /// Indices into `h_basis` of the `a^B`, `a^F` elements.
    pub a_basis: Vec<usize>,
}

impl PairData {
    pub fn dims(&self) -> SuperDims {
        self.params.dims()
    }

    pub fn a_elements(&self) -> impl Iterator<Item = &HBasisElement> {
        self.a_basis.iter().map(|&i| &self.h_basis[i])
    }
}

fn slot_matrix(params: &PairParams, slot: HSlot) -> SuperMatrix {
    let PairParams { p, q, r, s } = *params;
    let m = p + q;
    let one = G::one();
    let dims = params.dims();
    match slot {
        HSlot::BosonB(k) => SuperMatrix::from_units(dims, &[(k, k, one.clone()), (p + k, p + k, one)]),
        HSlot::BosonC(j) => SuperMatrix::from_units(dims, &[(q + j, q + j, one)]),
        HSlot::FermionB(l) => SuperMatrix::from_units(dims, &[(m + l, m + l, one.clone()), (m + r + l, m + r + l, one)]),
        HSlot::FermionC(j) => SuperMatrix::from_units(dims, &[(m + s + j, m + s + j, one)]),
        HSlot::BosonA(k) => SuperMatrix::from_units(dims, &[(k, p + k, one.clone()), (p + k, k, -one)]),
        HSlot::FermionA(l) => SuperMatrix::from_units(dims, &[(m + l, m + r + l, one.clone()), (m + r + l, m + l, -one)]),
    }
}

/// σ, the Cartan subspace `a` and the Cartan subalgebra `h ⊇ a`.
pub fn build_pair(params: PairParams) -> Result<PairData> {
    let params = PairParams::new(params.p, params.q, params.r, params.s)?;
    let PairParams { p, q, r, s } = params;
    let signs: Vec<G> = std::iter::repeat_n(G::one(), p)
        .chain(std::iter::repeat_n(-G::one(), q))
        .chain(std::iter::repeat_n(G::one(), r))
        .chain(std::iter::repeat_n(-G::one(), s))
        .collect();
    let sigma = SuperMatrix::from_diagonal(params.dims(), &signs)?;
    let h_basis: Vec<HBasisElement> = params
        .slots()
        .into_iter()
        .map(|slot| HBasisElement {
            slot,
            matrix: slot_matrix(&params, slot),
        })
        .collect();
    let a_basis = h_basis
        .iter()
        .enumerate()
        .filter(|(_, e)| matches!(e.slot, HSlot::BosonA(_) | HSlot::FermionA(_)))
        .map(|(i, _)| i)
        .collect();
    Ok(PairData {
        params,
        sigma,
        h_basis,
        a_basis,
    })
}

/// `θ(x) = σ x σ⁻¹` (σ is its own inverse).
pub fn theta_apply(pair: &PairData, x: &SuperMatrix) -> Result<SuperMatrix> {
    pair.sigma.mul(x)?.mul(&pair.sigma)
}

/// `(½(x + θx), ½(x − θx))`, the k- and p-components.
pub fn kp_split(pair: &PairData, x: &SuperMatrix) -> Result<(SuperMatrix, SuperMatrix)> {
    let tx = theta_apply(pair, x)?;
    let half = G::real(rat(1, 2));
    Ok((x.add(&tx)?.scale(&half), x.sub(&tx)?.scale(&half)))
}

/// Dimensions of `k` and `p`, counted by the ranks of the two projections on
/// the matrix-unit basis.
pub fn kp_dimensions(pair: &PairData) -> Result<(usize, usize)> {
    let n = pair.params.size();
    let mut k_rows = Vec::new();
    let mut p_rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (k, p) = kp_split(pair, &SuperMatrix::unit(pair.dims(), i, j))?;
            k_rows.push(k.entries().to_vec());
            p_rows.push(p.entries().to_vec());
        }
    }
    Ok((crate::algebra::linalg::rank(&k_rows), crate::algebra::linalg::rank(&p_rows)))
}

/// Checks that the h-basis is Abelian, `a ⊆ p_0̄` and σ² = 1.
pub fn check_pair(pair: &PairData) -> Result<()> {
    let id = SuperMatrix::identity(pair.dims());
    if pair.sigma.mul(&pair.sigma)? != id {
        return Err(Error::NotInvariant("σ² ≠ 1".into()));
    }
    for x in &pair.h_basis {
        for y in &pair.h_basis {
            if !bracket(&x.matrix, &y.matrix)?.is_zero() {
                return Err(Error::NotInvariant(format!("[{}, {}] ≠ 0", x.slot, y.slot)));
            }
        }
    }
    for a in pair.a_elements() {
        let (k, _) = kp_split(pair, &a.matrix)?;
        if !k.is_zero() || a.matrix.parity()? != crate::algebra::Parity::Even {
            return Err(Error::NotInvariant(format!("{} is not in p_0", a.slot)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn pair(p: usize, q: usize, r: usize, s: usize) -> PairData {
        build_pair(PairParams::new(p, q, r, s).unwrap()).unwrap()
    }

    #[test]
    fn validation_names_the_inequality() {
        let e = PairParams::new(1, 2, 0, 0).unwrap_err().to_string();
        assert!(e.contains("p ≥ q") && e.contains("p ↔ q"), "{e}");
        let e = PairParams::new(1, 0, 0, 1).unwrap_err().to_string();
        assert!(e.contains("r ≥ s") && e.contains("r ↔ s"), "{e}");
        assert!(PairParams::new(0, 0, 0, 0).is_err());
    }

    #[test]
    fn dimensions() {
        let d = pair(1, 0, 1, 0);
        assert!(d.a_basis.is_empty());
        assert_eq!(d.h_basis.len(), 2);
        assert!(d
            .h_basis
            .iter()
            .all(|e| e.matrix.entries().iter().enumerate().all(|(k, x)| x.is_zero() || k % 3 == 0)));

        let d = pair(1, 1, 1, 1);
        assert_eq!((d.a_basis.len(), d.h_basis.len()), (2, 4));
        let diag: Vec<G> = [1, -1, 1, -1].iter().map(|&x| G::from(x)).collect();
        assert_eq!(d.sigma, SuperMatrix::from_diagonal(d.dims(), &diag).unwrap());

        let d = pair(2, 1, 1, 1);
        assert_eq!((d.a_basis.len(), d.h_basis.len()), (2, 5));
        check_pair(&d).unwrap();
    }

    #[test]
    fn slot_order_matches_indices() {
        for params in PairParams::grid(6) {
            for (i, slot) in params.slots().into_iter().enumerate() {
                assert_eq!(params.slot_index(slot), i, "{params} {slot}");
            }
        }
    }

    #[test]
    fn kp_examples() {
        let d = pair(1, 1, 1, 1);
        assert_eq!(theta_apply(&d, &d.sigma).unwrap(), d.sigma);
        let b = &d.h_basis[0].matrix;
        assert_eq!(kp_split(&d, b).unwrap(), (b.clone(), SuperMatrix::zeros(d.dims())));
        let a = &d.h_basis[d.a_basis[0]].matrix;
        assert_eq!(kp_split(&d, a).unwrap(), (SuperMatrix::zeros(d.dims()), a.clone()));
        assert_eq!(kp_dimensions(&d).unwrap(), (8, 8));
    }

    #[test]
    fn k_dimension_on_grid() {
        for params in PairParams::grid(5) {
            let d = build_pair(params).unwrap();
            let (k, p) = kp_dimensions(&d).unwrap();
            let PairParams { p: pp, q, r, s } = params;
            assert_eq!(k, (pp + r).pow(2) + (q + s).pow(2), "{params}");
            assert_eq!(k + p, params.size().pow(2));
            check_pair(&d).unwrap();
        }
    }
}
