//! Independent root computation: simultaneous exact diagonalization of `ad(h)`
//! on the matrix-unit basis, with no reference to the closed-form table.

use num_traits::Zero;

use super::table::{full_root_table, FullRootDatum};
use super::weights::HWeight;
use crate::algebra::linalg::{ceil_bound, eigen_decompose, solve_in_span, spectral_bound};
use crate::algebra::{ad_in_unit_basis, bracket, GaussianRational as G, Parity, SuperMatrix};
use crate::error::{Error, Result};
use crate::pair::{PairData, PairParams};

/// One joint eigenspace of `ad(h)`.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub weight: HWeight,
    pub basis: Vec<SuperMatrix>,
    /// `None` when the space is not spanned by homogeneous vectors of one degree.
    pub parity: Option<Parity>,
}

/// Joint eigenspaces of `ad(h)` on `gl(p+q|r+s)`, sorted by weight.
pub fn weight_space_decomposition(pair: &PairData) -> Result<Vec<WeightSpace>> {
    let params = pair.params;
    let n = params.size();
    let d = n * n;
    let unit_basis: Vec<Vec<G>> = (0..d)
        .map(|k| (0..d).map(|j| if j == k { G::from(1) } else { G::zero() }).collect())
        .collect();
    let mut blocks: Vec<(Vec<G>, Vec<Vec<G>>)> = vec![(Vec::new(), unit_basis)];
    for h in &pair.h_basis {
        let op = ad_in_unit_basis(&h.matrix);
        let bound = ceil_bound(&spectral_bound(&op));
        let mut next = Vec::new();
        for (values, block) in blocks {
            for (mu, space) in eigen_decompose(&op, &block, bound)? {
                let mut v = values.clone();
                v.push(mu);
                next.push((v, space));
            }
        }
        blocks = next;
    }
    let mut out = Vec::with_capacity(blocks.len());
    for (values, space) in blocks {
        let weight = if values.is_empty() {
            HWeight::zero_for(&params)
        } else {
            HWeight::from_h_values(&params, &values)?
        };
        let basis: Vec<SuperMatrix> = space
            .into_iter()
            .map(|v| SuperMatrix::from_entries(params.dims(), v))
            .collect::<Result<_>>()?;
        let parity = common_parity(&basis);
        out.push(WeightSpace { weight, basis, parity });
    }
    out.sort_by(|a, b| a.weight.cmp(&b.weight));
    Ok(out)
}

fn common_parity(basis: &[SuperMatrix]) -> Option<Parity> {
    let mut parity = None;
    for b in basis {
        let p = b.parity().ok()?;
        if parity.is_some_and(|q| q != p) {
            return None;
        }
        parity = Some(p);
    }
    parity
}

/// Outcome of checking the closed-form table against the diagonalization.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub params: PairParams,
    pub zero_weight_dim: usize,
    pub root_count: usize,
    pub root_space_dim_total: usize,
    /// `Σ dim g^γ + dim g^0`, expected `(p+q+r+s)²`.
    pub bookkeeping_total: usize,
    /// Human-readable discrepancies; empty iff everything matches.
    pub mismatches: Vec<String>,
    pub spaces: Vec<WeightSpace>,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Is `x` an eigenvector of every h-basis element with eigenvalue `w(h)`?
pub fn is_root_vector(pair: &PairData, w: &HWeight, x: &SuperMatrix) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    let values = w.h_values(&pair.params);
    for (h, v) in pair.h_basis.iter().zip(&values) {
        if bracket(&h.matrix, x)? != x.scale(v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Diagonalizes `ad(h)` and compares it with [`full_root_table`]:
/// eigenfunctionals, root-vector spans, parities, and dimension bookkeeping.
pub fn oracle_verify_roots(pair: &PairData) -> Result<OracleReport> {
    let params = pair.params;
    let n = params.size();
    let spaces = weight_space_decomposition(pair)?;
    let table = full_root_table(pair);
    let mut mismatches = Vec::new();

    let (zero, roots): (Vec<&WeightSpace>, Vec<&WeightSpace>) = spaces.iter().partition(|s| s.weight.is_zero());
    let zero_weight_dim = zero.iter().map(|s| s.basis.len()).sum::<usize>();
    let root_space_dim_total = roots.iter().map(|s| s.basis.len()).sum::<usize>();

    // The zero-weight space is exactly h.
    if zero_weight_dim != n {
        mismatches.push(format!("zero-weight space has dim {zero_weight_dim}, expected dim h = {n}"));
    } else if let Some(z) = zero.first() {
        let span: Vec<Vec<G>> = z.basis.iter().map(|b| b.entries().to_vec()).collect();
        let hs: Vec<Vec<G>> = pair.h_basis.iter().map(|h| h.matrix.entries().to_vec()).collect();
        if solve_in_span(&span, &hs).is_none() {
            mismatches.push("h is not contained in the zero-weight space".into());
        }
    }

    for s in &roots {
        if s.basis.len() != 1 {
            mismatches.push(format!("root {} has a {}-dimensional root space", s.weight, s.basis.len()));
        }
        let rows: Vec<&FullRootDatum> = table.iter().filter(|t| t.root == s.weight).collect();
        match rows.as_slice() {
            [] => mismatches.push(format!("eigenfunctional {} missing from the table", s.weight)),
            [row] => {
                if Some(row.parity) != s.parity {
                    mismatches.push(format!("{}: table parity {} vs oracle {:?}", row.table_tag, row.parity, s.parity));
                }
                let span: Vec<Vec<G>> = s.basis.iter().map(|b| b.entries().to_vec()).collect();
                if solve_in_span(&span, &[row.root_vector.entries().to_vec()]).is_none() || row.root_vector.is_zero() {
                    mismatches.push(format!(
                        "{}: root vector outside the oracle root space of {}",
                        row.table_tag, s.weight
                    ));
                }
            }
            many => mismatches.push(format!(
                "eigenfunctional {} listed {} times ({})",
                s.weight,
                many.len(),
                many.iter().map(|r| r.table_tag.as_str()).collect::<Vec<_>>().join(", ")
            )),
        }
    }
    for row in &table {
        if !roots.iter().any(|s| s.weight == row.root) {
            mismatches.push(format!("{}: {} is not an eigenfunctional", row.table_tag, row.root));
        }
        if !is_root_vector(pair, &row.root, &row.root_vector)? {
            mismatches.push(format!("{}: vector is not a root vector for {}", row.table_tag, row.root));
        }
    }
    // Δ = {S_a − S_b : a ≠ b}.
    let (nd, ne) = (params.m(), params.n());
    let symbols: Vec<HWeight> = (1..=nd)
        .map(|i| HWeight::delta_unit(nd, ne, i))
        .chain((1..=ne).map(|j| HWeight::eps_unit(nd, ne, j)))
        .collect();
    for (a, sa) in symbols.iter().enumerate() {
        for (b, sb) in symbols.iter().enumerate() {
            if a != b && !roots.iter().any(|s| s.weight == sa.sub(sb)) {
                mismatches.push(format!("{} is not a root", sa.sub(sb)));
            }
        }
    }

    let bookkeeping_total = root_space_dim_total + zero_weight_dim;
    if bookkeeping_total != n * n {
        mismatches.push(format!("bookkeeping {bookkeeping_total} ≠ {}", n * n));
    }
    Ok(OracleReport {
        params,
        zero_weight_dim,
        root_count: roots.len(),
        root_space_dim_total,
        bookkeeping_total,
        mismatches,
        spaces,
    })
}

/// Root spaces only (nonzero weights), each 1-dimensional and homogeneous.
pub fn oracle_roots(pair: &PairData) -> Result<Vec<(HWeight, Parity, SuperMatrix)>> {
    weight_space_decomposition(pair)?
        .into_iter()
        .filter(|s| !s.weight.is_zero())
        .map(|s| {
            let parity = s
                .parity
                .ok_or_else(|| Error::NotInvariant(format!("root space of {} is not homogeneous", s.weight)))?;
            if s.basis.len() != 1 {
                return Err(Error::NotInvariant(format!("root space of {} has dim {}", s.weight, s.basis.len())));
            }
            Ok((s.weight, parity, s.basis.into_iter().next().unwrap()))
        })
        .collect()
}
