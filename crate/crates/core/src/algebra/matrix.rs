//! Dense supermatrices for gl(m|n) and the superbracket.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational as G;
use super::linalg::{solve_in_span, DenseMatrix};
use crate::error::{Error, Result};

/// ℤ₂-degree of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: usize) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn sum(self, other: Parity) -> Parity {
        Parity::from_bit(self.bit() + other.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Superdimension `m|n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperDims {
    pub even_dim: usize,
    pub odd_dim: usize,
}

impl SuperDims {
    pub fn new(even_dim: usize, odd_dim: usize) -> Result<Self> {
        if even_dim + odd_dim == 0 {
            return Err(Error::DimensionMismatch("superdimension 0|0 is empty".into()));
        }
        Ok(Self { even_dim, odd_dim })
    }

    pub fn total(&self) -> usize {
        self.even_dim + self.odd_dim
    }

    /// Degree of the standard basis vector `e_i` (0-based).
    pub fn index_parity(&self, i: usize) -> Parity {
        if i < self.even_dim {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Degree of `E_{i,j}` (0-based).
    pub fn unit_parity(&self, i: usize, j: usize) -> Parity {
        self.index_parity(i).sum(self.index_parity(j))
    }
}

/// An element of gl(m|n) stored as a dense row-major array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperMatrix {
    dims: SuperDims,
    entries: Vec<G>,
}

impl SuperMatrix {
    pub fn zeros(dims: SuperDims) -> Self {
        let n = dims.total();
        Self {
            dims,
            entries: vec![G::zero(); n * n],
        }
    }

    pub fn identity(dims: SuperDims) -> Self {
        let mut m = Self::zeros(dims);
        for i in 0..dims.total() {
            m.set(i, i, G::one());
        }
        m
    }

    /// The matrix unit `E_{i+1,j+1}` (indices are 0-based here).
    pub fn unit(dims: SuperDims, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dims);
        m.set(i, j, G::one());
        m
    }

    /// Sum of `coef · E_{i,j}` over 1-based index triples.
    pub fn from_units(dims: SuperDims, terms: &[(usize, usize, G)]) -> Self {
        let mut m = Self::zeros(dims);
        for (i, j, c) in terms {
            let v = m.get(i - 1, j - 1) + c;
            m.set(i - 1, j - 1, v);
        }
        m
    }

    pub fn from_entries(dims: SuperDims, entries: Vec<G>) -> Result<Self> {
        let n = dims.total();
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(Self { dims, entries })
    }

    pub fn from_diagonal(dims: SuperDims, diag: &[G]) -> Result<Self> {
        if diag.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "diagonal of length {} for size {}",
                diag.len(),
                dims.total()
            )));
        }
        let mut m = Self::zeros(dims);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        Ok(m)
    }

    pub fn dims(&self) -> SuperDims {
        self.dims
    }

    pub fn size(&self) -> usize {
        self.dims.total()
    }

    pub fn get(&self, i: usize, j: usize) -> &G {
        &self.entries[i * self.size() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: G) {
        let n = self.size();
        self.entries[i * n + j] = v;
    }

    pub fn entries(&self) -> &[G] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!(
                "{}|{} vs {}|{}",
                self.dims.even_dim, self.dims.odd_dim, other.dims.even_dim, other.dims.odd_dim
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&G, &G) -> G) -> Result<Self> {
        self.check_dims(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Self { dims: self.dims, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &G) -> Self {
        Self {
            dims: self.dims,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            dims: self.dims,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    /// Ordinary matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let n = self.size();
        let mut out = vec![G::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Ok(Self {
            dims: self.dims,
            entries: out,
        })
    }

    fn masked(&self, keep: Parity) -> Self {
        let n = self.size();
        let mut m = self.clone();
        for i in 0..n {
            for j in 0..n {
                if self.dims.unit_parity(i, j) != keep {
                    m.set(i, j, G::zero());
                }
            }
        }
        m
    }

    /// Diagonal blocks `A`, `D`.
    pub fn even_part(&self) -> Self {
        self.masked(Parity::Even)
    }

    /// Off-diagonal blocks `B`, `C`.
    pub fn odd_part(&self) -> Self {
        self.masked(Parity::Odd)
    }

    /// Degree of a homogeneous matrix; the zero matrix counts as even.
    pub fn parity(&self) -> Result<Parity> {
        let n = self.size();
        let mut seen = [false, false];
        for i in 0..n {
            for j in 0..n {
                if !self.get(i, j).is_zero() {
                    seen[self.dims.unit_parity(i, j).bit()] = true;
                }
            }
        }
        match seen {
            [true, true] => Err(Error::NotHomogeneous),
            [_, true] => Ok(Parity::Odd),
            _ => Ok(Parity::Even),
        }
    }

    /// `tr(A) − tr(D)`.
    pub fn supertrace(&self) -> G {
        let mut acc = G::zero();
        for i in 0..self.size() {
            match self.dims.index_parity(i) {
                Parity::Even => acc += self.get(i, i),
                Parity::Odd => acc -= self.get(i, i),
            }
        }
        acc
    }

    /// The scalar `c` with `self = c · other`, if any. `other` must be nonzero.
    pub fn ratio_to(&self, other: &Self) -> Option<G> {
        let (idx, pivot) = other.entries.iter().enumerate().find(|(_, x)| !x.is_zero())?;
        let c = self.entries[idx].checked_div(pivot).ok()?;
        (other.scale(&c) == *self).then_some(c)
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        let mut first = true;
        for i in 0..n {
            for j in 0..n {
                let c = self.get(i, j);
                if c.is_zero() {
                    continue;
                }
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                if c.is_one() {
                    write!(f, "E{},{}", i + 1, j + 1)?;
                } else {
                    write!(f, "({c})E{},{}", i + 1, j + 1)?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The superbracket `xy − (−1)^{|x||y|} yx` of homogeneous matrices.
pub fn bracket(x: &SuperMatrix, y: &SuperMatrix) -> Result<SuperMatrix> {
    x.check_dims(y)?;
    let px = x.parity()?;
    let py = y.parity()?;
    let xy = x.mul(y)?;
    let yx = y.mul(x)?;
    if px == Parity::Odd && py == Parity::Odd {
        xy.add(&yx)
    } else {
        xy.sub(&yx)
    }
}

/// Matrix of `x ↦ [h, x]` on the span of `basis`; column `k` holds the
/// coordinates of `[h, basis_k]`.
pub fn ad_matrix(h: &SuperMatrix, basis: &[SuperMatrix]) -> Result<DenseMatrix> {
    if h.parity()? != Parity::Even {
        return Err(Error::NotHomogeneous);
    }
    let images = basis.iter().map(|b| bracket(h, b).map(|x| x.entries)).collect::<Result<Vec<_>>>()?;
    let flat: Vec<Vec<G>> = basis.iter().map(|b| b.entries.clone()).collect();
    let coords = solve_in_span(&flat, &images).ok_or_else(|| Error::NotInvariant("[h, basis_k] leaves the span of the basis".into()))?;
    let k = basis.len();
    Ok((0..k).map(|i| (0..k).map(|j| coords[j][i].clone()).collect()).collect())
}

/// `ad(h)` for even `h` in the basis of matrix units `E_{i,j}`, ordered row-major.
pub fn ad_in_unit_basis(h: &SuperMatrix) -> DenseMatrix {
    let n = h.size();
    let d = n * n;
    let mut out = vec![vec![G::zero(); d]; d];
    // [h, E_ij] = Σ_k h_ki E_kj − Σ_l h_jl E_il
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            for k in 0..n {
                let c = h.get(k, i);
                if !c.is_zero() {
                    out[k * n + j][col] += c;
                }
            }
            for l in 0..n {
                let c = h.get(j, l);
                if !c.is_zero() {
                    out[i * n + l][col] -= c;
                }
            }
        }
    }
    out
}
