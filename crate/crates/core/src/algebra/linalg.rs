//! Dense exact linear algebra over ℚ[i]: row reduction, kernels, span solving,
//! and eigenspace decomposition of semisimple operators.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gaussian::{GaussianRational as G, Rational};
use crate::error::{Error, Result};

/// Row-major dense matrix.
pub type DenseMatrix = Vec<Vec<G>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut DenseMatrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in m[r][c..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &DenseMatrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &DenseMatrix, cols: usize) -> Vec<Vec<G>> {
    let mut m = m.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![G::zero(); cols];
            v[f] = G::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][f];
            }
            v
        })
        .collect()
}

/// Expresses every target as a combination of `basis`. Returns `None` if some
/// target lies outside the span. The basis must be linearly independent.
pub fn solve_in_span(basis: &[Vec<G>], targets: &[Vec<G>]) -> Option<Vec<Vec<G>>> {
    let k = basis.len();
    let d = basis.first().or(targets.first()).map_or(0, Vec::len);
    if k == 0 {
        return targets
            .iter()
            .all(|t| t.iter().all(Zero::is_zero))
            .then(|| vec![Vec::new(); targets.len()]);
    }
    // Augmented [A | T], A has the basis vectors as columns.
    let mut m: DenseMatrix = (0..d)
        .map(|row| {
            basis
                .iter()
                .map(|b| b[row].clone())
                .chain(targets.iter().map(|t| t[row].clone()))
                .collect()
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.iter().any(|&p| p >= k) {
        return None;
    }
    debug_assert_eq!(pivots.len(), k, "basis must be independent");
    Some((0..targets.len()).map(|t| (0..k).map(|r| m[r][k + t].clone()).collect()).collect())
}

pub fn mat_vec(m: &DenseMatrix, v: &[G]) -> Vec<G> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(G::zero(), |mut acc, (a, b)| {
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
                acc
            })
        })
        .collect()
}

/// Coefficients `c_0..c_{d-1}` of the monic polynomial `x^d + c_{d-1}x^{d-1} + … + c_0`
/// of least degree annihilating `v` under `m`.
pub fn vector_minimal_polynomial(m: &DenseMatrix, v: &[G]) -> Vec<G> {
    let mut krylov: Vec<Vec<G>> = vec![v.to_vec()];
    loop {
        let next = mat_vec(m, krylov.last().unwrap());
        if let Some(c) = solve_in_span(&krylov, std::slice::from_ref(&next)) {
            // next = Σ c_j K_j, so x^d - Σ c_j x^j annihilates v.
            return c[0].iter().map(|x| -x).collect();
        }
        krylov.push(next);
    }
}

/// Evaluates the monic polynomial with lower coefficients `low` at `x`.
pub fn eval_monic(low: &[G], x: &G) -> G {
    let mut acc = G::one();
    for c in low.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// All Gaussian-integer roots of a monic polynomial whose roots are bounded
/// by `bound` in each coordinate.
fn gaussian_integer_roots(low: &[G], bound: i64) -> Vec<G> {
    let mut roots = Vec::new();
    for re in -bound..=bound {
        for im in -bound..=bound {
            let x = G::from_ints(re, im);
            if eval_monic(low, &x).is_zero() {
                roots.push(x);
            }
        }
    }
    roots
}

/// Infinity norm bound on the spectrum of `m`.
pub fn spectral_bound(m: &DenseMatrix) -> Rational {
    m.iter()
        .map(|row| row.iter().map(G::abs_bound).fold(Rational::zero(), |a, b| a + b))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Decomposes the subspace spanned by `block` (an `op`-invariant subspace) into
/// eigenspaces of `op`, whose eigenvalues must be Gaussian integers of modulus at
/// most `bound`. Fails if the restriction is not diagonalizable with such
/// eigenvalues. For an operator with entries in ℤ[i] that is exactly a failure
/// of semisimplicity over ℚ[i].
pub fn eigen_decompose(op: &DenseMatrix, block: &[Vec<G>], bound: i64) -> Result<Vec<(G, Vec<Vec<G>>)>> {
    let k = block.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    // Restriction of op to the block in block coordinates.
    let images: Vec<Vec<G>> = block.iter().map(|b| mat_vec(op, b)).collect();
    let coords = solve_in_span(block, &images).ok_or_else(|| Error::NotInvariant("block is not invariant under the operator".into()))?;
    // restricted[i][j] = coefficient of block_i in op(block_j)
    let restricted: DenseMatrix = (0..k).map(|i| (0..k).map(|j| coords[j][i].clone()).collect()).collect();

    let mut eigenvalues: Vec<G> = Vec::new();
    // A few deterministic probe vectors; the union of their minimal-polynomial
    // roots recovers the whole spectrum of a semisimple operator.
    for seed in 0..4i64 {
        let probe: Vec<G> = (0..k as i64)
            .map(|j| G::from_ints(1 + (j * (seed + 3) + seed * seed) % 7, 0))
            .collect();
        let poly = vector_minimal_polynomial(&restricted, &probe);
        let roots = gaussian_integer_roots(&poly, bound);
        let found: usize = roots.len();
        if found != poly.len() {
            return Err(Error::NotDiagonalizable(format!(
                "minimal polynomial of degree {} has only {} simple roots in Z[i]",
                poly.len(),
                found
            )));
        }
        for r in roots {
            if !eigenvalues.contains(&r) {
                eigenvalues.push(r);
            }
        }
        let mut spaces = Vec::new();
        let mut total = 0;
        for mu in &eigenvalues {
            let shifted: DenseMatrix = restricted
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, x)| if i == j { x - mu } else { x.clone() })
                        .collect()
                })
                .collect();
            let kernel = nullspace(&shifted, k);
            total += kernel.len();
            let vectors: Vec<Vec<G>> = kernel
                .iter()
                .map(|c| {
                    let mut v = vec![G::zero(); block[0].len()];
                    for (coef, b) in c.iter().zip(block) {
                        if coef.is_zero() {
                            continue;
                        }
                        for (x, y) in v.iter_mut().zip(b) {
                            *x += &(coef * y);
                        }
                    }
                    v
                })
                .collect();
            spaces.push((mu.clone(), vectors));
        }
        if total == k {
            spaces.sort_by(|a, b| cmp_gaussian(&a.0, &b.0));
            return Ok(spaces);
        }
    }
    Err(Error::NotDiagonalizable("eigenspaces do not span the block".into()))
}

/// Total order on ℚ[i] used for deterministic output: by real part, then imaginary.
pub fn cmp_gaussian(a: &G, b: &G) -> std::cmp::Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

/// Rounds a rational spectral bound up to an integer.
pub fn ceil_bound(q: &Rational) -> i64 {
    q.abs().ceil().to_integer().to_i64().unwrap_or(i64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> DenseMatrix {
        rows.iter().map(|r| r.iter().map(|&x| G::from(x)).collect()).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let k = nullspace(&a, 2);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&a, &k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn span_solving() {
        let basis = vec![vec![G::from(1), G::from(0)], vec![G::from(1), G::from(1)]];
        let c = solve_in_span(&basis, &[vec![G::from(3), G::from(2)]]).unwrap();
        assert_eq!(c[0], vec![G::from(1), G::from(2)]);
        let b1 = vec![vec![G::from(1), G::from(0)]];
        assert!(solve_in_span(&b1, &[vec![G::from(0), G::from(1)]]).is_none());
    }

    #[test]
    fn rotation_has_eigenvalues_plus_minus_i() {
        let rot = m(&[&[0, -1], &[1, 0]]);
        let id: Vec<Vec<G>> = (0..2).map(|i| (0..2).map(|j| G::from((i == j) as i64)).collect()).collect();
        let spaces = eigen_decompose(&rot, &id, 2).unwrap();
        let vals: Vec<G> = spaces.iter().map(|s| s.0.clone()).collect();
        assert_eq!(vals, vec![G::from_ints(0, -1), G::from_ints(0, 1)]);
    }

    #[test]
    fn jordan_block_is_rejected() {
        let j = m(&[&[1, 1], &[0, 1]]);
        let id: Vec<Vec<G>> = (0..2).map(|i| (0..2).map(|j| G::from((i == j) as i64)).collect()).collect();
        assert!(matches!(eigen_decompose(&j, &id, 3), Err(Error::NotDiagonalizable(_))));
    }
}
