//! Closed-form root table of gl(p+q|r+s) with respect to the θ-adapted Cartan
//! subalgebra: every root as a functional on `h` together with an explicit
//! root vector.
//!
//! Rows are grouped by block (`BB`, `FF` even; `BF`, `FB` odd). The `FF` rows
//! are the `BB` rows under `B ↦ F`, `p ↦ r`, `q ↦ s`. For the odd rows `BF2±`
//! and `FB2±` the imaginary part of the root vector is a sum; the variant with a
//! difference is not an eigenvector, see [`sign_variant_rows`].

use num_traits::{One, Zero};

use super::weights::HWeight;
use crate::algebra::{GaussianRational as G, Parity, SuperMatrix};
use crate::pair::{HSlot, PairData, PairParams};

/// One root of `Δ(g : h)` with a spanning root vector.
#[derive(Clone, Debug)]
pub struct FullRootDatum {
    pub root: HWeight,
    pub parity: Parity,
    pub root_vector: SuperMatrix,
    /// Row label such as `BB4+ (i=1,j=1)`.
    pub table_tag: String,
}

/// Builds a functional on `h` from `(coefficient, slot)` terms.
fn functional(params: &PairParams, terms: &[(G, HSlot)]) -> Vec<G> {
    let mut v = vec![G::zero(); params.size()];
    for (c, slot) in terms {
        v[params.slot_index(*slot)] += c;
    }
    v
}

struct Rows<'a> {
    params: &'a PairParams,
    out: Vec<FullRootDatum>,
}

impl Rows<'_> {
    fn push(&mut self, tag: String, parity: Parity, root: &[(G, HSlot)], vector: &[(usize, usize, G)]) {
        let values = functional(self.params, root);
        let root = HWeight::from_h_values(self.params, &values).expect("table roots have real δ/ε coordinates");
        let root_vector = SuperMatrix::from_units(self.params.dims(), vector);
        self.out.push(FullRootDatum {
            root,
            parity,
            root_vector,
            table_tag: tag,
        });
    }
}

/// Block geometry for one diagonal block: its size parameters, row offset and
/// slot constructors.
struct Block {
    name: &'static str,
    big: usize,
    small: usize,
    offset: usize,
    b: fn(usize) -> HSlot,
    c: fn(usize) -> HSlot,
    a: fn(usize) -> HSlot,
}

fn boson_block(params: &PairParams) -> Block {
    Block {
        name: "BB",
        big: params.p,
        small: params.q,
        offset: 0,
        b: HSlot::BosonB,
        c: HSlot::BosonC,
        a: HSlot::BosonA,
    }
}

fn fermion_block(params: &PairParams) -> Block {
    Block {
        name: "FF",
        big: params.r,
        small: params.s,
        offset: params.m(),
        b: HSlot::FermionB,
        c: HSlot::FermionC,
        a: HSlot::FermionA,
    }
}

fn signs() -> [(G, &'static str); 2] {
    [(G::one(), "+"), (-G::one(), "-")]
}

fn even_rows(rows: &mut Rows<'_>, blk: &Block) {
    let (p, q, o) = (blk.big, blk.small, blk.offset);
    let one = G::one();
    let i_unit = G::i();
    for (sg, st) in signs() {
        let pm_i = &sg * &i_unit;
        // c_{i−q} − b_j ± i a_j : E_{i,j} ± i E_{i,j+p}
        for i in q + 1..=p {
            for j in 1..=q {
                rows.push(
                    format!("{}1{st} (i={i},j={j})", blk.name),
                    Parity::Even,
                    &[(one.clone(), (blk.c)(i - q)), (-&one, (blk.b)(j)), (pm_i.clone(), (blk.a)(j))],
                    &[(o + i, o + j, one.clone()), (o + i, o + j + p, pm_i.clone())],
                );
            }
        }
        // b_i − c_{j−q} ± i a_i : E_{i,j} ± i E_{i+p,j}
        for i in 1..=q {
            for j in q + 1..=p {
                rows.push(
                    format!("{}2{st} (i={i},j={j})", blk.name),
                    Parity::Even,
                    &[(one.clone(), (blk.b)(i)), (-&one, (blk.c)(j - q)), (pm_i.clone(), (blk.a)(i))],
                    &[(o + i, o + j, one.clone()), (o + i + p, o + j, pm_i.clone())],
                );
            }
        }
        // b_i − b_j ± i(a_i − a_j) : E_{i,j} + E_{i+p,j+p} ± i(E_{i+p,j} − E_{i,j+p}), i ≠ j
        for i in 1..=q {
            for j in (1..=q).filter(|&j| j != i) {
                rows.push(
                    format!("{}3{st} (i={i},j={j})", blk.name),
                    Parity::Even,
                    &[
                        (one.clone(), (blk.b)(i)),
                        (-&one, (blk.b)(j)),
                        (pm_i.clone(), (blk.a)(i)),
                        (-&pm_i, (blk.a)(j)),
                    ],
                    &[
                        (o + i, o + j, one.clone()),
                        (o + i + p, o + j + p, one.clone()),
                        (o + i + p, o + j, pm_i.clone()),
                        (o + i, o + j + p, -&pm_i),
                    ],
                );
            }
        }
        // b_i − b_j ± i(a_i + a_j) : E_{i,j} − E_{i+p,j+p} ± i(E_{i+p,j} + E_{i,j+p})
        for i in 1..=q {
            for j in 1..=q {
                rows.push(
                    format!("{}4{st} (i={i},j={j})", blk.name),
                    Parity::Even,
                    &[
                        (one.clone(), (blk.b)(i)),
                        (-&one, (blk.b)(j)),
                        (pm_i.clone(), (blk.a)(i)),
                        (pm_i.clone(), (blk.a)(j)),
                    ],
                    &[
                        (o + i, o + j, one.clone()),
                        (o + i + p, o + j + p, -&one),
                        (o + i + p, o + j, pm_i.clone()),
                        (o + i, o + j + p, pm_i.clone()),
                    ],
                );
            }
        }
    }
    // c_{i−q} − c_{j−q} : E_{i,j}
    for i in q + 1..=p {
        for j in (q + 1..=p).filter(|&j| j != i) {
            rows.push(
                format!("{}5 (i={i},j={j})", blk.name),
                Parity::Even,
                &[(one.clone(), (blk.c)(i - q)), (-&one, (blk.c)(j - q))],
                &[(o + i, o + j, one.clone())],
            );
        }
    }
}

fn boson_fermion_rows(rows: &mut Rows<'_>) {
    let PairParams { p, q, r, s } = *rows.params;
    let m = p + q;
    let one = G::one();
    let i_unit = G::i();
    use HSlot::*;
    for (sg, st) in signs() {
        let pm_i = &sg * &i_unit;
        for i in 1..=q {
            for j in 1..=s {
                // b^B_i ± i(a^B_i − a^F_j) − b^F_j
                rows.push(
                    format!("BF1{st} (i={i},j={j})"),
                    Parity::Odd,
                    &[
                        (one.clone(), BosonB(i)),
                        (pm_i.clone(), BosonA(i)),
                        (-&pm_i, FermionA(j)),
                        (-&one, FermionB(j)),
                    ],
                    &[
                        (i, m + j, one.clone()),
                        (i + p, m + r + j, one.clone()),
                        (i + p, m + j, pm_i.clone()),
                        (i, m + r + j, -&pm_i),
                    ],
                );
                // b^B_i ± i(a^B_i + a^F_j) − b^F_j (sign of the last term corrected)
                rows.push(
                    format!("BF2{st} (i={i},j={j})"),
                    Parity::Odd,
                    &[
                        (one.clone(), BosonB(i)),
                        (pm_i.clone(), BosonA(i)),
                        (pm_i.clone(), FermionA(j)),
                        (-&one, FermionB(j)),
                    ],
                    &[
                        (i, m + j, one.clone()),
                        (i + p, m + r + j, -&one),
                        (i + p, m + j, pm_i.clone()),
                        (i, m + r + j, pm_i.clone()),
                    ],
                );
            }
        }
        // b^B_i − c^F_{j−s} ± i a^B_i : E_{i,j+m} ± i E_{i+p,j+m}
        for i in 1..=q {
            for j in s + 1..=r {
                rows.push(
                    format!("BF3{st} (i={i},j={j})"),
                    Parity::Odd,
                    &[(one.clone(), BosonB(i)), (-&one, FermionC(j - s)), (pm_i.clone(), BosonA(i))],
                    &[(i, m + j, one.clone()), (i + p, m + j, pm_i.clone())],
                );
            }
        }
        // c^B_{i−q} − b^F_j ± i a^F_j : E_{i,j+m} ± i E_{i,j+m+r}
        for i in q + 1..=p {
            for j in 1..=s {
                rows.push(
                    format!("BF4{st} (i={i},j={j})"),
                    Parity::Odd,
                    &[(one.clone(), BosonC(i - q)), (-&one, FermionB(j)), (pm_i.clone(), FermionA(j))],
                    &[(i, m + j, one.clone()), (i, m + r + j, pm_i.clone())],
                );
            }
        }
    }
    // c^B_{i−q} − c^F_{j−s} : E_{i,j+m}
    for i in q + 1..=p {
        for j in s + 1..=r {
            rows.push(
                format!("BF5 (i={i},j={j})"),
                Parity::Odd,
                &[(one.clone(), BosonC(i - q)), (-&one, FermionC(j - s))],
                &[(i, m + j, one.clone())],
            );
        }
    }
}

fn fermion_boson_rows(rows: &mut Rows<'_>) {
    let PairParams { p, q, r, s } = *rows.params;
    let m = p + q;
    let one = G::one();
    let i_unit = G::i();
    use HSlot::*;
    for (sg, st) in signs() {
        let pm_i = &sg * &i_unit;
        for i in 1..=s {
            for j in 1..=q {
                // b^F_i ± i(a^F_i − a^B_j) − b^B_j
                rows.push(
                    format!("FB1{st} (i={i},j={j})"),
                    Parity::Odd,
                    &[
                        (one.clone(), FermionB(i)),
                        (pm_i.clone(), FermionA(i)),
                        (-&pm_i, BosonA(j)),
                        (-&one, BosonB(j)),
                    ],
                    &[
                        (m + i, j, one.clone()),
                        (m + r + i, j + p, one.clone()),
                        (m + r + i, j, pm_i.clone()),
                        (m + i, j + p, -&pm_i),
                    ],
                );
                // b^F_i ± i(a^F_i + a^B_j) − b^B_j (sign of the last term corrected)
                rows.push(
                    format!("FB2{st} (i={i},j={j})"),
                    Parity::Odd,
                    &[
                        (one.clone(), FermionB(i)),
                        (pm_i.clone(), FermionA(i)),
                        (pm_i.clone(), BosonA(j)),
                        (-&one, BosonB(j)),
                    ],
                    &[
                        (m + i, j, one.clone()),
                        (m + r + i, j + p, -&one),
                        (m + r + i, j, pm_i.clone()),
                        (m + i, j + p, pm_i.clone()),
                    ],
                );
            }
        }
        // b^F_i − c^B_{j−q} ± i a^F_i : E_{i+m,j} ± i E_{i+m+r,j}
        for i in 1..=s {
            for j in q + 1..=p {
                rows.push(
                    format!("FB3{st} (i={i},j={j})"),
                    Parity::Odd,
                    &[(one.clone(), FermionB(i)), (-&one, BosonC(j - q)), (pm_i.clone(), FermionA(i))],
                    &[(m + i, j, one.clone()), (m + r + i, j, pm_i.clone())],
                );
            }
        }
        // c^F_{i−s} − b^B_j ± i a^B_j : E_{i+m,j} ± i E_{i+m,j+p}
        for i in s + 1..=r {
            for j in 1..=q {
                rows.push(
                    format!("FB4{st} (i={i},j={j})"),
                    Parity::Odd,
                    &[(one.clone(), FermionC(i - s)), (-&one, BosonB(j)), (pm_i.clone(), BosonA(j))],
                    &[(m + i, j, one.clone()), (m + i, j + p, pm_i.clone())],
                );
            }
        }
    }
    // c^F_{i−s} − c^B_{j−q} : E_{i+m,j}
    for i in s + 1..=r {
        for j in q + 1..=p {
            rows.push(
                format!("FB5 (i={i},j={j})"),
                Parity::Odd,
                &[(one.clone(), FermionC(i - s)), (-&one, BosonC(j - q))],
                &[(m + i, j, one.clone())],
            );
        }
    }
}

/// All `(p+q+r+s)² − (p+q+r+s)` roots with explicit root vectors.
///
/// Rows `BB4±`/`FF4±` with `i = j` give `±2i a_i`.
pub fn full_root_table(pair: &PairData) -> Vec<FullRootDatum> {
    let params = &pair.params;
    let mut rows = Rows { params, out: Vec::new() };
    even_rows(&mut rows, &boson_block(params));
    even_rows(&mut rows, &fermion_block(params));
    boson_fermion_rows(&mut rows);
    fermion_boson_rows(&mut rows);
    rows.out
}

/// The `BF2±`/`FB2±` rows with a difference instead of a sum in the imaginary
/// part of the root vector. These vectors are not eigenvectors.
pub fn sign_variant_rows(pair: &PairData) -> Vec<FullRootDatum> {
    let PairParams { p, q, r, s } = pair.params;
    let m = p + q;
    let one = G::one();
    let i_unit = G::i();
    let mut out = Vec::new();
    let corrected = full_root_table(pair);
    for (sg, st) in signs() {
        let pm_i = &sg * &i_unit;
        for i in 1..=q {
            for j in 1..=s {
                let bf = SuperMatrix::from_units(
                    pair.dims(),
                    &[
                        (i, m + j, one.clone()),
                        (i + p, m + r + j, -&one),
                        (i + p, m + j, pm_i.clone()),
                        (i, m + r + j, -&pm_i),
                    ],
                );
                // FB rows are indexed (fermion, boson): here fermion l = j, boson k = i.
                let (l, k) = (j, i);
                let fb = SuperMatrix::from_units(
                    pair.dims(),
                    &[
                        (m + l, k, one.clone()),
                        (m + r + l, k + p, -&one),
                        (m + r + l, k, pm_i.clone()),
                        (m + l, k + p, -&pm_i),
                    ],
                );
                for (tag, v) in [(format!("BF2{st} (i={i},j={j})"), bf), (format!("FB2{st} (i={l},j={k})"), fb)] {
                    let root = corrected.iter().find(|d| d.table_tag == tag).expect("row exists").root.clone();
                    out.push(FullRootDatum {
                        root,
                        parity: Parity::Odd,
                        root_vector: v,
                        table_tag: tag,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bracket;
    use crate::pair::build_pair;

    fn pair(p: usize, q: usize, r: usize, s: usize) -> PairData {
        build_pair(PairParams::new(p, q, r, s).unwrap()).unwrap()
    }

    fn is_eigenvector(pair: &PairData, d: &FullRootDatum) -> bool {
        let values = d.root.h_values(&pair.params);
        pair.h_basis
            .iter()
            .zip(&values)
            .all(|(h, v)| bracket(&h.matrix, &d.root_vector).unwrap() == d.root_vector.scale(v))
    }

    #[test]
    fn counts_and_eigenvectors() {
        for params in PairParams::grid(6) {
            let d = build_pair(params).unwrap();
            let t = full_root_table(&d);
            let n = params.size();
            assert_eq!(t.len(), n * n - n, "{params}");
            for row in &t {
                assert!(is_eigenvector(&d, row), "{params} {}", row.table_tag);
                assert_eq!(row.root_vector.parity().unwrap(), row.parity);
            }
        }
    }

    #[test]
    fn rank_one_boson_example() {
        let d = pair(1, 1, 0, 0);
        let t = full_root_table(&d);
        assert_eq!(t.len(), 2);
        let plus = t.iter().find(|x| x.table_tag.starts_with("BB4+")).unwrap();
        // b − b + 2i a = δ_2 − δ_1
        assert_eq!(plus.root, HWeight::from_ints(&[-1, 1], &[]));
        assert!(full_root_table(&pair(1, 0, 0, 0)).is_empty());
    }

    #[test]
    fn sign_variant_odd_rows_are_not_eigenvectors() {
        let d = pair(1, 1, 1, 1);
        let variants = sign_variant_rows(&d);
        assert_eq!(variants.len(), 4);
        for row in &variants {
            assert!(!is_eigenvector(&d, row), "{}", row.table_tag);
        }
    }
}
