//! Quasideterminants and the Gauss decomposition L = F·H·E over a possibly
//! noncommutative coefficient ring. Indices are 0-based throughout.

use crate::ring::Ring;
use crate::scalars::Scalar;
use crate::series::Series;
use crate::tensor::{dense_inverse, Mat, SparseMat};
use thiserror::Error;

/// Square matrix of ring elements, row-major.
pub type RMatrix<T> = Vec<Vec<T>>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QError {
    #[error("singular block: {0}")]
    Singular(String),
    #[error("leading block {0} is not invertible")]
    LeadingBlock(usize),
    #[error("index out of range: {0}")]
    Range(String),
}

/// Rings in which a whole matrix of elements can be inverted. Matrix-valued
/// rings flatten to one matrix over the field, invert there and reblock.
pub trait BlockRing: Ring {
    fn invert_matrix(m: &[Vec<Self>]) -> Option<RMatrix<Self>>;
}

impl BlockRing for Scalar {
    fn invert_matrix(m: &[Vec<Scalar>]) -> Option<RMatrix<Scalar>> {
        dense_inverse(m).ok()
    }
}

fn flatten(m: &[Vec<Mat>]) -> Mat {
    let k = m.len();
    let n = m[0][0].nrows();
    let mut entries = Vec::new();
    for (bi, row) in m.iter().enumerate() {
        for (bj, blk) in row.iter().enumerate() {
            for (i, j, x) in blk.entries() {
                entries.push((bi * n + i, bj * n + j, x.clone()));
            }
        }
    }
    SparseMat::from_entries(k * n, k * n, entries)
}

fn reblock(big: &Mat, k: usize, n: usize) -> RMatrix<Mat> {
    let mut parts: Vec<Vec<Vec<(usize, usize, Scalar)>>> = vec![vec![Vec::new(); k]; k];
    for (i, j, x) in big.entries() {
        parts[i / n][j / n].push((i % n, j % n, x.clone()));
    }
    parts
        .into_iter()
        .map(|row| row.into_iter().map(|e| SparseMat::from_entries(n, n, e)).collect())
        .collect()
}

impl BlockRing for Mat {
    fn invert_matrix(m: &[Vec<Mat>]) -> Option<RMatrix<Mat>> {
        let k = m.len();
        let n = m[0][0].nrows();
        let inv = flatten(m).inverse().ok()?;
        Some(reblock(&inv, k, n))
    }
}

impl BlockRing for Series<Mat> {
    fn invert_matrix(m: &[Vec<Series<Mat>>]) -> Option<RMatrix<Series<Mat>>> {
        let k = m.len();
        let dir = m[0][0].dir();
        let order = m[0][0].order();
        let n = m[0][0].coeff(0).nrows();
        let coeffs: Vec<Mat> = (0..=order)
            .map(|d| {
                let layer: RMatrix<Mat> =
                    m.iter().map(|row| row.iter().map(|x| x.coeff(d).clone()).collect()).collect();
                flatten(&layer)
            })
            .collect();
        let inv = Series::new(dir, coeffs).inverse().ok()?;
        let layers: Vec<RMatrix<Mat>> = inv.coeffs().iter().map(|c| reblock(c, k, n)).collect();
        Some(
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| Series::new(dir, layers.iter().map(|l| l[i][j].clone()).collect()))
                        .collect()
                })
                .collect(),
        )
    }
}

impl BlockRing for Series<Scalar> {
    fn invert_matrix(m: &[Vec<Series<Scalar>>]) -> Option<RMatrix<Series<Scalar>>> {
        let k = m.len();
        let dir = m[0][0].dir();
        let order = m[0][0].order();
        let coeffs: Vec<Mat> = (0..=order)
            .map(|d| SparseMat::from_dense(&m.iter().map(|r| r.iter().map(|x| x.coeff(d).clone()).collect()).collect::<Vec<Vec<Scalar>>>()))
            .collect();
        let inv = Series::new(dir, coeffs).inverse().ok()?;
        Some(
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            let cs = inv.coeffs().iter().map(|c| c.get(i, j).cloned().unwrap_or_else(Scalar::zero)).collect();
                            Series::new(dir, cs)
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

pub fn mat_mul<T: Ring>(a: &[Vec<T>], b: &[Vec<T>]) -> RMatrix<T> {
    let z = a[0][0].zero_like();
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| {
                    let mut acc = z.clone();
                    for (k, x) in row.iter().enumerate() {
                        if x.is_zero() || b[k][j].is_zero() {
                            continue;
                        }
                        acc = acc.radd(&x.rmul(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Quasideterminant of the submatrix on `rows` × `cols`, taken at the last
/// row and last column of that selection.
pub fn quasideterminant_sub<T: BlockRing>(a: &[Vec<T>], rows: &[usize], cols: &[usize]) -> Result<T, QError> {
    let k = rows.len();
    if k != cols.len() || k == 0 {
        return Err(QError::Range(format!("{} rows against {} columns", k, cols.len())));
    }
    let (pi, pj) = (rows[k - 1], cols[k - 1]);
    if k == 1 {
        return Ok(a[pi][pj].clone());
    }
    let inner: RMatrix<T> =
        rows[..k - 1].iter().map(|&i| cols[..k - 1].iter().map(|&j| a[i][j].clone()).collect()).collect();
    let inv = T::invert_matrix(&inner)
        .ok_or_else(|| QError::Singular(format!("rows {:?} x cols {:?}", &rows[..k - 1], &cols[..k - 1])))?;
    let r: RMatrix<T> = vec![cols[..k - 1].iter().map(|&j| a[pi][j].clone()).collect()];
    let c: RMatrix<T> = rows[..k - 1].iter().map(|&i| vec![a[i][pj].clone()]).collect();
    let corr = mat_mul(&mat_mul(&r, &inv), &c);
    Ok(a[pi][pj].rsub(&corr[0][0]))
}

/// |A|_{ij}: the entry a_ij minus r (A^{ij})⁻¹ c, with A^{ij} the matrix
/// without row i and column j.
pub fn quasideterminant<T: BlockRing>(a: &[Vec<T>], i: usize, j: usize) -> Result<T, QError> {
    let n = a.len();
    if i >= n || j >= n {
        return Err(QError::Range(format!("({i},{j}) in {n}x{n}")));
    }
    let mut rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
    let mut cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
    rows.push(i);
    cols.push(j);
    quasideterminant_sub(a, &rows, &cols)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussFactors<T> {
    pub f: RMatrix<T>,
    pub h: Vec<T>,
    pub e: RMatrix<T>,
}

impl<T: Ring> GaussFactors<T> {
    pub fn size(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self, i: usize) -> &T {
        &self.h[i]
    }

    /// Entry (i, j) of E, i < j.
    pub fn e(&self, i: usize, j: usize) -> &T {
        &self.e[i][j]
    }

    /// Entry (j, i) of F, j > i.
    pub fn f(&self, j: usize, i: usize) -> &T {
        &self.f[j][i]
    }

    pub fn h_matrix(&self) -> RMatrix<T> {
        let z = self.h[0].zero_like();
        (0..self.size())
            .map(|i| (0..self.size()).map(|j| if i == j { self.h[i].clone() } else { z.clone() }).collect())
            .collect()
    }

    pub fn reassemble(&self) -> RMatrix<T> {
        mat_mul(&mat_mul(&self.f, &self.h_matrix()), &self.e)
    }

    /// Unitriangular shapes of F and E.
    pub fn check_shape(&self) -> Result<(), String> {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                let (fv, ev) = (&self.f[i][j], &self.e[i][j]);
                if i == j && !(fv.is_one() && ev.is_one()) {
                    return Err(format!("diagonal entry {i} of F or E is not one"));
                }
                if i < j && !fv.is_zero() {
                    return Err(format!("F({i},{j}) above the diagonal is nonzero"));
                }
                if i > j && !ev.is_zero() {
                    return Err(format!("E({i},{j}) below the diagonal is nonzero"));
                }
            }
        }
        Ok(())
    }

    /// F·H·E reproduces `a` entry by entry.
    pub fn check_reassembly(&self, a: &[Vec<T>]) -> Result<(), String> {
        let p = self.reassemble();
        for i in 0..self.size() {
            for j in 0..self.size() {
                if p[i][j] != a[i][j] {
                    return Err(format!("(F H E)({i},{j}) differs from the input"));
                }
            }
        }
        Ok(())
    }
}

/// Sequential elimination: h_k is the pivot of the k-th Schur complement.
pub fn gauss_decompose<T: Ring>(a: &[Vec<T>]) -> Result<GaussFactors<T>, QError> {
    let n = a.len();
    let z = a[0][0].zero_like();
    let one = a[0][0].one_like();
    let mut s: RMatrix<T> = a.to_vec();
    let mut f: RMatrix<T> = (0..n).map(|i| (0..n).map(|j| if i == j { one.clone() } else { z.clone() }).collect()).collect();
    let mut e = f.clone();
    let mut h = Vec::with_capacity(n);
    for k in 0..n {
        let hk = s[k][k].clone();
        let inv = hk.try_inv().ok_or(QError::LeadingBlock(k))?;
        for j in k + 1..n {
            if !s[k][j].is_zero() {
                e[k][j] = inv.rmul(&s[k][j]);
            }
        }
        for i in k + 1..n {
            if !s[i][k].is_zero() {
                f[i][k] = s[i][k].rmul(&inv);
            }
        }
        for i in k + 1..n {
            if f[i][k].is_zero() {
                continue;
            }
            for j in k + 1..n {
                if s[k][j].is_zero() {
                    continue;
                }
                let t = f[i][k].rmul(&s[k][j]);
                s[i][j] = s[i][j].rsub(&t);
            }
        }
        h.push(hk);
    }
    Ok(GaussFactors { f, h, e })
}

/// Gauss factors from the closed quasideterminant formulas:
/// h_i = |A_{0..i, 0..i}|, e_ij = h_i⁻¹ |rows 0..i, cols 0..i−1 ∪ j|,
/// f_ji = |rows 0..i−1 ∪ j, cols 0..i| h_i⁻¹.
pub fn gauss_by_quasideterminants<T: BlockRing>(a: &[Vec<T>]) -> Result<GaussFactors<T>, QError> {
    let n = a.len();
    let z = a[0][0].zero_like();
    let one = a[0][0].one_like();
    let mut f: RMatrix<T> = (0..n).map(|i| (0..n).map(|j| if i == j { one.clone() } else { z.clone() }).collect()).collect();
    let mut e = f.clone();
    let mut h = Vec::with_capacity(n);
    for i in 0..n {
        let lead: Vec<usize> = (0..=i).collect();
        let hi = quasideterminant_sub(a, &lead, &lead)?;
        let inv = hi.try_inv().ok_or(QError::LeadingBlock(i))?;
        for j in i + 1..n {
            let mut other: Vec<usize> = (0..i).collect();
            other.push(j);
            e[i][j] = inv.rmul(&quasideterminant_sub(a, &lead, &other)?);
            f[j][i] = quasideterminant_sub(a, &other, &lead)?.rmul(&inv);
        }
        h.push(hi);
    }
    Ok(GaussFactors { f, h, e })
}

/// Names the first entry where two decompositions differ.
pub fn compare_factors<T: Ring>(x: &GaussFactors<T>, y: &GaussFactors<T>) -> Result<(), String> {
    let n = x.size();
    for i in 0..n {
        if x.h[i] != y.h[i] {
            return Err(format!("h_{i} differs"));
        }
        for j in 0..n {
            if i < j && x.e[i][j] != y.e[i][j] {
                return Err(format!("e_{i}{j} differs"));
            }
            if i > j && x.f[i][j] != y.f[i][j] {
                return Err(format!("f_{i}{j} differs"));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct PsiImage<T> {
    pub value: T,
    pub reduced: T,
    pub equal: bool,
}

/// The entry (i, j) of ψ_m(L): the quasideterminant of `a` bordered by rows
/// and columns 0..m, next to the (i, j) entry of the product of the
/// lower-right blocks of F, H, E (indices m..size−m).
pub fn psi_image<T: BlockRing>(a: &[Vec<T>], g: &GaussFactors<T>, m: usize, i: usize, j: usize) -> Result<PsiImage<T>, QError> {
    let n = g.size();
    if 2 * m >= n || i < m || j < m || i >= n - m || j >= n - m {
        return Err(QError::Range(format!("m={m}, ({i},{j}) in size {n}")));
    }
    let mut rows: Vec<usize> = (0..m).collect();
    let mut cols = rows.clone();
    rows.push(i);
    cols.push(j);
    let value = quasideterminant_sub(a, &rows, &cols)?;
    let mut reduced = value.zero_like();
    for k in m..=i.min(j) {
        let t = g.f[i][k].rmul(&g.h[k]).rmul(&g.e[k][j]);
        reduced = reduced.radd(&t);
    }
    let equal = value == reduced;
    Ok(PsiImage { value, reduced, equal })
}

/// Splits a series of (N·n)×(N·n) matrices, aux index outermost, into an
/// N×N matrix of series of n×n blocks.
pub fn to_blocks(s: &Series<Mat>, n: usize) -> RMatrix<Series<Mat>> {
    let big = s.coeff(0).nrows();
    let k = big / n;
    let layers: Vec<RMatrix<Mat>> = s.coeffs().iter().map(|c| reblock(c, k, n)).collect();
    (0..k)
        .map(|i| (0..k).map(|j| Series::new(s.dir(), layers.iter().map(|l| l[i][j].clone()).collect())).collect())
        .collect()
}

pub fn from_blocks(b: &[Vec<Series<Mat>>]) -> Series<Mat> {
    let dir = b[0][0].dir();
    let coeffs = (0..=b[0][0].order())
        .map(|d| {
            let layer: RMatrix<Mat> = b.iter().map(|row| row.iter().map(|x| x.coeff(d).clone()).collect()).collect();
            flatten(&layer)
        })
        .collect();
    Series::new(dir, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Direction;
    use proptest::prelude::*;

    fn sc(k: i64) -> Scalar {
        Scalar::int(k)
    }

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Mat {
        SparseMat::from_dense(&[vec![sc(a), sc(b)], vec![sc(c), sc(d)]])
    }

    #[test]
    fn one_by_one() {
        let a = vec![vec![Scalar::u()]];
        assert_eq!(quasideterminant(&a, 0, 0).unwrap(), Scalar::u());
    }

    #[test]
    fn two_by_two_commutative() {
        let a = vec![vec![Scalar::u(), Scalar::v()], vec![Scalar::q(), sc(3)]];
        let expect = sc(3).sub(&Scalar::q().mul(&Scalar::v()).div(&Scalar::u()).unwrap());
        assert_eq!(quasideterminant(&a, 1, 1).unwrap(), expect);
        let g = gauss_decompose(&a).unwrap();
        assert_eq!(g.h[1], expect);
        assert_eq!(g.e[0][1], Scalar::v().div(&Scalar::u()).unwrap());
        assert_eq!(g.f[1][0], Scalar::q().div(&Scalar::u()).unwrap());
    }

    #[test]
    fn block_entries_against_block_lu() {
        // A = [[P, Q], [R, S]] with 2×2 integer blocks; the Schur complement
        // S − R P⁻¹ Q computed from explicit inverses by hand.
        let p = m2(2, 1, 1, 1);
        let q = m2(0, 1, 3, 0);
        let r = m2(1, 0, 2, 1);
        let s = m2(4, 1, 0, 5);
        // P⁻¹ = [[1, −1], [−1, 2]]; R P⁻¹ = [[1, −1], [1, 0]]; R P⁻¹ Q = [[−3, 1], [0, 1]].
        let expect = m2(7, 0, 0, 4);
        let a = vec![vec![p.clone(), q.clone()], vec![r.clone(), s]];
        assert_eq!(quasideterminant(&a, 1, 1).unwrap(), expect);
        let g = gauss_decompose(&a).unwrap();
        assert_eq!(g.h[1], expect);
        g.check_reassembly(&a).unwrap();
        // Noncommutative: e = P⁻¹Q and f = R P⁻¹, not the other order.
        assert_eq!(g.e[0][1], m2(-3, 1, 6, -1));
        assert_eq!(g.f[1][0], m2(1, -1, 1, 0));
        let gq = gauss_by_quasideterminants(&a).unwrap();
        compare_factors(&g, &gq).unwrap();
    }

    #[test]
    fn singular_block_is_reported() {
        let a = vec![vec![sc(0), sc(1)], vec![sc(1), sc(1)]];
        assert_eq!(gauss_decompose(&a), Err(QError::LeadingBlock(0)));
        let b = vec![vec![sc(1), sc(2), sc(0)], vec![sc(2), sc(4), sc(1)], vec![sc(0), sc(1), sc(1)]];
        assert!(matches!(quasideterminant(&b, 2, 2), Err(QError::Singular(_))));
        assert!(quasideterminant(&b, 1, 2).is_ok());
    }

    #[test]
    fn diagonal_input() {
        let a = vec![
            vec![Scalar::u(), sc(0), sc(0)],
            vec![sc(0), Scalar::q(), sc(0)],
            vec![sc(0), sc(0), sc(5)],
        ];
        let g = gauss_decompose(&a).unwrap();
        g.check_shape().unwrap();
        assert_eq!(g.h, vec![Scalar::u(), Scalar::q(), sc(5)]);
        assert!(g.f.iter().flatten().filter(|x| !x.is_zero()).count() == 3);
    }

    #[test]
    fn series_blocks_roundtrip_and_psi() {
        // Random-ish 3×3 aux matrix of 2×2 series with invertible constant term.
        let mk = |seed: i64, diag: bool| {
            let c0 = if diag { m2(1 + seed, 1, 0, 2) } else { m2(seed, 0, 1, -seed) };
            Series::new(Direction::AtZero, vec![c0, m2(seed, 1, -1, 2), m2(0, seed, 1, 1)])
        };
        let a: RMatrix<Series<Mat>> = (0..3).map(|i| (0..3).map(|j| mk((i * 3 + j) as i64, i == j)).collect()).collect();
        let back = to_blocks(&from_blocks(&a), 2);
        assert_eq!(back, a);
        let g = gauss_decompose(&a).unwrap();
        g.check_shape().unwrap();
        g.check_reassembly(&a).unwrap();
        compare_factors(&g, &gauss_by_quasideterminants(&a).unwrap()).unwrap();
        let p = psi_image(&a, &g, 1, 1, 1).unwrap();
        assert!(p.equal);
        assert_eq!(p.value, g.h[1]);
        let p0 = psi_image(&a, &g, 0, 2, 1).unwrap();
        assert!(p0.equal);
        assert_eq!(p0.value, a[2][1]);
    }

    fn det3(a: &[Vec<Scalar>]) -> Scalar {
        let t = |i: usize, j: usize, k: usize| a[0][i].mul(&a[1][j]).mul(&a[2][k]);
        t(0, 1, 2).add(&t(1, 2, 0)).add(&t(2, 0, 1)).sub(&t(2, 1, 0)).sub(&t(0, 2, 1)).sub(&t(1, 0, 2))
    }

    fn rat_matrix() -> impl Strategy<Value = RMatrix<Scalar>> {
        prop::collection::vec((-6i64..7, 1i64..4), 9)
            .prop_map(|v| v.chunks(3).map(|r| r.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect()).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn product_of_h_is_determinant(a in rat_matrix()) {
            if let Ok(g) = gauss_decompose(&a) {
                let prod = g.h.iter().fold(Scalar::one(), |acc, x| acc.mul(x));
                prop_assert_eq!(prod, det3(&a));
                prop_assert!(g.check_reassembly(&a).is_ok());
                prop_assert!(compare_factors(&g, &gauss_by_quasideterminants(&a).unwrap()).is_ok());
            }
        }

        #[test]
        fn perturbing_f_breaks_the_product(a in rat_matrix(), pick in 0usize..3, d in 1i64..5) {
            if let Ok(g) = gauss_decompose(&a) {
                let (i, j) = [(1, 0), (2, 0), (2, 1)][pick];
                let mut g2 = g.clone();
                g2.f[i][j] = g2.f[i][j].add(&sc(d));
                // The product changes exactly when h_j E row j is nonzero, which it is
                // since E has a one at (j, j) and h_j is invertible.
                prop_assert!(g2.check_reassembly(&a).is_err());
            }
        }
    }
}
