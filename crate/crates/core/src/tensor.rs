//! Sparse exact matrices over a coefficient ring, Kronecker products and leg
//! embeddings into V^{⊗3}. Basis of ℂ^N ⊗ ℂ^N is ordered with the first
//! factor most significant: index (i, a) ↦ i·N + a.

use crate::ring::{Algebra, Ring};
use crate::scalars::Scalar;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("singular matrix: no pivot in column {col} (row {row} onward)")]
    Singular { row: usize, col: usize },
}

/// Rows are stored as column-sorted lists without zero entries.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMat<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Ring> SparseMat<T> {
    pub fn zero(nrows: usize, ncols: usize) -> SparseMat<T> {
        SparseMat { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity_with(n: usize, one: &T) -> SparseMat<T> {
        SparseMat { nrows: n, ncols: n, rows: (0..n).map(|i| vec![(i, one.clone())]).collect() }
    }

    /// Duplicates are summed; zeros are dropped.
    pub fn from_entries(nrows: usize, ncols: usize, entries: Vec<(usize, usize, T)>) -> SparseMat<T> {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); nrows];
        for (i, j, x) in entries {
            assert!(i < nrows && j < ncols, "entry ({i},{j}) outside {nrows}x{ncols}");
            rows[i].push((j, x));
        }
        for r in rows.iter_mut() {
            r.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, T)> = Vec::with_capacity(r.len());
            for (j, x) in r.drain(..) {
                match merged.last_mut() {
                    Some((lj, lx)) if *lj == j => *lx = lx.radd(&x),
                    _ => merged.push((j, x)),
                }
            }
            merged.retain(|(_, x)| !x.is_zero());
            *r = merged;
        }
        SparseMat { nrows, ncols, rows }
    }

    pub fn from_dense(d: &[Vec<T>]) -> SparseMat<T> {
        let nrows = d.len();
        let ncols = if nrows == 0 { 0 } else { d[0].len() };
        let rows = d
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect())
            .collect();
        SparseMat { nrows, ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        self.rows[i].binary_search_by_key(&j, |e| e.0).ok().map(|k| &self.rows[i][k].1)
    }

    /// All entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn first_entry(&self) -> Option<(usize, usize, &T)> {
        self.entries().next()
    }

    pub fn map<R: Ring>(&self, f: impl Fn(&T) -> R + Sync) -> SparseMat<R>
    where
        T: Sync,
    {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, x)| (*j, f(x))).filter(|(_, y)| !y.is_zero()).collect())
            .collect();
        SparseMat { nrows: self.nrows, ncols: self.ncols, rows }
    }

    fn check_same(&self, o: &SparseMat<T>) -> Result<(), MatError> {
        if self.nrows != o.nrows || self.ncols != o.ncols {
            return Err(MatError::Dim(format!(
                "{}x{} vs {}x{}",
                self.nrows, self.ncols, o.nrows, o.ncols
            )));
        }
        Ok(())
    }

    fn merge(&self, o: &SparseMat<T>, neg: bool) -> SparseMat<T> {
        let rows = self
            .rows
            .iter()
            .zip(o.rows.iter())
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                        out.push(a[i].clone());
                        i += 1;
                    } else if i == a.len() || b[j].0 < a[i].0 {
                        let y = if neg { b[j].1.rneg() } else { b[j].1.clone() };
                        out.push((b[j].0, y));
                        j += 1;
                    } else {
                        let s = if neg { a[i].1.rsub(&b[j].1) } else { a[i].1.radd(&b[j].1) };
                        if !s.is_zero() {
                            out.push((a[i].0, s));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                out
            })
            .collect();
        SparseMat { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn try_add(&self, o: &SparseMat<T>) -> Result<SparseMat<T>, MatError> {
        self.check_same(o)?;
        Ok(self.merge(o, false))
    }

    pub fn try_sub(&self, o: &SparseMat<T>) -> Result<SparseMat<T>, MatError> {
        self.check_same(o)?;
        Ok(self.merge(o, true))
    }

    pub fn neg(&self) -> SparseMat<T> {
        let rows = self.rows.iter().map(|r| r.iter().map(|(j, x)| (*j, x.rneg())).collect()).collect();
        SparseMat { nrows: self.nrows, ncols: self.ncols, rows }
    }

    fn mul_row(&self, a: &[(usize, T)], o: &SparseMat<T>) -> Vec<(usize, T)> {
        let mut acc: Vec<Option<T>> = vec![None; o.ncols];
        let mut touched: Vec<usize> = Vec::new();
        for (k, x) in a {
            for (j, y) in &o.rows[*k] {
                let p = x.rmul(y);
                match &mut acc[*j] {
                    Some(s) => *s = s.radd(&p),
                    slot => {
                        *slot = Some(p);
                        touched.push(*j);
                    }
                }
            }
        }
        touched.sort_unstable();
        touched
            .into_iter()
            .filter_map(|j| acc[j].take().filter(|x| !x.is_zero()).map(|x| (j, x)))
            .collect()
    }

    pub fn try_mul(&self, o: &SparseMat<T>) -> Result<SparseMat<T>, MatError> {
        if self.ncols != o.nrows {
            return Err(MatError::Dim(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, o.nrows, o.ncols
            )));
        }
        let rows: Vec<Vec<(usize, T)>> = if self.nnz() > 256 {
            self.rows.par_iter().map(|a| self.mul_row(a, o)).collect()
        } else {
            self.rows.iter().map(|a| self.mul_row(a, o)).collect()
        };
        Ok(SparseMat { nrows: self.nrows, ncols: o.ncols, rows })
    }

    pub fn mul(&self, o: &SparseMat<T>) -> SparseMat<T> {
        self.try_mul(o).expect("matrix product")
    }

    pub fn add(&self, o: &SparseMat<T>) -> SparseMat<T> {
        self.try_add(o).expect("matrix sum")
    }

    pub fn sub(&self, o: &SparseMat<T>) -> SparseMat<T> {
        self.try_sub(o).expect("matrix difference")
    }

    /// Left multiplication of every entry by a ring element.
    pub fn lmul_entries(&self, c: &T) -> SparseMat<T> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, x)| (*j, c.rmul(x))).filter(|(_, y)| !y.is_zero()).collect())
            .collect();
        SparseMat { nrows: self.nrows, ncols: self.ncols, rows }
    }

    /// Plain transpose.
    pub fn transpose(&self) -> SparseMat<T> {
        let mut e = Vec::with_capacity(self.nnz());
        for (i, j, x) in self.entries() {
            e.push((j, i, x.clone()));
        }
        SparseMat::from_entries(self.ncols, self.nrows, e)
    }

    /// Kronecker product with the first factor most significant.
    pub fn kron(&self, o: &SparseMat<T>) -> SparseMat<T> {
        let (nr, nc) = (self.nrows * o.nrows, self.ncols * o.ncols);
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); nr];
        for i in 0..self.nrows {
            for a in 0..o.nrows {
                let r = &mut rows[i * o.nrows + a];
                for (j, x) in &self.rows[i] {
                    for (b, y) in &o.rows[a] {
                        let p = x.rmul(y);
                        if !p.is_zero() {
                            r.push((j * o.ncols + b, p));
                        }
                    }
                }
            }
        }
        SparseMat { nrows: nr, ncols: nc, rows }
    }

    /// The weighted transposition e_ij ↦ e_{j′i′} on an N×N matrix.
    pub fn transpose_t(&self) -> Result<SparseMat<T>, MatError> {
        if self.nrows != self.ncols {
            return Err(MatError::Dim("transpose_t needs a square matrix".into()));
        }
        let n = self.nrows;
        let e = self.entries().map(|(i, j, x)| (n - 1 - j, n - 1 - i, x.clone())).collect();
        Ok(SparseMat::from_entries(n, n, e))
    }

    /// Applies e_ij ↦ e_{j′i′} to the first factor of an operator on ℂ^N ⊗ ℂ^N.
    pub fn transpose_t1(&self, n: usize) -> Result<SparseMat<T>, MatError> {
        self.partial_t(n, true, false)
    }

    /// The transposition applied to both tensor factors.
    pub fn transpose_t12(&self, n: usize) -> Result<SparseMat<T>, MatError> {
        self.partial_t(n, true, true)
    }

    fn partial_t(&self, n: usize, first: bool, second: bool) -> Result<SparseMat<T>, MatError> {
        if self.nrows != n * n || self.ncols != n * n {
            return Err(MatError::Dim(format!("expected {}x{}", n * n, n * n)));
        }
        let e = self
            .entries()
            .map(|(r, c, x)| {
                let (i, a, j, b) = (r / n, r % n, c / n, c % n);
                let (i, j) = if first { (n - 1 - j, n - 1 - i) } else { (i, j) };
                let (a, b) = if second { (n - 1 - b, n - 1 - a) } else { (a, b) };
                (i * n + a, j * n + b, x.clone())
            })
            .collect();
        Ok(SparseMat::from_entries(n * n, n * n, e))
    }
}

impl<T: Ring> SparseMat<T> {
    /// Places an operator on (ℂ^N)^{⊗2} onto the ordered legs `legs` of
    /// (ℂ^N)^{⊗3}: its first factor acts on leg `legs.0`, its second on
    /// `legs.1` (legs are numbered 1, 2, 3).
    pub fn embed_leg(&self, legs: (usize, usize), n: usize) -> Result<SparseMat<T>, MatError> {
        let (a, b) = legs;
        if self.nrows != n * n || self.ncols != n * n {
            return Err(MatError::Dim(format!("operator must be {}x{}", n * n, n * n)));
        }
        if a == b || !(1..=3).contains(&a) || !(1..=3).contains(&b) {
            return Err(MatError::Dim(format!("invalid legs ({a},{b})")));
        }
        let other = 6 - a - b;
        let place = |x: usize, y: usize, z: usize| {
            let mut idx = [0usize; 3];
            idx[a - 1] = x;
            idx[b - 1] = y;
            idx[other - 1] = z;
            (idx[0] * n + idx[1]) * n + idx[2]
        };
        let mut e = Vec::with_capacity(self.nnz() * n);
        for (r, c, x) in self.entries() {
            for k in 0..n {
                e.push((place(r / n, r % n, k), place(c / n, c % n, k), x.clone()));
            }
        }
        Ok(SparseMat::from_entries(n * n * n, n * n * n, e))
    }
}

impl<T: Algebra> SparseMat<T> {
    pub fn scale(&self, c: &Scalar) -> SparseMat<T> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, x)| (*j, x.scale(c))).filter(|(_, y)| !y.is_zero()).collect())
            .collect();
        SparseMat { nrows: self.nrows, ncols: self.ncols, rows }
    }
}

pub type Mat = SparseMat<Scalar>;

impl SparseMat<Scalar> {
    pub fn identity(n: usize) -> Mat {
        SparseMat::identity_with(n, &Scalar::one())
    }

    pub fn diag(d: Vec<Scalar>) -> Mat {
        let n = d.len();
        SparseMat::from_entries(n, n, d.into_iter().enumerate().map(|(i, x)| (i, i, x)).collect())
    }

    /// Matrix unit e_ij (0-based) of size n.
    pub fn unit(n: usize, i: usize, j: usize) -> Mat {
        SparseMat::from_entries(n, n, vec![(i, j, Scalar::one())])
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols
            && self.rows.iter().enumerate().all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    /// `Some(c)` when the matrix equals c·1.
    pub fn scalar_multiple(&self) -> Option<Scalar> {
        if self.nrows != self.ncols {
            return None;
        }
        let c = match self.rows.first().and_then(|r| r.first()) {
            None => return if self.is_zero() { Some(Scalar::zero()) } else { None },
            Some((0, c)) => c.clone(),
            Some(_) => return None,
        };
        for (i, r) in self.rows.iter().enumerate() {
            if r.len() != 1 || r[0].0 != i || r[0].1 != c {
                return None;
            }
        }
        Some(c)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![Scalar::zero(); self.ncols]; self.nrows];
        for (i, j, x) in self.entries() {
            d[i][j] = x.clone();
        }
        d
    }

    /// Exact inverse by Gauss–Jordan elimination over the field.
    pub fn inverse(&self) -> Result<Mat, MatError> {
        if self.nrows != self.ncols {
            return Err(MatError::Dim("inverse of a non-square matrix".into()));
        }
        let inv = dense_inverse(&self.to_dense())?;
        Ok(SparseMat::from_dense(&inv))
    }

    /// Substitutes a Laurent monomial for u or v in every entry.
    pub fn subst(&self, var: usize, e: [i64; 3]) -> Mat {
        self.map(|x| x.subst(var, e))
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self.entries().map(|(i, j, x)| json!([i, j, x.to_string()])).collect();
        json!({"nrows": self.nrows, "ncols": self.ncols, "entries": entries})
    }
}

impl Ring for SparseMat<Scalar> {
    fn zero_like(&self) -> Mat {
        SparseMat::zero(self.nrows, self.ncols)
    }
    fn one_like(&self) -> Mat {
        SparseMat::identity(self.nrows)
    }
    fn is_zero(&self) -> bool {
        SparseMat::is_zero(self)
    }
    fn radd(&self, o: &Mat) -> Mat {
        self.add(o)
    }
    fn rsub(&self, o: &Mat) -> Mat {
        self.sub(o)
    }
    fn rmul(&self, o: &Mat) -> Mat {
        self.mul(o)
    }
    fn rneg(&self) -> Mat {
        self.neg()
    }
    fn try_inv(&self) -> Option<Mat> {
        self.inverse().ok()
    }
    fn is_one(&self) -> bool {
        self.is_identity()
    }
}

impl Algebra for SparseMat<Scalar> {
    fn scale(&self, c: &Scalar) -> Mat {
        SparseMat::scale(self, c)
    }
}

/// Gauss–Jordan inverse of a dense square matrix over the field.
pub fn dense_inverse(m: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, MatError> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect();
    for col in 0..n {
        // Prefer the simplest nonzero pivot to limit expression growth.
        let piv = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].to_string().len())
            .ok_or(MatError::Singular { row: col, col })?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].inv().expect("nonzero pivot");
        for j in 0..n {
            if !a[col][j].is_zero() {
                a[col][j] = a[col][j].mul(&p);
            }
            if !inv[col][j].is_zero() {
                inv[col][j] = inv[col][j].mul(&p);
            }
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                }
                if !inv[col][j].is_zero() {
                    inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
                }
            }
        }
    }
    Ok(inv)
}

/// Dense matrix product over any ring.
pub fn dense_mul<T: Ring>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            let mut acc = a[i][0].zero_like();
            for l in 0..k {
                if a[i][l].is_zero() || b[l][j].is_zero() {
                    continue;
                }
                acc = acc.radd(&a[i][l].rmul(&b[l][j]));
            }
            row.push(acc);
        }
        out.push(row);
    }
    out
}

impl<T: Ring + fmt::Display> fmt::Display for SparseMat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} matrix", self.nrows, self.ncols)?;
        for (i, j, x) in self.entries() {
            writeln!(f, "  [{i},{j}] {x}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize) -> Mat {
        let mut e = Vec::new();
        for i in 0..n {
            for j in 0..n {
                e.push((i * n + j, j * n + i, Scalar::one()));
            }
        }
        SparseMat::from_entries(n * n, n * n, e)
    }

    #[test]
    fn embed_permutations() {
        let n = 3;
        let p = perm(n);
        let p12 = p.embed_leg((1, 2), n).unwrap();
        let p13 = p.embed_leg((1, 3), n).unwrap();
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        // column e_i⊗e_j⊗e_k maps to row e_j⊗e_i⊗e_k
        assert!(p12.get(idx(1, 0, 2), idx(0, 1, 2)).unwrap().is_one());
        assert!(p13.get(idx(2, 1, 0), idx(0, 1, 2)).unwrap().is_one());
        assert!(Mat::identity(9).embed_leg((1, 2), n).unwrap().is_identity());
    }

    #[test]
    fn transpose_t_examples() {
        let m = Mat::unit(3, 0, 1);
        assert_eq!(m.transpose_t().unwrap(), Mat::unit(3, 1, 2));
        let p = perm(3);
        assert_eq!(p.transpose_t1(3).unwrap().transpose_t1(3).unwrap(), p);
    }

    #[test]
    fn diagonal_inverse() {
        let d = Mat::diag(vec![Scalar::q(), Scalar::q_pow(-1)]);
        assert_eq!(d.inverse().unwrap(), Mat::diag(vec![Scalar::q_pow(-1), Scalar::q()]));
        let z = Mat::diag(vec![Scalar::one(), Scalar::zero()]);
        assert!(matches!(z.inverse(), Err(MatError::Singular { .. })));
    }

    #[test]
    fn json_dump() {
        let v = Mat::unit(2, 0, 1).to_json();
        assert_eq!(v.to_string(), r#"{"entries":[[0,1,"1/1"]],"ncols":2,"nrows":2}"#);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small() -> impl Strategy<Value = Scalar> {
            prop_oneof![3 => Just(Scalar::zero()), 2 => (-4i64..=4, -2i64..=2).prop_map(|(c, e)| Scalar::mono(c, [e, 0, 0]))]
        }

        fn mat(r: usize, c: usize) -> impl Strategy<Value = Mat> {
            prop::collection::vec(small(), r * c).prop_map(move |v| {
                let e = v.into_iter().enumerate().map(|(k, x)| (k / c, k % c, x)).collect();
                SparseMat::from_entries(r, c, e)
            })
        }

        fn legs() -> impl Strategy<Value = (usize, usize)> {
            prop::sample::select(vec![(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)])
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn embedding_is_multiplicative(a in mat(4, 4), b in mat(4, 4), l in legs()) {
                let lhs = a.mul(&b).embed_leg(l, 2).unwrap();
                let rhs = a.embed_leg(l, 2).unwrap().mul(&b.embed_leg(l, 2).unwrap());
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn t1_is_an_involution(a in mat(9, 9), c in small()) {
                let t = a.transpose_t1(3).unwrap();
                prop_assert_eq!(t.transpose_t1(3).unwrap(), a.clone());
                prop_assert_eq!(a.scale(&c).transpose_t1(3).unwrap(), t.scale(&c));
            }

            #[test]
            fn sparse_product_matches_dense(a in mat(10, 10), b in mat(10, 10)) {
                let (da, db) = (a.to_dense(), b.to_dense());
                // Naive triple loop as the oracle.
                let mut want = vec![vec![Scalar::zero(); 10]; 10];
                for i in 0..10 {
                    for j in 0..10 {
                        for k in 0..10 {
                            want[i][j] = want[i][j].add(&da[i][k].mul(&db[k][j]));
                        }
                    }
                }
                prop_assert_eq!(a.mul(&b).to_dense(), want);
            }
        }
    }
}
