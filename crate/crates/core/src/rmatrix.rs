//! The matrices P, Q, R, the rational R-matrix R̄(u) (with u as the spectral
//! variable) and the series R(u) = g(u)R̄(u), with their identities.

use crate::liedata::{AlgType, AlgebraData};
use crate::poly::{Poly, U};
use crate::report::SuiteReport;
use crate::ring::Ring;
use crate::scalars::Scalar;
use crate::series::{expand, g_series, f_series, Direction, Series, SeriesError};
use crate::tensor::{Mat, SparseMat};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RError {
    #[error("R-bar constructions differ at entry ({row},{col}): {a} vs {b}")]
    CrossCheck { row: usize, col: usize, a: String, b: String },
    #[error("N = {n} exceeds the configured bound {max} for cubic-size checks")]
    Resource { n: usize, max: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Index of e_a ⊗ e_b in ℂ^N ⊗ ℂ^N.
fn ix(n: usize, a: usize, b: usize) -> usize {
    a * n + b
}

pub fn p_matrix(alg: &AlgebraData) -> Mat {
    let n = alg.dim;
    let mut e = Vec::new();
    for i in 0..n {
        for j in 0..n {
            e.push((ix(n, i, j), ix(n, j, i), Scalar::one()));
        }
    }
    SparseMat::from_entries(n * n, n * n, e)
}

/// Q = Σ q^{ī−j̄} e_{i′j′} ⊗ e_ij.
pub fn q_matrix(alg: &AlgebraData) -> Mat {
    let n = alg.dim;
    let mut e = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = Scalar::q_half(alg.bars[i] - alg.bars[j]);
            e.push((ix(n, alg.prime(i), i), ix(n, alg.prime(j), j), c));
        }
    }
    SparseMat::from_entries(n * n, n * n, e)
}

pub fn r_matrix(alg: &AlgebraData) -> Mat {
    let n = alg.dim;
    let q = Scalar::q();
    let qinv = Scalar::q_pow(-1);
    let d = q.sub(&qinv);
    let mut e = Vec::new();
    for i in 0..n {
        let ip = alg.prime(i);
        if i != ip {
            e.push((ix(n, i, i), ix(n, i, i), q.clone()));
            e.push((ix(n, i, ip), ix(n, i, ip), qinv.clone()));
        } else if alg.typ == AlgType::B {
            e.push((ix(n, i, i), ix(n, i, i), Scalar::one()));
        }
        for j in 0..n {
            if j != i && j != ip {
                e.push((ix(n, i, j), ix(n, i, j), Scalar::one()));
            }
            if i < j {
                e.push((ix(n, i, j), ix(n, j, i), d.clone()));
            }
            if i > j {
                let c = d.mul(&Scalar::q_half(alg.bars[i] - alg.bars[j])).neg();
                e.push((ix(n, alg.prime(i), i), ix(n, alg.prime(j), j), c));
            }
        }
    }
    SparseMat::from_entries(n * n, n * n, e)
}

/// R̄(u) assembled from P, Q and R.
pub fn rbar_from_pqr(alg: &AlgebraData, p: &Mat, q: &Mat, r: &Mat) -> Mat {
    let u = Scalar::u();
    let one = Scalar::one();
    let qq = Scalar::q();
    let dq = qq.sub(&Scalar::q_pow(-1));
    let den = u.mul(&qq).sub(&Scalar::q_pow(-1));
    let den2 = den.mul(&u.sub(&alg.xi));
    let cr = u.sub(&one).div(&den).expect("nonzero");
    let cp = dq.div(&den).expect("nonzero");
    let cq = dq.mul(&u.sub(&one)).mul(&alg.xi).div(&den2).expect("nonzero").neg();
    r.scale(&cr).add(&p.scale(&cp)).add(&q.scale(&cq))
}

/// The a_ij(u) table, 0-based indices.
pub fn a_entry(alg: &AlgebraData, i: usize, j: usize) -> Scalar {
    let u = Scalar::u();
    let one = Scalar::one();
    let xi = &alg.xi;
    let q2m = Scalar::q_pow(-2);
    let c = q2m.sub(&one);
    let delta = if i == alg.prime(j) { u.sub(xi) } else { Scalar::zero() };
    let qb = Scalar::q_half(alg.bars[i] - alg.bars[j]);
    if i == j && i != alg.prime(i) {
        q2m.mul(&u).sub(xi).mul(&u.sub(&one))
    } else if i == j {
        Scalar::q_pow(-1)
            .mul(&u.sub(xi))
            .mul(&u.sub(&one))
            .add(&xi.sub(&one).mul(&c).mul(&u))
    } else if i < j {
        c.mul(&qb.mul(xi).mul(&u.sub(&one)).sub(&delta))
    } else {
        c.mul(&u).mul(&qb.mul(&u.sub(&one)).sub(&delta))
    }
}

/// R̄(u) from the explicit entry table.
pub fn rbar_from_table(alg: &AlgebraData) -> Mat {
    let n = alg.dim;
    let u = Scalar::u();
    let one = Scalar::one();
    let qq = Scalar::q();
    let dq = qq.sub(&Scalar::q_pow(-1));
    let den = qq.mul(&u).sub(&Scalar::q_pow(-1));
    let c_diag = u.sub(&one).div(&den).expect("nonzero");
    let c_low = dq.div(&den).expect("nonzero");
    let c_up = dq.mul(&u).div(&den).expect("nonzero");
    let c_a = Scalar::one()
        .div(&u.sub(&Scalar::q_pow(-2)).mul(&u.sub(&alg.xi)))
        .expect("nonzero");
    let mut e = Vec::new();
    for i in 0..n {
        let ip = alg.prime(i);
        if i != ip {
            e.push((ix(n, i, i), ix(n, i, i), one.clone()));
        }
        for j in 0..n {
            let jp = alg.prime(j);
            if i != j && i != jp {
                e.push((ix(n, i, j), ix(n, i, j), c_diag.clone()));
            }
            if i > j && i != jp {
                e.push((ix(n, i, j), ix(n, j, i), c_low.clone()));
            }
            if i < j && i != jp {
                e.push((ix(n, i, j), ix(n, j, i), c_up.clone()));
            }
            e.push((ix(n, alg.prime(i), i), ix(n, jp, j), c_a.mul(&a_entry(alg, i, j))));
        }
    }
    SparseMat::from_entries(n * n, n * n, e)
}

/// Swaps the two tensor factors: X ↦ P X P.
pub fn flip(m: &Mat, n: usize) -> Mat {
    let e = m
        .entries()
        .map(|(r, c, x)| (ix(n, r % n, r / n), ix(n, c % n, c / n), x.clone()))
        .collect();
    SparseMat::from_entries(n * n, n * n, e)
}

/// D = diag(q^{bar_i}).
pub fn dmat(alg: &AlgebraData) -> Mat {
    Mat::diag((0..alg.dim).map(|i| alg.qbar(i)).collect())
}

/// The crossing scalar (u − q²)(uξ − 1)/((1 − u)(1 − uξq²)).
pub fn crossing_scalar(alg: &AlgebraData) -> Scalar {
    let u = Scalar::u();
    let one = Scalar::one();
    let uxi = u.mul(&alg.xi);
    let num = u.sub(&Scalar::q_pow(2)).mul(&uxi.sub(&one));
    let den = one.sub(&u).mul(&one.sub(&uxi.mul(&Scalar::q_pow(2))));
    num.div(&den).expect("nonzero")
}

/// A matrix of rational functions in u expanded entrywise.
pub fn expand_matrix(m: &Mat, dir: Direction, order: usize) -> Result<Series<Mat>, SeriesError> {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut coeffs: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); order + 1];
    for (i, j, x) in m.entries() {
        let s = expand(x, dir, order)?;
        for (k, c) in s.coeffs().iter().enumerate() {
            if !c.is_zero() {
                coeffs[k].push((i, j, c.clone()));
            }
        }
    }
    Ok(Series::new(dir, coeffs.into_iter().map(|e| SparseMat::from_entries(nr, nc, e)).collect()))
}

/// Product of a scalar series with a matrix series.
pub fn scalar_times(c: &Series<Scalar>, m: &Series<Mat>) -> Series<Mat> {
    let order = c.order().min(m.order());
    let z = m.coeff(0).zero_like();
    let mut out = vec![z; order + 1];
    for (k, slot) in out.iter_mut().enumerate() {
        for j in 0..=k {
            if c.coeff(j).is_zero() {
                continue;
            }
            *slot = slot.add(&m.coeff(k - j).scale(c.coeff(j)));
        }
    }
    Series::new(m.dir(), out)
}

#[derive(Clone, Debug)]
pub struct RCatalog {
    pub alg: AlgebraData,
    pub p: Mat,
    pub q: Mat,
    pub r: Mat,
    pub rbar: Mat,
    /// R(u) at zero, from the f(u)-prefactor formula.
    pub rseries: Series<Mat>,
    pub order: usize,
}

impl RCatalog {
    pub fn build(alg: &AlgebraData, order: usize) -> Result<RCatalog, RError> {
        let p = p_matrix(alg);
        let q = q_matrix(alg);
        let r = r_matrix(alg);
        let rbar = rbar_from_pqr(alg, &p, &q, &r);
        let table = rbar_from_table(alg);
        if rbar != table {
            let diff = rbar.sub(&table);
            let (row, col, _) = diff.first_entry().expect("nonzero difference");
            let zero = Scalar::zero();
            return Err(RError::CrossCheck {
                row,
                col,
                a: rbar.get(row, col).unwrap_or(&zero).to_string(),
                b: table.get(row, col).unwrap_or(&zero).to_string(),
            });
        }
        let rseries = r_series(alg, &p, &q, &r, order)?;
        // R(u) = g(u)R̄(u) to the truncation order.
        let g = g_series(alg, order)?;
        let grbar = scalar_times(&g, &expand_matrix(&rbar, Direction::AtZero, order)?);
        if grbar != rseries {
            let k = (0..=order).find(|&k| grbar.coeff(k) != rseries.coeff(k)).unwrap_or(0);
            let diff = grbar.coeff(k).sub(rseries.coeff(k));
            let (row, col, x) = diff.first_entry().expect("nonzero difference");
            return Err(RError::CrossCheck { row, col, a: format!("u^{k} coefficient"), b: x.to_string() });
        }
        Ok(RCatalog { alg: alg.clone(), p, q, r, rbar, rseries, order })
    }

    /// R̄ evaluated at a Laurent monomial in u, v: u ↦ s^a u^b v^c.
    pub fn rbar_at(&self, e: [i64; 3]) -> Mat {
        self.rbar.subst(U, e)
    }
}

/// R(u) = f(u)(q⁻¹(u−1)(u−ξ)R − (q⁻²−1)(u−ξ)P + (q⁻²−1)(u−1)ξQ).
pub fn r_series(alg: &AlgebraData, p: &Mat, q: &Mat, r: &Mat, order: usize) -> Result<Series<Mat>, SeriesError> {
    let u = Scalar::u();
    let one = Scalar::one();
    let c = Scalar::q_pow(-2).sub(&one);
    let poly = r
        .scale(&Scalar::q_pow(-1).mul(&u.sub(&one)).mul(&u.sub(&alg.xi)))
        .sub(&p.scale(&c.mul(&u.sub(&alg.xi))))
        .add(&q.scale(&c.mul(&u.sub(&one)).mul(&alg.xi)));
    let f = f_series(alg, order)?;
    Ok(scalar_times(&f, &expand_matrix(&poly, Direction::AtZero, order)?))
}

/// Clears the scalar denominators of R̄: N(u) = (qu − q⁻¹)(u − ξ)·s^k·R̄(u)
/// has entries in ℤ[s, u].
fn rbar_numerator(cat: &RCatalog) -> SparseMat<Poly> {
    let alg = &cat.alg;
    let den = Scalar::q().mul(&Scalar::u()).sub(&Scalar::q_pow(-1)).mul(&Scalar::u().sub(&alg.xi));
    let m = cat.rbar.scale(&den);
    let mut shift = 0u32;
    for (_, _, x) in m.entries() {
        let (_, _, d) = x.parts();
        assert!(d.is_term() && x.is_w_free(), "R-bar numerator must have monomial denominators");
        shift = shift.max(d.lt().0.exp(crate::poly::S));
    }
    let e = m
        .entries()
        .map(|(i, j, x)| {
            let (a, _, d) = x.parts();
            let k = shift - d.lt().0.exp(crate::poly::S);
            let p = a.mul_term(crate::poly::Mono::var(crate::poly::S, k), &crate::int::Int::ONE);
            let p = p.div_int(d.lc()).expect("unit denominator coefficient");
            (i, j, p)
        })
        .collect();
    SparseMat::from_entries(m.nrows(), m.ncols(), e)
}

fn subst_poly(m: &SparseMat<Poly>, e: [i64; 3]) -> SparseMat<Poly> {
    m.map(|p| {
        let (r, mono) = p.subst_laurent(U, e);
        assert!(mono.deg() == 0, "substitution must stay polynomial");
        r
    })
}

fn poly_witness(m: &SparseMat<Poly>) -> String {
    match m.first_entry() {
        None => "none".into(),
        Some((i, j, x)) => format!("entry ({i},{j}) = {x}"),
    }
}

pub fn max_n_from_env() -> usize {
    std::env::var("QAV_MAX_N").ok().and_then(|v| v.parse().ok()).unwrap_or(6)
}

/// R̄₁₂(x)R̄₁₃(xy)R̄₂₃(y) = R̄₂₃(y)R̄₁₃(xy)R̄₁₂(x) with x = u and y = v.
pub fn check_ybe(cat: &RCatalog, max_n: usize) -> Result<SuiteReport, RError> {
    let alg = &cat.alg;
    let n = alg.dim;
    if n > max_n {
        return Err(RError::Resource { n, max: max_n });
    }
    let mut rep = SuiteReport::new("ybe", &alg.name());
    rep.convention(
        "checked for R-bar with denominators cleared; R(u) = g(u)R-bar(u) satisfies the same identity since scalar prefactors cancel",
    );
    let num = rbar_numerator(cat);
    let nx = num.clone();
    let nxy = subst_poly(&num, [0, 1, 1]);
    let ny = subst_poly(&num, [0, 0, 1]);
    let e = |m: &SparseMat<Poly>, l| m.embed_leg(l, n).expect("square operator");
    let (a12, a13, a23) = (e(&nx, (1, 2)), e(&nxy, (1, 3)), e(&ny, (2, 3)));
    let lhs = a12.mul(&a13).mul(&a23);
    let rhs = a23.mul(&a13).mul(&a12);
    let diff = lhs.sub(&rhs);
    if diff.is_zero() {
        rep.pass(format!("YBE {}x{}", n * n * n, n * n * n));
    } else {
        rep.fail(format!("YBE {}x{}", n * n * n, n * n * n), poly_witness(&diff));
    }
    // At y = 1 the identity reduces to P₂₃-covariance of R̄₁₂(x)R̄₁₃(x).
    let p = cat.p.map(|x| {
        let (a, _, _) = x.parts();
        a.clone()
    });
    let p23 = e(&p, (2, 3));
    let b12 = e(&nx, (1, 2));
    let b13 = e(&nx, (1, 3));
    let l1 = b12.mul(&b13).mul(&p23);
    let r1 = p23.mul(&b13).mul(&b12);
    let d1 = l1.sub(&r1);
    if d1.is_zero() {
        rep.pass("y = 1 specialization");
    } else {
        rep.fail("y = 1 specialization", poly_witness(&d1));
    }
    Ok(rep)
}

pub fn check_unitarity(cat: &RCatalog) -> SuiteReport {
    let alg = &cat.alg;
    let n = alg.dim;
    let mut rep = SuiteReport::new("unitarity", &alg.name());
    let inv = flip(&cat.rbar_at([0, -1, 0]), n);
    let prod = cat.rbar.mul(&inv);
    if prod.is_identity() {
        rep.pass("R12(u) R21(1/u) = 1");
    } else {
        let d = prod.sub(&Mat::identity(n * n));
        rep.fail("R12(u) R21(1/u) = 1", format!("{:?}", d.first_entry().map(|(i, j, x)| (i, j, x.to_string()))));
    }
    let at1 = cat.rbar_at([0, 0, 0]);
    if at1 == cat.p && cat.p.mul(&cat.p).is_identity() {
        rep.pass("R-bar(1) = P and P^2 = 1");
    } else {
        rep.fail("R-bar(1) = P and P^2 = 1", "R-bar(1) differs from P");
    }
    rep
}

pub fn check_crossing(cat: &RCatalog, order: usize) -> Result<SuiteReport, RError> {
    let alg = &cat.alg;
    let n = alg.dim;
    let mut rep = SuiteReport::new("crossing", &alg.name()).with_order(order);
    let d1 = dmat(alg).kron(&Mat::identity(n));
    let d1inv = dmat(alg).inverse().expect("diagonal").kron(&Mat::identity(n));
    let xi_exp = 2 * (2 - n as i64);
    let shifted = cat.rbar_at([xi_exp, 1, 0]).transpose_t1(n).expect("square");
    let prod = cat.rbar.mul(&d1).mul(&shifted).mul(&d1inv);
    let want = crossing_scalar(alg);
    match prod.scalar_multiple() {
        Some(c) if c == want => rep.pass(format!("R-bar crossing scalar {c}")),
        Some(c) => rep.fail("R-bar crossing scalar", format!("got {c}, expected {want}")),
        None => rep.fail("R-bar crossing scalar", "product is not a scalar matrix"),
    }
    // Series version from the f-prefactor formula of R(u).
    let rs = if order <= cat.order { cat.rseries.truncate(order) } else {
        r_series(alg, &cat.p, &cat.q, &cat.r, order)?
    };
    let rs_xi = rs.scale_var(&alg.xi).map(|m| m.transpose_t1(n).expect("square"));
    let d1s = Series::constant(Direction::AtZero, d1, order);
    let d1inv_s = Series::constant(Direction::AtZero, d1inv, order);
    let prod = rs.rmul(&d1s).rmul(&rs_xi).rmul(&d1inv_s);
    let want0 = alg.xi.pow(2).mul(&Scalar::q_pow(-2));
    let mut bad = None;
    for k in 0..=order {
        let want = if k == 0 { want0.clone() } else { Scalar::zero() };
        match prod.coeff(k).scalar_multiple() {
            Some(c) if c == want => {}
            Some(c) => {
                bad = Some(format!("u^{k}: scalar {c}, expected {want}"));
                break;
            }
            None => {
                bad = Some(format!("u^{k}: not a scalar matrix"));
                break;
            }
        }
    }
    match bad {
        None => rep.pass(format!("R crossing scalar xi^2 q^-2 = {want0} through order {order}")),
        Some(w) => rep.fail("R crossing scalar", w),
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(t: AlgType, n: usize) -> RCatalog {
        RCatalog::build(&AlgebraData::new(t, n).unwrap(), 3).unwrap()
    }

    #[test]
    fn rbar_at_one_is_p() {
        for (t, n) in [(AlgType::B, 1), (AlgType::D, 2), (AlgType::B, 2)] {
            let c = cat(t, n);
            assert_eq!(c.rbar_at([0, 0, 0]), c.p);
        }
    }

    #[test]
    fn a_table_generic_diagonal() {
        let alg = AlgebraData::new(AlgType::D, 2).unwrap();
        let u = Scalar::u();
        let want = Scalar::q_pow(-2).mul(&u).sub(&alg.xi).mul(&u.sub(&Scalar::one()));
        assert_eq!(a_entry(&alg, 0, 0), want);
    }

    #[test]
    fn q_squared_is_proportional_to_q() {
        // Q is the rank-one operator |x⟩⟨y| with x = Σ q^{bar i} e_{i′}⊗e_i and
        // y = Σ q^{−bar j} e_{j′}⊗e_j, so Q² = ⟨y|x⟩Q and ⟨y|x⟩ = N.
        for (t, n) in [(AlgType::B, 1), (AlgType::D, 2), (AlgType::B, 2)] {
            let alg = AlgebraData::new(t, n).unwrap();
            let q = q_matrix(&alg);
            let pairing = (0..alg.dim).fold(Scalar::zero(), |acc, i| {
                acc.add(&Scalar::q_half(alg.bars[i]).mul(&Scalar::q_half(-alg.bars[i])))
            });
            assert_eq!(pairing, Scalar::int(alg.dim as i64));
            assert_eq!(q.mul(&q), q.scale(&pairing));
        }
    }

    #[test]
    fn small_identities() {
        let c = cat(AlgType::B, 1);
        assert!(check_ybe(&c, 6).unwrap().passed());
        assert!(check_unitarity(&c).passed());
        assert!(check_crossing(&c, 3).unwrap().passed());
        let big = cat(AlgType::B, 3);
        assert!(matches!(check_ybe(&big, 6), Err(RError::Resource { .. })));
    }
}
