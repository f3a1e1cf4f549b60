//! Relations between the diagonal generators h_i(u) and the combined series
//! X^±_i(u) of the whole algebra, checked in the vector representation.
//!
//! X^±_i is two-sided, so these checks do not use the grid engine. An h–X
//! exchange h(u)X(v) = p(u,v)X(v)h(u) is checked coefficientwise with p
//! expanded in u/v when h is at zero and in v/u when h is at infinity, which
//! is the only expansion giving finite sums. The quadratic X–X relations have
//! polynomial prefactors and are checked as they stand.

use crate::liedata::{AlgType, AlgebraData};
use crate::poly::V;
use crate::relation::{check_relation, entry_witness, GaussPair, Kind, Pairs, Relation, Sign};
use crate::report::{SuiteReport, REPRESENTATION_CAVEAT};
use crate::scalars::Scalar;
use crate::series::{expand, Direction, Series};
use crate::tensor::Mat;
use crate::vecrep::{permutations, tuples};
use rayon::prelude::*;

/// A Laurent series in one variable, known exactly for exponents lo..=hi.
/// Outside that range it is zero on the flagged sides and unknown otherwise.
#[derive(Clone, Debug)]
pub struct Laurent {
    pub lo: i64,
    pub coeffs: Vec<Mat>,
    pub zero_below: bool,
    pub zero_above: bool,
    dim: usize,
}

impl Laurent {
    pub fn from_series(s: &Series<Mat>) -> Laurent {
        let dim = s.coeff(0).nrows();
        let k = s.order() as i64;
        match s.dir() {
            Direction::AtZero => Laurent { lo: 0, coeffs: s.coeffs().to_vec(), zero_below: true, zero_above: false, dim },
            Direction::AtInfinity => {
                let mut c = s.coeffs().to_vec();
                c.reverse();
                Laurent { lo: -k, coeffs: c, zero_below: false, zero_above: true, dim }
            }
        }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    /// The coefficient of the m-th power, or None if it is not known.
    pub fn get(&self, m: i64) -> Option<Mat> {
        if m < self.lo {
            self.zero_below.then(|| Mat::zero(self.dim, self.dim))
        } else if m > self.hi() {
            self.zero_above.then(|| Mat::zero(self.dim, self.dim))
        } else {
            Some(self.coeffs[(m - self.lo) as usize].clone())
        }
    }

    /// self − o on the range where both are known.
    pub fn sub(&self, o: &Laurent) -> Laurent {
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        let known: Vec<(i64, Mat)> =
            (lo..=hi).filter_map(|m| Some((m, self.get(m)?.sub(&o.get(m)?)))).collect();
        let first = known.first().map(|x| x.0).unwrap_or(0);
        for (t, (m, _)) in known.iter().enumerate() {
            assert_eq!(*m, first + t as i64, "known range must be contiguous");
        }
        Laurent {
            lo: first,
            coeffs: known.into_iter().map(|x| x.1).collect(),
            zero_below: self.zero_below && o.zero_below,
            zero_above: self.zero_above && o.zero_above,
            dim: self.dim,
        }
    }

    /// The series of u ↦ x(u·q^a).
    pub fn scale_arg(&self, a: i64) -> Laurent {
        let mut out = self.clone();
        for (t, c) in out.coeffs.iter_mut().enumerate() {
            let m = self.lo + t as i64;
            *c = c.scale(&Scalar::q_pow(a * m));
        }
        out
    }
}

/// X^+_i (e = true) or X^-_i (e = false) as e^+ − e^- or f^+ − f^-, with the
/// type D index pair (n−1, n+1) for i = n. Indices are 1-based.
pub fn x_series(gp: &GaussPair, typ: AlgType, n: usize, i: usize, plus: bool) -> Laurent {
    let (a, b) = if typ == AlgType::D && i == n { (n - 1, n + 1) } else { (i, i + 1) };
    let get = |s: Sign| {
        let r = if plus { gp.series(Kind::E, a, b, s) } else { gp.series(Kind::F, b, a, s) };
        Laurent::from_series(r.expect("index in range"))
    };
    get(Sign::Plus).sub(&get(Sign::Minus))
}

/// h_a(u)^{-1} h_b(u) of one sign.
pub fn h_ratio(gp: &GaussPair, a: usize, b: usize, s: Sign) -> Laurent {
    let ha = gp.series(Kind::H, a, a, s).expect("index in range");
    let hb = gp.series(Kind::H, b, b, s).expect("index in range");
    Laurent::from_series(&ha.inverse().expect("h is invertible").try_mul(hb).expect("same direction"))
}

fn witness(what: String, m: &Mat) -> String {
    format!("{what}: {}", entry_witness(m))
}

/// h(u)X(v) = p(u,v)X(v)h(u) with p homogeneous of degree 0.
pub fn check_hx(h: &Laurent, x: &Laurent, p: &Scalar) -> Result<(), String> {
    let k = (h.coeffs.len() - 1) as i64;
    let at_zero = h.zero_below;
    let dir = if at_zero { Direction::AtZero } else { Direction::AtInfinity };
    let c = expand(&p.subst(V, [0, 0, 0]), dir, k as usize).map_err(|e| e.to_string())?;
    let cells: Vec<(i64, i64)> = if at_zero {
        (0..=k).flat_map(|a| (x.lo..=x.hi() - a).map(move |b| (a, b))).collect()
    } else {
        (-k..=0).flat_map(|a| (x.lo - a..=x.hi()).map(move |b| (a, b))).collect()
    };
    cells.par_iter().try_for_each(|&(a, b)| {
        let lhs = h.get(a).unwrap().mul(&x.get(b).unwrap());
        let mut rhs = Mat::zero(lhs.nrows(), lhs.ncols());
        for j in 0..=a.abs() {
            let cj = c.coeff(j as usize);
            if cj.is_zero() {
                continue;
            }
            let (bx, ah) = if at_zero { (b + j, a - j) } else { (b - j, a + j) };
            rhs = rhs.add(&x.get(bx).unwrap().mul(&h.get(ah).unwrap()).scale(cj));
        }
        let d = lhs.sub(&rhs);
        if d.is_zero() {
            Ok(())
        } else {
            Err(witness(format!("coefficient u^{a} v^{b}"), &d))
        }
    })
}

/// (u − c v) X(u) Y(v) = (c u − v) Y(v) X(u), coefficientwise.
pub fn check_xx(x: &Laurent, y: &Laurent, c: &Scalar) -> Result<(), String> {
    let cells: Vec<(i64, i64)> =
        (x.lo + 1..=x.hi()).flat_map(|a| (y.lo + 1..=y.hi()).map(move |b| (a, b))).collect();
    cells.par_iter().try_for_each(|&(a, b)| {
        let (x0, x1, y0, y1) = (x.get(a - 1).unwrap(), x.get(a).unwrap(), y.get(b - 1).unwrap(), y.get(b).unwrap());
        let lhs = x0.mul(&y1).sub(&x1.mul(&y0).scale(c));
        let rhs = y1.mul(&x0).scale(c).sub(&y0.mul(&x1));
        let d = lhs.sub(&rhs);
        if d.is_zero() {
            Ok(())
        } else {
            Err(witness(format!("coefficient u^{a} v^{b}"), &d))
        }
    })
}

/// [X^+(u), X^-(v)] against (q − q^-1)(δ(u/v) A^-(v) − δ(u/v) A^+(u)) on the
/// window, where δ(u/v) = Σ u^k v^-k. Cells with |a + b| beyond the known
/// range of A are not checked; the number checked is returned.
pub fn check_xpxm(xp: &Laurent, xm: &Laurent, ratio: Option<(&Laurent, &Laurent)>, w: i64) -> Result<usize, String> {
    let qq = Scalar::q().sub(&Scalar::q_pow(-1));
    let mut cells = Vec::new();
    for a in -w..=w {
        for b in -w..=w {
            if let Some((am, ap)) = ratio {
                if am.get(a + b).is_none() || ap.get(a + b).is_none() {
                    continue;
                }
            }
            cells.push((a, b));
        }
    }
    cells.par_iter().try_for_each(|&(a, b)| {
        let (x, y) = (xp.get(a).unwrap(), xm.get(b).unwrap());
        let lhs = x.mul(&y).sub(&y.mul(&x));
        let rhs = match ratio {
            None => Mat::zero(lhs.nrows(), lhs.ncols()),
            Some((am, ap)) => am.get(a + b).unwrap().sub(&ap.get(a + b).unwrap()).scale(&qq),
        };
        let d = lhs.sub(&rhs);
        if d.is_zero() {
            Ok(())
        } else {
            Err(witness(format!("modes ({a},{b})"), &d))
        }
    })?;
    Ok(cells.len())
}

/// Σ_π Σ_l (−1)^l [r,l]_{q_i} X_i(u_π1)…X_i(u_πl) X_j(v) X_i(u_π(l+1))…X_i(u_πr)
/// at modes |m| ≤ w.
pub fn check_serre(xi: &Laurent, xj: &Laurent, binoms: &[Scalar], w: i64) -> Result<usize, String> {
    let r = binoms.len() - 1;
    let mut cases = Vec::new();
    for t in tuples(r, -w, w) {
        for m in -w..=w {
            cases.push((t.clone(), m));
        }
    }
    let perms = permutations(r);
    cases.par_iter().try_for_each(|(t, m)| {
        let xs: Vec<Mat> = t.iter().map(|&k| xi.get(k).unwrap()).collect();
        let y = xj.get(*m).unwrap();
        let dim = y.nrows();
        let mut acc = Mat::zero(dim, dim);
        for p in &perms {
            for l in 0..=r {
                let mut prod = Mat::identity(dim);
                for &a in &p[..l] {
                    prod = prod.mul(&xs[a]);
                }
                prod = prod.mul(&y);
                for &a in &p[l..] {
                    prod = prod.mul(&xs[a]);
                }
                let c = if l % 2 == 0 { binoms[l].clone() } else { binoms[l].neg() };
                acc = acc.add(&prod.scale(&c));
            }
        }
        if acc.is_zero() {
            Ok(())
        } else {
            Err(witness(format!("modes {t:?}, {m}"), &acc))
        }
    })?;
    Ok(cases.len())
}

fn pf(text: &str) -> Scalar {
    crate::relation::parse_prefactor(text).expect("valid prefactor")
}

/// (q^e u − q^-e v), the building block of the h–X prefactors.
fn lin(e: i64) -> Scalar {
    Scalar::q_pow(e).mul(&Scalar::u()).sub(&Scalar::q_pow(-e).mul(&Scalar::v()))
}

/// Which variant of the h_i–X^-_j prefactor is used for i ≤ n.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum XMinusForm {
    /// (q^e u − q^-e v)/(u − v) with e = (ε_i, α_j).
    Direct,
    /// (q^-e u − q^e v)/(u − v).
    Inverted,
}

/// The h_i–X^-_j prefactor form used in each type: the direct form holds in
/// both, while the inverted form fails for type B.
pub const X_MINUS_FORM: XMinusForm = XMinusForm::Direct;

/// [X^+_n, X^-_n] in type D involves h_(n-D_LAST_OFFSET) and h_(n+1). The
/// offset 0 fails in the vector representation.
pub const D_LAST_OFFSET: usize = 1;

/// Prefactor p in h_i(u) X^±_j(v) = p X^±_j(v) h_i(u); 1-based, i ≤ n + 1.
pub fn hx_prefactor(alg: &AlgebraData, i: usize, j: usize, plus: bool, form: XMinusForm) -> Scalar {
    let n = alg.n;
    let uv = Scalar::u().sub(&Scalar::v());
    let one = Scalar::one();
    if i <= n {
        let e = alg.eps_alpha(i, j);
        return if plus {
            uv.div(&lin(e)).unwrap()
        } else {
            let e = if form == XMinusForm::Direct { e } else { -e };
            lin(e).div(&uv).unwrap()
        };
    }
    match alg.typ {
        AlgType::B if j == n => {
            if plus {
                pf("(qu-v)(u-v)/((u-qv)(qu-q^-1v))")
            } else {
                pf("(u-qv)(qu-q^-1v)/((qu-v)(u-v))")
            }
        }
        AlgType::D if j == n => {
            if plus {
                uv.div(&lin(-1)).unwrap()
            } else {
                lin(-1).div(&uv).unwrap()
            }
        }
        AlgType::D if j + 1 == n => {
            if plus {
                uv.div(&lin(1)).unwrap()
            } else {
                lin(1).div(&uv).unwrap()
            }
        }
        _ => one,
    }
}

/// Argument shift exponent of X_i in the quadratic relations.
fn xx_shift(alg: &AlgebraData, i: usize, j: usize) -> i64 {
    let n = alg.n;
    match alg.typ {
        AlgType::B => i as i64,
        AlgType::D if i == n && j == n => 0,
        AlgType::D if i == n => (n - 1) as i64,
        AlgType::D => i as i64,
    }
}

fn h_h_relations(alg: &AlgebraData) -> Vec<Relation> {
    let n = alg.n;
    let mut out = Vec::new();
    let std = "(u-v)/(qu-q^-1v)";
    for i in 1..=n + 1 {
        for j in i..=n + 1 {
            let (x, y) = (format!("h{i}A(u)"), format!("h{j}B(v)"));
            let name = format!("h{i}(u) h{j}(v)");
            if i == j && !(alg.typ == AlgType::B && i == n + 1) {
                out.push(Relation::commute(&name, &x, &y, Pairs::All));
                continue;
            }
            out.push(Relation::commute(&name, &x, &y, Pairs::Same));
            let p = if i == j {
                "(q^-1u-qv)/(qu-q^-1v)*(q^(1/2)u-q^(-1/2)v)/(q^(-1/2)u-q^(1/2)v)"
            } else if alg.typ == AlgType::D && (i, j) == (n, n + 1) {
                "(q^-1u-qv)/(qu-q^-1v)*(u-v)/(u-q^-1v)"
            } else {
                std
            };
            out.push(Relation::commute_with(&name, p, &x, &y, Pairs::Mixed));
        }
    }
    out
}

/// All relation families on a Gaussian generator pair of the full algebra.
/// The pair must have order at least 2w for the commutator family to be
/// checked on the whole window.
pub fn check_relrbar(gp: &GaussPair, alg: &AlgebraData, w: usize) -> SuiteReport {
    let k = gp.order();
    let n = alg.n;
    let wi = w as i64;
    let mut rep = SuiteReport::new("relrbar", &alg.name()).with_order(k).with_window(w);
    rep.convention(REPRESENTATION_CAVEAT);
    rep.convention("c = 0; X^±_i(u) = e^+ − e^- (resp. f^+ − f^-) as a two-sided series known for |exponent| ≤ K");
    rep.convention("h–X prefactors are expanded in u/v when h is at 0 and in v/u when h is at infinity");
    rep.convention("h–h prefactors are cleared as in the lowrank suite");
    rep.convention(format!(
        "h_i–X^-_j prefactor for i ≤ n: (q^e u − q^-e v)/(u − v), e = (eps_i, alpha_j), in both types ({X_MINUS_FORM:?})"
    ));
    if alg.typ == AlgType::D {
        rep.convention(format!(
            "[X^+_n, X^-_n] uses h_(n-{}) and h_(n+1) in type D",
            D_LAST_OFFSET
        ));
    }

    for rel in h_h_relations(alg) {
        for (name, r) in check_relation(gp, &rel, k) {
            rep.record(format!("h-h: {name}"), r);
        }
    }

    let xs: Vec<(Laurent, Laurent)> =
        (1..=n).map(|i| (x_series(gp, alg.typ, n, i, true), x_series(gp, alg.typ, n, i, false))).collect();
    let hs = |i: usize, s: Sign| Laurent::from_series(gp.series(Kind::H, i, i, s).unwrap());

    for i in 1..=n + 1 {
        for j in 1..=n {
            for s in [Sign::Plus, Sign::Minus] {
                let h = hs(i, s);
                for plus in [true, false] {
                    let p = hx_prefactor(alg, i, j, plus, X_MINUS_FORM);
                    let x = if plus { &xs[j - 1].0 } else { &xs[j - 1].1 };
                    let pm = if plus { '+' } else { '-' };
                    rep.record(format!("h-X: h{i}{}(u) X{pm}{j}(v) = p X{pm}{j}(v) h{i}{}(u)", s.symbol(), s.symbol()), check_hx(&h, x, &p));
                }
            }
        }
    }

    for i in 1..=n {
        for j in 1..=n {
            let (si, sj) = (xx_shift(alg, i, j), xx_shift(alg, j, i));
            for plus in [true, false] {
                let e = if plus { alg.alpha_alpha(i, j) } else { -alg.alpha_alpha(i, j) };
                let pick = |t: usize| if plus { &xs[t - 1].0 } else { &xs[t - 1].1 };
                let (x, y) = (pick(i).scale_arg(si), pick(j).scale_arg(sj));
                let pm = if plus { '+' } else { '-' };
                rep.record(
                    format!("X-X: (u - q^{e} v) X{pm}{i}(u q^{si}) X{pm}{j}(v q^{sj}) = (q^{e} u - v) X{pm}{j} X{pm}{i}"),
                    check_xx(&x, &y, &Scalar::q_pow(e)),
                );
            }
        }
    }

    for i in 1..=n {
        let (a, b) = if alg.typ == AlgType::D && i == n { (n - D_LAST_OFFSET, n + 1) } else { (i, i + 1) };
        let am = h_ratio(gp, a, b, Sign::Minus);
        let ap = h_ratio(gp, a, b, Sign::Plus);
        for j in 1..=n {
            let ratio = (i == j).then_some((&am, &ap));
            let name = if i == j {
                format!("X+X-: [X+{i}(u), X-{i}(v)] = (q - q^-1)(delta(u/v) h{a}-(v)^-1 h{b}-(v) - delta(u/v) h{a}+(u)^-1 h{b}+(u))")
            } else {
                format!("X+X-: [X+{i}(u), X-{j}(v)] = 0")
            };
            match check_xpxm(&xs[i - 1].0, &xs[j - 1].1, ratio, wi) {
                Ok(cnt) => rep.pass(format!("{name} ({cnt} mode pairs)")),
                Err(e) => rep.fail(name, e),
            }
        }
    }

    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let r = (1 - alg.cartan[i - 1][j - 1]) as usize;
            let binoms: Vec<Scalar> = (0..=r as i64).map(|l| Scalar::qbinom(r as i64, l, alg.r[i - 1])).collect();
            for plus in [true, false] {
                let pick = |t: usize| if plus { &xs[t - 1].0 } else { &xs[t - 1].1 };
                let pm = if plus { '+' } else { '-' };
                let name = format!("Serre: X{pm}{i}^{r} around X{pm}{j}");
                match check_serre(pick(i), pick(j), &binoms, wi) {
                    Ok(cnt) => rep.pass(format!("{name} ({cnt} mode tuples)")),
                    Err(e) => rep.fail(name, e),
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lop::{build_lops, gaussian_generators};

    fn gp(t: AlgType, n: usize, k: usize) -> (AlgebraData, GaussPair) {
        let a = AlgebraData::new(t, n).unwrap();
        let g = gaussian_generators(&build_lops(&a, k).unwrap()).unwrap();
        (a, g)
    }

    #[test]
    fn b2_relrbar_holds() {
        let (a, g) = gp(AlgType::B, 2, 4);
        let rep = check_relrbar(&g, &a, 2);
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn d2_relrbar_holds() {
        let (a, g) = gp(AlgType::D, 2, 4);
        let rep = check_relrbar(&g, &a, 2);
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn inverted_x_minus_prefactor_fails_in_type_b() {
        let (a, g) = gp(AlgType::B, 2, 4);
        let h = Laurent::from_series(g.series(Kind::H, 1, 1, Sign::Plus).unwrap());
        let x = x_series(&g, AlgType::B, 2, 1, false);
        assert!(check_hx(&h, &x, &hx_prefactor(&a, 1, 1, false, XMinusForm::Inverted)).is_err());
        assert!(check_hx(&h, &x, &hx_prefactor(&a, 1, 1, false, XMinusForm::Direct)).is_ok());
    }

    #[test]
    fn type_d_last_commutator_needs_h_n_minus_1() {
        let (_, g) = gp(AlgType::D, 3, 4);
        let xp = x_series(&g, AlgType::D, 3, 3, true);
        let xm = x_series(&g, AlgType::D, 3, 3, false);
        let lit = (h_ratio(&g, 3, 4, Sign::Minus), h_ratio(&g, 3, 4, Sign::Plus));
        assert!(check_xpxm(&xp, &xm, Some((&lit.0, &lit.1)), 2).is_err());
        let ok = (h_ratio(&g, 2, 4, Sign::Minus), h_ratio(&g, 2, 4, Sign::Plus));
        assert_eq!(check_xpxm(&xp, &xm, Some((&ok.0, &ok.1)), 2), Ok(25));
    }

    #[test]
    fn wrong_shift_or_factor_is_caught() {
        let (a, g) = gp(AlgType::B, 2, 4);
        let x1 = x_series(&g, AlgType::B, 2, 1, true);
        let x2 = x_series(&g, AlgType::B, 2, 2, true);
        let c = Scalar::q_pow(a.alpha_alpha(1, 2));
        assert!(check_xx(&x1.scale_arg(1), &x2.scale_arg(2), &c).is_ok());
        assert!(check_xx(&x1.scale_arg(1), &x2.scale_arg(1), &c).is_err());
        assert!(check_xx(&x1.scale_arg(1), &x2.scale_arg(2), &c.inv().unwrap()).is_err());
        let h = Laurent::from_series(g.series(Kind::H, 3, 3, Sign::Minus).unwrap());
        assert!(check_hx(&h, &x2, &Scalar::one()).is_err());
    }

    #[test]
    fn b1_and_d3_relrbar_hold() {
        for (t, n) in [(AlgType::B, 1), (AlgType::D, 3)] {
            let (a, g) = gp(t, n, 4);
            let rep = check_relrbar(&g, &a, 2);
            assert!(rep.passed(), "{}", rep.to_text());
        }
    }
}
