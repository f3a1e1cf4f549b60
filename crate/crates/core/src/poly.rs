//! Sparse multivariate polynomials over ℤ in the variables s, u, v.
//!
//! Monomials are packed into a `u64` so that integer comparison is the
//! graded lexicographic order with s < u < v. Terms are kept sorted in
//! descending order, leading term first.

use crate::int::Int;
use std::fmt;

pub const NVARS: usize = 3;
pub const VAR_NAMES: [&str; NVARS] = ["s", "u", "v"];
pub const S: usize = 0;
pub const U: usize = 1;
pub const V: usize = 2;

const FIELD: u32 = 16;
const MASK: u64 = 0xffff;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn new(e: [u32; NVARS]) -> Mono {
        let deg: u32 = e.iter().sum();
        assert!(deg <= MASK as u32, "monomial degree overflow");
        let mut k = (deg as u64) << 48;
        for (i, x) in e.iter().enumerate() {
            k |= (*x as u64) << (FIELD * i as u32);
        }
        Mono(k)
    }

    pub fn var(i: usize, e: u32) -> Mono {
        let mut x = [0; NVARS];
        x[i] = e;
        Mono::new(x)
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> (FIELD * i as u32)) & MASK) as u32
    }

    pub fn exps(self) -> [u32; NVARS] {
        [self.exp(0), self.exp(1), self.exp(2)]
    }

    #[inline]
    pub fn deg(self) -> u32 {
        (self.0 >> 48) as u32
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        debug_assert!((0..NVARS).all(|i| self.exp(i) + o.exp(i) <= MASK as u32));
        Mono(self.0 + o.0)
    }

    #[inline]
    pub fn divides(self, o: Mono) -> bool {
        (0..NVARS).all(|i| self.exp(i) <= o.exp(i))
    }

    /// `self / o`; caller guarantees `o` divides `self`.
    #[inline]
    pub fn div(self, o: Mono) -> Mono {
        Mono(self.0 - o.0)
    }

    pub fn gcd(self, o: Mono) -> Mono {
        let mut e = [0; NVARS];
        for (i, x) in e.iter_mut().enumerate() {
            *x = self.exp(i).min(o.exp(i));
        }
        Mono::new(e)
    }

    pub fn pow(self, k: u32) -> Mono {
        let mut e = self.exps();
        for x in e.iter_mut() {
            *x *= k;
        }
        Mono::new(e)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Mono, Int)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> Poly {
        Poly::term(Mono::ONE, c)
    }

    pub fn int(c: i64) -> Poly {
        Poly::constant(Int::from(c))
    }

    pub fn term(m: Mono, c: Int) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize) -> Poly {
        Poly::term(Mono::var(i, 1), Int::ONE)
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(mut t: Vec<(Mono, Int)>) -> Poly {
        t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, Int)> = Vec::with_capacity(t.len());
        for (m, c) in t {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Int)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Mono::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lt(&self) -> &(Mono, Int) {
        &self.terms[0]
    }

    pub fn lc(&self) -> &Int {
        &self.terms[0].1
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(i)).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.deg()).unwrap_or(0)
    }

    /// Bitmask of variables appearing with positive degree.
    pub fn var_mask(&self) -> u8 {
        let mut mask = 0u8;
        for (m, _) in &self.terms {
            for i in 0..NVARS {
                if m.exp(i) > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 > b[j].0 {
                out.push(a[i].clone());
                i += 1;
            } else if a[i].0 < b[j].0 {
                out.push((b[j].0, if negate { b[j].1.neg() } else { b[j].1.clone() }));
                j += 1;
            } else {
                let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            out.push((t.0, if negate { t.1.neg() } else { t.1.clone() }));
        }
        Poly { terms: out }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        if o.is_zero() {
            return self.clone();
        }
        self.merge(o, true)
    }

    pub fn mul_term(&self, m: Mono, c: &Int) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.mul(c))).collect() }
    }

    pub fn scale(&self, c: &Int) -> Poly {
        self.mul_term(Mono::ONE, c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(self.terms[0].0, &self.terms[0].1);
        }
        let mut t = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                t.push((ma.mul(*mb), ca.mul(cb)));
            }
        }
        Poly::from_terms(t)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Non-negative gcd of the integer coefficients.
    pub fn int_content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Largest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Mono::ONE };
        let mut g = *first;
        for (m, _) in it {
            g = g.gcd(*m);
            if g == Mono::ONE {
                break;
            }
        }
        g
    }

    pub fn div_int(&self, c: &Int) -> Option<Poly> {
        let mut t = Vec::with_capacity(self.terms.len());
        for (m, x) in &self.terms {
            t.push((*m, x.div_exact(c)?));
        }
        Some(Poly { terms: t })
    }

    /// Exact division by a single term; `None` if it does not divide.
    pub fn div_term(&self, m: Mono, c: &Int) -> Option<Poly> {
        let mut t = Vec::with_capacity(self.terms.len());
        for (tm, x) in &self.terms {
            if !m.divides(*tm) {
                return None;
            }
            t.push((tm.div(m), x.div_exact(c)?));
        }
        Some(Poly { terms: t })
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            return self.div_term(d.terms[0].0, &d.terms[0].1);
        }
        let (dm, dc) = d.terms[0].clone();
        let tail = Poly { terms: d.terms[1..].to_vec() };
        let mut q: Vec<(Mono, Int)> = Vec::new();
        let mut r = self.clone();
        while !r.is_zero() {
            let (m, c) = r.terms[0].clone();
            if !dm.divides(m) {
                return None;
            }
            let qc = c.div_exact(&dc)?;
            let qm = m.div(dm);
            // r -= (qm, qc) * d; the leading terms cancel by construction.
            r.terms.remove(0);
            r = r.sub(&tail.mul_term(qm, &qc));
            q.push((qm, qc));
            if q.len() > 1_000_000 {
                return None;
            }
        }
        Some(Poly { terms: q })
    }

    /// Coefficients with respect to variable `i`, indexed by degree.
    pub fn to_univariate(&self, i: usize) -> Vec<Poly> {
        let d = self.degree_in(i) as usize;
        let mut buckets: Vec<Vec<(Mono, Int)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(i);
            buckets[e as usize].push((m.div(Mono::var(i, e)), c.clone()));
        }
        // dividing by a power of one variable keeps the relative order
        buckets.into_iter().map(|terms| Poly { terms }).collect()
    }

    pub fn from_univariate(c: &[Poly], i: usize) -> Poly {
        let mut t = Vec::new();
        for (k, p) in c.iter().enumerate() {
            let mk = Mono::var(i, k as u32);
            for (m, x) in &p.terms {
                t.push((m.mul(mk), x.clone()));
            }
        }
        Poly::from_terms(t)
    }

    /// Dense coefficient list for a polynomial in the single variable `i`.
    fn to_dense(&self, i: usize) -> Vec<Int> {
        let d = self.degree_in(i) as usize;
        let mut v = vec![Int::ZERO; d + 1];
        for (m, c) in &self.terms {
            v[m.exp(i) as usize] = c.clone();
        }
        v
    }

    fn from_dense(v: &[Int], i: usize) -> Poly {
        let mut t = Vec::new();
        for (k, c) in v.iter().enumerate().rev() {
            if !c.is_zero() {
                t.push((Mono::var(i, k as u32), c.clone()));
            }
        }
        Poly { terms: t }
    }

    /// Substitutes `x_var ↦ s^e[0] u^e[1] v^e[2]` with integer (possibly
    /// negative) exponents. Returns `(p, m)` with the substituted value
    /// equal to `p / m`, `m` a monomial chosen minimal.
    pub fn subst_laurent(&self, var: usize, e: [i64; NVARS]) -> (Poly, Mono) {
        let mut raw: Vec<([i64; NVARS], Int)> = Vec::with_capacity(self.terms.len());
        let mut low = [0i64; NVARS];
        for (m, c) in &self.terms {
            let k = m.exp(var) as i64;
            let mut x = [0i64; NVARS];
            for j in 0..NVARS {
                x[j] = if j == var { 0 } else { m.exp(j) as i64 } + k * e[j];
                low[j] = low[j].min(x[j]);
            }
            raw.push((x, c.clone()));
        }
        let shift = [(-low[0]) as u32, (-low[1]) as u32, (-low[2]) as u32];
        let t = raw
            .into_iter()
            .map(|(x, c)| {
                let ex = [
                    (x[0] + shift[0] as i64) as u32,
                    (x[1] + shift[1] as i64) as u32,
                    (x[2] + shift[2] as i64) as u32,
                ];
                (Mono::new(ex), c)
            })
            .collect();
        (Poly::from_terms(t), Mono::new(shift))
    }

    /// Evaluates variable `var` at an integer, leaving the others.
    pub fn eval_int(&self, var: usize, x: &Int) -> Poly {
        let t = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exp(var);
                (m.div(Mono::var(var, e)), c.mul(&x.pow(e)))
            })
            .collect();
        Poly::from_terms(t)
    }

    /// Makes the leading coefficient positive.
    pub fn normalize_sign(self) -> Poly {
        if !self.is_zero() && self.lc().is_negative() {
            self.neg()
        } else {
            self
        }
    }
}

/// Greatest common divisor with positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    let (ma, mb) = (a.mono_content(), b.mono_content());
    let (ca, cb) = (a.int_content(), b.int_content());
    let mg = ma.gcd(mb);
    let cg = ca.gcd(&cb);
    if a.is_term() || b.is_term() {
        return Poly::term(mg, cg);
    }
    let a1 = a.div_term(ma, &ca).expect("content divides");
    let b1 = b.div_term(mb, &cb).expect("content divides");
    gcd_primitive(&a1, &b1).mul_term(mg, &cg)
}

fn fold_gcd(ps: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for p in ps {
        if p.is_zero() {
            continue;
        }
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// gcd of polynomials that have trivial integer and monomial content.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b || *a == b.neg() {
        return a.clone().normalize_sign();
    }
    let (ka, kb) = (a.var_mask(), b.var_mask());
    let mask = ka | kb;
    let x = 7 - mask.leading_zeros() as usize;
    if mask.count_ones() == 1 {
        let g = univariate_gcd(a.to_dense(x), b.to_dense(x));
        return Poly::from_dense(&g, x).normalize_sign();
    }
    let (ua, ub) = (a.to_univariate(x), b.to_univariate(x));
    if ua.len() == 1 {
        return gcd(a, &fold_gcd(&ub));
    }
    if ub.len() == 1 {
        return gcd(&fold_gcd(&ua), b);
    }
    let conta = fold_gcd(&ua);
    let contb = fold_gcd(&ub);
    let gc = gcd(&conta, &contb);
    let ppa: Vec<Poly> = ua.iter().map(|c| c.div_exact(&conta).expect("content")).collect();
    let ppb: Vec<Poly> = ub.iter().map(|c| c.div_exact(&contb).expect("content")).collect();
    if coprime_image(&ppa, &ppb) {
        return gc.normalize_sign();
    }
    let g = subresultant_gcd(ppa, ppb);
    let cg = fold_gcd(&g);
    let g: Vec<Poly> = g.iter().map(|c| c.div_exact(&cg).expect("content")).collect();
    Poly::from_univariate(&g, x).mul(&gc).normalize_sign()
}

/// Value mod p of a polynomial at the point `pt`.
fn eval_mod(f: &Poly, pt: &[u64; NVARS], p: u64) -> u64 {
    use crate::modgcd::mulmod;
    let mut acc = 0u64;
    for (m, c) in f.terms() {
        let mut t = c.rem_u64(p);
        for (i, &x) in pt.iter().enumerate() {
            for _ in 0..m.exp(i) {
                t = mulmod(t, x, p);
            }
        }
        acc = (acc + t) % p;
    }
    acc
}

/// Images of the coefficient lists at a point of the remaining variables,
/// mod a large prime. When the leading coefficients survive, the image gcd
/// has degree at least that of the true gcd, so a constant image proves the
/// two primitive parts coprime.
fn coprime_image(a: &[Poly], b: &[Poly]) -> bool {
    let p = crate::modgcd::primes()[0];
    for attempt in 0..2u64 {
        let mut pt = [0u64; NVARS];
        for (i, x) in pt.iter_mut().enumerate() {
            *x = 1_000_003 + 7_919 * (i as u64 + 1) + 104_729 * attempt;
        }
        let ea: Vec<u64> = a.iter().map(|c| eval_mod(c, &pt, p)).collect();
        let eb: Vec<u64> = b.iter().map(|c| eval_mod(c, &pt, p)).collect();
        if ea.last() == Some(&0) || eb.last() == Some(&0) {
            continue;
        }
        return crate::modgcd::gcd_mod(ea, eb, p).len() == 1;
    }
    false
}

fn trim(v: &mut Vec<Poly>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let lb = &b[n];
    let mut r: Vec<Poly> = a.to_vec();
    for i in (n..=m).rev() {
        let ri = r[i].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        if !ri.is_zero() {
            for (k, bk) in b.iter().enumerate() {
                r[i - n + k] = r[i - n + k].sub(&ri.mul(bk));
            }
        }
        debug_assert!(r[i].is_zero());
    }
    r.truncate(n.max(1));
    trim(&mut r);
    r
}

/// Subresultant PRS over ℤ[other variables]; inputs have degree ≥ 1.
fn subresultant_gcd(mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.iter().all(|c| c.is_zero()) {
            return b;
        }
        if r.len() == 1 {
            return vec![Poly::one()];
        }
        a = b;
        let divisor = g.mul(&h.pow(delta));
        b = r.iter().map(|c| c.div_exact(&divisor).expect("subresultant division")).collect();
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant h"),
        };
    }
}

fn dense_trim(v: &mut Vec<Int>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_primitive(v: Vec<Int>) -> Vec<Int> {
    let mut g = Int::ZERO;
    for c in &v {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.iter().map(|c| c.div_exact(&g).unwrap()).collect()
}

fn univariate_gcd(a: Vec<Int>, b: Vec<Int>) -> Vec<Int> {
    let (mut a, mut b) = (dense_primitive(a), dense_primitive(b));
    dense_trim(&mut a);
    dense_trim(&mut b);
    if a.len() < 8 && b.len() < 8 {
        return dense_gcd(a, b);
    }
    match crate::modgcd::modular_gcd(&a, &b) {
        Some(g) => g,
        None => dense_gcd(a, b),
    }
}

/// Primitive PRS gcd of univariate integer polynomials (ascending order).
fn dense_gcd(a: Vec<Int>, b: Vec<Int>) -> Vec<Int> {
    let (mut a, mut b) = (dense_primitive(a), dense_primitive(b));
    dense_trim(&mut a);
    dense_trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 {
            return if b[0].is_zero() { a } else { vec![Int::ONE] };
        }
        let n = b.len() - 1;
        let lb = b[n].clone();
        let mut r = a.clone();
        for i in (n..r.len()).rev() {
            let ri = r[i].clone();
            if ri.is_zero() {
                continue;
            }
            // r = lb*r - ri*x^(i-n)*b, reduced by the gcd of the two multipliers
            let g = lb.gcd(&ri);
            let (fl, fr) = (lb.div_exact(&g).unwrap(), ri.div_exact(&g).unwrap());
            for c in r.iter_mut() {
                *c = c.mul(&fl);
            }
            for (k, bk) in b.iter().enumerate() {
                r[i - n + k] = r[i - n + k].sub(&fr.mul(bk));
            }
        }
        r.truncate(n);
        if r.is_empty() {
            r.push(Int::ZERO);
        }
        dense_trim(&mut r);
        let r = dense_primitive(r);
        if r.len() == 1 && r[0].is_zero() {
            return b;
        }
        a = b;
        b = r;
    }
}

fn fmt_mono(m: Mono, out: &mut String) -> bool {
    let mut any = false;
    for i in 0..NVARS {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        if any {
            out.push('*');
        }
        out.push_str(VAR_NAMES[i]);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
        any = true;
    }
    any
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            format_term(&mut out, k == 0, *m, c, false);
        }
        write!(f, "{out}")
    }
}

/// Appends `c*s^a*u^b*v^c[*w]` with a leading sign separator.
pub(crate) fn format_term(out: &mut String, first: bool, m: Mono, c: &Int, w: bool) {
    let neg = c.is_negative();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let a = c.abs();
    let bare = m == Mono::ONE && !w;
    if !a.is_one() || bare {
        out.push_str(&a.to_string());
        if !bare {
            out.push('*');
        }
    }
    let mut mono = String::new();
    let any = fmt_mono(m, &mut mono);
    out.push_str(&mono);
    if w {
        if any {
            out.push('*');
        }
        out.push('w');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> Poly {
        Poly::var(S)
    }
    fn u() -> Poly {
        Poly::var(U)
    }
    fn v() -> Poly {
        Poly::var(V)
    }

    #[test]
    fn grlex_order() {
        // deg first, then v > u > s
        assert!(Mono::new([0, 0, 1]) > Mono::new([0, 1, 0]));
        assert!(Mono::new([0, 1, 0]) > Mono::new([1, 0, 0]));
        assert!(Mono::new([2, 0, 0]) > Mono::new([0, 0, 1]));
        assert!(Mono::new([0, 0, 2]) > Mono::new([1, 1, 0]));
    }

    #[test]
    fn division_roundtrip() {
        let a = s().add(&u()).add(&Poly::int(3)).mul(&v().sub(&s()));
        let b = v().sub(&s());
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, s().add(&u()).add(&Poly::int(3)));
        assert!(a.div_exact(&u().add(&Poly::one())).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let f = s().mul(&u()).sub(&v()).add(&Poly::int(2));
        let g1 = u().mul(&u()).add(&s());
        let g2 = v().add(&s().mul(&s()));
        let a = f.mul(&g1);
        let b = f.mul(&g2).scale(&Int::from(-6));
        assert_eq!(gcd(&a, &b), f.clone().normalize_sign());
        let c = f.mul(&f).mul(&g1);
        let d = f.mul(&g1).mul(&g2);
        assert_eq!(gcd(&c, &d), f.mul(&g1).normalize_sign());
    }

    #[test]
    fn coprime_image_shortcut() {
        // Coprime in v with a common factor in the content (s u + 1).
        let c = s().mul(&u()).add(&Poly::one());
        let a = c.mul(&v().mul(&v()).add(&s()));
        let b = c.mul(&v().mul(&u()).sub(&Poly::int(3)));
        assert_eq!(gcd(&a, &b), c);
        let pa = a.div_exact(&c).unwrap().to_univariate(V);
        let pb = b.div_exact(&c).unwrap().to_univariate(V);
        assert!(coprime_image(&pa, &pb));
        // A shared factor in v makes every image gcd nonconstant.
        let f = v().add(&s());
        assert!(!coprime_image(&f.mul(&a).to_univariate(V), &f.mul(&b).to_univariate(V)));
    }

    #[test]
    fn gcd_univariate() {
        let x = s();
        let a = x.pow(4).sub(&Poly::one());
        let b = x.pow(6).sub(&Poly::one());
        assert_eq!(gcd(&a, &b), x.pow(2).sub(&Poly::one()));
    }

    #[test]
    fn laurent_substitution() {
        // u^2 + s*u evaluated at u -> s^-1 u gives (u^2 + s^2 u)/s^2
        let p = u().mul(&u()).add(&s().mul(&u()));
        let (q, m) = p.subst_laurent(U, [-1, 1, 0]);
        assert_eq!(m, Mono::var(S, 2));
        assert_eq!(q, u().mul(&u()).add(&s().mul(&s()).mul(&u())));
    }
}
