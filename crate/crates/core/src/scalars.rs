//! Exact scalars: elements of ℚ(s, u, v)[w] / (w² − s − s⁻¹), where s plays
//! the role of q^{1/2} and w is a formal square root of s + s⁻¹.
//!
//! A value is stored as `(a + b·w) / d` with `a, b, d ∈ ℤ[s, u, v]`,
//! `gcd(a, b, d) = 1` and the leading coefficient of `d` positive. This form
//! is unique, so structural equality is mathematical equality.

use crate::int::Int;
use crate::poly::{gcd, Mono, Poly, NVARS, S, U, V};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
    #[error("no q^-1-adic expansion: {0}")]
    NoExpansion(String),
}

/// A half-integer, stored as twice its value.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Half(pub i64);

impl Half {
    pub fn int(k: i64) -> Half {
        Half(2 * k)
    }
    pub fn twice(self) -> i64 {
        self.0
    }
    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl std::ops::Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl std::ops::Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl std::ops::Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl std::ops::Mul<i64> for Half {
    type Output = Half;
    fn mul(self, k: i64) -> Half {
        Half(self.0 * k)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    a: Poly,
    b: Poly,
    d: Poly,
}

fn s_poly(k: u32) -> Poly {
    Poly::term(Mono::var(S, k), Int::ONE)
}

/// s² + 1, the numerator of w² = (s² + 1)/s.
fn w_sq_num() -> Poly {
    s_poly(2).add(&Poly::one())
}

impl Scalar {
    fn canon(a: Poly, b: Poly, d: Poly) -> Scalar {
        assert!(!d.is_zero(), "zero denominator");
        if a.is_zero() && b.is_zero() {
            return Scalar::zero();
        }
        let g0 = if b.is_zero() {
            a.clone()
        } else if a.is_zero() {
            b.clone()
        } else {
            gcd(&a, &b)
        };
        let mut g = gcd(&g0, &d);
        if d.lc().is_negative() {
            g = g.neg();
        }
        if g.is_one() {
            return Scalar { a, b, d };
        }
        let q = |p: &Poly| p.div_exact(&g).expect("gcd divides");
        Scalar { a: q(&a), b: q(&b), d: q(&d) }
    }

    /// Builds `(a + b·w)/d` and canonicalizes it.
    pub fn from_parts(a: Poly, b: Poly, d: Poly) -> Result<Scalar, ScalarError> {
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero("from_parts"));
        }
        Ok(Scalar::canon(a, b, d))
    }

    pub fn zero() -> Scalar {
        Scalar { a: Poly::zero(), b: Poly::zero(), d: Poly::one() }
    }

    pub fn one() -> Scalar {
        Scalar::int(1)
    }

    pub fn int(c: i64) -> Scalar {
        Scalar { a: Poly::int(c), b: Poly::zero(), d: Poly::one() }
    }

    pub fn from_int(c: Int) -> Scalar {
        Scalar { a: Poly::constant(c), b: Poly::zero(), d: Poly::one() }
    }

    pub fn ratio(p: i64, q: i64) -> Scalar {
        assert!(q != 0);
        Scalar::canon(Poly::int(p), Poly::zero(), Poly::int(q))
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar { a: p, b: Poly::zero(), d: Poly::one() }
    }

    /// `c · s^e0 · u^e1 · v^e2` with integer (possibly negative) exponents.
    pub fn mono(c: i64, e: [i64; NVARS]) -> Scalar {
        let mut num = [0u32; NVARS];
        let mut den = [0u32; NVARS];
        for i in 0..NVARS {
            if e[i] >= 0 {
                num[i] = e[i] as u32;
            } else {
                den[i] = (-e[i]) as u32;
            }
        }
        Scalar::canon(
            Poly::term(Mono::new(num), Int::from(c)),
            Poly::zero(),
            Poly::term(Mono::new(den), Int::ONE),
        )
    }

    /// s^k.
    pub fn s_pow(k: i64) -> Scalar {
        Scalar::mono(1, [k, 0, 0])
    }

    /// q^k = s^{2k}.
    pub fn q_pow(k: i64) -> Scalar {
        Scalar::s_pow(2 * k)
    }

    /// q^h for a half-integer h.
    pub fn q_half(h: Half) -> Scalar {
        Scalar::s_pow(h.twice())
    }

    pub fn s() -> Scalar {
        Scalar::s_pow(1)
    }

    pub fn q() -> Scalar {
        Scalar::q_pow(1)
    }

    pub fn u() -> Scalar {
        Scalar::mono(1, [0, 1, 0])
    }

    pub fn v() -> Scalar {
        Scalar::mono(1, [0, 0, 1])
    }

    pub fn w() -> Scalar {
        Scalar { a: Poly::zero(), b: Poly::one(), d: Poly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one() && self.d.is_one()
    }

    /// The w-free and w-linear numerator parts and the denominator.
    pub fn parts(&self) -> (&Poly, &Poly, &Poly) {
        (&self.a, &self.b, &self.d)
    }

    pub fn is_w_free(&self) -> bool {
        self.b.is_zero()
    }

    /// True when only `w` multiples appear, i.e. the value is `b·w/d`.
    pub fn is_pure_w(&self) -> bool {
        self.a.is_zero() && !self.b.is_zero()
    }

    pub fn is_free_of(&self, var: usize) -> bool {
        let bit = 1u8 << var;
        (self.a.var_mask() | self.b.var_mask() | self.d.var_mask()) & bit == 0
    }

    /// True for elements of ℚ with no variables and no w.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.a.is_constant() && self.d.is_constant()
    }

    pub fn neg(&self) -> Scalar {
        Scalar { a: self.a.neg(), b: self.b.neg(), d: self.d.clone() }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.d == o.d {
            return Scalar::canon(self.a.add(&o.a), self.b.add(&o.b), self.d.clone());
        }
        let g = gcd(&self.d, &o.d);
        if g.is_one() {
            // coprime denominators give a reduced sum directly
            let a = self.a.mul(&o.d).add(&o.a.mul(&self.d));
            let b = self.b.mul(&o.d).add(&o.b.mul(&self.d));
            if a.is_zero() && b.is_zero() {
                return Scalar::zero();
            }
            return Scalar { a, b, d: self.d.mul(&o.d) };
        }
        let d1 = self.d.div_exact(&g).expect("gcd");
        let d2 = o.d.div_exact(&g).expect("gcd");
        let a = self.a.mul(&d2).add(&o.a.mul(&d1));
        let b = self.b.mul(&d2).add(&o.b.mul(&d1));
        Scalar::canon(a, b, d1.mul(&o.d))
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.b.is_zero() && o.b.is_zero() {
            let g1 = gcd(&self.a, &o.d);
            let g2 = gcd(&o.a, &self.d);
            let q = |p: &Poly, g: &Poly| if g.is_one() { p.clone() } else { p.div_exact(g).expect("gcd") };
            let a = q(&self.a, &g1).mul(&q(&o.a, &g2));
            let d = q(&self.d, &g2).mul(&q(&o.d, &g1));
            return Scalar { a, b: Poly::zero(), d };
        }
        if self.b.is_zero() || o.b.is_zero() {
            let a = self.a.mul(&o.a);
            let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
            return Scalar::canon(a, b, self.d.mul(&o.d));
        }
        let s1 = s_poly(1);
        let a = s1.mul(&self.a.mul(&o.a)).add(&w_sq_num().mul(&self.b.mul(&o.b)));
        let b = s1.mul(&self.a.mul(&o.b).add(&self.b.mul(&o.a)));
        Scalar::canon(a, b, s1.mul(&self.d.mul(&o.d)))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero("inverse"));
        }
        if self.b.is_zero() {
            return Ok(Scalar::canon(self.d.clone(), Poly::zero(), self.a.clone()));
        }
        // d / (a + b w) = d s (a − b w) / (s a² − (s² + 1) b²)
        let s1 = s_poly(1);
        let den = s1.mul(&self.a.mul(&self.a)).sub(&w_sq_num().mul(&self.b.mul(&self.b)));
        let f = self.d.mul(&s1);
        Ok(Scalar::canon(f.mul(&self.a), f.mul(&self.b).neg(), den))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        if o.is_zero() {
            return Err(ScalarError::DivisionByZero("division"));
        }
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Scalar {
        let base = if k < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Scalar::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// The Galois conjugate `(a − b w)/d`.
    pub fn conj(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: self.b.neg(), d: self.d.clone() }
    }

    /// Substitutes `var ↦ s^e0 u^e1 v^e2` (integer exponents) for `var` in
    /// {u, v}. The substitution fixes s and w.
    pub fn subst(&self, var: usize, e: [i64; NVARS]) -> Scalar {
        assert!(var == U || var == V, "only u and v may be substituted");
        let (a, ma) = self.a.subst_laurent(var, e);
        let (b, mb) = self.b.subst_laurent(var, e);
        let (d, md) = self.d.subst_laurent(var, e);
        let l = Mono::new({
            let mut x = [0; NVARS];
            for (i, xi) in x.iter_mut().enumerate() {
                *xi = ma.exp(i).max(mb.exp(i));
            }
            x
        });
        let a = a.mul_term(l.div(ma), &Int::ONE).mul_term(md, &Int::ONE);
        let b = b.mul_term(l.div(mb), &Int::ONE).mul_term(md, &Int::ONE);
        Scalar::canon(a, b, d.mul_term(l, &Int::ONE))
    }

    /// Evaluates `var ∈ {u, v}` at an integer.
    pub fn eval_int(&self, var: usize, x: i64) -> Result<Scalar, ScalarError> {
        assert!(var == U || var == V);
        let x = Int::from(x);
        let d = self.d.eval_int(var, &x);
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero("evaluation"));
        }
        Ok(Scalar::canon(self.a.eval_int(var, &x), self.b.eval_int(var, &x), d))
    }

    /// `[k]_{q^r}`, a Laurent polynomial in s.
    pub fn qint(k: i64, r: Half) -> Scalar {
        if k < 0 {
            return Scalar::qint(-k, r).neg();
        }
        let t = r.twice();
        let mut acc = Scalar::zero();
        for j in 0..k {
            acc = acc.add(&Scalar::s_pow(t * (k - 1 - 2 * j)));
        }
        acc
    }

    pub fn qfact(k: i64, r: Half) -> Scalar {
        assert!(k >= 0);
        (1..=k).fold(Scalar::one(), |acc, j| acc.mul(&Scalar::qint(j, r)))
    }

    pub fn qbinom(k: i64, l: i64, r: Half) -> Scalar {
        assert!(k >= 0 && l >= 0);
        if l > k {
            return Scalar::zero();
        }
        let num = Scalar::qfact(k, r);
        let den = Scalar::qfact(l, r).mul(&Scalar::qfact(k - l, r));
        num.div(&den).expect("q-factorials are nonzero")
    }

    /// First `order + 1` coefficients of the expansion in nonnegative powers
    /// of q⁻¹ (coefficients of q⁰, q⁻¹, …).
    pub fn qadic_expand(&self, order: usize) -> Result<Vec<Scalar>, ScalarError> {
        if !self.is_w_free() || !self.is_free_of(U) || !self.is_free_of(V) {
            return Err(ScalarError::NoExpansion("value depends on u, v or w".into()));
        }
        if self.is_zero() {
            return Ok(vec![Scalar::zero(); order + 1]);
        }
        let alpha = self.a.degree_in(S) as i64;
        let delta = self.d.degree_in(S) as i64;
        let shift = delta - alpha;
        if shift < 0 {
            return Err(ScalarError::NoExpansion(format!(
                "pole of order {} at q^-1 = 0",
                -shift
            )));
        }
        let coef = |p: &Poly, top: i64, i: i64| -> Scalar {
            let e = top - i;
            if e < 0 {
                return Scalar::zero();
            }
            p.terms()
                .iter()
                .find(|(m, _)| m.exp(S) as i64 == e)
                .map(|(_, c)| Scalar::from_int(c.clone()))
                .unwrap_or_else(Scalar::zero)
        };
        let len = 2 * order as i64 + 1;
        let d0 = coef(&self.d, delta, 0).inv()?;
        // c = Ã / D̃ as a power series in t = s⁻¹
        let mut c: Vec<Scalar> = Vec::with_capacity(len as usize);
        for k in 0..(len - shift).max(0) {
            let mut acc = coef(&self.a, alpha, k);
            for j in 1..=k.min(delta) {
                acc = acc.sub(&coef(&self.d, delta, j).mul(&c[(k - j) as usize]));
            }
            c.push(acc.mul(&d0));
        }
        let mut t = vec![Scalar::zero(); len as usize];
        for (k, ck) in c.into_iter().enumerate() {
            t[k + shift as usize] = ck;
        }
        let mut out = Vec::with_capacity(order + 1);
        for (k, tk) in t.into_iter().enumerate() {
            if k % 2 == 1 {
                if !tk.is_zero() {
                    return Err(ScalarError::NoExpansion(format!(
                        "odd power s^-{k} present; not a series in q^-1"
                    )));
                }
            } else {
                out.push(tk);
            }
        }
        Ok(out)
    }

    fn fmt_numerator(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(u32, u32, Mono, &Int)> = Vec::new();
        for (m, c) in self.a.terms() {
            terms.push((m.deg(), 0, *m, c));
        }
        for (m, c) in self.b.terms() {
            terms.push((m.deg() + 1, 1, *m, c));
        }
        terms.sort_by(|x, y| (y.0, y.1, y.2).cmp(&(x.0, x.1, x.2)));
        let mut out = String::new();
        for (k, (_, w, m, c)) in terms.into_iter().enumerate() {
            crate::poly::format_term(&mut out, k == 0, m, c, w == 1);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Scalar, ScalarError> {
        let parts: Vec<&str> = text.split('/').collect();
        match parts.as_slice() {
            [n] => parse_sum(n),
            [n, d] => parse_sum(n)?.div(&parse_sum(d)?),
            _ => Err(ScalarError::Parse(format!("more than one '/' in {text:?}"))),
        }
    }
}

fn parse_sum(text: &str) -> Result<Scalar, ScalarError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.trim_start_matches('(').trim_end_matches(')');
    if t.is_empty() {
        return Err(ScalarError::Parse("empty expression".into()));
    }
    let mut acc = Scalar::zero();
    let bytes: Vec<char> = t.chars().collect();
    let mut start = 0;
    let mut i = 0;
    while i <= bytes.len() {
        let at_split = i == bytes.len() || ((bytes[i] == '+' || bytes[i] == '-') && i > start);
        if at_split {
            let piece: String = bytes[start..i].iter().collect();
            acc = acc.add(&parse_term(&piece)?);
            start = i;
        }
        i += 1;
    }
    Ok(acc)
}

fn parse_term(piece: &str) -> Result<Scalar, ScalarError> {
    let (sign, body) = match piece.chars().next() {
        Some('-') => (-1, &piece[1..]),
        Some('+') => (1, &piece[1..]),
        _ => (1, piece),
    };
    if body.is_empty() {
        return Err(ScalarError::Parse(format!("dangling sign in {piece:?}")));
    }
    let mut val = Scalar::int(sign);
    for f in body.split('*') {
        let (base, exp) = match f.split_once('^') {
            Some((b, e)) => {
                let e: u32 = e.parse().map_err(|_| ScalarError::Parse(format!("bad exponent {e:?}")))?;
                (b, e)
            }
            None => (f, 1),
        };
        let factor = match base {
            "s" => Scalar::s_pow(exp as i64),
            "u" => Scalar::u().pow(exp as i64),
            "v" => Scalar::v().pow(exp as i64),
            "w" => Scalar::w().pow(exp as i64),
            _ => {
                let c = Int::parse(base).ok_or_else(|| ScalarError::Parse(format!("bad factor {base:?}")))?;
                let c = Scalar::from_int(c);
                c.pow(exp as i64)
            }
        };
        val = val.mul(&factor);
    }
    Ok(val)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.fmt_numerator(), self.d)
    }
}

impl Default for Scalar {
    fn default() -> Scalar {
        Scalar::zero()
    }
}

macro_rules! scalar_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                Scalar::$f(self, o)
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                Scalar::$f(&self, &o)
            }
        }
    };
}

scalar_op!(Add, add, add);
scalar_op!(Sub, sub, sub);
scalar_op!(Mul, mul, mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_examples() {
        let s = Scalar::s();
        assert_eq!(s.mul(&s).div(&Scalar::one()).unwrap(), Scalar::q());
        let ww = Scalar::w().mul(&Scalar::w());
        assert_eq!(ww, Scalar::s_pow(2).add(&Scalar::one()).div(&Scalar::s()).unwrap());
        let u = Scalar::u();
        let r = u.mul(&u).sub(&Scalar::one()).div(&u.sub(&Scalar::one())).unwrap();
        assert_eq!(r, u.add(&Scalar::one()));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().div(&Scalar::zero()), Err(ScalarError::DivisionByZero("division")));
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn qint_examples() {
        assert_eq!(Scalar::qint(0, Half::int(1)), Scalar::zero());
        let want = Scalar::q_pow(2).add(&Scalar::one()).add(&Scalar::q_pow(-2));
        assert_eq!(Scalar::qint(3, Half::int(1)), want);
        assert_eq!(Scalar::qbinom(2, 1, Half::int(1)), Scalar::q().add(&Scalar::q_pow(-1)));
        assert_eq!(Scalar::qint(-1, Half::int(1)), Scalar::int(-1));
        // [2]_{q^{1/2}} = s + s⁻¹ = w²
        assert_eq!(Scalar::qint(2, Half(1)), Scalar::w().pow(2));
    }

    #[test]
    fn qadic_examples() {
        let one = Scalar::one();
        let x = one.div(&one.sub(&Scalar::q_pow(-1))).unwrap();
        assert_eq!(x.qadic_expand(2).unwrap(), vec![one.clone(), one.clone(), one.clone()]);
        let z = Scalar::zero();
        assert_eq!(Scalar::q_pow(-2).qadic_expand(3).unwrap(), vec![z.clone(), z.clone(), one.clone(), z.clone()]);
        let y = Scalar::q_pow(2).add(&Scalar::q_pow(-2)).div(&Scalar::q_pow(2).add(&one)).unwrap();
        assert_eq!(y.qadic_expand(2).unwrap(), vec![one.clone(), z, Scalar::int(-1)]);
        assert!(Scalar::q().qadic_expand(2).is_err());
    }

    #[test]
    fn substitution() {
        // (u − 1)/(q u − q⁻¹) at u ↦ 1/u
        let u = Scalar::u();
        let one = Scalar::one();
        let x = u.sub(&one).div(&Scalar::q().mul(&u).sub(&Scalar::q_pow(-1))).unwrap();
        let y = x.subst(U, [0, -1, 0]);
        let ui = u.inv().unwrap();
        let want = ui.sub(&one).div(&Scalar::q().mul(&ui).sub(&Scalar::q_pow(-1))).unwrap();
        assert_eq!(y, want);
        assert_eq!(Scalar::w().mul(&u).subst(U, [0, 0, 1]), Scalar::w().mul(&Scalar::v()));
    }

    #[test]
    fn print_parse_roundtrip() {
        let x = Scalar::parse("3*s^2*u - w*v + 7*s").unwrap();
        let back = Scalar::parse(&x.to_string()).unwrap();
        assert_eq!(x, back);
        assert_eq!(Scalar::w().to_string(), "w/1");
        assert_eq!(Scalar::s_pow(-2).to_string(), "1/s^2");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(terms: usize) -> impl Strategy<Value = Scalar> {
            prop::collection::vec((-3i64..=3, -2i64..=2, 0i64..=2, 0i64..=1), 0..=terms).prop_map(|ts| {
                ts.into_iter().fold(Scalar::zero(), |acc, (c, a, b, e)| acc.add(&Scalar::mono(c, [a, b, e])))
            })
        }

        fn w_free() -> impl Strategy<Value = Scalar> {
            (poly(3), poly(2)).prop_map(|(n, d)| if d.is_zero() { n } else { n.div(&d).unwrap() })
        }

        fn scalar() -> impl Strategy<Value = Scalar> {
            (w_free(), w_free()).prop_map(|(a, b)| a.add(&b.mul(&Scalar::w())))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(40))]

            #[test]
            fn canonical_form_is_idempotent(x in scalar()) {
                let (a, b, d) = x.parts();
                let y = Scalar::from_parts(a.clone(), b.clone(), d.clone()).unwrap();
                prop_assert_eq!(y.parts(), x.parts());
            }

            #[test]
            fn associativity_and_distributivity(x in scalar(), y in scalar(), z in scalar()) {
                prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
                prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            }

            #[test]
            fn inverse(x in scalar()) {
                prop_assume!(!x.is_zero());
                prop_assert!(x.mul(&x.inv().unwrap()).is_one());
            }

            #[test]
            fn w_reduction(a in w_free(), b in w_free()) {
                let w = Scalar::w();
                let lhs = a.add(&b.mul(&w)).mul(&a.sub(&b.mul(&w)));
                let two = Scalar::s_pow(1).add(&Scalar::s_pow(-1));
                let rhs = a.mul(&a).sub(&b.mul(&b).mul(&two));
                prop_assert!(lhs.is_w_free());
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn print_parse(x in scalar()) {
                let y = Scalar::parse(&x.to_string()).unwrap();
                prop_assert_eq!(y.parts(), x.parts());
            }
        }
    }
}
