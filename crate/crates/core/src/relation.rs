//! Checking two-variable exchange relations between Gaussian generators.
//!
//! A relation is written in a small text format: each side is a list of
//! `(prefactor, word)` pairs, where the prefactor is a rational function of
//! q, u, v and the word is a product of factors such as `h1A(u)`,
//! `e12B(v)^2` or `h2A(u)^-1`. The letters A and B are sign slots. They are
//! instantiated with + (series at u = 0) or − (series at u = ∞).
//!
//! The check multiplies both sides by the product of the prefactor
//! denominators. The result is a polynomial combination of words, compared on
//! a grid of bi-coefficients. The multiplier is invertible in the ring where
//! prefactors are expanded in powers of (variable at 0)/(variable at ∞), so
//! the cleared identity is equivalent to the original one.

use crate::int::Int;
use crate::poly::{Mono, Poly, S, U, V};
use crate::quasidet::GaussFactors;
use crate::scalars::Scalar;
use crate::series::{Direction, Series};
use crate::tensor::Mat;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelError {
    #[error("cannot parse {0:?}: {1}")]
    Parse(String, String),
    #[error("denominator depends on u or v after clearing: {0}")]
    Denominator(String),
    #[error("no such generator: {0}")]
    Factor(String),
}

// ---------------------------------------------------------------------------
// Prefactor parser

struct Lexer<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src, chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn err(&self, msg: &str) -> RelError {
        RelError::Parse(self.src.to_string(), format!("{msg} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64, RelError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let t: String = self.chars[start..self.pos].iter().collect();
        t.parse().map_err(|_| self.err("integer too large"))
    }

    fn expr(&mut self) -> Result<Scalar, RelError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, RelError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
            } else if matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(') {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, RelError> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    /// Exponent as twice its value, so that q^(1/2) can be read.
    fn exponent(&mut self) -> Result<i64, RelError> {
        let neg = self.eat('-');
        let twice = if self.eat('(') {
            let neg_in = self.eat('-');
            let a = self.int()?;
            let t = if self.eat('/') {
                if self.int()? != 2 {
                    return Err(self.err("only halves are supported in exponents"));
                }
                a
            } else {
                2 * a
            };
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            if neg_in {
                -t
            } else {
                t
            }
        } else {
            2 * self.int()?
        };
        Ok(if neg { -twice } else { twice })
    }

    fn power(&mut self) -> Result<Scalar, RelError> {
        let (base, is_q) = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e2 = self.exponent()?;
        if is_q {
            return Ok(Scalar::s_pow(e2));
        }
        if e2 % 2 != 0 {
            return Err(self.err("half exponent on something other than q"));
        }
        let e = e2 / 2;
        if e >= 0 {
            Ok(base.pow(e))
        } else {
            let inv = base.inv().map_err(|_| self.err("negative power of zero"))?;
            Ok(inv.pow(-e))
        }
    }

    fn atom(&mut self) -> Result<(Scalar, bool), RelError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let x = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok((x, false))
            }
            Some(c) if c.is_ascii_digit() => Ok((Scalar::int(self.int()?), false)),
            Some(c) => {
                self.pos += 1;
                match c {
                    'q' => Ok((Scalar::q(), true)),
                    's' => Ok((Scalar::s(), false)),
                    'u' => Ok((Scalar::u(), false)),
                    'v' => Ok((Scalar::v(), false)),
                    'w' => Ok((Scalar::w(), false)),
                    _ => Err(self.err("unexpected character")),
                }
            }
            None => Err(self.err("unexpected end")),
        }
    }
}

/// Parses a prefactor such as `(q-q^-1)u/(qu-q^-1v)` or `q^(-1/2)`.
pub fn parse_prefactor(text: &str) -> Result<Scalar, RelError> {
    let mut lx = Lexer::new(text);
    let x = lx.expr()?;
    if lx.pos != lx.chars.len() {
        return Err(lx.err("trailing input"));
    }
    Ok(x)
}

/// Splits a Scalar whose denominator is free of u and v into terms
/// c·u^a·v^b with coefficients in ℚ(s)[w].
pub fn uv_terms(x: &Scalar) -> Result<Vec<((i64, i64), Scalar)>, RelError> {
    let (a, b, d) = x.parts();
    if d.degree_in(U) > 0 || d.degree_in(V) > 0 {
        return Err(RelError::Denominator(x.to_string()));
    }
    let mut groups: HashMap<(i64, i64), (Vec<(Mono, Int)>, Vec<(Mono, Int)>)> = HashMap::new();
    for (slot, p) in [(0, a), (1, b)] {
        for (m, c) in p.terms() {
            let key = (m.exp(U) as i64, m.exp(V) as i64);
            let g = groups.entry(key).or_default();
            let t = (Mono::var(S, m.exp(S)), c.clone());
            if slot == 0 {
                g.0.push(t);
            } else {
                g.1.push(t);
            }
        }
    }
    let mut out: Vec<((i64, i64), Scalar)> = groups
        .into_iter()
        .map(|(k, (ta, tb))| {
            let c = Scalar::from_parts(Poly::from_terms(ta), Poly::from_terms(tb), d.clone()).expect("nonzero denominator");
            (k, c)
        })
        .collect();
    out.sort_by_key(|(k, _)| *k);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Factors and words

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn dir(self) -> Direction {
        match self {
            Sign::Plus => Direction::AtZero,
            Sign::Minus => Direction::AtInfinity,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    H,
    E,
    F,
}

/// One factor of a word; indices are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Factor {
    pub kind: Kind,
    pub i: usize,
    pub j: usize,
    /// 0 for slot A, 1 for slot B.
    pub slot: usize,
    /// 0 for u, 1 for v.
    pub var: usize,
    pub power: i64,
}

fn parse_factor(tok: &str) -> Result<Factor, RelError> {
    let bad = |m: &str| RelError::Parse(tok.to_string(), m.to_string());
    let ch: Vec<char> = tok.chars().collect();
    let kind = match ch.first() {
        Some('h') => Kind::H,
        Some('e') => Kind::E,
        Some('f') => Kind::F,
        _ => return Err(bad("factor must start with h, e or f")),
    };
    let ndig = if kind == Kind::H { 1 } else { 2 };
    if ch.len() < 1 + ndig + 4 {
        return Err(bad("too short"));
    }
    let digit = |c: char| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("expected a digit"));
    let i = digit(ch[1])?;
    let j = if ndig == 2 { digit(ch[2])? } else { i };
    let p = 1 + ndig;
    let slot = match ch[p] {
        'A' => 0,
        'B' => 1,
        _ => return Err(bad("expected sign slot A or B")),
    };
    let var = match (ch[p + 1], ch[p + 2], ch[p + 3]) {
        ('(', 'u', ')') => 0,
        ('(', 'v', ')') => 1,
        _ => return Err(bad("expected (u) or (v)")),
    };
    let rest: String = ch[p + 4..].iter().collect();
    let power = if rest.is_empty() {
        1
    } else if let Some(e) = rest.strip_prefix('^') {
        e.parse().map_err(|_| bad("bad power"))?
    } else {
        return Err(bad("trailing characters"));
    };
    if power == 0 {
        return Err(bad("zero power"));
    }
    if i == 0 || j == 0 {
        return Err(bad("indices are 1-based"));
    }
    Ok(Factor { kind, i, j, slot, var, power })
}

/// A word is a whitespace-separated product of factors; `1` is the empty word.
pub fn parse_word(text: &str) -> Result<Vec<Factor>, RelError> {
    let t = text.trim();
    if t == "1" {
        return Ok(Vec::new());
    }
    t.split_whitespace().map(parse_factor).collect()
}

/// Which sign assignments (A, B) a relation is instantiated with.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Pairs {
    /// (+,+) and (−,−).
    Same,
    /// (+,−) and (−,+).
    Mixed,
    /// All four.
    All,
}

impl Pairs {
    pub fn signs(self) -> Vec<(Sign, Sign)> {
        use Sign::*;
        match self {
            Pairs::Same => vec![(Plus, Plus), (Minus, Minus)],
            Pairs::Mixed => vec![(Plus, Minus), (Minus, Plus)],
            Pairs::All => vec![(Plus, Plus), (Minus, Minus), (Plus, Minus), (Minus, Plus)],
        }
    }
}

/// A relation Σ lhs = Σ rhs in the text format.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<(String, String)>,
    pub rhs: Vec<(String, String)>,
    pub pairs: Pairs,
}

impl Relation {
    pub fn new(name: &str, lhs: &[(&str, &str)], rhs: &[(&str, &str)], pairs: Pairs) -> Relation {
        let own = |v: &[(&str, &str)]| v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        Relation { name: name.into(), lhs: own(lhs), rhs: own(rhs), pairs }
    }

    /// Shorthand for X = Y with unit prefactors.
    pub fn equal(name: &str, lhs: &str, rhs: &str, pairs: Pairs) -> Relation {
        Relation::new(name, &[("1", lhs)], &[("1", rhs)], pairs)
    }

    /// Shorthand for X·Y = Y·X.
    pub fn commute(name: &str, x: &str, y: &str, pairs: Pairs) -> Relation {
        Relation::equal(name, &format!("{x} {y}"), &format!("{y} {x}"), pairs)
    }

    /// Shorthand for p·X·Y = p·Y·X, a commutation written with a common
    /// prefactor on both sides.
    pub fn commute_with(name: &str, p: &str, x: &str, y: &str, pairs: Pairs) -> Relation {
        Relation::new(name, &[(p, &format!("{x} {y}"))], &[(p, &format!("{y} {x}"))], pairs)
    }
}

// ---------------------------------------------------------------------------
// Generator sources

/// Gaussian generators of L⁺ (at 0) and L⁻ (at ∞), as N×N factor matrices
/// with series-of-matrices entries.
#[derive(Clone, Debug)]
pub struct GaussPair {
    pub plus: GaussFactors<Series<Mat>>,
    pub minus: GaussFactors<Series<Mat>>,
}

impl GaussPair {
    pub fn get(&self, s: Sign) -> &GaussFactors<Series<Mat>> {
        match s {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn size(&self) -> usize {
        self.plus.size()
    }

    pub fn order(&self) -> usize {
        self.plus.h(0).order()
    }

    /// h_i, e_ij or f_ij (1-based) of the given sign.
    pub fn series(&self, kind: Kind, i: usize, j: usize, s: Sign) -> Result<&Series<Mat>, RelError> {
        let n = self.size();
        let g = self.get(s);
        let bad = || RelError::Factor(format!("{kind:?}{i}{j} with N = {n}"));
        if i == 0 || j == 0 || i > n || j > n {
            return Err(bad());
        }
        match kind {
            Kind::H => Ok(g.h(i - 1)),
            Kind::E if i < j => Ok(g.e(i - 1, j - 1)),
            Kind::F if i > j => Ok(g.f(i - 1, j - 1)),
            _ => Err(bad()),
        }
    }

    fn factor_series(&self, f: &Factor, s: Sign) -> Result<Series<Mat>, RelError> {
        let base = self.series(f.kind, f.i, f.j, s)?;
        let b = if f.power < 0 {
            base.inverse().map_err(|e| RelError::Factor(format!("{:?}{}: {e}", f.kind, f.i)))?
        } else {
            base.clone()
        };
        let mut out = b.clone();
        for _ in 1..f.power.abs() {
            out = out.try_mul(&b).expect("same direction");
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Bi-coefficient grids

/// Coefficients c[a][b] of u^{σ_u a} v^{σ_v b} for 0 ≤ a, b ≤ K, where σ = +1
/// at zero and −1 at infinity. Zero cells are stored as None.
#[derive(Clone, Debug)]
pub struct Grid {
    pub k: usize,
    dim: usize,
    cells: Vec<Option<Mat>>,
}

impl Grid {
    pub fn zero(k: usize, dim: usize) -> Grid {
        Grid { k, dim, cells: vec![None; (k + 1) * (k + 1)] }
    }

    pub fn identity(k: usize, dim: usize) -> Grid {
        let mut g = Grid::zero(k, dim);
        g.cells[0] = Some(Mat::identity(dim));
        g
    }

    fn at(&self, a: usize, b: usize) -> &Option<Mat> {
        &self.cells[a * (self.k + 1) + b]
    }

    pub fn cell(&self, a: usize, b: usize) -> Mat {
        self.at(a, b).clone().unwrap_or_else(|| Mat::zero(self.dim, self.dim))
    }

    fn put(&mut self, a: usize, b: usize, m: Mat) {
        let k = self.k;
        let slot = &mut self.cells[a * (k + 1) + b];
        *slot = match slot.take() {
            None => (!m.is_zero()).then_some(m),
            Some(x) => {
                let y = x.add(&m);
                (!y.is_zero()).then_some(y)
            }
        };
    }

    /// Multiplies on the right by a series in one variable.
    pub fn mul_series(&self, s: &Series<Mat>, var: usize) -> Grid {
        let k = self.k;
        let mut out = Grid::zero(k, self.dim);
        for a in 0..=k {
            for b in 0..=k {
                let Some(x) = self.at(a, b) else { continue };
                let idx = if var == 0 { a } else { b };
                for (t, c) in s.coeffs().iter().enumerate().take(k + 1 - idx) {
                    if c.is_zero() {
                        continue;
                    }
                    let (na, nb) = if var == 0 { (a + t, b) } else { (a, b + t) };
                    out.put(na, nb, x.mul(c));
                }
            }
        }
        out
    }

    /// Adds c·(self shifted by (da, db)).
    fn add_shifted(&mut self, o: &Grid, c: &Scalar, da: usize, db: usize) {
        let k = self.k;
        if da > k || db > k {
            return;
        }
        for a in 0..=k - da {
            for b in 0..=k - db {
                if let Some(x) = o.at(a, b) {
                    self.put(a + da, b + db, x.scale(c));
                }
            }
        }
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, &Mat)> {
        let k = self.k;
        (0..=k).flat_map(|a| (0..=k).map(move |b| (a, b))).find_map(|(a, b)| self.at(a, b).as_ref().map(|m| (a, b, m)))
    }
}

/// Describes the first nonzero entry of a matrix.
pub fn entry_witness(m: &Mat) -> String {
    match m.first_entry() {
        None => "zero".into(),
        Some((i, j, x)) => format!("entry ({},{}) = {}", i + 1, j + 1, x),
    }
}

struct Parsed {
    coeff: Scalar,
    word: Vec<Factor>,
}

fn parse_side(side: &[(String, String)], sign: i64) -> Result<Vec<Parsed>, RelError> {
    side.iter()
        .map(|(p, w)| {
            let c = parse_prefactor(p)?;
            Ok(Parsed { coeff: if sign < 0 { c.neg() } else { c }, word: parse_word(w)? })
        })
        .collect()
}

/// Checks one sign instance of a relation on the (K+1)² grid. Returns a
/// witness on failure.
pub fn check_instance(src: &GaussPair, rel: &Relation, signs: (Sign, Sign), k: usize) -> Result<Result<(), String>, RelError> {
    let mut terms = parse_side(&rel.lhs, 1)?;
    terms.extend(parse_side(&rel.rhs, -1)?);
    // Common multiple of the denominators.
    let mut dens: Vec<Poly> = Vec::new();
    for t in &terms {
        let d = t.coeff.parts().2.clone();
        if !d.is_constant() && !dens.contains(&d) {
            dens.push(d);
        }
    }
    let mut mult = Scalar::one();
    for d in dens {
        mult = mult.mul(&Scalar::from_poly(d));
    }
    let slots = [signs.0, signs.1];
    // Which sign each variable carries: that of the first factor using it.
    let mut var_sign: [Option<Sign>; 2] = [None, None];
    for t in &terms {
        for f in &t.word {
            let s = slots[f.slot];
            match var_sign[f.var] {
                None => var_sign[f.var] = Some(s),
                Some(x) if x != s => {
                    return Err(RelError::Parse(rel.name.clone(), "one variable used with two signs".into()))
                }
                _ => {}
            }
        }
    }
    let sigma = |v: usize| match var_sign[v].unwrap_or(Sign::Plus) {
        Sign::Plus => 1i64,
        Sign::Minus => -1,
    };
    let mut expanded: Vec<(Vec<((i64, i64), Scalar)>, &Vec<Factor>)> = Vec::new();
    for t in &terms {
        expanded.push((uv_terms(&t.coeff.mul(&mult))?, &t.word));
    }
    let (mut min_a, mut min_b) = (i64::MAX, i64::MAX);
    for (mons, _) in &expanded {
        for ((eu, ev), _) in mons {
            min_a = min_a.min(sigma(0) * eu);
            min_b = min_b.min(sigma(1) * ev);
        }
    }
    let dim = src.get(Sign::Plus).h(0).coeff(0).nrows();
    let mut cache: HashMap<(Factor, Sign), Series<Mat>> = HashMap::new();
    let mut residual = Grid::zero(k, dim);
    for (mons, word) in &expanded {
        if mons.is_empty() {
            continue;
        }
        let mut g = Grid::identity(k, dim);
        for f in word.iter() {
            let s = slots[f.slot];
            if !cache.contains_key(&(f.clone(), s)) {
                cache.insert((f.clone(), s), src.factor_series(f, s)?);
            }
            g = g.mul_series(&cache[&(f.clone(), s)], f.var);
        }
        for ((eu, ev), c) in mons {
            let da = (sigma(0) * eu - min_a) as usize;
            let db = (sigma(1) * ev - min_b) as usize;
            residual.add_shifted(&g, c, da, db);
        }
    }
    Ok(match residual.first_nonzero() {
        None => Ok(()),
        Some((a, b, m)) => Err(format!(
            "bi-coefficient ({a},{b}) of the cleared relation (multiplier {mult}) has {}",
            entry_witness(m)
        )),
    })
}

/// Human-readable sign instance, e.g. `[A=+,B=-]`.
pub fn signs_label(s: (Sign, Sign)) -> String {
    format!("[A={},B={}]", s.0.symbol(), s.1.symbol())
}

/// Runs every sign instance of a relation; one outcome per instance.
pub fn check_relation(src: &GaussPair, rel: &Relation, k: usize) -> Vec<(String, Result<(), String>)> {
    rel.pairs
        .signs()
        .into_iter()
        .map(|s| {
            let name = format!("{} {}", rel.name, signs_label(s));
            let r = match check_instance(src, rel, s, k) {
                Ok(r) => r,
                Err(e) => Err(e.to_string()),
            };
            (name, r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasidet::gauss_decompose;
    use crate::ring::Ring;

    #[test]
    fn prefactor_parser_values() {
        let q = Scalar::q();
        let qi = Scalar::q_pow(-1);
        let u = Scalar::u();
        let v = Scalar::v();
        let want = q.sub(&qi).mul(&u).div(&q.mul(&u).sub(&qi.mul(&v))).unwrap();
        assert_eq!(parse_prefactor("(q-q^-1)u/(qu-q^-1v)").unwrap(), want);
        assert_eq!(parse_prefactor("q^(1/2)").unwrap(), Scalar::s());
        assert_eq!(parse_prefactor("q^(-1/2)").unwrap(), Scalar::s_pow(-1));
        assert_eq!(parse_prefactor("-q^-2*3").unwrap(), Scalar::q_pow(-2).mul(&Scalar::int(-3)));
        assert_eq!(parse_prefactor("(u-v)^2").unwrap(), u.sub(&v).mul(&u.sub(&v)));
        assert_eq!(parse_prefactor("1/(u-v)^-1").unwrap(), u.sub(&v));
        assert!(parse_prefactor("q^(1/3)").is_err());
        assert!(parse_prefactor("u^(1/2)").is_err());
        assert!(parse_prefactor("(u").is_err());
    }

    #[test]
    fn uv_terms_split() {
        let x = parse_prefactor("q^2u^2v - 3uv + q^-1").unwrap();
        let t = uv_terms(&x).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0], ((0, 0), Scalar::q_pow(-1)));
        assert_eq!(t[1], ((1, 1), Scalar::int(-3)));
        assert_eq!(t[2], ((2, 1), Scalar::q_pow(2)));
        assert!(uv_terms(&parse_prefactor("1/(u-v)").unwrap()).is_err());
    }

    #[test]
    fn word_parser() {
        let w = parse_word("h1A(u)^-1 e12B(v)^2").unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!((w[0].kind, w[0].i, w[0].slot, w[0].var, w[0].power), (Kind::H, 1, 0, 0, -1));
        assert_eq!((w[1].kind, w[1].i, w[1].j, w[1].slot, w[1].var, w[1].power), (Kind::E, 1, 2, 1, 1, 2));
        assert!(parse_word("x1A(u)").is_err());
        assert!(parse_word("h1C(u)").is_err());
        assert!(parse_word("1").unwrap().is_empty());
    }

    /// A commutative 2×2 example with scalar (1×1) blocks: L = [[1, 0], [c·u, 1]]·diag.
    fn toy(dir: Direction, k: usize) -> GaussFactors<Series<Mat>> {
        let one = Series::constant(dir, Mat::identity(1), k);
        let mut fc = vec![Mat::zero(1, 1); k + 1];
        fc[1] = Mat::diag(vec![Scalar::q()]);
        let f = Series::new(dir, fc);
        let mut hc = vec![Mat::zero(1, 1); k + 1];
        hc[0] = Mat::identity(1);
        hc[1] = Mat::diag(vec![Scalar::int(2)]);
        let h = Series::new(dir, hc);
        let z = one.map(|m| m.zero_like());
        let l = vec![vec![h.clone(), z.clone()], vec![f.try_mul(&h).unwrap(), one.clone()]];
        gauss_decompose(&l).unwrap()
    }

    #[test]
    fn grid_checks_true_and_false_relations() {
        let k = 6;
        let src = GaussPair { plus: toy(Direction::AtZero, k), minus: toy(Direction::AtInfinity, k) };
        // Scalar entries commute, so every exchange holds.
        let r = Relation::commute("h1-f21", "h1A(u)", "f21B(v)", Pairs::All);
        assert!(check_relation(&src, &r, k).iter().all(|(_, x)| x.is_ok()));
        // (u − v)·h1(u) = (u − v)·h1(u) with a cleared denominator.
        let r = Relation::commute_with("scaled", "(u-v)/(qu-q^-1v)", "h1A(u)", "h2B(v)", Pairs::All);
        assert!(check_relation(&src, &r, k).iter().all(|(_, x)| x.is_ok()));
        // f21 is q·u at zero and q·u⁻¹ at infinity.
        let r = Relation::new("f-exact", &[("1", "f21A(u)")], &[("qu", "1")], Pairs::Same);
        let out = check_relation(&src, &r, k);
        assert!(out[0].1.is_ok(), "{:?}", out[0]);
        assert!(out[1].1.is_err());
        let r = Relation::equal("f-vs-h", "f21A(u)", "h1A(u)", Pairs::Same);
        assert!(check_relation(&src, &r, k).iter().all(|(_, x)| x.is_err()));
        // h(u) = 1 + 2u at zero: (1 + 2u)^-1·h(u) = 1.
        let r = Relation::new("inverse", &[("1", "h1A(u)^-1 h1A(u)")], &[("1", "1")], Pairs::Same);
        assert!(check_relation(&src, &r, k).iter().all(|(_, x)| x.is_ok()));
    }

    #[test]
    fn mixed_expansion_direction() {
        // With h(u) = 1 + 2u at 0 and h(v) = 1 + 2/v at ∞, the relation
        // (u − v)h(u)h(v) = (u − v)h(v)h(u) holds; replacing the right side by
        // (u − v)h(u) alone must fail.
        let k = 5;
        let src = GaussPair { plus: toy(Direction::AtZero, k), minus: toy(Direction::AtInfinity, k) };
        let ok = Relation::commute_with("c", "u-v", "h1A(u)", "h1B(v)", Pairs::Mixed);
        assert!(check_relation(&src, &ok, k).iter().all(|(_, x)| x.is_ok()));
        let bad = Relation::new("b", &[("u-v", "h1A(u) h1B(v)")], &[("u-v", "h1A(u)")], Pairs::Mixed);
        assert!(check_relation(&src, &bad, k).iter().all(|(_, x)| x.is_err()));
    }
}
