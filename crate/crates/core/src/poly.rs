//! Sparse multivariate polynomials over Z/pZ (and over Z, for input).
//!
//! A [`Poly`] is a list of `(Monomial, coefficient)` pairs kept strictly
//! decreasing in the ring's monomial order with no zero coefficients, so the
//! zero polynomial is the empty list and equality is structural. All ring
//! operations go through a [`PolyRing`], which carries the variable count, the
//! field and the order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::fparith::{Fp, FpScalar};

/// Exponent vector `x1^e1 ... xn^en`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, k: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[k] = e;
        m
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn exps_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| b - a).collect())
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn checked_scale(&self, q: u64) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for &e in &self.0 {
            let v = (e as u64).checked_mul(q)?;
            out.push(u32::try_from(v).ok()?);
        }
        Some(Monomial(out))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => {
                let da = a.degree();
                let db = b.degree();
                if da != db {
                    return da.cmp(&db);
                }
                for (x, y) in a.0.iter().zip(b.0.iter()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.0.cmp(&b.0),
        }
    }
}

pub type Term = (Monomial, FpScalar);

#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Poly {
    terms: Vec<Term>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }
}

/// Z/pZ[x1..xn] with a fixed monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub nvars: usize,
    pub field: Fp,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(nvars: usize, field: Fp) -> Self {
        PolyRing {
            nvars,
            field,
            order: MonomialOrder::Grevlex,
        }
    }

    pub fn with_order(nvars: usize, field: Fp, order: MonomialOrder) -> Self {
        PolyRing {
            nvars,
            field,
            order,
        }
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// Canonicalizes an arbitrary term list: merges equal monomials, drops
    /// zeros, sorts decreasingly.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = Term>) -> Poly {
        let mut acc: HashMap<Monomial, FpScalar> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), self.nvars);
            let slot = acc.entry(m).or_insert(0);
            *slot = self.field.add(*slot, c % self.field.p());
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        self.sort_terms(&mut terms);
        Poly { terms }
    }

    /// Wraps terms already sorted decreasingly, distinct and nonzero.
    pub(crate) fn wrap_sorted_unchecked(&self, terms: Vec<Term>) -> Poly {
        debug_assert!(terms
            .windows(2)
            .all(|w| self.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Poly { terms }
    }

    /// `f += c * m` in place.
    pub fn add_term_in_place(&self, f: &mut Poly, m: Monomial, c: FpScalar) {
        let c = c % self.field.p();
        if c == 0 {
            return;
        }
        let order = self.order;
        match f.terms.binary_search_by(|(t, _)| order.cmp(&m, t)) {
            Ok(k) => {
                let s = self.field.add(f.terms[k].1, c);
                if s == 0 {
                    f.terms.remove(k);
                } else {
                    f.terms[k].1 = s;
                }
            }
            Err(k) => f.terms.insert(k, (m, c)),
        }
    }

    pub fn sort_terms(&self, terms: &mut [Term]) {
        let order = self.order;
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
    }

    pub fn constant(&self, c: FpScalar) -> Poly {
        self.from_terms([(Monomial::one(self.nvars), c)])
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    pub fn var(&self, k: usize) -> Poly {
        self.monomial(Monomial::var(self.nvars, k, 1), 1)
    }

    pub fn monomial(&self, m: Monomial, c: FpScalar) -> Poly {
        self.from_terms([(m, c)])
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        self.add_scaled(f, g, 1, None)
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        self.add_scaled(f, g, self.field.neg(1), None)
    }

    pub fn neg(&self, f: &Poly) -> Poly {
        self.scale(f, self.field.neg(1))
    }

    pub fn scale(&self, f: &Poly, c: FpScalar) -> Poly {
        let c = c % self.field.p();
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            terms: f
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(*a, c)))
                .collect(),
        }
    }

    /// `f + c * shift * g`, where `shift` is an optional monomial multiplier.
    pub fn add_scaled(&self, f: &Poly, g: &Poly, c: FpScalar, shift: Option<&Monomial>) -> Poly {
        let fld = self.field;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut gi = g.terms.iter().map(|(m, a)| {
            let m = match shift {
                Some(s) => m.mul(s),
                None => m.clone(),
            };
            (m, fld.mul(*a, c))
        });
        let mut fi = f.terms.iter().cloned();
        let mut a = fi.next();
        let mut b = gi.next();
        loop {
            match (a.take(), b.take()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push(x);
                    out.extend(fi.by_ref());
                    break;
                }
                (None, Some(y)) => {
                    if y.1 != 0 {
                        out.push(y);
                    }
                    out.extend(gi.by_ref().filter(|t| t.1 != 0));
                    break;
                }
                (Some(x), Some(y)) => match self.order.cmp(&x.0, &y.0) {
                    Ordering::Greater => {
                        out.push(x);
                        a = fi.next();
                        b = Some(y);
                    }
                    Ordering::Less => {
                        if y.1 != 0 {
                            out.push(y);
                        }
                        a = Some(x);
                        b = gi.next();
                    }
                    Ordering::Equal => {
                        let s = fld.add(x.1, y.1);
                        if s != 0 {
                            out.push((x.0, s));
                        }
                        a = fi.next();
                        b = gi.next();
                    }
                },
            }
        }
        Poly { terms: out }
    }

    pub fn mul_term(&self, f: &Poly, m: &Monomial, c: FpScalar) -> Poly {
        let c = c % self.field.p();
        if c == 0 {
            return Poly::zero();
        }
        // multiplication by a monomial preserves the order
        Poly {
            terms: f
                .terms
                .iter()
                .map(|(a, b)| (a.mul(m), self.field.mul(*b, c)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        if f.len() == 1 {
            return self.mul_term(g, &f.terms[0].0, f.terms[0].1);
        }
        if g.len() == 1 {
            return self.mul_term(f, &g.terms[0].0, g.terms[0].1);
        }
        let mut acc: HashMap<Monomial, FpScalar> =
            HashMap::with_capacity(f.len() * g.len());
        for (ma, ca) in &f.terms {
            for (mb, cb) in &g.terms {
                let slot = acc.entry(ma.mul(mb)).or_insert(0);
                *slot = self.field.add(*slot, self.field.mul(*ca, *cb));
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        self.sort_terms(&mut terms);
        Poly { terms }
    }

    pub fn pow(&self, f: &Poly, mut e: u64) -> Poly {
        let mut base = f.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `f^q` for `q = p^j`: exponents scale by `q`, coefficients stay fixed
    /// since Frobenius is the identity on the prime field.
    pub fn frobenius_power(&self, f: &Poly, q: u64) -> Result<Poly> {
        if self.field.log_p(q).is_none() {
            return Err(Error::Contract(format!(
                "{q} is not a power of {}",
                self.field.p()
            )));
        }
        let mut terms = Vec::with_capacity(f.len());
        for (m, c) in &f.terms {
            let scaled = m
                .checked_scale(q)
                .ok_or_else(|| Error::Contract(format!("exponent overflow raising to {q}")))?;
            terms.push((scaled, *c));
        }
        // scaling every exponent by q preserves both supported orders
        Ok(Poly { terms })
    }

    /// Renders with variables `x1..xn`.
    pub fn format(&self, f: &Poly) -> String {
        self.format_with(f, &default_var_names(self.nvars))
    }

    pub fn format_with(&self, f: &Poly, names: &[String]) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in f.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            write_term(&mut out, &c.to_string(), m, names);
        }
        out
    }

    /// Parses the polynomial grammar and reduces coefficients mod p.
    pub fn parse(&self, src: &str, names: &[String]) -> Result<Poly> {
        Ok(parse_int_poly(src, names)?.reduce_mod_p(self))
    }
}

pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("x{k}")).collect()
}

fn write_term(out: &mut String, coeff: &str, m: &Monomial, names: &[String]) {
    let factors: Vec<String> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| {
            if e == 1 {
                names[k].clone()
            } else {
                format!("{}^{}", names[k], e)
            }
        })
        .collect();
    if factors.is_empty() {
        out.push_str(coeff);
    } else {
        if coeff != "1" {
            out.push_str(coeff);
            out.push('*');
        }
        out.push_str(&factors.join("*"));
    }
}

/// Polynomial with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn new(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut out = Self::new(nvars);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        let slot = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient-wise reduction; terms divisible by p disappear.
    pub fn reduce_mod_p(&self, ring: &PolyRing) -> Poly {
        let p = BigInt::from(ring.field.p());
        ring.from_terms(self.terms.iter().map(|(m, c)| {
            let r = c.mod_floor(&p).to_u32().expect("residue below p");
            (m.clone(), r)
        }))
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let order = MonomialOrder::Grevlex;
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|a, b| order.cmp(b.0, a.0));
        let mut out = String::new();
        for (k, (m, c)) in sorted.into_iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            write_term(&mut out, &c.abs().to_string(), m, names);
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&default_var_names(self.nvars)))
    }
}

/// Parses `terms joined by + / -`, each term `[coeff][*][var^exp*...]`.
/// Errors carry a 1-based column on line 1; callers re-anchor them.
pub fn parse_int_poly(src: &str, names: &[String]) -> Result<IntPoly> {
    Parser {
        chars: src.char_indices().collect(),
        pos: 0,
        names,
    }
    .poly()
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: 1,
            column: self.column(),
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn integer(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|c| c.1).collect())
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos].1;
            let ok = if self.pos == start {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_'
            };
            if !ok {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|c| c.1).collect())
    }

    fn poly(mut self) -> Result<IntPoly> {
        let nvars = self.names.len();
        let mut out = IntPoly::new(nvars);
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut sign = BigInt::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, c * &sign);
            match self.peek() {
                None => break,
                Some('+') => {
                    sign = BigInt::one();
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -BigInt::one();
                    self.pos += 1;
                }
                Some(c) => return self.err(format!("unexpected character '{c}'")),
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let nvars = self.names.len();
        let mut coeff = BigInt::one();
        let mut mono = Monomial::one(nvars);
        let mut seen_any = false;
        if let Some(digits) = self.integer() {
            coeff = digits.parse::<BigInt>().expect("digits");
            seen_any = true;
            if self.peek() == Some('*') {
                self.pos += 1;
            } else if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_') {
                return Ok((mono, coeff));
            }
        }
        loop {
            let col = self.column();
            let Some(name) = self.ident() else {
                return if seen_any {
                    self.err("expected a variable after '*'")
                } else {
                    self.err("expected a coefficient or variable")
                };
            };
            let Some(k) = self.names.iter().position(|n| *n == name) else {
                return Err(Error::Parse {
                    line: 1,
                    column: col,
                    message: format!("unknown variable '{name}'"),
                });
            };
            let mut e: u64 = 1;
            if self.peek() == Some('^') {
                self.pos += 1;
                let Some(digits) = self.integer() else {
                    return self.err("expected an exponent after '^'");
                };
                e = match digits.parse::<u64>() {
                    Ok(v) if v < (1 << 31) => v,
                    _ => return self.err(format!("exponent {digits} overflows")),
                };
            }
            let total = mono.exps()[k] as u64 + e;
            if total >= 1 << 31 {
                return self.err("exponent overflows");
            }
            mono.exps_mut()[k] = total as u32;
            seen_any = true;
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if mono.degree() >= 1 << 31 {
            return self.err("total degree overflows");
        }
        Ok((mono, coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize, p: u64) -> PolyRing {
        PolyRing::new(n, Fp::new(p).unwrap())
    }

    fn names(n: usize) -> Vec<String> {
        default_var_names(n)
    }

    #[test]
    fn reduce_examples() {
        let r3 = ring(1, 3);
        let f = parse_int_poly("3*x1^2 + 6", &names(1)).unwrap();
        assert!(f.reduce_mod_p(&r3).is_zero());
        let g = parse_int_poly("5*x1 - 2", &names(1)).unwrap();
        assert_eq!(r3.format(&g.reduce_mod_p(&r3)), "2*x1 + 1");
        let r7 = ring(3, 7);
        let h = parse_int_poly("x1^3 + x2^3 + x3^3", &names(3)).unwrap();
        assert_eq!(r7.format(&h.reduce_mod_p(&r7)), "x1^3 + x2^3 + x3^3");
    }

    #[test]
    fn arithmetic_examples() {
        let r2 = ring(1, 2);
        let x1 = r2.add(&r2.var(0), &r2.one());
        assert_eq!(r2.format(&r2.mul(&x1, &x1)), "x1^2 + 1");
        assert_eq!(r2.add(&x1, &Poly::zero()), x1);
        let r5 = ring(2, 5);
        let a = r5.parse("x1 + x2", &names(2)).unwrap();
        let b = r5.parse("x1 - x2", &names(2)).unwrap();
        assert_eq!(r5.format(&r5.mul(&a, &b)), "x1^2 + 4*x2^2");
    }

    #[test]
    fn frobenius_examples() {
        let r2 = ring(2, 2);
        let f = r2.parse("x1 + x2", &names(2)).unwrap();
        assert_eq!(r2.format(&r2.frobenius_power(&f, 4).unwrap()), "x1^4 + x2^4");
        assert_eq!(r2.frobenius_power(&f, 1).unwrap(), f);
        let r3 = ring(1, 3);
        let g = r3.parse("2*x1 + 1", &names(1)).unwrap();
        let cube = r3.frobenius_power(&g, 3).unwrap();
        assert_eq!(cube, r3.pow(&g, 3));
        assert_eq!(r3.format(&cube), "2*x1^3 + 1");
        assert!(r3.frobenius_power(&g, 6).is_err());
    }

    #[test]
    fn parse_grammar() {
        let f = parse_int_poly("3*x1^2*x2 - 5", &names(2)).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_string(), "3*x1^2*x2 - 5");
        let g = parse_int_poly(" - x2 *x1 + 2 x1 ", &names(2)).unwrap();
        assert_eq!(g.to_string(), "-x1*x2 + 2*x1");
        let err = parse_int_poly("x1 + x7", &names(2)).unwrap_err();
        match err {
            Error::Parse { column, message, .. } => {
                assert_eq!(column, 6);
                assert!(message.contains("x7"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_int_poly("x1^99999999999", &names(1)).is_err());
        assert!(parse_int_poly("x1 +", &names(1)).is_err());
        assert!(parse_int_poly("", &names(1)).is_err());
        assert!(parse_int_poly("x1 ^", &names(1)).is_err());
        assert!(parse_int_poly("x1 x2", &names(2)).is_err());
    }

    #[test]
    fn grevlex_and_lex() {
        let a = Monomial::from_exps(&[1, 0, 1]);
        let b = Monomial::from_exps(&[0, 2, 0]);
        assert_eq!(MonomialOrder::Grevlex.cmp(&b, &a), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        let c = Monomial::from_exps(&[0, 0, 3]);
        let d = Monomial::from_exps(&[1, 1, 1]);
        assert_eq!(MonomialOrder::Grevlex.cmp(&d, &c), Ordering::Greater);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(n: usize, p: u32, max_terms: usize, max_deg: u32) -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
            proptest::collection::vec(
                (proptest::collection::vec(0..=max_deg, n), 0..p),
                0..=max_terms,
            )
        }

        fn build(r: &PolyRing, raw: Vec<(Vec<u32>, u32)>) -> Poly {
            r.from_terms(raw.into_iter().map(|(e, c)| (Monomial::from_exps(&e), c)))
        }

        proptest! {
            #[test]
            fn frobenius_is_repeated_product(pi in 0usize..3, j in 1u32..=2, raw in arb_poly(2, 5, 5, 2)) {
                let p = [2u64, 3, 5][pi];
                let r = ring(2, p);
                let f = build(&r, raw.into_iter().map(|(e, c)| (e, c % p as u32)).collect());
                let q = p.pow(j);
                let mut prod = r.one();
                for _ in 0..q {
                    prod = r.mul(&prod, &f);
                }
                prop_assert_eq!(r.frobenius_power(&f, q).unwrap(), prod);
            }

            #[test]
            fn ring_axioms(pi in 0usize..2, a in arb_poly(3, 3, 4, 2), b in arb_poly(3, 3, 4, 2), c in arb_poly(3, 3, 4, 2)) {
                let p = [2u64, 3][pi];
                let r = ring(3, p);
                let m = |v: Vec<(Vec<u32>, u32)>| build(&r, v.into_iter().map(|(e, c)| (e, c % p as u32)).collect());
                let (a, b, c) = (m(a), m(b), m(c));
                prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
                prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
                prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
                prop_assert!(r.sub(&a, &a).is_zero());
            }

            #[test]
            fn format_parse_roundtrip(raw in arb_poly(3, 7, 6, 3)) {
                let r = ring(3, 7);
                let f = build(&r, raw);
                let s = r.format(&f);
                let g = r.parse(&s, &names(3)).unwrap();
                prop_assert_eq!(&g, &f);
                prop_assert_eq!(r.format(&g), s);
            }
        }
    }
}
