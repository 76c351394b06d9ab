//! Sparse polynomials over GF(p) with grevlex-ordered terms.
//!
//! Terms are kept in a `BTreeMap` keyed by monomial, so iteration runs in
//! increasing grevlex order and the leading term is the last entry. Zero
//! coefficients are never stored.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;

/// A monomial together with a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub monomial: Monomial,
    pub coefficient: u64,
}

/// A sparse polynomial in n variables over GF(p).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Builds from (monomial, coefficient) pairs, reducing mod p and
    /// dropping anything that cancels.
    pub fn from_terms<I>(n: usize, terms: I, field: &PrimeField) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let mut map: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.n_vars(), n, "monomial arity mismatch");
            let c = c % field.modulus();
            if c == 0 {
                continue;
            }
            let entry = map.entry(m).or_insert(0);
            *entry = field.add(*entry, c);
        }
        map.retain(|_, c| *c != 0);
        Polynomial { n, terms: map }
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in increasing grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &u64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Total degree of the leading term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// True when every term has the same total degree (vacuously for 0).
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(first) => {
                let d = first.degree();
                it.all(|m| m.degree() == d)
            }
        }
    }

    /// Leading term in grevlex; `None` for the zero polynomial.
    pub fn leading_term(&self) -> Option<Term> {
        self.terms.iter().next_back().map(|(m, &c)| Term {
            monomial: m.clone(),
            coefficient: c,
        })
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn add(&self, other: &Polynomial, field: &PrimeField) -> Polynomial {
        assert_eq!(self.n, other.n);
        let mut out = self.terms.clone();
        for (m, &c) in &other.terms {
            let e = out.entry(m.clone()).or_insert(0);
            *e = field.add(*e, c);
        }
        out.retain(|_, c| *c != 0);
        Polynomial { n: self.n, terms: out }
    }

    pub fn sub(&self, other: &Polynomial, field: &PrimeField) -> Polynomial {
        assert_eq!(self.n, other.n);
        let mut out = self.terms.clone();
        for (m, &c) in &other.terms {
            let e = out.entry(m.clone()).or_insert(0);
            *e = field.sub(*e, c);
        }
        out.retain(|_, c| *c != 0);
        Polynomial { n: self.n, terms: out }
    }

    pub fn scale(&self, c: u64, field: &PrimeField) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, &v)| (m.clone(), field.mul(v, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(t, &c)| (t.mul(m), c))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u64, field: &PrimeField) -> Polynomial {
        self.mul_monomial(m).scale(c, field)
    }

    pub fn mul(&self, other: &Polynomial, field: &PrimeField) -> Polynomial {
        assert_eq!(self.n, other.n);
        let mut out: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = out.entry(a.mul(b)).or_insert(0);
                *e = field.add(*e, field.mul(ca, cb));
            }
        }
        out.retain(|_, c| *c != 0);
        Polynomial { n: self.n, terms: out }
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self, field: &PrimeField) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some(lt) if lt.coefficient == 1 => self.clone(),
            Some(lt) => self.scale(field.inv(lt.coefficient).expect("nonzero"), field),
        }
    }

    /// Full normal-form reduction by the list `basis`.
    ///
    /// Every support monomial divisible by some leading monomial of the
    /// basis gets eliminated; ties between divisors go to the smallest
    /// position in `basis`, so the result is reproducible. The returned
    /// polynomial satisfies `self - result ∈ <basis>`.
    pub fn normal_form(&self, basis: &[Polynomial], field: &PrimeField) -> Polynomial {
        let lts: Vec<(usize, Monomial, u64)> = basis
            .iter()
            .enumerate()
            .filter_map(|(k, g)| {
                g.leading_term().map(|lt| (k, lt.monomial, lt.coefficient))
            })
            .collect();
        let mut work = self.clone();
        // Reductions only introduce monomials below the one eliminated, so
        // a descending cursor never has to revisit larger monomials.
        let mut cursor: Option<Monomial> = None;
        loop {
            let target = work
                .terms
                .iter()
                .rev()
                .filter(|(m, _)| match &cursor {
                    Some(c) => *m <= c,
                    None => true,
                })
                .find_map(|(m, &c)| {
                    lts.iter()
                        .find(|(_, lt, _)| lt.divides(m))
                        .map(|&(k, _, lc)| (m.clone(), c, k, lc))
                });
            let Some((mono, coeff, k, lc)) = target else {
                break;
            };
            let quot = mono.quotient(basis[k].leading_monomial().unwrap()).unwrap();
            let factor = field.mul(coeff, field.inv(lc).expect("nonzero lc"));
            let sub = basis[k].mul_term(&quot, factor, field);
            work = work.sub(&sub, field);
            cursor = Some(mono);
        }
        work
    }

    /// Canonical rendering: terms in decreasing grevlex, coefficients as
    /// least nonnegative residues. `parse` of this string gives back the
    /// same polynomial.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, &c) in self.terms.iter().rev() {
            let ms = m.format(names);
            if m.is_one() {
                parts.push(format!("{c}"));
            } else if c == 1 {
                parts.push(ms);
            } else {
                parts.push(format!("{c}*{ms}"));
            }
        }
        parts.join(" + ")
    }

    /// Human-friendly rendering with balanced signed coefficients
    /// (residues above p/2 print as negatives).
    pub fn format_signed(&self, names: &[String], field: &PrimeField) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let p = field.modulus();
        let mut s = String::new();
        for (idx, (m, &c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if c > p / 2 { ("-", p - c) } else { ("+", c) };
            if idx == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            let ms = m.format(names);
            if m.is_one() {
                s.push_str(&format!("{mag}"));
            } else if mag == 1 {
                s.push_str(&ms);
            } else {
                s.push_str(&format!("{mag}*{ms}"));
            }
        }
        s
    }

    /// Parses the text grammar: terms joined by `+`/`-`; a term is an
    /// optional integer and variable factors `var[^exp]`, joined by `*`
    /// (juxtaposition is also accepted); whitespace is ignored.
    pub fn parse(text: &str, variables: &[String], field: &PrimeField) -> Result<Polynomial> {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            vars: variables,
            field,
        }
        .parse()
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    vars: &'a [String],
    field: &'a PrimeField,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        let mut terms: Vec<(Monomial, u64)> = Vec::new();
        self.skip_ws();
        let mut sign = self.take_sign().unwrap_or(1i64);
        loop {
            let (m, c) = self.term(n)?;
            let c = if sign < 0 { self.field.neg(c) } else { c };
            terms.push((m, c));
            self.skip_ws();
            match self.take_sign() {
                Some(s) => sign = s,
                None => break,
            }
        }
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(Polynomial::from_terms(n, terms, self.field))
    }

    fn term(&mut self, n: usize) -> Result<(Monomial, u64)> {
        self.skip_ws();
        let mut coeff: u64 = 1;
        let mut exps = vec![0u8; n];
        let mut saw_factor = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let v = self.integer()?;
                    coeff = self.field.mul(coeff, v);
                    saw_factor = true;
                }
                Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                    let start = self.pos;
                    let name = self.identifier();
                    let j = self
                        .vars
                        .iter()
                        .position(|v| v == &name)
                        .ok_or(Error::UnknownVariable {
                            name: name.clone(),
                            position: start,
                        })?;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let e = self.integer_raw()?;
                        if e > 255 {
                            return Err(self.err("exponent too large"));
                        }
                        e as u8
                    } else {
                        1
                    };
                    exps[j] = exps[j]
                        .checked_add(e)
                        .ok_or_else(|| self.err("exponent overflow"))?;
                    saw_factor = true;
                }
                _ => break,
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
        }
        if !saw_factor {
            return Err(self.err("expected a term"));
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn take_sign(&mut self) -> Option<i64> {
        self.skip_ws();
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(1)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(-1)
            }
            _ => None,
        }
    }

    fn integer(&mut self) -> Result<u64> {
        // arbitrary length, reduced mod p as digits stream in
        let p = self.field.modulus();
        let start = self.pos;
        let mut acc: u64 = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            acc = (acc * 10 + (b - b'0') as u64) % p;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        Ok(acc)
    }

    fn integer_raw(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut acc: u64 = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            acc = acc
                .checked_mul(10)
                .and_then(|a| a.checked_add((b - b'0') as u64))
                .ok_or_else(|| self.err("integer too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        Ok(acc)
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_alphanumeric() || b == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn skip_ws(&mut self) {
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::default_field()
    }

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_circles_f1() {
        let f = field();
        let v = vars(&["x", "y", "z", "h"]);
        let f1 = Polynomial::parse("x^2 + y^2 - 2*x*z - 2*y*z + z^2 + h^2", &v, &f).unwrap();
        assert_eq!(f1.num_terms(), 6);
        assert_eq!(
            f1.coefficient(&Monomial::new(vec![1, 0, 1, 0])),
            f.from_i64(-2)
        );
        assert_eq!(f1.leading_monomial().unwrap(), &Monomial::new(vec![2, 0, 0, 0]));
        assert!(f1.is_homogeneous());
    }

    #[test]
    fn parse_zero() {
        let f = field();
        let v = vars(&["x"]);
        assert!(Polynomial::parse("0", &v, &f).unwrap().is_zero());
    }

    #[test]
    fn parse_cancellation() {
        let f = field();
        let v = vars(&["x1", "x2"]);
        let p = Polynomial::parse("7*x1^2 - 7*x1^2 + x2^2", &v, &f).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coefficient(&Monomial::new(vec![0, 2])), 1);
    }

    #[test]
    fn parse_errors_carry_position() {
        let f = field();
        let v = vars(&["x"]);
        match Polynomial::parse("x^2 + w", &v, &f) {
            Err(Error::UnknownVariable { name, position }) => {
                assert_eq!(name, "w");
                assert_eq!(position, 6);
            }
            other => panic!("expected unknown variable, got {other:?}"),
        }
        assert!(Polynomial::parse("x +", &v, &f).is_err());
    }

    #[test]
    fn leading_term_examples() {
        let f = field();
        let v = vars(&["x", "y", "z", "h"]);
        let f2 = Polynomial::parse("x^2 + x*y + y*z - z^2 - 2*h^2", &v, &f).unwrap();
        let lt = f2.leading_term().unwrap();
        assert_eq!(lt.monomial, Monomial::new(vec![2, 0, 0, 0]));
        assert_eq!(lt.coefficient, 1);

        let g = Polynomial::parse("2*y^3 - 7*x*y*z - 3*y^2*z", &v, &f).unwrap();
        let lt = g.leading_term().unwrap();
        assert_eq!(lt.monomial, Monomial::new(vec![0, 3, 0, 0]));
        assert_eq!(lt.coefficient, 2);

        assert!(Polynomial::zero(4).leading_term().is_none());
    }

    #[test]
    fn normal_form_self_is_zero() {
        let f = field();
        let v = vars(&["x", "y"]);
        let g = Polynomial::parse("x^2 + 3*x*y", &v, &f).unwrap();
        assert!(g.normal_form(std::slice::from_ref(&g), &f).is_zero());
    }

    #[test]
    fn normal_form_direct_multiple() {
        let f = field();
        let v = vars(&["x", "y"]);
        let x2 = Polynomial::parse("x^2", &v, &f).unwrap();
        let x2y = Polynomial::parse("x^2*y", &v, &f).unwrap();
        assert!(x2y.normal_form(&[x2], &f).is_zero());
    }

    #[test]
    fn normal_form_idempotent_and_reduced() {
        let f = field();
        let v = vars(&["x", "y", "z"]);
        let basis = vec![
            Polynomial::parse("x^2 - y*z", &v, &f).unwrap(),
            Polynomial::parse("x*y + z^2", &v, &f).unwrap(),
        ];
        let g = Polynomial::parse("x^3 + x^2*y + x*y^2 + y^3", &v, &f).unwrap();
        let nf = g.normal_form(&basis, &f);
        for (m, _) in nf.terms() {
            for b in &basis {
                assert!(!b.leading_monomial().unwrap().divides(m));
            }
        }
        assert_eq!(nf.normal_form(&basis, &f), nf);
    }

    #[test]
    fn print_parse_roundtrip() {
        let f = field();
        let v = vars(&["x", "y", "z", "h"]);
        let g = Polynomial::parse("3*x^2*y - z*h^2 + 2*h^3 - y^3", &v, &f).unwrap();
        let s = g.format(&v);
        let back = Polynomial::parse(&s, &v, &f).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn leading_term_multiplicative() {
        use rand::{Rng, SeedableRng};
        let f = field();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(1..=4);
            let rand_homog = |rng: &mut rand_chacha::ChaCha8Rng| {
                let d = rng.gen_range(1..=3u32);
                let monos = crate::monomial::enumerate(n, d, n);
                Polynomial::from_terms(
                    n,
                    monos
                        .into_iter()
                        .map(|m| (m, rng.gen_range(0..f.modulus()))),
                    &f,
                )
            };
            let a = rand_homog(&mut rng);
            let b = rand_homog(&mut rng);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let prod = a.mul(&b, &f);
            assert_eq!(
                prod.leading_monomial().unwrap(),
                &a.leading_monomial()
                    .unwrap()
                    .mul(b.leading_monomial().unwrap())
            );
        }
    }
}
