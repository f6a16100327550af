use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::poly::monomial::var_names;
use crate::poly::{Coeff, FieldMode, Monomial, MonomialOrder};
use crate::{BeiError, Result};

/// An exact multivariate polynomial. Terms are kept normalized: no zero
/// coefficients, no duplicate monomials, sorted strictly decreasing under lex
/// (the canonical storage order; operations that need another active order
/// scan for the leading term).
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial {
    field: FieldMode,
    nvars: usize,
    terms: Vec<(Coeff, Monomial)>,
}

impl Polynomial {
    pub fn zero(nvars: usize, field: FieldMode) -> Self {
        Polynomial { field, nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, field: FieldMode, v: i64) -> Self {
        Polynomial::from_terms(nvars, field, vec![(field.from_i64(v), Monomial::one(nvars))])
    }

    pub fn term(nvars: usize, field: FieldMode, c: Coeff, m: Monomial) -> Self {
        Polynomial::from_terms(nvars, field, vec![(c, m)])
    }

    /// Normalizing constructor: merges duplicate monomials, drops zeros, and
    /// sorts descending under lex.
    pub fn from_terms(nvars: usize, field: FieldMode, terms: Vec<(Coeff, Monomial)>) -> Self {
        let mut map: HashMap<Monomial, Coeff> = HashMap::with_capacity(terms.len());
        for (c, m) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = field.add(e.get(), &c);
                    *e.get_mut() = s;
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        let mut terms: Vec<(Coeff, Monomial)> = map
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(m, c)| (c, m))
            .collect();
        terms.sort_by(|a, b| MonomialOrder::Lex.cmp(&b.1, &a.1));
        Polynomial { field, nvars, terms }
    }

    pub fn field(&self) -> FieldMode {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Coeff, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, m0)) => {
                let d = m0.degree();
                self.terms.iter().all(|(_, m)| m.degree() == d)
            }
        }
    }

    /// Leading term under the given order (scan; storage is lex-sorted).
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Coeff, &Monomial)> {
        if order == MonomialOrder::Lex {
            return self.terms.first().map(|(c, m)| (c, m));
        }
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.1, &b.1))
            .map(|(c, m)| (c, m))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(_, m)| m)
    }

    fn compat(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(BeiError::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(BeiError::ArityMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compat(other)?;
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compat(other)?;
        Ok(self.mul(other))
    }

    /// Merge-add of lex-sorted term lists.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.compat(other).is_ok());
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match MonomialOrder::Lex.cmp(&self.terms[i].1, &other.terms[j].1) {
                Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.field.add(&self.terms[i].0, &other.terms[j].0);
                    if !self.field.is_zero(&c) {
                        terms.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| (self.field.neg(c), m.clone()))
            .collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.compat(other).is_ok());
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ca, ma) in &self.terms {
            for (cb, mb) in &other.terms {
                terms.push((self.field.mul(ca, cb), ma.mul(mb)));
            }
        }
        Polynomial::from_terms(self.nvars, self.field, terms)
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(ca, ma)| (self.field.mul(ca, c), ma.mul(m)))
            .collect();
        // term multiplication preserves lex sortedness
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(self.nvars, self.field);
        }
        self.mul_term(c, &Monomial::one(self.nvars))
    }

    /// Scale so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((c, _)) => {
                let inv = self.field.inv(c);
                self.scale(&inv)
            }
        }
    }

    /// Embed into a ring with `extra` auxiliary variables prepended.
    pub fn extend_front(&self, extra: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| {
                let mut exps = vec![0u16; extra];
                exps.extend_from_slice(m.exps());
                (c.clone(), Monomial::from_exps(exps))
            })
            .collect();
        Polynomial::from_terms(self.nvars + extra, self.field, terms)
    }

    /// Drop `extra` leading variables; every term must be free of them.
    pub fn contract_front(&self, extra: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| {
                assert!(m.exps()[..extra].iter().all(|&e| e == 0));
                (c.clone(), Monomial::from_exps(m.exps()[extra..].to_vec()))
            })
            .collect();
        Polynomial::from_terms(self.nvars - extra, self.field, terms)
    }

    /// Parse the debug/golden text format, e.g. `x1*y2 - x2*y1` or
    /// `3/2*x1^2*y3 + 1`.
    pub fn parse(input: &str, nvars: usize, field: FieldMode) -> Result<Polynomial> {
        parse_polynomial(input, nvars, field)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, m)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let cs = c.abs_string();
            if m.is_one() {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{cs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate division: returns `(quotients, remainder)` with
/// `f = sum(q_i * d_i) + r` and no term of `r` divisible by any divisor's
/// leading monomial under `order`.
pub fn normal_form_with_quotients(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> (Vec<Polynomial>, Polynomial) {
    let nvars = f.nvars();
    let field = f.field();
    let mut quotients = vec![Polynomial::zero(nvars, field); divisors.len()];
    let mut remainder = Polynomial::zero(nvars, field);
    let mut p = f.clone();
    let lts: Vec<Option<(Coeff, Monomial)>> = divisors
        .iter()
        .map(|d| d.leading_term(order).map(|(c, m)| (c.clone(), m.clone())))
        .collect();
    while let Some((lc, lm)) = p.leading_term(order).map(|(c, m)| (c.clone(), m.clone())) {
        let mut reduced = false;
        for (k, lt) in lts.iter().enumerate() {
            if let Some((dc, dm)) = lt {
                if let Some(q) = dm.try_div(&lm) {
                    let qc = field.div(&lc, dc);
                    p = p.sub(&divisors[k].mul_term(&qc, &q));
                    quotients[k] = quotients[k].add(&Polynomial::term(nvars, field, qc, q));
                    reduced = true;
                    break;
                }
            }
        }
        if !reduced {
            let t = Polynomial::term(nvars, field, lc, lm);
            remainder = remainder.add(&t);
            p = p.sub(&t);
        }
    }
    (quotients, remainder)
}

/// Remainder of `f` on division by `divisors` under `order`.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial], order: MonomialOrder) -> Polynomial {
    normal_form_with_quotients(f, divisors, order).1
}

/// Standard S-polynomial; the leading terms cancel by construction.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (fc, fm) = f.leading_term(order).expect("s_polynomial of zero");
    let (gc, gm) = g.leading_term(order).expect("s_polynomial of zero");
    let l = fm.lcm(gm);
    let field = f.field();
    let a = f.mul_term(&field.inv(fc), &fm.try_div(&l).unwrap());
    let b = g.mul_term(&field.inv(gc), &gm.try_div(&l).unwrap());
    a.sub(&b)
}

fn parse_polynomial(input: &str, nvars: usize, field: FieldMode) -> Result<Polynomial> {
    let names = var_names(nvars);
    let mut name_to_idx = HashMap::new();
    for i in 0..nvars {
        name_to_idx.insert(names(i), i);
    }
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(BeiError::Parse("empty polynomial".into()));
    }
    if s == "0" {
        return Ok(Polynomial::zero(nvars, field));
    }
    let mut terms = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut sign = 1i64;
    if bytes[0] == b'+' {
        i = 1;
    } else if bytes[0] == b'-' {
        sign = -1;
        i = 1;
    }
    while i < bytes.len() {
        // one term: factors separated by '*'
        let mut coeff = field.from_i64(sign);
        let mut mono = Monomial::one(nvars);
        loop {
            if i >= bytes.len() {
                break;
            }
            let c = bytes[i] as char;
            if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let num: i64 = s[start..i]
                    .parse()
                    .map_err(|_| BeiError::Parse(format!("bad integer in '{input}'")))?;
                let mut val = field.from_i64(num);
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                    let den: i64 = s[dstart..i]
                        .parse()
                        .map_err(|_| BeiError::Parse(format!("bad denominator in '{input}'")))?;
                    if den == 0 {
                        return Err(BeiError::Parse("zero denominator".into()));
                    }
                    val = field.div(&val, &field.from_i64(den));
                }
                coeff = field.mul(&coeff, &val);
            } else if c.is_ascii_alphabetic() {
                let start = i;
                i += 1;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let name = &s[start..i];
                let idx = *name_to_idx
                    .get(name)
                    .ok_or_else(|| BeiError::Parse(format!("unknown variable '{name}'")))?;
                let mut exp: u16 = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let estart = i;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                    exp = s[estart..i]
                        .parse()
                        .map_err(|_| BeiError::Parse(format!("bad exponent in '{input}'")))?;
                }
                let mut exps = vec![0u16; nvars];
                exps[idx] = exp;
                mono = mono.mul(&Monomial::from_exps(exps));
            } else {
                return Err(BeiError::Parse(format!(
                    "unexpected character '{c}' in '{input}'"
                )));
            }
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                continue;
            }
            break;
        }
        terms.push((coeff, mono));
        if i < bytes.len() {
            match bytes[i] {
                b'+' => {
                    sign = 1;
                    i += 1;
                }
                b'-' => {
                    sign = -1;
                    i += 1;
                }
                other => {
                    return Err(BeiError::Parse(format!(
                        "unexpected character '{}' in '{input}'",
                        other as char
                    )))
                }
            }
        }
    }
    Ok(Polynomial::from_terms(nvars, field, terms))
}
