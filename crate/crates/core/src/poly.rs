//! Sparse multivariate polynomials over an exact field, with the standard
//! grading (every variable has degree 1) and degree-reverse-lexicographic
//! term order.

use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, FieldSpec};

/// Exponent vector. Fixed small inline capacity covers every ring in the
/// pipeline (at most 5-6 variables plus tags).
pub type Exponents = SmallVec<[u16; 8]>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: smallvec::smallvec![0; nvars] }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn div_into(&self, other: &Self) -> Self {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Degree reverse lexicographic comparison: higher total degree wins;
    /// on a tie, the monomial with the smaller exponent at the last
    /// differing variable wins.
    pub fn cmp_grevlex(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }

    pub fn cmp_in(&self, other: &Self, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::Grevlex => self.cmp_grevlex(other),
            MonomialOrder::ElimBlock { block } => {
                let da: i64 = self.exps.iter().take(block).map(|&e| e as i64).sum();
                let db: i64 = other.exps.iter().take(block).map(|&e| e as i64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => self.cmp_grevlex(other),
                    ord => ord,
                }
            }
        }
    }
}

/// Term order of a ring. Grevlex everywhere; elimination of a leading block
/// of variables is available as a wrapper order for colon/solver work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    /// The first `block` variables dominate; ties fall back to grevlex.
    ElimBlock { block: usize },
}

/// A polynomial ring handle: named variables over a field, grevlex order.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub vars: Vec<String>,
    pub field: Arc<FieldSpec>,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(vars: &[&str], field: Arc<FieldSpec>) -> Arc<PolyRing> {
        assert!(!vars.is_empty(), "a polynomial ring needs at least one variable");
        Arc::new(PolyRing {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            field,
            order: MonomialOrder::Grevlex,
        })
    }

    /// Same variables and field, but with the first `block` variables in an
    /// elimination block.
    pub fn with_elim_block(self: &Arc<Self>, block: usize) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            vars: self.vars.clone(),
            field: self.field.clone(),
            order: MonomialOrder::ElimBlock { block },
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(self: &Arc<Self>) -> Poly {
        Poly { ring: self.clone(), terms: vec![] }
    }

    pub fn one(self: &Arc<Self>) -> Poly {
        self.constant(FieldScalar::one(&self.field))
    }

    pub fn constant(self: &Arc<Self>, c: FieldScalar) -> Poly {
        if c.is_zero() {
            return self.zero();
        }
        Poly {
            ring: self.clone(),
            terms: vec![Term { coef: c, mono: Monomial::one(self.nvars()) }],
        }
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> Poly {
        self.constant(FieldScalar::from_int(&self.field, n))
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Poly {
        Poly {
            ring: self.clone(),
            terms: vec![Term {
                coef: FieldScalar::one(&self.field),
                mono: Monomial::var(i, self.nvars()),
            }],
        }
    }

    pub fn monomial(self: &Arc<Self>, exps: &[u16]) -> Poly {
        Poly {
            ring: self.clone(),
            terms: vec![Term {
                coef: FieldScalar::one(&self.field),
                mono: Monomial { exps: exps.iter().copied().collect() },
            }],
        }
    }

    pub fn parse(self: &Arc<Self>, input: &str) -> Result<Poly> {
        parse::parse_poly(self, input)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coef: FieldScalar,
    pub mono: Monomial,
}

/// Sparse polynomial: nonzero terms, strictly descending in grevlex.
#[derive(Debug, Clone)]
pub struct Poly {
    pub ring: Arc<PolyRing>,
    pub terms: Vec<Term>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for Poly {}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// Some(d) when the polynomial is nonzero and every term has degree d.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let d = self.terms.first()?.mono.degree();
        if self.terms.iter().all(|t| t.mono.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<Term>) -> Poly {
        let order = ring.order;
        terms.retain(|t| !t.coef.is_zero());
        terms.sort_by(|a, b| b.mono.cmp_in(&a.mono, order));
        // merge equal monomials
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.mono == t.mono {
                    last.coef = last.coef.add(&t.coef);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.coef.is_zero());
        Poly { ring: ring.clone(), terms: out }
    }

    /// Re-sorts the term list into a ring that shares variables and field
    /// but may use a different order.
    pub fn into_ring(&self, ring: &Arc<PolyRing>) -> Poly {
        Poly::from_terms(ring, self.terms.clone())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let order = self.ring.order;
        let mut out: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].mono.cmp_in(&other.terms[j].mono, order) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].coef.add(&other.terms[j].coef);
                    if !c.is_zero() {
                        out.push(Term { coef: c, mono: self.terms[i].mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coef: t.coef.neg(), mono: t.mono.clone() })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul_term(&self, coef: &FieldScalar, mono: &Monomial) -> Poly {
        if coef.is_zero() {
            return self.ring.zero();
        }
        let spec = &self.ring.field;
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: t.coef.mul(coef, spec),
                    mono: t.mono.mul(mono),
                })
                .collect(),
        }
    }

    pub fn scale(&self, coef: &FieldScalar) -> Poly {
        self.mul_term(coef, &Monomial::one(self.ring.nvars()))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let mut acc: Vec<Term> = vec![];
        for t in &other.terms {
            let part = self.mul_term(&t.coef, &t.mono);
            acc.extend(part.terms);
        }
        Poly::from_terms(&self.ring, acc)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = self.ring.one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Formal partial derivative with respect to variable i.
    pub fn partial_derivative(&self, i: usize) -> Poly {
        let spec = &self.ring.field;
        let mut terms = vec![];
        for t in &self.terms {
            let e = t.mono.exps[i];
            if e == 0 {
                continue;
            }
            let mut mono = t.mono.clone();
            mono.exps[i] -= 1;
            let c = t.coef.mul(&FieldScalar::from_int(spec, e as i64), spec);
            terms.push(Term { coef: c, mono });
        }
        Poly::from_terms(&self.ring, terms)
    }

    /// Ring homomorphism x_i -> images[i]. Images live in a common target
    /// ring and must be all homogeneous of one degree, or all zero/linear
    /// mixes are rejected via the homogeneity check at call sites.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Invalid(format!(
                "expected {} substitution images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .ok_or_else(|| Error::Invalid("no images".into()))?;
        // images must share one homogeneous degree, or all be affine-linear
        let all_linear = images.iter().all(|img| img.degree().unwrap_or(0) <= 1);
        if !all_linear {
            let mut common: Option<i64> = None;
            for img in images {
                if !Arc::ptr_eq(&img.ring, &target) && img.ring != target {
                    return Err(Error::RingMismatch);
                }
                if let Some(d) = img.homogeneous_degree() {
                    match common {
                        None => common = Some(d),
                        Some(c) if c == d => {}
                        Some(_) => {
                            return Err(Error::Inhomogeneous(
                                "substitution images of mixed degrees".into(),
                            ))
                        }
                    }
                } else if !img.is_zero() {
                    return Err(Error::Inhomogeneous("inhomogeneous substitution image".into()));
                }
            }
        }
        // cache powers of each image
        let mut pows: Vec<Vec<Poly>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut out = target.zero();
        for t in &self.terms {
            let mut m = target.constant(convert_scalar(&t.coef, &self.ring.field, &target.field)?);
            for (i, &e) in t.mono.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pows[i].len() <= e as usize {
                    let next = pows[i].last().unwrap().mul(&images[i]);
                    pows[i].push(next);
                }
                m = m.mul(&pows[i][e as usize]);
            }
            out = out.add(&m);
        }
        Ok(out)
    }

    /// Evaluates at a point given by field scalars.
    pub fn eval(&self, point: &[FieldScalar]) -> FieldScalar {
        let spec = &self.ring.field;
        let mut acc = FieldScalar::zero(spec);
        for t in &self.terms {
            let mut v = t.coef.clone();
            for (i, &e) in t.mono.exps.iter().enumerate() {
                for _ in 0..e {
                    v = v.mul(&point[i], spec);
                }
            }
            acc = acc.add(&v);
        }
        acc
    }

    /// Divides by the content: over Q the result has coprime integer
    /// coefficients with positive leading coefficient; over an extension the
    /// rational coordinates are cleared the same way.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let spec = &self.ring.field;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        let mut visit = |r: &BigRational| {
            num_gcd = num_gcd.gcd(r.numer());
            den_lcm = den_lcm.lcm(r.denom());
        };
        for t in &self.terms {
            match &t.coef {
                FieldScalar::Rat(r) => visit(r),
                FieldScalar::Ext(v) => {
                    for r in v {
                        if !r.is_zero() {
                            visit(r);
                        }
                    }
                }
            }
        }
        if num_gcd.is_zero() {
            return self.clone();
        }
        let mut factor = BigRational::new(den_lcm, num_gcd);
        // normalize the sign of the leading coefficient
        let lead_negative = match &self.terms[0].coef {
            FieldScalar::Rat(r) => r.is_negative(),
            FieldScalar::Ext(v) => v
                .iter()
                .rev()
                .find(|c| !c.is_zero())
                .map(|c| c.is_negative())
                .unwrap_or(false),
        };
        if lead_negative {
            factor = -factor;
        }
        self.scale(&FieldScalar::from_rat(spec, factor))
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Result<Poly> {
        match self.lead() {
            None => Ok(self.clone()),
            Some(t) => {
                let inv = t.coef.invert(&self.ring.field)?;
                Ok(self.scale(&inv))
            }
        }
    }
}

fn convert_scalar(c: &FieldScalar, from: &FieldSpec, to: &FieldSpec) -> Result<FieldScalar> {
    if from == to {
        return Ok(c.clone());
    }
    match (c, to) {
        (FieldScalar::Rat(r), FieldSpec::Extension { .. }) => Ok(FieldScalar::from_rat(to, r.clone())),
        (FieldScalar::Ext(_), FieldSpec::Rationals) => c
            .as_rat()
            .map(|r| FieldScalar::Rat(r.clone()))
            .ok_or_else(|| Error::Invalid("cannot map extension scalar into Q".into())),
        _ => Ok(c.clone()),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let spec = &self.ring.field;
        let mut first = true;
        for t in &self.terms {
            let mono_parts: Vec<String> = t
                .mono
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[i], e)
                    }
                })
                .collect();
            let mono_str = mono_parts.join("*");
            let coef_str = t.coef.fmt_with(spec);
            let body = if mono_str.is_empty() {
                wrap_if_sum(&coef_str)
            } else if t.coef.is_one() {
                mono_str
            } else if t.coef.neg().is_one() {
                format!("-{}", mono_str)
            } else {
                format!("{}*{}", wrap_if_sum(&coef_str), mono_str)
            };
            if first {
                write!(f, "{}", body)?;
                first = false;
            } else if let Some(stripped) = body.strip_prefix('-') {
                write!(f, " - {}", stripped)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

fn wrap_if_sum(s: &str) -> String {
    let inner = &s[1.min(s.len())..];
    if inner.contains('+') || inner.contains('-') || inner.contains(' ') {
        format!("({})", s)
    } else {
        s.to_string()
    }
}

mod parse {
    use super::*;

    struct Lexer<'a> {
        bytes: &'a [u8],
        pos: usize,
    }

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Int(BigInt),
        Ident(String),
        Plus,
        Minus,
        Star,
        Caret,
        Slash,
        LParen,
        RParen,
        End,
    }

    impl<'a> Lexer<'a> {
        fn next(&mut self) -> Result<(usize, Tok)> {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            let start = self.pos;
            if self.pos >= self.bytes.len() {
                return Ok((start, Tok::End));
            }
            let b = self.bytes[self.pos];
            let tok = match b {
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'^' => Tok::Caret,
                b'/' => Tok::Slash,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'0'..=b'9' => {
                    let mut end = self.pos;
                    while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
                        end += 1;
                    }
                    let s = std::str::from_utf8(&self.bytes[self.pos..end]).unwrap();
                    self.pos = end;
                    return Ok((start, Tok::Int(s.parse().unwrap())));
                }
                b'_' | b'a'..=b'z' | b'A'..=b'Z' => {
                    let mut end = self.pos;
                    while end < self.bytes.len()
                        && (self.bytes[end].is_ascii_alphanumeric() || self.bytes[end] == b'_')
                    {
                        end += 1;
                    }
                    let s = std::str::from_utf8(&self.bytes[self.pos..end]).unwrap().to_string();
                    self.pos = end;
                    return Ok((start, Tok::Ident(s)));
                }
                other => {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("unexpected byte {:?}", other as char),
                    })
                }
            };
            self.pos += 1;
            Ok((start, tok))
        }
    }

    struct Parser<'a> {
        ring: &'a Arc<PolyRing>,
        lexer: Lexer<'a>,
        peeked: Option<(usize, Tok)>,
    }

    impl<'a> Parser<'a> {
        fn peek(&mut self) -> Result<&(usize, Tok)> {
            if self.peeked.is_none() {
                self.peeked = Some(self.lexer.next()?);
            }
            Ok(self.peeked.as_ref().unwrap())
        }

        fn bump(&mut self) -> Result<(usize, Tok)> {
            match self.peeked.take() {
                Some(t) => Ok(t),
                None => self.lexer.next(),
            }
        }

        fn expr(&mut self) -> Result<Poly> {
            let mut negate = false;
            loop {
                match &self.peek()?.1 {
                    Tok::Minus => {
                        negate = !negate;
                        self.bump()?;
                    }
                    Tok::Plus => {
                        self.bump()?;
                    }
                    _ => break,
                }
            }
            let mut acc = self.term()?;
            if negate {
                acc = acc.neg();
            }
            loop {
                match &self.peek()?.1 {
                    Tok::Plus => {
                        self.bump()?;
                        let t = self.term()?;
                        acc = acc.add(&t);
                    }
                    Tok::Minus => {
                        self.bump()?;
                        let t = self.term()?;
                        acc = acc.sub(&t);
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        fn term(&mut self) -> Result<Poly> {
            let mut acc = self.factor()?;
            loop {
                match &self.peek()?.1 {
                    Tok::Star => {
                        self.bump()?;
                        let f = self.factor()?;
                        acc = acc.mul(&f);
                    }
                    Tok::Slash => {
                        self.bump()?;
                        let (pos, tok) = self.bump()?;
                        match tok {
                            Tok::Int(d) => {
                                if d.is_zero() {
                                    return Err(Error::Parse { pos, msg: "division by zero".into() });
                                }
                                let inv = FieldScalar::from_rat(
                                    &self.ring.field,
                                    BigRational::new(BigInt::one(), d),
                                );
                                acc = acc.scale(&inv);
                            }
                            _ => {
                                return Err(Error::Parse {
                                    pos,
                                    msg: "only integer denominators are supported".into(),
                                })
                            }
                        }
                    }
                    // implicit multiplication: `3x0`, `x0(x1+x2)`
                    Tok::Ident(_) | Tok::LParen | Tok::Int(_) => {
                        let f = self.factor()?;
                        acc = acc.mul(&f);
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        fn factor(&mut self) -> Result<Poly> {
            let (pos, tok) = self.bump()?;
            let base = match tok {
                Tok::Int(n) => self
                    .ring
                    .constant(FieldScalar::from_rat(&self.ring.field, BigRational::from_integer(n))),
                Tok::Ident(name) => {
                    if let Some(i) = self.ring.var_index(&name) {
                        self.ring.var(i)
                    } else if self.ring.field.ext_var() == Some(name.as_str()) {
                        self.ring
                            .constant(FieldScalar::generator(&self.ring.field).unwrap())
                    } else {
                        return Err(Error::Parse {
                            pos,
                            msg: format!("unknown symbol `{}`", name),
                        });
                    }
                }
                Tok::Minus => {
                    let f = self.factor()?;
                    f.neg()
                }
                Tok::LParen => {
                    let inner = self.expr()?;
                    let (pos2, tok2) = self.bump()?;
                    if tok2 != Tok::RParen {
                        return Err(Error::Parse { pos: pos2, msg: "expected `)`".into() });
                    }
                    inner
                }
                other => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("unexpected token {:?}", other),
                    })
                }
            };
            if let Tok::Caret = self.peek()?.1 {
                self.bump()?;
                let (pos2, tok2) = self.bump()?;
                match tok2 {
                    Tok::Int(n) => {
                        let e: u32 = n.to_string().parse().map_err(|_| Error::Parse {
                            pos: pos2,
                            msg: "exponent too large".into(),
                        })?;
                        return Ok(base.pow(e));
                    }
                    _ => return Err(Error::Parse { pos: pos2, msg: "expected integer exponent".into() }),
                }
            }
            Ok(base)
        }
    }

    pub fn parse_poly(ring: &Arc<PolyRing>, input: &str) -> Result<Poly> {
        let mut parser = Parser {
            ring,
            lexer: Lexer { bytes: input.as_bytes(), pos: 0 },
            peeked: None,
        };
        let p = parser.expr()?;
        let (pos, tok) = parser.bump()?;
        if tok != Tok::End {
            return Err(Error::Parse { pos, msg: "trailing input".into() });
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring4() -> Arc<PolyRing> {
        PolyRing::new(&["x0", "x1", "x2", "x3"], FieldSpec::rationals())
    }

    #[test]
    fn grevlex_classic() {
        let r = PolyRing::new(&["x", "y", "z"], FieldSpec::rationals());
        let y2 = r.parse("y^2").unwrap();
        let xz = r.parse("x*z").unwrap();
        // y^2 > xz in grevlex with x > y > z
        assert_eq!(
            y2.lead().unwrap().mono.cmp_grevlex(&xz.lead().unwrap().mono),
            Ordering::Greater
        );
        let x2z = r.parse("x^2*z").unwrap();
        let xy2 = r.parse("x*y^2").unwrap();
        assert_eq!(
            x2z.lead().unwrap().mono.cmp_grevlex(&xy2.lead().unwrap().mono),
            Ordering::Less
        );
    }

    #[test]
    fn partial_derivatives() {
        let r = ring4();
        let q = r.parse("x0*x3 - x1*x2").unwrap();
        assert_eq!(q.partial_derivative(0), r.parse("x3").unwrap());
        assert_eq!(q.partial_derivative(1), r.parse("-x2").unwrap());
        let fermat = r.parse("x0^3+x1^3+x2^3+x3^3").unwrap();
        assert_eq!(fermat.partial_derivative(3), r.parse("3*x3^2").unwrap());
        assert_eq!(r.from_int(5).partial_derivative(2), r.zero());
    }

    #[test]
    fn substitute_segre_and_line() {
        let r = ring4();
        let q = r.parse("x0*x3 - x1*x2").unwrap();
        let st = PolyRing::new(&["a0", "a1", "b0", "b1"], FieldSpec::rationals());
        let images = vec![
            st.parse("a0*b0").unwrap(),
            st.parse("a0*b1").unwrap(),
            st.parse("a1*b0").unwrap(),
            st.parse("a1*b1").unwrap(),
        ];
        assert!(q.substitute(&images).unwrap().is_zero());

        let fermat = r.parse("x0^3+x1^3+x2^3+x3^3").unwrap();
        let line = PolyRing::new(&["s", "t"], FieldSpec::rationals());
        let imgs = vec![
            line.parse("s").unwrap(),
            line.parse("-s").unwrap(),
            line.parse("t").unwrap(),
            line.parse("-t").unwrap(),
        ];
        assert!(fermat.substitute(&imgs).unwrap().is_zero());
        assert_eq!(
            r.var(3).substitute(&imgs).unwrap(),
            line.parse("-t").unwrap()
        );
    }

    #[test]
    fn euler_relation() {
        let r = ring4();
        let f = r.parse("x0^3 + 2*x0*x1*x2 - 5*x3^3 + x1^2*x3").unwrap();
        let d = f.homogeneous_degree().unwrap();
        let mut acc = r.zero();
        for i in 0..4 {
            acc = acc.add(&r.var(i).mul(&f.partial_derivative(i)));
        }
        assert_eq!(acc, f.scale(&FieldScalar::from_int(&r.field, d)));
    }

    #[test]
    fn parse_roundtrip() {
        let r = ring4();
        for src in [
            "x0^3 + x1^3 + x2^3 + x3^3",
            "3*x0^2*x1 - 4/5*x2^3 + 7",
            "-x1*x2 + x0*x3",
            "0",
            "(x0+x1)^2 - x0^2 - 2*x0*x1 - x1^2",
        ] {
            let p = r.parse(src).unwrap();
            let printed = format!("{}", p);
            let again = r.parse(&printed).unwrap();
            assert_eq!(p, again, "round trip failed for `{}` -> `{}`", src, printed);
        }
        assert!(r.parse("x9 + 1").is_err());
    }

    #[test]
    fn parse_extension_coefficients() {
        let spec = FieldSpec::cyclotomic3();
        let r = PolyRing::new(&["s", "t"], spec);
        let p = r.parse("s - w*t").unwrap();
        let printed = format!("{}", p);
        assert_eq!(r.parse(&printed).unwrap(), p);
        let cube = r.parse("(-w*t)^3").unwrap();
        assert_eq!(cube, r.parse("-t^3").unwrap());
    }

    #[test]
    fn primitive_part_normalizes() {
        let r = ring4();
        let p = r.parse("4/6*x0 - 2/6*x1").unwrap();
        assert_eq!(p.primitive_part(), r.parse("2*x0 - x1").unwrap());
        let q = r.parse("-3*x0 + 6*x1").unwrap();
        assert_eq!(q.primitive_part(), r.parse("x0 - 2*x1").unwrap());
    }
}
