//! Exact field scalars: rationals and simple algebraic extensions of Q.
//!
//! Every coefficient in the crate is either a `BigRational` or a vector of
//! rationals representing an element of Q[a]/(m(a)) for a monic irreducible
//! minimal polynomial m. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Univariate polynomials over Q, dense little-endian coefficient vectors.
/// Used for minimal-polynomial arithmetic and eliminant root hunting.
pub mod uni {
    use super::*;

    pub fn trim(v: &mut Vec<BigRational>) {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn deg(v: &[BigRational]) -> Option<usize> {
        if v.is_empty() {
            None
        } else {
            Some(v.len() - 1)
        }
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                out[i + j] += ca * cb;
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = a.to_vec();
        if out.len() < b.len() {
            out.resize(b.len(), BigRational::zero());
        }
        for (i, cb) in b.iter().enumerate() {
            out[i] -= cb;
        }
        trim(&mut out);
        out
    }

    /// Remainder of a by b (b nonzero).
    pub fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = deg(b).expect("rem by zero");
        let lead = b[db].clone();
        while let Some(dr) = deg(&r) {
            if dr < db {
                break;
            }
            let q = &r[dr] / &lead;
            let shift = dr - db;
            for (i, cb) in b.iter().enumerate() {
                let delta = &q * cb;
                r[i + shift] -= delta;
            }
            trim(&mut r);
        }
        r
    }

    pub fn derivative(a: &[BigRational]) -> Vec<BigRational> {
        if a.len() <= 1 {
            return vec![];
        }
        let mut out = Vec::with_capacity(a.len() - 1);
        for (i, c) in a.iter().enumerate().skip(1) {
            out.push(c * BigRational::from_integer(BigInt::from(i)));
        }
        trim(&mut out);
        out
    }

    pub fn monic(mut a: Vec<BigRational>) -> Vec<BigRational> {
        trim(&mut a);
        if let Some(d) = deg(&a) {
            let lead = a[d].clone();
            if !lead.is_one() {
                for c in &mut a {
                    *c /= &lead;
                }
            }
        }
        a
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        monic(x)
    }

    /// Extended gcd: returns (g, s, t) monic with s*a + t*b = g.
    pub fn ext_gcd(
        a: &[BigRational],
        b: &[BigRational],
    ) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
        let mut r0 = a.to_vec();
        let mut r1 = b.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0 = vec![BigRational::one()];
        let mut s1: Vec<BigRational> = vec![];
        let mut t0: Vec<BigRational> = vec![];
        let mut t1 = vec![BigRational::one()];
        while !r1.is_empty() {
            // quotient of r0 by r1
            let mut q: Vec<BigRational> = vec![];
            let mut r = r0.clone();
            let db = deg(&r1).unwrap();
            let lead = r1[db].clone();
            while let Some(dr) = deg(&r) {
                if dr < db {
                    break;
                }
                let c = &r[dr] / &lead;
                let shift = dr - db;
                if q.len() < shift + 1 {
                    q.resize(shift + 1, BigRational::zero());
                }
                q[shift] = c.clone();
                for (i, cb) in r1.iter().enumerate() {
                    let delta = &c * cb;
                    r[i + shift] -= delta;
                }
                trim(&mut r);
            }
            let s2 = sub(&s0, &mul(&q, &s1));
            let t2 = sub(&t0, &mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        // normalize to monic gcd
        if let Some(d) = deg(&r0) {
            let lead = r0[d].clone();
            if !lead.is_one() {
                for c in &mut r0 {
                    *c /= &lead;
                }
                for c in &mut s0 {
                    *c /= &lead;
                }
                for c in &mut t0 {
                    *c /= &lead;
                }
            }
        }
        (r0, s0, t0)
    }

    pub fn eval(a: &[BigRational], x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in a.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_string_in(a: &[BigRational], var: &str) -> String {
        if a.is_empty() {
            return "0".to_string();
        }
        let mut parts = vec![];
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            parts.push(if m.is_empty() {
                format!("{}", c)
            } else if c.is_one() {
                m
            } else if (-c).is_one() {
                format!("-{}", m)
            } else {
                format!("{}*{}", c, m)
            });
        }
        let mut s = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k == 0 {
                s.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(stripped);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        s
    }
}

/// Bound on the degree of factors searched for when vetting a minimal
/// polynomial: rational roots always, quadratic integer factors for monic
/// integral inputs. Higher-degree factorization is out of scope; callers
/// assert irreducibility.
pub const MINPOLY_TRIAL_FACTOR_DEGREE: usize = 2;

/// The coefficient field: Q itself or a simple extension Q[a]/(m(a)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Extension {
        /// printable name of the generator, e.g. "w"
        var: String,
        /// monic minimal polynomial, little-endian rational coefficients
        minpoly: Vec<BigRational>,
    },
}

impl FieldSpec {
    pub fn rationals() -> Arc<FieldSpec> {
        Arc::new(FieldSpec::Rationals)
    }

    /// Builds Q[var]/(minpoly) after vetting the minimal polynomial:
    /// monic, degree >= 2, squarefree (gcd with derivative), and free of
    /// factors of degree <= MINPOLY_TRIAL_FACTOR_DEGREE.
    pub fn extension(var: &str, minpoly: Vec<BigRational>) -> Result<Arc<FieldSpec>> {
        let mut m = minpoly;
        uni::trim(&mut m);
        let d = uni::deg(&m).ok_or_else(|| Error::BadMinPoly("zero polynomial".into()))?;
        if d < 2 {
            return Err(Error::BadMinPoly(format!(
                "degree {} minimal polynomial defines no proper extension",
                d
            )));
        }
        if !m[d].is_one() {
            return Err(Error::BadMinPoly("not monic".into()));
        }
        let g = uni::gcd(&m, &uni::derivative(&m));
        if uni::deg(&g) != Some(0) {
            return Err(Error::BadMinPoly(format!(
                "not squarefree: gcd with derivative is {}",
                uni::to_string_in(&g, var)
            )));
        }
        if let Some(f) = small_factor(&m) {
            return Err(Error::BadMinPoly(format!(
                "reducible: factor {}",
                uni::to_string_in(&f, var)
            )));
        }
        Ok(Arc::new(FieldSpec::Extension { var: var.into(), minpoly: m }))
    }

    /// Q(w) with w^2 + w + 1 = 0, the field of the Fermat-cubic line catalog.
    pub fn cyclotomic3() -> Arc<FieldSpec> {
        FieldSpec::extension(
            "w",
            vec![
                BigRational::one(),
                BigRational::one(),
                BigRational::one(),
            ],
        )
        .expect("w^2+w+1 is irreducible")
    }

    pub fn degree(&self) -> usize {
        match self {
            FieldSpec::Rationals => 1,
            FieldSpec::Extension { minpoly, .. } => minpoly.len() - 1,
        }
    }

    pub fn ext_var(&self) -> Option<&str> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Extension { var, .. } => Some(var),
        }
    }
}

/// Searches for a monic factor of degree <= 2 of a monic polynomial over Q.
/// Rational roots come from the rational root theorem; quadratic factors of
/// integral polynomials from divisor enumeration of the constant term with a
/// coefficient bound.
fn small_factor(m: &[BigRational]) -> Option<Vec<BigRational>> {
    // rational roots of the integer-cleared polynomial
    for r in rational_roots(m) {
        return Some(vec![-r, BigRational::one()]);
    }
    if MINPOLY_TRIAL_FACTOR_DEGREE < 2 || m.len() - 1 < 4 {
        // a cubic with no rational root is irreducible
        return None;
    }
    // integral monic case: trial quadratic factors x^2 + a x + b
    let ints: Option<Vec<BigInt>> = m
        .iter()
        .map(|c| if c.is_integer() { Some(c.to_integer()) } else { None })
        .collect();
    let ints = ints?;
    let c0 = ints[0].clone();
    if c0.is_zero() {
        return None; // a root at 0 would have been caught above
    }
    let height = ints.iter().map(|c| c.abs()).max().unwrap();
    let bound = &height + &height + BigInt::one();
    for b in divisors_signed(&c0) {
        let mut a = -bound.clone();
        while a <= bound {
            let cand = vec![
                BigRational::from_integer(b.clone()),
                BigRational::from_integer(a.clone()),
                BigRational::one(),
            ];
            if uni::rem(m, &cand).is_empty() {
                return Some(cand);
            }
            a += BigInt::one();
        }
    }
    None
}

const TRIAL_DIVISION_CAP: u64 = 1_000_000;

/// All divisors of |n| with both signs, via capped trial division. Returns an
/// empty list when the cofactor cannot be split within the cap (callers treat
/// that as "no candidates found").
pub fn divisors_signed(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    let mut primes: Vec<(BigInt, u32)> = vec![];
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0u32;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            primes.push((p.clone(), e));
        }
        p += 1u32;
        if p > BigInt::from(TRIAL_DIVISION_CAP) {
            return vec![];
        }
    }
    if !n.is_one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = vec![];
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    let mut out = Vec::with_capacity(divs.len() * 2);
    for d in divs {
        out.push(d.clone());
        out.push(-d);
    }
    out
}

/// Rational roots of a nonzero polynomial over Q.
pub fn rational_roots(m: &[BigRational]) -> Vec<BigRational> {
    let mut m = m.to_vec();
    uni::trim(&mut m);
    let mut roots = vec![];
    if m.len() <= 1 {
        return roots;
    }
    // strip roots at zero
    let mut work = m;
    while work[0].is_zero() {
        let zero = BigRational::zero();
        if uni::eval(&work, &zero).is_zero() && !roots.contains(&zero) {
            roots.push(zero);
        }
        work.remove(0);
        if work.len() <= 1 {
            return roots;
        }
    }
    // clear denominators to a primitive integer polynomial
    let mut den = BigInt::one();
    for c in &work {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let ints: Vec<BigInt> = work.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().clone();
    let cons = ints[0].clone();
    let ps = divisors_signed(&cons);
    let qs: Vec<BigInt> = divisors_signed(&lead).into_iter().filter(|q| q.is_positive()).collect();
    for p in &ps {
        for q in &qs {
            let cand = BigRational::new(p.clone(), q.clone());
            if uni::eval(&work, &cand).is_zero() && !roots.contains(&cand) {
                roots.push(cand);
            }
        }
    }
    roots
}

/// An exact element of the coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldScalar {
    Rat(BigRational),
    /// coefficient vector of length deg(minpoly), low powers first
    Ext(Vec<BigRational>),
}

impl FieldScalar {
    pub fn zero(spec: &FieldSpec) -> Self {
        match spec {
            FieldSpec::Rationals => FieldScalar::Rat(BigRational::zero()),
            FieldSpec::Extension { minpoly, .. } => {
                FieldScalar::Ext(vec![BigRational::zero(); minpoly.len() - 1])
            }
        }
    }

    pub fn one(spec: &FieldSpec) -> Self {
        let mut x = Self::zero(spec);
        match &mut x {
            FieldScalar::Rat(r) => *r = BigRational::one(),
            FieldScalar::Ext(v) => v[0] = BigRational::one(),
        }
        x
    }

    pub fn from_int(spec: &FieldSpec, n: i64) -> Self {
        Self::from_rat(spec, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(spec: &FieldSpec, r: BigRational) -> Self {
        match spec {
            FieldSpec::Rationals => FieldScalar::Rat(r),
            FieldSpec::Extension { minpoly, .. } => {
                let mut v = vec![BigRational::zero(); minpoly.len() - 1];
                v[0] = r;
                FieldScalar::Ext(v)
            }
        }
    }

    /// The extension generator a itself.
    pub fn generator(spec: &FieldSpec) -> Result<Self> {
        match spec {
            FieldSpec::Rationals => Err(Error::Invalid("rationals have no generator".into())),
            FieldSpec::Extension { minpoly, .. } => {
                let mut v = vec![BigRational::zero(); minpoly.len() - 1];
                v[1] = BigRational::one();
                Ok(FieldScalar::Ext(v))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rat(r) => r.is_zero(),
            FieldScalar::Ext(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rat(r) => r.is_one(),
            FieldScalar::Ext(v) => v[0].is_one() && v[1..].iter().all(|c| c.is_zero()),
        }
    }

    pub fn as_rat(&self) -> Option<&BigRational> {
        match self {
            FieldScalar::Rat(r) => Some(r),
            FieldScalar::Ext(v) => {
                if v[1..].iter().all(|c| c.is_zero()) {
                    Some(&v[0])
                } else {
                    None
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldScalar::Rat(a), FieldScalar::Rat(b)) => FieldScalar::Rat(a + b),
            (FieldScalar::Ext(a), FieldScalar::Ext(b)) => {
                FieldScalar::Ext(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldScalar::Rat(a), FieldScalar::Rat(b)) => FieldScalar::Rat(a - b),
            (FieldScalar::Ext(a), FieldScalar::Ext(b)) => {
                FieldScalar::Ext(a.iter().zip(b).map(|(x, y)| x - y).collect())
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldScalar::Rat(a) => FieldScalar::Rat(-a),
            FieldScalar::Ext(a) => FieldScalar::Ext(a.iter().map(|x| -x).collect()),
        }
    }

    pub fn mul(&self, other: &Self, spec: &FieldSpec) -> Self {
        match (self, other) {
            (FieldScalar::Rat(a), FieldScalar::Rat(b)) => FieldScalar::Rat(a * b),
            (FieldScalar::Ext(a), FieldScalar::Ext(b)) => {
                let FieldSpec::Extension { minpoly, .. } = spec else {
                    panic!("field mismatch");
                };
                let prod = uni::mul(a, b);
                let mut red = uni::rem(&prod, minpoly);
                red.resize(minpoly.len() - 1, BigRational::zero());
                FieldScalar::Ext(red)
            }
            _ => panic!("field mismatch"),
        }
    }

    /// Exact inverse. A zero input is a division-by-zero error; a reducible
    /// minimal polynomial exposed by a zero divisor is reported with the
    /// discovered factor.
    pub fn invert(&self, spec: &FieldSpec) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldScalar::Rat(a) => Ok(FieldScalar::Rat(a.recip())),
            FieldScalar::Ext(a) => {
                let FieldSpec::Extension { minpoly, var } = spec else {
                    panic!("field mismatch");
                };
                let mut av = a.clone();
                uni::trim(&mut av);
                let (g, s, _) = uni::ext_gcd(&av, minpoly);
                if uni::deg(&g) != Some(0) {
                    return Err(Error::NotInvertible {
                        factor: uni::to_string_in(&g, var),
                    });
                }
                // s*a + t*m = 1, so s is the inverse mod m
                let mut inv = uni::rem(&s, minpoly);
                inv.resize(minpoly.len() - 1, BigRational::zero());
                Ok(FieldScalar::Ext(inv))
            }
        }
    }

    pub fn div(&self, other: &Self, spec: &FieldSpec) -> Result<Self> {
        Ok(self.mul(&other.invert(spec)?, spec))
    }

    pub fn fmt_with(&self, spec: &FieldSpec) -> String {
        match self {
            FieldScalar::Rat(r) => format!("{}", r),
            FieldScalar::Ext(v) => {
                let var = spec.ext_var().unwrap_or("a");
                let mut w = v.clone();
                uni::trim(&mut w);
                uni::to_string_in(&w, var)
            }
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rat(r) => write!(f, "{}", r),
            FieldScalar::Ext(v) => write!(f, "{}", uni::to_string_in(v, "a")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_inverse() {
        let spec = FieldSpec::rationals();
        let a = FieldScalar::Rat(q(3, 4));
        let inv = a.invert(&spec).unwrap();
        assert_eq!(inv, FieldScalar::Rat(q(4, 3)));
        assert!(a.mul(&inv, &spec).is_one());
        let one = FieldScalar::one(&spec);
        assert_eq!(one.invert(&spec).unwrap(), one);
    }

    #[test]
    fn zero_inverse_rejected() {
        let spec = FieldSpec::rationals();
        assert!(matches!(
            FieldScalar::zero(&spec).invert(&spec),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn omega_inverse() {
        // (1+w)^(-1) = -w in Q[w]/(w^2+w+1)
        let spec = FieldSpec::cyclotomic3();
        let one = FieldScalar::one(&spec);
        let w = FieldScalar::generator(&spec).unwrap();
        let a = one.add(&w);
        let inv = a.invert(&spec).unwrap();
        assert_eq!(inv, w.neg());
        assert!(a.mul(&inv, &spec).is_one());
    }

    #[test]
    fn reducible_minpoly_rejected() {
        // x^2 - 1 = (x-1)(x+1)
        let m = vec![q(-1, 1), q(0, 1), q(1, 1)];
        assert!(FieldSpec::extension("a", m).is_err());
        // x^2 (not squarefree)
        let m2 = vec![q(0, 1), q(0, 1), q(1, 1)];
        assert!(FieldSpec::extension("a", m2).is_err());
        // x^4 + 2x^2 + 1 = (x^2+1)^2
        let m3 = vec![q(1, 1), q(0, 1), q(2, 1), q(0, 1), q(1, 1)];
        assert!(FieldSpec::extension("a", m3).is_err());
        // x^4 - x^2 - 2 = (x^2+1)(x^2-2): squarefree but reducible
        let m4 = vec![q(-2, 1), q(0, 1), q(-1, 1), q(0, 1), q(1, 1)];
        assert!(FieldSpec::extension("a", m4).is_err());
        // x^2 - 2 is fine
        let m5 = vec![q(-2, 1), q(0, 1), q(1, 1)];
        assert!(FieldSpec::extension("a", m5).is_ok());
    }

    #[test]
    fn field_axioms_spot() {
        let spec = FieldSpec::cyclotomic3();
        let w = FieldScalar::generator(&spec).unwrap();
        let a = w.add(&FieldScalar::from_int(&spec, 2));
        let b = w.mul(&w, &spec).sub(&FieldScalar::from_int(&spec, 5));
        let c = w.neg().add(&FieldScalar::from_rat(&spec, q(7, 3)));
        let lhs = a.mul(&b, &spec).mul(&c, &spec);
        let rhs = a.mul(&b.mul(&c, &spec), &spec);
        assert_eq!(lhs, rhs);
        assert!(a.mul(&a.invert(&spec).unwrap(), &spec).is_one());
    }

    #[test]
    fn rational_roots_basic() {
        // 6x^2 - 5x + 1 = (3x-1)(2x-1)
        let p = vec![q(1, 1), q(-5, 1), q(6, 1)];
        let mut roots = rational_roots(&p);
        roots.sort();
        assert_eq!(roots, vec![q(1, 3), q(1, 2)]);
        // x^2 + 1: none
        assert!(rational_roots(&[q(1, 1), q(0, 1), q(1, 1)]).is_empty());
    }
}
