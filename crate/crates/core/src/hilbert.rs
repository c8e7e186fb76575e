//! Hilbert series and Hilbert polynomials.
//!
//! The Hilbert polynomial of a presented module comes from the K-polynomial
//! of the lead-term module of its relation submodule (monomial recursion),
//! with the numerator divided by (1-T)^n and converted to binomial form.
//! The Hilbert function is tabulated independently by Macaulay-matrix ranks;
//! the two routes cross-check each other.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::poly::Monomial;

/// Dense univariate polynomial with rational coefficients, little-endian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPoly {
    pub coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> QPoly {
        let mut p = QPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_i64_coeffs(cs: &[i64]) -> QPoly {
        let mut p = QPoly {
            coeffs: cs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        let mut p = QPoly { coeffs: out };
        p.trim();
        p
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.scale(&BigRational::from_integer(BigInt::from(-1))))
    }

    pub fn scale(&self, f: &BigRational) -> QPoly {
        let mut p = QPoly { coeffs: self.coeffs.iter().map(|c| c * f).collect() };
        p.trim();
        p
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let mut p = QPoly { coeffs: out };
        p.trim();
        p
    }

    pub fn eval_i64(&self, t: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(t));
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Compares self(t) with other(t) for t >> 0: coefficient-lexicographic
    /// from the top degree.
    pub fn cmp_eventually(&self, other: &QPoly) -> std::cmp::Ordering {
        let d = self.sub(other);
        match d.coeffs.last() {
            None => std::cmp::Ordering::Equal,
            Some(c) if c.is_positive() => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Less,
        }
    }

    /// The polynomial t -> C(t + shift, r), r >= 0.
    pub fn binomial(shift: i64, r: usize) -> QPoly {
        let mut p = QPoly::constant(BigRational::one());
        let mut rfact = BigInt::one();
        for i in 0..r {
            // factor (t + shift - i)
            let lin = QPoly {
                coeffs: vec![
                    BigRational::from_integer(BigInt::from(shift - i as i64)),
                    BigRational::one(),
                ],
            };
            p = p.mul(&lin);
            rfact *= BigInt::from(i as i64 + 1);
        }
        p.scale(&BigRational::new(BigInt::one(), rfact))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", i),
            };
            let abs = c.abs();
            let body = if mono.is_empty() {
                format!("{}", abs)
            } else if abs.is_one() {
                mono
            } else {
                format!("{}*{}", abs, mono)
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

/// Exact integer binomial with the convention that a negative upper index
/// gives zero.
pub fn binom_int(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Laurent polynomial in T with integer coefficients: the Hilbert numerator.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    pub coeffs: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn one() -> Laurent {
        let mut c = BTreeMap::new();
        c.insert(0, BigInt::one());
        Laurent { coeffs: c }
    }

    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn add_assign(&mut self, other: &Laurent) {
        for (k, v) in &other.coeffs {
            let e = self.coeffs.entry(*k).or_insert_with(BigInt::zero);
            *e += v;
            if e.is_zero() {
                self.coeffs.remove(k);
            }
        }
    }

    pub fn shift(&self, by: i64) -> Laurent {
        Laurent {
            coeffs: self.coeffs.iter().map(|(k, v)| (k + by, v.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ka, va) in &self.coeffs {
            for (kb, vb) in &other.coeffs {
                let e = out.coeffs.entry(ka + kb).or_insert_with(BigInt::zero);
                *e += va * vb;
            }
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        out
    }

    /// 1 - T^a
    pub fn one_minus_power(a: i64) -> Laurent {
        let mut c = BTreeMap::new();
        c.insert(0, BigInt::one());
        if a == 0 {
            return Laurent::zero();
        }
        c.insert(a, BigInt::from(-1));
        Laurent { coeffs: c }
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = vec![];
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// K-polynomial of S/I for a monomial ideal I: the numerator of the Hilbert
/// series over (1-T)^n. Pivot recursion on a variable of a mixed generator.
pub fn kpoly_monomial_ideal(gens: &[Monomial]) -> Laurent {
    let gens = minimalize(gens.to_vec());
    if gens.is_empty() {
        return Laurent::one();
    }
    if gens.iter().any(|g| g.is_one()) {
        return Laurent::zero();
    }
    // pure powers of distinct variables: closed form
    let pure = gens.iter().all(|g| g.exps.iter().filter(|&&e| e > 0).count() == 1);
    if pure {
        let mut acc = Laurent::one();
        for g in &gens {
            acc = acc.mul(&Laurent::one_minus_power(g.degree()));
        }
        return acc;
    }
    // pivot: variable occurring in the most generators, preferring mixed ones
    let nvars = gens[0].exps.len();
    let mut best = (0usize, 0usize);
    for v in 0..nvars {
        let count = gens.iter().filter(|g| g.exps[v] > 0).count();
        let mixed = gens
            .iter()
            .any(|g| g.exps[v] > 0 && g.exps.iter().filter(|&&e| e > 0).count() > 1);
        if mixed && count > best.1 {
            best = (v, count);
        }
    }
    let v = best.0;
    // I + (x_v)
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exps[v] == 0).cloned().collect();
    plus.push(Monomial::var(v, nvars));
    // I : x_v
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut m = g.clone();
            if m.exps[v] > 0 {
                m.exps[v] -= 1;
            }
            m
        })
        .collect();
    let mut acc = kpoly_monomial_ideal(&plus);
    acc.add_assign(&kpoly_monomial_ideal(&colon).shift(1));
    acc
}

/// Converts a numerator Laurent polynomial over (1-T)^nvars into the Hilbert
/// polynomial: P(t) = sum_j c_j C(t - j + n - 1, n - 1).
pub fn hilbert_polynomial_from_numerator(num: &Laurent, nvars: usize) -> QPoly {
    let mut p = QPoly::zero();
    for (j, c) in &num.coeffs {
        let term = QPoly::binomial(nvars as i64 - 1 - j, nvars - 1)
            .scale(&BigRational::from_integer(c.clone()));
        p = p.add(&term);
    }
    p
}

/// Exact series coefficient: the Hilbert function value encoded by the
/// numerator at degree t (valid for every t).
pub fn hilbert_function_from_numerator(num: &Laurent, nvars: usize, t: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for (j, c) in &num.coeffs {
        acc += c * binom_int(t - j + nvars as i64 - 1, nvars as i64 - 1);
    }
    acc
}

/// Hilbert function window, polynomial, and agreement index for one module.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HilbertData {
    /// tabulated degrees and exact dimensions
    pub window: Vec<(i64, i64)>,
    /// Hilbert polynomial with exact rational coefficients
    pub polynomial: QPoly,
    /// first tabulated degree from which function and polynomial agree
    pub agreement_index: Option<i64>,
    /// set when the window was too small to confirm the agreement index
    pub window_warning: bool,
}

impl HilbertData {
    pub fn degree(&self) -> Option<usize> {
        self.polynomial.degree()
    }

    pub fn value(&self, t: i64) -> Option<i64> {
        self.window.iter().find(|(d, _)| *d == t).map(|(_, v)| *v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(exps: &[u16]) -> Monomial {
        Monomial { exps: exps.iter().copied().collect() }
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_int(5, 3), BigInt::from(10));
        assert_eq!(binom_int(4, 4), BigInt::from(1));
        assert_eq!(binom_int(1, 4), BigInt::from(0));
        assert_eq!(binom_int(-1, 4), BigInt::from(0));
        let p = QPoly::binomial(3, 3); // C(t+3,3)
        assert_eq!(p.eval_i64(0), BigRational::from_integer(BigInt::from(1)));
        assert_eq!(p.eval_i64(2), BigRational::from_integer(BigInt::from(10)));
        assert_eq!(p.eval_i64(-3), BigRational::zero());
    }

    #[test]
    fn kpoly_of_squares() {
        // (x^2, y^2, z^2) in 4 variables: series (1+T)^3/(1-T), values
        // 1, 4, 7, 8, 8, ...
        let gens = vec![
            mono(&[2, 0, 0, 0]),
            mono(&[0, 2, 0, 0]),
            mono(&[0, 0, 2, 0]),
        ];
        let k = kpoly_monomial_ideal(&gens);
        let hp = hilbert_polynomial_from_numerator(&k, 4);
        assert_eq!(hp, QPoly::from_i64_coeffs(&[8]));
        let values: Vec<BigInt> = (0..5).map(|t| hilbert_function_from_numerator(&k, 4, t)).collect();
        assert_eq!(
            values,
            vec![1, 4, 7, 8, 8].into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
    }

    #[test]
    fn kpoly_mixed_ideal() {
        // (x^2, xy) in k[x,y]: S/I has dimensions 1,2,1,1,1,... so the
        // K-polynomial is 1 - T^2 - T^2 + T^3 ... verify against direct count
        let gens = vec![mono(&[2, 0]), mono(&[1, 1])];
        let k = kpoly_monomial_ideal(&gens);
        for t in 0..8 {
            let expect = match t {
                0 => 1,
                1 => 2,
                _ => 1,
            };
            assert_eq!(hilbert_function_from_numerator(&k, 2, t), BigInt::from(expect));
        }
        let hp = hilbert_polynomial_from_numerator(&k, 2);
        assert_eq!(hp, QPoly::from_i64_coeffs(&[1]));
    }

    #[test]
    fn polynomial_display() {
        let p = QPoly::from_i64_coeffs(&[-7, 3, 3]);
        assert_eq!(format!("{}", p), "3*t^2 + 3*t - 7");
    }
}
