//! Twisted graded free modules, their elements, and graded maps.
//!
//! A `FreeModule` with twist vector (d_1..d_r) stands for the sheaf
//! ⊕ O(d_k); the generator in position k has internal degree -d_k, so an
//! element with polynomial p in position k has degree deg(p) - d_k. The
//! module term order is position-over-term: earlier positions dominate,
//! ties are broken by the ring's monomial order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, PolyRing, Term};
use crate::scalar::FieldScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    pub ring: Arc<PolyRing>,
    pub twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: Arc<PolyRing>, twists: Vec<i64>) -> FreeModule {
        FreeModule { ring, twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn zero_vec(&self) -> ModVec {
        ModVec { comps: vec![self.ring.zero(); self.rank()] }
    }

    pub fn basis_vec(&self, k: usize) -> ModVec {
        let mut v = self.zero_vec();
        v.comps[k] = self.ring.one();
        v
    }

    /// The dual module: twists negated.
    pub fn dual(&self) -> FreeModule {
        FreeModule::new(self.ring.clone(), self.twists.iter().map(|d| -d).collect())
    }

    pub fn twisted(&self, t: i64) -> FreeModule {
        FreeModule::new(self.ring.clone(), self.twists.iter().map(|d| d + t).collect())
    }

    pub fn concat(&self, other: &FreeModule) -> FreeModule {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        FreeModule::new(self.ring.clone(), twists)
    }
}

/// An element of a free module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModVec {
    pub comps: Vec<Poly>,
}

impl ModVec {
    pub fn from_comps(comps: Vec<Poly>) -> ModVec {
        ModVec { comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &ModVec) -> ModVec {
        ModVec {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ModVec) -> ModVec {
        ModVec {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> ModVec {
        ModVec { comps: self.comps.iter().map(|p| p.neg()).collect() }
    }

    pub fn mul_term(&self, coef: &FieldScalar, mono: &Monomial) -> ModVec {
        ModVec {
            comps: self.comps.iter().map(|p| p.mul_term(coef, mono)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &Poly) -> ModVec {
        ModVec { comps: self.comps.iter().map(|p| p.mul(f)).collect() }
    }

    pub fn scale(&self, coef: &FieldScalar) -> ModVec {
        ModVec { comps: self.comps.iter().map(|p| p.scale(coef)).collect() }
    }

    /// Position-over-term lead: the grevlex lead term of the first nonzero
    /// component.
    pub fn lead(&self) -> Option<(usize, &Term)> {
        for (k, p) in self.comps.iter().enumerate() {
            if let Some(t) = p.lead() {
                return Some((k, t));
            }
        }
        None
    }

    /// Homogeneous degree within `module`, if consistent.
    pub fn homogeneous_degree(&self, module: &FreeModule) -> Result<Option<i64>> {
        let mut deg: Option<i64> = None;
        for (k, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = p
                .homogeneous_degree()
                .ok_or_else(|| Error::Inhomogeneous(format!("component {} mixes degrees", k)))?
                - module.twists[k];
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(e) => {
                    return Err(Error::Inhomogeneous(format!(
                        "components of degrees {} and {}",
                        e, d
                    )))
                }
            }
        }
        Ok(deg)
    }

    /// Content normalization: clears denominators and common integer factors
    /// across all components, making the lead coefficient positive.
    pub fn primitive_part(&self, ring: &Arc<PolyRing>) -> ModVec {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_rational::BigRational;
        use num_traits::{One, Signed, Zero};

        let spec = &ring.field;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        let mut visit = |r: &BigRational| {
            if !r.is_zero() {
                num_gcd = num_gcd.gcd(r.numer());
                den_lcm = den_lcm.lcm(r.denom());
            }
        };
        for p in &self.comps {
            for t in &p.terms {
                match &t.coef {
                    FieldScalar::Rat(r) => visit(r),
                    FieldScalar::Ext(v) => v.iter().for_each(&mut visit),
                }
            }
        }
        if num_gcd.is_zero() {
            return self.clone();
        }
        let mut factor = BigRational::new(den_lcm, num_gcd);
        if let Some((k, t)) = self.lead() {
            let _ = k;
            let negative = match &t.coef {
                FieldScalar::Rat(r) => r.is_negative(),
                FieldScalar::Ext(v) => v
                    .iter()
                    .rev()
                    .find(|c| !c.is_zero())
                    .map(|c| c.is_negative())
                    .unwrap_or(false),
            };
            if negative {
                factor = -factor;
            }
        }
        self.scale(&FieldScalar::from_rat(spec, factor))
    }
}

/// Compares two module terms (position, monomial) in POT order.
pub fn pot_cmp(
    a: (usize, &Monomial),
    b: (usize, &Monomial),
    ring: &PolyRing,
) -> Ordering {
    match a.0.cmp(&b.0) {
        // smaller position = greater in POT
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
        Ordering::Equal => a.1.cmp_in(b.1, ring.order),
    }
}

/// A graded map between twisted free modules, stored column-wise: column j is
/// the image of the j-th source generator.
#[derive(Debug, Clone)]
pub struct GradedMap {
    pub source: FreeModule,
    pub target: FreeModule,
    pub cols: Vec<ModVec>,
}

impl GradedMap {
    /// Builds a map from rows of polynomials, checking degree consistency:
    /// the entry in row i, column j must be zero or homogeneous of degree
    /// target.twists[i] - source.twists[j].
    pub fn from_rows(source: FreeModule, target: FreeModule, rows: Vec<Vec<Poly>>) -> Result<GradedMap> {
        if rows.len() != target.rank() {
            return Err(Error::Invalid("row count does not match target rank".into()));
        }
        for row in &rows {
            if row.len() != source.rank() {
                return Err(Error::Invalid("column count does not match source rank".into()));
            }
        }
        let mut cols = Vec::with_capacity(source.rank());
        for j in 0..source.rank() {
            let comps: Vec<Poly> = rows.iter().map(|row| row[j].clone()).collect();
            cols.push(ModVec::from_comps(comps));
        }
        let map = GradedMap { source, target, cols };
        map.check_degrees()?;
        Ok(map)
    }

    pub fn from_cols(source: FreeModule, target: FreeModule, cols: Vec<ModVec>) -> Result<GradedMap> {
        let map = GradedMap { source, target, cols };
        map.check_degrees()?;
        Ok(map)
    }

    pub fn check_degrees(&self) -> Result<()> {
        for (j, col) in self.cols.iter().enumerate() {
            for (i, p) in col.comps.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let want = self.target.twists[i] - self.source.twists[j];
                match p.homogeneous_degree() {
                    Some(d) if d == want => {}
                    _ => {
                        return Err(Error::Inhomogeneous(format!(
                            "entry ({}, {}) should be homogeneous of degree {}",
                            i, j, want
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &ModVec) -> ModVec {
        let mut out = self.target.zero_vec();
        for (j, col) in self.cols.iter().enumerate() {
            if v.comps[j].is_zero() {
                continue;
            }
            out = out.add(&col.mul_poly(&v.comps[j]));
        }
        out
    }

    /// The dual map between dual modules (matrix transpose).
    pub fn dual(&self) -> GradedMap {
        let src = self.target.dual();
        let tgt = self.source.dual();
        let mut cols = Vec::with_capacity(src.rank());
        for i in 0..src.rank() {
            let comps: Vec<Poly> = (0..tgt.rank())
                .map(|j| self.cols[j].comps[i].clone())
                .collect();
            cols.push(ModVec::from_comps(comps));
        }
        GradedMap { source: src, target: tgt, cols }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.cols[j].comps[i]
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        (0..self.target.rank())
            .map(|i| (0..self.source.rank()).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }
}

impl fmt::Display for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.target.rank() {
            write!(f, "[")?;
            for j in 0..self.source.rank() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
