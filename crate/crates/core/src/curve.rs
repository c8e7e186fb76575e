//! Restriction of presented modules to parametrized rational curves and
//! exact splitting types on P^1, plus the quadric's bidegree bookkeeping.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::Ctx;
use crate::homtools::{min_gen_degrees, torsion_free_quotient};
use crate::module::{PresentedModule, Submodule};
use crate::modvec::ModVec;
use crate::poly::{Poly, PolyRing};
use crate::scalar::{FieldScalar, FieldSpec};

/// A parametrized rational curve in P^N: N+1 binary forms of one degree with
/// no common factor, landing on X.
#[derive(Debug, Clone)]
pub struct RationalCurve {
    pub name: String,
    /// k[s,t] with the same coefficient field as the ambient ring
    pub param_ring: Arc<PolyRing>,
    pub coords: Vec<Poly>,
    pub degree: i64,
}

impl RationalCurve {
    pub fn new(name: &str, param_ring: Arc<PolyRing>, coords: Vec<Poly>) -> Result<RationalCurve> {
        if coords.is_empty() {
            return Err(Error::Invalid("a curve needs coordinates".into()));
        }
        let mut degree = None;
        for c in &coords {
            if c.is_zero() {
                continue;
            }
            let d = c
                .homogeneous_degree()
                .ok_or_else(|| Error::Inhomogeneous("curve coordinate".into()))?;
            match degree {
                None => degree = Some(d),
                Some(e) if e == d => {}
                _ => {
                    return Err(Error::Inhomogeneous(
                        "curve coordinates of mixed degrees".into(),
                    ))
                }
            }
        }
        let degree = degree.ok_or_else(|| Error::Invalid("zero parametrization".into()))?;
        let curve = RationalCurve {
            name: name.to_string(),
            param_ring,
            coords,
            degree,
        };
        if !curve.coords_coprime()? {
            return Err(Error::CheckFailed {
                check: "reduced-parametrization".into(),
                detail: "the coordinate forms share a common factor".into(),
            });
        }
        Ok(curve)
    }

    /// gcd of all coordinates is constant: checked via the common s/t powers
    /// and a univariate gcd of the dehomogenizations.
    fn coords_coprime(&self) -> Result<bool> {
        let nonzero: Vec<&Poly> = self.coords.iter().filter(|c| !c.is_zero()).collect();
        // common monomial factor
        for v in 0..2 {
            let min_exp = nonzero
                .iter()
                .map(|c| c.terms.iter().map(|t| t.mono.exps[v]).min().unwrap())
                .min()
                .unwrap();
            if min_exp > 0 {
                return Ok(false);
            }
        }
        // univariate gcd of dehomogenizations at s = 1
        let spec = self.param_ring.field.clone();
        let mut g: Option<Vec<FieldScalar>> = None;
        for c in &nonzero {
            let mut coeffs = vec![FieldScalar::zero(&spec); c.degree().unwrap() as usize + 1];
            for t in &c.terms {
                coeffs[t.mono.exps[1] as usize] = coeffs[t.mono.exps[1] as usize].add(&t.coef);
            }
            g = Some(match g {
                None => coeffs,
                Some(prev) => uni_gcd_scalar(&prev, &coeffs, &spec)?,
            });
            if g.as_ref().map_or(false, |v| v.len() <= 1 && !v.is_empty()) {
                return Ok(true);
            }
        }
        Ok(g.map_or(false, |v| v.len() <= 1))
    }

    /// Checks that the image lies on every hypersurface in the list.
    pub fn lies_on(&self, equations: &[Poly]) -> Result<bool> {
        for f in equations {
            if !f.substitute(&self.coords)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Does the curve meet the zero locus of the (saturated) ideal? Decided
    /// by the gcd of the pulled-back generators.
    pub fn meets_locus(&self, ideal: &[Poly]) -> Result<bool> {
        if ideal.is_empty() {
            return Ok(false);
        }
        let spec = self.param_ring.field.clone();
        let mut g: Option<Vec<FieldScalar>> = None;
        let mut st_common = [true, true];
        let mut all_zero = true;
        for f in ideal {
            let pulled = f.substitute(&self.coords)?;
            if pulled.is_zero() {
                continue;
            }
            all_zero = false;
            for v in 0..2 {
                if pulled.terms.iter().map(|t| t.mono.exps[v]).min().unwrap() == 0 {
                    st_common[v] = false;
                }
            }
            let mut coeffs = vec![FieldScalar::zero(&spec); pulled.degree().unwrap() as usize + 1];
            for t in &pulled.terms {
                coeffs[t.mono.exps[1] as usize] = coeffs[t.mono.exps[1] as usize].add(&t.coef);
            }
            g = Some(match g {
                None => coeffs,
                Some(prev) => uni_gcd_scalar(&prev, &coeffs, &spec)?,
            });
        }
        if all_zero {
            return Ok(true); // the curve lies inside the locus
        }
        if st_common[0] || st_common[1] {
            return Ok(true); // common root at a parameter endpoint
        }
        Ok(g.map_or(false, |v| v.len() > 1))
    }
}

/// Monic univariate gcd over the coefficient field (dense, low-endian).
pub fn uni_gcd_scalar(
    a: &[FieldScalar],
    b: &[FieldScalar],
    spec: &FieldSpec,
) -> Result<Vec<FieldScalar>> {
    let trim = |v: &mut Vec<FieldScalar>| {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
    };
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        // x mod y
        let dy = y.len() - 1;
        let lead_inv = y[dy].invert(spec)?;
        while x.len() > dy {
            let dx = x.len() - 1;
            let q = x[dx].mul(&lead_inv, spec);
            if !q.is_zero() {
                let shift = dx - dy;
                for i in 0..=dy {
                    let delta = y[i].mul(&q, spec);
                    x[i + shift] = x[i + shift].sub(&delta);
                }
            }
            x.pop();
            trim(&mut x);
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(last) = x.last() {
        let inv = last.invert(spec)?;
        for c in &mut x {
            *c = c.mul(&inv, spec);
        }
    }
    Ok(x)
}

/// Pulls a presented module back along the curve: twists scale by the curve
/// degree, the presentation matrix is substituted.
pub fn pullback(m: &PresentedModule, curve: &RationalCurve) -> Result<PresentedModule> {
    if !curve.lies_on(&m.ctx.quotient)? {
        return Err(Error::CheckFailed {
            check: "curve-on-X".into(),
            detail: format!("curve {} does not lie on the ambient variety", curve.name),
        });
    }
    let ctx = Ctx::poly_ring(curve.param_ring.clone()).with_cap(m.ctx.cap);
    let target = crate::modvec::FreeModule::new(
        curve.param_ring.clone(),
        m.target.twists.iter().map(|d| d * curve.degree).collect(),
    );
    let mut relations = vec![];
    for r in &m.relations {
        let comps = r
            .comps
            .iter()
            .map(|p| p.substitute(&curve.coords))
            .collect::<Result<Vec<_>>>()?;
        let v = ModVec::from_comps(comps);
        if !v.is_zero() {
            relations.push(v);
        }
    }
    Ok(PresentedModule::new(ctx, target, relations))
}

/// Pulls back an embedded submodule (gens substituted).
pub fn pullback_submodule(sub: &Submodule, curve: &RationalCurve) -> Result<Submodule> {
    if !curve.lies_on(&sub.ctx.quotient)? {
        return Err(Error::CheckFailed {
            check: "curve-on-X".into(),
            detail: format!("curve {} does not lie on the ambient variety", curve.name),
        });
    }
    let ctx = Ctx::poly_ring(curve.param_ring.clone()).with_cap(sub.ctx.cap);
    let ambient = crate::modvec::FreeModule::new(
        curve.param_ring.clone(),
        sub.ambient.twists.iter().map(|d| d * curve.degree).collect(),
    );
    let mut gens = vec![];
    for g in &sub.gens {
        let comps = g
            .comps
            .iter()
            .map(|p| p.substitute(&curve.coords))
            .collect::<Result<Vec<_>>>()?;
        let v = ModVec::from_comps(comps);
        if !v.is_zero() {
            gens.push(v);
        }
    }
    Ok(Submodule::new(ctx, ambient, gens))
}

/// Splitting type: the multiset of line-bundle degrees, descending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType(pub Vec<i64>);

impl std::fmt::Display for SplittingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", a)?;
        }
        write!(f, ")")
    }
}

/// Exact splitting type of a module over k[s,t]: saturate by (s,t), pass to
/// the torsion-free quotient, saturate again; the result is graded free and
/// the negated generator degrees are the line-bundle degrees.
pub fn splitting_type(mc: &PresentedModule) -> Result<SplittingType> {
    if mc.ctx.ring.nvars() != 2 || mc.ctx.is_quotient() {
        return Err(Error::Invalid("splitting types live over k[s,t]".into()));
    }
    // saturate the relation submodule: kills the finite-length junk
    let irr = crate::groebner::irrelevant_ideal(&mc.ctx.ring);
    let sat_rels = crate::groebner::saturate(&mc.ctx, &mc.target, &mc.relations, &irr)?;
    let sat_mod = PresentedModule::new(mc.ctx.clone(), mc.target.clone(), sat_rels);
    // quotient torsion (skyscraper subsheaves with one-dimensional support)
    let (_, embedded) = torsion_free_quotient(&sat_mod)?;
    let resat = Submodule::new(
        embedded.ctx.clone(),
        embedded.ambient.clone(),
        crate::groebner::saturate(&embedded.ctx, &embedded.ambient, &embedded.gens, &irr)?,
    );
    let presented = resat.present()?;
    let degs = min_gen_degrees(&presented)?;
    let mut split: Vec<i64> = degs.iter().map(|d| -d).collect();
    split.sort_unstable_by(|a, b| b.cmp(a));
    // rank sanity: the Hilbert polynomial of the result must be linear with
    // slope = number of generators
    let hp = presented.hilbert_polynomial()?;
    let rank = hp.coeff(1);
    if rank != num_rational::BigRational::from_integer((split.len() as i64).into()) {
        return Err(Error::CheckFailed {
            check: "splitting-free".into(),
            detail: format!(
                "saturated torsion-free restriction is not free: {} generators, rank {}",
                split.len(),
                rank
            ),
        });
    }
    Ok(SplittingType(split))
}

/// The two rulings of the Segre quadric x0 x3 = x1 x2 through parametrized
/// representatives: an A-line fixes [a0:a1], a B-line fixes [b0:b1].
pub fn quadric_ruling_a(param_ring: &Arc<PolyRing>, a0: i64, a1: i64) -> Result<RationalCurve> {
    let spec = param_ring.field.clone();
    let s = param_ring.var(0);
    let t = param_ring.var(1);
    let c0 = FieldScalar::from_int(&spec, a0);
    let c1 = FieldScalar::from_int(&spec, a1);
    RationalCurve::new(
        &format!("quadric_ruling_a_{}_{}", a0, a1),
        param_ring.clone(),
        vec![s.scale(&c0), t.scale(&c0), s.scale(&c1), t.scale(&c1)],
    )
}

pub fn quadric_ruling_b(param_ring: &Arc<PolyRing>, b0: i64, b1: i64) -> Result<RationalCurve> {
    let spec = param_ring.field.clone();
    let s = param_ring.var(0);
    let t = param_ring.var(1);
    let c0 = FieldScalar::from_int(&spec, b0);
    let c1 = FieldScalar::from_int(&spec, b1);
    RationalCurve::new(
        &format!("quadric_ruling_b_{}_{}", b0, b1),
        param_ring.clone(),
        vec![s.scale(&c0), s.scale(&c1), t.scale(&c0), t.scale(&c1)],
    )
}

/// Bidegree first Chern class on the quadric: a = Σ splitting over a B-line,
/// b = Σ splitting over an A-line, the lines chosen to avoid the singular
/// support.
pub fn bidegree_c1(
    m: &PresentedModule,
    singular_support: &[Poly],
) -> Result<(i64, i64)> {
    let param_ring = PolyRing::new(&["s", "t"], m.ctx.ring.field.clone());
    let candidates: [(i64, i64); 5] = [(0, 1), (1, 0), (1, 1), (1, -1), (1, 2)];
    let mut a_total = None;
    let mut b_total = None;
    for &(u, v) in &candidates {
        if b_total.is_none() {
            let line = quadric_ruling_b(&param_ring, u, v)?;
            if !line.meets_locus(singular_support)? {
                let pulled = pullback(m, &line)?;
                let split = splitting_type(&pulled)?;
                b_total = Some(split.0.iter().sum::<i64>());
            }
        }
        if a_total.is_none() {
            let line = quadric_ruling_a(&param_ring, u, v)?;
            if !line.meets_locus(singular_support)? {
                let pulled = pullback(m, &line)?;
                let split = splitting_type(&pulled)?;
                a_total = Some(split.0.iter().sum::<i64>());
            }
        }
        if a_total.is_some() && b_total.is_some() {
            break;
        }
    }
    match (a_total, b_total) {
        // the determinant degree on a B-line is the first component
        (Some(on_a), Some(on_b)) => Ok((on_b, on_a)),
        _ => Err(Error::CheckFailed {
            check: "ruling-avoiding-singularities".into(),
            detail: "no catalog ruling avoids the singular support".into(),
        }),
    }
}

/// One catalog entry in the JSON interchange format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntryJson {
    pub name: String,
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogJson {
    pub field: FieldSpec,
    pub curves: Vec<CatalogEntryJson>,
}

/// Named curve catalog: built-in Fermat-cubic lines and quadric rulings,
/// extensible from a JSON file.
pub struct CurveCatalog {
    pub param_ring: Arc<PolyRing>,
    pub entries: Vec<RationalCurve>,
}

impl CurveCatalog {
    pub fn find(&self, name: &str) -> Option<&RationalCurve> {
        self.entries.iter().find(|c| c.name == name)
    }

    pub fn from_json(json: &CatalogJson) -> Result<CurveCatalog> {
        let field = Arc::new(json.field.clone());
        let param_ring = PolyRing::new(&["s", "t"], field);
        let mut entries = vec![];
        for e in &json.curves {
            let coords = e
                .coords
                .iter()
                .map(|c| param_ring.parse(c))
                .collect::<Result<Vec<_>>>()?;
            entries.push(RationalCurve::new(&e.name, param_ring.clone(), coords)?);
        }
        Ok(CurveCatalog { param_ring, entries })
    }

    /// Lines on the Fermat cubic x0^3+x1^3+x2^3+x3^3 = 0 rational over the
    /// coefficient field: the pairings (01|23), (02|13), (03|12) with cube
    /// roots of unity where the field has them.
    pub fn fermat_lines(field: Arc<FieldSpec>) -> Result<CurveCatalog> {
        let param_ring = PolyRing::new(&["s", "t"], field.clone());
        let s = param_ring.var(0);
        let t = param_ring.var(1);
        let minus = |p: &Poly| p.neg();
        let mut roots = vec![param_ring.one()];
        if field.degree() == 2 {
            if let Ok(w) = FieldScalar::generator(&field) {
                // include w and w^2 when w is a primitive cube root of unity
                let w_poly = param_ring.constant(w.clone());
                let w2 = w.mul(&w, &field);
                if w2.mul(&w, &field).is_one() {
                    roots.push(w_poly.clone());
                    roots.push(param_ring.constant(w2));
                }
            }
        }
        let pairings: [(usize, usize, usize, usize); 3] = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)];
        let mut entries = vec![];
        for (pi, &(i, j, k, l)) in pairings.iter().enumerate() {
            for (zi, z1) in roots.iter().enumerate() {
                for (zj, z2) in roots.iter().enumerate() {
                    let mut coords = vec![param_ring.zero(); 4];
                    coords[i] = s.clone();
                    coords[j] = minus(&s.mul(z1));
                    coords[k] = t.clone();
                    coords[l] = minus(&t.mul(z2));
                    let name = format!("fermat_line_p{}_z{}{}", pi, zi, zj);
                    entries.push(RationalCurve::new(&name, param_ring.clone(), coords)?);
                }
            }
        }
        Ok(CurveCatalog { param_ring, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::DEFAULT_DEGREE_CAP;
    use crate::pipeline::{net_log_tangent, CIPair};

    fn p3() -> Arc<PolyRing> {
        PolyRing::new(&["x0", "x1", "x2", "x3"], FieldSpec::rationals())
    }

    #[test]
    fn pullback_of_free_along_line() {
        let r = p3();
        let q = r.parse("x0*x3 - x1*x2").unwrap();
        let ctx = Ctx::quotient_ring(r.clone(), vec![q]);
        let free = PresentedModule::free(ctx, vec![1, 1, 1]);
        let param = PolyRing::new(&["s", "t"], FieldSpec::rationals());
        let line = quadric_ruling_a(&param, 1, 0).unwrap();
        let pulled = pullback(&free, &line).unwrap();
        let split = splitting_type(&pulled).unwrap();
        assert_eq!(split, SplittingType(vec![1, 1, 1]));
    }

    #[test]
    fn fermat_line_catalog_lies_on_cubic() {
        let cat = CurveCatalog::fermat_lines(FieldSpec::rationals()).unwrap();
        assert_eq!(cat.entries.len(), 3);
        let r = p3();
        let fermat = r.parse("x0^3+x1^3+x2^3+x3^3").unwrap();
        for c in &cat.entries {
            assert!(c.lies_on(&[fermat.clone()]).unwrap(), "{}", c.name);
        }
        let cat_w = CurveCatalog::fermat_lines(FieldSpec::cyclotomic3()).unwrap();
        assert_eq!(cat_w.entries.len(), 27);
        let rw = PolyRing::new(&["x0", "x1", "x2", "x3"], FieldSpec::cyclotomic3());
        let fermat_w = rw.parse("x0^3+x1^3+x2^3+x3^3").unwrap();
        for c in &cat_w.entries {
            assert!(c.lies_on(&[fermat_w.clone()]).unwrap(), "{}", c.name);
        }
    }

    #[test]
    fn common_factor_rejected() {
        let param = PolyRing::new(&["s", "t"], FieldSpec::rationals());
        let s = param.var(0);
        let bad = RationalCurve::new(
            "bad",
            param.clone(),
            vec![
                s.mul(&param.var(0)),
                s.mul(&param.var(1)),
                param.zero(),
                param.zero(),
            ],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn net_on_quadric_restricts_to_rulings_with_degrees_0_1() {
        let r = p3();
        let pair = CIPair::new(
            r.clone(),
            vec![r.parse("x0*x3 - x1*x2").unwrap()],
            vec![r.var(3)],
            DEFAULT_DEGREE_CAP,
        )
        .unwrap();
        let net = net_log_tangent(&pair).unwrap();
        let param = PolyRing::new(&["s", "t"], FieldSpec::rationals());
        // rulings avoiding the singular point [1:0:0:0]
        let a_line = quadric_ruling_a(&param, 0, 1).unwrap();
        let b_line = quadric_ruling_b(&param, 0, 1).unwrap();
        // reflexive hull restricted: (0,1) on both rulings
        let refl = crate::homtools::double_dual(&net.module).unwrap();
        for line in [&a_line, &b_line] {
            let pulled = pullback(&refl, line).unwrap();
            let split = splitting_type(&pulled).unwrap();
            assert_eq!(split, SplittingType(vec![1, 0]), "on {}", line.name);
        }
        // bidegree of the net module itself is (1,1)
        let sing = vec![r.var(1), r.var(2), r.var(3)];
        let (a, b) = bidegree_c1(&net.module, &sing).unwrap();
        assert_eq!((a, b), (1, 1));
    }
}
