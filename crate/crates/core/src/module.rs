//! Presented graded modules over S or S/(F): Hilbert data, free resolutions
//! over the ambient polynomial ring, and sheaf cohomology through graded
//! duality.
//!
//! A module is the cokernel of a graded map into a twisted free module. The
//! quotient ideal of the ambient ring rides along in the context and is
//! appended inside every Gröbner call, so the relation list always generates
//! the full relation submodule over the quotient ring.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{
    self, groebner, ideal_module, irrelevant_ideal, kernel_of_map, saturate, Ctx,
};
use crate::hilbert::{
    hilbert_function_from_numerator, hilbert_polynomial_from_numerator, kpoly_monomial_ideal,
    HilbertData, Laurent, QPoly,
};
use crate::macaulay::{map_matrix, module_dim, submodule_dim};
use crate::modvec::{FreeModule, GradedMap, ModVec};
use crate::poly::{Monomial, Poly, PolyRing};

/// A graded module presented as coker(relations -> target) over the context
/// ring.
#[derive(Debug, Clone)]
pub struct PresentedModule {
    pub ctx: Ctx,
    pub target: FreeModule,
    pub relations: Vec<ModVec>,
}

/// A submodule of a free module, kept in embedded form (the representation
/// used for saturation and section counting).
#[derive(Debug, Clone)]
pub struct Submodule {
    pub ctx: Ctx,
    pub ambient: FreeModule,
    pub gens: Vec<ModVec>,
}

impl Submodule {
    pub fn new(ctx: Ctx, ambient: FreeModule, gens: Vec<ModVec>) -> Submodule {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Submodule { ctx, ambient, gens }
    }

    /// Presents the submodule abstractly: free module on the generators,
    /// relations = their syzygies over the context ring.
    pub fn present(&self) -> Result<PresentedModule> {
        let (tag_module, rels) = groebner::syzygies_of_gens(&self.ctx, &self.ambient, &self.gens)?;
        Ok(PresentedModule {
            ctx: self.ctx.clone(),
            target: tag_module,
            relations: rels,
        })
    }

    /// Saturation by the irrelevant ideal; the result generates the module
    /// of twisted global sections of the associated sheaf.
    pub fn saturate_irrelevant(&self) -> Result<Submodule> {
        let irr = irrelevant_ideal(&self.ctx.ring);
        let gens = saturate(&self.ctx, &self.ambient, &self.gens, &irr)?;
        Ok(Submodule::new(self.ctx.clone(), self.ambient.clone(), gens))
    }

    /// Exact dimension of the degree-t piece (as a subspace of F ⊗ R).
    pub fn dim_at(&self, t: i64) -> usize {
        let with = submodule_dim(&self.ctx, &self.ambient, &self.gens, t);
        if self.ctx.is_quotient() {
            let without = submodule_dim(&self.ctx, &self.ambient, &[], t);
            with - without
        } else {
            with
        }
    }

    pub fn twist(&self, t: i64) -> Submodule {
        Submodule::new(self.ctx.clone(), self.ambient.twisted(t), self.gens.clone())
    }
}

impl PresentedModule {
    pub fn new(ctx: Ctx, target: FreeModule, relations: Vec<ModVec>) -> PresentedModule {
        PresentedModule { ctx, target, relations }
    }

    /// The free module with the given twists.
    pub fn free(ctx: Ctx, twists: Vec<i64>) -> PresentedModule {
        let target = FreeModule::new(ctx.ring.clone(), twists);
        PresentedModule { ctx, target, relations: vec![] }
    }

    /// Cokernel of a graded map over the context ring.
    pub fn coker(ctx: Ctx, map: &GradedMap) -> PresentedModule {
        PresentedModule {
            ctx,
            target: map.target.clone(),
            relations: map.cols.clone(),
        }
    }

    /// The cyclic module R/I.
    pub fn cyclic(ctx: Ctx, ideal: &[Poly]) -> PresentedModule {
        let target = ideal_module(&ctx.ring);
        let relations = ideal
            .iter()
            .map(|f| ModVec::from_comps(vec![f.clone()]))
            .collect();
        PresentedModule { ctx, target, relations }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ctx.ring
    }

    pub fn twist(&self, t: i64) -> PresentedModule {
        PresentedModule {
            ctx: self.ctx.clone(),
            target: self.target.twisted(t),
            relations: self.relations.clone(),
        }
    }

    /// M ⊗ R/I over R/I (the ideal joins the quotient of the context).
    pub fn restrict(&self, ideal: &[Poly]) -> PresentedModule {
        let mut quotient = self.ctx.quotient.clone();
        for f in ideal {
            if !quotient.iter().any(|q| q == f) {
                quotient.push(f.clone());
            }
        }
        let ctx = Ctx {
            ring: self.ctx.ring.clone(),
            quotient,
            cap: self.ctx.cap,
        };
        PresentedModule {
            ctx,
            target: self.target.clone(),
            relations: self.relations.clone(),
        }
    }

    /// Exact Hilbert function value at t, by Macaulay-matrix rank.
    pub fn hf(&self, t: i64) -> i64 {
        let total = module_dim(&self.target, t) as i64;
        let rel = submodule_dim(&self.ctx, &self.target, &self.relations, t) as i64;
        total - rel
    }

    /// Hilbert numerator of the lead-term module (exact series data).
    pub fn hilbert_numerator(&self) -> Result<Laurent> {
        let gb = groebner(&self.ctx, &self.target, &self.relations)?;
        let rank = self.target.rank();
        let mut lead_monos: Vec<Vec<Monomial>> = vec![vec![]; rank];
        for g in &gb.gens {
            if let Some((pos, t)) = g.lead() {
                lead_monos[pos].push(t.mono.clone());
            }
        }
        let mut num = Laurent::zero();
        for (k, monos) in lead_monos.iter().enumerate() {
            let kp = kpoly_monomial_ideal(monos);
            num.add_assign(&kp.shift(-self.target.twists[k]));
        }
        Ok(num)
    }

    /// Hilbert data: function window from Macaulay ranks, polynomial from
    /// the lead-term series. The two routes are independent and are
    /// cross-checked on the whole window.
    pub fn hilbert_window(&self, lo: i64, hi: i64) -> Result<HilbertData> {
        let num = self.hilbert_numerator()?;
        let n = self.ctx.ring.nvars();
        let polynomial = hilbert_polynomial_from_numerator(&num, n);
        let mut window = vec![];
        for t in lo..=hi {
            let rank_route = self.hf(t);
            let series_route = hilbert_function_from_numerator(&num, n, t);
            if BigInt::from(rank_route) != series_route {
                return Err(Error::CheckFailed {
                    check: "hilbert-dual-route".into(),
                    detail: format!(
                        "degree {}: Macaulay rank gives {}, series gives {}",
                        t, rank_route, series_route
                    ),
                });
            }
            window.push((t, rank_route));
        }
        let mut agreement = None;
        for (t, v) in window.iter().rev() {
            if polynomial.eval_i64(*t) == BigRational::from_integer(BigInt::from(*v)) {
                agreement = Some(*t);
            } else {
                break;
            }
        }
        let window_warning = match agreement {
            None => true,
            Some(a) => a == hi && lo != hi,
        };
        Ok(HilbertData { window, polynomial, agreement_index: agreement, window_warning })
    }

    pub fn hilbert(&self) -> Result<HilbertData> {
        let lo = self.target.twists.iter().map(|d| -d).min().unwrap_or(0).min(0) - 1;
        let hi = lo + 11;
        self.hilbert_window(lo, hi)
    }

    pub fn hilbert_polynomial(&self) -> Result<QPoly> {
        let num = self.hilbert_numerator()?;
        Ok(hilbert_polynomial_from_numerator(&num, self.ctx.ring.nvars()))
    }

    /// Euler characteristic χ(M~(t)) from the Hilbert polynomial.
    pub fn chi(&self, t: i64) -> Result<BigRational> {
        Ok(self.hilbert_polynomial()?.eval_i64(t))
    }

    /// The same module with redundant generators pruned (unit entries of the
    /// presentation removed by Gaussian pruning). Generator alignment with
    /// any embedded form is lost.
    pub fn minimized(&self) -> Result<PresentedModule> {
        let cols: Vec<ModVec> = self.relations.iter().filter(|v| !v.is_zero()).cloned().collect();
        if cols.is_empty() {
            return Ok(self.clone());
        }
        let mut twists = vec![];
        for c in &cols {
            let d = c
                .homogeneous_degree(&self.target)?
                .ok_or_else(|| Error::Invalid("zero relation".into()))?;
            twists.push(-d);
        }
        let source = FreeModule::new(self.ctx.ring.clone(), twists);
        let map = GradedMap::from_cols(source, self.target.clone(), cols)?;
        let mut maps = vec![map];
        while let Some((r, c)) = find_unit_entry(&maps[0]) {
            prune_unit(&mut maps, 0, r, c);
        }
        let map = maps.pop().unwrap();
        Ok(PresentedModule {
            ctx: self.ctx.clone(),
            target: map.target,
            relations: map.cols.into_iter().filter(|c| !c.is_zero()).collect(),
        })
    }

    /// Presentation over the ambient polynomial ring: relation columns plus
    /// quotient multiples.
    pub fn s_relations(&self) -> Vec<ModVec> {
        let mut rels = self.relations.clone();
        for q in &self.ctx.quotient {
            for k in 0..self.target.rank() {
                let mut v = self.target.zero_vec();
                v.comps[k] = q.clone();
                rels.push(v);
            }
        }
        rels
    }

    /// A finite free resolution over the ambient polynomial ring, minimized.
    /// maps[0]: F1 -> F0 presents M as an S-module; maps[j]: F_{j+1} -> F_j.
    pub fn resolution_over_s(&self) -> Result<Vec<GradedMap>> {
        let ctx = self.ctx.ambient();
        let mut maps: Vec<GradedMap> = vec![];
        let mut current_target = self.target.clone();
        let mut current_cols: Vec<ModVec> =
            self.s_relations().into_iter().filter(|v| !v.is_zero()).collect();
        let n = self.ctx.ring.nvars();
        for _ in 0..=(n + 1) {
            if current_cols.is_empty() {
                break;
            }
            let mut twists = vec![];
            for c in &current_cols {
                let d = c
                    .homogeneous_degree(&current_target)?
                    .ok_or_else(|| Error::Invalid("zero column".into()))?;
                twists.push(-d);
            }
            let source = FreeModule::new(self.ctx.ring.clone(), twists);
            let map =
                GradedMap::from_cols(source.clone(), current_target.clone(), current_cols.clone())?;
            let ker = kernel_of_map(&ctx, &map)?;
            maps.push(map);
            current_target = source;
            current_cols = ker.into_iter().filter(|v| !v.is_zero()).collect();
        }
        if !current_cols.is_empty() {
            return Err(Error::DegreeCap {
                cap: (n + 1) as i64,
                what: "free resolution length".into(),
            });
        }
        Ok(minimize_complex(maps))
    }

    /// Builds the cohomology engine (resolution computed once).
    pub fn cohomology(&self) -> Result<Cohomology> {
        let res = self.resolution_over_s()?;
        Ok(Cohomology { module: self.clone(), res })
    }

    pub fn h0(&self, t: i64) -> Result<i64> {
        Ok(self.cohomology()?.h(0, t))
    }

    pub fn sheaf_cohomology(&self, i: usize, t: i64) -> Result<i64> {
        Ok(self.cohomology()?.h(i, t))
    }
}

/// Sheaf cohomology on Proj of the ambient ring via graded duality: for
/// i >= 1, h^i(M~(t)) = dim Ext^{N-i}(M, S(-N-1)) in degree -t, and h^0
/// corrects the Hilbert function by the two extremal Ext groups.
pub struct Cohomology {
    module: PresentedModule,
    res: Vec<GradedMap>,
}

impl Cohomology {
    pub fn resolution(&self) -> &[GradedMap] {
        &self.res
    }

    fn free_at(&self, j: usize) -> Option<FreeModule> {
        if j == 0 {
            Some(self.module.target.clone())
        } else {
            self.res.get(j - 1).map(|m| m.source.clone())
        }
    }

    /// dim_e Ext^j(M, S(-n)) where n = number of variables.
    pub fn ext_dual_dim(&self, j: usize, e: i64) -> i64 {
        let n = self.module.ctx.ring.nvars() as i64;
        let Some(fj) = self.free_at(j) else { return 0 };
        let dual_fj = fj.dual().twisted(-n);
        let dim_total = module_dim(&dual_fj, e) as i64;
        let rank_of_dual = |map: &GradedMap| -> i64 {
            let d = map.dual();
            let shifted = GradedMap {
                source: d.source.twisted(-n),
                target: d.target.twisted(-n),
                cols: d.cols,
            };
            map_matrix(&shifted, e).rank() as i64
        };
        let rank_in = if j == 0 { 0 } else { rank_of_dual(&self.res[j - 1]) };
        let rank_out = if j < self.res.len() { rank_of_dual(&self.res[j]) } else { 0 };
        dim_total - rank_in - rank_out
    }

    /// h^i(M~(t)).
    pub fn h(&self, i: usize, t: i64) -> i64 {
        let n = self.module.ctx.ring.nvars(); // = N + 1
        let proj_dim = n as i64 - 1;
        if i == 0 {
            let hf = self.module.hf(t);
            let top = self.ext_dual_dim(n, -t);
            let next = self.ext_dual_dim(n - 1, -t);
            return hf - top + next;
        }
        if (i as i64) > proj_dim {
            return 0;
        }
        self.ext_dual_dim(n - 1 - i, -t)
    }

    pub fn h_table(&self, pairs: &[(usize, i64)]) -> Vec<(usize, i64, i64)> {
        pairs.iter().map(|&(i, t)| (i, t, self.h(i, t))).collect()
    }
}

/// Removes degree-zero unit entries from a complex of graded maps, adjusting
/// the neighboring maps (Gaussian pruning). The result presents the same
/// module with the same homology.
pub fn minimize_complex(mut maps: Vec<GradedMap>) -> Vec<GradedMap> {
    if maps.is_empty() {
        return maps;
    }
    loop {
        let mut changed = false;
        for level in 0..maps.len() {
            if let Some((r, c)) = find_unit_entry(&maps[level]) {
                prune_unit(&mut maps, level, r, c);
                changed = true;
                break;
            }
        }
        if !changed {
            break;
        }
    }
    // discard trailing zero maps
    while maps.last().map_or(false, |m| m.cols.is_empty() || m.cols.iter().all(|c| c.is_zero())) {
        let last = maps.pop().unwrap();
        let _ = last;
    }
    maps
}

fn find_unit_entry(map: &GradedMap) -> Option<(usize, usize)> {
    for (j, col) in map.cols.iter().enumerate() {
        for (i, p) in col.comps.iter().enumerate() {
            if map.target.twists[i] == map.source.twists[j]
                && !p.is_zero()
                && p.terms.len() == 1
                && p.terms[0].mono.is_one()
            {
                return Some((i, j));
            }
        }
    }
    None
}

fn prune_unit(maps: &mut [GradedMap], level: usize, r: usize, c: usize) {
    let spec = maps[level].source.ring.field.clone();
    let pivot = maps[level].cols[c].comps[r].terms[0].coef.clone();
    let pivot_inv = pivot.invert(&spec).expect("unit pivot");

    // column operations clear row r; mirror on the next map's rows
    let ncols = maps[level].cols.len();
    for j in 0..ncols {
        if j == c {
            continue;
        }
        let entry = maps[level].cols[j].comps[r].clone();
        if entry.is_zero() {
            continue;
        }
        let lambda = entry.scale(&pivot_inv);
        let sub = maps[level].cols[c].mul_poly(&lambda);
        maps[level].cols[j] = maps[level].cols[j].sub(&sub);
        if level + 1 < maps.len() {
            let next = &mut maps[level + 1];
            for col in &mut next.cols {
                let add = col.comps[j].mul(&lambda);
                col.comps[c] = col.comps[c].add(&add);
            }
        }
    }
    // row operations clear column c; mirror on the previous map's columns
    let nrows = maps[level].target.rank();
    for i in 0..nrows {
        if i == r {
            continue;
        }
        let entry = maps[level].cols[c].comps[i].clone();
        if entry.is_zero() {
            continue;
        }
        let mu = entry.scale(&pivot_inv);
        for col in &mut maps[level].cols {
            let sub = col.comps[r].mul(&mu);
            col.comps[i] = col.comps[i].sub(&sub);
        }
        if level > 0 {
            let prev = &mut maps[level - 1];
            let add = prev.cols[i].mul_poly(&mu);
            prev.cols[r] = prev.cols[r].add(&add);
        }
    }
    // delete source generator c and target generator r
    maps[level].cols.remove(c);
    maps[level].source.twists.remove(c);
    maps[level].target.twists.remove(r);
    for col in &mut maps[level].cols {
        col.comps.remove(r);
    }
    if level + 1 < maps.len() {
        let next = &mut maps[level + 1];
        next.target.twists.remove(c);
        for col in &mut next.cols {
            col.comps.remove(c);
        }
    }
    if level > 0 {
        let prev = &mut maps[level - 1];
        prev.cols.remove(r);
        prev.source.twists.remove(r);
    }
}

/// JSON form of a presented module: ring descriptor, twists, and matrix
/// entries as polynomial strings. Round-trips bit-exactly through the
/// parser/printer pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleJson {
    pub field: crate::scalar::FieldSpec,
    pub variables: Vec<String>,
    pub quotient: Vec<String>,
    pub twists: Vec<i64>,
    pub relations: Vec<Vec<String>>,
}

impl PresentedModule {
    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            field: (*self.ctx.ring.field).clone(),
            variables: self.ctx.ring.vars.clone(),
            quotient: self.ctx.quotient.iter().map(|q| q.to_string()).collect(),
            twists: self.target.twists.clone(),
            relations: self
                .relations
                .iter()
                .map(|v| v.comps.iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &ModuleJson, cap: i64) -> Result<PresentedModule> {
        let field = Arc::new(json.field.clone());
        let vars: Vec<&str> = json.variables.iter().map(|s| s.as_str()).collect();
        let ring = PolyRing::new(&vars, field);
        let quotient = json
            .quotient
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        let ctx = Ctx { ring: ring.clone(), quotient, cap };
        let target = FreeModule::new(ring.clone(), json.twists.clone());
        let relations = json
            .relations
            .iter()
            .map(|comps| {
                let parsed = comps
                    .iter()
                    .map(|s| ring.parse(s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ModVec::from_comps(parsed))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PresentedModule { ctx, target, relations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::QPoly;
    use crate::scalar::FieldSpec;

    fn p3() -> Arc<PolyRing> {
        PolyRing::new(&["x0", "x1", "x2", "x3"], FieldSpec::rationals())
    }

    #[test]
    fn hilbert_of_polynomial_ring() {
        let r = p3();
        let m = PresentedModule::free(Ctx::poly_ring(r.clone()), vec![0]);
        let h = m.hilbert().unwrap();
        // C(t+3,3)
        let expect = QPoly::binomial(3, 3);
        assert_eq!(h.polynomial, expect);
        assert_eq!(h.value(2), Some(10));
        assert_eq!(h.agreement_index, Some(h.window[0].0));
    }

    #[test]
    fn hilbert_of_fat_point_scheme() {
        // S/(x0^2, x1^2, x2^2): constant 8
        let r = p3();
        let ideal = vec![
            r.parse("x0^2").unwrap(),
            r.parse("x1^2").unwrap(),
            r.parse("x2^2").unwrap(),
        ];
        let m = PresentedModule::cyclic(Ctx::poly_ring(r.clone()), &ideal);
        let h = m.hilbert().unwrap();
        assert_eq!(h.polynomial, QPoly::from_i64_coeffs(&[8]));
        assert_eq!(h.value(3), Some(8));
        assert_eq!(h.value(1), Some(4));
    }

    #[test]
    fn hilbert_of_quadric_surface() {
        let r = p3();
        let q = vec![r.parse("x0*x3 - x1*x2").unwrap()];
        let m = PresentedModule::cyclic(Ctx::poly_ring(r.clone()), &q);
        let h = m.hilbert().unwrap();
        // chi(O_Q(t)) = (t+1)^2 ... = t^2 + 2t + 1? No: chi(O_Q(t)) = (t+1)^2
        // for Q = P1xP1 with O(1,1): (t+1)(t+1)
        assert_eq!(h.polynomial, QPoly::from_i64_coeffs(&[1, 2, 1]));
    }

    #[test]
    fn resolution_of_point_is_koszul() {
        let r = p3();
        let ideal: Vec<Poly> = (0..4).map(|i| r.var(i)).collect();
        let m = PresentedModule::cyclic(Ctx::poly_ring(r.clone()), &ideal);
        let res = m.resolution_over_s().unwrap();
        assert_eq!(res.len(), 4);
        let ranks: Vec<usize> = res.iter().map(|m| m.source.rank()).collect();
        assert_eq!(ranks, vec![4, 6, 4, 1]);
        // complex property
        for w in res.windows(2) {
            for col in &w[1].cols {
                assert!(w[0].apply(col).is_zero());
            }
        }
    }

    #[test]
    fn cohomology_of_line_bundles_on_p3() {
        let r = p3();
        let m = PresentedModule::free(Ctx::poly_ring(r.clone()), vec![0]);
        let coh = m.cohomology().unwrap();
        assert_eq!(coh.h(0, 2), 10);
        assert_eq!(coh.h(1, -2), 0);
        assert_eq!(coh.h(2, -3), 0);
        assert_eq!(coh.h(3, -5), 4); // h^3(O(-5)) = h^0(O(1)) = 4
        assert_eq!(coh.h(3, -4), 1);
        assert_eq!(coh.h(0, -1), 0);
    }

    #[test]
    fn cohomology_on_quadric_and_cubic() {
        let r = p3();
        // O_Q: h^0 = 1, h^1 = h^2 = 0 at t=0; h^2(O_Q(-3)) = h^0(O_Q(1)) = 4
        let q = vec![r.parse("x0*x3 - x1*x2").unwrap()];
        let m = PresentedModule::cyclic(Ctx::poly_ring(r.clone()), &q);
        let coh = m.cohomology().unwrap();
        assert_eq!(coh.h(0, 0), 1);
        assert_eq!(coh.h(1, 0), 0);
        assert_eq!(coh.h(2, 0), 0);
        assert_eq!(coh.h(2, -3), 4);
        // Fermat cubic: K_S = O(-1); h^2(O_S(-2)) = h^0(O_S(1)) = 4
        let f = vec![r.parse("x0^3+x1^3+x2^3+x3^3").unwrap()];
        let s = PresentedModule::cyclic(Ctx::poly_ring(r.clone()), &f);
        let coh_s = s.cohomology().unwrap();
        assert_eq!(coh_s.h(0, 0), 1);
        assert_eq!(coh_s.h(1, 0), 0);
        assert_eq!(coh_s.h(2, 0), 0);
        assert_eq!(coh_s.h(2, -2), 4);
        // skyscraper S/m has no sheaf cohomology at all
        let pt: Vec<Poly> = (0..4).map(|i| r.var(i)).collect();
        let k = PresentedModule::cyclic(Ctx::poly_ring(r.clone()), &pt);
        let coh_k = k.cohomology().unwrap();
        for i in 0..4 {
            assert_eq!(coh_k.h(i, 0), 0, "h^{} of the irrelevant skyscraper", i);
        }
    }

    #[test]
    fn euler_characteristic_identity() {
        let r = p3();
        let q = vec![r.parse("x0*x3 - x1*x2").unwrap()];
        let m = PresentedModule::cyclic(Ctx::poly_ring(r.clone()), &q);
        let coh = m.cohomology().unwrap();
        let hp = m.hilbert_polynomial().unwrap();
        for t in -4..4 {
            let chi: i64 = (0..4)
                .map(|i| {
                    let v = coh.h(i, t);
                    if i % 2 == 0 { v } else { -v }
                })
                .sum();
            assert_eq!(
                BigRational::from_integer(BigInt::from(chi)),
                hp.eval_i64(t),
                "chi at t={}",
                t
            );
        }
    }

    #[test]
    fn restrict_free_stays_free() {
        let r = p3();
        let q = r.parse("x0*x3 - x1*x2").unwrap();
        let free = PresentedModule::free(Ctx::poly_ring(r.clone()), vec![1, 1, 1, 1]);
        let restricted = free.restrict(&[q]);
        // rank-4 free over the quadric: HF(t) = 4 * dim (S/Q)_{t+1}
        let hq = PresentedModule::cyclic(Ctx::poly_ring(r.clone()), &[r.parse("x0*x3 - x1*x2").unwrap()]);
        for t in 0..4 {
            assert_eq!(restricted.hf(t), 4 * hq.hf(t + 1));
        }
    }

    #[test]
    fn module_json_roundtrip() {
        let r = p3();
        let q = vec![r.parse("x0*x3 - x1*x2").unwrap()];
        let ctx = Ctx::quotient_ring(r.clone(), q);
        let target = FreeModule::new(r.clone(), vec![1, 1]);
        let relations = vec![ModVec::from_comps(vec![
            r.parse("x0 - 2*x1").unwrap(),
            r.parse("x2").unwrap(),
        ])];
        let m = PresentedModule::new(ctx, target, relations);
        let json = m.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back: ModuleJson = serde_json::from_str(&text).unwrap();
        let m2 = PresentedModule::from_json(&back, m.ctx.cap).unwrap();
        assert_eq!(m2.target.twists, m.target.twists);
        assert_eq!(m2.relations, m.relations);
        assert_eq!(m2.ctx.quotient, m.ctx.quotient);
        assert_eq!(serde_json::to_string(&m2.to_json()).unwrap(), text);
    }
}
