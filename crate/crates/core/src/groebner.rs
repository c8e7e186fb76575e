//! Buchberger engine for submodules of twisted free modules, over the
//! polynomial ring or over a quotient by a homogeneous ideal.
//!
//! Quotient-ring computations append I·e_k generators in the ambient ring,
//! so one engine serves S and S/(F). All public entry points insist on
//! homogeneous input. Kernels, syzygies, colons and saturations are driven
//! by one tagged-elimination construction: generators are tagged with unit
//! vectors in an appended block of positions, a position-over-term Gröbner
//! basis is computed, and elements supported only on the tag block read off
//! the relations.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::modvec::{FreeModule, GradedMap, ModVec};
use crate::poly::{Monomial, Poly, PolyRing};
use crate::scalar::FieldScalar;

/// Hard default for the degree cap on all Gröbner loops. Exceeding the cap
/// is a loud error, never a silent truncation.
pub const DEFAULT_DEGREE_CAP: i64 = 64;

/// Computation context: the ambient ring, the quotient ideal (empty for the
/// polynomial ring itself), and the degree cap.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub ring: Arc<PolyRing>,
    pub quotient: Vec<Poly>,
    pub cap: i64,
}

impl Ctx {
    pub fn poly_ring(ring: Arc<PolyRing>) -> Ctx {
        Ctx { ring, quotient: vec![], cap: DEFAULT_DEGREE_CAP }
    }

    pub fn quotient_ring(ring: Arc<PolyRing>, ideal: Vec<Poly>) -> Ctx {
        Ctx { ring, quotient: ideal, cap: DEFAULT_DEGREE_CAP }
    }

    pub fn with_cap(mut self, cap: i64) -> Ctx {
        self.cap = cap;
        self
    }

    pub fn is_quotient(&self) -> bool {
        !self.quotient.is_empty()
    }

    /// The same coefficient data viewed over the ambient polynomial ring.
    pub fn ambient(&self) -> Ctx {
        Ctx { ring: self.ring.clone(), quotient: vec![], cap: self.cap }
    }
}

/// A generating set of a submodule of a free module, with a flag recording
/// whether it is a Gröbner basis (with the quotient multiples included).
#[derive(Debug, Clone)]
pub struct SubmoduleBasis {
    pub ambient: FreeModule,
    pub gens: Vec<ModVec>,
    pub is_groebner: bool,
}

impl SubmoduleBasis {
    pub fn new(ambient: FreeModule, gens: Vec<ModVec>) -> SubmoduleBasis {
        SubmoduleBasis { ambient, gens, is_groebner: false }
    }

    pub fn degrees(&self) -> Result<Vec<i64>> {
        self.gens
            .iter()
            .map(|g| {
                g.homogeneous_degree(&self.ambient)?
                    .ok_or_else(|| Error::Invalid("zero generator".into()))
            })
            .collect()
    }
}

fn check_homogeneous(ambient: &FreeModule, gens: &[ModVec]) -> Result<()> {
    for g in gens {
        g.homogeneous_degree(ambient)?;
    }
    Ok(())
}

/// Appends q·e_k for every quotient generator q and position k.
fn with_quotient_gens(ctx: &Ctx, ambient: &FreeModule, gens: &[ModVec]) -> Vec<ModVec> {
    let mut all: Vec<ModVec> = gens.to_vec();
    for q in &ctx.quotient {
        for k in 0..ambient.rank() {
            let mut v = ambient.zero_vec();
            v.comps[k] = q.clone();
            all.push(v);
        }
    }
    all
}

struct LeadInfo {
    pos: usize,
    mono: Monomial,
    coef: FieldScalar,
    degree: i64,
}

fn lead_info(v: &ModVec, module: &FreeModule) -> Option<LeadInfo> {
    let (pos, t) = v.lead()?;
    Some(LeadInfo {
        pos,
        mono: t.mono.clone(),
        coef: t.coef.clone(),
        degree: t.mono.degree() - module.twists[pos],
    })
}

/// Full normal form of v with respect to the given vectors (top reduction,
/// irreducible lead terms moved to the remainder).
fn reduce_full(v: &ModVec, basis: &[(ModVec, LeadInfo)], ring: &Arc<PolyRing>) -> ModVec {
    let spec = &ring.field;
    let mut work = v.clone();
    let mut rem_comps = vec![ring.zero(); v.comps.len()];
    'outer: while let Some((pos, lt)) = {
        let l = work.lead().map(|(p, t)| (p, t.clone()));
        l
    } {
        for (g, info) in basis {
            if info.pos == pos && info.mono.divides(&lt.mono) {
                let m = info.mono.div_into(&lt.mono);
                let c = lt
                    .coef
                    .mul(&info.coef.invert(spec).expect("nonzero lead"), spec);
                work = work.sub(&g.mul_term(&c, &m));
                continue 'outer;
            }
        }
        // irreducible: move the lead term to the remainder
        let single = Poly { ring: ring.clone(), terms: vec![lt.clone()] };
        rem_comps[pos] = rem_comps[pos].add(&single);
        work.comps[pos].terms.remove(0);
    }
    ModVec::from_comps(rem_comps)
}

/// Top reduction only: returns None if the vector reduces to zero, or the
/// first irreducible lead encountered.
fn reduces_to_zero(v: &ModVec, basis: &[(ModVec, LeadInfo)], ring: &Arc<PolyRing>) -> bool {
    let spec = &ring.field;
    let mut work = v.clone();
    'outer: while let Some((pos, lt)) = {
        let l = work.lead().map(|(p, t)| (p, t.clone()));
        l
    } {
        for (g, info) in basis {
            if info.pos == pos && info.mono.divides(&lt.mono) {
                let m = info.mono.div_into(&lt.mono);
                let c = lt
                    .coef
                    .mul(&info.coef.invert(spec).expect("nonzero lead"), spec);
                work = work.sub(&g.mul_term(&c, &m));
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Buchberger with degree-ascending pair selection (the sugar degree equals
/// the honest degree on homogeneous input), the chain criterion, and the
/// product criterion on rank-one modules. Output is auto-reduced.
fn buchberger(
    module: &FreeModule,
    input: &[ModVec],
    cap: i64,
    what: &str,
) -> Result<Vec<ModVec>> {
    let ring = module.ring.clone();
    let mut basis: Vec<(ModVec, LeadInfo)> = vec![];
    for g in input {
        let r = reduce_full(g, &basis, &ring);
        if r.is_zero() {
            continue;
        }
        let r = r.primitive_part(&ring);
        let info = lead_info(&r, module).unwrap();
        basis.push((r, info));
    }

    let mut heap: BinaryHeap<Reverse<(i64, usize, usize)>> = BinaryHeap::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |heap: &mut BinaryHeap<Reverse<(i64, usize, usize)>>,
                      basis: &[(ModVec, LeadInfo)],
                      new_idx: usize,
                      module: &FreeModule| {
        let (_, ni) = &basis[new_idx];
        for (j, (_, info)) in basis.iter().enumerate() {
            if j == new_idx || info.pos != ni.pos {
                continue;
            }
            let lcm = info.mono.lcm(&ni.mono);
            let deg = lcm.degree() - module.twists[ni.pos];
            let (a, b) = if j < new_idx { (j, new_idx) } else { (new_idx, j) };
            heap.push(Reverse((deg, a, b)));
        }
    };
    for i in 0..basis.len() {
        push_pairs(&mut heap, &basis, i, module);
    }

    let spec = ring.field.clone();
    while let Some(Reverse((deg, i, j))) = heap.pop() {
        if done.contains(&(i, j)) {
            continue;
        }
        if deg > cap {
            return Err(Error::DegreeCap { cap, what: what.to_string() });
        }
        done.insert((i, j));
        let (gi, li) = (&basis[i].0, &basis[i].1);
        let (gj, lj) = (&basis[j].0, &basis[j].1);
        debug_assert_eq!(li.pos, lj.pos);
        let lcm = li.mono.lcm(&lj.mono);
        // product criterion: sound for ideals (rank-one ambient) only
        if module.rank() == 1 && li.mono.coprime(&lj.mono) {
            continue;
        }
        // chain criterion
        let mut skip = false;
        for (k, (_, lk)) in basis.iter().enumerate() {
            if k == i || k == j || lk.pos != li.pos {
                continue;
            }
            if lk.mono.divides(&lcm) {
                let p1 = (i.min(k), i.max(k));
                let p2 = (j.min(k), j.max(k));
                if done.contains(&p1) && done.contains(&p2) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }
        let ci = li.coef.invert(&spec).expect("nonzero");
        let cj = lj.coef.invert(&spec).expect("nonzero");
        let s = gi
            .mul_term(&ci, &li.mono.div_into(&lcm))
            .sub(&gj.mul_term(&cj, &lj.mono.div_into(&lcm)));
        let r = reduce_full(&s, &basis, &ring);
        if r.is_zero() {
            continue;
        }
        let r = r.primitive_part(&ring);
        let info = lead_info(&r, module).unwrap();
        basis.push((r, info));
        push_pairs(&mut heap, &basis, basis.len() - 1, module);
    }

    // minimalize: drop elements whose lead is divisible by another's lead
    let mut keep = vec![true; basis.len()];
    for a in 0..basis.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..basis.len() {
            if a == b || !keep[b] {
                continue;
            }
            let (la, lb) = (&basis[a].1, &basis[b].1);
            if la.pos == lb.pos && lb.mono.divides(&la.mono) {
                if la.mono == lb.mono && a < b {
                    continue; // keep the earlier of two equal leads
                }
                keep[a] = false;
                break;
            }
        }
    }
    let survivors: Vec<(ModVec, LeadInfo)> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // tail-reduce each survivor against the others
    let mut out: Vec<ModVec> = vec![];
    for i in 0..survivors.len() {
        let others: Vec<(ModVec, LeadInfo)> = survivors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (g, l))| {
                (g.clone(), LeadInfo {
                    pos: l.pos,
                    mono: l.mono.clone(),
                    coef: l.coef.clone(),
                    degree: l.degree,
                })
            })
            .collect();
        let r = reduce_full(&survivors[i].0, &others, &ring);
        if !r.is_zero() {
            out.push(r.primitive_part(&ring));
        }
    }
    Ok(out)
}

/// Gröbner basis of the submodule generated by `gens` (plus the quotient
/// multiples when the context is a quotient ring).
pub fn groebner(ctx: &Ctx, ambient: &FreeModule, gens: &[ModVec]) -> Result<SubmoduleBasis> {
    check_homogeneous(ambient, gens)?;
    let all = with_quotient_gens(ctx, ambient, gens);
    let basis = buchberger(ambient, &all, ctx.cap, "groebner basis")?;
    Ok(SubmoduleBasis { ambient: ambient.clone(), gens: basis, is_groebner: true })
}

/// Full normal form with respect to a Gröbner basis.
pub fn normal_form(gb: &SubmoduleBasis, v: &ModVec) -> ModVec {
    assert!(gb.is_groebner, "normal form requires a Groebner basis");
    let ring = gb.ambient.ring.clone();
    let with_info: Vec<(ModVec, LeadInfo)> = gb
        .gens
        .iter()
        .map(|g| (g.clone(), lead_info(g, &gb.ambient).unwrap()))
        .collect();
    reduce_full(v, &with_info, &ring)
}

pub fn contains(gb: &SubmoduleBasis, v: &ModVec) -> bool {
    let ring = gb.ambient.ring.clone();
    let with_info: Vec<(ModVec, LeadInfo)> = gb
        .gens
        .iter()
        .map(|g| (g.clone(), lead_info(g, &gb.ambient).unwrap()))
        .collect();
    reduces_to_zero(v, &with_info, &ring)
}

/// Do two generating sets span the same submodule over the context ring?
pub fn same_submodule(ctx: &Ctx, ambient: &FreeModule, a: &[ModVec], b: &[ModVec]) -> Result<bool> {
    let ga = groebner(ctx, ambient, a)?;
    let gb = groebner(ctx, ambient, b)?;
    Ok(a.iter().all(|v| contains(&gb, v)) && b.iter().all(|v| contains(&ga, v)))
}

/// The tagged-elimination result: the Gröbner basis of the submodule and the
/// relations among the original generators.
pub struct TaggedGb {
    /// rank of the untagged block
    pub f_rank: usize,
    /// number of original (tagged) generators
    pub ngens: usize,
    /// the tag block as a free module (Schreyer twists: tag j has twist
    /// -deg(g_j))
    pub tag_module: FreeModule,
    /// combined module F ⊕ E
    pub big_module: FreeModule,
    /// full tagged Gröbner basis
    pub elems: Vec<ModVec>,
    /// Gröbner basis of the submodule (projections with nonzero F part)
    pub gb: SubmoduleBasis,
    /// generators of the relation module of the original gens (tag parts of
    /// elements with zero F part)
    pub relations: Vec<ModVec>,
}

/// Runs the tagged construction for `gens` in `ambient` over the context
/// ring. Relations are the syzygies of the original generators over the
/// quotient ring.
pub fn tagged_groebner(ctx: &Ctx, ambient: &FreeModule, gens: &[ModVec]) -> Result<TaggedGb> {
    check_homogeneous(ambient, gens)?;
    let ring = ctx.ring.clone();
    // a zero generator contributes the unit relation on its own tag
    let mut zero_positions = vec![];
    let mut tag_twists = Vec::with_capacity(gens.len());
    for (j, g) in gens.iter().enumerate() {
        match g.homogeneous_degree(ambient)? {
            Some(d) => tag_twists.push(-d),
            None => {
                tag_twists.push(0);
                zero_positions.push(j);
            }
        }
    }
    let tag_module = FreeModule::new(ring.clone(), tag_twists);
    let big_module = ambient.concat(&tag_module);
    let f_rank = ambient.rank();

    let mut tagged: Vec<ModVec> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut comps = g.comps.clone();
        for k in 0..gens.len() {
            comps.push(if k == j { ring.one() } else { ring.zero() });
        }
        tagged.push(ModVec::from_comps(comps));
    }
    for q in &ctx.quotient {
        for k in 0..f_rank {
            let mut v = big_module.zero_vec();
            v.comps[k] = q.clone();
            tagged.push(v);
        }
    }

    let elems = buchberger(&big_module, &tagged, ctx.cap, "tagged groebner basis")?;

    let mut gb_gens = vec![];
    let mut relations = vec![];
    for &j in &zero_positions {
        relations.push(tag_module.basis_vec(j));
    }
    for e in &elems {
        let f_part = ModVec::from_comps(e.comps[..f_rank].to_vec());
        let tag_part = ModVec::from_comps(e.comps[f_rank..].to_vec());
        if f_part.is_zero() {
            if !tag_part.is_zero() {
                relations.push(tag_part);
            }
        } else {
            gb_gens.push(f_part);
        }
    }
    Ok(TaggedGb {
        f_rank,
        ngens: gens.len(),
        tag_module,
        big_module,
        elems,
        gb: SubmoduleBasis { ambient: ambient.clone(), gens: gb_gens, is_groebner: true },
        relations,
    })
}

/// Kernel of the induced map of free modules over the context ring,
/// generated as a submodule of the source.
pub fn kernel_of_map(ctx: &Ctx, map: &GradedMap) -> Result<Vec<ModVec>> {
    map.check_degrees()?;
    let tg = tagged_groebner(ctx, &map.target, &map.cols)?;
    // tags of the columns carry the source twists, so relations live in the
    // source module directly
    Ok(tg.relations)
}

/// First syzygies of a Gröbner basis, in a free module with Schreyer twists.
pub fn syzygies(ctx: &Ctx, basis: &SubmoduleBasis) -> Result<(FreeModule, Vec<ModVec>)> {
    if !basis.is_groebner {
        return Err(Error::Invalid("syzygies requires a Groebner basis".into()));
    }
    syzygies_of_gens(ctx, &basis.ambient, &basis.gens)
}

/// First syzygies of an arbitrary generating set over the context ring.
pub fn syzygies_of_gens(
    ctx: &Ctx,
    ambient: &FreeModule,
    gens: &[ModVec],
) -> Result<(FreeModule, Vec<ModVec>)> {
    if gens.is_empty() {
        return Ok((FreeModule::new(ctx.ring.clone(), vec![]), vec![]));
    }
    let tg = tagged_groebner(ctx, ambient, gens)?;
    Ok((tg.tag_module, tg.relations))
}

/// Expresses v as a combination of the generators behind `tg`, reducing only
/// the untagged block. Returns the coefficient vector, or None when v is not
/// in the submodule.
pub fn lift(tg: &TaggedGb, v: &ModVec) -> Option<Vec<Poly>> {
    let ring = tg.big_module.ring.clone();
    let spec = &ring.field;
    let mut work_comps = v.comps.clone();
    for _ in 0..tg.ngens {
        work_comps.push(ring.zero());
    }
    let mut work = ModVec::from_comps(work_comps);
    let with_info: Vec<(ModVec, LeadInfo)> = tg
        .elems
        .iter()
        .filter_map(|g| {
            let f_part = ModVec::from_comps(g.comps[..tg.f_rank].to_vec());
            if f_part.is_zero() {
                None
            } else {
                Some((g.clone(), lead_info(g, &tg.big_module).unwrap()))
            }
        })
        .collect();
    'outer: loop {
        let lead = {
            let mut found = None;
            for (pos, p) in work.comps[..tg.f_rank].iter().enumerate() {
                if let Some(t) = p.lead() {
                    found = Some((pos, t.clone()));
                    break;
                }
            }
            found
        };
        let Some((pos, lt)) = lead else {
            // untagged block exhausted: tags hold -coefficients
            let coeffs: Vec<Poly> = work.comps[tg.f_rank..].iter().map(|p| p.neg()).collect();
            return Some(coeffs);
        };
        for (g, info) in &with_info {
            if info.pos == pos && info.mono.divides(&lt.mono) {
                let m = info.mono.div_into(&lt.mono);
                let c = lt
                    .coef
                    .mul(&info.coef.invert(spec).expect("nonzero lead"), spec);
                work = work.sub(&g.mul_term(&c, &m));
                continue 'outer;
            }
        }
        return None;
    }
}

/// Colon submodule M : f over the context ring.
pub fn colon_poly(ctx: &Ctx, ambient: &FreeModule, m_gens: &[ModVec], f: &Poly) -> Result<Vec<ModVec>> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    colon_ideal(ctx, ambient, m_gens, &[f.clone()])
}

/// Colon submodule M : J = {v : J v ⊆ M} over the context ring, via one
/// tagged elimination with a block of slots per ideal generator.
pub fn colon_ideal(ctx: &Ctx, ambient: &FreeModule, m_gens: &[ModVec], ideal: &[Poly]) -> Result<Vec<ModVec>> {
    check_homogeneous(ambient, m_gens)?;
    let ring = ctx.ring.clone();
    let r = ambient.rank();
    let m = ideal.len();
    if m == 0 {
        return Err(Error::Invalid("colon by the zero ideal".into()));
    }
    let degs: Vec<i64> = ideal
        .iter()
        .map(|f| {
            f.homogeneous_degree()
                .ok_or_else(|| Error::Inhomogeneous("colon by inhomogeneous element".into()))
        })
        .collect::<Result<Vec<_>>>()?;

    // block b (b = 0..m) holds F twisted by deg(j_b); the final block is the
    // tag copy of F
    let mut twists = vec![];
    for d in &degs {
        for t in &ambient.twists {
            twists.push(t + d);
        }
    }
    twists.extend_from_slice(&ambient.twists);
    let big = FreeModule::new(ring.clone(), twists);

    let mut gens: Vec<ModVec> = vec![];
    // (j_1 e_k, ..., j_m e_k ; e_k)
    for k in 0..r {
        let mut v = big.zero_vec();
        for (b, f) in ideal.iter().enumerate() {
            v.comps[b * r + k] = f.clone();
        }
        v.comps[m * r + k] = ring.one();
        gens.push(v);
    }
    // submodule generators and quotient multiples in every slot block
    let m_all = with_quotient_gens(ctx, ambient, m_gens);
    for g in &m_all {
        for b in 0..m {
            let mut v = big.zero_vec();
            for k in 0..r {
                v.comps[b * r + k] = g.comps[k].clone();
            }
            gens.push(v);
        }
    }

    let basis = buchberger(&big, &gens, ctx.cap, "colon")?;
    let mut out = vec![];
    for e in basis {
        let head = ModVec::from_comps(e.comps[..m * r].to_vec());
        if head.is_zero() {
            let tail = ModVec::from_comps(e.comps[m * r..].to_vec());
            if !tail.is_zero() {
                out.push(tail);
            }
        }
    }
    Ok(out)
}

const SATURATION_ITERATION_CAP: usize = 64;

/// Saturation M : J^∞ by iterating colon-by-J until two consecutive steps
/// agree.
pub fn saturate(ctx: &Ctx, ambient: &FreeModule, m_gens: &[ModVec], ideal: &[Poly]) -> Result<Vec<ModVec>> {
    let mut current: Vec<ModVec> = m_gens.to_vec();
    let mut current_gb = groebner(ctx, ambient, &current)?;
    for _ in 0..SATURATION_ITERATION_CAP {
        let next = colon_ideal(ctx, ambient, &current, ideal)?;
        if next.iter().all(|v| contains(&current_gb, v)) {
            return Ok(current);
        }
        current = next;
        current_gb = groebner(ctx, ambient, &current)?;
    }
    Err(Error::DegreeCap { cap: SATURATION_ITERATION_CAP as i64, what: "saturation".into() })
}

/// Elimination: generators of I ∩ k[x_i : i ∈ keep] for a homogeneous ideal,
/// via a block order that puts the discarded variables first.
pub fn eliminate(ctx: &Ctx, gens: &[Poly], keep: &[usize]) -> Result<Vec<Poly>> {
    let ring = ctx.ring.clone();
    let n = ring.nvars();
    let drop: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let perm: Vec<usize> = drop.iter().chain(keep.iter()).copied().collect();
    // permuted ring with the dropped block leading, elimination order
    let names: Vec<String> = perm.iter().map(|&i| ring.vars[i].clone()).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let perm_ring = PolyRing::new(&name_refs, ring.field.clone()).with_elim_block(drop.len());
    // position of original variable i inside the permuted ring
    let mut images = vec![perm_ring.zero(); n];
    for (newpos, &orig) in perm.iter().enumerate() {
        images[orig] = perm_ring.var(newpos);
    }
    let moved: Vec<Poly> = gens
        .iter()
        .map(|g| g.substitute(&images))
        .collect::<Result<Vec<_>>>()?;
    let mut all = moved;
    for q in &ctx.quotient {
        all.push(q.substitute(&images)?);
    }
    let free = FreeModule::new(perm_ring.clone(), vec![0]);
    let vecs: Vec<ModVec> = all.into_iter().map(|p| ModVec::from_comps(vec![p])).collect();
    let elim_ctx = Ctx::poly_ring(perm_ring.clone()).with_cap(ctx.cap);
    let basis = groebner(&elim_ctx, &free, &vecs)?;
    // harvest elements supported on the kept block and map back
    let mut back = vec![ring.zero(); n];
    for (newpos, &orig) in perm.iter().enumerate() {
        back[newpos] = ring.var(orig);
    }
    let mut out = vec![];
    for e in &basis.gens {
        let p = &e.comps[0];
        let uses_dropped = p
            .terms
            .iter()
            .any(|t| t.mono.exps[..drop.len()].iter().any(|&x| x > 0));
        if !uses_dropped {
            out.push(p.substitute(&back)?);
        }
    }
    Ok(out)
}

/// Convenience: the irrelevant maximal ideal (all variables).
pub fn irrelevant_ideal(ring: &Arc<PolyRing>) -> Vec<Poly> {
    (0..ring.nvars()).map(|i| ring.var(i)).collect()
}

/// Convenience: rank-one free module for ideals (twist 0).
pub fn ideal_module(ring: &Arc<PolyRing>) -> FreeModule {
    FreeModule::new(ring.clone(), vec![0])
}

pub fn ideal_vec(ring: &Arc<PolyRing>, f: &Poly) -> ModVec {
    let _ = ring;
    ModVec::from_comps(vec![f.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars, FieldSpec::rationals())
    }

    fn ideal_gens(r: &Arc<PolyRing>, srcs: &[&str]) -> (FreeModule, Vec<ModVec>) {
        let free = ideal_module(r);
        let gens = srcs
            .iter()
            .map(|s| ModVec::from_comps(vec![r.parse(s).unwrap()]))
            .collect();
        (free, gens)
    }

    /// every same-position S-pair of a claimed basis reduces to zero
    fn buchberger_criterion(gb: &SubmoduleBasis) -> bool {
        let ring = gb.ambient.ring.clone();
        let spec = &ring.field;
        let infos: Vec<(ModVec, LeadInfo)> = gb
            .gens
            .iter()
            .map(|g| (g.clone(), lead_info(g, &gb.ambient).unwrap()))
            .collect();
        for i in 0..infos.len() {
            for j in (i + 1)..infos.len() {
                let (gi, li) = (&infos[i].0, &infos[i].1);
                let (gj, lj) = (&infos[j].0, &infos[j].1);
                if li.pos != lj.pos {
                    continue;
                }
                let lcm = li.mono.lcm(&lj.mono);
                let s = gi
                    .mul_term(&li.coef.invert(spec).unwrap(), &li.mono.div_into(&lcm))
                    .sub(&gj.mul_term(&lj.coef.invert(spec).unwrap(), &lj.mono.div_into(&lcm)));
                if !reduces_to_zero(&s, &infos, &ring) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn classic_two_generator_ideal() {
        let r = ring(&["x0", "x1"]);
        let (free, gens) = ideal_gens(&r, &["x0^2", "x0*x1 + x1^2"]);
        let ctx = Ctx::poly_ring(r.clone());
        let gb = groebner(&ctx, &free, &gens).unwrap();
        let cube = ModVec::from_comps(vec![r.parse("x1^3").unwrap()]);
        assert!(contains(&gb, &cube));
        // and x1^3 appears as a basis element lead
        assert!(gb
            .gens
            .iter()
            .any(|g| g.comps[0] == r.parse("x1^3").unwrap()));
        assert!(buchberger_criterion(&gb));
    }

    #[test]
    fn principal_and_zero() {
        let r = ring(&["x0", "x1", "x2"]);
        let ctx = Ctx::poly_ring(r.clone());
        let (free, gens) = ideal_gens(&r, &["x0^2*x1 - x2^3"]);
        let gb = groebner(&ctx, &free, &gens).unwrap();
        assert_eq!(gb.gens.len(), 1);
        assert!(buchberger_criterion(&gb));
        let gb0 = groebner(&ctx, &free, &[]).unwrap();
        assert!(gb0.gens.is_empty());
    }

    #[test]
    fn inhomogeneous_rejected() {
        let r = ring(&["x0", "x1"]);
        let ctx = Ctx::poly_ring(r.clone());
        let (free, gens) = ideal_gens(&r, &["x0^2 + x1"]);
        assert!(groebner(&ctx, &free, &gens).is_err());
    }

    #[test]
    fn kernel_of_koszul_map() {
        let r = ring(&["x0", "x1"]);
        let ctx = Ctx::poly_ring(r.clone());
        let src = FreeModule::new(r.clone(), vec![1, 1]);
        let tgt = FreeModule::new(r.clone(), vec![2]);
        let map = GradedMap::from_rows(
            src.clone(),
            tgt,
            vec![vec![r.parse("x0").unwrap(), r.parse("x1").unwrap()]],
        )
        .unwrap();
        let ker = kernel_of_map(&ctx, &map).unwrap();
        let expect = ModVec::from_comps(vec![r.parse("x1").unwrap(), r.parse("-x0").unwrap()]);
        assert!(same_submodule(&ctx, &src, &ker, &[expect]).unwrap());
        for v in &ker {
            assert!(map.apply(v).is_zero());
        }
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let r = ring(&["x0", "x1"]);
        let ctx = Ctx::poly_ring(r.clone());
        let free = FreeModule::new(r.clone(), vec![0, 3]);
        let map = GradedMap::from_rows(
            free.clone(),
            free.clone(),
            vec![
                vec![r.one(), r.zero()],
                vec![r.zero(), r.one()],
            ],
        )
        .unwrap();
        let ker = kernel_of_map(&ctx, &map).unwrap();
        assert!(ker.iter().all(|v| v.is_zero()) || ker.is_empty());
    }

    #[test]
    fn quadric_jacobian_kernel() {
        let r = ring(&["x0", "x1", "x2", "x3"]);
        let ctx = Ctx::poly_ring(r.clone());
        let src = FreeModule::new(r.clone(), vec![1, 1, 1, 1]);
        let tgt = FreeModule::new(r.clone(), vec![2, 1]);
        let map = GradedMap::from_rows(
            src.clone(),
            tgt,
            vec![
                vec![
                    r.parse("x3").unwrap(),
                    r.parse("-x2").unwrap(),
                    r.parse("-x1").unwrap(),
                    r.parse("x0").unwrap(),
                ],
                vec![r.zero(), r.zero(), r.zero(), r.one()],
            ],
        )
        .unwrap();
        let ker = kernel_of_map(&ctx, &map).unwrap();
        for v in &ker {
            assert!(map.apply(v).is_zero());
        }
        let expected: Vec<ModVec> = [
            ["x2", "x3", "0", "0"],
            ["x1", "0", "x3", "0"],
            ["0", "x1", "-x2", "0"],
        ]
        .iter()
        .map(|row| ModVec::from_comps(row.iter().map(|s| r.parse(s).unwrap()).collect()))
        .collect();
        assert!(same_submodule(&ctx, &src, &ker, &expected).unwrap());
    }

    #[test]
    fn syzygies_of_variables_are_koszul() {
        let r = ring(&["x0", "x1", "x2"]);
        let ctx = Ctx::poly_ring(r.clone());
        let (free, gens) = ideal_gens(&r, &["x0", "x1", "x2"]);
        let gb = groebner(&ctx, &free, &gens).unwrap();
        let (syz_mod, syz) = syzygies(&ctx, &gb).unwrap();
        assert_eq!(syz.len(), 3);
        // each syzygy kills the generators
        for s in &syz {
            let mut acc = r.zero();
            for (c, g) in s.comps.iter().zip(&gb.gens) {
                acc = acc.add(&c.mul(&g.comps[0]));
            }
            assert!(acc.is_zero());
        }
        let koszul: Vec<ModVec> = [
            ["x1", "-x0", "0"],
            ["x2", "0", "-x0"],
            ["0", "x2", "-x1"],
        ]
        .iter()
        .map(|row| ModVec::from_comps(row.iter().map(|s| r.parse(s).unwrap()).collect()))
        .collect();
        assert!(same_submodule(&ctx, &syz_mod, &syz, &koszul).unwrap());
    }

    #[test]
    fn syzygy_of_nonzerodivisor_is_zero() {
        let r = ring(&["x0", "x1"]);
        let ctx = Ctx::poly_ring(r.clone());
        let (_, gens) = ideal_gens(&r, &["x0^2 + x1^2"]);
        let free = ideal_module(&r);
        let gb = groebner(&ctx, &free, &gens).unwrap();
        let (_, syz) = syzygies(&ctx, &gb).unwrap();
        assert!(syz.is_empty());
    }

    #[test]
    fn syzygies_demand_groebner_flag() {
        let r = ring(&["x0", "x1"]);
        let ctx = Ctx::poly_ring(r.clone());
        let (free, gens) = ideal_gens(&r, &["x0"]);
        let basis = SubmoduleBasis::new(free, gens);
        assert!(syzygies(&ctx, &basis).is_err());
    }

    #[test]
    fn colon_basics() {
        let r = ring(&["x0", "x1", "x2"]);
        let ctx = Ctx::poly_ring(r.clone());
        let free = ideal_module(&r);
        let (_, m) = ideal_gens(&r, &["x0*x1"]);
        let out = colon_poly(&ctx, &free, &m, &r.parse("x0").unwrap()).unwrap();
        let (_, expect) = ideal_gens(&r, &["x1"]);
        assert!(same_submodule(&ctx, &free, &out, &expect).unwrap());

        let (_, m2) = ideal_gens(&r, &["x0^2"]);
        let out2 = colon_poly(&ctx, &free, &m2, &r.parse("x0").unwrap()).unwrap();
        let (_, expect2) = ideal_gens(&r, &["x0"]);
        assert!(same_submodule(&ctx, &free, &out2, &expect2).unwrap());

        // containment M : f ⊇ M
        let gb = groebner(&ctx, &free, &out2).unwrap();
        for g in &m2 {
            assert!(contains(&gb, g));
        }
        assert!(colon_poly(&ctx, &free, &m2, &r.zero()).is_err());
    }

    #[test]
    fn saturation_removes_embedded_point() {
        // x0*(x0, x1) in k[x0,x1]: the embedded point at the origin of P^1
        // is irrelevant-primary and gets removed
        let r2 = ring(&["x0", "x1"]);
        let ctx2 = Ctx::poly_ring(r2.clone());
        let free2 = ideal_module(&r2);
        let (_, m) = ideal_gens(&r2, &["x0^2", "x0*x1"]);
        let sat = saturate(&ctx2, &free2, &m, &irrelevant_ideal(&r2)).unwrap();
        let (_, expect) = ideal_gens(&r2, &["x0"]);
        assert!(same_submodule(&ctx2, &free2, &sat, &expect).unwrap());

        // in k[x0,x1,x2] the embedded prime (x0,x1) is an honest point of
        // P^2, so the same ideal is already saturated there
        let r3 = ring(&["x0", "x1", "x2"]);
        let ctx3 = Ctx::poly_ring(r3.clone());
        let free3 = ideal_module(&r3);
        let (_, m3) = ideal_gens(&r3, &["x0^2", "x0*x1"]);
        let sat3 = saturate(&ctx3, &free3, &m3, &irrelevant_ideal(&r3)).unwrap();
        assert!(same_submodule(&ctx3, &free3, &sat3, &m3).unwrap());

        // unit ideal leaves M alone
        let sat_unit = saturate(&ctx3, &free3, &m3, &[r3.one()]).unwrap();
        assert!(same_submodule(&ctx3, &free3, &sat_unit, &m3).unwrap());

        // a prime not equal to the irrelevant ideal is already saturated
        let (_, p) = ideal_gens(&r3, &["x0", "x1"]);
        let satp = saturate(&ctx3, &free3, &p, &irrelevant_ideal(&r3)).unwrap();
        assert!(same_submodule(&ctx3, &free3, &satp, &p).unwrap());
    }

    #[test]
    fn saturation_stabilizes() {
        let r = ring(&["x0", "x1", "x2"]);
        let ctx = Ctx::poly_ring(r.clone());
        let free = ideal_module(&r);
        let (_, m) = ideal_gens(&r, &["x0^2", "x0*x1", "x1^3*x2"]);
        let irr = irrelevant_ideal(&r);
        let sat = saturate(&ctx, &free, &m, &irr).unwrap();
        let sat2 = saturate(&ctx, &free, &sat, &irr).unwrap();
        assert!(same_submodule(&ctx, &free, &sat, &sat2).unwrap());
    }

    #[test]
    fn quotient_ring_membership() {
        // over S/(x0 x3 - x1 x2): x0*x3 lies in (x1)
        let r = ring(&["x0", "x1", "x2", "x3"]);
        let q = r.parse("x0*x3 - x1*x2").unwrap();
        let ctx = Ctx::quotient_ring(r.clone(), vec![q]);
        let free = ideal_module(&r);
        let (_, gens) = ideal_gens(&r, &["x1"]);
        let gb = groebner(&ctx, &free, &gens).unwrap();
        let v = ModVec::from_comps(vec![r.parse("x0*x3").unwrap()]);
        assert!(contains(&gb, &v));
        // and x3 belongs to (x1) : x0 over the quadric
        let out = colon_poly(&ctx, &free, &gens, &r.parse("x0").unwrap()).unwrap();
        let gbc = groebner(&ctx, &free, &out).unwrap();
        assert!(contains(&gbc, &ModVec::from_comps(vec![r.parse("x3").unwrap()])));
    }

    #[test]
    fn lift_expresses_membership() {
        let r = ring(&["x0", "x1", "x2"]);
        let ctx = Ctx::poly_ring(r.clone());
        let free = ideal_module(&r);
        let (_, gens) = ideal_gens(&r, &["x0^2", "x1^2 + x0*x2"]);
        let tg = tagged_groebner(&ctx, &free, &gens).unwrap();
        let v = ModVec::from_comps(vec![r.parse("x1*x0^2 - x2*(x1^2 + x0*x2)").unwrap()]);
        let coeffs = lift(&tg, &v).unwrap();
        let mut acc = r.zero();
        for (c, g) in coeffs.iter().zip(&gens) {
            acc = acc.add(&c.mul(&g.comps[0]));
        }
        assert_eq!(acc, v.comps[0]);
        // non-member
        let w = ModVec::from_comps(vec![r.parse("x1^2").unwrap()]);
        assert!(lift(&tg, &w).is_none());
    }

    #[test]
    fn normal_form_idempotent() {
        let r = ring(&["x0", "x1", "x2"]);
        let ctx = Ctx::poly_ring(r.clone());
        let free = ideal_module(&r);
        let (_, gens) = ideal_gens(&r, &["x0^2 - x1*x2", "x1^3"]);
        let gb = groebner(&ctx, &free, &gens).unwrap();
        let v = ModVec::from_comps(vec![r.parse("x0^4 + x0^2*x1*x2 + x1^4 + x2^4").unwrap()]);
        let n1 = normal_form(&gb, &v);
        let n2 = normal_form(&gb, &n1);
        assert_eq!(n1, n2);
    }

    #[test]
    fn elimination_block() {
        let r = ring(&["x0", "x1", "x2"]);
        let ctx = Ctx::poly_ring(r.clone());
        let gens = vec![r.parse("x0 - 2*x1").unwrap(), r.parse("x1 - 3*x2").unwrap()];
        let out = eliminate(&ctx, &gens, &[1, 2]).unwrap();
        assert!(!out.is_empty());
        // the eliminant is x1 - 3 x2 up to scale
        let target = r.parse("x1 - 3*x2").unwrap();
        assert!(out.iter().any(|p| p.primitive_part() == target));
        for p in &out {
            assert!(p.terms.iter().all(|t| t.mono.exps[0] == 0));
        }
    }

    #[test]
    fn degree_cap_fires() {
        let r = ring(&["x0", "x1"]);
        let ctx = Ctx::poly_ring(r.clone()).with_cap(1);
        let (free, gens) = ideal_gens(&r, &["x0^2", "x0*x1 + x1^2"]);
        assert!(matches!(
            groebner(&ctx, &free, &gens),
            Err(Error::DegreeCap { .. })
        ));
    }
}
