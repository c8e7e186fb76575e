//! Duals, torsion, Tor, Hom spaces, Fitting ideals and Riemann-Roch
//! bookkeeping for presented modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{
    contains, groebner, ideal_module, ideal_vec, irrelevant_ideal, kernel_of_map, lift, normal_form,
    saturate, tagged_groebner, Ctx,
};
use crate::hilbert::HilbertData;
use crate::macaulay::{monomials_of_degree, BasisIndex, Matrix};
use crate::module::{PresentedModule, Submodule};
use crate::modvec::{FreeModule, GradedMap, ModVec};
use crate::poly::Poly;
use crate::scalar::FieldScalar;

/// Presents (⟨gens⟩)/(⟨subgens⟩) for subgens contained in the span of gens,
/// all over the context ring.
pub fn present_subquotient(
    ctx: &Ctx,
    ambient: &FreeModule,
    gens: &[ModVec],
    subgens: &[ModVec],
) -> Result<PresentedModule> {
    if gens.is_empty() {
        return Ok(PresentedModule::free(ctx.clone(), vec![]));
    }
    let tg = tagged_groebner(ctx, ambient, gens)?;
    let mut rels = tg.relations.clone();
    for s in subgens {
        if s.is_zero() {
            continue;
        }
        let coeffs = lift(&tg, s).ok_or_else(|| Error::CheckFailed {
            check: "subquotient-containment".into(),
            detail: "a subgenerator is not in the span of the generators".into(),
        })?;
        rels.push(ModVec::from_comps(coeffs));
    }
    Ok(PresentedModule::new(ctx.clone(), tg.tag_module.clone(), rels))
}

/// The dual Hom(M, R): kernel of the transposed presentation, with its
/// generators kept in the dual free module.
pub struct DualData {
    pub module: PresentedModule,
    pub dual_ambient: FreeModule,
    pub gens_in_dual: Vec<ModVec>,
}

pub fn hom_dual(m: &PresentedModule) -> Result<DualData> {
    let ctx = &m.ctx;
    let dual_ambient = m.target.dual();
    let gens = if m.relations.is_empty() {
        (0..dual_ambient.rank()).map(|k| dual_ambient.basis_vec(k)).collect()
    } else {
        let mut twists = vec![];
        for r in &m.relations {
            let d = r
                .homogeneous_degree(&m.target)?
                .ok_or_else(|| Error::Invalid("zero relation".into()))?;
            twists.push(-d);
        }
        let source = FreeModule::new(ctx.ring.clone(), twists);
        let phi = GradedMap::from_cols(source, m.target.clone(), m.relations.clone())?;
        kernel_of_map(ctx, &phi.dual())?
    };
    let sub = Submodule::new(ctx.clone(), dual_ambient.clone(), gens.clone());
    Ok(DualData { module: sub.present()?, dual_ambient, gens_in_dual: gens })
}

/// Everything around M**: the bidual module, the evaluation map, and the
/// embedded image of M in the bidual's ambient free module.
pub struct BidualData {
    pub bidual: PresentedModule,
    pub bidual_ambient: FreeModule,
    pub bidual_gens: Vec<ModVec>,
    /// evaluation F0 -> G0^dual; the induced map on cokernels is M -> M**
    pub eval: GradedMap,
}

fn require_domain(ctx: &Ctx) -> Result<()> {
    if ctx.quotient.len() > 1 {
        return Err(Error::Unsupported(
            "torsion and duals need S or a hypersurface ring S/(F) with F irreducible".into(),
        ));
    }
    Ok(())
}

pub fn double_dual_data(m: &PresentedModule) -> Result<BidualData> {
    require_domain(&m.ctx)?;
    let d1 = hom_dual(m)?;
    let d2 = hom_dual(&d1.module)?;
    // evaluation: row i of the matrix is the functional kappa_i
    let g0_dual = d1.module.target.dual();
    let rows: Vec<Vec<Poly>> = d1
        .gens_in_dual
        .iter()
        .map(|kappa| kappa.comps.clone())
        .collect();
    let eval = GradedMap::from_rows(m.target.clone(), g0_dual.clone(), rows)?;
    Ok(BidualData {
        bidual: d2.module,
        bidual_ambient: d2.dual_ambient,
        bidual_gens: d2.gens_in_dual,
        eval,
    })
}

pub fn double_dual(m: &PresentedModule) -> Result<PresentedModule> {
    Ok(double_dual_data(m)?.bidual)
}

/// Torsion submodule ker(M -> M**) over a domain, presented abstractly.
pub fn torsion_submodule(m: &PresentedModule) -> Result<PresentedModule> {
    let bd = double_dual_data(m)?;
    let kernel = kernel_of_map(&m.ctx, &bd.eval)?;
    present_subquotient(&m.ctx, &m.target, &kernel, &m.relations)
}

/// Torsion-free quotient image(M -> M**), embedded and presented.
pub fn torsion_free_quotient(m: &PresentedModule) -> Result<(PresentedModule, Submodule)> {
    let bd = double_dual_data(m)?;
    let gens: Vec<ModVec> = bd.eval.cols.clone();
    let sub = Submodule::new(m.ctx.clone(), bd.eval.target.clone(), gens);
    Ok((sub.present()?, sub))
}

/// Tor_i(M, S/I) over the ambient polynomial ring, presented over S/I.
pub fn tor(m: &PresentedModule, ideal: &[Poly], i: usize) -> Result<PresentedModule> {
    let ring = m.ctx.ring.clone();
    let mut full_ideal = m.ctx.quotient.clone();
    for f in ideal {
        if !full_ideal.iter().any(|q| q == f) {
            full_ideal.push(f.clone());
        }
    }
    let ctx_r = Ctx { ring: ring.clone(), quotient: full_ideal, cap: m.ctx.cap };
    if i == 0 {
        return Ok(m.restrict(ideal));
    }
    let res = m.resolution_over_s()?;
    if i > res.len() {
        return Ok(PresentedModule::free(ctx_r, vec![]));
    }
    let phi_i = &res[i - 1];
    let kernel = kernel_of_map(&ctx_r, phi_i)?;
    let subgens: Vec<ModVec> = if i < res.len() { res[i].cols.clone() } else { vec![] };
    present_subquotient(&ctx_r, &phi_i.source, &kernel, &subgens)
}

/// Generic rank of M over its (integral) ambient ring, read off the leading
/// Hilbert coefficients.
pub fn generic_rank(m: &PresentedModule) -> Result<i64> {
    let hp_m = m.hilbert_polynomial()?;
    if hp_m.is_zero() {
        return Ok(0);
    }
    let hp_r = PresentedModule::cyclic(m.ctx.clone(), &m.ctx.quotient).hilbert_polynomial()?;
    let dm = hp_m.degree().unwrap_or(0);
    let dr = hp_r.degree().unwrap_or(0);
    if dm > dr {
        return Err(Error::CheckFailed {
            check: "rank".into(),
            detail: "module Hilbert polynomial exceeds the ring dimension".into(),
        });
    }
    if dm < dr {
        return Ok(0);
    }
    let ratio = hp_m.coeff(dm) / hp_r.coeff(dr);
    if !ratio.is_integer() || ratio.is_negative() {
        return Err(Error::CheckFailed {
            check: "rank".into(),
            detail: format!("leading coefficient ratio {} is not a nonnegative integer", ratio),
        });
    }
    Ok(ratio.to_integer().to_i64().unwrap())
}

/// Determinant of a square polynomial matrix by Laplace expansion.
fn det(rows: &[Vec<Poly>]) -> Poly {
    let n = rows.len();
    let ring = rows[0][0].ring.clone();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = ring.zero();
    for (j, entry) in rows[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = rows[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let d = det(&minor).mul(entry);
        acc = if j % 2 == 0 { acc.add(&d) } else { acc.sub(&d) };
    }
    acc
}

/// Local-freeness via the Fitting ideal of corank `expected_rank`.
pub struct LocalFreeness {
    pub locally_free: bool,
    /// saturated ideal of the non-locally-free locus in the ambient S
    pub singular_support: Vec<Poly>,
}

pub fn is_locally_free(m: &PresentedModule, expected_rank: usize) -> Result<LocalFreeness> {
    let m = &m.minimized()?;
    let r0 = m.target.rank();
    if expected_rank > r0 {
        return Err(Error::Invalid(format!(
            "expected rank {} exceeds the generator count {}",
            expected_rank, r0
        )));
    }
    let rank = generic_rank(m)?;
    if rank != expected_rank as i64 {
        return Err(Error::CheckFailed {
            check: "expected-rank".into(),
            detail: format!("generic rank is {}, expected {}", rank, expected_rank),
        });
    }
    let size = r0 - expected_rank;
    let ring = m.ctx.ring.clone();
    let s_ctx = m.ctx.ambient();
    let mut minor_gens: Vec<Poly> = vec![];
    if size == 0 {
        minor_gens.push(ring.one());
    } else {
        // reduce relation entries mod the quotient ideal first
        let rel: Vec<ModVec> = if m.ctx.is_quotient() {
            let qgb = groebner(
                &s_ctx,
                &ideal_module(&ring),
                &m.ctx.quotient.iter().map(|q| ideal_vec(&ring, q)).collect::<Vec<_>>(),
            )?;
            m.relations
                .iter()
                .map(|v| {
                    ModVec::from_comps(
                        v.comps
                            .iter()
                            .map(|p| normal_form(&qgb, &ideal_vec(&ring, p)).comps[0].clone())
                            .collect(),
                    )
                })
                .collect()
        } else {
            m.relations.clone()
        };
        let ncols = rel.len();
        if ncols < size {
            minor_gens.clear();
        } else {
            let row_sets = combinations(r0, size);
            let col_sets = combinations(ncols, size);
            for rs in &row_sets {
                for cs in &col_sets {
                    let sub: Vec<Vec<Poly>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| rel[j].comps[i].clone()).collect())
                        .collect();
                    let d = det(&sub);
                    if !d.is_zero() {
                        minor_gens.push(d.primitive_part());
                    }
                }
            }
        }
    }
    let mut ideal = minor_gens;
    ideal.extend(m.ctx.quotient.iter().cloned());
    if ideal.is_empty() {
        return Ok(LocalFreeness { locally_free: false, singular_support: vec![] });
    }
    // empty non-locally-free locus shows up as a vanishing Hilbert
    // polynomial; no saturation needed on that path
    let hp = PresentedModule::cyclic(s_ctx.clone(), &ideal).hilbert_polynomial()?;
    if hp.is_zero() {
        return Ok(LocalFreeness { locally_free: true, singular_support: vec![ring.one()] });
    }
    let free = ideal_module(&ring);
    let vecs: Vec<ModVec> = ideal.iter().map(|f| ideal_vec(&ring, f)).collect();
    let sat = saturate(&s_ctx, &free, &vecs, &irrelevant_ideal(&ring))?;
    let gb = groebner(&s_ctx, &free, &sat)?;
    let unit = ideal_vec(&ring, &ring.one());
    let locally_free = contains(&gb, &unit);
    let support: Vec<Poly> = sat.into_iter().map(|v| v.comps[0].primitive_part()).collect();
    Ok(LocalFreeness { locally_free, singular_support: support })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut current = vec![];
    fn rec(out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, start: usize, n: usize, k: usize) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(out, current, i + 1, n, k);
            current.pop();
        }
    }
    rec(&mut out, &mut current, 0, n, k);
    out
}

/// Surface intersection data used to unwind Riemann-Roch: degree H^2, K·H,
/// and chi(O_X).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SurfaceData {
    pub deg: i64,
    pub k_dot_h: i64,
    pub chi_o: i64,
}

impl SurfaceData {
    /// Smooth degree-d surface in P^3: K = (d-4)H.
    pub fn hypersurface(d: i64) -> SurfaceData {
        let chi_o = 1 + crate::hilbert::binom_int(d - 1, 3).to_i64().unwrap();
        SurfaceData { deg: d, k_dot_h: (d - 4) * d, chi_o }
    }
}

/// The paper-facing record for a sheaf on a surface.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SheafReport {
    pub rank: i64,
    pub hilbert: HilbertData,
    pub c1_dot_h: i64,
    pub c1sq_minus_2c2: i64,
    pub c2: Option<i64>,
    pub h_table: Vec<(usize, i64, i64)>,
    pub locally_free: bool,
    pub singular_support: Vec<String>,
    pub expected_moduli_dim: Option<i64>,
}

/// Unwinds chi(E(t)) = (r e/2) t^2 + (c1·H - r K·H/(2e) ... ) into rank,
/// c1·H and c2 for a rank-r sheaf on a polarized surface with K
/// proportional to H.
pub fn chern_report(
    m: &PresentedModule,
    surface: SurfaceData,
    c1_squared: Option<i64>,
    h_requests: &[(usize, i64)],
) -> Result<SheafReport> {
    let hilbert = m.hilbert()?;
    let hp = &hilbert.polynomial;
    if hp.degree() != Some(2) {
        return Err(Error::CheckFailed {
            check: "surface-dimension".into(),
            detail: format!("Hilbert polynomial {} is not quadratic", hp),
        });
    }
    let alpha = hp.coeff(2);
    let beta = hp.coeff(1);
    let gamma = hp.coeff(0);
    let e = BigRational::from_integer(BigInt::from(surface.deg));
    let two = BigRational::from_integer(BigInt::from(2));
    let rank_q = &two * &alpha / &e;
    if !rank_q.is_integer() || rank_q.is_negative() {
        return Err(Error::CheckFailed {
            check: "rank-from-leading-coefficient".into(),
            detail: format!(
                "leading coefficient {} is not a positive multiple of deg/2 = {}/2",
                alpha, surface.deg
            ),
        });
    }
    let rank = rank_q.to_integer().to_i64().unwrap();
    // chi(E(t)) = (re/2) t^2 + (c1·H - r K·H/2) t + [r chi_O + (c1^2 - c1·K - 2 c2)/2]
    let kh = BigRational::from_integer(BigInt::from(surface.k_dot_h));
    let c1h_q = &beta + BigRational::from_integer(BigInt::from(rank)) * &kh / &two;
    if !c1h_q.is_integer() {
        return Err(Error::CheckFailed {
            check: "c1H-integrality".into(),
            detail: format!("t-coefficient {} gives non-integral c1·H = {}", beta, c1h_q),
        });
    }
    let c1h = c1h_q.to_integer().to_i64().unwrap();
    // c1·K = (K·H / deg) c1·H since K is proportional to H
    let c1k_q = &kh * BigRational::from_integer(BigInt::from(c1h)) / &e;
    let chi_o = BigRational::from_integer(BigInt::from(surface.chi_o));
    let combo_q =
        (&gamma - BigRational::from_integer(BigInt::from(rank)) * &chi_o) * &two + &c1k_q;
    if !combo_q.is_integer() {
        return Err(Error::CheckFailed {
            check: "c1sq-2c2-integrality".into(),
            detail: format!("constant term {} gives non-integral c1^2 - 2c2", gamma),
        });
    }
    let combo = combo_q.to_integer().to_i64().unwrap();
    let c2 = c1_squared.map(|c1sq| (c1sq - combo) / 2);
    if let (Some(c1sq), Some(c2v)) = (c1_squared, c2) {
        if c1sq - 2 * c2v != combo {
            return Err(Error::CheckFailed {
                check: "c2-integrality".into(),
                detail: format!("c1^2 = {} and c1^2-2c2 = {} give non-integral c2", c1sq, combo),
            });
        }
    }
    let lf = is_locally_free(m, rank as usize)?;
    let coh = m.cohomology()?;
    let h_table = coh.h_table(h_requests);
    // Euler characteristic identity at one tabulated twist
    let t0 = h_requests.first().map(|&(_, t)| t).unwrap_or(0);
    let chi_direct: i64 = (0..3)
        .map(|i| {
            let v = coh.h(i, t0);
            if i % 2 == 0 { v } else { -v }
        })
        .sum();
    if BigRational::from_integer(BigInt::from(chi_direct)) != hp.eval_i64(t0) {
        return Err(Error::CheckFailed {
            check: "euler-characteristic".into(),
            detail: format!(
                "sum of h^i at t={} is {}, Hilbert polynomial gives {}",
                t0,
                chi_direct,
                hp.eval_i64(t0)
            ),
        });
    }
    let expected_moduli_dim = if rank == 2 && c1h == 0 && c1_squared == Some(0) {
        c2.map(|c2v| 4 * c2v - 3 * surface.chi_o)
    } else {
        None
    };
    Ok(SheafReport {
        rank,
        hilbert,
        c1_dot_h: c1h,
        c1sq_minus_2c2: combo,
        c2,
        h_table,
        locally_free: lf.locally_free,
        singular_support: lf.singular_support.iter().map(|p| p.to_string()).collect(),
        expected_moduli_dim,
    })
}

/// Degrees (with multiplicity) of a minimal generating set: dimensions of
/// M/(m·M) per degree.
pub fn min_gen_degrees(m: &PresentedModule) -> Result<Vec<i64>> {
    let ring = m.ctx.ring.clone();
    let mut degs: Vec<i64> = m.target.twists.iter().map(|d| -d).collect();
    degs.sort_unstable();
    degs.dedup();
    let mut out = vec![];
    for &t in &degs {
        let hf = m.hf(t);
        // m·M spanned by x_i * (basis of F0), together with relations
        let mut gens = m.relations.clone();
        for i in 0..ring.nvars() {
            for k in 0..m.target.rank() {
                let mut v = m.target.zero_vec();
                v.comps[k] = ring.var(i);
                gens.push(v);
            }
        }
        let big = crate::macaulay::submodule_dim(&m.ctx, &m.target, &gens, t) as i64;
        let small = crate::macaulay::submodule_dim(&m.ctx, &m.target, &m.relations, t) as i64;
        let cogens = hf - (big - small);
        for _ in 0..cogens {
            out.push(t);
        }
    }
    Ok(out)
}

/// The degree-t Hom space Hom(M, N)_t: dimension and canonical
/// representative maps F0^M -> F0^N, one per basis class.
pub struct HomSpace {
    pub dim: usize,
    pub basis: Vec<GradedMap>,
}

pub fn hom_space(m: &PresentedModule, n: &PresentedModule, t: i64) -> Result<HomSpace> {
    let ring = m.ctx.ring.clone();
    let spec = ring.field.clone();
    if m.ctx.quotient != n.ctx.quotient {
        return Err(Error::RingMismatch);
    }
    // unknown blocks: entry (i,j) has degree t + twN_i - twM_j
    let mut unknown_offsets = vec![];
    let mut total_unknowns = 0usize;
    let mut entry_monos: Vec<Vec<crate::poly::Monomial>> = vec![];
    for i in 0..n.target.rank() {
        for j in 0..m.target.rank() {
            let d = t + n.target.twists[i] - m.target.twists[j];
            let monos = monomials_of_degree(ring.nvars(), d);
            unknown_offsets.push(total_unknowns);
            total_unknowns += monos.len();
            entry_monos.push(monos);
        }
    }
    let entry_index = |i: usize, j: usize| i * m.target.rank() + j;

    // constraint: A · rho ∈ W for every relation rho of M, where W is the
    // relation submodule of N (with quotient multiples)
    let n_rel_all = n.s_relations();
    let mut rows: Vec<Vec<FieldScalar>> = vec![];
    for rho in &m.relations {
        let Some(e) = rho.homogeneous_degree(&m.target)? else { continue };
        let out_deg = e + t;
        let basis = BasisIndex::new(&n.target, out_deg);
        if basis.is_empty() {
            continue;
        }
        let w = crate::macaulay::submodule_matrix(&n.ctx, &n.target, &n.relations, out_deg);
        // left null rows of W: nullspace of transpose
        let mut wt = Matrix::zero(w.cols, w.rows, spec.clone());
        for r in 0..w.rows {
            for c in 0..w.cols {
                wt.data[c][r] = w.data[r][c].clone();
            }
        }
        let left_null = wt.nullspace();
        let _ = &n_rel_all;
        if left_null.is_empty() {
            continue;
        }
        // coordinates of A·rho as linear forms in the unknowns
        // A·rho = sum_j A[·][j] * rho_j; contribution of unknown (i,j,mono):
        // mono * rho_j placed in component i
        let mut coord_rows: Vec<Vec<FieldScalar>> =
            vec![vec![FieldScalar::zero(&spec); total_unknowns]; basis.len()];
        for i in 0..n.target.rank() {
            for j in 0..m.target.rank() {
                let idx = entry_index(i, j);
                let monos = &entry_monos[idx];
                let off = unknown_offsets[idx];
                if monos.is_empty() || rho.comps[j].is_zero() {
                    continue;
                }
                for (u, mono) in monos.iter().enumerate() {
                    let prod = rho.comps[j].mul_term(&FieldScalar::one(&spec), mono);
                    let mut v = n.target.zero_vec();
                    v.comps[i] = prod;
                    let coords = basis.coords(&v, &spec);
                    for (row, c) in coords.into_iter().enumerate() {
                        if !c.is_zero() {
                            coord_rows[row][off + u] = coord_rows[row][off + u].add(&c);
                        }
                    }
                }
            }
        }
        for ln in &left_null {
            let mut constraint = vec![FieldScalar::zero(&spec); total_unknowns];
            for (row, lc) in ln.iter().enumerate() {
                if lc.is_zero() {
                    continue;
                }
                for u in 0..total_unknowns {
                    if !coord_rows[row][u].is_zero() {
                        let add = coord_rows[row][u].mul(lc, &spec);
                        constraint[u] = constraint[u].add(&add);
                    }
                }
            }
            rows.push(constraint);
        }
    }
    let mut sys = Matrix::zero(rows.len(), total_unknowns, spec.clone());
    for (r, row) in rows.into_iter().enumerate() {
        sys.data[r] = row;
    }
    let solutions = if total_unknowns == 0 { vec![] } else { sys.nullspace() };

    // canonicalize: reduce each solution's columns modulo the relation
    // submodule of N, then keep a linearly independent set of nonzero maps
    let w_gb = groebner(&n.ctx, &n.target, &n.relations)?;
    let mut reps: Vec<GradedMap> = vec![];
    let mut coord_vectors: Vec<Vec<FieldScalar>> = vec![];
    for sol in &solutions {
        let mut cols = vec![];
        for j in 0..m.target.rank() {
            let mut col = n.target.zero_vec();
            for i in 0..n.target.rank() {
                let idx = entry_index(i, j);
                let monos = &entry_monos[idx];
                let off = unknown_offsets[idx];
                let mut p = ring.zero();
                for (u, mono) in monos.iter().enumerate() {
                    let c = &sol[off + u];
                    if !c.is_zero() {
                        p = p.add(&ring.monomial(&mono.exps).scale(c));
                    }
                }
                col.comps[i] = p;
            }
            cols.push(normal_form(&w_gb, &col));
        }
        let map = GradedMap {
            source: m.target.twisted(-t),
            target: n.target.clone(),
            cols,
        };
        if map.cols.iter().all(|c| c.is_zero()) {
            continue;
        }
        // coordinates of the reduced map for independence testing; column j
        // has element degree t - twM_j
        let mut vecc = vec![];
        for j in 0..m.target.rank() {
            let col_deg = t - m.target.twists[j];
            let basis = BasisIndex::new(&n.target, col_deg);
            vecc.extend(basis.coords(&map.cols[j], &spec));
        }
        // linear independence against collected reps
        let mut test = Matrix::zero(vecc.len(), coord_vectors.len() + 1, spec.clone());
        for (c, prev) in coord_vectors.iter().enumerate() {
            for (r, v) in prev.iter().enumerate() {
                test.data[r][c] = v.clone();
            }
        }
        for (r, v) in vecc.iter().enumerate() {
            test.data[r][coord_vectors.len()] = v.clone();
        }
        if test.rank() == coord_vectors.len() + 1 {
            coord_vectors.push(vecc);
            reps.push(map);
        }
    }
    Ok(HomSpace { dim: reps.len(), basis: reps })
}

/// dim Hom(M, N)_t.
pub fn hom_dim(m: &PresentedModule, n: &PresentedModule, t: i64) -> Result<usize> {
    Ok(hom_space(m, n, t)?.dim)
}

/// Extra relations glued onto a module: N / (extra classes).
pub fn quotient_by(n: &PresentedModule, extra: &[ModVec]) -> PresentedModule {
    let mut relations = n.relations.clone();
    relations.extend(extra.iter().cloned());
    PresentedModule::new(n.ctx.clone(), n.target.clone(), relations)
}

/// Checks that two generating sets define the same submodule of N after
/// quotient reduction (used by the scan soundness re-verification).
pub fn same_image(
    ctx: &Ctx,
    ambient: &FreeModule,
    a: &[ModVec],
    b: &[ModVec],
) -> Result<bool> {
    let ga = groebner(ctx, ambient, a)?;
    let gb_ = groebner(ctx, ambient, b)?;
    Ok(a.iter().all(|v| contains(&gb_, v)) && b.iter().all(|v| contains(&ga, v)))
}

/// Middle term of an extension 0 -> sub -> E -> quot -> 0 described by a
/// degree-zero map psi from the relation slots of quot into F0 of sub.
pub fn extension_module(
    sub: &PresentedModule,
    quot: &PresentedModule,
    psi_cols: &[ModVec],
) -> Result<PresentedModule> {
    if psi_cols.len() != quot.relations.len() {
        return Err(Error::Invalid(
            "extension map must assign one vector per relation of the quotient".into(),
        ));
    }
    let target = sub.target.concat(&quot.target);
    let r_sub = sub.target.rank();
    let r_quot = quot.target.rank();
    let mut relations = vec![];
    for r in &sub.relations {
        let mut comps = r.comps.clone();
        comps.extend(vec![sub.ctx.ring.zero(); r_quot]);
        relations.push(ModVec::from_comps(comps));
    }
    for (l, c) in quot.relations.iter().enumerate() {
        let mut comps = psi_cols[l].comps.clone();
        if comps.len() != r_sub {
            return Err(Error::Invalid("extension column has the wrong rank".into()));
        }
        comps.extend(c.comps.clone());
        relations.push(ModVec::from_comps(comps));
    }
    Ok(PresentedModule::new(sub.ctx.clone(), target, relations))
}

/// A basis of Ext^1(quot, sub) in degree zero, as lists of columns for
/// `extension_module`. Classes are representatives modulo maps extending to
/// F0 of the quotient.
pub fn ext1_classes(quot: &PresentedModule, sub: &PresentedModule) -> Result<Vec<Vec<ModVec>>> {
    let ring = quot.ctx.ring.clone();
    let spec = ring.field.clone();
    // present the relation module K of quot: tags of its relations
    let mut twists = vec![];
    for r in &quot.relations {
        let d = r
            .homogeneous_degree(&quot.target)?
            .ok_or_else(|| Error::Invalid("zero relation".into()))?;
        twists.push(-d);
    }
    let f1 = FreeModule::new(ring.clone(), twists);
    // syzygies among the relations over the context ring
    let (_, syz) = crate::groebner::syzygies_of_gens(&quot.ctx, &quot.target, &quot.relations)?;
    // K as a module: F1 / (nothing) mapping onto relations, with syzygies syz
    let k_mod = PresentedModule::new(quot.ctx.clone(), f1, syz);
    // Hom(K, sub)_0 classes
    let homs = hom_space(&k_mod, sub, 0)?;
    // trivial classes: theta ∘ phi for theta: F0^quot -> sub
    let theta_space = hom_space(
        &PresentedModule::free(quot.ctx.clone(), quot.target.twists.clone()),
        sub,
        0,
    )?;
    let w_gb = groebner(&sub.ctx, &sub.target, &sub.relations)?;
    let coords_of = |cols: &[ModVec]| -> Vec<FieldScalar> {
        let mut out = vec![];
        for (l, col) in cols.iter().enumerate() {
            let d = -k_mod.target.twists[l];
            let basis = BasisIndex::new(&sub.target, d);
            let nf = normal_form(&w_gb, col);
            out.extend(basis.coords(&nf, &spec));
        }
        out
    };
    let mut trivial_coords: Vec<Vec<FieldScalar>> = vec![];
    for theta in &theta_space.basis {
        // theta ∘ (relations as map F1 -> F0^quot)
        let composed: Vec<ModVec> = quot
            .relations
            .iter()
            .map(|r| theta.apply(r))
            .map(|v| normal_form(&w_gb, &v))
            .collect();
        trivial_coords.push(coords_of(&composed));
    }
    let mut reps = vec![];
    let mut all_coords = trivial_coords.clone();
    for h in &homs.basis {
        let cols: Vec<ModVec> = h.cols.iter().map(|c| normal_form(&w_gb, c)).collect();
        let v = coords_of(&cols);
        let dimv = v.len();
        let mut test = Matrix::zero(dimv, all_coords.len() + 1, spec.clone());
        for (c, prev) in all_coords.iter().enumerate() {
            for (r, x) in prev.iter().enumerate() {
                test.data[r][c] = x.clone();
            }
        }
        for (r, x) in v.iter().enumerate() {
            test.data[r][all_coords.len()] = x.clone();
        }
        if test.rank() == all_coords.len() + 1 {
            all_coords.push(v);
            reps.push(cols);
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::QPoly;
    use crate::poly::PolyRing;
    use crate::scalar::FieldSpec;
    use std::sync::Arc;

    fn p3() -> Arc<PolyRing> {
        PolyRing::new(&["x0", "x1", "x2", "x3"], FieldSpec::rationals())
    }

    #[test]
    fn dual_of_twisted_free() {
        let r = p3();
        let m = PresentedModule::free(Ctx::poly_ring(r.clone()), vec![2]);
        let d = hom_dual(&m).unwrap();
        let h = d.module.hilbert().unwrap();
        assert_eq!(h.polynomial, QPoly::binomial(1, 3)); // chi(O(-2)(t)) = C(t+1,3)
    }

    #[test]
    fn dual_of_torsion_vanishes() {
        let r = p3();
        let pt: Vec<Poly> = (0..4).map(|i| r.var(i)).collect();
        let m = PresentedModule::cyclic(Ctx::poly_ring(r.clone()), &pt);
        let d = hom_dual(&m).unwrap();
        assert_eq!(generic_rank(&d.module).unwrap(), 0);
        assert!(d.module.hilbert_polynomial().unwrap().is_zero());
    }

    #[test]
    fn tor_of_point_on_quadric() {
        // Tor_1(O_p, O_Q) for p = [1:0:0:0] on Q: skyscraper of length 1
        let r = p3();
        let pt = vec![r.var(1), r.var(2), r.var(3)];
        let m = PresentedModule::cyclic(Ctx::poly_ring(r.clone()), &pt);
        let q = r.parse("x0*x3 - x1*x2").unwrap();
        let t1 = tor(&m, &[q.clone()], 1).unwrap();
        let hp = t1.hilbert_polynomial().unwrap();
        assert_eq!(hp, QPoly::from_i64_coeffs(&[1]));
        // Tor_1(free, anything) = 0
        let free = PresentedModule::free(Ctx::poly_ring(r.clone()), vec![1, 3]);
        let t1f = tor(&free, &[q], 1).unwrap();
        assert!(t1f.hilbert_polynomial().unwrap().is_zero());
    }

    #[test]
    fn torsion_of_free_is_zero() {
        let r = p3();
        let m = PresentedModule::free(Ctx::poly_ring(r.clone()), vec![0, 1]);
        let t = torsion_submodule(&m).unwrap();
        assert!(t.hilbert_polynomial().unwrap().is_zero());
    }

    #[test]
    fn fitting_detects_free_modules() {
        let r = p3();
        let m = PresentedModule::free(Ctx::poly_ring(r.clone()), vec![0, 2]);
        let lf = is_locally_free(&m, 2).unwrap();
        assert!(lf.locally_free);
    }

    #[test]
    fn min_gens_of_twisted_free() {
        let r = p3();
        let m = PresentedModule::free(Ctx::poly_ring(r.clone()), vec![1, 1, 0]);
        let degs = min_gen_degrees(&m).unwrap();
        assert_eq!(degs, vec![-1, -1, 0]);
    }

    #[test]
    fn hom_space_between_frees() {
        let r = p3();
        let ctx = Ctx::poly_ring(r.clone());
        let a = PresentedModule::free(ctx.clone(), vec![0]);
        let b = PresentedModule::free(ctx.clone(), vec![1]);
        // Hom(O, O(1))_0 = H^0(O(1)) = 4
        let hs = hom_space(&a, &b, 0).unwrap();
        assert_eq!(hs.dim, 4);
        // Hom(O(1), O)_0 = H^0(O(-1)) = 0
        let hs2 = hom_space(&b, &a, 0).unwrap();
        assert_eq!(hs2.dim, 0);
        // twist: Hom(O(1), O)_1 = H^0(O(-1)(1)) = 1
        let hs3 = hom_space(&b, &a, 1).unwrap();
        assert_eq!(hs3.dim, 1);
    }

    #[test]
    fn chern_report_on_quadric_line_bundles() {
        // O_Q(1,0) ⊕ O_Q(0,1): rank 2, c1·H = 2, с2 = 1 with c1^2 = 2
        // via chi = 2(t+1)(t+2) = 2t^2+6t+4: c1^2-2c2 = 0
        let r = p3();
        let q = r.parse("x0*x3 - x1*x2").unwrap();
        let ctx = Ctx::quotient_ring(r.clone(), vec![q]);
        // O_Q(1,0) as a module: (x0,x1)(1) over the quadric; direct sum with
        // (x0,x2)(1)
        let f = FreeModule::new(r.clone(), vec![1]);
        let sub1 = Submodule::new(ctx.clone(), f.clone(), vec![
            ModVec::from_comps(vec![r.var(0)]),
            ModVec::from_comps(vec![r.var(1)]),
        ]);
        let m1 = sub1.present().unwrap();
        let sub2 = Submodule::new(ctx.clone(), f, vec![
            ModVec::from_comps(vec![r.var(0)]),
            ModVec::from_comps(vec![r.var(2)]),
        ]);
        let m2 = sub2.present().unwrap();
        // direct sum
        let target = m1.target.concat(&m2.target);
        let mut rels = vec![];
        for v in &m1.relations {
            let mut comps = v.comps.clone();
            comps.extend(vec![r.zero(); m2.target.rank()]);
            rels.push(ModVec::from_comps(comps));
        }
        for v in &m2.relations {
            let mut comps = vec![r.zero(); m1.target.rank()];
            comps.extend(v.comps.clone());
            rels.push(ModVec::from_comps(comps));
        }
        let sum = PresentedModule::new(ctx, target, rels);
        let hp = sum.hilbert_polynomial().unwrap();
        assert_eq!(hp, QPoly::from_i64_coeffs(&[4, 6, 2]));
        let surface = SurfaceData { deg: 2, k_dot_h: -4, chi_o: 1 };
        let report = chern_report(&sum, surface, Some(2), &[(0, 0), (1, 0), (2, 0)]).unwrap();
        assert_eq!(report.rank, 2);
        assert_eq!(report.c1_dot_h, 2);
        assert_eq!(report.c2, Some(1));
        assert!(report.locally_free);
    }
}
