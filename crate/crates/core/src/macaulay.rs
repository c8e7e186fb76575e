//! Degree-by-degree linear algebra: monomial bases of graded pieces,
//! Macaulay matrices of maps and submodules, exact rank and nullspace over
//! the coefficient field. This is the brute-force side of every dual-route
//! check against the Gröbner engine.

use std::collections::HashMap;
use std::sync::Arc;

use crate::groebner::Ctx;
use crate::modvec::{FreeModule, GradedMap, ModVec};
use crate::poly::{Monomial, Poly, PolyRing};
use crate::scalar::{FieldScalar, FieldSpec};

/// All monomials of total degree d in n variables, in a fixed enumeration.
pub fn monomials_of_degree(nvars: usize, d: i64) -> Vec<Monomial> {
    if d < 0 {
        return vec![];
    }
    let mut out = vec![];
    let mut current = vec![0u16; nvars];
    fn rec(out: &mut Vec<Monomial>, current: &mut Vec<u16>, idx: usize, left: u16) {
        if idx == current.len() - 1 {
            current[idx] = left;
            out.push(Monomial { exps: current.iter().copied().collect() });
            return;
        }
        for e in (0..=left).rev() {
            current[idx] = e;
            rec(out, current, idx + 1, left - e);
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial { exps: smallvec::smallvec![] }] } else { vec![] };
    }
    rec(&mut out, &mut current, 0, d as u16);
    out
}

/// Basis of the degree-t piece of a twisted free module: pairs (position,
/// monomial of degree t + twist).
pub fn module_basis(module: &FreeModule, t: i64) -> Vec<(usize, Monomial)> {
    let n = module.ring.nvars();
    let mut out = vec![];
    for (k, tw) in module.twists.iter().enumerate() {
        for m in monomials_of_degree(n, t + tw) {
            out.push((k, m));
        }
    }
    out
}

pub fn module_dim(module: &FreeModule, t: i64) -> usize {
    let n = module.ring.nvars() as i64;
    module
        .twists
        .iter()
        .map(|tw| {
            let d = t + tw;
            if d < 0 {
                0
            } else {
                // C(d + n - 1, n - 1) fits comfortably in usize at desk scale
                let mut num: u128 = 1;
                let mut den: u128 = 1;
                for i in 0..(n - 1) {
                    num *= (d + n - 1 - i) as u128;
                    den *= (i + 1) as u128;
                }
                (num / den) as usize
            }
        })
        .sum()
}

/// Dense exact matrix over the coefficient field.
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<FieldScalar>>,
    pub field: Arc<FieldSpec>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: Arc<FieldSpec>) -> Matrix {
        let z = FieldScalar::zero(&field);
        Matrix { rows, cols, data: vec![vec![z; cols]; rows], field }
    }

    pub fn rank(&self) -> usize {
        self.clone_data_echelon().0
    }

    fn clone_data_echelon(&self) -> (usize, Vec<Vec<FieldScalar>>, Vec<usize>) {
        let spec = &self.field;
        let mut a = self.data.clone();
        let mut pivots = vec![];
        let mut rank = 0;
        for col in 0..self.cols {
            // find a pivot row
            let mut pivot = None;
            for r in rank..self.rows {
                if !a[r][col].is_zero() {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            a.swap(rank, p);
            let inv = a[rank][col].invert(spec).expect("nonzero pivot");
            for c in col..self.cols {
                a[rank][c] = a[rank][c].mul(&inv, spec);
            }
            for r in 0..self.rows {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..self.cols {
                        let delta = a[rank][c].mul(&f, spec);
                        a[r][c] = a[r][c].sub(&delta);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        (rank, a, pivots)
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<FieldScalar>> {
        let spec = &self.field;
        let (_rank, a, pivots) = self.clone_data_echelon();
        let pivot_set: HashMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = vec![];
        for free_col in 0..self.cols {
            if pivot_set.contains_key(&free_col) {
                continue;
            }
            let mut v = vec![FieldScalar::zero(spec); self.cols];
            v[free_col] = FieldScalar::one(spec);
            for (&pc, &pr) in &pivot_set {
                v[pc] = a[pr][free_col].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves A x = b; returns a particular solution if consistent.
    pub fn solve(&self, b: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
        let spec = &self.field;
        // eliminate on the augmented matrix
        let mut aug = Matrix::zero(self.rows, self.cols + 1, self.field.clone());
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.data[r][c] = self.data[r][c].clone();
            }
            aug.data[r][self.cols] = b[r].clone();
        }
        let (_, a, pivots) = aug.clone_data_echelon();
        // inconsistent if a pivot lands in the last column
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![FieldScalar::zero(spec); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = a[r][self.cols].clone();
        }
        Some(x)
    }
}

pub struct BasisIndex {
    pub entries: Vec<(usize, Monomial)>,
    lookup: HashMap<(usize, Monomial), usize>,
}

impl BasisIndex {
    pub fn new(module: &FreeModule, t: i64) -> BasisIndex {
        let entries = module_basis(module, t);
        let lookup = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        BasisIndex { entries, lookup }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coords(&self, v: &ModVec, spec: &FieldSpec) -> Vec<FieldScalar> {
        let mut out = vec![FieldScalar::zero(spec); self.entries.len()];
        for (k, p) in v.comps.iter().enumerate() {
            for t in &p.terms {
                let idx = self
                    .lookup
                    .get(&(k, t.mono.clone()))
                    .expect("vector outside the graded piece");
                out[*idx] = out[*idx].add(&t.coef);
            }
        }
        out
    }
}

/// Matrix whose column span is the degree-t piece of the submodule generated
/// by `gens` (quotient multiples included when the context is a quotient).
pub fn submodule_matrix(ctx: &Ctx, ambient: &FreeModule, gens: &[ModVec], t: i64) -> Matrix {
    let ring = &ambient.ring;
    let spec = ring.field.clone();
    let basis = BasisIndex::new(ambient, t);
    let mut cols: Vec<Vec<FieldScalar>> = vec![];
    let mut all: Vec<ModVec> = gens.to_vec();
    for q in &ctx.quotient {
        for k in 0..ambient.rank() {
            let mut v = ambient.zero_vec();
            v.comps[k] = q.clone();
            all.push(v);
        }
    }
    for g in &all {
        let Ok(Some(d)) = g.homogeneous_degree(ambient) else { continue };
        let shift = t - d;
        if shift < 0 {
            continue;
        }
        for m in monomials_of_degree(ring.nvars(), shift) {
            let prod = g.mul_term(&FieldScalar::one(&spec), &m);
            cols.push(basis.coords(&prod, &spec));
        }
    }
    let mut mat = Matrix::zero(basis.len(), cols.len(), spec);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            mat.data[i][j] = v.clone();
        }
    }
    mat
}

/// Dimension of the degree-t piece of the submodule (over the quotient ring
/// this is dim of (M + I·F)_t).
pub fn submodule_dim(ctx: &Ctx, ambient: &FreeModule, gens: &[ModVec], t: i64) -> usize {
    submodule_matrix(ctx, ambient, gens, t).rank()
}

/// Brute-force membership: does v lie in the degree-matched span?
pub fn membership_by_rank(ctx: &Ctx, ambient: &FreeModule, gens: &[ModVec], v: &ModVec) -> bool {
    let Ok(Some(t)) = v.homogeneous_degree(ambient) else {
        return v.is_zero();
    };
    let mat = submodule_matrix(ctx, ambient, gens, t);
    let basis = BasisIndex::new(ambient, t);
    let target = basis.coords(v, &ambient.ring.field);
    let r0 = mat.rank();
    let mut aug = Matrix::zero(mat.rows, mat.cols + 1, mat.field.clone());
    for r in 0..mat.rows {
        for c in 0..mat.cols {
            aug.data[r][c] = mat.data[r][c].clone();
        }
        aug.data[r][mat.cols] = target[r].clone();
    }
    aug.rank() == r0
}

/// The degree-t Macaulay matrix of a graded map (source piece to target
/// piece, no quotient).
pub fn map_matrix(map: &GradedMap, t: i64) -> Matrix {
    let ring = &map.source.ring;
    let spec = ring.field.clone();
    let src_basis = BasisIndex::new(&map.source, t);
    let tgt_basis = BasisIndex::new(&map.target, t);
    let mut mat = Matrix::zero(tgt_basis.len(), src_basis.len(), spec.clone());
    for (j, (pos, mono)) in src_basis.entries.iter().enumerate() {
        let img = map.cols[*pos].mul_term(&FieldScalar::one(&spec), mono);
        let coords = tgt_basis.coords(&img, &spec);
        for (i, v) in coords.into_iter().enumerate() {
            mat.data[i][j] = v;
        }
    }
    mat
}

/// The degree-t kernel dimension of the induced map over the context ring:
/// nullity of [map ; projection-to-quotient] computed as
/// dim ker(source_t -> target_t / (I·target)_t).
pub fn map_kernel_dim(ctx: &Ctx, map: &GradedMap, t: i64) -> usize {
    let src_dim = BasisIndex::new(&map.source, t).len();
    if ctx.quotient.is_empty() {
        let m = map_matrix(map, t);
        return src_dim - m.rank();
    }
    // rank of the composite source_t -> target_t -> target_t/(I F)_t equals
    // rank([A | Q]) - rank(Q) for Q spanning (I F)_t
    let ring = &map.source.ring;
    let spec = ring.field.clone();
    let tgt_basis = BasisIndex::new(&map.target, t);
    let a = map_matrix(map, t);
    let q = submodule_matrix(ctx, &map.target, &[], t);
    let mut combined = Matrix::zero(tgt_basis.len(), a.cols + q.cols, spec);
    for r in 0..tgt_basis.len() {
        for c in 0..a.cols {
            combined.data[r][c] = a.data[r][c].clone();
        }
        for c in 0..q.cols {
            combined.data[r][a.cols + c] = q.data[r][c].clone();
        }
    }
    let rank_comp = combined.rank() - q.rank();
    src_dim - rank_comp
}

/// Evaluates a polynomial-coefficient linear functional basis: expresses the
/// polynomials of degree d in `ring` w.r.t. the monomial enumeration.
pub fn poly_coords(p: &Poly, d: i64, ring: &Arc<PolyRing>) -> Vec<FieldScalar> {
    let monos = monomials_of_degree(ring.nvars(), d);
    let lookup: HashMap<&Monomial, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = vec![FieldScalar::zero(&ring.field); monos.len()];
    for t in &p.terms {
        if let Some(&i) = lookup.get(&t.mono) {
            out[i] = out[i].add(&t.coef);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal_module;
    use crate::scalar::FieldSpec;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomials_of_degree(3, 5).len(), 21);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
        assert!(monomials_of_degree(2, -1).is_empty());
        assert_eq!(module_dim(&FreeModule::new(
            crate::poly::PolyRing::new(&["x", "y", "z", "w"], FieldSpec::rationals()), vec![0]), 2), 10);
    }

    #[test]
    fn rank_and_nullspace() {
        let r = crate::poly::PolyRing::new(&["x", "y"], FieldSpec::rationals());
        let ctx = Ctx::poly_ring(r.clone());
        let free = ideal_module(&r);
        let gens = vec![
            ModVec::from_comps(vec![r.parse("x^2").unwrap()]),
            ModVec::from_comps(vec![r.parse("x*y").unwrap()]),
        ];
        // degree 2: span {x^2, xy} has dim 2 of the 3-dim piece
        assert_eq!(submodule_dim(&ctx, &free, &gens, 2), 2);
        // degree 3: x^3, x^2 y, x y^2 => dim 3 of 4
        assert_eq!(submodule_dim(&ctx, &free, &gens, 3), 3);
        assert!(membership_by_rank(
            &ctx,
            &free,
            &gens,
            &ModVec::from_comps(vec![r.parse("x^2*y + x*y^2").unwrap()])
        ));
        assert!(!membership_by_rank(
            &ctx,
            &free,
            &gens,
            &ModVec::from_comps(vec![r.parse("y^3").unwrap()])
        ));
    }

    #[test]
    fn solve_linear_system() {
        let spec = FieldSpec::rationals();
        let mut m = Matrix::zero(2, 3, spec.clone());
        let one = FieldScalar::one(&spec);
        let two = FieldScalar::from_int(&spec, 2);
        m.data[0][0] = one.clone();
        m.data[0][1] = two.clone();
        m.data[1][2] = one.clone();
        let b = vec![FieldScalar::from_int(&spec, 5), FieldScalar::from_int(&spec, 7)];
        let x = m.solve(&b).unwrap();
        // check A x = b
        let ax0 = x[0].add(&x[1].mul(&two, &spec));
        assert_eq!(ax0, b[0]);
        assert_eq!(x[2], b[1]);
        assert_eq!(m.nullspace().len(), 1);
        // inconsistent system
        let mut m2 = Matrix::zero(2, 1, spec.clone());
        m2.data[0][0] = one.clone();
        m2.data[1][0] = one.clone();
        let b2 = vec![FieldScalar::from_int(&spec, 1), FieldScalar::from_int(&spec, 2)];
        assert!(m2.solve(&b2).is_none());
    }
}
