//! The randomized exactness and property suite: Hilbert additivity along
//! the defect and residue sequences, torsion and bidual sanity, generator
//! independence, and the dual-route construction cross-check, on freshly
//! sampled hypersurface/hyperplane pairs.

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::error::Result;
use crate::homtools::{
    double_dual, double_dual_data, is_locally_free, tor, torsion_free_quotient,
    torsion_submodule,
};
use crate::macaulay::monomials_of_degree;
use crate::module::PresentedModule;
use crate::pipeline::{
    change_coords_h_last, jacobian_map, kernel_of_map_reduced, net_log_tangent, residue_cokernel,
    section_is_reduced, xi_image_and_coker, CIPair,
};
use crate::poly::{Poly, PolyRing};
use crate::scalar::{FieldScalar, FieldSpec};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairReport {
    pub degree: i64,
    pub f: String,
    pub h: String,
    pub checks: Vec<CheckOutcome>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub seed: u64,
    pub pairs: Vec<PairReport>,
    pub all_passed: bool,
}

fn random_form(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, degree: i64) -> Poly {
    let spec = ring.field.clone();
    let mut p = ring.zero();
    for mono in monomials_of_degree(ring.nvars(), degree) {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            p = p.add(&ring.monomial(&mono.exps).scale(&FieldScalar::from_int(&spec, c)));
        }
    }
    p
}

/// Samples a valid (F, H) pair: X = V(F) smooth of the given degree, H a
/// hyperplane with reduced section.
pub fn sample_pair(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, degree: i64, cap: i64) -> CIPair {
    loop {
        let f = random_form(rng, ring, degree);
        if f.is_zero() {
            continue;
        }
        let h = random_form(rng, ring, 1);
        if h.is_zero() {
            continue;
        }
        let Ok(pair) = CIPair::new(ring.clone(), vec![f.clone()], vec![h.clone()], cap) else {
            continue;
        };
        match section_is_reduced(&f, &h) {
            Ok(true) => return pair,
            _ => continue,
        }
    }
}

fn hp_str(m: &PresentedModule) -> String {
    m.hilbert_polynomial().map(|p| p.to_string()).unwrap_or_else(|e| e.to_string())
}

fn trace(stage: &str) {
    if std::env::var("NETLOG_TRACE").is_ok() {
        eprintln!("[trace] {}", stage);
    }
}

/// All checks for one sampled pair.
pub fn check_pair(pair: &CIPair) -> Result<Vec<CheckOutcome>> {
    let mut checks = vec![];
    let mut record = |name: &str, passed: bool, detail: String| {
        checks.push(CheckOutcome { name: name.into(), passed, detail });
    };

    trace("net+bidual");
    let net = net_log_tangent(pair)?;
    let bd = double_dual_data(&net.module)?;
    let refl = bd.bidual.minimized()?;

    // defect sequence 0 -> net -> net** -> C -> 0 at module level: the map
    // is injective degree by degree, making the window additivity formal,
    // and the chi of the cokernel matches the independently computed Tor^1
    let x_ctx = pair.x_ctx();
    let im_sub = crate::module::Submodule::new(
        x_ctx.clone(),
        bd.eval.target.clone(),
        bd.eval.cols.clone(),
    );
    trace("injectivity-dims");
    let mut injective = true;
    let mut detail = String::new();
    for t in -1..=5 {
        let lhs = net.module.hf(t);
        let rhs = im_sub.dim_at(t) as i64;
        if lhs != rhs {
            injective = false;
            detail = format!("degree {}: net has {}, its image in the bidual has {}", t, lhs, rhs);
            break;
        }
    }
    record("defect-sequence-hilbert-additivity", injective, detail);

    trace("tor1");
    {
        let (_, b_coker) = xi_image_and_coker(pair)?;
        let tor1 = tor(&b_coker, &pair.f_list, 1)?;
        let hp_defect = refl.hilbert_polynomial()?.sub(&net.module.hilbert_polynomial()?);
        let hp_t = tor1.hilbert_polynomial()?;
        record(
            "mm2-defect-is-tor1",
            hp_defect == hp_t && hp_defect.degree().map_or(true, |d| d == 0),
            format!("bidual/net chi defect = {}, Tor1 chi = {}", hp_defect, hp_t),
        );
    }

    // residue sequence 0 -> net -> T_X -> N_{X,Y} -> 0: Hilbert additivity
    trace("residue");
    let rd = residue_cokernel(pair)?;
    let mut additive = true;
    let mut detail = String::new();
    for t in -1..=6 {
        let lhs = net.module.hf(t) + rd.n_xy.hf(t);
        let rhs = rd.tangent.hf(t);
        if lhs != rhs {
            additive = false;
            detail = format!("degree {}", t);
            break;
        }
    }
    record("residue-sequence-hilbert-additivity", additive, detail);

    // torsion-free quotient is torsion-free
    trace("tfq");
    let (tfq, _) = torsion_free_quotient(&net.module)?;
    let t_of_tfq = torsion_submodule(&tfq)?;
    record(
        "torsion-free-quotient-has-zero-torsion",
        t_of_tfq.hilbert_polynomial()?.is_zero(),
        hp_str(&t_of_tfq),
    );

    // double dual idempotent at sheaf level
    trace("dd-idempotent");
    let refl2 = double_dual(&refl)?;
    let hp1 = refl.hilbert_polynomial()?;
    let hp2 = refl2.hilbert_polynomial()?;
    let rank = crate::homtools::generic_rank(&refl)? as usize;
    let lf1 = is_locally_free(&refl, rank)?;
    let lf2 = is_locally_free(&refl2, rank)?;
    record(
        "double-dual-idempotent",
        hp1 == hp2 && lf1.locally_free == lf2.locally_free,
        format!("chi {} vs {}", hp1, hp2),
    );

    // generator scaling invariance: (3F, -2H) gives identical Hilbert data
    let ring = pair.ring.clone();
    let spec = ring.field.clone();
    trace("scaling");
    let scaled = CIPair::new(
        ring.clone(),
        vec![pair.f_list[0].scale(&FieldScalar::from_int(&spec, 3))],
        vec![pair.g_list[0].scale(&FieldScalar::from_int(&spec, -2))],
        pair.cap,
    )?;
    let net_scaled = net_log_tangent(&scaled)?;
    let hd1 = net.module.hilbert_window(-1, 6)?;
    let hd2 = net_scaled.module.hilbert_window(-1, 6)?;
    record(
        "scaling-invariance",
        hd1 == hd2,
        format!("{} vs {}", hd1.polynomial, hd2.polynomial),
    );

    // generator independence on the swapped pair: T_H(Y) for Y = V(F) and
    // Y' = V(F + q H) agree (same X = H, same complete intersection ideal)
    let q_form = {
        let d = pair.f_list[0].homogeneous_degree().unwrap();
        let mut q = ring.var(0).pow((d - 1) as u32);
        q = q.add(&ring.var(ring.nvars() - 1).pow((d - 1) as u32));
        q
    };
    trace("generator-independence");
    let f_prime = pair.f_list[0].add(&q_form.mul(&pair.g_list[0]));
    let swapped = CIPair::new(ring.clone(), vec![pair.g_list[0].clone()], vec![pair.f_list[0].clone()], pair.cap);
    let swapped_prime =
        CIPair::new(ring.clone(), vec![pair.g_list[0].clone()], vec![f_prime.clone()], pair.cap);
    match (swapped, swapped_prime) {
        (Ok(p1), Ok(p2)) => {
            let n1 = net_log_tangent(&p1)?;
            let n2 = net_log_tangent(&p2)?;
            let w1 = n1.module.hilbert_window(-1, 6)?;
            let w2 = n2.module.hilbert_window(-1, 6)?;
            record(
                "generator-independence",
                w1 == w2,
                format!("{} vs {}", w1.polynomial, w2.polynomial),
            );
        }
        _ => record(
            "generator-independence",
            false,
            "swapped pair failed validation".into(),
        ),
    }

    // dual-route construction: the hyperplane specialization with the last
    // column removed yields the same Hilbert data after the coordinate change
    let (ft, _, _) = change_coords_h_last(&pair.f_list[0], &pair.g_list[0])?;
    let reduced_hp = kernel_of_map_reduced(&ft, pair.cap)?;
    let full_hp = net.module.hilbert_polynomial()?;
    record(
        "hyperplane-specialization-route",
        reduced_hp == full_hp,
        format!("{} vs {}", reduced_hp, full_hp),
    );

    // chi additivity of (mm1) restricted: HF(kernel piece) dims against the
    // Macaulay nullity of the Jacobian in low degrees
    let xi = jacobian_map(pair)?;
    let s_ctx = pair.s_ctx();
    let kernel = crate::groebner::kernel_of_map(&s_ctx, &xi)?;
    let mut kernel_ok = true;
    for t in 0..=4 {
        let span = crate::macaulay::submodule_dim(&s_ctx, &xi.source, &kernel, t);
        let nullity = crate::macaulay::map_kernel_dim(&s_ctx, &xi, t);
        if span != nullity {
            kernel_ok = false;
            break;
        }
    }
    record(
        "kernel-dimensions-vs-macaulay",
        kernel_ok,
        "degree-by-degree kernel dimensions".into(),
    );

    Ok(checks)
}

/// Runs the whole suite: `per_degree` sampled pairs for each surface degree
/// in {2, 3}.
pub fn verify_exactness(seed: u64, per_degree: usize, cap: i64) -> Result<ExactnessReport> {
    let ring = PolyRing::new(&["x0", "x1", "x2", "x3"], FieldSpec::rationals());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = vec![];
    let mut all = true;
    for degree in [2i64, 3] {
        for _ in 0..per_degree {
            let pair = sample_pair(&mut rng, &ring, degree, cap);
            let checks = check_pair(&pair)?;
            all &= checks.iter().all(|c| c.passed);
            pairs.push(PairReport {
                degree,
                f: pair.f_list[0].to_string(),
                h: pair.g_list[0].to_string(),
                checks,
            });
        }
    }
    Ok(ExactnessReport { seed, pairs, all_passed: all })
}

/// Euler characteristic as rational value of the Hilbert polynomial; helper
/// for cross-checks in reports.
pub fn chi_value(m: &PresentedModule, t: i64) -> Result<BigRational> {
    Ok(m.hilbert_polynomial()?.eval_i64(t))
}
