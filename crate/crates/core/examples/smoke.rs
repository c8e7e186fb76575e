use netlog_core::poly::PolyRing;
use netlog_core::scalar::FieldSpec;
use rand_chacha::rand_core::SeedableRng;

fn main() {
    let ring = PolyRing::new(&["x0", "x1", "x2", "x3"], FieldSpec::rationals());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for d in [2i64, 3] {
        let pair = netlog_core::verify::sample_pair(&mut rng, &ring, d, 64);
        eprintln!("d={} F={}", d, pair.f_list[0]);
        let t = std::time::Instant::now();
        let checks = netlog_core::verify::check_pair(&pair).unwrap();
        eprintln!("  checks in {:?}", t.elapsed());
        for c in &checks { eprintln!("  [{}] {} {}", if c.passed {"ok"} else {"FAIL"}, c.name, c.detail); }
    }
}
