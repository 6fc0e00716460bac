use std::time::Instant;

use handlecalc::surface::build::random_instance;
use handlecalc::surface::{duality_ranks, validate};
use handlecalc::trim::{trim, StepKind, TrimOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_instances_trim_within_their_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let start = Instant::now();
    for i in 0..60 {
        let s = random_instance(&mut rng, 500);
        assert!(validate(&s).is_empty(), "instance {i}");
        let r = duality_ranks(&s);
        let report = trim(&s, TrimOptions::default()).unwrap_or_else(|e| panic!("instance {i}: {e}"));
        assert_eq!(report.initial_ranks, r, "instance {i}");
        assert_eq!(report.count(StepKind::R0), r.r0);
        assert_eq!(report.count(StepKind::R1), r.r1);
        assert_eq!(report.count(StepKind::R2), r.r2);
        assert!(report.steps.iter().all(|s| s.mayer_vietoris));
        assert!(validate(&report.result).is_empty());
    }
    eprintln!("{:?}", start.elapsed());
}
