mod common;

use common::built;
use crg_core::catalog::GroupSpec;
use crg_core::monodromy::{basepoint, integrate_path, loop_around_hyperplane, monodromy_suite};
use proptest::prelude::*;
use std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn suite_within_tolerance(seed in any::<u64>(), g4 in any::<bool>()) {
        let spec = if g4 { GroupSpec::exceptional(4) } else { GroupSpec::imprimitive(2, 1, 2) };
        let b = built(&spec);
        let m = monodromy_suite(&b, seed, 8).unwrap();
        for err in [m.loop_error, m.loop_leak, m.braided_error, m.diagonal_error, m.winding_error] {
            prop_assert!(err < 1e-6, "{:?}", m);
        }
        prop_assert!(m.trace_error < 1e-5);
        prop_assert!(m.additivity_error < 1e-9);
    }

    #[test]
    fn closed_loops_wind_by_whole_turns(seed in any::<u64>(), h in 0usize..4) {
        let b = built(&GroupSpec::imprimitive(2, 1, 2));
        let z = basepoint(&b.arrangement, seed).unwrap();
        let path = loop_around_hyperplane(&b.arrangement, h, &z).unwrap();
        let t = integrate_path(&b.arrangement, &path.samples).unwrap();
        for (k, w) in t.integrals.iter().enumerate() {
            let turns = w.im / (2.0 * PI);
            prop_assert!(w.re.abs() < 1e-6);
            prop_assert!((turns - turns.round()).abs() < 1e-6 / (2.0 * PI));
            prop_assert_eq!(turns.round() as i64, (k == h) as i64);
        }
    }
}

#[test]
fn rank_three_is_out_of_scope() {
    let b = built(&GroupSpec::imprimitive(2, 1, 3));
    assert!(monodromy_suite(&b, 0, 4).is_err());
}
