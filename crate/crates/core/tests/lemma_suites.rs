//! Seed-pinned randomized suites for the identities behind the cycle
//! product; each suite checks at least 50 instances.

use proptest::prelude::*;
use tricycle::suites::{run_suite, Instance, Suite};

const INSTANCES: usize = 50;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: INSTANCES as u32,
        failure_persistence: None,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5e22e),
        ..ProptestConfig::default()
    }
}

fn no_mismatch(suite: Suite, seed: u64) -> Result<(), TestCaseError> {
    match suite.check(seed).map_err(|e| TestCaseError::fail(e.to_string()))? {
        Instance::Mismatch(why) => Err(TestCaseError::fail(format!("seed {seed}: {why}"))),
        Instance::Checked { .. } | Instance::Skipped(_) => Ok(()),
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn triple_ext(seed in any::<u64>()) {
        no_mismatch(Suite::TripleExt, seed)?;
    }

    #[test]
    fn key_lemma(seed in any::<u64>()) {
        no_mismatch(Suite::KeyLemma, seed)?;
    }

    #[test]
    fn nakayama_triangular(seed in any::<u64>()) {
        no_mismatch(Suite::NakayamaTriangular, seed)?;
    }

    #[test]
    fn serre_duality(seed in any::<u64>()) {
        no_mismatch(Suite::SerreDuality, seed)?;
    }

    #[test]
    fn degree_interpretation(seed in any::<u64>()) {
        no_mismatch(Suite::DegreeInterpretation, seed)?;
    }
}

#[test]
fn suites_reach_their_instance_counts() {
    for suite in Suite::ALL {
        let r = run_suite(suite, INSTANCES, 2024).unwrap();
        assert!(r.passed(INSTANCES), "{suite}: {r:?}");
    }
}
