use std::sync::Arc;

use tricycle::cycles::{product, verify_cycle, CycleVerdict, PerfectCycle, VerifyOptions};
use tricycle::homology::{gorenstein, gorenstein_criterion};
use tricycle::module::indec_projectives;
use tricycle::{build_from_quiver, QuiverPresentation, Rationals};

fn cycle(q: &QuiverPresentation, picks: &[usize]) -> PerfectCycle<Rationals> {
    let a = Arc::new(build_from_quiver(q, Rationals, 64).unwrap());
    let p = indec_projectives(&a).unwrap();
    PerfectCycle::new(a, picks.iter().map(|&i| p[i].clone()).collect()).unwrap()
}

#[test]
fn product_of_the_two_example_cycles() {
    let qa = QuiverPresentation::truncated_cycle(&["1", "2", "3", "4"], "a", 3);
    let qb = QuiverPresentation::truncated_cycle(&["1'", "2'", "3'", "4'", "5'", "6'"], "b", 3);
    let e = cycle(&qa, &[3, 1]);
    let f = cycle(&qb, &[4, 2, 0]);
    let opts = VerifyOptions::default();
    let p = product(&e, &f, &opts).unwrap();
    assert_eq!(p.lambda().dim(), 39);
    assert_eq!(p.expected_degrees, vec![0, 0, 0, 1]);
    let g = gorenstein(p.lambda(), opts.cutoff).unwrap();
    assert!(g.is_gorenstein());
    assert!(gorenstein_criterion(&p.triangular, opts.cutoff).unwrap().holds());
    let CycleVerdict::Certified(cert) = verify_cycle(&p.cycle(), &opts).unwrap() else {
        panic!("product does not verify");
    };
    assert_eq!(cert.degrees, p.expected_degrees);
}

#[test]
fn a_cycle_times_itself() {
    let qa = QuiverPresentation::truncated_cycle(&["1", "2", "3", "4"], "a", 3);
    let e = cycle(&qa, &[3, 1]);
    let opts = VerifyOptions::default();
    let p = product(&e, &e, &opts).unwrap();
    assert_eq!(p.expected_degrees, vec![0, 0, 1]);
    assert_eq!(p.lambda().dim(), 12 + 9 + 12);
    let CycleVerdict::Certified(cert) = verify_cycle(&p.cycle(), &opts).unwrap() else {
        panic!("product does not verify");
    };
    assert_eq!(cert.degrees, p.expected_degrees);
}
