//! Fixtures shared by the benchmarks: the truncated cycle algebras and the
//! two cycles of projectives over them.

use std::sync::Arc;

use tricycle::cycles::PerfectCycle;
use tricycle::module::indec_projectives;
use tricycle::{build_from_quiver, Algebra, Field, QuiverPresentation};

pub fn truncated_cycle<F: Field>(field: F, vertices: &[&str], prefix: &str) -> Arc<Algebra<F>> {
    let q = QuiverPresentation::truncated_cycle(vertices, prefix, 3);
    Arc::new(build_from_quiver(&q, field, 64).expect("finite-dimensional"))
}

pub fn q1<F: Field>(field: F) -> Arc<Algebra<F>> {
    truncated_cycle(field, &["1", "2", "3", "4"], "a")
}

pub fn q2<F: Field>(field: F) -> Arc<Algebra<F>> {
    truncated_cycle(field, &["1'", "2'", "3'", "4'", "5'", "6'"], "b")
}

fn projectives<F: Field>(alg: Arc<Algebra<F>>, picks: &[usize]) -> PerfectCycle<F> {
    let p = indec_projectives(&alg).expect("basic algebra");
    PerfectCycle::new(alg, picks.iter().map(|&i| p[i].clone()).collect()).expect("one algebra")
}

/// `(P(4), P(2))`
pub fn a_cycle<F: Field>(field: F) -> PerfectCycle<F> {
    projectives(q1(field), &[3, 1])
}

/// `(P(5'), P(3'), P(1'))`
pub fn b_cycle<F: Field>(field: F) -> PerfectCycle<F> {
    projectives(q2(field), &[4, 2, 0])
}
