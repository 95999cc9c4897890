//! Seeded random modules, homomorphisms and small algebras for randomized
//! testing and benchmarks.

use std::sync::Arc;

use rand::{Rng, RngCore};

use crate::algebra::{build_from_quiver, Algebra, Arrow, QuiverPresentation};
use crate::error::Result;
use crate::linalg::{Field, Mat};
use crate::module::{hom_basis, projective, LeftModule};

/// A small bound quiver algebra together with a name and whether it is
/// known to be Gorenstein.
#[derive(Clone, Debug)]
pub struct ZooAlgebra<F: Field> {
    pub name: &'static str,
    pub algebra: Arc<Algebra<F>>,
    pub gorenstein: bool,
}

fn path(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

/// The algebras used by the randomized suites: hereditary, finite global
/// dimension, self-injective, and one that is not Gorenstein.
pub fn zoo<F: Field>(field: F) -> Result<Vec<ZooAlgebra<F>>> {
    let v = |names: &[&str]| names.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let specs: Vec<(&'static str, QuiverPresentation, bool)> = vec![
        ("k", QuiverPresentation::new(v(&["1"]), vec![], vec![]), true),
        ("A2", QuiverPresentation::linear(2, vec![]), true),
        ("A3", QuiverPresentation::linear(3, vec![]), true),
        ("A3/rad2", QuiverPresentation::linear(3, vec![path(&["a1", "a2"])]), true),
        (
            "kronecker",
            QuiverPresentation::new(
                v(&["1", "2"]),
                vec![Arrow::new("1", "2", "x"), Arrow::new("1", "2", "y")],
                vec![],
            ),
            true,
        ),
        (
            "C2/rad2",
            QuiverPresentation::truncated_cycle(&["1", "2"], "c", 2),
            true,
        ),
        (
            "C3/rad2",
            QuiverPresentation::truncated_cycle(&["1", "2", "3"], "c", 2),
            true,
        ),
        (
            "k[x]/x^2",
            QuiverPresentation::new(v(&["1"]), vec![Arrow::new("1", "1", "x")], vec![path(&["x", "x"])]),
            true,
        ),
        (
            "A2+loop",
            QuiverPresentation::new(
                v(&["1", "2"]),
                vec![Arrow::new("1", "2", "a"), Arrow::new("2", "2", "x")],
                vec![path(&["x", "x"]), path(&["a", "x"])],
            ),
            false,
        ),
    ];
    specs
        .into_iter()
        .map(|(name, q, gorenstein)| {
            Ok(ZooAlgebra {
                name,
                algebra: Arc::new(build_from_quiver(&q, field, 16)?),
                gorenstein,
            })
        })
        .collect()
}

/// A random vector with entries from the field's sampler.
pub fn random_vector<F: Field>(field: F, len: usize, rng: &mut dyn RngCore) -> Vec<F::Elem> {
    (0..len).map(|_| field.random(rng)).collect()
}

/// `P(v)` modulo the submodule generated by up to `relations` random
/// vectors of its radical, for a random vertex `v`.
pub fn random_cyclic_module<F: Field>(
    alg: &Arc<Algebra<F>>,
    relations: usize,
    rng: &mut dyn RngCore,
) -> Result<LeftModule<F>> {
    let f = alg.field();
    let basic = alg.require_basic("random modules")?;
    let v = rng.random_range(0..basic.vertex_count());
    let p = projective(alg, v)?;
    // the radical of P(v) is everything but the top, which is spanned by e_v
    let rad = crate::homology::radical_and_top(&p)?.radical;
    if rad.cols() == 0 {
        return Ok(p);
    }
    let count = rng.random_range(0..=relations);
    let mut gens = Mat::zeros(f, p.dim(), 0);
    for _ in 0..count {
        let c = random_vector(f, rad.cols(), rng);
        gens = gens.hstack(&Mat::column_vector(f, rad.mul_vec(&c)));
    }
    if gens.cols() == 0 {
        return Ok(p);
    }
    let sub = p.generated_submodule(&gens);
    Ok(p.quotient(&sub).0)
}

/// A direct sum of one to `max_summands` random cyclic modules.
pub fn random_module<F: Field>(
    alg: &Arc<Algebra<F>>,
    max_summands: usize,
    rng: &mut dyn RngCore,
) -> Result<LeftModule<F>> {
    let k = rng.random_range(1..=max_summands.max(1));
    let parts = (0..k)
        .map(|_| random_cyclic_module(alg, 2, rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(LeftModule::direct_sum(alg, &parts))
}

/// A random linear combination of a basis of `Hom(m, n)`.
pub fn random_hom<F: Field>(m: &LeftModule<F>, n: &LeftModule<F>, rng: &mut dyn RngCore) -> Result<Mat<F>> {
    let f = m.field();
    let mut out = Mat::zeros(f, n.dim(), m.dim());
    for h in hom_basis(m, n)? {
        out.add_scaled_assign(&f.random(rng), &h.matrix);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::homology::gorenstein;
    use crate::linalg::Rationals;

    #[test]
    fn zoo_gorenstein_flags_are_correct() {
        for z in zoo(Rationals).unwrap() {
            z.algebra.check_laws().unwrap();
            assert_eq!(gorenstein(&z.algebra, 8).unwrap().is_gorenstein(), z.gorenstein, "{}", z.name);
        }
    }

    #[test]
    fn random_modules_are_modules() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for z in zoo(Rationals).unwrap() {
            for _ in 0..5 {
                let m = random_module(&z.algebra, 2, &mut rng).unwrap();
                m.check().unwrap();
                let h = random_hom(&m, &m, &mut rng).unwrap();
                assert!(crate::module::ModuleHom::new(h).is_homomorphism(&m, &m));
            }
        }
    }
}
