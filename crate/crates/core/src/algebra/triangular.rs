//! Triangular matrix algebras `Λ = [[A, N], [0, B]]`.

use std::collections::HashSet;
use std::ops::Range;
use std::sync::Arc;

use super::{to_sparse, Algebra, BasicData, Sparse, Word};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat};
use crate::module::Bimodule;

/// Where the `A`-, `N`- and `B`-blocks sit inside the basis of `Λ`, and
/// which vertices of `Λ` come from `A` and from `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingData {
    pub a: Range<usize>,
    pub n: Range<usize>,
    pub b: Range<usize>,
    pub a_vertices: Range<usize>,
    pub b_vertices: Range<usize>,
}

/// A triangular algebra together with the data it was built from.
#[derive(Clone, Debug)]
pub struct Triangular<F: Field> {
    pub lambda: Arc<Algebra<F>>,
    pub a: Arc<Algebra<F>>,
    pub b: Arc<Algebra<F>>,
    pub n: Bimodule<F>,
    pub embedding: EmbeddingData,
}

/// Builds `Λ` with basis `A`, then `N`, then `B`, multiplied as upper
/// triangular 2x2 matrices with `N·N = 0`.
pub fn triangular<F: Field>(
    a: &Arc<Algebra<F>>,
    b: &Arc<Algebra<F>>,
    n: &Bimodule<F>,
) -> Result<Triangular<F>> {
    let f = a.field();
    if b.field() != f || n.left().field() != f {
        return Err(Error::FieldMismatch(
            "triangular algebra from algebras over different fields".into(),
        ));
    }
    if !n.left_algebra().same_as(a) || !n.right_algebra().same_as(b) {
        return Err(Error::AlgebraMismatch(
            "bimodule is not over the given algebras".into(),
        ));
    }
    let (da, dn, db) = (a.dim(), n.dim(), b.dim());
    let dim = da + dn + db;
    let (oa, on, ob) = (0, da, da + dn);
    let shift = |s: &Sparse<F>, by: usize| -> Sparse<F> {
        s.iter().map(|(i, c)| (i + by, c.clone())).collect()
    };

    let mut products: Vec<Sparse<F>> = vec![Vec::new(); dim * dim];
    for i in 0..da {
        for j in 0..da {
            products[(oa + i) * dim + oa + j] = shift(a.product_of_basis(i, j), oa);
        }
        let l = n.left().action(i);
        for k in 0..dn {
            products[(oa + i) * dim + on + k] = shift(&to_sparse(f, &l.column(k)), on);
        }
    }
    for j in 0..db {
        let r = n.right().action(j);
        for k in 0..dn {
            products[(on + k) * dim + ob + j] = shift(&to_sparse(f, &r.column(k)), on);
        }
    }
    for i in 0..db {
        for j in 0..db {
            products[(ob + i) * dim + ob + j] = shift(b.product_of_basis(i, j), ob);
        }
    }

    let mut unit = a.unit().to_vec();
    unit.extend((0..dn).map(|_| f.zero()));
    unit.extend(b.unit().iter().cloned());

    let words: Vec<Word> = a
        .words()
        .iter()
        .map(|w| shift_word(*w, oa))
        .chain((0..dn).map(|_| Word::Generator))
        .chain(b.words().iter().map(|w| shift_word(*w, ob)))
        .collect();

    let a_labels: HashSet<&String> = a.labels().iter().collect();
    let collide = b.labels().iter().any(|l| a_labels.contains(l));
    let tag = |prefix: &str, l: &str| {
        if collide {
            format!("{prefix}:{l}")
        } else {
            l.to_string()
        }
    };
    let labels: Vec<String> = a
        .labels()
        .iter()
        .map(|l| tag("A", l))
        .chain((0..dn).map(|k| format!("N[{k}]")))
        .chain(b.labels().iter().map(|l| tag("B", l)))
        .collect();

    let basic = match (a.basic(), b.basic()) {
        (Some(ba), Some(bb)) => {
            let av: HashSet<&String> = ba.vertex_labels().iter().collect();
            let vcollide = bb.vertex_labels().iter().any(|l| av.contains(l));
            let vtag = |prefix: &str, l: &str| {
                if vcollide {
                    format!("{prefix}:{l}")
                } else {
                    l.to_string()
                }
            };
            let vertex_labels = ba
                .vertex_labels()
                .iter()
                .map(|l| vtag("A", l))
                .chain(bb.vertex_labels().iter().map(|l| vtag("B", l)))
                .collect();
            let embed = |v: &[F::Elem], off: usize| -> Vec<F::Elem> {
                let mut out = vec![f.zero(); dim];
                for (i, c) in v.iter().enumerate() {
                    out[off + i] = c.clone();
                }
                out
            };
            let idempotents = (0..ba.vertex_count())
                .map(|v| embed(ba.idempotent(v), oa))
                .chain((0..bb.vertex_count()).map(|v| embed(bb.idempotent(v), ob)))
                .collect();
            let mut radical: Vec<Vec<F::Elem>> = ba
                .radical()
                .columns()
                .iter()
                .map(|c| embed(c, oa))
                .collect();
            radical.extend((0..dn).map(|k| {
                let mut e = vec![f.zero(); dim];
                e[on + k] = f.one();
                e
            }));
            radical.extend(bb.radical().columns().iter().map(|c| embed(c, ob)));
            Some(BasicData::build(
                f,
                dim,
                vertex_labels,
                idempotents,
                Mat::from_columns(f, dim, &radical),
            )?)
        }
        _ => None,
    };

    let embedding = EmbeddingData {
        a: oa..on,
        n: on..ob,
        b: ob..dim,
        a_vertices: 0..a.basic().map_or(0, BasicData::vertex_count),
        b_vertices: a.basic().map_or(0, BasicData::vertex_count)
            ..a.basic().map_or(0, BasicData::vertex_count) + b.basic().map_or(0, BasicData::vertex_count),
    };
    let lambda = Algebra::assemble(f, labels, products, unit, Some(words), None, basic);
    Ok(Triangular {
        lambda: Arc::new(lambda),
        a: a.clone(),
        b: b.clone(),
        n: n.clone(),
        embedding,
    })
}

fn shift_word(w: Word, by: usize) -> Word {
    match w {
        Word::Generator => Word::Generator,
        Word::Product(i, j) => Word::Product(i + by, j + by),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_from_quiver, Arrow, QuiverPresentation};
    use crate::linalg::Rationals;
    use crate::module::{dual, external_tensor, indec_projectives, Bimodule};

    fn k() -> Arc<Algebra<Rationals>> {
        Arc::new(Algebra::ground(Rationals))
    }

    #[test]
    fn k_k_k_is_the_a2_path_algebra() {
        let k = k();
        let s = indec_projectives(&k).unwrap().remove(0);
        let n = external_tensor(&s, &dual(&s)).unwrap();
        let t = triangular(&k, &k, &n).unwrap();
        let lam = &t.lambda;
        lam.check_laws().unwrap();
        assert_eq!(lam.dim(), 3);
        // path algebra of B -> A, relabelled: e_A, arrow, e_B
        let q = QuiverPresentation::new(
            vec!["A".into(), "B".into()],
            vec![Arrow::new("B", "A", "x")],
            vec![],
        );
        let path = build_from_quiver(&q, Rationals, 8).unwrap();
        let relabel = [
            path.label_index("e_A").unwrap(),
            path.label_index("x").unwrap(),
            path.label_index("e_B").unwrap(),
        ];
        for i in 0..3 {
            for j in 0..3 {
                let ours: Vec<(usize, _)> = lam
                    .product_of_basis(i, j)
                    .iter()
                    .map(|(l, c)| (relabel[*l], c.clone()))
                    .collect();
                assert_eq!(&ours, path.product_of_basis(relabel[i], relabel[j]));
            }
        }
    }

    #[test]
    fn zero_bimodule_gives_a_product() {
        let k = k();
        let t = triangular(&k, &k, &Bimodule::zero(&k, &k)).unwrap();
        let lam = &t.lambda;
        assert_eq!(lam.dim(), 2);
        lam.check_laws().unwrap();
        let ea = lam.basic().unwrap().idempotent(0).to_vec();
        for i in 0..2 {
            let x = lam.basis_vector(i);
            assert_eq!(lam.mul(&ea, &x), lam.mul(&x, &ea));
        }
    }

    #[test]
    fn example_algebra_has_dimension_39() {
        let a = Arc::new(
            build_from_quiver(
                &QuiverPresentation::truncated_cycle(&["1", "2", "3", "4"], "a", 3),
                Rationals,
                64,
            )
            .unwrap(),
        );
        let b = Arc::new(
            build_from_quiver(
                &QuiverPresentation::truncated_cycle(&["1'", "2'", "3'", "4'", "5'", "6'"], "b", 3),
                Rationals,
                64,
            )
            .unwrap(),
        );
        let p2 = &indec_projectives(&a).unwrap()[1];
        let p5 = &indec_projectives(&b).unwrap()[4];
        let n = external_tensor(p2, &dual(p5)).unwrap();
        let t = triangular(&a, &b, &n).unwrap();
        assert_eq!(t.lambda.dim(), 39);
        assert_eq!(t.embedding.n, 12..21);
        t.lambda.check_laws().unwrap();
        assert_eq!(t.lambda.basic().unwrap().vertex_count(), 10);
    }
}
