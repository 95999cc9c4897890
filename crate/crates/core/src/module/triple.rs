//! Modules over a triangular algebra `Λ = [[A, N], [0, B]]` as triples
//! `(X, Y, φ: N ⊗_B Y -> X)`.

use std::sync::Arc;

use super::{tensor_over, Bimodule, LeftModule, TensorProduct};
use crate::algebra::{Algebra, EmbeddingData};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat};

/// A triple `(x, y, phi)`; `phi` is a matrix `N ⊗_B y -> x` in the
/// coordinates of `tensor`.
#[derive(Clone, Debug)]
pub struct TripleModule<F: Field> {
    pub x: LeftModule<F>,
    pub y: LeftModule<F>,
    pub phi: Mat<F>,
    pub tensor: TensorProduct<F>,
}

impl<F: Field> TripleModule<F> {
    /// Checks that `phi` is `A`-linear on `N ⊗_B y`.
    pub fn new(n: &Bimodule<F>, x: LeftModule<F>, y: LeftModule<F>, phi: Mat<F>) -> Result<Self> {
        x.require_same_algebra(n.left(), "triple")?;
        let tensor = tensor_over(n.right(), &y)?;
        if phi.rows() != x.dim() || phi.cols() != tensor.dim() {
            return Err(Error::DimensionMismatch(format!(
                "phi must be {} x {}",
                x.dim(),
                tensor.dim()
            )));
        }
        let iy = Mat::identity(y.field(), y.dim());
        for a in n.left_algebra().generators() {
            let on_tensor = tensor
                .projection()
                .mul(&n.left().action(a).kron(&iy))
                .mul(tensor.section());
            if phi.mul(&on_tensor) != x.action(a).mul(&phi) {
                return Err(Error::InvalidModule("phi is not A-linear".into()));
            }
        }
        Ok(TripleModule { x, y, phi, tensor })
    }

    /// `(x, 0, 0)`.
    pub fn left_only(n: &Bimodule<F>, x: LeftModule<F>) -> Result<Self> {
        let y = LeftModule::zero(n.right_algebra().clone());
        let phi = Mat::zeros(x.field(), x.dim(), 0);
        Self::new(n, x, y, phi)
    }

    /// `(0, y, 0)`.
    pub fn right_only(n: &Bimodule<F>, y: LeftModule<F>) -> Result<Self> {
        let x = LeftModule::zero(n.left_algebra().clone());
        let tensor = tensor_over(n.right(), &y)?;
        let phi = Mat::zeros(y.field(), 0, tensor.dim());
        Ok(TripleModule { x, y, phi, tensor })
    }
}

/// The `Λ`-module on `x ⊕ y`: the `A`-block acts on `x`, the `B`-block on
/// `y`, and `n` acts by `(x, y) ↦ (φ(n ⊗ y), 0)`.
pub fn triple_to_module<F: Field>(
    t: &TripleModule<F>,
    lam: &Arc<Algebra<F>>,
    emb: &EmbeddingData,
) -> Result<LeftModule<F>> {
    let f = lam.field();
    let (dx, dy) = (t.x.dim(), t.y.dim());
    if t.x.algebra().dim() != emb.a.len()
        || t.y.algebra().dim() != emb.b.len()
        || t.tensor.left_dim != emb.n.len()
        || t.tensor.right_dim != dy
    {
        return Err(Error::DimensionMismatch(
            "triple does not match the triangular algebra".into(),
        ));
    }
    if t.x.field() != f || t.y.field() != f {
        return Err(Error::FieldMismatch("triple over a different field".into()));
    }
    let dim = dx + dy;
    let mut action = Vec::with_capacity(lam.dim());
    for i in 0..lam.dim() {
        let mut m = Mat::zeros(f, dim, dim);
        if emb.a.contains(&i) {
            m.set_block(0, 0, t.x.action(i - emb.a.start));
        } else if emb.b.contains(&i) {
            m.set_block(dx, dx, t.y.action(i - emb.b.start));
        } else {
            let k = i - emb.n.start;
            let cols: Vec<usize> = (k * dy..(k + 1) * dy).collect();
            let block = t.phi.mul(&t.tensor.projection().select_columns(&cols));
            m.set_block(0, dx, &block);
        }
        action.push(m);
    }
    LeftModule::new(lam.clone(), dim, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::triangular;
    use crate::linalg::Rationals;
    use crate::module::{dual, external_tensor, indec_projectives, is_isomorphic, psi_map};

    #[test]
    fn k_k_triples_over_a2() {
        let k = Arc::new(Algebra::ground(Rationals));
        let s = indec_projectives(&k).unwrap().remove(0);
        let n = external_tensor(&s, &dual(&s)).unwrap();
        let tri = triangular(&k, &k, &n).unwrap();
        let lam = tri.lambda.clone();
        assert_eq!(lam.dim(), 3);
        let x0 = TripleModule::left_only(&n, s.clone()).unwrap();
        let m = triple_to_module(&x0, &lam, &tri.embedding).unwrap();
        assert_eq!(m.dim(), 1);
        let (psi, _, _) = psi_map(&s, &s).unwrap();
        let glued = TripleModule::new(&n, s.clone(), s.clone(), psi.matrix).unwrap();
        let g = triple_to_module(&glued, &lam, &tri.embedding).unwrap();
        // the glued module is the projective at the B-vertex
        let p = indec_projectives(&lam).unwrap();
        assert!(is_isomorphic(&g, &p[1], 0, 8).unwrap().is_isomorphic());
    }
}
