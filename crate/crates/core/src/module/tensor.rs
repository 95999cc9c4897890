//! Duals, tensor products over an algebra, the bimodule `E ⊗_k D(F)`,
//! `Hom_A(N, Y)` as a module over the right algebra of `N`, and the
//! evaluation maps `Ψ` and `Θ`.

use super::{hom_basis, Bimodule, LeftModule, ModuleHom, Quotient, RightModule};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat};

/// `D(m)`: the linear dual of a left `A`-module, a right `A`-module with
/// `(φ·a)(x) = φ(a x)`.
pub fn dual<F: Field>(m: &LeftModule<F>) -> RightModule<F> {
    let action = m.actions().iter().map(Mat::transpose).collect();
    RightModule::new_unchecked(m.algebra().clone(), m.dim(), action)
}

/// `D(m)` for a right module: a left module with `(a·φ)(x) = φ(x a)`.
pub fn dual_right<F: Field>(m: &RightModule<F>) -> LeftModule<F> {
    let inner = m.as_left_over_opposite();
    let action = inner.actions().iter().map(Mat::transpose).collect();
    LeftModule::new_unchecked(m.algebra().clone(), m.dim(), action)
}

/// `m ⊗_B y` realised as a quotient of `m ⊗_k y`; the pure tensor
/// `m_i ⊗ y_j` has unreduced index `i * y_dim + j`.
#[derive(Clone, Debug)]
pub struct TensorProduct<F: Field> {
    pub quotient: Quotient<F>,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl<F: Field> TensorProduct<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Matrix `k^{left_dim * right_dim} -> m ⊗_B y`.
    pub fn projection(&self) -> &Mat<F> {
        &self.quotient.projection
    }

    pub fn section(&self) -> &Mat<F> {
        &self.quotient.section
    }
}

/// The balanced tensor product: `m ⊗_k y` modulo
/// `m·g ⊗ y − m ⊗ g·y` for the algebra generators `g`.
pub fn tensor_over<F: Field>(m: &RightModule<F>, y: &LeftModule<F>) -> Result<TensorProduct<F>> {
    let b = m.algebra();
    if !(std::sync::Arc::ptr_eq(b, y.algebra()) || b.same_as(y.algebra())) {
        return Err(Error::AlgebraMismatch(
            "tensor product of modules over different algebras".into(),
        ));
    }
    let f = y.field();
    let (dm, dy) = (m.dim(), y.dim());
    let im = Mat::identity(f, dm);
    let iy = Mat::identity(f, dy);
    let mut relations = Mat::zeros(f, dm * dy, 0);
    for g in b.generators() {
        let r = m.action(g).kron(&iy).sub(&im.kron(y.action(g)));
        if !r.is_zero() {
            relations = relations.hstack(&r);
        }
    }
    Ok(TensorProduct {
        quotient: Quotient::new(f, dm * dy, &relations),
        left_dim: dm,
        right_dim: dy,
    })
}

/// `N ⊗_B y` for an `A`-`B`-bimodule `N`, with its residual left
/// `A`-action.
pub fn tensor_bimodule<F: Field>(
    n: &Bimodule<F>,
    y: &LeftModule<F>,
) -> Result<(LeftModule<F>, TensorProduct<F>)> {
    let t = tensor_over(n.right(), y)?;
    let iy = Mat::identity(y.field(), y.dim());
    let action = n
        .left()
        .actions()
        .iter()
        .map(|l| t.projection().mul(&l.kron(&iy)).mul(t.section()))
        .collect();
    let module = LeftModule::new_unchecked(n.left_algebra().clone(), t.dim(), action);
    Ok((module, t))
}

/// `e ⊗_k f_dual` with `A` acting on the first factor and `B` on the
/// second; `e_i ⊗ φ_j` has index `i * f_dual.dim() + j`.
pub fn external_tensor<F: Field>(e: &LeftModule<F>, f_dual: &RightModule<F>) -> Result<Bimodule<F>> {
    let f = e.field();
    if f != f_dual.algebra().field() {
        return Err(Error::FieldMismatch("external tensor over different fields".into()));
    }
    let ie = Mat::identity(f, e.dim());
    let id = Mat::identity(f, f_dual.dim());
    let left = e.actions().iter().map(|l| l.kron(&id)).collect();
    let right = f_dual
        .as_left_over_opposite()
        .actions()
        .iter()
        .map(|r| ie.kron(r))
        .collect();
    let dim = e.dim() * f_dual.dim();
    Ok(Bimodule::new_unchecked(
        LeftModule::new_unchecked(e.algebra().clone(), dim, left),
        RightModule::new_unchecked(f_dual.algebra().clone(), dim, right),
    ))
}

/// `Ψ: (e ⊗_k D(f)) ⊗_B f -> e`, `a ⊗ φ ⊗ b ↦ φ(b) a`, together with the
/// bimodule `e ⊗_k D(f)` and the tensor product it is defined on.
pub fn psi_map<F: Field>(
    e: &LeftModule<F>,
    f: &LeftModule<F>,
) -> Result<(ModuleHom<F>, Bimodule<F>, TensorProduct<F>)> {
    let k = e.field();
    let n = external_tensor(e, &dual(f))?;
    let t = tensor_over(n.right(), f)?;
    let (de, df) = (e.dim(), f.dim());
    let mut unreduced = Mat::zeros(k, de, de * df * df);
    for i in 0..de {
        for j in 0..df {
            unreduced[(i, (i * df + j) * df + j)] = k.one();
        }
    }
    let psi = unreduced.mul(t.section());
    Ok((ModuleHom::new(psi), n, t))
}

/// `Hom_A(N, Y)` for an `A`-`B`-bimodule `N`, as a left `B`-module via
/// `(b·f)(x) = f(x b)`.
#[derive(Clone, Debug)]
pub struct HomModule<F: Field> {
    pub module: LeftModule<F>,
    /// Basis homomorphisms `N -> Y`, in the module's coordinates.
    pub basis: Vec<Mat<F>>,
    pub target_dim: usize,
}

pub fn hom_module<F: Field>(n: &Bimodule<F>, y: &LeftModule<F>) -> Result<HomModule<F>> {
    let f = y.field();
    let basis: Vec<Mat<F>> = hom_basis(n.left(), y)?.into_iter().map(|h| h.matrix).collect();
    let b = n.right_algebra();
    let len = y.dim() * n.dim();
    let flat = |m: &Mat<F>| -> Vec<F::Elem> { (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect() };
    let stacked = Mat::from_columns(f, len, &basis.iter().map(flat).collect::<Vec<_>>());
    let coords = if basis.is_empty() {
        Mat::zeros(f, 0, len)
    } else {
        stacked.left_inverse().expect("hom basis is independent")
    };
    let action = (0..b.dim())
        .map(|i| {
            let r = n.right().action(i);
            let cols: Vec<Vec<F::Elem>> = basis
                .iter()
                .map(|h| coords.mul_vec(&flat(&h.mul(r))))
                .collect();
            Mat::from_columns(f, basis.len(), &cols)
        })
        .collect();
    Ok(HomModule {
        module: LeftModule::new_unchecked(b.clone(), basis.len(), action),
        basis,
        target_dim: y.dim(),
    })
}

/// `Θ: N ⊗_B Hom_A(N, Y) -> Y`, `x ⊗ f ↦ f(x)`, with the tensor product it
/// is defined on.
pub fn theta_map<F: Field>(
    n: &Bimodule<F>,
    hom: &HomModule<F>,
) -> Result<(ModuleHom<F>, TensorProduct<F>)> {
    let f = n.left().field();
    let t = tensor_over(n.right(), &hom.module)?;
    let dh = hom.basis.len();
    let dy = hom.target_dim;
    let mut unreduced = Mat::zeros(f, dy, n.dim() * dh);
    for s in 0..n.dim() {
        for (t_idx, h) in hom.basis.iter().enumerate() {
            for r in 0..dy {
                unreduced[(r, s * dh + t_idx)] = h[(r, s)].clone();
            }
        }
    }
    Ok((ModuleHom::new(unreduced.mul(t.section())), t))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{build_from_quiver, Algebra, QuiverPresentation};
    use crate::linalg::Rationals;
    use crate::module::{indec_projectives, is_isomorphic, simples};

    fn q1() -> Arc<Algebra<Rationals>> {
        let q = QuiverPresentation::truncated_cycle(&["1", "2", "3", "4"], "a", 3);
        Arc::new(build_from_quiver(&q, Rationals, 64).unwrap())
    }

    fn q2() -> Arc<Algebra<Rationals>> {
        let q = QuiverPresentation::truncated_cycle(&["1'", "2'", "3'", "4'", "5'", "6'"], "b", 3);
        Arc::new(build_from_quiver(&q, Rationals, 64).unwrap())
    }

    #[test]
    fn double_dual_is_isomorphic() {
        let a = q1();
        for p in indec_projectives(&a).unwrap() {
            let dd = dual_right(&dual(&p));
            assert!(is_isomorphic(&p, &dd, 0, 8).unwrap().is_isomorphic());
        }
    }

    #[test]
    fn dual_is_a_right_module() {
        let b = q2();
        let p5 = &indec_projectives(&b).unwrap()[4];
        let d = dual(p5);
        assert_eq!(d.dim(), 3);
        d.as_left_over_opposite().check().unwrap();
    }

    #[test]
    fn tensor_with_dual_projective() {
        let b = q2();
        let p5 = &indec_projectives(&b).unwrap()[4];
        assert_eq!(tensor_over(&dual(p5), p5).unwrap().dim(), 1);
        let k = Arc::new(Algebra::ground(Rationals));
        let s = &simples(&k).unwrap()[0];
        assert_eq!(tensor_over(&dual(s), s).unwrap().dim(), 1);
    }

    #[test]
    fn psi_on_the_example_bimodule() {
        let (a, b) = (q1(), q2());
        let p2 = &indec_projectives(&a).unwrap()[1];
        let p5 = &indec_projectives(&b).unwrap()[4];
        let (psi, n, t) = psi_map(p2, p5).unwrap();
        assert_eq!(n.dim(), 9);
        Bimodule::new(n.left().clone(), n.right().clone()).unwrap();
        let (np5, _) = tensor_bimodule(&n, p5).unwrap();
        assert_eq!(t.dim(), 3);
        assert!(is_isomorphic(&np5, p2, 0, 8).unwrap().is_isomorphic());
        assert_eq!(psi.rank(), 3);
        assert!(psi.is_homomorphism(&np5, p2));
    }

    #[test]
    fn theta_is_a_homomorphism() {
        let (a, b) = (q1(), q2());
        let p2 = &indec_projectives(&a).unwrap()[1];
        let p5 = &indec_projectives(&b).unwrap()[4];
        let n = external_tensor(p2, &dual(p5)).unwrap();
        for y in indec_projectives(&a).unwrap() {
            let h = hom_module(&n, &y).unwrap();
            h.module.check().unwrap();
            let (theta, _) = theta_map(&n, &h).unwrap();
            let (nh, _) = tensor_bimodule(&n, &h.module).unwrap();
            assert!(theta.is_homomorphism(&nh, &y));
        }
    }
}
