//! Modules as families of action matrices, homomorphisms between them, and
//! the constructions the triangular-algebra machinery needs: duals, tensor
//! products, triples.

mod hom;
mod standard;
mod tensor;
mod triple;

use std::sync::Arc;

pub use hom::{end_is_split_semisimple, hom_basis, is_isomorphic, IsoVerdict};
pub use standard::{
    indec_injectives, indec_projectives, injective, projective, regular_module, right_projective,
    simple, simples, PeirceBlock, StandardModules,
};
pub use tensor::{
    dual, dual_right, external_tensor, hom_module, psi_map, tensor_bimodule, tensor_over,
    theta_map, HomModule, TensorProduct,
};
pub use triple::{triple_to_module, TripleModule};

use crate::algebra::{Algebra, Word};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBuilder, Field, Mat};

/// A finite-dimensional left module: one `dim x dim` matrix per basis
/// element of the algebra.
#[derive(Clone, Debug)]
pub struct LeftModule<F: Field> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    action: Vec<Mat<F>>,
}

impl<F: Field> LeftModule<F> {
    /// Builds a module from one action matrix per basis element and checks
    /// the unit law and compatibility with the structure constants.
    pub fn new(algebra: Arc<Algebra<F>>, dim: usize, action: Vec<Mat<F>>) -> Result<Self> {
        if action.len() != algebra.dim()
            || action.iter().any(|m| m.rows() != dim || m.cols() != dim)
        {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices of size {dim} x {dim}",
                algebra.dim()
            )));
        }
        let m = LeftModule {
            algebra,
            dim,
            action,
        };
        m.check()?;
        Ok(m)
    }

    /// Builds a module from actions of the algebra generators only; the
    /// remaining basis elements act through their words.
    pub fn from_generators(
        algebra: Arc<Algebra<F>>,
        dim: usize,
        generator_action: impl Fn(usize) -> Option<Mat<F>>,
    ) -> Result<Self> {
        let n = algebra.dim();
        let mut action: Vec<Option<Mat<F>>> = vec![None; n];
        for (i, w) in algebra.words().iter().enumerate() {
            if *w == Word::Generator {
                let m = generator_action(i).ok_or_else(|| {
                    Error::InvalidModule(format!(
                        "missing action of generator `{}`",
                        algebra.labels()[i]
                    ))
                })?;
                action[i] = Some(m);
            }
        }
        fn fill<F: Field>(i: usize, words: &[Word], action: &mut Vec<Option<Mat<F>>>) {
            if action[i].is_some() {
                return;
            }
            let Word::Product(a, b) = words[i] else {
                unreachable!("generators are filled first")
            };
            fill(a, words, action);
            fill(b, words, action);
            let m = action[a].as_ref().unwrap().mul(action[b].as_ref().unwrap());
            action[i] = Some(m);
        }
        let words = algebra.words().to_vec();
        for i in 0..n {
            fill(i, &words, &mut action);
        }
        Self::new(algebra, dim, action.into_iter().map(Option::unwrap).collect())
    }

    pub(crate) fn new_unchecked(algebra: Arc<Algebra<F>>, dim: usize, action: Vec<Mat<F>>) -> Self {
        debug_assert_eq!(action.len(), algebra.dim());
        LeftModule {
            algebra,
            dim,
            action,
        }
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        let f = algebra.field();
        let action = vec![Mat::zeros(f, 0, 0); algebra.dim()];
        Self::new_unchecked(algebra, 0, action)
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> F {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Action of the `i`-th basis element.
    pub fn action(&self, i: usize) -> &Mat<F> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Mat<F>] {
        &self.action
    }

    /// Action of an arbitrary algebra element given in coordinates.
    pub fn act(&self, x: &[F::Elem]) -> Mat<F> {
        let f = self.field();
        let mut out = Mat::zeros(f, self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                out.add_scaled_assign(c, &self.action[i]);
            }
        }
        out
    }

    /// Unit law and `L(b_i) L(b_j) = sum_l c_ij^l L(b_l)` on every basis pair.
    pub fn check(&self) -> Result<()> {
        let f = self.field();
        if self.act(self.algebra.unit()) != Mat::identity(f, self.dim) {
            return Err(Error::InvalidModule("unit does not act as identity".into()));
        }
        let n = self.algebra.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = Mat::zeros(f, self.dim, self.dim);
                for (l, c) in self.algebra.product_of_basis(i, j) {
                    rhs.add_scaled_assign(c, &self.action[*l]);
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action incompatible with the product `{}` * `{}`",
                        self.algebra.labels()[i],
                        self.algebra.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn same_algebra(&self, other: &LeftModule<F>) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra.same_as(&other.algebra)
    }

    pub(crate) fn require_same_algebra(&self, other: &LeftModule<F>, what: &str) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(format!(
                "{what}: modules live over different algebras"
            )))
        }
    }

    pub fn direct_sum(algebra: &Arc<Algebra<F>>, parts: &[LeftModule<F>]) -> Self {
        let f = algebra.field();
        let dim = parts.iter().map(|p| p.dim).sum();
        let action = (0..algebra.dim())
            .map(|i| {
                let blocks: Vec<Mat<F>> = parts.iter().map(|p| p.action[i].clone()).collect();
                Mat::block_diag(f, &blocks)
            })
            .collect();
        Self::new_unchecked(algebra.clone(), dim, action)
    }

    /// The same vector space viewed over another (structurally equal)
    /// algebra handle.
    pub fn rebase(&self, algebra: &Arc<Algebra<F>>) -> Result<Self> {
        if !algebra.same_as(&self.algebra) {
            return Err(Error::AlgebraMismatch("rebase onto a different algebra".into()));
        }
        Ok(Self::new_unchecked(algebra.clone(), self.dim, self.action.clone()))
    }

    /// Submodule spanned by the columns of `basis` (assumed independent
    /// and closed under the action).
    pub fn submodule(&self, basis: &Mat<F>) -> LeftModule<F> {
        let f = self.field();
        let k = basis.cols();
        if k == 0 {
            return LeftModule::zero(self.algebra.clone());
        }
        let left = basis.left_inverse().expect("submodule basis must be independent");
        let action = self
            .action
            .iter()
            .map(|a| left.mul(&a.mul(basis)))
            .collect();
        debug_assert!(self
            .action
            .iter()
            .all(|a| a.mul(basis).sub(&basis.mul(&left.mul(&a.mul(basis)))).is_zero()));
        let _ = f;
        Self::new_unchecked(self.algebra.clone(), k, action)
    }

    /// Quotient by the span of `relations` (columns, closed under the
    /// action), with the projection onto it.
    pub fn quotient(&self, relations: &Mat<F>) -> (LeftModule<F>, Quotient<F>) {
        let q = Quotient::new(self.field(), self.dim, relations);
        let action = self
            .action
            .iter()
            .map(|a| q.projection.mul(&a.mul(&q.section)))
            .collect();
        (
            Self::new_unchecked(self.algebra.clone(), q.dim(), action),
            q,
        )
    }

    /// The submodule generated by the given vectors.
    pub fn generated_submodule(&self, vectors: &Mat<F>) -> Mat<F> {
        let f = self.field();
        let mut cols: Vec<Vec<F::Elem>> = Vec::new();
        for a in &self.action {
            cols.extend(a.mul(vectors).columns());
        }
        Mat::from_columns(f, self.dim, &cols).image_basis()
    }
}

/// A quotient of a coordinate space `k^n` by a subspace, with a
/// deterministic complement: the coordinates that are not pivots of the
/// reduced echelon form of the relations.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    pub projection: Mat<F>,
    pub section: Mat<F>,
}

impl<F: Field> Quotient<F> {
    pub fn new(field: F, ambient: usize, relations: &Mat<F>) -> Self {
        let mut eb = EchelonBuilder::new(field, ambient);
        for c in relations.columns() {
            if eb.is_full() {
                break;
            }
            eb.push(c);
        }
        Self::from_echelon(field, ambient, &eb)
    }

    pub fn from_echelon(field: F, ambient: usize, eb: &EchelonBuilder<F>) -> Self {
        let rref = eb.to_mat().rref();
        let mut is_pivot = vec![false; ambient];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..ambient).filter(|&c| !is_pivot[c]).collect();
        let mut projection = Mat::zeros(field, free.len(), ambient);
        let mut section = Mat::zeros(field, ambient, free.len());
        for (qi, &c) in free.iter().enumerate() {
            projection[(qi, c)] = field.one();
            section[(c, qi)] = field.one();
            for (r, &p) in rref.pivots.iter().enumerate() {
                let v = &rref.matrix[(r, c)];
                if !field.is_zero(v) {
                    projection[(qi, p)] = field.neg(v);
                }
            }
        }
        Quotient {
            projection,
            section,
        }
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

/// A right module, stored as a left module over the opposite algebra.
#[derive(Clone, Debug)]
pub struct RightModule<F: Field> {
    base: Arc<Algebra<F>>,
    inner: LeftModule<F>,
}

impl<F: Field> RightModule<F> {
    /// `inner` must be a module over `base.opposite_arc()` (checked
    /// structurally).
    pub fn new(base: Arc<Algebra<F>>, inner: LeftModule<F>) -> Result<Self> {
        let op = base.opposite_arc();
        if !Arc::ptr_eq(&op, inner.algebra()) && !op.same_as(inner.algebra()) {
            return Err(Error::AlgebraMismatch(
                "right module must be a left module over the opposite algebra".into(),
            ));
        }
        Ok(RightModule { base, inner })
    }

    /// Builds a right module from matrices `R(b)` with `m . b = R(b) m`.
    pub fn from_actions(base: Arc<Algebra<F>>, dim: usize, action: Vec<Mat<F>>) -> Result<Self> {
        let inner = LeftModule::new(base.opposite_arc(), dim, action)?;
        Ok(RightModule { base, inner })
    }

    pub(crate) fn new_unchecked(base: Arc<Algebra<F>>, dim: usize, action: Vec<Mat<F>>) -> Self {
        let inner = LeftModule::new_unchecked(base.opposite_arc(), dim, action);
        RightModule { base, inner }
    }

    /// The algebra acting on the right.
    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.base
    }

    pub fn as_left_over_opposite(&self) -> &LeftModule<F> {
        &self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Matrix of `m -> m . b_i`.
    pub fn action(&self, i: usize) -> &Mat<F> {
        self.inner.action(i)
    }

    pub fn act(&self, x: &[F::Elem]) -> Mat<F> {
        self.inner.act(x)
    }
}

/// An `A`-`B`-bimodule: left `A`-action and right `B`-action on one space.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    left: LeftModule<F>,
    right: RightModule<F>,
}

impl<F: Field> Bimodule<F> {
    /// Checks that the two actions live on the same space and commute.
    pub fn new(left: LeftModule<F>, right: RightModule<F>) -> Result<Self> {
        if left.field() != right.inner.field() {
            return Err(Error::FieldMismatch("bimodule actions over different fields".into()));
        }
        if left.dim() != right.dim() {
            return Err(Error::DimensionMismatch(
                "left and right actions act on spaces of different dimension".into(),
            ));
        }
        for a in left.algebra().generators() {
            for b in right.algebra().generators() {
                let la = left.action(a);
                let rb = right.action(b);
                if la.mul(rb) != rb.mul(la) {
                    return Err(Error::InvalidModule(format!(
                        "left action of `{}` does not commute with right action of `{}`",
                        left.algebra().labels()[a],
                        right.algebra().labels()[b]
                    )));
                }
            }
        }
        Ok(Bimodule { left, right })
    }

    pub(crate) fn new_unchecked(left: LeftModule<F>, right: RightModule<F>) -> Self {
        Bimodule { left, right }
    }

    pub fn left(&self) -> &LeftModule<F> {
        &self.left
    }

    pub fn right(&self) -> &RightModule<F> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    pub fn left_algebra(&self) -> &Arc<Algebra<F>> {
        self.left.algebra()
    }

    pub fn right_algebra(&self) -> &Arc<Algebra<F>> {
        self.right.algebra()
    }

    /// The zero bimodule.
    pub fn zero(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>) -> Self {
        let left = LeftModule::zero(a.clone());
        let right = RightModule {
            base: b.clone(),
            inner: LeftModule::zero(b.opposite_arc()),
        };
        Bimodule { left, right }
    }
}

/// A module homomorphism, as the matrix taking source coordinates to
/// target coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleHom<F: Field> {
    pub matrix: Mat<F>,
}

impl<F: Field> ModuleHom<F> {
    pub fn new(matrix: Mat<F>) -> Self {
        ModuleHom { matrix }
    }

    /// Whether the matrix intertwines the actions of `source` and `target`.
    pub fn is_homomorphism(&self, source: &LeftModule<F>, target: &LeftModule<F>) -> bool {
        self.matrix.rows() == target.dim()
            && self.matrix.cols() == source.dim()
            && (0..source.algebra().dim()).all(|i| {
                self.matrix.mul(source.action(i)) == target.action(i).mul(&self.matrix)
            })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Submodule `Z` modulo submodule `B` (columns in ambient coordinates,
/// `B` contained in `Z`), returned as a module.
pub fn subquotient<F: Field>(
    ambient: &LeftModule<F>,
    cycles: &Mat<F>,
    boundaries: &Mat<F>,
) -> LeftModule<F> {
    let f = ambient.field();
    let z = ambient.submodule(cycles);
    if cycles.cols() == 0 {
        return z;
    }
    let coords = cycles.left_inverse().expect("independent cycles");
    let b_in_z = if boundaries.cols() == 0 {
        Mat::zeros(f, cycles.cols(), 0)
    } else {
        coords.mul(boundaries)
    };
    z.quotient(&b_in_z).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_from_quiver, QuiverPresentation};
    use crate::linalg::Rationals;

    #[test]
    fn from_generators_fills_paths() {
        let a = Arc::new(
            build_from_quiver(&QuiverPresentation::linear(3, vec![]), Rationals, 8).unwrap(),
        );
        // the representation k -1-> k -1-> k
        let q = Rationals;
        let e = |i: usize| {
            let mut m = Mat::zeros(q, 3, 3);
            m[(i, i)] = q.one();
            m
        };
        let arrow = |from: usize, to: usize| {
            let mut m = Mat::zeros(q, 3, 3);
            m[(to, from)] = q.one();
            m
        };
        let m = LeftModule::from_generators(a.clone(), 3, |i| match a.labels()[i].as_str() {
            "e_1" => Some(e(0)),
            "e_2" => Some(e(1)),
            "e_3" => Some(e(2)),
            "a1" => Some(arrow(0, 1)),
            "a2" => Some(arrow(1, 2)),
            _ => None,
        })
        .unwrap();
        let path = a.label_index("a1.a2").unwrap();
        assert_eq!(m.action(path), &arrow(0, 2));
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let a = Arc::new(
            build_from_quiver(&QuiverPresentation::linear(2, vec![]), Rationals, 8).unwrap(),
        );
        let q = Rationals;
        // arrow acting from the wrong vertex space
        let err = LeftModule::from_generators(a.clone(), 2, |i| {
            Some(match a.labels()[i].as_str() {
                "e_1" => Mat::from_i64(q, &[&[1, 0], &[0, 0]]),
                "e_2" => Mat::from_i64(q, &[&[0, 0], &[0, 1]]),
                _ => Mat::from_i64(q, &[&[0, 1], &[0, 0]]),
            })
        })
        .unwrap_err();
        assert!(matches!(err, Error::InvalidModule(_)));
    }
}
