//! Simple, indecomposable projective and indecomposable injective modules
//! of a basic algebra, built from its idempotents.

use std::sync::Arc;

use super::{LeftModule, RightModule};
use crate::algebra::Algebra;
use crate::error::Result;
use crate::linalg::{Field, Mat};

/// `Λe_i` or `e_iΛ` as a subspace of the algebra: `elements` has one column
/// per basis element of the block, `coords` recovers block coordinates
/// from algebra coordinates, `action[b]` is the matrix of left (for `Λe_i`)
/// or right (for `e_iΛ`) multiplication by the basis element `b`.
#[derive(Clone, Debug)]
pub struct PeirceBlock<F: Field> {
    pub elements: Mat<F>,
    pub coords: Mat<F>,
    pub action: Vec<Mat<F>>,
}

impl<F: Field> PeirceBlock<F> {
    pub fn dim(&self) -> usize {
        self.elements.cols()
    }
}

/// Per-vertex projective data, cached on the algebra.
#[derive(Debug)]
pub struct StandardModules<F: Field> {
    left: Vec<PeirceBlock<F>>,
    right: Vec<PeirceBlock<F>>,
}

impl<F: Field> StandardModules<F> {
    pub(crate) fn compute(alg: &Arc<Algebra<F>>) -> Result<Self> {
        let basic = alg.require_basic("projective modules")?;
        let n = alg.dim();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for v in 0..basic.vertex_count() {
            let e = basic.idempotent(v);
            let le = alg.right_mult_matrix(e).image_basis();
            let coords = le.left_inverse().expect("independent columns");
            let action = alg
                .left_regular()
                .iter()
                .map(|l| coords.mul(&l.mul(&le)))
                .collect();
            left.push(PeirceBlock {
                elements: le,
                coords,
                action,
            });

            let re = alg.left_mult_matrix(e).image_basis();
            let coords = re.left_inverse().expect("independent columns");
            let action = (0..n)
                .map(|b| {
                    coords.mul(&alg.right_mult_matrix(&alg.basis_vector(b)).mul(&re))
                })
                .collect();
            right.push(PeirceBlock {
                elements: re,
                coords,
                action,
            });
        }
        Ok(StandardModules { left, right })
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len()
    }

    /// `Λe_i`.
    pub fn left_block(&self, i: usize) -> &PeirceBlock<F> {
        &self.left[i]
    }

    /// `e_iΛ`.
    pub fn right_block(&self, i: usize) -> &PeirceBlock<F> {
        &self.right[i]
    }
}

/// The projective `P(i) = Λe_i`.
pub fn projective<F: Field>(alg: &Arc<Algebra<F>>, i: usize) -> Result<LeftModule<F>> {
    let s = alg.standard()?;
    let b = s.left_block(i);
    Ok(LeftModule::new_unchecked(alg.clone(), b.dim(), b.action.clone()))
}

/// The right projective `e_iΛ`.
pub fn right_projective<F: Field>(alg: &Arc<Algebra<F>>, i: usize) -> Result<RightModule<F>> {
    let s = alg.standard()?;
    let b = s.right_block(i);
    Ok(RightModule::new_unchecked(alg.clone(), b.dim(), b.action.clone()))
}

/// The injective `I(i) = D(e_iΛ)`, the injective envelope of `S(i)`.
pub fn injective<F: Field>(alg: &Arc<Algebra<F>>, i: usize) -> Result<LeftModule<F>> {
    let s = alg.standard()?;
    let b = s.right_block(i);
    let action = b.action.iter().map(Mat::transpose).collect();
    Ok(LeftModule::new_unchecked(alg.clone(), b.dim(), action))
}

/// The one-dimensional simple `S(i)`.
pub fn simple<F: Field>(alg: &Arc<Algebra<F>>, i: usize) -> Result<LeftModule<F>> {
    let basic = alg.require_basic("simple modules")?;
    let f = alg.field();
    let action = (0..alg.dim())
        .map(|b| {
            let c = basic.top_coefficients(&alg.basis_vector(b));
            Mat::from_vec(f, 1, 1, vec![c[i].clone()])
        })
        .collect();
    Ok(LeftModule::new_unchecked(alg.clone(), 1, action))
}

pub fn simples<F: Field>(alg: &Arc<Algebra<F>>) -> Result<Vec<LeftModule<F>>> {
    let n = alg.require_basic("simple modules")?.vertex_count();
    (0..n).map(|i| simple(alg, i)).collect()
}

pub fn indec_projectives<F: Field>(alg: &Arc<Algebra<F>>) -> Result<Vec<LeftModule<F>>> {
    let n = alg.require_basic("projective modules")?.vertex_count();
    (0..n).map(|i| projective(alg, i)).collect()
}

pub fn indec_injectives<F: Field>(alg: &Arc<Algebra<F>>) -> Result<Vec<LeftModule<F>>> {
    let n = alg.require_basic("injective modules")?.vertex_count();
    (0..n).map(|i| injective(alg, i)).collect()
}

/// The algebra as a left module over itself.
pub fn regular_module<F: Field>(alg: &Arc<Algebra<F>>) -> LeftModule<F> {
    LeftModule::new_unchecked(alg.clone(), alg.dim(), alg.left_regular().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_from_quiver, QuiverPresentation};
    use crate::linalg::Rationals;

    fn q1() -> Arc<Algebra<Rationals>> {
        let q = QuiverPresentation::truncated_cycle(&["1", "2", "3", "4"], "a", 3);
        Arc::new(build_from_quiver(&q, Rationals, 64).unwrap())
    }

    #[test]
    fn standard_modules_are_modules() {
        let a = q1();
        for m in simples(&a)
            .unwrap()
            .into_iter()
            .chain(indec_projectives(&a).unwrap())
            .chain(indec_injectives(&a).unwrap())
        {
            m.check().unwrap();
        }
        for i in 0..4 {
            right_projective(&a, i).unwrap().as_left_over_opposite().check().unwrap();
        }
    }

    #[test]
    fn q1_projectives_have_dimension_three() {
        let a = q1();
        let p = indec_projectives(&a).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.iter().all(|m| m.dim() == 3));
        assert_eq!(simples(&a).unwrap().len(), 4);
    }

    #[test]
    fn ground_field_standard_modules() {
        let k = Arc::new(Algebra::ground(Rationals));
        assert_eq!(simples(&k).unwrap()[0].dim(), 1);
        assert_eq!(indec_projectives(&k).unwrap()[0].dim(), 1);
    }

    #[test]
    fn structure_algebra_without_idempotents_is_unsupported() {
        let f = Rationals;
        let k = Algebra::from_structure(
            f,
            vec!["1".into()],
            vec![vec![vec![f.one()]]],
            vec![f.one()],
        )
        .unwrap();
        assert!(simples(&Arc::new(k)).is_err());
    }
}
