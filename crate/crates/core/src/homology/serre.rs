//! The Nakayama functor, Serre images of modules, injective and Gorenstein
//! dimensions.

use std::sync::Arc;

use crate::algebra::{Algebra, Triangular};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat};
use crate::module::{
    dual, dual_right, hom_basis, indec_injectives, indec_projectives, regular_module, LeftModule,
    RightModule, StandardModules,
};

use super::resolution::{is_projective, min_proj_resolution, proj_dim, Resolution};
use super::ChainComplex;

/// `ν p = D Hom_A(p, A)`. With `must_be_projective` the input is first
/// checked to be projective.
pub fn nakayama<F: Field>(p: &LeftModule<F>, must_be_projective: bool) -> Result<LeftModule<F>> {
    if must_be_projective && !is_projective(p)? {
        return Err(Error::NotProjective);
    }
    let alg = p.algebra();
    let f = p.field();
    let reg = regular_module(alg);
    let hom: Vec<Mat<F>> = hom_basis(p, &reg)?.into_iter().map(|h| h.matrix).collect();
    let len = alg.dim() * p.dim();
    let flat = |m: &Mat<F>| -> Vec<F::Elem> { (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect() };
    let stacked = Mat::from_columns(f, len, &hom.iter().map(flat).collect::<Vec<_>>());
    let coords = if hom.is_empty() {
        Mat::zeros(f, 0, len)
    } else {
        stacked.left_inverse().expect("independent hom basis")
    };
    // right action on Hom(p, A): (φ·a)(x) = φ(x) a
    let action = (0..alg.dim())
        .map(|b| {
            let r = alg.right_mult_matrix(&alg.basis_vector(b));
            let cols: Vec<Vec<F::Elem>> =
                hom.iter().map(|h| coords.mul_vec(&flat(&r.mul(h)))).collect();
            Mat::from_columns(f, hom.len(), &cols)
        })
        .collect();
    let right = RightModule::new_unchecked(alg.clone(), hom.len(), action);
    Ok(dual_right(&right))
}

/// `ν P_•` for a projective resolution: `ν P(i) = I(i)` and `ν` of right
/// multiplication by `a` is the transpose of left multiplication by `a`
/// between `e_jΛ` and `e_iΛ`.
pub fn nakayama_complex<F: Field>(res: &Resolution<F>) -> Result<ChainComplex<F>> {
    let alg = res.algebra();
    let std = alg.standard()?;
    let n = res.computed_terms();
    let modules = (0..n)
        .map(|t| injective_sum(alg, &std, res.term(t)))
        .collect();
    let differentials = (1..n).map(|t| nakayama_differential(res, &std, t)).collect();
    Ok(ChainComplex::new(modules, differentials))
}

fn injective_sum<F: Field>(
    alg: &Arc<Algebra<F>>,
    std: &StandardModules<F>,
    vertices: &[usize],
) -> LeftModule<F> {
    let parts: Vec<LeftModule<F>> = vertices
        .iter()
        .map(|&v| {
            let b = std.right_block(v);
            let action = b.action.iter().map(Mat::transpose).collect();
            LeftModule::new_unchecked(alg.clone(), b.dim(), action)
        })
        .collect();
    LeftModule::direct_sum(alg, &parts)
}

fn nakayama_differential<F: Field>(res: &Resolution<F>, std: &StandardModules<F>, t: usize) -> Mat<F> {
    let alg = res.algebra();
    let f = alg.field();
    let src = res.term(t);
    let tgt = res.term(t - 1);
    let dim = |v: usize| std.right_block(v).dim();
    let rows: usize = tgt.iter().map(|&v| dim(v)).sum();
    let cols: usize = src.iter().map(|&v| dim(v)).sum();
    let mut out = Mat::zeros(f, rows, cols);
    let comps = res.components(t);
    let mut col = 0;
    for (l, &j) in src.iter().enumerate() {
        let mut row = 0;
        for (k, &i) in tgt.iter().enumerate() {
            let a = &comps[l][k];
            if a.iter().any(|c| !f.is_zero(c)) {
                // e_iΛ -> e_jΛ, y ↦ a y
                let hom = std
                    .right_block(j)
                    .coords
                    .mul(&alg.left_mult_matrix(a))
                    .mul(&std.right_block(i).elements);
                out.set_block(row, col, &hom.transpose());
            }
            row += dim(i);
        }
        col += dim(j);
    }
    out
}

/// `S(x) ≅ image[degree]`.
#[derive(Clone, Debug)]
pub struct SerreImage<F: Field> {
    pub image: LeftModule<F>,
    pub degree: usize,
    pub resolution: Resolution<F>,
}

#[derive(Clone, Debug)]
pub enum SerreVerdict<F: Field> {
    Shifted(SerreImage<F>),
    /// The homology of `ν P_•` is not concentrated in one position.
    NotShifted { homology_dims: Vec<usize> },
}

/// Applies `ν` to a minimal projective resolution of `x`. When the
/// homology is concentrated in homological position `h` (cohomological
/// degree `-h`), `S(x) ≅ H_h[h]` and the degree is `h`.
pub fn serre_image<F: Field>(x: &LeftModule<F>, cutoff: usize) -> Result<SerreVerdict<F>> {
    let res = min_proj_resolution(x, cutoff)?;
    if !res.is_complete() {
        return Err(Error::ExceededCutoff { cutoff });
    }
    let complex = nakayama_complex(&res)?;
    debug_assert!(complex.d_squared_is_zero());
    let dims: Vec<usize> = (0..complex.len()).map(|t| complex.homology_dim(t)).collect();
    let nonzero: Vec<usize> = (0..dims.len()).filter(|&t| dims[t] > 0).collect();
    if nonzero.len() != 1 {
        return Ok(SerreVerdict::NotShifted {
            homology_dims: dims,
        });
    }
    let h = nonzero[0];
    Ok(SerreVerdict::Shifted(SerreImage {
        image: complex.homology(h),
        degree: h,
        resolution: res,
    }))
}

/// `inj.dim y = proj.dim D(y)` over the opposite algebra.
pub fn inj_dim<F: Field>(y: &LeftModule<F>, cutoff: usize) -> Result<Option<usize>> {
    proj_dim(dual(y).as_left_over_opposite(), cutoff)
}

/// Injective dimensions of the regular module on both sides; `None` marks
/// a resolution that exceeded the cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GorensteinDims {
    /// `inj.dim _A A`
    pub left: Option<usize>,
    /// `inj.dim A_A`
    pub right: Option<usize>,
}

impl GorensteinDims {
    pub fn is_gorenstein(&self) -> bool {
        self.left.is_some() && self.right.is_some()
    }
}

fn max_dims(dims: impl Iterator<Item = Result<Option<usize>>>) -> Result<Option<usize>> {
    let mut best = Some(0);
    for d in dims {
        match (best, d?) {
            (Some(b), Some(x)) => best = Some(b.max(x)),
            _ => best = None,
        }
    }
    Ok(best)
}

/// `inj.dim _A A = max_i inj.dim P(i)` and
/// `inj.dim A_A = max_i proj.dim I(i)`.
pub fn gorenstein<F: Field>(a: &Arc<Algebra<F>>, cutoff: usize) -> Result<GorensteinDims> {
    let left = max_dims(
        indec_projectives(a)?
            .iter()
            .map(|p| inj_dim(p, cutoff)),
    )?;
    let right = max_dims(
        indec_injectives(a)?
            .iter()
            .map(|i| proj_dim(i, cutoff)),
    )?;
    Ok(GorensteinDims { left, right })
}

/// The hypotheses of the Gorenstein criterion for a triangular algebra:
/// `A` and `B` Gorenstein, `proj.dim _A N` and `proj.dim N_B` finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GorensteinCriterion {
    pub a: GorensteinDims,
    pub b: GorensteinDims,
    pub pd_left_n: Option<usize>,
    pub pd_right_n: Option<usize>,
}

impl GorensteinCriterion {
    pub fn holds(&self) -> bool {
        self.a.is_gorenstein()
            && self.b.is_gorenstein()
            && self.pd_left_n.is_some()
            && self.pd_right_n.is_some()
    }
}

pub fn gorenstein_criterion<F: Field>(
    tri: &Triangular<F>,
    cutoff: usize,
) -> Result<GorensteinCriterion> {
    Ok(GorensteinCriterion {
        a: gorenstein(&tri.a, cutoff)?,
        b: gorenstein(&tri.b, cutoff)?,
        pd_left_n: proj_dim(tri.n.left(), cutoff)?,
        pd_right_n: proj_dim(tri.n.right().as_left_over_opposite(), cutoff)?,
    })
}
