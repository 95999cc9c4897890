//! Resolutions, Ext and Tor, the Nakayama functor, Serre images and
//! Gorenstein dimensions.

mod derived;
mod resolution;
mod serre;

pub use derived::{
    ext_bimodule, ext_cocycles, ext_dim, ext_dims, tor_bimodule, tor_dim, tor_dims,
};
pub use resolution::{
    is_projective, min_proj_resolution, proj_dim, radical_and_top, top_generators, RadicalTop,
    Resolution,
};
pub use serre::{
    gorenstein, gorenstein_criterion, inj_dim, nakayama, nakayama_complex, serre_image,
    GorensteinCriterion, GorensteinDims, SerreImage, SerreVerdict,
};

use crate::linalg::{Field, Mat};
use crate::module::{subquotient, LeftModule};

/// `C_0 <- C_1 <- C_2 <- ...`; `differentials[t]` is `d_{t+1}: C_{t+1} -> C_t`.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: Field> {
    modules: Vec<LeftModule<F>>,
    differentials: Vec<Mat<F>>,
}

impl<F: Field> ChainComplex<F> {
    pub fn new(modules: Vec<LeftModule<F>>, differentials: Vec<Mat<F>>) -> Self {
        debug_assert_eq!(differentials.len() + 1, modules.len().max(1));
        ChainComplex {
            modules,
            differentials,
        }
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn module(&self, t: usize) -> &LeftModule<F> {
        &self.modules[t]
    }

    /// `d_t: C_t -> C_{t-1}` for `1 <= t < len`.
    pub fn differential(&self, t: usize) -> &Mat<F> {
        &self.differentials[t - 1]
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// Every differential is a module homomorphism.
    pub fn differentials_are_homomorphisms(&self) -> bool {
        (1..self.len()).all(|t| {
            let d = self.differential(t);
            let (src, tgt) = (&self.modules[t], &self.modules[t - 1]);
            (0..src.algebra().dim()).all(|i| d.mul(src.action(i)) == tgt.action(i).mul(d))
        })
    }

    fn rank_out(&self, t: usize) -> usize {
        if t == 0 || t >= self.len() {
            0
        } else {
            self.differential(t).rank()
        }
    }

    pub fn homology_dim(&self, t: usize) -> usize {
        if t >= self.len() {
            return 0;
        }
        self.modules[t].dim() - self.rank_out(t) - self.rank_out(t + 1)
    }

    /// `H_t` as a module.
    pub fn homology(&self, t: usize) -> LeftModule<F> {
        let m = &self.modules[t];
        let f = m.field();
        let cycles = if t == 0 {
            Mat::identity(f, m.dim())
        } else {
            let k = self.differential(t).kernel_basis();
            if k.cols() == 0 {
                Mat::zeros(f, m.dim(), 0)
            } else {
                k
            }
        };
        let boundaries = if t + 1 < self.len() {
            self.differential(t + 1).image_basis()
        } else {
            Mat::zeros(f, m.dim(), 0)
        };
        let boundaries = if boundaries.cols() == 0 {
            Mat::zeros(f, m.dim(), 0)
        } else {
            boundaries
        };
        subquotient(m, &cycles, &boundaries)
    }
}
