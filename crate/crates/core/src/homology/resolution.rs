//! Radicals, tops and minimal projective resolutions.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBuilder, Field, Mat};
use crate::module::{LeftModule, StandardModules};

use super::ChainComplex;

/// `rad M = J·M` and the semisimple top `M / J·M`.
#[derive(Clone, Debug)]
pub struct RadicalTop<F: Field> {
    /// Columns span `J·M`.
    pub radical: Mat<F>,
    pub top: LeftModule<F>,
    /// `M -> top`.
    pub projection: Mat<F>,
}

fn radical_span<F: Field>(m: &LeftModule<F>) -> Result<EchelonBuilder<F>> {
    let basic = m.algebra().require_basic("radical of a module")?;
    let f = m.field();
    let mut eb = EchelonBuilder::new(f, m.dim());
    'outer: for r in basic.radical().columns() {
        let act = m.act(&r);
        for c in act.columns() {
            if eb.is_full() {
                break 'outer;
            }
            eb.push(c);
        }
    }
    Ok(eb)
}

pub fn radical_and_top<F: Field>(m: &LeftModule<F>) -> Result<RadicalTop<F>> {
    let f = m.field();
    let eb = radical_span(m)?;
    let radical = eb.to_mat().transpose();
    let radical = if radical.cols() == 0 {
        Mat::zeros(f, m.dim(), 0)
    } else {
        radical
    };
    let (top, q) = m.quotient(&radical);
    Ok(RadicalTop {
        radical,
        top,
        projection: q.projection,
    })
}

/// Generators of `M` modulo `J·M`, each lying in some `e_v M`:
/// `(vertex, vector)`.
pub fn top_generators<F: Field>(m: &LeftModule<F>) -> Result<Vec<(usize, Vec<F::Elem>)>> {
    let basic = m.algebra().require_basic("top of a module")?;
    let mut eb = radical_span(m)?;
    let mut out = Vec::new();
    for v in 0..basic.vertex_count() {
        if eb.is_full() {
            break;
        }
        let block = m.act(basic.idempotent(v)).image_basis();
        for c in block.columns() {
            if eb.push(c.clone()) {
                out.push((v, c));
            }
        }
    }
    Ok(out)
}

/// A minimal projective resolution `... -> P_1 -> P_0 -> M`.
///
/// `P_t = ⊕_k P(terms[t][k])`. The differential `d_t: P_t -> P_{t-1}`
/// sends the generator `e_{j_l}` of the `l`-th summand to
/// `Σ_k a_{lk}` with `a_{lk} ∈ e_{j_l} Λ e_{i_k}`, stored as
/// `components[t-1][l][k]` in algebra coordinates.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    algebra: Arc<Algebra<F>>,
    source_dim: usize,
    terms: Vec<Vec<usize>>,
    components: Vec<Vec<Vec<Vec<F::Elem>>>>,
    augmentation: Mat<F>,
    complete: bool,
    cutoff: usize,
}

/// Resolves `m` through `P_cutoff`; the resolution is complete when the
/// kernel after the last computed term vanishes.
pub fn min_proj_resolution<F: Field>(m: &LeftModule<F>, cutoff: usize) -> Result<Resolution<F>> {
    let alg = m.algebra().clone();
    let std = alg.standard()?;
    let f = m.field();
    let mut terms = Vec::new();
    let mut components = Vec::new();
    let mut augmentation = Mat::zeros(f, m.dim(), 0);

    // current kernel, as a module and as columns in the previous term
    let mut current = m.clone();
    let mut embedding: Option<Mat<F>> = None;
    let mut prev_offsets: Vec<usize> = Vec::new();
    let mut prev_vertices: Vec<usize> = Vec::new();
    let mut complete = false;
    for t in 0..=cutoff {
        if current.dim() == 0 {
            complete = true;
            break;
        }
        let gens = top_generators(&current)?;
        let vertices: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
        let (cover, offsets, total) = cover_map(&current, &gens, &std);
        if let Some(emb) = &embedding {
            let comps = gens
                .iter()
                .map(|(_, g)| {
                    let in_prev = emb.mul_vec(g);
                    split_components(&in_prev, &prev_vertices, &prev_offsets, &std)
                })
                .collect();
            components.push(comps);
        } else {
            augmentation = cover.clone();
        }
        terms.push(vertices.clone());
        let kernel = cover.kernel_basis();
        let kernel = if kernel.cols() == 0 {
            Mat::zeros(f, total, 0)
        } else {
            kernel
        };
        let pt = projective_sum(&alg, &std, &vertices);
        current = pt.submodule(&kernel);
        embedding = Some(kernel);
        prev_offsets = offsets;
        prev_vertices = vertices;
        if t == cutoff && current.dim() == 0 {
            complete = true;
        }
    }
    if m.dim() == 0 {
        terms.push(Vec::new());
        complete = true;
    }
    let res = Resolution {
        algebra: alg,
        source_dim: m.dim(),
        terms,
        components,
        augmentation,
        complete,
        cutoff,
    };
    // no differential may have a split summand
    debug_assert!(res.is_minimal());
    Ok(res)
}

/// The map `⊕ P(v_k) -> M` sending `e_{v_k}` to the `k`-th generator.
fn cover_map<F: Field>(
    m: &LeftModule<F>,
    gens: &[(usize, Vec<F::Elem>)],
    std: &StandardModules<F>,
) -> (Mat<F>, Vec<usize>, usize) {
    let f = m.field();
    let mut cols = Vec::new();
    let mut offsets = Vec::with_capacity(gens.len());
    for (v, g) in gens {
        offsets.push(cols.len());
        let block = std.left_block(*v);
        for s in 0..block.dim() {
            cols.push(m.act(&block.elements.column(s)).mul_vec(g));
        }
    }
    let total = cols.len();
    (Mat::from_columns(f, m.dim(), &cols), offsets, total)
}

fn split_components<F: Field>(
    v: &[F::Elem],
    vertices: &[usize],
    offsets: &[usize],
    std: &StandardModules<F>,
) -> Vec<Vec<F::Elem>> {
    vertices
        .iter()
        .zip(offsets)
        .map(|(&i, &off)| {
            let block = std.left_block(i);
            block.elements.mul_vec(&v[off..off + block.dim()])
        })
        .collect()
}

pub(crate) fn projective_sum<F: Field>(
    alg: &Arc<Algebra<F>>,
    std: &StandardModules<F>,
    vertices: &[usize],
) -> LeftModule<F> {
    let parts: Vec<LeftModule<F>> = vertices
        .iter()
        .map(|&v| {
            let b = std.left_block(v);
            LeftModule::new_unchecked(alg.clone(), b.dim(), b.action.clone())
        })
        .collect();
    LeftModule::direct_sum(alg, &parts)
}

impl<F: Field> Resolution<F> {
    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    /// Vertices of the summands of `P_t`, empty beyond the computed range.
    pub fn term(&self, t: usize) -> &[usize] {
        self.terms.get(t).map_or(&[], Vec::as_slice)
    }

    /// Number of computed terms.
    pub fn computed_terms(&self) -> usize {
        self.terms.len()
    }

    /// `a_{lk}` of `d_t` (`t >= 1`), empty when `d_t = 0`.
    pub fn components(&self, t: usize) -> &[Vec<Vec<F::Elem>>] {
        if t == 0 {
            return &[];
        }
        self.components.get(t - 1).map_or(&[], Vec::as_slice)
    }

    /// `P_0 -> M`.
    pub fn augmentation(&self) -> &Mat<F> {
        &self.augmentation
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Projective dimension, or `None` when the cutoff was exceeded.
    pub fn length(&self) -> Option<usize> {
        if !self.complete {
            return None;
        }
        Some(self.terms.iter().rposition(|t| !t.is_empty()).unwrap_or(0))
    }

    /// Whether `d_t` is known: computed, or zero because the resolution
    /// stopped.
    pub fn knows_differential(&self, t: usize) -> bool {
        t == 0 || t < self.terms.len() || self.complete
    }

    /// Every component of every differential lies in the radical, so no
    /// differential has a split summand.
    pub fn is_minimal(&self) -> bool {
        let Some(basic) = self.algebra.basic() else {
            return false;
        };
        let f = self.algebra.field();
        self.components.iter().flatten().flatten().all(|a| {
            basic
                .top_coefficients(a)
                .iter()
                .all(|c| f.is_zero(c))
        })
    }

    /// The module `P_t`.
    pub fn term_module(&self, t: usize) -> Result<LeftModule<F>> {
        let std = self.algebra.standard()?;
        Ok(projective_sum(&self.algebra, &std, self.term(t)))
    }

    /// Matrix of `d_t: P_t -> P_{t-1}`.
    pub fn differential(&self, t: usize) -> Result<Mat<F>> {
        let std = self.algebra.standard()?;
        let f = self.algebra.field();
        let src = self.term(t);
        let tgt = if t == 0 { &[][..] } else { self.term(t - 1) };
        let dims = |vs: &[usize]| -> Vec<usize> { vs.iter().map(|&v| std.left_block(v).dim()).collect() };
        let (sd, td) = (dims(src), dims(tgt));
        let mut out = Mat::zeros(f, td.iter().sum(), sd.iter().sum());
        let comps = self.components(t);
        let mut col = 0;
        for (l, &j) in src.iter().enumerate() {
            let mut row = 0;
            for (k, &i) in tgt.iter().enumerate() {
                let a = &comps[l][k];
                if a.iter().any(|c| !f.is_zero(c)) {
                    let block = std
                        .left_block(i)
                        .coords
                        .mul(&self.algebra.right_mult_matrix(a))
                        .mul(&std.left_block(j).elements);
                    out.set_block(row, col, &block);
                }
                row += td[k];
            }
            col += sd[l];
        }
        Ok(out)
    }

    /// `P_0 <- P_1 <- ... ` as a chain complex (without `M`).
    pub fn complex(&self) -> Result<ChainComplex<F>> {
        let n = self.terms.len();
        let modules = (0..n).map(|t| self.term_module(t)).collect::<Result<Vec<_>>>()?;
        let differentials = (1..n).map(|t| self.differential(t)).collect::<Result<Vec<_>>>()?;
        Ok(ChainComplex::new(modules, differentials))
    }

    pub(crate) fn require_differential(&self, t: usize) -> Result<()> {
        if self.knows_differential(t) {
            Ok(())
        } else {
            Err(Error::ExceededCutoff {
                cutoff: self.cutoff,
            })
        }
    }
}

/// Projective dimension, or `None` beyond the cutoff.
pub fn proj_dim<F: Field>(m: &LeftModule<F>, cutoff: usize) -> Result<Option<usize>> {
    Ok(min_proj_resolution(m, cutoff)?.length())
}

/// Whether `m` is projective: its projective cover has the same dimension.
pub fn is_projective<F: Field>(m: &LeftModule<F>) -> Result<bool> {
    Ok(min_proj_resolution(m, 0)?.is_complete())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_from_quiver, QuiverPresentation};
    use crate::linalg::Rationals;
    use crate::module::{indec_projectives, simples};

    fn q1() -> Arc<Algebra<Rationals>> {
        let q = QuiverPresentation::truncated_cycle(&["1", "2", "3", "4"], "a", 3);
        Arc::new(build_from_quiver(&q, Rationals, 64).unwrap())
    }

    #[test]
    fn radical_of_p4() {
        let a = q1();
        let p4 = &indec_projectives(&a).unwrap()[3];
        let rt = radical_and_top(p4).unwrap();
        assert_eq!(rt.radical.cols(), 2);
        assert_eq!(rt.top.dim(), 1);
        let s = &simples(&a).unwrap()[3];
        assert_eq!(rt.top.actions(), s.actions());
        let s_rt = radical_and_top(s).unwrap();
        assert_eq!(s_rt.radical.cols(), 0);
    }

    #[test]
    fn projectives_have_length_zero() {
        let a = q1();
        for p in indec_projectives(&a).unwrap() {
            let r = min_proj_resolution(&p, 4).unwrap();
            assert_eq!(r.length(), Some(0));
        }
    }

    #[test]
    fn simple_over_self_injective_nakayama_is_periodic() {
        let a = q1();
        let s1 = &simples(&a).unwrap()[0];
        let r = min_proj_resolution(s1, 8).unwrap();
        assert!(!r.is_complete());
        assert_eq!(r.length(), None);
        assert_eq!(r.computed_terms(), 9);
        assert!(r.terms.iter().all(|t| t.len() == 1));
        assert!(r.is_minimal());
        let c = r.complex().unwrap();
        assert!(c.d_squared_is_zero());
        // exact away from degree 0
        for t in 1..8 {
            assert_eq!(c.homology_dim(t), 0);
        }
        assert_eq!(c.homology_dim(0), 1);
    }
}
