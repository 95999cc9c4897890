//! Ext and Tor from minimal projective resolutions.

use crate::error::Result;
use crate::linalg::{Field, Mat};
use crate::module::{
    dual, dual_right, subquotient, Bimodule, LeftModule, Quotient, RightModule,
};

use super::resolution::{min_proj_resolution, Resolution};

/// Basis of `e_v X` (columns) and its left inverse, for every vertex.
struct VertexSpaces<F: Field> {
    bases: Vec<Mat<F>>,
    coords: Vec<Mat<F>>,
}

impl<F: Field> VertexSpaces<F> {
    /// `e_v X` as the image of `act(e_v)`.
    fn new(field: F, dim: usize, idempotent_actions: impl Iterator<Item = Mat<F>>) -> Self {
        let mut bases = Vec::new();
        let mut coords = Vec::new();
        for e in idempotent_actions {
            let b = e.image_basis();
            let c = if b.cols() == 0 {
                Mat::zeros(field, 0, dim)
            } else {
                b.left_inverse().expect("independent columns")
            };
            bases.push(b);
            coords.push(c);
        }
        VertexSpaces { bases, coords }
    }

    fn dim(&self, v: usize) -> usize {
        self.bases[v].cols()
    }

    fn total(&self, vertices: &[usize]) -> usize {
        vertices.iter().map(|&v| self.dim(v)).sum()
    }
}

fn left_spaces<F: Field>(x: &LeftModule<F>) -> Result<VertexSpaces<F>> {
    let basic = x.algebra().require_basic("Ext")?;
    Ok(VertexSpaces::new(
        x.field(),
        x.dim(),
        (0..basic.vertex_count()).map(|v| x.act(basic.idempotent(v))),
    ))
}

/// The complex `⊕_{P_t} e_v X` with blocks `act(a_{lk})`, where `act` is a
/// left action of the algebra on `X`. With `transpose_blocks` false this is
/// `Hom(P_•, X)` (maps `C^t -> C^{t+1}`); the same blocks, read as maps
/// `C_{t+1} -> C_t`, give `D(X) ⊗ P_•` after transposition, but Tor is
/// assembled separately below.
fn hom_coboundary<F: Field>(
    res: &Resolution<F>,
    spaces: &VertexSpaces<F>,
    act: &dyn Fn(&[F::Elem]) -> Mat<F>,
    t: usize,
) -> Mat<F> {
    let f = res.algebra().field();
    let src = res.term(t);
    let tgt = res.term(t + 1);
    let mut out = Mat::zeros(f, spaces.total(tgt), spaces.total(src));
    let comps = res.components(t + 1);
    let mut row = 0;
    for (l, &j) in tgt.iter().enumerate() {
        let mut col = 0;
        for (k, &i) in src.iter().enumerate() {
            let a = &comps[l][k];
            if spaces.dim(i) > 0 && spaces.dim(j) > 0 && a.iter().any(|c| !f.is_zero(c)) {
                let block = spaces.coords[j].mul(&act(a)).mul(&spaces.bases[i]);
                out.set_block(row, col, &block);
            }
            col += spaces.dim(i);
        }
        row += spaces.dim(j);
    }
    out
}

/// The chain differential `⊕_{P_{t+1}} X e_j -> ⊕_{P_t} X e_i` with blocks
/// `act(a_{lk})` for a right action `act`.
fn tensor_boundary<F: Field>(
    res: &Resolution<F>,
    spaces: &VertexSpaces<F>,
    act: &dyn Fn(&[F::Elem]) -> Mat<F>,
    t: usize,
) -> Mat<F> {
    let f = res.algebra().field();
    let src = res.term(t + 1);
    let tgt = res.term(t);
    let mut out = Mat::zeros(f, spaces.total(tgt), spaces.total(src));
    let comps = res.components(t + 1);
    let mut col = 0;
    for (l, &j) in src.iter().enumerate() {
        let mut row = 0;
        for (k, &i) in tgt.iter().enumerate() {
            let a = &comps[l][k];
            if spaces.dim(i) > 0 && spaces.dim(j) > 0 && a.iter().any(|c| !f.is_zero(c)) {
                let block = spaces.coords[i].mul(&act(a)).mul(&spaces.bases[j]);
                out.set_block(row, col, &block);
            }
            row += spaces.dim(i);
        }
        col += spaces.dim(j);
    }
    out
}

impl<F: Field> Resolution<F> {
    /// `dim Ext^t(M, n)` for the resolved module `M`.
    pub fn ext_dim(&self, n: &LeftModule<F>, t: usize) -> Result<usize> {
        Ok(self.ext_dims(n, t)?[t])
    }

    /// `dim Ext^s(M, n)` for `0 <= s <= tmax`.
    pub fn ext_dims(&self, n: &LeftModule<F>, tmax: usize) -> Result<Vec<usize>> {
        self.require_differential(tmax + 1)?;
        let spaces = left_spaces(n)?;
        let act = |a: &[F::Elem]| n.act(a);
        let ranks: Vec<usize> = (0..=tmax)
            .map(|s| hom_coboundary(self, &spaces, &act, s).rank())
            .collect();
        Ok((0..=tmax)
            .map(|s| {
                let c = spaces.total(self.term(s));
                c - ranks[s] - if s == 0 { 0 } else { ranks[s - 1] }
            })
            .collect())
    }

    /// Cocycles in `⊕_{P_t} e_v n` representing a basis of `Ext^t(M, n)`.
    pub fn ext_cocycles(&self, n: &LeftModule<F>, t: usize) -> Result<Mat<F>> {
        self.require_differential(t + 1)?;
        let spaces = left_spaces(n)?;
        let act = |a: &[F::Elem]| n.act(a);
        let f = n.field();
        let c = spaces.total(self.term(t));
        let cycles = hom_coboundary(self, &spaces, &act, t).kernel_basis();
        let boundaries = if t == 0 {
            Mat::zeros(f, c, 0)
        } else {
            hom_coboundary(self, &spaces, &act, t - 1).image_basis()
        };
        if cycles.cols() == 0 {
            return Ok(Mat::zeros(f, c, 0));
        }
        let coords = cycles.left_inverse().expect("independent cycles");
        let q = Quotient::new(f, cycles.cols(), &coords.mul(&boundaries));
        Ok(cycles.mul(&q.section))
    }

    /// `dim Tor_t(m, N)` for the resolved module `N`.
    pub fn tor_dim(&self, m: &RightModule<F>, t: usize) -> Result<usize> {
        Ok(self.tor_dims(m, t)?[t])
    }

    pub fn tor_dims(&self, m: &RightModule<F>, tmax: usize) -> Result<Vec<usize>> {
        self.require_differential(tmax + 1)?;
        let spaces = right_spaces(m)?;
        let act = |a: &[F::Elem]| m.act(a);
        let ranks: Vec<usize> = (0..=tmax)
            .map(|s| tensor_boundary(self, &spaces, &act, s).rank())
            .collect();
        Ok((0..=tmax)
            .map(|s| {
                let c = spaces.total(self.term(s));
                c - ranks[s] - if s == 0 { 0 } else { ranks[s - 1] }
            })
            .collect())
    }
}

fn right_spaces<F: Field>(m: &RightModule<F>) -> Result<VertexSpaces<F>> {
    let basic = m.algebra().require_basic("Tor")?;
    Ok(VertexSpaces::new(
        m.as_left_over_opposite().field(),
        m.dim(),
        (0..basic.vertex_count()).map(|v| m.act(basic.idempotent(v))),
    ))
}

/// `dim Ext^t(m, n)`; resolves `m` as far as needed.
pub fn ext_dim<F: Field>(m: &LeftModule<F>, n: &LeftModule<F>, t: usize) -> Result<usize> {
    m.require_same_algebra(n, "Ext")?;
    min_proj_resolution(m, t + 1)?.ext_dim(n, t)
}

/// `dim Ext^s(m, n)` for `0 <= s <= tmax`.
pub fn ext_dims<F: Field>(m: &LeftModule<F>, n: &LeftModule<F>, tmax: usize) -> Result<Vec<usize>> {
    m.require_same_algebra(n, "Ext")?;
    min_proj_resolution(m, tmax + 1)?.ext_dims(n, tmax)
}

/// Cocycle representatives of a basis of `Ext^t(m, n)`.
pub fn ext_cocycles<F: Field>(m: &LeftModule<F>, n: &LeftModule<F>, t: usize) -> Result<Mat<F>> {
    m.require_same_algebra(n, "Ext")?;
    min_proj_resolution(m, t + 1)?.ext_cocycles(n, t)
}

/// `dim Tor_t^B(m, y)` for a right `B`-module `m` and a left `B`-module `y`.
pub fn tor_dim<F: Field>(m: &RightModule<F>, y: &LeftModule<F>, t: usize) -> Result<usize> {
    Ok(tor_dims(m, y, t)?[t])
}

pub fn tor_dims<F: Field>(m: &RightModule<F>, y: &LeftModule<F>, tmax: usize) -> Result<Vec<usize>> {
    if !m.algebra().same_as(y.algebra()) {
        return Err(crate::error::Error::AlgebraMismatch(
            "Tor of modules over different algebras".into(),
        ));
    }
    min_proj_resolution(y, tmax + 1)?.tor_dims(m, tmax)
}

/// `Tor_t^B(N, v)` as a left `A`-module, for an `A`-`B`-bimodule `N`.
pub fn tor_bimodule<F: Field>(n: &Bimodule<F>, v: &LeftModule<F>, t: usize) -> Result<LeftModule<F>> {
    let res = min_proj_resolution(v, t + 1)?;
    res.require_differential(t + 1)?;
    let right = n.right();
    let spaces = right_spaces(right)?;
    let act = |a: &[F::Elem]| right.act(a);
    let chain = |s: usize| tensor_boundary(&res, &spaces, &act, s);
    let ambient = sum_with_action(
        n.left(),
        &spaces,
        res.term(t),
    );
    let f = n.left().field();
    let cycles = if t == 0 {
        Mat::identity(f, ambient.dim())
    } else {
        chain(t - 1).kernel_basis()
    };
    let boundaries = chain(t).image_basis();
    Ok(subquotient(&ambient, &cycles, &boundaries))
}

/// `⊕_{v in vertices} e_v X` (or `X e_v`) with the action of `x`
/// restricted blockwise; `x`'s action must preserve every block.
fn sum_with_action<F: Field>(
    x: &LeftModule<F>,
    spaces: &VertexSpaces<F>,
    vertices: &[usize],
) -> LeftModule<F> {
    let f = x.field();
    let action = x
        .actions()
        .iter()
        .map(|a| {
            let blocks: Vec<Mat<F>> = vertices
                .iter()
                .map(|&v| spaces.coords[v].mul(a).mul(&spaces.bases[v]))
                .collect();
            Mat::block_diag(f, &blocks)
        })
        .collect();
    LeftModule::new_unchecked(x.algebra().clone(), spaces.total(vertices), action)
}

/// `Ext^t_A(N, y)` as a left `B`-module, for an `A`-`B`-bimodule `N`:
/// `D Tor_t^A(D y, N)`, computed from a projective resolution of `D y`
/// over the opposite algebra.
pub fn ext_bimodule<F: Field>(n: &Bimodule<F>, y: &LeftModule<F>, t: usize) -> Result<LeftModule<F>> {
    n.left().require_same_algebra(y, "Ext")?;
    let dy = dual(y);
    let res = min_proj_resolution(dy.as_left_over_opposite(), t + 1)?;
    res.require_differential(t + 1)?;
    let left = n.left();
    let spaces = left_spaces(left)?;
    // Q(j) -> Q(i) is x ↦ a x in A; tensored with N it is left
    // multiplication by a on e_j N.
    let act = |a: &[F::Elem]| left.act(a);
    let chain = |s: usize| tensor_boundary(&res, &spaces, &act, s);
    let right_inner = n.right().as_left_over_opposite();
    let ambient = sum_with_action(right_inner, &spaces, res.term(t));
    let f = left.field();
    let cycles = if t == 0 {
        Mat::identity(f, ambient.dim())
    } else {
        chain(t - 1).kernel_basis()
    };
    let boundaries = chain(t).image_basis();
    let h = subquotient(&ambient, &cycles, &boundaries);
    let as_right = RightModule::new(n.right_algebra().clone(), h)?;
    Ok(dual_right(&as_right))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{build_from_quiver, Algebra, QuiverPresentation};
    use crate::linalg::Rationals;
    use crate::module::{external_tensor, indec_projectives, is_isomorphic, simples};

    fn q1() -> Arc<Algebra<Rationals>> {
        let q = QuiverPresentation::truncated_cycle(&["1", "2", "3", "4"], "a", 3);
        Arc::new(build_from_quiver(&q, Rationals, 64).unwrap())
    }

    fn q2() -> Arc<Algebra<Rationals>> {
        let q = QuiverPresentation::truncated_cycle(&["1'", "2'", "3'", "4'", "5'", "6'"], "b", 3);
        Arc::new(build_from_quiver(&q, Rationals, 64).unwrap())
    }

    #[test]
    fn ext_from_projectives() {
        let a = q1();
        let p = indec_projectives(&a).unwrap();
        assert_eq!(ext_dims(&p[3], &p[1], 3).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(ext_dims(&p[3], &p[3], 3).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn ext_between_simples_counts_resolution_terms() {
        let a = q1();
        let s = simples(&a).unwrap();
        let res = min_proj_resolution(&s[0], 6).unwrap();
        for t in 0..5 {
            for (j, sj) in s.iter().enumerate() {
                let mult = res.term(t).iter().filter(|&&v| v == j).count();
                assert_eq!(res.ext_dim(sj, t).unwrap(), mult);
            }
        }
    }

    #[test]
    fn ext_zero_is_hom() {
        let a = q1();
        let mods: Vec<_> = simples(&a)
            .unwrap()
            .into_iter()
            .chain(indec_projectives(&a).unwrap())
            .collect();
        for m in &mods {
            for n in &mods {
                assert_eq!(
                    ext_dim(m, n, 0).unwrap(),
                    crate::module::hom_basis(m, n).unwrap().len()
                );
            }
        }
    }

    #[test]
    fn tor_of_example_bimodule() {
        let (a, b) = (q1(), q2());
        let p2 = &indec_projectives(&a).unwrap()[1];
        let pb = indec_projectives(&b).unwrap();
        let n = external_tensor(p2, &dual(&pb[4])).unwrap();
        assert_eq!(tor_dim(n.right(), &pb[4], 0).unwrap(), 3);
        assert_eq!(tor_dims(n.right(), &pb[2], 4).unwrap(), vec![0; 5]);
        let t0 = tor_bimodule(&n, &pb[4], 0).unwrap();
        assert!(is_isomorphic(&t0, p2, 0, 8).unwrap().is_isomorphic());
        assert_eq!(ext_dim(n.left(), p2, 0).unwrap(), 3);
        let h = ext_bimodule(&n, p2, 0).unwrap();
        assert_eq!(h.dim(), 3);
        assert!(is_isomorphic(&h, &pb[4], 0, 8).unwrap().is_isomorphic());
        let k = Arc::new(Algebra::ground(Rationals));
        let s = &simples(&k).unwrap()[0];
        assert_eq!(tor_dim(&dual(s), s, 0).unwrap(), 1);
    }
}
