//! Hom spaces between left modules and the isomorphism test built on them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{LeftModule, ModuleHom};
use crate::error::Result;
use crate::linalg::{EchelonBuilder, Field, FieldSpec, Mat};

/// A module basis adapted to the vertex idempotents: `basis` is invertible
/// and its columns are grouped by vertex, `sizes[v]` per vertex.
struct Adapted<F: Field> {
    basis: Mat<F>,
    inverse: Mat<F>,
    sizes: Vec<usize>,
}

impl<F: Field> Adapted<F> {
    fn of(m: &LeftModule<F>) -> Self {
        let f = m.field();
        let alg = m.algebra();
        match alg.basic() {
            Some(basic) if m.dim() > 0 => {
                let mut basis = Mat::zeros(f, m.dim(), 0);
                let mut sizes = Vec::new();
                for v in 0..basic.vertex_count() {
                    let block = m.act(basic.idempotent(v)).image_basis();
                    sizes.push(block.cols());
                    basis = basis.hstack(&block);
                }
                let inverse = basis.inverse().expect("idempotents sum to the unit");
                Adapted {
                    basis,
                    inverse,
                    sizes,
                }
            }
            _ => Adapted {
                basis: Mat::identity(f, m.dim()),
                inverse: Mat::identity(f, m.dim()),
                sizes: vec![m.dim()],
            },
        }
    }

    /// Vertex of each adapted coordinate.
    fn vertex_of(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(v, &s)| std::iter::repeat_n(v, s))
            .collect()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.sizes.len());
        let mut acc = 0;
        for &s in &self.sizes {
            out.push(acc);
            acc += s;
        }
        out
    }
}

/// Basis of `Hom(m, n)`: solutions of `f L_m(g) = L_n(g) f` over the
/// algebra generators `g`, with `f` block diagonal with respect to the
/// vertex idempotents.
pub fn hom_basis<F: Field>(m: &LeftModule<F>, n: &LeftModule<F>) -> Result<Vec<ModuleHom<F>>> {
    m.require_same_algebra(n, "hom")?;
    let f = m.field();
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(Vec::new());
    }
    let am = Adapted::of(m);
    let an = Adapted::of(n);
    let vm = am.vertex_of();
    let vn = an.vertex_of();
    let om = am.offsets();
    let on = an.offsets();
    // unknown F[r, k] (r in N-block v, k in M-block v)
    let mut unknown_offset = Vec::with_capacity(am.sizes.len());
    let mut count = 0;
    for (sm, sn) in am.sizes.iter().zip(&an.sizes) {
        unknown_offset.push(count);
        count += sm * sn;
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let var = |r: usize, k: usize| -> usize {
        let v = vn[r];
        unknown_offset[v] + (r - on[v]) * am.sizes[v] + (k - om[v])
    };

    let mut eq = EchelonBuilder::new(f, count);
    'gens: for g in m.algebra().generators() {
        let mg = am.inverse.mul(&m.action(g).mul(&am.basis));
        let ng = an.inverse.mul(&n.action(g).mul(&an.basis));
        for r in 0..n.dim() {
            for c in 0..m.dim() {
                let mut row = vec![f.zero(); count];
                let mut nonzero = false;
                // (F M')[r, c]
                let v = vn[r];
                for k in om[v]..om[v] + am.sizes[v] {
                    let x = &mg[(k, c)];
                    if !f.is_zero(x) {
                        let i = var(r, k);
                        row[i] = f.add(&row[i], x);
                        nonzero = true;
                    }
                }
                // (N' F)[r, c]
                let w = vm[c];
                for k in on[w]..on[w] + an.sizes[w] {
                    let x = &ng[(r, k)];
                    if !f.is_zero(x) {
                        let i = var(k, c);
                        row[i] = f.sub(&row[i], x);
                        nonzero = true;
                    }
                }
                if nonzero {
                    eq.push(row);
                    if eq.is_full() {
                        break 'gens;
                    }
                }
            }
        }
    }
    let kernel = eq.kernel_basis();
    let mut out = Vec::with_capacity(kernel.cols());
    for sol in kernel.columns() {
        let mut block = Mat::zeros(f, n.dim(), m.dim());
        for (v, (&sm, &sn)) in am.sizes.iter().zip(&an.sizes).enumerate() {
            for r in 0..sn {
                for k in 0..sm {
                    block[(on[v] + r, om[v] + k)] = sol[unknown_offset[v] + r * sm + k].clone();
                }
            }
        }
        out.push(ModuleHom::new(an.basis.mul(&block).mul(&am.inverse)));
    }
    Ok(out)
}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug, PartialEq)]
pub enum IsoVerdict<F: Field> {
    Isomorphic(ModuleHom<F>),
    NotIsomorphic,
    /// Necessary conditions hold but no random trial produced an
    /// invertible homomorphism.
    Undecided,
}

impl<F: Field> IsoVerdict<F> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

/// Looks for an invertible homomorphism `m -> n` among random combinations
/// of a Hom basis, after cheap necessary conditions.
pub fn is_isomorphic<F: Field>(
    m: &LeftModule<F>,
    n: &LeftModule<F>,
    seed: u64,
    trials: usize,
) -> Result<IsoVerdict<F>> {
    m.require_same_algebra(n, "isomorphism test")?;
    let f = m.field();
    if m.dim() != n.dim() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if m.dim() == 0 {
        return Ok(IsoVerdict::Isomorphic(ModuleHom::new(Mat::zeros(f, 0, 0))));
    }
    if m.actions() == n.actions() {
        return Ok(IsoVerdict::Isomorphic(ModuleHom::new(Mat::identity(f, m.dim()))));
    }
    let hom = hom_basis(m, n)?;
    if hom.is_empty() || hom_basis(n, m)?.len() != hom.len() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if hom_basis(m, m)?.len() != hom_basis(n, n)?.len() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if hom.len() == 1 {
        return Ok(if hom[0].is_isomorphism() {
            IsoVerdict::Isomorphic(hom[0].clone())
        } else {
            IsoVerdict::NotIsomorphic
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut candidate = Mat::zeros(f, n.dim(), m.dim());
        for h in &hom {
            candidate.add_scaled_assign(&f.random(&mut rng), &h.matrix);
        }
        if candidate.is_invertible() {
            return Ok(IsoVerdict::Isomorphic(ModuleHom::new(candidate)));
        }
    }
    Ok(IsoVerdict::Undecided)
}

/// Whether `End(m)` is two-dimensional and isomorphic to `k x k`, i.e.
/// contains an idempotent other than `0` and `1`.
pub fn end_is_split_semisimple<F: Field>(m: &LeftModule<F>) -> Result<bool> {
    let f = m.field();
    let end = hom_basis(m, m)?;
    if end.len() != 2 {
        return Ok(false);
    }
    let id = Mat::identity(f, m.dim());
    let Some(x) = end
        .iter()
        .map(|h| &h.matrix)
        .find(|h| Mat::from_columns(f, m.dim() * m.dim(), &[flatten(&id), flatten(h)]).rank() == 2)
    else {
        return Ok(false);
    };
    // x^2 = alpha x + beta 1 inside the two-dimensional algebra
    let sys = Mat::from_columns(f, m.dim() * m.dim(), &[flatten(x), flatten(&id)]);
    let Some(sol) = sys.solve(&Mat::column_vector(f, flatten(&x.mul(x)))) else {
        return Ok(false);
    };
    let (alpha, beta) = (sol[(0, 0)].clone(), sol[(1, 0)].clone());
    // roots of t^2 - alpha t - beta
    let has_two_roots = match f.spec() {
        FieldSpec::Prime(2) => {
            let roots = [f.zero(), f.one()]
                .into_iter()
                .filter(|t| {
                    let v = f.sub(&f.sub(&f.mul(t, t), &f.mul(&alpha, t)), &beta);
                    f.is_zero(&v)
                })
                .count();
            roots == 2
        }
        _ => {
            let disc = f.add(&f.mul(&alpha, &alpha), &f.mul(&f.from_i64(4), &beta));
            !f.is_zero(&disc) && f.sqrt(&disc).is_some()
        }
    };
    Ok(has_two_roots)
}

fn flatten<F: Field>(m: &Mat<F>) -> Vec<F::Elem> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{build_from_quiver, Algebra, QuiverPresentation};
    use crate::linalg::{PrimeField, Rationals};
    use crate::module::{indec_projectives, simples};

    fn q1<F: Field>(f: F) -> Arc<Algebra<F>> {
        let q = QuiverPresentation::truncated_cycle(&["1", "2", "3", "4"], "a", 3);
        Arc::new(build_from_quiver(&q, f, 64).unwrap())
    }

    /// Brute force: solve the intertwining system in all `dim n * dim m`
    /// unknowns over every basis element.
    fn brute_hom_dim<F: Field>(m: &LeftModule<F>, n: &LeftModule<F>) -> usize {
        let f = m.field();
        let (dm, dn) = (m.dim(), n.dim());
        let mut rows = Vec::new();
        for b in 0..m.algebra().dim() {
            for r in 0..dn {
                for c in 0..dm {
                    let mut row = vec![f.zero(); dn * dm];
                    for k in 0..dm {
                        let i = r * dm + k;
                        row[i] = f.add(&row[i], &m.action(b)[(k, c)]);
                    }
                    for k in 0..dn {
                        let i = k * dm + c;
                        row[i] = f.sub(&row[i], &n.action(b)[(r, k)]);
                    }
                    rows.push(row);
                }
            }
        }
        dn * dm - Mat::from_rows(f, rows).rank()
    }

    #[test]
    fn hom_dimensions_match_brute_force() {
        let a = q1(Rationals);
        let mods: Vec<_> = indec_projectives(&a)
            .unwrap()
            .into_iter()
            .chain(simples(&a).unwrap())
            .collect();
        for m in &mods {
            for n in &mods {
                let h = hom_basis(m, n).unwrap();
                assert_eq!(h.len(), brute_hom_dim(m, n));
                assert!(h.iter().all(|x| x.is_homomorphism(m, n)));
            }
        }
    }

    #[test]
    fn hom_between_q1_projectives() {
        let a = q1(Rationals);
        let p = indec_projectives(&a).unwrap();
        assert_eq!(hom_basis(&p[3], &p[3]).unwrap().len(), 1);
        assert_eq!(hom_basis(&p[3], &p[1]).unwrap().len(), 1);
        let k = Arc::new(Algebra::ground(Rationals));
        let s = &simples(&k).unwrap()[0];
        assert_eq!(hom_basis(s, s).unwrap().len(), 1);
    }

    #[test]
    fn isomorphism_verdicts() {
        let a = q1(PrimeField::new(101).unwrap());
        let p = indec_projectives(&a).unwrap();
        let s = simples(&a).unwrap();
        assert!(is_isomorphic(&p[3], &p[3], 0, 8).unwrap().is_isomorphic());
        assert_eq!(is_isomorphic(&p[3], &s[3], 0, 8).unwrap(), IsoVerdict::NotIsomorphic);
        assert_eq!(is_isomorphic(&p[0], &p[1], 0, 8).unwrap(), IsoVerdict::NotIsomorphic);
    }

    #[test]
    fn split_endomorphism_algebra() {
        let a = q1(Rationals);
        let p = indec_projectives(&a).unwrap();
        let s = simples(&a).unwrap();
        let sum = LeftModule::direct_sum(&a, &[s[0].clone(), s[2].clone()]);
        assert!(end_is_split_semisimple(&sum).unwrap());
        assert!(!end_is_split_semisimple(&p[0]).unwrap());
        let a2 = q1(PrimeField::new(2).unwrap());
        let s = simples(&a2).unwrap();
        let sum = LeftModule::direct_sum(&a2, &[s[0].clone(), s[2].clone()]);
        assert!(end_is_split_semisimple(&sum).unwrap());
    }
}
