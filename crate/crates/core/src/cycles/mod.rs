//! Perfect exceptional cycles: verification, the product of two cycles over
//! a triangular matrix algebra, extension and coextension by `(k, k)`.

mod lemmas;

pub use lemmas::{check_serre_lemmas, sample_serre_lemmas, LemmaOutcome, LemmaStatus, SerreLemma};

use std::fmt;
use std::sync::Arc;

use crate::algebra::{triangular, Algebra, Triangular};
use crate::error::{Error, Result};
use crate::homology::{gorenstein, is_projective, serre_image, GorensteinDims, SerreVerdict};
use crate::linalg::Field;
use crate::module::{
    end_is_split_semisimple, is_isomorphic, psi_map, triple_to_module, IsoVerdict,
    LeftModule, ModuleHom, TripleModule,
};

/// A sequence of modules `E_1, ..., E_n` over one algebra.
#[derive(Clone, Debug)]
pub struct PerfectCycle<F: Field> {
    algebra: Arc<Algebra<F>>,
    modules: Vec<LeftModule<F>>,
}

impl<F: Field> PerfectCycle<F> {
    pub fn new(algebra: Arc<Algebra<F>>, modules: Vec<LeftModule<F>>) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::InvalidInput("a cycle needs at least one module".into()));
        }
        for (i, m) in modules.iter().enumerate() {
            if !(Arc::ptr_eq(m.algebra(), &algebra) || m.algebra().same_as(&algebra)) {
                return Err(Error::AlgebraMismatch(format!(
                    "module {} of the cycle lives over a different algebra",
                    i + 1
                )));
            }
        }
        Ok(PerfectCycle { algebra, modules })
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn modules(&self) -> &[LeftModule<F>] {
        &self.modules
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }
}

/// `(k, k)` over the ground field.
pub fn kk_cycle<F: Field>(field: F) -> PerfectCycle<F> {
    let k = Arc::new(Algebra::ground(field));
    let s = LeftModule::new_unchecked(k.clone(), 1, vec![crate::linalg::Mat::identity(field, 1)]);
    PerfectCycle {
        algebra: k,
        modules: vec![s.clone(), s],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub cutoff: usize,
    pub seed: u64,
    pub trials: usize,
    /// Check only the `E_1` row of the Ext table.
    pub fast: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cutoff: 32,
            seed: 0,
            trials: 8,
            fast: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CycleCertificate<F: Field> {
    pub degrees: Vec<usize>,
    /// `witnesses[i]`: an isomorphism from the Serre image of `E_i` onto
    /// `E_{i+1}`.
    pub witnesses: Vec<ModuleHom<F>>,
    /// `ext_table[i][j][t] = dim Ext^t(E_i, E_j)` for `t <= bound`; only
    /// the first row in fast mode.
    pub ext_table: Vec<Vec<Vec<usize>>>,
    pub bound: usize,
    pub gorenstein: GorensteinDims,
    pub fast: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleFailure {
    NonGorenstein(GorensteinDims),
    SerreImageNotStalk { i: usize, homology_dims: Vec<usize> },
    WrongIsomorphismClass { i: usize, next: usize, degree: usize },
    ExtPatternViolation { i: usize, j: usize, t: usize, expected: usize, found: usize },
    EndNotSplit,
}

impl fmt::Display for CycleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |d: Option<usize>| d.map_or("inf".to_string(), |d| d.to_string());
        match self {
            CycleFailure::NonGorenstein(g) => write!(
                f,
                "algebra is not Gorenstein within the cutoff (left {}, right {})",
                opt(g.left),
                opt(g.right)
            ),
            CycleFailure::SerreImageNotStalk { i, homology_dims } => write!(
                f,
                "Serre image of E_{} is not a shifted module (homology dims {:?})",
                i + 1,
                homology_dims
            ),
            CycleFailure::WrongIsomorphismClass { i, next, degree } => write!(
                f,
                "Serre image mismatch: S(E_{}) is a module in degree {} not isomorphic to E_{}",
                i + 1,
                degree,
                next + 1
            ),
            CycleFailure::ExtPatternViolation {
                i,
                j,
                t,
                expected,
                found,
            } => write!(
                f,
                "Ext pattern violated: dim Ext^{}(E_{}, E_{}) = {}, expected {}",
                t,
                i + 1,
                j + 1,
                found,
                expected
            ),
            CycleFailure::EndNotSplit => {
                write!(f, "End(E) is not isomorphic to k x k for a 0-Calabi-Yau 1-cycle")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum CycleVerdict<F: Field> {
    Certified(CycleCertificate<F>),
    Failed(CycleFailure),
}

impl<F: Field> CycleVerdict<F> {
    pub fn certificate(&self) -> Option<&CycleCertificate<F>> {
        match self {
            CycleVerdict::Certified(c) => Some(c),
            CycleVerdict::Failed(_) => None,
        }
    }
}

/// The expected `dim Ext^t(E_i, E_j)` of an exceptional cycle.
pub fn expected_ext(n: usize, degrees: &[usize], i: usize, j: usize, t: usize) -> usize {
    usize::from(j == i && t == 0) + usize::from(j == (i + 1) % n && t == degrees[i])
}

/// Chains Serre images around the cycle, then checks the Ext table.
/// An undecided isomorphism test is an error, not a failure.
pub fn verify_cycle<F: Field>(c: &PerfectCycle<F>, opts: &VerifyOptions) -> Result<CycleVerdict<F>> {
    let g = gorenstein(&c.algebra, opts.cutoff)?;
    if !g.is_gorenstein() {
        return Ok(CycleVerdict::Failed(CycleFailure::NonGorenstein(g)));
    }
    let n = c.len();
    let mut degrees = Vec::with_capacity(n);
    let mut witnesses = Vec::with_capacity(n);
    let mut resolutions = Vec::with_capacity(n);
    for (i, e) in c.modules.iter().enumerate() {
        let image = match serre_image(e, opts.cutoff)? {
            SerreVerdict::Shifted(s) => s,
            SerreVerdict::NotShifted { homology_dims } => {
                return Ok(CycleVerdict::Failed(CycleFailure::SerreImageNotStalk {
                    i,
                    homology_dims,
                }))
            }
        };
        let next = &c.modules[(i + 1) % n];
        match is_isomorphic(&image.image, next, opts.seed, opts.trials)? {
            IsoVerdict::Isomorphic(w) => witnesses.push(w),
            IsoVerdict::NotIsomorphic => {
                return Ok(CycleVerdict::Failed(CycleFailure::WrongIsomorphismClass {
                    i,
                    next: (i + 1) % n,
                    degree: image.degree,
                }))
            }
            IsoVerdict::Undecided => {
                return Err(Error::UndecidedIsomorphism(format!(
                    "Serre image of E_{} against E_{}",
                    i + 1,
                    (i + 1) % n + 1
                )))
            }
        }
        degrees.push(image.degree);
        resolutions.push(image.resolution);
    }
    let bound = degrees.iter().max().copied().unwrap_or(0) + 2;
    let rows = if opts.fast { 1 } else { n };
    let mut ext_table = Vec::with_capacity(rows);
    for (i, res) in resolutions.iter().take(rows).enumerate() {
        let mut row = Vec::with_capacity(n);
        for (j, e) in c.modules.iter().enumerate() {
            let dims = res.ext_dims(e, bound)?;
            for (t, &found) in dims.iter().enumerate() {
                let expected = expected_ext(n, &degrees, i, j, t);
                if found != expected {
                    return Ok(CycleVerdict::Failed(CycleFailure::ExtPatternViolation {
                        i,
                        j,
                        t,
                        expected,
                        found,
                    }));
                }
            }
            row.push(dims);
        }
        ext_table.push(row);
    }
    if n == 1 && degrees[0] == 0 && !end_is_split_semisimple(&c.modules[0])? {
        return Ok(CycleVerdict::Failed(CycleFailure::EndNotSplit));
    }
    Ok(CycleVerdict::Certified(CycleCertificate {
        degrees,
        witnesses,
        ext_table,
        bound,
        gorenstein: g,
        fast: opts.fast,
    }))
}

/// `E_* ⊠ F_*` over `Λ = [[A, E_n ⊗ D(F_1)], [0, B]]`.
#[derive(Clone, Debug)]
pub struct ProductResult<F: Field> {
    pub triangular: Triangular<F>,
    /// `(E_1,0), ..., (E_{n-1},0), (E_n,F_1)_Ψ, (0,F_2), ..., (0,F_m)`.
    pub sequence: Vec<LeftModule<F>>,
    pub expected_degrees: Vec<usize>,
    pub left_degrees: Vec<usize>,
    pub right_degrees: Vec<usize>,
    /// Whether the glued module `(E_n, F_1)_Ψ` is projective over `Λ`.
    pub glued_is_projective: bool,
}

impl<F: Field> ProductResult<F> {
    pub fn lambda(&self) -> &Arc<Algebra<F>> {
        &self.triangular.lambda
    }

    pub fn cycle(&self) -> PerfectCycle<F> {
        PerfectCycle {
            algebra: self.triangular.lambda.clone(),
            modules: self.sequence.clone(),
        }
    }
}

/// `(c_1, ..., c_{n-1}, d_1, ..., d_{m-1}, c_n + d_m + 1)`.
pub fn product_degrees(c: &[usize], d: &[usize]) -> Vec<usize> {
    let (n, m) = (c.len(), d.len());
    c[..n - 1]
        .iter()
        .chain(&d[..m - 1])
        .copied()
        .chain(std::iter::once(c[n - 1] + d[m - 1] + 1))
        .collect()
}

fn certified_degrees<F: Field>(c: &PerfectCycle<F>, opts: &VerifyOptions, side: &str) -> Result<Vec<usize>> {
    match verify_cycle(c, opts)? {
        CycleVerdict::Certified(cert) => Ok(cert.degrees),
        CycleVerdict::Failed(why) => Err(Error::HypothesisViolation(format!(
            "{side} factor is not a perfect exceptional cycle: {why}"
        ))),
    }
}

/// Verifies both factors, then builds their product.
pub fn product<F: Field>(
    e: &PerfectCycle<F>,
    f: &PerfectCycle<F>,
    opts: &VerifyOptions,
) -> Result<ProductResult<F>> {
    let c = certified_degrees(e, opts, "left")?;
    let d = certified_degrees(f, opts, "right")?;
    product_from_degrees(e, &c, f, &d)
}

/// The product for factors whose degrees are already known.
pub fn product_from_degrees<F: Field>(
    e: &PerfectCycle<F>,
    c: &[usize],
    f: &PerfectCycle<F>,
    d: &[usize],
) -> Result<ProductResult<F>> {
    if c.len() != e.len() || d.len() != f.len() {
        return Err(Error::DimensionMismatch("one degree per cycle term".into()));
    }
    let (n, m) = (e.len(), f.len());
    let en = &e.modules[n - 1];
    let f1 = &f.modules[0];
    let (psi, bimodule, _) = psi_map(en, f1)?;
    let tri = triangular(&e.algebra, &f.algebra, &bimodule)?;
    let lam = tri.lambda.clone();
    let emb = &tri.embedding;
    let mut sequence = Vec::with_capacity(n + m - 1);
    for x in &e.modules[..n - 1] {
        let t = TripleModule::left_only(&tri.n, x.clone())?;
        sequence.push(triple_to_module(&t, &lam, emb)?);
    }
    let glued = TripleModule::new(&tri.n, en.clone(), f1.clone(), psi.matrix)?;
    let glued = triple_to_module(&glued, &lam, emb)?;
    let glued_is_projective = is_projective(&glued)?;
    sequence.push(glued);
    for y in &f.modules[1..] {
        let t = TripleModule::right_only(&tri.n, y.clone())?;
        sequence.push(triple_to_module(&t, &lam, emb)?);
    }
    Ok(ProductResult {
        expected_degrees: product_degrees(c, d),
        left_degrees: c.to_vec(),
        right_degrees: d.to_vec(),
        triangular: tri,
        sequence,
        glued_is_projective,
    })
}

/// `E_* ⊠ (k, k)`, over `[[A, E_n], [0, k]]`.
pub fn extend<F: Field>(e: &PerfectCycle<F>, opts: &VerifyOptions) -> Result<ProductResult<F>> {
    product(e, &kk_cycle(e.algebra.field()), opts)
}

/// `(k, k) ⊠ E_*`, over `[[k, D(E_1)], [0, A]]`.
pub fn coextend<F: Field>(e: &PerfectCycle<F>, opts: &VerifyOptions) -> Result<ProductResult<F>> {
    product(&kk_cycle(e.algebra.field()), e, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_from_quiver, QuiverPresentation};
    use crate::linalg::{PrimeField, Rationals};
    use crate::module::indec_projectives;

    fn cycle_of(q: &QuiverPresentation, picks: &[usize]) -> PerfectCycle<Rationals> {
        let a = Arc::new(build_from_quiver(q, Rationals, 64).unwrap());
        let p = indec_projectives(&a).unwrap();
        PerfectCycle::new(a, picks.iter().map(|&i| p[i].clone()).collect()).unwrap()
    }

    fn a_cycle() -> PerfectCycle<Rationals> {
        cycle_of(&QuiverPresentation::truncated_cycle(&["1", "2", "3", "4"], "a", 3), &[3, 1])
    }

    fn b_cycle(order: &[usize]) -> PerfectCycle<Rationals> {
        let q = QuiverPresentation::truncated_cycle(&["1'", "2'", "3'", "4'", "5'", "6'"], "b", 3);
        cycle_of(&q, order)
    }

    fn certified<F: Field>(c: &PerfectCycle<F>) -> CycleCertificate<F> {
        match verify_cycle(c, &VerifyOptions::default()).unwrap() {
            CycleVerdict::Certified(cert) => cert,
            CycleVerdict::Failed(why) => panic!("{why}"),
        }
    }

    #[test]
    fn expected_pattern_for_small_cycles() {
        assert_eq!(expected_ext(1, &[0], 0, 0, 0), 2);
        assert_eq!(expected_ext(1, &[3], 0, 0, 3), 1);
        assert_eq!(expected_ext(2, &[0, 1], 1, 0, 1), 1);
        assert_eq!(expected_ext(3, &[0, 0, 0], 0, 2, 0), 0);
    }

    #[test]
    fn product_degree_formula() {
        assert_eq!(product_degrees(&[0, 0], &[0, 0, 0]), vec![0, 0, 0, 1]);
        assert_eq!(product_degrees(&[2], &[3]), vec![6]);
        assert_eq!(product_degrees(&[1, 2], &[3]), vec![1, 6]);
    }

    #[test]
    fn kk_over_k() {
        let cert = certified(&kk_cycle(Rationals));
        assert_eq!(cert.degrees, vec![0, 0]);
        assert_eq!(cert.ext_table[0][1], vec![1, 0, 0]);
    }

    #[test]
    fn example_cycles() {
        let cert = certified(&a_cycle());
        assert_eq!(cert.degrees, vec![0, 0]);
        assert_eq!(cert.ext_table[0][0], vec![1, 0, 0]);
        assert_eq!(cert.ext_table[0][1], vec![1, 0, 0]);
        assert_eq!(cert.ext_table[1][0], vec![1, 0, 0]);
        let cert = certified(&b_cycle(&[4, 2, 0]));
        assert_eq!(cert.degrees, vec![0, 0, 0]);
    }

    #[test]
    fn reordered_cycle_fails_at_the_serre_image() {
        let v = verify_cycle(&b_cycle(&[2, 4, 0]), &VerifyOptions::default()).unwrap();
        assert!(matches!(
            v,
            CycleVerdict::Failed(CycleFailure::WrongIsomorphismClass { i: 0, next: 1, degree: 0 })
        ));
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let a = a_cycle();
        let b = b_cycle(&[0]);
        let err = PerfectCycle::new(
            a.algebra().clone(),
            vec![a.modules()[0].clone(), b.modules()[0].clone()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::AlgebraMismatch(_)));
    }

    #[test]
    fn kk_product() {
        let kk = kk_cycle(Rationals);
        let p = product(&kk, &kk, &VerifyOptions::default()).unwrap();
        assert_eq!(p.lambda().dim(), 3);
        assert_eq!(p.sequence.len(), 3);
        assert_eq!(p.expected_degrees, vec![0, 0, 1]);
        assert!(p.glued_is_projective);
        assert_eq!(certified(&p.cycle()).degrees, vec![0, 0, 1]);
    }

    #[test]
    fn extension_of_the_small_cycle() {
        let p = extend(&a_cycle(), &VerifyOptions::default()).unwrap();
        assert_eq!(p.lambda().dim(), 12 + 3 + 1);
        assert_eq!(certified(&p.cycle()).degrees, vec![0, 0, 1]);
        let p = coextend(&a_cycle(), &VerifyOptions::default()).unwrap();
        assert_eq!(p.lambda().dim(), 1 + 3 + 12);
        assert_eq!(certified(&p.cycle()).degrees, vec![0, 0, 1]);
    }

    #[test]
    fn one_cycle_with_split_endomorphisms() {
        // k x k is 0-Calabi-Yau; k ⊕ k over it is an exceptional 1-cycle
        let q = QuiverPresentation::new(vec!["1".into(), "2".into()], vec![], vec![]);
        let a = Arc::new(build_from_quiver(&q, Rationals, 8).unwrap());
        let p = indec_projectives(&a).unwrap();
        let sum = LeftModule::direct_sum(&a, &p);
        let cert = certified(&PerfectCycle::new(a.clone(), vec![sum]).unwrap());
        assert_eq!(cert.degrees, vec![0]);
        assert_eq!(cert.ext_table[0][0], vec![2, 0, 0]);
        // a single simple over k x k is not a 1-cycle: S(S_1) = S_1
        let v = verify_cycle(
            &PerfectCycle::new(a, vec![p[0].clone()]).unwrap(),
            &VerifyOptions::default(),
        )
        .unwrap();
        assert!(matches!(v, CycleVerdict::Failed(CycleFailure::ExtPatternViolation { .. })));
    }

    #[test]
    fn fast_mode_fills_one_row() {
        let opts = VerifyOptions {
            fast: true,
            ..VerifyOptions::default()
        };
        let v = verify_cycle(&b_cycle(&[4, 2, 0]), &opts).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.ext_table.len(), 1);
    }

    #[test]
    fn kk_over_a_prime_field() {
        let kk = kk_cycle(PrimeField::new(101).unwrap());
        assert_eq!(certified(&kk).degrees, vec![0, 0]);
    }
}
