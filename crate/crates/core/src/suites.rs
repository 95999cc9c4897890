//! Randomized instance checks of the homological identities the cycle
//! product rests on. Each check draws a small instance from a seed and
//! either compares both sides, skips (hypotheses not met), or reports a
//! mismatch.

use std::fmt;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{triangular, Triangular};
use crate::error::{Error, Result};
use crate::homology::{
    ext_dims, inj_dim, min_proj_resolution, nakayama, proj_dim, serre_image, tor_dims,
    SerreVerdict,
};
use crate::linalg::{Field, Mat, Rationals};
use crate::module::{
    dual, external_tensor, hom_module, indec_injectives, indec_projectives, is_isomorphic,
    tensor_bimodule, theta_map, triple_to_module, IsoVerdict, LeftModule, TripleModule,
};
use crate::sample::{random_hom, random_module, zoo, ZooAlgebra};

const CUTOFF: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// `Ext_Λ((X',0), (X,Y)_φ) = Ext_A(X', X)` and
    /// `Ext_Λ((X,Y)_φ, (0,Y')) = Ext_B(Y, Y')` for `t <= 4`.
    TripleExt,
    /// `dim Ext^t_A(E ⊗ DF, X) = dim F · dim Ext^t_A(E, X)` and
    /// `dim Tor_t^B(E ⊗ DF, Y) = dim E · dim Ext^t_B(Y, F)`.
    KeyLemma,
    /// `ν(P, 0) ≅ (νP, Hom_A(N, νP))_Θ` and `ν(N ⊗ Q, Q)_Id ≅ (0, νQ)`.
    NakayamaTriangular,
    /// `dim Ext^t(x, y) = dim Ext^{d-t}(y, S x)` when `S x ≅ (S x)[d]`.
    SerreDuality,
    /// `deg S x = proj.dim x = inj.dim (S x)`.
    DegreeInterpretation,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::TripleExt,
        Suite::KeyLemma,
        Suite::NakayamaTriangular,
        Suite::SerreDuality,
        Suite::DegreeInterpretation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TripleExt => "ext-of-triple-modules",
            Suite::KeyLemma => "tensor-hom-dimension-identities",
            Suite::NakayamaTriangular => "nakayama-on-triangular-algebras",
            Suite::SerreDuality => "serre-duality-swap",
            Suite::DegreeInterpretation => "degree-interpretation",
        }
    }

    /// Runs one instance drawn from `seed`.
    pub fn check(self, seed: u64) -> Result<Instance> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self {
            Suite::TripleExt => triple_ext(&mut rng),
            Suite::KeyLemma => key_lemma(&mut rng),
            Suite::NakayamaTriangular => nakayama_triangular(&mut rng),
            Suite::SerreDuality => serre_duality(&mut rng),
            Suite::DegreeInterpretation => degree_interpretation(&mut rng),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Checked { comparisons: usize },
    Skipped(String),
    Mismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: usize,
    pub skipped: usize,
    pub comparisons: usize,
    pub mismatches: Vec<(u64, String)>,
}

impl SuiteReport {
    pub fn passed(&self, min_instances: usize) -> bool {
        self.mismatches.is_empty() && self.checked >= min_instances
    }
}

/// The seed of instance `k` of a run seeded with `seed`.
pub fn instance_seed(seed: u64, k: u64) -> u64 {
    seed ^ k.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Draws instances until `instances` of them have been checked (or twenty
/// times as many have been drawn).
pub fn run_suite(suite: Suite, instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        suite,
        checked: 0,
        skipped: 0,
        comparisons: 0,
        mismatches: Vec::new(),
    };
    let mut k = 0u64;
    while report.checked < instances && k < 20 * instances as u64 {
        let s = instance_seed(seed, k);
        match suite.check(s)? {
            Instance::Checked { comparisons } => {
                report.checked += 1;
                report.comparisons += comparisons;
            }
            Instance::Skipped(_) => report.skipped += 1,
            Instance::Mismatch(why) => {
                report.checked += 1;
                report.mismatches.push((s, why));
            }
        }
        k += 1;
    }
    Ok(report)
}

fn pick<'a, F: Field>(pool: &'a [ZooAlgebra<F>], rng: &mut dyn RngCore) -> &'a ZooAlgebra<F> {
    pool.choose(rng).expect("non-empty zoo")
}

/// A triangular algebra over two zoo algebras with `N = E ⊗ D(F)` for
/// random modules `E`, `F`.
fn random_triangular(rng: &mut dyn RngCore, gorenstein_only: bool) -> Result<Triangular<Rationals>> {
    let pool: Vec<_> = zoo(Rationals)?
        .into_iter()
        .filter(|z| z.gorenstein || !gorenstein_only)
        .collect();
    let a = pick(&pool, rng).algebra.clone();
    let b = pick(&pool, rng).algebra.clone();
    let e = random_module(&a, 1, rng)?;
    let f = random_module(&b, 1, rng)?;
    let n = external_tensor(&e, &dual(&f))?;
    triangular(&a, &b, &n)
}

fn random_triple(
    tri: &Triangular<Rationals>,
    rng: &mut dyn RngCore,
) -> Result<TripleModule<Rationals>> {
    let x = random_module(&tri.a, 2, rng)?;
    let y = random_module(&tri.b, 2, rng)?;
    let (ny, _) = tensor_bimodule(&tri.n, &y)?;
    let phi = random_hom(&ny, &x, rng)?;
    TripleModule::new(&tri.n, x, y, phi)
}

fn lam_module(tri: &Triangular<Rationals>, t: &TripleModule<Rationals>) -> Result<LeftModule<Rationals>> {
    triple_to_module(t, &tri.lambda, &tri.embedding)
}

fn compare_dims(what: &str, lhs: &[usize], rhs: &[usize]) -> Option<String> {
    (lhs != rhs).then(|| format!("{what}: {lhs:?} != {rhs:?}"))
}

fn triple_ext(rng: &mut dyn RngCore) -> Result<Instance> {
    let tri = random_triangular(rng, false)?;
    let xy = random_triple(&tri, rng)?;
    let m = lam_module(&tri, &xy)?;
    let x1 = random_module(&tri.a, 2, rng)?;
    let y1 = random_module(&tri.b, 2, rng)?;
    let x1_0 = lam_module(&tri, &TripleModule::left_only(&tri.n, x1.clone())?)?;
    let zero_y1 = lam_module(&tri, &TripleModule::right_only(&tri.n, y1.clone())?)?;
    let left = ext_dims(&x1_0, &m, 4)?;
    let right = ext_dims(&x1, &xy.x, 4)?;
    if let Some(why) = compare_dims("Ext((X',0), (X,Y))", &left, &right) {
        return Ok(Instance::Mismatch(why));
    }
    let left = ext_dims(&m, &zero_y1, 4)?;
    let right = ext_dims(&xy.y, &y1, 4)?;
    if let Some(why) = compare_dims("Ext((X,Y), (0,Y'))", &left, &right) {
        return Ok(Instance::Mismatch(why));
    }
    Ok(Instance::Checked { comparisons: 10 })
}

fn key_lemma(rng: &mut dyn RngCore) -> Result<Instance> {
    let pool = zoo(Rationals)?;
    let a = pick(&pool, rng).algebra.clone();
    let b = pick(&pool, rng).algebra.clone();
    let e = random_module(&a, 2, rng)?;
    let f = random_module(&b, 2, rng)?;
    let x = random_module(&a, 2, rng)?;
    let y = random_module(&b, 2, rng)?;
    let n = external_tensor(&e, &dual(&f))?;
    let lhs = ext_dims(n.left(), &x, 4)?;
    let rhs: Vec<usize> = ext_dims(&e, &x, 4)?.iter().map(|d| d * f.dim()).collect();
    if let Some(why) = compare_dims("Ext(E ⊗ DF, X)", &lhs, &rhs) {
        return Ok(Instance::Mismatch(why));
    }
    let lhs = tor_dims(n.right(), &y, 4)?;
    let rhs: Vec<usize> = ext_dims(&y, &f, 4)?.iter().map(|d| d * e.dim()).collect();
    if let Some(why) = compare_dims("Tor(E ⊗ DF, Y)", &lhs, &rhs) {
        return Ok(Instance::Mismatch(why));
    }
    Ok(Instance::Checked { comparisons: 10 })
}

fn iso(m: &LeftModule<Rationals>, n: &LeftModule<Rationals>) -> Result<bool> {
    match is_isomorphic(m, n, 0, 8)? {
        IsoVerdict::Isomorphic(_) => Ok(true),
        IsoVerdict::NotIsomorphic => Ok(false),
        IsoVerdict::Undecided => Err(Error::UndecidedIsomorphism("suite comparison".into())),
    }
}

fn nakayama_triangular(rng: &mut dyn RngCore) -> Result<Instance> {
    let tri = random_triangular(rng, false)?;
    let mut comparisons = 0;
    for p in indec_projectives(&tri.a)? {
        let p0 = lam_module(&tri, &TripleModule::left_only(&tri.n, p.clone())?)?;
        let nu_p = nakayama(&p, true)?;
        let hom = hom_module(&tri.n, &nu_p)?;
        let (theta, _) = theta_map(&tri.n, &hom)?;
        let predicted = TripleModule::new(&tri.n, nu_p, hom.module.clone(), theta.matrix)?;
        if !iso(&nakayama(&p0, true)?, &lam_module(&tri, &predicted)?)? {
            return Ok(Instance::Mismatch(format!(
                "ν(P, 0) for P of dimension {}",
                p.dim()
            )));
        }
        comparisons += 1;
    }
    for q in indec_projectives(&tri.b)? {
        let (nq, t) = tensor_bimodule(&tri.n, &q)?;
        let id = Mat::identity(Rationals, t.dim());
        let glued = lam_module(&tri, &TripleModule::new(&tri.n, nq, q.clone(), id)?)?;
        let predicted = TripleModule::right_only(&tri.n, nakayama(&q, true)?)?;
        if !iso(&nakayama(&glued, true)?, &lam_module(&tri, &predicted)?)? {
            return Ok(Instance::Mismatch(format!(
                "ν(N ⊗ Q, Q) for Q of dimension {}",
                q.dim()
            )));
        }
        comparisons += 1;
    }
    Ok(Instance::Checked { comparisons })
}

/// A module of finite projective dimension over a Gorenstein zoo algebra
/// (when one is found): a random module, or a sum of indecomposable
/// projectives and injectives.
fn finite_pd_source(
    rng: &mut dyn RngCore,
) -> Result<(Arc<crate::Algebra<Rationals>>, LeftModule<Rationals>)> {
    let pool: Vec<_> = zoo(Rationals)?.into_iter().filter(|z| z.gorenstein).collect();
    let a = pick(&pool, rng).algebra.clone();
    let x = if rng.random_bool(0.5) {
        random_module(&a, 2, rng)?
    } else {
        let mut cands = indec_projectives(&a)?;
        cands.extend(indec_injectives(&a)?);
        let k = rng.random_range(1..=2);
        let parts: Vec<_> = (0..k).map(|_| cands.choose(rng).unwrap().clone()).collect();
        LeftModule::direct_sum(&a, &parts)
    };
    Ok((a, x))
}

fn serre_duality(rng: &mut dyn RngCore) -> Result<Instance> {
    let (a, x) = finite_pd_source(rng)?;
    let s = match serre_image(&x, CUTOFF) {
        Ok(SerreVerdict::Shifted(s)) => s,
        Ok(SerreVerdict::NotShifted { .. }) => {
            return Ok(Instance::Skipped("Serre image is not a shifted module".into()))
        }
        Err(Error::ExceededCutoff { .. }) => {
            return Ok(Instance::Skipped("infinite projective dimension".into()))
        }
        Err(e) => return Err(e),
    };
    let y = random_module(&a, 2, rng)?;
    let d = s.degree;
    let lhs = s.resolution.ext_dims(&y, d)?;
    let rhs = ext_dims(&y, &s.image, d)?;
    let swapped: Vec<usize> = rhs.iter().rev().copied().collect();
    if let Some(why) = compare_dims("Ext^t(x, y) against Ext^{d-t}(y, Sx)", &lhs, &swapped) {
        return Ok(Instance::Mismatch(why));
    }
    Ok(Instance::Checked { comparisons: d + 1 })
}

fn degree_interpretation(rng: &mut dyn RngCore) -> Result<Instance> {
    let (_, x) = finite_pd_source(rng)?;
    let s = match serre_image(&x, CUTOFF) {
        Ok(SerreVerdict::Shifted(s)) => s,
        Ok(SerreVerdict::NotShifted { .. }) => {
            return Ok(Instance::Skipped("Serre image is not a shifted module".into()))
        }
        Err(Error::ExceededCutoff { .. }) => {
            return Ok(Instance::Skipped("infinite projective dimension".into()))
        }
        Err(e) => return Err(e),
    };
    let pd = proj_dim(&x, CUTOFF)?;
    let id = inj_dim(&s.image, CUTOFF)?;
    let res = min_proj_resolution(&x, CUTOFF)?;
    if pd != Some(s.degree) || id != Some(s.degree) || !res.is_minimal() {
        return Ok(Instance::Mismatch(format!(
            "degree {} but proj.dim {:?} and inj.dim {:?}",
            s.degree, pd, id
        )));
    }
    Ok(Instance::Checked { comparisons: 2 })
}
