//! Instance checks of the three Serre-image formulas over a triangular
//! algebra `Λ = [[A, N], [0, B]]`:
//!
//! * S1: `S(X, 0) ≅ (Y, Hom_A(N, Y))_Θ [c]` when `S_A X ≅ Y[c]` and
//!   `Ext^{≥1}_A(N, Y) = 0`;
//! * S2: `S(N ⊗ V, V)_Id ≅ (0, W)[d]` when `S_B V ≅ W[d]` and
//!   `Tor_{≥1}^B(N, V) = 0`;
//! * S3: `S(0, V) ≅ (Y, 0)[c + d + 1]` when `Tor^B_*(N, V)` is `X` in degree
//!   `d`, `S_A X ≅ Y[c]` and `Ext^*_A(N, Y)` is `W` in degree `c`.

use std::fmt;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::VerifyOptions;
use crate::algebra::Triangular;
use crate::error::{Error, Result};
use crate::homology::{
    ext_bimodule, min_proj_resolution, serre_image, tor_bimodule, SerreImage, SerreVerdict,
};
use crate::linalg::{Field, Mat};
use crate::module::{
    hom_module, indec_injectives, indec_projectives, is_isomorphic, tensor_bimodule, theta_map,
    triple_to_module, IsoVerdict, LeftModule, TripleModule,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SerreLemma {
    S1,
    S2,
    S3,
}

impl fmt::Display for SerreLemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SerreLemma::S1 => "S1",
            SerreLemma::S2 => "S2",
            SerreLemma::S3 => "S3",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaStatus {
    Passed { degree: usize },
    Failed(String),
    HypothesisViolated(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaOutcome {
    pub lemma: SerreLemma,
    pub sample: usize,
    pub status: LemmaStatus,
}

impl LemmaOutcome {
    pub fn passed(&self) -> bool {
        matches!(self.status, LemmaStatus::Passed { .. })
    }
}

enum Step<T> {
    Ok(T),
    Stop(LemmaStatus),
}

macro_rules! step {
    ($e:expr) => {
        match $e {
            Step::Ok(v) => v,
            Step::Stop(s) => return Ok(s),
        }
    };
}

fn shifted<F: Field>(x: &LeftModule<F>, cutoff: usize, what: &str) -> Result<Step<SerreImage<F>>> {
    match serre_image(x, cutoff) {
        Ok(SerreVerdict::Shifted(s)) => Ok(Step::Ok(s)),
        Ok(SerreVerdict::NotShifted { homology_dims }) => Ok(Step::Stop(
            LemmaStatus::HypothesisViolated(format!(
                "Serre image of {what} is not a shifted module ({homology_dims:?})"
            )),
        )),
        Err(Error::ExceededCutoff { .. }) => Ok(Step::Stop(LemmaStatus::HypothesisViolated(
            format!("{what} has infinite projective dimension"),
        ))),
        Err(e) => Err(e),
    }
}

fn compare<F: Field>(
    lhs: &SerreImage<F>,
    rhs: &LeftModule<F>,
    degree: usize,
    opts: &VerifyOptions,
) -> Result<LemmaStatus> {
    if lhs.degree != degree {
        return Ok(LemmaStatus::Failed(format!(
            "Serre image sits in degree {}, expected {degree}",
            lhs.degree
        )));
    }
    Ok(match is_isomorphic(&lhs.image, rhs, opts.seed, opts.trials)? {
        IsoVerdict::Isomorphic(_) => LemmaStatus::Passed { degree },
        IsoVerdict::NotIsomorphic => {
            LemmaStatus::Failed("Serre image is not isomorphic to the predicted triple".into())
        }
        IsoVerdict::Undecided => {
            return Err(Error::UndecidedIsomorphism("Serre lemma comparison".into()))
        }
    })
}

/// `Ext^t_A(N, y)` for all `t`; `None` when `N` has infinite projective
/// dimension within the cutoff.
fn ext_n<F: Field>(tri: &Triangular<F>, y: &LeftModule<F>, cutoff: usize) -> Result<Option<Vec<usize>>> {
    let res = min_proj_resolution(tri.n.left(), cutoff)?;
    match res.length() {
        Some(l) => Ok(Some(res.ext_dims(y, l)?)),
        None => Ok(None),
    }
}

fn s1<F: Field>(tri: &Triangular<F>, x: &LeftModule<F>, opts: &VerifyOptions) -> Result<LemmaStatus> {
    let sx = step!(shifted(x, opts.cutoff, "X")?);
    let y = &sx.image;
    let Some(ext) = ext_n(tri, y, opts.cutoff)? else {
        return Ok(LemmaStatus::HypothesisViolated("proj.dim N over A is infinite".into()));
    };
    if let Some(t) = (1..ext.len()).find(|&t| ext[t] != 0) {
        return Ok(LemmaStatus::HypothesisViolated(format!(
            "Ext^{t}_A(N, Y) has dimension {}",
            ext[t]
        )));
    }
    let lam = &tri.lambda;
    let x0 = triple_to_module(&TripleModule::left_only(&tri.n, x.clone())?, lam, &tri.embedding)?;
    let hom = hom_module(&tri.n, y)?;
    let (theta, _) = theta_map(&tri.n, &hom)?;
    let predicted = TripleModule::new(&tri.n, y.clone(), hom.module.clone(), theta.matrix)?;
    let predicted = triple_to_module(&predicted, lam, &tri.embedding)?;
    let lhs = step!(shifted(&x0, opts.cutoff, "(X, 0)")?);
    compare(&lhs, &predicted, sx.degree, opts)
}

fn s2<F: Field>(tri: &Triangular<F>, v: &LeftModule<F>, opts: &VerifyOptions) -> Result<LemmaStatus> {
    let sv = step!(shifted(v, opts.cutoff, "V")?);
    let d = sv.degree;
    let tor = sv.resolution.tor_dims(tri.n.right(), d.max(1))?;
    if let Some(t) = (1..tor.len()).find(|&t| tor[t] != 0) {
        return Ok(LemmaStatus::HypothesisViolated(format!(
            "Tor_{t}^B(N, V) has dimension {}",
            tor[t]
        )));
    }
    let (nv, t) = tensor_bimodule(&tri.n, v)?;
    let id = Mat::identity(v.field(), t.dim());
    let glued = TripleModule::new(&tri.n, nv, v.clone(), id)?;
    let glued = triple_to_module(&glued, &tri.lambda, &tri.embedding)?;
    let predicted = TripleModule::right_only(&tri.n, sv.image.clone())?;
    let predicted = triple_to_module(&predicted, &tri.lambda, &tri.embedding)?;
    let lhs = step!(shifted(&glued, opts.cutoff, "(N ⊗ V, V)")?);
    compare(&lhs, &predicted, d, opts)
}

fn s3<F: Field>(tri: &Triangular<F>, v: &LeftModule<F>, opts: &VerifyOptions) -> Result<LemmaStatus> {
    let sv = step!(shifted(v, opts.cutoff, "V")?);
    let d = sv.degree;
    let w = &sv.image;
    let tor = sv.resolution.tor_dims(tri.n.right(), d + 1)?;
    if let Some(t) = (0..tor.len()).find(|&t| t != d && tor[t] != 0) {
        return Ok(LemmaStatus::HypothesisViolated(format!(
            "Tor_{t}^B(N, V) is nonzero away from degree {d}"
        )));
    }
    let x = tor_bimodule(&tri.n, v, d)?;
    if x.is_zero() {
        return Ok(LemmaStatus::HypothesisViolated(format!(
            "Tor_{d}^B(N, V) vanishes"
        )));
    }
    let sx = step!(shifted(&x, opts.cutoff, "X = Tor_d(N, V)")?);
    let (y, c) = (&sx.image, sx.degree);
    let Some(ext) = ext_n(tri, y, opts.cutoff)? else {
        return Ok(LemmaStatus::HypothesisViolated("proj.dim N over A is infinite".into()));
    };
    if let Some(t) = (0..ext.len()).find(|&t| t != c && ext[t] != 0) {
        return Ok(LemmaStatus::HypothesisViolated(format!(
            "Ext^{t}_A(N, Y) is nonzero away from degree {c}"
        )));
    }
    let ext_c = ext_bimodule(&tri.n, y, c)?;
    match is_isomorphic(&ext_c, w, opts.seed, opts.trials)? {
        IsoVerdict::Isomorphic(_) => {}
        IsoVerdict::NotIsomorphic => {
            return Ok(LemmaStatus::HypothesisViolated(format!(
                "Ext^{c}_A(N, Y) is not isomorphic to W"
            )))
        }
        IsoVerdict::Undecided => {
            return Err(Error::UndecidedIsomorphism("Ext^c(N, Y) against W".into()))
        }
    }
    let zero_v = triple_to_module(&TripleModule::right_only(&tri.n, v.clone())?, &tri.lambda, &tri.embedding)?;
    let predicted = triple_to_module(&TripleModule::left_only(&tri.n, y.clone())?, &tri.lambda, &tri.embedding)?;
    let lhs = step!(shifted(&zero_v, opts.cutoff, "(0, V)")?);
    compare(&lhs, &predicted, c + d + 1, opts)
}

/// Runs S1 on every `x` and S2, S3 on every `v`.
pub fn check_serre_lemmas<F: Field>(
    tri: &Triangular<F>,
    xs: &[LeftModule<F>],
    vs: &[LeftModule<F>],
    opts: &VerifyOptions,
) -> Result<Vec<LemmaOutcome>> {
    let mut out = Vec::new();
    for (sample, x) in xs.iter().enumerate() {
        x.require_same_algebra(tri.n.left(), "S1 sample")?;
        out.push(LemmaOutcome {
            lemma: SerreLemma::S1,
            sample,
            status: s1(tri, x, opts)?,
        });
    }
    for (sample, v) in vs.iter().enumerate() {
        if !v.algebra().same_as(&tri.b) {
            return Err(Error::AlgebraMismatch("S2/S3 sample is not a B-module".into()));
        }
        out.push(LemmaOutcome {
            lemma: SerreLemma::S2,
            sample,
            status: s2(tri, v, opts)?,
        });
        out.push(LemmaOutcome {
            lemma: SerreLemma::S3,
            sample,
            status: s3(tri, v, opts)?,
        });
    }
    Ok(out)
}

/// Draws `samples` modules on each side from the indecomposable projectives
/// and injectives and runs [`check_serre_lemmas`] on them.
pub fn sample_serre_lemmas<F: Field>(
    tri: &Triangular<F>,
    samples: usize,
    opts: &VerifyOptions,
) -> Result<Vec<LemmaOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pool = |alg| -> Result<Vec<LeftModule<F>>> {
        let mut cands = indec_projectives(alg)?;
        cands.extend(indec_injectives(alg)?);
        Ok((0..samples)
            .filter_map(|_| cands.choose(&mut rng).cloned())
            .collect())
    };
    let xs = pool(&tri.a)?;
    let vs = pool(&tri.b)?;
    check_serre_lemmas(tri, &xs, &vs, opts)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{build_from_quiver, triangular, QuiverPresentation};
    use crate::linalg::Rationals;
    use crate::module::{dual, external_tensor};

    fn example() -> Triangular<Rationals> {
        let qa = QuiverPresentation::truncated_cycle(&["1", "2", "3", "4"], "a", 3);
        let qb = QuiverPresentation::truncated_cycle(&["1'", "2'", "3'", "4'", "5'", "6'"], "b", 3);
        let a = Arc::new(build_from_quiver(&qa, Rationals, 64).unwrap());
        let b = Arc::new(build_from_quiver(&qb, Rationals, 64).unwrap());
        let p2 = indec_projectives(&a).unwrap().remove(1);
        let p5 = indec_projectives(&b).unwrap().remove(4);
        let n = external_tensor(&p2, &dual(&p5)).unwrap();
        triangular(&a, &b, &n).unwrap()
    }

    #[test]
    fn example_instances() {
        let tri = example();
        let opts = VerifyOptions::default();
        let p4 = indec_projectives(&tri.a).unwrap().remove(3);
        let pb = indec_projectives(&tri.b).unwrap();
        let out = check_serre_lemmas(&tri, &[p4], &[pb[4].clone(), pb[0].clone()], &opts).unwrap();
        let get = |lemma, sample| {
            out.iter()
                .find(|o| o.lemma == lemma && o.sample == sample)
                .unwrap()
                .status
                .clone()
        };
        assert_eq!(get(SerreLemma::S1, 0), LemmaStatus::Passed { degree: 0 });
        assert_eq!(get(SerreLemma::S2, 0), LemmaStatus::Passed { degree: 0 });
        assert_eq!(get(SerreLemma::S3, 1), LemmaStatus::Passed { degree: 1 });
    }

    #[test]
    fn sampled_instances_never_fail() {
        let tri = example();
        let out = sample_serre_lemmas(&tri, 4, &VerifyOptions::default()).unwrap();
        assert!(out.iter().all(|o| !matches!(o.status, LemmaStatus::Failed(_))));
        assert!(out.iter().any(LemmaOutcome::passed));
    }
}
