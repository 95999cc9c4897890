//! Self-contained, deterministic JSON certificates.

use serde::Serialize;
use tricycle::cycles::{CycleVerdict, ProductResult};
use tricycle::homology::{GorensteinCriterion, GorensteinDims};
use tricycle::Field;

use crate::config::RecordedConfig;
use crate::files::{InputDigest, MatrixSpec, matrix_out};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DimsRecord {
    /// `None` when the resolution did not stop within the cutoff.
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub gorenstein: bool,
}

impl From<GorensteinDims> for DimsRecord {
    fn from(g: GorensteinDims) -> Self {
        DimsRecord {
            left: g.left,
            right: g.right,
            gorenstein: g.is_gorenstein(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CycleRecord {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub length: usize,
    pub algebra_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gorenstein: Option<DimsRecord>,
    pub degrees: Vec<usize>,
    /// `ext_table[i][j][t] = dim Ext^t(E_i, E_j)` for `t <= bound`.
    pub ext_table: Vec<Vec<Vec<usize>>>,
    pub bound: usize,
    /// Isomorphisms `S(E_i)[-d_i] -> E_{i+1}`.
    pub witnesses: Vec<MatrixSpec>,
}

impl CycleRecord {
    pub fn new<F: Field>(verdict: &CycleVerdict<F>, length: usize, algebra_dim: usize) -> Self {
        match verdict {
            CycleVerdict::Certified(c) => CycleRecord {
                verdict: "PASS",
                failure: None,
                length,
                algebra_dim,
                gorenstein: Some(c.gorenstein.into()),
                degrees: c.degrees.clone(),
                ext_table: c.ext_table.clone(),
                bound: c.bound,
                witnesses: c.witnesses.iter().map(|w| matrix_out(&w.matrix)).collect(),
            },
            CycleVerdict::Failed(why) => CycleRecord {
                verdict: "FAIL",
                failure: Some(why.to_string()),
                length,
                algebra_dim,
                gorenstein: match why {
                    tricycle::cycles::CycleFailure::NonGorenstein(g) => Some((*g).into()),
                    _ => None,
                },
                degrees: vec![],
                ext_table: vec![],
                bound: 0,
                witnesses: vec![],
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CriterionRecord {
    pub a: DimsRecord,
    pub b: DimsRecord,
    pub proj_dim_left_n: Option<usize>,
    pub proj_dim_right_n: Option<usize>,
    pub holds: bool,
}

impl From<GorensteinCriterion> for CriterionRecord {
    fn from(c: GorensteinCriterion) -> Self {
        CriterionRecord {
            a: c.a.into(),
            b: c.b.into(),
            proj_dim_left_n: c.pd_left_n,
            proj_dim_right_n: c.pd_right_n,
            holds: c.holds(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ProductRecord {
    pub construction: &'static str,
    pub left_degrees: Vec<usize>,
    pub right_degrees: Vec<usize>,
    pub expected_degrees: Vec<usize>,
    pub lambda_dim: usize,
    pub block_dims: [usize; 3],
    pub lambda_gorenstein: DimsRecord,
    pub criterion: CriterionRecord,
    pub glued_is_projective: bool,
}

impl ProductRecord {
    pub fn new<F: Field>(
        construction: &'static str,
        p: &ProductResult<F>,
        direct: GorensteinDims,
        criterion: GorensteinCriterion,
    ) -> Self {
        let e = &p.triangular.embedding;
        ProductRecord {
            construction,
            left_degrees: p.left_degrees.clone(),
            right_degrees: p.right_degrees.clone(),
            expected_degrees: p.expected_degrees.clone(),
            lambda_dim: p.lambda().dim(),
            block_dims: [e.a.len(), e.n.len(), e.b.len()],
            lambda_gorenstein: direct.into(),
            criterion: criterion.into(),
            glued_is_projective: p.glued_is_projective,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Certificate {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: RecordedConfig,
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<ProductRecord>,
    pub cycle: CycleRecord,
    pub verdict: &'static str,
}

impl Certificate {
    pub fn new(
        command: &'static str,
        config: RecordedConfig,
        inputs: Vec<InputDigest>,
        product: Option<ProductRecord>,
        cycle: CycleRecord,
    ) -> Self {
        let ok = cycle.passed()
            && product.as_ref().is_none_or(|p| {
                p.lambda_gorenstein.gorenstein
                    && p.criterion.holds
                    && p.expected_degrees == cycle.degrees
            });
        Certificate {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            inputs,
            product,
            cycle,
            verdict: if ok { "PASS" } else { "FAIL" },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }
}
