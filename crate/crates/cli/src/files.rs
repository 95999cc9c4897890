//! JSON file formats for algebras, modules and cycles, and a loader that
//! resolves relative references and records input digests.
//!
//! Scalars are JSON integers or strings `"p/q"`; matrices are arrays of
//! rows. An algebra file holds exactly one of `quiver` or `structure`:
//!
//! ```json
//! { "quiver": { "vertices": ["1", "2"],
//!               "arrows": [{ "source": "1", "target": "2", "label": "a" }],
//!               "relations": [] } }
//! ```
//!
//! A module file names its algebra by a path relative to itself and gives
//! the action of (at least) every generator:
//!
//! ```json
//! { "algebra": "a2.json", "dim": 1, "action": { "e_1": [[1]], "e_2": [[0]], "a": [[0]] } }
//! ```
//!
//! A cycle file lists module files: `{ "algebra": "a.json", "modules": ["p4.json"] }`.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use tricycle::algebra::{Arrow, Word};
use tricycle::cycles::PerfectCycle;
use tricycle::{build_from_quiver, Algebra, Bimodule, Field, LeftModule, Mat, QuiverPresentation};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

pub type MatrixSpec = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    /// Monomial relations, each a path listed in traversal order.
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub source: String,
    pub target: String,
    pub label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureSpec {
    pub dim: usize,
    pub labels: Vec<String>,
    /// Nonzero products `left * right`; absent pairs multiply to zero.
    pub constants: Vec<ProductSpec>,
    pub unit: BTreeMap<String, Scalar>,
    /// Primitive orthogonal idempotents; needed for anything beyond the
    /// algebra laws.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<VertexSpec>>,
    /// A basis of the Jacobson radical; derived from the idempotents when
    /// absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<Vec<BTreeMap<String, Scalar>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub left: String,
    pub right: String,
    pub result: BTreeMap<String, Scalar>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub label: String,
    pub idempotent: BTreeMap<String, Scalar>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra: String,
    pub dim: usize,
    pub action: BTreeMap<String, MatrixSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleFile {
    pub algebra: String,
    pub modules: Vec<String>,
}

/// Output only: an `A`-`B`-bimodule with both actions.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleFile {
    pub left_algebra: String,
    pub right_algebra: String,
    pub dim: usize,
    pub left_action: BTreeMap<String, MatrixSpec>,
    pub right_action: BTreeMap<String, MatrixSpec>,
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_json<T: DeserializeOwned>(path: &Path, bytes: &[u8]) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Schema {
        path: path.to_path_buf(),
        field: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn scalar<F: Field>(field: F, s: &Scalar) -> Result<F::Elem, tricycle::Error> {
    match s {
        Scalar::Int(i) => Ok(field.from_i64(*i)),
        Scalar::Text(t) => field.parse(t),
    }
}

pub fn scalar_out<F: Field>(field: F, x: &F::Elem) -> Scalar {
    let s = field.format(x);
    match s.parse::<i64>() {
        Ok(i) => Scalar::Int(i),
        Err(_) => Scalar::Text(s),
    }
}

pub fn matrix_out<F: Field>(m: &Mat<F>) -> MatrixSpec {
    let f = m.field();
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| scalar_out(f, x)).collect())
        .collect()
}

fn schema(path: &Path, field: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Schema {
        path: path.to_path_buf(),
        field: field.into(),
        message: message.into(),
    }
}

fn matrix_in<F: Field>(
    field: F,
    path: &Path,
    at: &str,
    spec: &MatrixSpec,
    rows: usize,
    cols: usize,
) -> Result<Mat<F>, CliError> {
    if spec.len() != rows || spec.iter().any(|r| r.len() != cols) {
        return Err(schema(path, at, format!("expected a {rows} x {cols} matrix")));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in spec.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            data.push(scalar(field, s).map_err(|e| schema(path, format!("{at}[{i}][{j}]"), e.to_string()))?);
        }
    }
    Ok(Mat::from_vec(field, rows, cols, data))
}

fn vector_in<F: Field>(
    field: F,
    path: &Path,
    at: &str,
    labels: &HashMap<&str, usize>,
    dim: usize,
    spec: &BTreeMap<String, Scalar>,
) -> Result<Vec<F::Elem>, CliError> {
    let mut v = vec![field.zero(); dim];
    for (label, s) in spec {
        let &i = labels
            .get(label.as_str())
            .ok_or_else(|| schema(path, format!("{at}.{label}"), "unknown basis label"))?;
        v[i] = scalar(field, s).map_err(|e| schema(path, format!("{at}.{label}"), e.to_string()))?;
    }
    Ok(v)
}

fn vector_out<F: Field>(field: F, labels: &[String], v: &[F::Elem]) -> BTreeMap<String, Scalar> {
    labels
        .iter()
        .zip(v)
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(l, x)| (l.clone(), scalar_out(field, x)))
        .collect()
}

/// Structure-constant form of an algebra, with its idempotents and
/// radical when known.
pub fn algebra_out<F: Field>(alg: &Algebra<F>) -> AlgebraFile {
    let f = alg.field();
    let labels = alg.labels().to_vec();
    let n = alg.dim();
    let mut constants = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = alg.product_of_basis(i, j);
            if !p.is_empty() {
                constants.push(ProductSpec {
                    left: labels[i].clone(),
                    right: labels[j].clone(),
                    result: p
                        .iter()
                        .map(|(k, c)| (labels[*k].clone(), scalar_out(f, c)))
                        .collect(),
                });
            }
        }
    }
    let (vertices, radical) = match alg.basic() {
        Some(b) => (
            Some(
                (0..b.vertex_count())
                    .map(|v| VertexSpec {
                        label: b.vertex_labels()[v].clone(),
                        idempotent: vector_out(f, &labels, b.idempotent(v)),
                    })
                    .collect(),
            ),
            Some(
                b.radical()
                    .columns()
                    .iter()
                    .map(|c| vector_out(f, &labels, c))
                    .collect(),
            ),
        ),
        None => (None, None),
    };
    AlgebraFile {
        quiver: None,
        structure: Some(StructureSpec {
            dim: n,
            unit: vector_out(f, &labels, alg.unit()),
            labels,
            constants,
            vertices,
            radical,
        }),
    }
}

/// With `generators_only`, products of generators are left out; a reader
/// of a structure-constant file needs every action.
pub fn module_out<F: Field>(m: &LeftModule<F>, algebra_ref: &str, generators_only: bool) -> ModuleFile {
    let alg = m.algebra();
    ModuleFile {
        algebra: algebra_ref.to_string(),
        dim: m.dim(),
        action: alg
            .labels()
            .iter()
            .enumerate()
            .filter(|(i, _)| !generators_only || alg.words()[*i] == Word::Generator)
            .map(|(i, l)| (l.clone(), matrix_out(m.action(i))))
            .collect(),
    }
}

pub fn bimodule_out<F: Field>(n: &Bimodule<F>, left_ref: &str, right_ref: &str) -> BimoduleFile {
    let actions = |alg: &Algebra<F>, act: &dyn Fn(usize) -> Mat<F>| {
        alg.labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), matrix_out(&act(i))))
            .collect()
    };
    BimoduleFile {
        left_algebra: left_ref.to_string(),
        right_algebra: right_ref.to_string(),
        dim: n.dim(),
        left_action: actions(n.left_algebra(), &|i| n.left().action(i).clone()),
        right_action: actions(n.right_algebra(), &|i| n.right().action(i).clone()),
    }
}

/// Pretty JSON with arrays of scalars kept on one line, so matrices read
/// row by row.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    fn flat(v: &Value) -> bool {
        !matches!(v, Value::Array(_) | Value::Object(_))
    }
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent + 1);
        match v {
            Value::Array(xs) if xs.is_empty() => out.push_str("[]"),
            Value::Array(xs) if xs.iter().all(flat) => {
                let parts: Vec<String> = xs.iter().map(Value::to_string).collect();
                out.push('[');
                out.push_str(&parts.join(", "));
                out.push(']');
            }
            Value::Array(xs) => {
                out.push_str("[\n");
                for (k, x) in xs.iter().enumerate() {
                    out.push_str(&pad);
                    go(x, indent + 1, out);
                    out.push_str(if k + 1 < xs.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Value::Object(m) if m.is_empty() => out.push_str("{}"),
            Value::Object(m) => {
                out.push_str("{\n");
                for (k, (key, x)) in m.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&Value::String(key.clone()).to_string());
                    out.push_str(": ");
                    go(x, indent + 1, out);
                    out.push_str(if k + 1 < m.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
            other => out.push_str(&other.to_string()),
        }
    }
    let v = serde_json::to_value(value).expect("serializable");
    let mut text = String::new();
    go(&v, 0, &mut text);
    text.push('\n');
    text
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = to_pretty(value);
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// One input file as read, with its digest.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InputDigest {
    pub file: String,
    pub sha256: String,
}

/// Loads files over one field, caching algebras by canonical path and
/// recording a digest for every file read.
pub struct Loader<F: Field> {
    field: F,
    algebras: HashMap<PathBuf, Arc<Algebra<F>>>,
    digests: Vec<InputDigest>,
}

fn canonical(path: &Path) -> Result<PathBuf, CliError> {
    fs::canonicalize(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn relative_to(base: &Path, reference: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(reference)
}

impl<F: Field> Loader<F> {
    pub fn new(field: F) -> Self {
        Loader {
            field,
            algebras: HashMap::new(),
            digests: Vec::new(),
        }
    }

    pub fn field(&self) -> F {
        self.field
    }

    /// Digests in the order the files were first read.
    pub fn digests(&self) -> &[InputDigest] {
        &self.digests
    }

    fn read_recorded(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = read(path)?;
        let file = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let digest = InputDigest {
            file,
            sha256: sha256_hex(&bytes),
        };
        if !self.digests.contains(&digest) {
            self.digests.push(digest);
        }
        Ok(bytes)
    }

    pub fn algebra(&mut self, path: &Path) -> Result<Arc<Algebra<F>>, CliError> {
        let key = canonical(path)?;
        if let Some(a) = self.algebras.get(&key) {
            return Ok(a.clone());
        }
        let bytes = self.read_recorded(path)?;
        let file: AlgebraFile = parse_json(path, &bytes)?;
        let alg = match (file.quiver, file.structure) {
            (Some(q), None) => self.quiver_algebra(q)?,
            (None, Some(s)) => self.structure_algebra(path, s)?,
            _ => {
                return Err(schema(
                    path,
                    ".",
                    "exactly one of `quiver` or `structure` is required",
                ))
            }
        };
        let alg = Arc::new(alg);
        self.algebras.insert(key, alg.clone());
        Ok(alg)
    }

    fn quiver_algebra(&self, q: QuiverSpec) -> Result<Algebra<F>, CliError> {
        let pres = QuiverPresentation::new(
            q.vertices,
            q.arrows
                .iter()
                .map(|a| Arrow::new(&a.source, &a.target, &a.label))
                .collect(),
            q.relations,
        );
        Ok(build_from_quiver(&pres, self.field, tricycle::algebra::DEFAULT_PATH_BOUND)?)
    }

    fn structure_algebra(&self, path: &Path, s: StructureSpec) -> Result<Algebra<F>, CliError> {
        let f = self.field;
        let n = s.dim;
        if s.labels.len() != n {
            return Err(schema(path, "structure.labels", format!("expected {n} labels")));
        }
        let index: HashMap<&str, usize> = s
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != n {
            return Err(schema(path, "structure.labels", "labels must be distinct"));
        }
        let mut table = vec![vec![vec![f.zero(); n]; n]; n];
        for (k, p) in s.constants.iter().enumerate() {
            let at = format!("structure.constants[{k}]");
            let look = |l: &str, what: &str| {
                index
                    .get(l)
                    .copied()
                    .ok_or_else(|| schema(path, format!("{at}.{what}"), format!("unknown label `{l}`")))
            };
            let (i, j) = (look(&p.left, "left")?, look(&p.right, "right")?);
            table[i][j] = vector_in(f, path, &format!("{at}.result"), &index, n, &p.result)?;
        }
        let unit = vector_in(f, path, "structure.unit", &index, n, &s.unit)?;
        let alg = Algebra::from_structure(f, s.labels.clone(), table, unit)?;
        let Some(vertices) = s.vertices else {
            return Ok(alg);
        };
        let vlabels = vertices.iter().map(|v| v.label.clone()).collect();
        let idem = vertices
            .iter()
            .enumerate()
            .map(|(k, v)| {
                vector_in(
                    f,
                    path,
                    &format!("structure.vertices[{k}].idempotent"),
                    &index,
                    n,
                    &v.idempotent,
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        match s.radical {
            None => Ok(alg.with_idempotents(vlabels, idem)?),
            Some(rad) => {
                let cols = rad
                    .iter()
                    .enumerate()
                    .map(|(k, r)| vector_in(f, path, &format!("structure.radical[{k}]"), &index, n, r))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(alg.with_basic_data(vlabels, idem, Mat::from_columns(f, n, &cols))?)
            }
        }
    }

    pub fn module(&mut self, path: &Path) -> Result<LeftModule<F>, CliError> {
        let bytes = self.read_recorded(path)?;
        let file: ModuleFile = parse_json(path, &bytes)?;
        let alg = self.algebra(&relative_to(path, &file.algebra))?;
        let d = file.dim;
        let mut given: Vec<Option<Mat<F>>> = vec![None; alg.dim()];
        for (label, spec) in &file.action {
            let i = alg
                .label_index(label)
                .ok_or_else(|| schema(path, format!("action.{label}"), "unknown basis label"))?;
            given[i] = Some(matrix_in(self.field, path, &format!("action.{label}"), spec, d, d)?);
        }
        let m = if given.iter().all(Option::is_some) {
            LeftModule::new(alg.clone(), d, given.into_iter().map(Option::unwrap).collect())?
        } else {
            let m = LeftModule::from_generators(alg.clone(), d, |i| given[i].clone())?;
            for (i, g) in given.iter().enumerate() {
                if let Some(g) = g {
                    if alg.words()[i] != Word::Generator && g != m.action(i) {
                        return Err(tricycle::Error::InvalidModule(format!(
                            "action of `{}` disagrees with the generators",
                            alg.labels()[i]
                        ))
                        .into());
                    }
                }
            }
            m
        };
        Ok(m)
    }

    pub fn cycle(&mut self, path: &Path) -> Result<PerfectCycle<F>, CliError> {
        let bytes = self.read_recorded(path)?;
        let file: CycleFile = parse_json(path, &bytes)?;
        let alg = self.algebra(&relative_to(path, &file.algebra))?;
        let modules = file
            .modules
            .iter()
            .map(|m| self.module(&relative_to(path, m)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PerfectCycle::new(alg, modules)?)
    }
}

#[cfg(test)]
mod tests {
    use tempfile::TempDir;
    use tricycle::{PrimeField, Rationals};

    use super::*;

    fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    const A2: &str = r#"{"quiver": {"vertices": ["1", "2"],
        "arrows": [{"source": "1", "target": "2", "label": "a"}]}}"#;

    #[test]
    fn scalars_parse_over_both_fields() {
        let s = Scalar::Text("-3/4".into());
        assert_eq!(Rationals.format(&scalar(Rationals, &s).unwrap()), "-3/4");
        let f = PrimeField::new(7).unwrap();
        assert_eq!(scalar(f, &s).unwrap(), f.div(&f.from_i64(-3), &f.from_i64(4)));
        assert_eq!(scalar_out(Rationals, &Rationals.from_i64(5)), Scalar::Int(5));
    }

    #[test]
    fn compact_printing_keeps_rows_on_one_line() {
        let text = to_pretty(&serde_json::json!({"m": [[1, 0], ["1/2", 3]], "e": []}));
        assert_eq!(text, "{\n  \"m\": [\n    [1, 0],\n    [\"1/2\", 3]\n  ],\n  \"e\": []\n}\n");
    }

    #[test]
    fn loads_a_quiver_algebra_and_a_module() {
        let dir = TempDir::new().unwrap();
        write(&dir, "a2.json", A2);
        let m = write(
            &dir,
            "s2.json",
            r#"{"algebra": "a2.json", "dim": 1, "action": {"e_1": [[0]], "e_2": [[1]], "a": [[0]]}}"#,
        );
        let mut loader = Loader::new(Rationals);
        let s2 = loader.module(&m).unwrap();
        assert_eq!(s2.algebra().dim(), 3);
        assert_eq!(loader.digests().len(), 2);
        assert_eq!(loader.digests()[0].file, "s2.json");
    }

    #[test]
    fn schema_errors_name_the_field() {
        let dir = TempDir::new().unwrap();
        let p = write(&dir, "bad.json", r#"{"quiver": {"vertices": ["1"], "arows": []}}"#);
        match Loader::new(Rationals).algebra(&p) {
            Err(CliError::Schema { field, .. }) => assert_eq!(field, "quiver.arows"),
            other => panic!("{other:?}"),
        }
        let p = write(&dir, "both.json", r#"{}"#);
        assert!(matches!(Loader::new(Rationals).algebra(&p), Err(CliError::Schema { .. })));
        write(&dir, "a2.json", A2);
        let m = write(
            &dir,
            "m.json",
            r#"{"algebra": "a2.json", "dim": 1, "action": {"e_1": [[0, 1]]}}"#,
        );
        match Loader::new(Rationals).module(&m) {
            Err(CliError::Schema { field, .. }) => assert_eq!(field, "action.e_1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn structure_files_round_trip() {
        let dir = TempDir::new().unwrap();
        let a = write(&dir, "a2.json", A2);
        let mut loader = Loader::new(Rationals);
        let alg = loader.algebra(&a).unwrap();
        let s = write(&dir, "s.json", &to_pretty(&algebra_out(&alg)));
        let back = Loader::new(Rationals).algebra(&s).unwrap();
        assert!(back.same_as(&alg));
        assert_eq!(back.basic().unwrap().vertex_count(), 2);
    }

    #[test]
    fn inconsistent_products_are_rejected() {
        let dir = TempDir::new().unwrap();
        write(&dir, "a3.json", r#"{"quiver": {"vertices": ["1", "2", "3"],
            "arrows": [{"source": "1", "target": "2", "label": "a"},
                       {"source": "2", "target": "3", "label": "b"}]}}"#);
        let alg = Loader::new(Rationals).algebra(&dir.path().join("a3.json")).unwrap();
        let ab = alg.labels().iter().find(|l| l.contains('.')).unwrap().clone();
        let text = format!(
            r#"{{"algebra": "a3.json", "dim": 1, "action": {{"e_1": [[1]], "e_2": [[0]], "e_3": [[0]],
                "a": [[0]], "b": [[0]], "{ab}": [[1]]}}}}"#
        );
        let m = write(&dir, "m.json", &text);
        let err = Loader::new(Rationals).module(&m).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{err}");
    }
}
