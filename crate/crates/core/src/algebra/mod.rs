//! Finite-dimensional algebras given by structure constants.
//!
//! An [`Algebra`] stores `b_i * b_j` for every pair of basis elements as a
//! sparse coordinate vector. Algebras built from quivers, opposites and
//! triangular matrix constructions additionally carry [`BasicData`]: a
//! complete set of primitive orthogonal idempotents and a basis of the
//! Jacobson radical, which is what simple, projective and injective modules
//! are built from.

mod quiver;
mod triangular;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

pub use quiver::{build_from_quiver, Arrow, QuiverPresentation, DEFAULT_PATH_BOUND};
pub use triangular::{triangular, EmbeddingData, Triangular};

use crate::error::{Error, Result};
use crate::linalg::{Field, Mat};
use crate::module::StandardModules;

/// Sparse coordinate vector: `(basis index, coefficient)` with nonzero
/// coefficients, sorted by index.
pub type Sparse<F> = Vec<(usize, <F as Field>::Elem)>;

/// How a basis element arises from the algebra generators. Module actions
/// only have to be supplied on generators; the rest follow from the words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Word {
    Generator,
    /// `b = b_i * b_j`
    Product(usize, usize),
}

/// Idempotents and radical of a basic algebra whose simple modules are
/// one-dimensional.
#[derive(Clone, Debug)]
pub struct BasicData<F: Field> {
    vertex_labels: Vec<String>,
    idempotents: Vec<Vec<F::Elem>>,
    /// Columns span the Jacobson radical.
    radical: Mat<F>,
    /// `top * x` gives the coefficients `l_i` in `x = sum l_i e_i + r`.
    top: Mat<F>,
}

impl<F: Field> BasicData<F> {
    pub fn vertex_count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn idempotent(&self, i: usize) -> &[F::Elem] {
        &self.idempotents[i]
    }

    pub fn radical(&self) -> &Mat<F> {
        &self.radical
    }

    /// Coefficients of `x` on the idempotents modulo the radical.
    pub fn top_coefficients(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.top.mul_vec(x)
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    fn build(
        field: F,
        dim: usize,
        vertex_labels: Vec<String>,
        idempotents: Vec<Vec<F::Elem>>,
        radical: Mat<F>,
    ) -> Result<Self> {
        let cols: Vec<Vec<F::Elem>> = idempotents
            .iter()
            .cloned()
            .chain(radical.columns())
            .collect();
        let square = Mat::from_columns(field, dim, &cols);
        let inv = square.inverse().ok_or_else(|| {
            Error::UnsupportedAlgebra(
                "idempotents and radical do not form a basis (algebra is not basic)".into(),
            )
        })?;
        let n = idempotents.len();
        let top = inv.block(0, 0, n, dim);
        Ok(BasicData {
            vertex_labels,
            idempotents,
            radical,
            top,
        })
    }
}

/// A finite-dimensional associative unital algebra.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    field: F,
    labels: Vec<String>,
    products: Vec<Sparse<F>>,
    unit: Vec<F::Elem>,
    words: Vec<Word>,
    presentation: Option<QuiverPresentation>,
    basic: Option<BasicData<F>>,
    fingerprint: u64,
    regular: OnceLock<Vec<Mat<F>>>,
    opposite: OnceLock<Arc<Algebra<F>>>,
    standard: OnceLock<Arc<StandardModules<F>>>,
}

impl<F: Field> PartialEq for Algebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.field == other.field
            && self.products == other.products
    }
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from a dense table: `table[i][j]` holds the
    /// coordinates of `b_i * b_j`. Associativity and the unit laws are
    /// checked on every basis triple.
    pub fn from_structure(
        field: F,
        labels: Vec<String>,
        table: Vec<Vec<Vec<F::Elem>>>,
        unit: Vec<F::Elem>,
    ) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim
            || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim))
            || unit.len() != dim
        {
            return Err(Error::DimensionMismatch(format!(
                "structure table must be {dim} x {dim} x {dim} with a unit of length {dim}"
            )));
        }
        let products = table
            .into_iter()
            .flatten()
            .map(|v| to_sparse(field, &v))
            .collect();
        let alg = Self::assemble(field, labels, products, unit, None, None, None);
        alg.check_laws()?;
        Ok(alg)
    }

    pub(crate) fn assemble(
        field: F,
        labels: Vec<String>,
        products: Vec<Sparse<F>>,
        unit: Vec<F::Elem>,
        words: Option<Vec<Word>>,
        presentation: Option<QuiverPresentation>,
        basic: Option<BasicData<F>>,
    ) -> Self {
        let dim = labels.len();
        let mut h = DefaultHasher::new();
        dim.hash(&mut h);
        for p in &products {
            p.len().hash(&mut h);
            for (i, c) in p {
                i.hash(&mut h);
                c.hash(&mut h);
            }
        }
        Algebra {
            field,
            labels,
            products,
            unit,
            words: words.unwrap_or_else(|| vec![Word::Generator; dim]),
            presentation,
            basic,
            fingerprint: h.finish(),
            regular: OnceLock::new(),
            opposite: OnceLock::new(),
            standard: OnceLock::new(),
        }
    }

    /// The one-dimensional algebra `k`, presented as the quiver with one
    /// vertex and no arrows.
    pub fn ground(field: F) -> Self {
        build_from_quiver(
            &QuiverPresentation::new(vec!["1".into()], vec![], vec![]),
            field,
            DEFAULT_PATH_BOUND,
        )
        .expect("single vertex quiver")
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.words[i] == Word::Generator)
            .collect()
    }

    pub fn presentation(&self) -> Option<&QuiverPresentation> {
        self.presentation.as_ref()
    }

    pub fn basic(&self) -> Option<&BasicData<F>> {
        self.basic.as_ref()
    }

    /// Basic data, or an `UnsupportedAlgebra` error naming `what` needed it.
    pub fn require_basic(&self, what: &str) -> Result<&BasicData<F>> {
        self.basic.as_ref().ok_or_else(|| {
            Error::UnsupportedAlgebra(format!(
                "{what} needs a quiver presentation or a complete set of primitive idempotents"
            ))
        })
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Coordinates of `b_i * b_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &Sparse<F> {
        &self.products[i * self.dim() + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (l, c) in self.product_of_basis(i, j) {
                    f.add_mul_assign(&mut out[*l], &ab, c);
                }
            }
        }
        out
    }

    /// Left regular action: matrix of left multiplication by each basis
    /// element.
    pub fn left_regular(&self) -> &[Mat<F>] {
        self.regular.get_or_init(|| {
            (0..self.dim())
                .map(|i| self.left_mult_matrix(&self.basis_vector(i)))
                .collect()
        })
    }

    /// The opposite algebra, computed once per `Arc`.
    pub fn opposite_arc(self: &Arc<Self>) -> Arc<Self> {
        self.opposite
            .get_or_init(|| Arc::new(self.opposite()))
            .clone()
    }

    /// Indecomposable projectives and injectives, computed once.
    pub fn standard(self: &Arc<Self>) -> Result<Arc<StandardModules<F>>> {
        if let Some(s) = self.standard.get() {
            return Ok(s.clone());
        }
        let s = Arc::new(StandardModules::compute(self)?);
        Ok(self.standard.get_or_init(|| s).clone())
    }

    /// Matrix of left multiplication by `x` on the algebra itself.
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Mat<F> {
        let cols: Vec<_> = (0..self.dim())
            .map(|j| self.mul(x, &self.basis_vector(j)))
            .collect();
        Mat::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of right multiplication by `x`.
    pub fn right_mult_matrix(&self, x: &[F::Elem]) -> Mat<F> {
        let cols: Vec<_> = (0..self.dim())
            .map(|j| self.mul(&self.basis_vector(j), x))
            .collect();
        Mat::from_columns(self.field, self.dim(), &cols)
    }

    /// Checks associativity and the unit laws on every basis triple; the
    /// error names the first violating triple.
    pub fn check_laws(&self) -> Result<()> {
        let f = self.field;
        let n = self.dim();
        for i in 0..n {
            let bi = self.basis_vector(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(Error::UnitLaw(format!(
                    "unit does not act as identity on `{}`",
                    self.labels[i]
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_of_basis(i, j);
                for l in 0..n {
                    let mut left = vec![f.zero(); n];
                    for (m, c) in ij {
                        for (r, d) in self.product_of_basis(*m, l) {
                            f.add_mul_assign(&mut left[*r], c, d);
                        }
                    }
                    let mut right = vec![f.zero(); n];
                    for (m, c) in self.product_of_basis(j, l) {
                        for (r, d) in self.product_of_basis(i, *m) {
                            f.add_mul_assign(&mut right[*r], c, d);
                        }
                    }
                    if left != right {
                        return Err(Error::NotAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[l].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Attaches a complete set of primitive orthogonal idempotents and
    /// derives the radical from them.
    pub fn with_idempotents(
        mut self,
        vertex_labels: Vec<String>,
        idempotents: Vec<Vec<F::Elem>>,
    ) -> Result<Self> {
        let radical = self.radical_from_idempotents(&idempotents)?;
        self.basic = Some(BasicData::build(
            self.field,
            self.dim(),
            vertex_labels,
            idempotents,
            radical,
        )?);
        Ok(self)
    }

    /// Attaches idempotents together with a user-supplied radical basis.
    pub fn with_basic_data(
        mut self,
        vertex_labels: Vec<String>,
        idempotents: Vec<Vec<F::Elem>>,
        radical: Mat<F>,
    ) -> Result<Self> {
        self.check_idempotents(&idempotents)?;
        self.basic = Some(BasicData::build(
            self.field,
            self.dim(),
            vertex_labels,
            idempotents,
            radical,
        )?);
        Ok(self)
    }

    fn check_idempotents(&self, idem: &[Vec<F::Elem>]) -> Result<()> {
        let f = self.field;
        let zero = vec![f.zero(); self.dim()];
        let mut sum = zero.clone();
        for (i, e) in idem.iter().enumerate() {
            if e.len() != self.dim() {
                return Err(Error::DimensionMismatch("idempotent length".into()));
            }
            for (j, g) in idem.iter().enumerate() {
                let eg = self.mul(e, g);
                let ok = if i == j { &eg == e } else { eg == zero };
                if !ok {
                    return Err(Error::UnsupportedAlgebra(format!(
                        "idempotents {i} and {j} are not orthogonal idempotents"
                    )));
                }
            }
            for (s, x) in sum.iter_mut().zip(e) {
                *s = f.add(s, x);
            }
        }
        if sum != self.unit {
            return Err(Error::UnsupportedAlgebra(
                "idempotents do not sum to the unit".into(),
            ));
        }
        Ok(())
    }

    /// Radical of a split basic algebra from its Peirce decomposition:
    /// `e_i A e_j` for `i != j` lies in the radical, and the radical of the
    /// local algebra `e_i A e_i` is the kernel of its unique character.
    fn radical_from_idempotents(&self, idem: &[Vec<F::Elem>]) -> Result<Mat<F>> {
        self.check_idempotents(idem)?;
        let f = self.field;
        let mut rad_cols: Vec<Vec<F::Elem>> = Vec::new();
        for (i, ei) in idem.iter().enumerate() {
            let li = self.left_mult_matrix(ei);
            for (j, ej) in idem.iter().enumerate() {
                let peirce = li.mul(&self.right_mult_matrix(ej)).image_basis();
                if i != j {
                    rad_cols.extend(peirce.columns());
                    continue;
                }
                let basis = peirce.columns();
                let coords_of = peirce.left_inverse().expect("independent columns");
                for y in &basis {
                    let m = coords_of.mul(&Mat::from_columns(
                        f,
                        self.dim(),
                        &basis.iter().map(|b| self.mul(y, b)).collect::<Vec<_>>(),
                    ));
                    let lambda = unique_eigenvalue(&m).ok_or_else(|| {
                        Error::UnsupportedAlgebra(format!(
                            "e_{i} A e_{i} is not local with residue field k (idempotent {i} not primitive)"
                        ))
                    })?;
                    let v: Vec<_> = y
                        .iter()
                        .zip(ei)
                        .map(|(a, e)| f.sub(a, &f.mul(&lambda, e)))
                        .collect();
                    rad_cols.push(v);
                }
            }
        }
        let rad = Mat::from_columns(f, self.dim(), &rad_cols).image_basis();
        if rad.cols() + idem.len() != self.dim() {
            return Err(Error::UnsupportedAlgebra(
                "radical has wrong dimension; algebra is not split basic".into(),
            ));
        }
        Ok(rad)
    }

    /// The opposite algebra: same basis, `b_i *op b_j = b_j * b_i`.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                products.push(self.product_of_basis(j, i).clone());
            }
        }
        let words = self
            .words
            .iter()
            .map(|w| match *w {
                Word::Generator => Word::Generator,
                Word::Product(a, b) => Word::Product(b, a),
            })
            .collect();
        Self::assemble(
            self.field,
            self.labels.clone(),
            products,
            self.unit.clone(),
            Some(words),
            self.presentation.as_ref().map(QuiverPresentation::reversed),
            self.basic.clone(),
        )
    }

    /// Whether two algebras have the same structure constants over the
    /// same field.
    pub fn same_as(&self, other: &Self) -> bool {
        self == other
    }
}

/// The single eigenvalue of a matrix that is scalar plus nilpotent, if it is.
fn unique_eigenvalue<F: Field>(m: &Mat<F>) -> Option<F::Elem> {
    let f = m.field();
    let n = m.rows();
    if n == 0 {
        return None;
    }
    let mut trace = f.zero();
    for i in 0..n {
        trace = f.add(&trace, &m[(i, i)]);
    }
    let n_elem = f.from_i64(n as i64);
    let candidates: Vec<F::Elem> = if !f.is_zero(&n_elem) {
        vec![f.div(&trace, &n_elem)]
    } else {
        match f.spec() {
            crate::linalg::FieldSpec::Prime(p) => (0..p as i64).map(|v| f.from_i64(v)).collect(),
            crate::linalg::FieldSpec::Rationals => unreachable!("n is invertible over Q"),
        }
    };
    candidates.into_iter().find(|lambda| {
        let shifted = m.sub(&Mat::identity(f, n).scale(lambda));
        let mut pow = shifted.clone();
        for _ in 1..n {
            pow = pow.mul(&shifted);
        }
        pow.is_zero()
    })
}

pub(crate) fn to_sparse<F: Field>(field: F, v: &[F::Elem]) -> Sparse<F> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    fn upper_triangular_2x2(field: Rationals) -> Algebra<Rationals> {
        // basis e11, e12, e22 of upper triangular 2x2 matrices
        let z = || vec![field.zero(); 3];
        let b = |i: usize| {
            let mut v = z();
            v[i] = field.one();
            v
        };
        let mut table = vec![vec![z(); 3]; 3];
        table[0][0] = b(0);
        table[0][1] = b(1);
        table[1][2] = b(1);
        table[2][2] = b(2);
        let unit = vec![field.one(), field.zero(), field.one()];
        Algebra::from_structure(field, vec!["e11".into(), "e12".into(), "e22".into()], table, unit)
            .unwrap()
    }

    #[test]
    fn structure_algebra_with_idempotents_finds_radical() {
        let q = Rationals;
        let a = upper_triangular_2x2(q)
            .with_idempotents(
                vec!["1".into(), "2".into()],
                vec![
                    vec![q.one(), q.zero(), q.zero()],
                    vec![q.zero(), q.zero(), q.one()],
                ],
            )
            .unwrap();
        let basic = a.basic().unwrap();
        assert_eq!(basic.radical().cols(), 1);
        assert_eq!(basic.radical().column(0), vec![q.zero(), q.one(), q.zero()]);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let q = Rationals;
        // b0 = unit, b1*b1 = b2, b1*b2 = b1, b2*b1 = 0: (b1 b1) b1 = 0 but b1 (b1 b1) = b1
        let vec3 = |a: i64, b: i64, c: i64| vec![q.from_i64(a), q.from_i64(b), q.from_i64(c)];
        let table = vec![
            vec![vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)],
            vec![vec3(0, 1, 0), vec3(0, 0, 1), vec3(0, 1, 0)],
            vec![vec3(0, 0, 1), vec3(0, 0, 0), vec3(0, 0, 0)],
        ];
        let err = Algebra::from_structure(
            q,
            vec!["1".into(), "x".into(), "y".into()],
            table,
            vec3(1, 0, 0),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = upper_triangular_2x2(Rationals);
        let op = a.opposite();
        assert!(!op.same_as(&a));
        assert!(op.opposite().same_as(&a));
        op.check_laws().unwrap();
    }

    #[test]
    fn unique_eigenvalue_over_small_prime() {
        let f = PrimeField::new(2).unwrap();
        // 2x2 Jordan block with eigenvalue 1: trace/2 is undefined in F_2
        let m = Mat::from_i64(f, &[&[1, 1], &[0, 1]]);
        assert_eq!(unique_eigenvalue(&m), Some(1));
        let d = Mat::from_i64(f, &[&[1, 0], &[0, 0]]);
        assert_eq!(unique_eigenvalue(&d), None);
    }
}
