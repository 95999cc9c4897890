//! Bound quiver algebras `kQ/I` with `I` generated by monomial relations.
//!
//! Paths are stored in traversal order (first arrow first). Multiplication
//! is composition: `p * q` means "walk `q`, then `p`", so `A e_i` is spanned
//! by the paths starting at `i` and left modules are representations of `Q`.

use std::collections::{HashMap, HashSet};

use super::{Algebra, BasicData, Sparse, Word};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat};

/// Paths longer than this are taken as evidence of infinite dimension.
pub const DEFAULT_PATH_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: String,
    pub target: String,
    pub label: String,
}

impl Arrow {
    pub fn new(source: &str, target: &str, label: &str) -> Self {
        Arrow {
            source: source.into(),
            target: target.into(),
            label: label.into(),
        }
    }
}

/// A finite quiver with monomial relations, each given as a list of arrow
/// labels in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<String>>,
}

impl QuiverPresentation {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Vec<String>>) -> Self {
        QuiverPresentation {
            vertices,
            arrows,
            relations,
        }
    }

    /// The opposite quiver, with relations read backwards.
    pub fn reversed(&self) -> Self {
        QuiverPresentation {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow::new(&a.target, &a.source, &a.label))
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| r.iter().rev().cloned().collect())
                .collect(),
        }
    }

    /// An oriented cycle `v_1 -> v_2 -> ... -> v_n -> v_1` with all paths of
    /// length `nilpotency` set to zero.
    pub fn truncated_cycle(vertices: &[&str], arrow_prefix: &str, nilpotency: usize) -> Self {
        let n = vertices.len();
        let arrows: Vec<Arrow> = (0..n)
            .map(|i| {
                Arrow::new(
                    vertices[i],
                    vertices[(i + 1) % n],
                    &format!("{arrow_prefix}{}", i + 1),
                )
            })
            .collect();
        let relations = (0..n)
            .map(|i| {
                (0..nilpotency)
                    .map(|k| arrows[(i + k) % n].label.clone())
                    .collect()
            })
            .collect();
        QuiverPresentation::new(
            vertices.iter().map(|v| v.to_string()).collect(),
            arrows,
            relations,
        )
    }

    /// A linearly oriented `A_n` quiver `1 -> 2 -> ... -> n` with the given
    /// relations.
    pub fn linear(n: usize, relations: Vec<Vec<String>>) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| Arrow::new(&i.to_string(), &(i + 1).to_string(), &format!("a{i}")))
            .collect();
        QuiverPresentation::new(vertices, arrows, relations)
    }

    /// Arrow ends as vertex indices, and relations as arrow indices.
    #[allow(clippy::type_complexity)]
    fn validate(&self) -> Result<(Vec<(usize, usize)>, Vec<Vec<usize>>)> {
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::MalformedQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let vindex: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut ends = Vec::new();
        let mut labels = HashMap::new();
        for (k, a) in self.arrows.iter().enumerate() {
            let (Some(&s), Some(&t)) = (vindex.get(a.source.as_str()), vindex.get(a.target.as_str()))
            else {
                return Err(Error::MalformedQuiver(format!(
                    "arrow `{}` has a dangling endpoint",
                    a.label
                )));
            };
            if labels.insert(a.label.as_str(), k).is_some() || vindex.contains_key(a.label.as_str())
            {
                return Err(Error::MalformedQuiver(format!(
                    "label `{}` is not unique",
                    a.label
                )));
            }
            ends.push((s, t));
        }
        let mut rels = Vec::new();
        for r in &self.relations {
            if r.len() < 2 {
                return Err(Error::MalformedQuiver(
                    "relations must have length at least 2".into(),
                ));
            }
            let path = r
                .iter()
                .map(|l| {
                    labels.get(l.as_str()).copied().ok_or_else(|| {
                        Error::MalformedQuiver(format!("relation uses unknown arrow `{l}`"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if path.windows(2).any(|w| ends[w[0]].1 != ends[w[1]].0) {
                return Err(Error::MalformedQuiver(format!(
                    "relation {r:?} is not a composable path"
                )));
            }
            rels.push(path);
        }
        Ok((ends, rels))
    }
}

fn contains_relation(path: &[usize], relations: &[Vec<usize>]) -> bool {
    relations
        .iter()
        .any(|r| r.len() <= path.len() && path.windows(r.len()).any(|w| w == r.as_slice()))
}

fn ends_with_relation(path: &[usize], relations: &[Vec<usize>]) -> bool {
    relations.iter().any(|r| path.ends_with(r))
}

#[derive(Clone, Debug)]
enum PathKind {
    Trivial(usize),
    Arrows(Vec<usize>),
}

/// Builds `kQ/I`. The basis is every path (trivial paths first) containing
/// no relation as a subpath; enumeration fails once paths of length
/// `path_bound` still survive.
pub fn build_from_quiver<F: Field>(
    q: &QuiverPresentation,
    field: F,
    path_bound: usize,
) -> Result<Algebra<F>> {
    let (ends, rels) = q.validate()?;
    let nv = q.vertices.len();
    let mut paths: Vec<PathKind> = (0..nv).map(PathKind::Trivial).collect();
    let mut layer: Vec<Vec<usize>> = (0..q.arrows.len()).map(|a| vec![a]).collect();
    let mut length = 1;
    while !layer.is_empty() {
        if length > path_bound {
            return Err(Error::InfiniteDimensional { bound: path_bound });
        }
        let mut next = Vec::new();
        for p in &layer {
            let end = ends[*p.last().expect("nonempty")].1;
            for (a, &(s, _)) in ends.iter().enumerate() {
                if s != end {
                    continue;
                }
                let mut ext = p.clone();
                ext.push(a);
                if !ends_with_relation(&ext, &rels) {
                    next.push(ext);
                }
            }
        }
        paths.extend(layer.into_iter().map(PathKind::Arrows));
        layer = next;
        length += 1;
    }

    let index: HashMap<Vec<usize>, usize> = paths
        .iter()
        .enumerate()
        .filter_map(|(i, p)| match p {
            PathKind::Arrows(a) => Some((a.clone(), i)),
            PathKind::Trivial(_) => None,
        })
        .collect();
    let source = |p: &PathKind| match p {
        PathKind::Trivial(v) => *v,
        PathKind::Arrows(a) => ends[a[0]].0,
    };
    let target = |p: &PathKind| match p {
        PathKind::Trivial(v) => *v,
        PathKind::Arrows(a) => ends[*a.last().unwrap()].1,
    };

    let dim = paths.len();
    let mut products: Vec<Sparse<F>> = Vec::with_capacity(dim * dim);
    for p in &paths {
        for qp in &paths {
            // p * q: walk q then p
            let entry = if target(qp) != source(p) {
                None
            } else {
                match (qp, p) {
                    (PathKind::Trivial(_), _) => Some(index_of(p, &index)),
                    (_, PathKind::Trivial(_)) => Some(index_of(qp, &index)),
                    (PathKind::Arrows(a), PathKind::Arrows(b)) => {
                        let cat: Vec<usize> = a.iter().chain(b).copied().collect();
                        if contains_relation(&cat, &rels) {
                            None
                        } else {
                            index.get(&cat).copied()
                        }
                    }
                }
            };
            products.push(entry.map_or_else(Vec::new, |k| vec![(k, field.one())]));
        }
    }

    let labels: Vec<String> = paths
        .iter()
        .map(|p| match p {
            PathKind::Trivial(v) => format!("e_{}", q.vertices[*v]),
            PathKind::Arrows(a) => a
                .iter()
                .map(|&k| q.arrows[k].label.as_str())
                .collect::<Vec<_>>()
                .join("."),
        })
        .collect();
    let words: Vec<Word> = paths
        .iter()
        .map(|p| match p {
            PathKind::Arrows(a) if a.len() > 1 => {
                let prefix = index[&a[..a.len() - 1].to_vec()];
                let last = index[&vec![*a.last().unwrap()]];
                Word::Product(last, prefix)
            }
            _ => Word::Generator,
        })
        .collect();
    let mut unit = vec![field.zero(); dim];
    for u in unit.iter_mut().take(nv) {
        *u = field.one();
    }
    let idempotents: Vec<Vec<F::Elem>> = (0..nv)
        .map(|v| {
            let mut e = vec![field.zero(); dim];
            e[v] = field.one();
            e
        })
        .collect();
    let radical_cols: Vec<Vec<F::Elem>> = (nv..dim)
        .map(|i| {
            let mut e = vec![field.zero(); dim];
            e[i] = field.one();
            e
        })
        .collect();
    let radical = Mat::from_columns(field, dim, &radical_cols);
    let basic = BasicData::build(field, dim, q.vertices.clone(), idempotents, radical)?;
    Ok(Algebra::assemble(
        field,
        labels,
        products,
        unit,
        Some(words),
        Some(q.clone()),
        Some(basic),
    ))
}

fn index_of(p: &PathKind, index: &HashMap<Vec<usize>, usize>) -> usize {
    match p {
        PathKind::Trivial(v) => *v,
        PathKind::Arrows(a) => index[a],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;

    /// Independent count: enumerate all arrow words up to `max_len`, keep
    /// composable ones avoiding every relation.
    fn brute_force_path_count(q: &QuiverPresentation, max_len: usize) -> usize {
        let (ends, rels) = q.validate().unwrap();
        let mut count = q.vertices.len();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &words {
                for a in 0..ends.len() {
                    let mut x = w.clone();
                    x.push(a);
                    next.push(x);
                }
            }
            for w in &next {
                let composable = w.windows(2).all(|p| ends[p[0]].1 == ends[p[1]].0);
                if composable && !contains_relation(w, &rels) {
                    count += 1;
                }
            }
            words = next;
        }
        count
    }

    fn q1() -> QuiverPresentation {
        QuiverPresentation::truncated_cycle(&["1", "2", "3", "4"], "a", 3)
    }

    #[test]
    fn single_vertex_is_the_field() {
        let k = Algebra::ground(Rationals);
        assert_eq!(k.dim(), 1);
        k.check_laws().unwrap();
    }

    #[test]
    fn q1_modulo_alpha_cubed_has_dimension_12() {
        let a = build_from_quiver(&q1(), Rationals, DEFAULT_PATH_BOUND).unwrap();
        assert_eq!(a.dim(), 12);
        assert_eq!(brute_force_path_count(&q1(), 5), 12);
        a.check_laws().unwrap();
    }

    #[test]
    fn q3_has_dimension_39() {
        let mut q = q1();
        let q2 = QuiverPresentation::truncated_cycle(&["1'", "2'", "3'", "4'", "5'", "6'"], "b", 3);
        q.vertices.extend(q2.vertices);
        q.arrows.extend(q2.arrows);
        q.relations.extend(q2.relations);
        q.arrows.push(Arrow::new("1'", "2", "g"));
        let lam = build_from_quiver(&q, Rationals, DEFAULT_PATH_BOUND).unwrap();
        assert_eq!(lam.dim(), 39);
        assert_eq!(brute_force_path_count(&q, 6), 39);
    }

    #[test]
    fn cycle_without_relations_is_infinite() {
        let q = QuiverPresentation::new(
            vec!["1".into()],
            vec![Arrow::new("1", "1", "x")],
            vec![],
        );
        let err = build_from_quiver(&q, Rationals, 10).unwrap_err();
        assert_eq!(err, Error::InfiniteDimensional { bound: 10 });
    }

    #[test]
    fn malformed_quivers_are_rejected() {
        let dangling = QuiverPresentation::new(
            vec!["1".into()],
            vec![Arrow::new("1", "2", "a")],
            vec![],
        );
        assert!(matches!(
            build_from_quiver(&dangling, Rationals, 8),
            Err(Error::MalformedQuiver(_))
        ));
        let short = QuiverPresentation::linear(2, vec![vec!["a1".into()]]);
        assert!(build_from_quiver(&short, Rationals, 8).is_err());
        let not_composable = QuiverPresentation::linear(3, vec![vec!["a2".into(), "a1".into()]]);
        assert!(build_from_quiver(&not_composable, Rationals, 8).is_err());
    }

    #[test]
    fn composition_convention() {
        // 1 -a1-> 2 -a2-> 3: a2 * a1 is the path a1.a2, a1 * a2 = 0
        let a = build_from_quiver(&QuiverPresentation::linear(3, vec![]), Rationals, 8).unwrap();
        let i1 = a.label_index("a1").unwrap();
        let i2 = a.label_index("a2").unwrap();
        let i12 = a.label_index("a1.a2").unwrap();
        assert_eq!(a.product_of_basis(i2, i1), &vec![(i12, Rationals.one())]);
        assert!(a.product_of_basis(i1, i2).is_empty());
        assert_eq!(a.words()[i12], Word::Product(i2, i1));
    }

    #[test]
    fn opposite_of_a2_is_reversed_a2() {
        let a = build_from_quiver(&QuiverPresentation::linear(2, vec![]), Rationals, 8).unwrap();
        let rev = QuiverPresentation::new(
            vec!["2".into(), "1".into()],
            vec![Arrow::new("2", "1", "a1")],
            vec![],
        );
        let b = build_from_quiver(&rev, Rationals, 8).unwrap();
        // relabel: a has basis (e_1, e_2, a1), b has (e_2, e_1, a1)
        let op = a.opposite();
        let perm = [1usize, 0, 2];
        for i in 0..3 {
            for j in 0..3 {
                let lhs: Vec<_> = op
                    .product_of_basis(i, j)
                    .iter()
                    .map(|(k, c)| (perm[*k], c.clone()))
                    .collect();
                assert_eq!(&lhs, b.product_of_basis(perm[i], perm[j]));
            }
        }
    }
}
