//! The two algebras attached to an idempotent `e`: the quotient `Λ/ΛeΛ`
//! and the corner `eΛe`, each re-presented by a quiver with relations.

use super::path_algebra::{span_basis, Elem, PresentedAlgebra, Relation};
use super::quiver::{Arrow, Path, Quiver};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// A sum of vertex idempotents, stored as sorted vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Idem {
    vertices: Vec<usize>,
}

impl Idem {
    pub fn new(quiver: &Quiver, names: &[impl AsRef<str>]) -> Result<Idem> {
        let mut vertices = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            let v = quiver
                .vertex_index(n)
                .ok_or_else(|| Error::InvalidIdempotent(format!("unknown vertex {n:?}")))?;
            vertices.push(v);
        }
        Idem::from_indices(quiver, vertices)
    }

    pub fn from_indices(quiver: &Quiver, mut vertices: Vec<usize>) -> Result<Idem> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::InvalidIdempotent(
                "idempotent must be nonzero".into(),
            ));
        }
        if vertices.iter().any(|&v| v >= quiver.vertex_count()) {
            return Err(Error::InvalidIdempotent("vertex out of range".into()));
        }
        Ok(Idem { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// False when `e` is the unit, in which case the recollement degenerates.
    pub fn is_proper(&self, quiver: &Quiver) -> bool {
        self.vertices.len() < quiver.vertex_count()
    }

    pub fn complement(&self, quiver: &Quiver) -> Vec<usize> {
        (0..quiver.vertex_count())
            .filter(|&v| !self.contains(v))
            .collect()
    }

    pub fn names(&self, quiver: &Quiver) -> Vec<String> {
        self.vertices
            .iter()
            .map(|&v| quiver.vertices()[v].clone())
            .collect()
    }
}

/// `Λ/ΛeΛ` presented on the full subquiver of vertices outside `e`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: PresentedAlgebra,
    /// Quotient vertex index -> original vertex index.
    pub vertex_map: Vec<usize>,
    /// Quotient arrow index -> original arrow index.
    pub arrow_map: Vec<usize>,
    /// Set when `e` covers every vertex and the quotient is zero.
    pub degenerate: bool,
}

/// `eΛe` presented by its own quiver, with the embedding of its basis into `Λ`.
#[derive(Clone, Debug)]
pub struct CornerAlgebra {
    pub algebra: PresentedAlgebra,
    /// Corner vertex index -> original vertex index.
    pub vertex_map: Vec<usize>,
    /// Element of `Λ` represented by each corner arrow.
    pub arrow_elements: Vec<Elem>,
    /// Element of `Λ` represented by each corner basis class.
    pub embedding: Vec<Elem>,
}

fn kernel_relations(
    alg_field: crate::linalg::FieldSpec,
    quiver: &Quiver,
    images: impl Fn(&Path) -> Vec<u32>,
    image_len: usize,
) -> Result<Vec<Relation>> {
    let paths = quiver.paths()?;
    let mut relations = Vec::new();
    let n = quiver.vertex_count();
    for s in 0..n {
        for t in 0..n {
            let group: Vec<&Path> = paths
                .iter()
                .filter(|p| p.source == s && p.target == t)
                .collect();
            if group.is_empty() {
                continue;
            }
            let cols: Vec<Vec<u32>> = group.iter().map(|p| images(p)).collect();
            let m = Mat::from_columns(alg_field, image_len, &cols);
            for k in m.kernel_basis() {
                let terms: Vec<(i64, Path)> = k
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (c as i64, group[i].clone()))
                    .collect();
                relations.push(Relation::new(alg_field, terms)?);
            }
        }
    }
    Ok(relations)
}

/// `Λ/ΛeΛ`, with relations recomputed as the kernel of `K Q' -> Λ/ΛeΛ`.
pub fn quotient_by_idempotent_ideal(alg: &PresentedAlgebra, e: &Idem) -> Result<QuotientAlgebra> {
    let field = alg.field();
    let q = alg.quiver();
    let keep = e.complement(q);
    let (sub, arrow_map) = q.full_subquiver(&keep);

    // The ideal ΛeΛ is spanned by classes of paths that visit an e-vertex.
    let through: Vec<Elem> = q
        .paths()?
        .iter()
        .filter(|p| p.vertices(q).any(|v| e.contains(v)))
        .map(|p| alg.reduce(p))
        .collect();
    let ideal = span_basis(field, alg.dim(), &through);
    let projection = Mat::from_columns(field, alg.dim(), &ideal).cokernel_projection();
    let quotient_dim = projection.rows();

    let lift = |p: &Path| Path {
        source: keep[p.source],
        target: keep[p.target],
        arrows: p.arrows.iter().map(|&a| arrow_map[a]).collect(),
    };
    let relations = kernel_relations(
        field,
        &sub,
        |p| projection.mul_vec(&alg.reduce(&lift(p))),
        quotient_dim,
    )?;
    let algebra = PresentedAlgebra::new(sub, relations, field)?;
    if algebra.dim() != quotient_dim {
        return Err(Error::NonAdmissibleRelations(format!(
            "quotient presentation has dimension {} but Λ/ΛeΛ has {}",
            algebra.dim(),
            quotient_dim
        )));
    }
    Ok(QuotientAlgebra {
        algebra,
        vertex_map: keep.clone(),
        arrow_map,
        degenerate: keep.is_empty(),
    })
}

/// `eΛe`, with arrows a basis of `rad/rad²` and relations found degree by degree.
pub fn corner_algebra(alg: &PresentedAlgebra, e: &Idem) -> Result<CornerAlgebra> {
    let field = alg.field();
    let q = alg.quiver();
    let ev = e.vertices();
    let local = |v: usize| ev.iter().position(|&x| x == v).expect("corner vertex");

    // rad(eΛe)_{ab} and its square, inside Λ.
    let rad_between = |a: usize, b: usize| -> Vec<usize> {
        alg.basis_between(a, b)
            .iter()
            .copied()
            .filter(|&i| !alg.basis()[i].is_trivial())
            .collect()
    };
    let mut arrows = Vec::new();
    let mut arrow_elements = Vec::new();
    let mut used_names = std::collections::HashSet::new();
    for &a in ev {
        for &b in ev {
            let rad_ab = rad_between(a, b);
            if rad_ab.is_empty() {
                continue;
            }
            let mut square = Vec::new();
            for &c in ev {
                for &x in &rad_between(a, c) {
                    for &y in &rad_between(c, b) {
                        square.push(alg.multiply(&alg.basis_elem(x), &alg.basis_elem(y)));
                    }
                }
            }
            let mut span = span_basis(field, alg.dim(), &square);
            for &i in &rad_ab {
                let candidate = alg.basis_elem(i);
                let mut trial = span.clone();
                trial.push(candidate.clone());
                if Mat::from_columns(field, alg.dim(), &trial).rank() > span.len() {
                    span.push(candidate.clone());
                    let base = alg.labels()[i].clone();
                    let mut name = base.clone();
                    let mut k = 1;
                    while !used_names.insert(name.clone()) {
                        name = format!("{base}_{k}");
                        k += 1;
                    }
                    arrows.push(Arrow {
                        name,
                        source: local(a),
                        target: local(b),
                    });
                    arrow_elements.push(candidate);
                }
            }
        }
    }
    let vertices: Vec<String> = ev.iter().map(|&v| q.vertices()[v].clone()).collect();
    let cq = Quiver::from_parts(vertices, arrows)?;

    let evaluate = |p: &Path| -> Elem {
        let mut x = alg.basis_elem(alg.idempotent_index(ev[p.source]));
        for &a in &p.arrows {
            x = alg.multiply(&x, &arrow_elements[a]);
        }
        x
    };
    let relations = kernel_relations(field, &cq, evaluate, alg.dim())?;
    let algebra = PresentedAlgebra::new(cq, relations, field)?;
    let embedding: Vec<Elem> = algebra.basis().iter().map(evaluate).collect();

    let corner_dim: usize = ev
        .iter()
        .flat_map(|&a| ev.iter().map(move |&b| (a, b)))
        .map(|(a, b)| alg.basis_between(a, b).len())
        .sum();
    let rank = Mat::from_columns(field, alg.dim(), &embedding).rank();
    if algebra.dim() != corner_dim || rank != corner_dim {
        return Err(Error::NonAdmissibleRelations(format!(
            "corner presentation has dimension {} (rank {rank}) but eΛe has {corner_dim}",
            algebra.dim()
        )));
    }
    Ok(CornerAlgebra {
        algebra,
        vertex_map: ev.to_vec(),
        arrow_elements,
        embedding,
    })
}

impl CornerAlgebra {
    /// The basis map is multiplicative, so the presentation is isomorphic to `eΛe`.
    pub fn embedding_is_multiplicative(&self, alg: &PresentedAlgebra) -> bool {
        let c = &self.algebra;
        let f = alg.field();
        for i in 0..c.dim() {
            for j in 0..c.dim() {
                let mut image = alg.zero();
                for &(k, coeff) in c.basis_product(i, j) {
                    f.axpy(&mut image, coeff, &self.embedding[k]);
                }
                if alg.multiply(&self.embedding[i], &self.embedding[j]) != image {
                    return false;
                }
            }
        }
        true
    }

    /// Image in `Λ` of an element of the corner algebra.
    pub fn embed(&self, alg: &PresentedAlgebra, x: &[u32]) -> Elem {
        let mut out = alg.zero();
        for (i, &c) in x.iter().enumerate() {
            alg.field().axpy(&mut out, c, &self.embedding[i]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::path_algebra;
    use crate::linalg::FieldSpec;

    fn a3() -> PresentedAlgebra {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "2", "3")]).unwrap();
        path_algebra(q, vec![], FieldSpec::new(2).unwrap()).unwrap()
    }

    fn linear_a3() -> PresentedAlgebra {
        let q = Quiver::new(&["1", "2", "3"], &[("x", "1", "2"), ("y", "2", "3")]).unwrap();
        path_algebra(q, vec![], FieldSpec::new(3).unwrap()).unwrap()
    }

    #[test]
    fn example_quotient_is_one_dimensional() {
        let alg = a3();
        let e = Idem::new(alg.quiver(), &["2", "3"]).unwrap();
        let quot = quotient_by_idempotent_ideal(&alg, &e).unwrap();
        assert_eq!(quot.algebra.dim(), 1);
        assert_eq!(quot.algebra.quiver().vertices(), ["1"]);
        assert!(!quot.degenerate);
    }

    #[test]
    fn example_corner_is_a2() {
        let alg = a3();
        let e = Idem::new(alg.quiver(), &["2", "3"]).unwrap();
        let corner = corner_algebra(&alg, &e).unwrap();
        assert_eq!(corner.algebra.dim(), 3);
        assert_eq!(corner.algebra.quiver().arrows().len(), 1);
        assert!(corner.embedding_is_multiplicative(&alg));
    }

    #[test]
    fn dimension_splits_over_the_ideal() {
        let alg = a3();
        let e = Idem::new(alg.quiver(), &["2", "3"]).unwrap();
        let quot = quotient_by_idempotent_ideal(&alg, &e).unwrap();
        // ΛeΛ is spanned by e2, e3, a, b
        assert_eq!(alg.dim(), 4 + quot.algebra.dim());
    }

    #[test]
    fn empty_idempotent_rejected() {
        let alg = a3();
        assert!(matches!(
            Idem::new(alg.quiver(), &[] as &[&str]),
            Err(Error::InvalidIdempotent(_))
        ));
    }

    #[test]
    fn linear_a3_middle_vertex() {
        let alg = linear_a3();
        let e = Idem::new(alg.quiver(), &["2"]).unwrap();
        let quot = quotient_by_idempotent_ideal(&alg, &e).unwrap();
        assert_eq!(quot.algebra.quiver().vertices(), ["1", "3"]);
        assert!(quot.algebra.quiver().arrows().is_empty());
        assert_eq!(quot.algebra.dim(), 2);
    }

    #[test]
    fn linear_a3_outer_corner() {
        let alg = linear_a3();
        let e = Idem::new(alg.quiver(), &["1", "3"]).unwrap();
        let corner = corner_algebra(&alg, &e).unwrap();
        assert_eq!(corner.algebra.dim(), 3);
        let arrows = corner.algebra.quiver().arrows();
        assert_eq!(arrows.len(), 1);
        assert_eq!(arrows[0].name, "xy");
        assert!(corner.embedding_is_multiplicative(&alg));
    }

    #[test]
    fn full_idempotent_degenerates() {
        let alg = a3();
        let e = Idem::new(alg.quiver(), &["1", "2", "3"]).unwrap();
        assert!(!e.is_proper(alg.quiver()));
        let quot = quotient_by_idempotent_ideal(&alg, &e).unwrap();
        assert!(quot.degenerate);
        assert_eq!(quot.algebra.dim(), 0);
        let corner = corner_algebra(&alg, &e).unwrap();
        assert_eq!(corner.algebra.dim(), alg.dim());
        assert!(corner.embedding_is_multiplicative(&alg));
    }

    #[test]
    fn corner_of_algebra_with_relation() {
        // 1 -x-> 2 -y-> 3 with xy = 0: the corner at {1,3} is semisimple.
        let f = FieldSpec::new(2).unwrap();
        let q = Quiver::new(&["1", "2", "3"], &[("x", "1", "2"), ("y", "2", "3")]).unwrap();
        let r = Relation::from_names(&q, f, &[(1, vec!["x", "y"])]).unwrap();
        let alg = path_algebra(q, vec![r], f).unwrap();
        let e = Idem::new(alg.quiver(), &["1", "3"]).unwrap();
        let corner = corner_algebra(&alg, &e).unwrap();
        assert_eq!(corner.algebra.dim(), 2);
        assert!(corner.algebra.quiver().arrows().is_empty());
    }
}
