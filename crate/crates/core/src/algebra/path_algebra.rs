use std::collections::HashMap;

use super::quiver::{Path, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Mat};

/// Dense coordinates of an algebra element over the basis.
pub type Elem = Vec<u32>;

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(u32, Path)>,
}

impl Relation {
    /// Validate and normalize; zero coefficients and repeated paths are merged.
    pub fn new(field: FieldSpec, terms: Vec<(i64, Path)>) -> Result<Relation> {
        let mut merged: Vec<(u32, Path)> = Vec::new();
        for (c, path) in terms {
            if path.len() < 2 {
                return Err(Error::NonAdmissibleRelations(format!(
                    "relation term of length {} (need at least 2)",
                    path.len()
                )));
            }
            let c = field.reduce(c);
            match merged.iter_mut().find(|(_, q)| *q == path) {
                Some((acc, _)) => *acc = field.add(*acc, c),
                None => merged.push((c, path)),
            }
        }
        merged.retain(|(c, _)| *c != 0);
        let Some((_, first)) = merged.first() else {
            return Err(Error::NonAdmissibleRelations("relation is zero".into()));
        };
        let (s, t) = (first.source, first.target);
        if merged.iter().any(|(_, p)| p.source != s || p.target != t) {
            return Err(Error::NonAdmissibleRelations(
                "relation mixes non-parallel paths".into(),
            ));
        }
        merged.sort_by(|a, b| a.1.cmp(&b.1));
        Ok(Relation { terms: merged })
    }

    /// Terms given as `(coefficient, arrow names in traversal order)`.
    pub fn from_names<S: AsRef<str>>(
        quiver: &Quiver,
        field: FieldSpec,
        terms: &[(i64, Vec<S>)],
    ) -> Result<Relation> {
        let resolved = terms
            .iter()
            .map(|(c, names)| Ok((*c, quiver.path_from_names(names)?)))
            .collect::<Result<Vec<_>>>()?;
        Relation::new(field, resolved)
    }

    pub fn terms(&self) -> &[(u32, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }
}

/// Normal forms of `(basis index, arrow word)` products.
type Reductions = HashMap<(usize, Vec<usize>), Vec<(usize, u32)>>;

/// Finite-dimensional basic algebra `KQ/I` with a basis of path classes.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    field: FieldSpec,
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    labels: Vec<String>,
    mult: Vec<Vec<Vec<(usize, u32)>>>,
    reductions: Reductions,
    between: Vec<Vec<Vec<usize>>>,
}

/// Path algebra of an acyclic quiver modulo the ideal generated by `relations`.
pub fn path_algebra(
    quiver: Quiver,
    relations: Vec<Relation>,
    field: FieldSpec,
) -> Result<PresentedAlgebra> {
    PresentedAlgebra::new(quiver, relations, field)
}

impl PresentedAlgebra {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, field: FieldSpec) -> Result<Self> {
        let n = quiver.vertex_count();
        for r in &relations {
            for (_, p) in r.terms() {
                if p.arrows.iter().any(|&a| a >= quiver.arrows().len()) {
                    return Err(Error::NonAdmissibleRelations(
                        "relation refers to a missing arrow".into(),
                    ));
                }
            }
        }
        let paths = quiver.paths()?;
        let mut groups: HashMap<(usize, usize), Vec<Path>> = HashMap::new();
        for p in &paths {
            groups
                .entry((p.source, p.target))
                .or_default()
                .push(p.clone());
        }

        // Per endpoint pair: reduce the ideal's span so the longest paths become pivots.
        let mut normal: Vec<Path> = Vec::new();
        let mut pending: Vec<(Path, Vec<(Path, u32)>)> = Vec::new();
        let mut keys: Vec<&(usize, usize)> = groups.keys().collect();
        keys.sort();
        for &(s, t) in keys {
            let mut group = groups[&(s, t)].clone();
            group.sort_by(|a, b| (b.len(), &a.arrows).cmp(&(a.len(), &b.arrows)));
            let col_of: HashMap<&Vec<usize>, usize> = group
                .iter()
                .enumerate()
                .map(|(i, p)| (&p.arrows, i))
                .collect();
            let mut gens: Vec<Vec<u32>> = Vec::new();
            for r in &relations {
                let heads = paths
                    .iter()
                    .filter(|u| u.source == s && u.target == r.source());
                for u in heads {
                    for w in paths
                        .iter()
                        .filter(|w| w.source == r.target() && w.target == t)
                    {
                        let mut row = vec![0u32; group.len()];
                        for (c, p) in r.terms() {
                            let full = u.concat(p).and_then(|x| x.concat(w)).expect("composable");
                            let col = col_of[&full.arrows];
                            row[col] = field.add(row[col], *c);
                        }
                        gens.push(row);
                    }
                }
            }
            let mut is_pivot = vec![false; group.len()];
            if !gens.is_empty() {
                let m = Mat::from_rows(
                    field,
                    &gens
                        .iter()
                        .map(|r| r.iter().map(|&x| x as i64).collect())
                        .collect::<Vec<_>>(),
                );
                let (rref, pivots) = m.rref();
                for (i, &pc) in pivots.iter().enumerate() {
                    is_pivot[pc] = true;
                    let rest: Vec<(Path, u32)> = (0..group.len())
                        .filter(|&c| c != pc && rref.get(i, c) != 0)
                        .map(|c| (group[c].clone(), field.neg(rref.get(i, c))))
                        .collect();
                    pending.push((group[pc].clone(), rest));
                }
            }
            for (i, p) in group.into_iter().enumerate() {
                if !is_pivot[i] {
                    normal.push(p);
                }
            }
        }
        if pending.iter().any(|(p, _)| p.len() < 2) {
            return Err(Error::NonAdmissibleRelations(
                "ideal contains a path of length < 2".into(),
            ));
        }
        normal.sort_by(|a, b| {
            (a.len(), a.source, a.target, &a.arrows).cmp(&(b.len(), b.source, b.target, &b.arrows))
        });
        let index: HashMap<(usize, Vec<usize>), usize> = normal
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.source, p.arrows.clone()), i))
            .collect();
        let mut reductions: Reductions = HashMap::new();
        for p in &normal {
            reductions.insert(
                (p.source, p.arrows.clone()),
                vec![(index[&(p.source, p.arrows.clone())], 1)],
            );
        }
        for (p, rest) in pending {
            let mut combo: Vec<(usize, u32)> = rest
                .into_iter()
                .map(|(q, c)| (index[&(q.source, q.arrows)], c))
                .collect();
            combo.sort_unstable();
            reductions.insert((p.source, p.arrows), combo);
        }

        let dim = normal.len();
        let mut between = vec![vec![Vec::new(); n]; n];
        for (i, p) in normal.iter().enumerate() {
            between[p.source][p.target].push(i);
        }
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                if let Some(prod) = normal[i].concat(&normal[j]) {
                    mult[i][j] = reductions[&(prod.source, prod.arrows)].clone();
                }
            }
        }
        let labels = normal.iter().map(|p| quiver.path_label(p)).collect();
        let alg = PresentedAlgebra {
            field,
            quiver,
            relations,
            basis: normal,
            labels,
            mult,
            reductions,
            between,
        };
        debug_assert!(alg.is_associative());
        Ok(alg)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Basis indices of classes of paths from `s` to `t`.
    pub fn basis_between(&self, s: usize, t: usize) -> &[usize] {
        &self.between[s][t]
    }

    pub fn basis_index(&self, path: &Path) -> Option<usize> {
        match self.reductions.get(&(path.source, path.arrows.clone())) {
            Some(v) if v.len() == 1 && v[0].1 == 1 && self.basis[v[0].0] == *path => Some(v[0].0),
            _ => None,
        }
    }

    /// Index of the vertex idempotent `e_v`.
    pub fn idempotent_index(&self, v: usize) -> usize {
        self.basis_index(&Path::trivial(v))
            .expect("trivial paths survive")
    }

    /// Coordinates of an arbitrary path's class.
    pub fn reduce(&self, path: &Path) -> Elem {
        let mut out = vec![0; self.dim()];
        for &(i, c) in &self.reductions[&(path.source, path.arrows.clone())] {
            out[i] = self.field.add(out[i], c);
        }
        out
    }

    /// Sparse product of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.mult[i][j]
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.dim()]
    }

    pub fn unit(&self) -> Elem {
        let mut u = self.zero();
        for v in 0..self.quiver.vertex_count() {
            u[self.idempotent_index(v)] = 1;
        }
        u
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        let mut u = self.zero();
        u[i] = 1;
        u
    }

    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Elem {
        let f = self.field;
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, &b)| b != 0) {
                let ab = f.mul(a, b);
                for &(k, c) in &self.mult[i][j] {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if self.mult[i][j].is_empty() && self.basis[i].target != self.basis[j].source {
                    continue;
                }
                let ij = self.multiply(&self.basis_elem(i), &self.basis_elem(j));
                for k in 0..d {
                    let left = self.multiply(&ij, &self.basis_elem(k));
                    let jk = self.multiply(&self.basis_elem(j), &self.basis_elem(k));
                    let right = self.multiply(&self.basis_elem(i), &jk);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Vertex idempotents are orthogonal and sum to the unit.
    pub fn idempotents_are_complete(&self) -> bool {
        let n = self.quiver.vertex_count();
        for v in 0..n {
            for w in 0..n {
                let ev = self.basis_elem(self.idempotent_index(v));
                let ew = self.basis_elem(self.idempotent_index(w));
                let prod = self.multiply(&ev, &ew);
                let expected = if v == w { ev } else { self.zero() };
                if prod != expected {
                    return false;
                }
            }
        }
        let u = self.unit();
        (0..self.dim()).all(|i| {
            let b = self.basis_elem(i);
            self.multiply(&u, &b) == b && self.multiply(&b, &u) == b
        })
    }

    /// Smallest `k` with `rad^k = 0`, where `rad` is spanned by non-trivial path classes.
    pub fn radical_nilpotency_index(&self) -> usize {
        let rad: Vec<usize> = (0..self.dim())
            .filter(|&i| !self.basis[i].is_trivial())
            .collect();
        let mut power: Vec<Elem> = rad.iter().map(|&i| self.basis_elem(i)).collect();
        let mut k = 1;
        loop {
            if span_basis(self.field, self.dim(), &power).is_empty() {
                return k;
            }
            let mut next = Vec::new();
            for x in &power {
                for &j in &rad {
                    next.push(self.multiply(x, &self.basis_elem(j)));
                }
            }
            power = span_basis(self.field, self.dim(), &next);
            k += 1;
            if k > self.dim() + 1 {
                return usize::MAX;
            }
        }
    }
}

/// Independent vectors spanning the same space as `vectors` (each of length `len`).
pub(crate) fn span_basis(field: FieldSpec, len: usize, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Mat::from_columns(field, len, vectors)
        .column_space()
        .columns()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::new(2).unwrap()
    }

    fn a3_example() -> PresentedAlgebra {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "2", "3")]).unwrap();
        path_algebra(q, vec![], gf2()).unwrap()
    }

    #[test]
    fn a3_example_basis() {
        let alg = a3_example();
        assert_eq!(alg.dim(), 5);
        assert_eq!(alg.labels(), ["e1", "e2", "e3", "a", "b"]);
        assert!(alg.is_associative());
        assert!(alg.idempotents_are_complete());
        assert_eq!(alg.radical_nilpotency_index(), 2);
    }

    #[test]
    fn single_vertex_and_a2() {
        let q = Quiver::new(&["1"], &[] as &[(&str, &str, &str)]).unwrap();
        assert_eq!(path_algebra(q, vec![], gf2()).unwrap().dim(), 1);
        let q = Quiver::new(&["2", "3"], &[("b", "2", "3")]).unwrap();
        assert_eq!(path_algebra(q, vec![], gf2()).unwrap().dim(), 3);
    }

    #[test]
    fn multiply_examples() {
        let alg = a3_example();
        let e2 = alg.basis_elem(alg.idempotent_index(1));
        let a = alg.basis_elem(3);
        let b = alg.basis_elem(4);
        assert_eq!(alg.multiply(&e2, &b), b);
        assert_eq!(alg.multiply(&alg.unit(), &a), a);
        assert_eq!(alg.multiply(&a, &b), alg.zero());
    }

    #[test]
    fn zero_relation_kills_path() {
        let f = gf2();
        let q = Quiver::new(&["1", "2", "3"], &[("x", "1", "2"), ("y", "2", "3")]).unwrap();
        let r = Relation::from_names(&q, f, &[(1, vec!["x", "y"])]).unwrap();
        let alg = path_algebra(q, vec![r], f).unwrap();
        assert_eq!(alg.dim(), 5);
        let x = alg.basis_elem(3);
        let y = alg.basis_elem(4);
        assert_eq!(alg.multiply(&x, &y), alg.zero());
        assert_eq!(alg.radical_nilpotency_index(), 2);
    }

    #[test]
    fn commutative_square() {
        let f = FieldSpec::new(3).unwrap();
        let q = Quiver::new(
            &["1", "2", "3", "4"],
            &[
                ("a", "1", "2"),
                ("b", "2", "4"),
                ("c", "1", "3"),
                ("d", "3", "4"),
            ],
        )
        .unwrap();
        let r = Relation::from_names(&q, f, &[(1, vec!["a", "b"]), (-1, vec!["c", "d"])]).unwrap();
        let alg = path_algebra(q, vec![r], f).unwrap();
        // 4 idempotents + 4 arrows + one surviving length-2 class
        assert_eq!(alg.dim(), 9);
        let qv = alg.quiver();
        let arrow =
            |n: &str| alg.basis_elem(alg.basis_index(&qv.path_from_names(&[n]).unwrap()).unwrap());
        let ab = alg.multiply(&arrow("a"), &arrow("b"));
        assert_ne!(ab, alg.zero());
        let cd = alg.reduce(&qv.path_from_names(&["c", "d"]).unwrap());
        assert_eq!(ab, cd);
        assert!(alg.is_associative());
    }

    #[test]
    fn relation_validation() {
        let f = gf2();
        let q = Quiver::new(
            &["1", "2", "3"],
            &[("x", "1", "2"), ("y", "2", "3"), ("z", "1", "3")],
        )
        .unwrap();
        assert!(matches!(
            Relation::from_names(&q, f, &[(1, vec!["z"])]),
            Err(Error::NonAdmissibleRelations(_))
        ));
        assert!(matches!(
            Relation::from_names(&q, f, &[(2, vec!["x", "y"])]),
            Err(Error::NonAdmissibleRelations(_))
        ));
        assert!(matches!(
            Relation::from_names(&q, f, &[(1, vec!["x", "y"]), (1, vec!["x"])]),
            Err(Error::NonAdmissibleRelations(_))
        ));
    }
}
