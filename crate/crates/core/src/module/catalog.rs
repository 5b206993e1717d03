use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::module::{ModCat, QModule, SearchOrder};

/// Enumeration bounds for a catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogBounds {
    pub vertex_dim: usize,
    pub total_dim: usize,
}

impl Default for CatalogBounds {
    fn default() -> Self {
        CatalogBounds {
            vertex_dim: 2,
            total_dim: 6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: usize,
    pub module: QModule,
    pub label: String,
}

impl CatalogEntry {
    pub fn dims(&self) -> &[usize] {
        self.module.dims()
    }
}

/// Indecomposables within bounds, one per isomorphism class, with stable ids.
#[derive(Clone, Debug)]
pub struct IsoCatalog {
    cat: ModCat,
    bounds: CatalogBounds,
    entries: Vec<CatalogEntry>,
}

/// Dimension vectors within bounds with connected support, ordered by (total, lex).
fn dim_vectors(cat: &ModCat, bounds: CatalogBounds) -> Vec<Vec<usize>> {
    let q = cat.algebra().quiver();
    let n = q.vertex_count();
    let mut out = Vec::new();
    let mut d = vec![0usize; n];
    loop {
        let total: usize = d.iter().sum();
        if total >= 1
            && total <= bounds.total_dim
            && support_connected(&d, q.arrows().iter().map(|a| (a.source, a.target)))
        {
            out.push(d.clone());
        }
        // odometer, last coordinate fastest
        let mut i = n;
        loop {
            if i == 0 {
                out.sort_by(|a, b| (a.iter().sum::<usize>(), a).cmp(&(b.iter().sum::<usize>(), b)));
                return out;
            }
            i -= 1;
            if d[i] < bounds.vertex_dim {
                d[i] += 1;
                break;
            }
            d[i] = 0;
        }
    }
}

/// Whether the vertices with nonzero dimension are connected through the given edges.
fn support_connected(dims: &[usize], edges: impl Iterator<Item = (usize, usize)> + Clone) -> bool {
    let support: Vec<usize> = (0..dims.len()).filter(|&v| dims[v] > 0).collect();
    let Some(&start) = support.first() else {
        return true;
    };
    let mut seen = vec![false; dims.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for (s, t) in edges.clone() {
            for (a, b) in [(s, t), (t, s)] {
                if a == v && dims[b] > 0 && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    support.iter().all(|&v| seen[v])
}

/// Indecomposables of one dimension vector, one per iso class, in first-found order.
fn indecomposables_of(cat: &ModCat, dims: &[usize]) -> Result<Vec<QModule>> {
    let alg = cat.algebra();
    let f = alg.field();
    let ends: Vec<(usize, usize)> = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| (a.source, a.target))
        .collect();
    let sizes: Vec<usize> = ends.iter().map(|&(s, t)| dims[s] * dims[t]).collect();
    let unknowns: usize = sizes.iter().sum();
    cat.budget()
        .admit("action-matrix enumeration", f.p(), unknowns)?;
    let mut found: Vec<QModule> = Vec::new();
    for coeffs in f.all_vectors(unknowns) {
        let mut offset = 0;
        let mut actions = Vec::with_capacity(ends.len());
        for (&(s, t), &size) in ends.iter().zip(&sizes) {
            let data = coeffs[offset..offset + size].to_vec();
            offset += size;
            actions.push(Mat::from_vec(f, dims[t], dims[s], data).expect("consistent shape"));
        }
        let nonzero = ends
            .iter()
            .zip(&actions)
            .filter(|(_, m)| !m.is_zero())
            .map(|(&e, _)| e)
            .collect::<Vec<_>>();
        if !support_connected(dims, nonzero.iter().copied()) {
            continue;
        }
        let m = QModule::from_parts(alg, dims.to_vec(), actions);
        if !m.satisfies_relations(alg) {
            continue;
        }
        if found.iter().any(|n| cat.is_iso_to_indecomposable(&m, n)) {
            continue;
        }
        if cat.is_indecomposable(&m)? {
            found.push(m);
        }
    }
    Ok(found)
}

impl IsoCatalog {
    pub fn enumerate(cat: &ModCat, bounds: CatalogBounds) -> Result<IsoCatalog> {
        let vectors = dim_vectors(cat, bounds);
        let per_vector: Vec<Result<Vec<QModule>>> = vectors
            .par_iter()
            .map(|d| indecomposables_of(cat, d))
            .collect();
        let mut entries = Vec::new();
        for found in per_vector {
            for module in found? {
                let label = cat.loewy_label(&module);
                entries.push(CatalogEntry {
                    id: entries.len(),
                    module,
                    label,
                });
            }
        }
        Ok(IsoCatalog {
            cat: cat.clone(),
            bounds,
            entries,
        })
    }

    pub fn cat(&self) -> &ModCat {
        &self.cat
    }

    pub fn bounds(&self) -> CatalogBounds {
        self.bounds
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn module(&self, id: usize) -> &QModule {
        &self.entries[id].module
    }

    pub fn label(&self, id: usize) -> &str {
        &self.entries[id].label
    }

    /// Id of the entry isomorphic to `m`, which must be indecomposable to match.
    pub fn identify(&self, m: &QModule) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| self.cat.is_iso_to_indecomposable(m, &e.module))
            .map(|e| e.id)
    }

    /// First id whose dimension vector is `dims`.
    pub fn find_by_dims(&self, dims: &[usize]) -> Option<usize> {
        self.entries.iter().find(|e| e.dims() == dims).map(|e| e.id)
    }

    /// Sorted multiset of ids of the indecomposable summands of `m`.
    pub fn decompose(&self, m: &QModule) -> Result<Vec<usize>> {
        self.decompose_with(m, SearchOrder::Forward)
    }

    pub fn decompose_with(&self, m: &QModule, order: SearchOrder) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![m.clone()];
        while let Some(m) = stack.pop() {
            if m.is_zero() {
                continue;
            }
            if let Some(id) = self.identify(&m) {
                out.push(id);
                continue;
            }
            match self.cat.find_splitting(&m, order)? {
                Some(phi) => {
                    let (k, i) = self.cat.fitting_split(&phi);
                    stack.push(k);
                    stack.push(i);
                }
                None => return Err(Error::OutOfCatalog(m.dims().to_vec())),
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Direct sum of catalog entries.
    pub fn sum_of(&self, ids: &[usize]) -> QModule {
        let parts: Vec<QModule> = ids.iter().map(|&i| self.module(i).clone()).collect();
        self.cat.direct_sum(&parts)
    }

    /// Vertices where the entry is nonzero.
    pub fn support(&self, id: usize) -> Vec<usize> {
        let d = self.entries[id].dims();
        (0..d.len()).filter(|&v| d[v] > 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{path_algebra, Quiver, Relation};
    use crate::error::Budget;
    use crate::linalg::FieldSpec;

    fn example(bounds: CatalogBounds) -> IsoCatalog {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "2", "3")]).unwrap();
        let alg = path_algebra(q, vec![], FieldSpec::new(2).unwrap()).unwrap();
        let cat = ModCat::new(Arc::new(alg), Budget::default());
        IsoCatalog::enumerate(&cat, bounds).unwrap()
    }

    #[test]
    fn example_catalog_has_six() {
        let c = example(CatalogBounds {
            vertex_dim: 1,
            total_dim: 4,
        });
        let mut dims: Vec<Vec<usize>> = c.entries().iter().map(|e| e.dims().to_vec()).collect();
        dims.sort();
        assert_eq!(
            dims,
            vec![
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![1, 0, 0],
                vec![1, 1, 0],
                vec![1, 1, 1]
            ]
        );
        let p2 = c.find_by_dims(&[1, 1, 1]).unwrap();
        assert_eq!(c.label(p2), "2/13");
    }

    #[test]
    fn larger_bounds_same_entries() {
        let small = example(CatalogBounds {
            vertex_dim: 1,
            total_dim: 4,
        });
        let big = example(CatalogBounds::default());
        assert_eq!(big.len(), small.len());
    }

    #[test]
    fn decompose_sums() {
        let c = example(CatalogBounds {
            vertex_dim: 1,
            total_dim: 4,
        });
        let s1 = c.find_by_dims(&[1, 0, 0]).unwrap();
        let s3 = c.find_by_dims(&[0, 0, 1]).unwrap();
        let p2 = c.find_by_dims(&[1, 1, 1]).unwrap();
        let m = c.sum_of(&[s3, p2, s1, s1]);
        let mut want = vec![s1, s1, s3, p2];
        want.sort();
        assert_eq!(c.decompose(&m).unwrap(), want);
        assert_eq!(c.decompose_with(&m, SearchOrder::Reverse).unwrap(), want);
        assert!(c.decompose(&c.cat().zero()).unwrap().is_empty());
    }

    #[test]
    fn out_of_catalog() {
        let c = example(CatalogBounds {
            vertex_dim: 1,
            total_dim: 2,
        });
        let p2 = c.cat().projective(1);
        assert!(matches!(c.decompose(&p2), Err(Error::OutOfCatalog(_))));
    }

    #[test]
    fn small_catalogs() {
        let f = FieldSpec::new(3).unwrap();
        let one = Quiver::new(&["1"], &[] as &[(&str, &str, &str)]).unwrap();
        let cat = ModCat::new(
            Arc::new(path_algebra(one, vec![], f).unwrap()),
            Budget::default(),
        );
        let bounds = CatalogBounds {
            vertex_dim: 1,
            total_dim: 1,
        };
        assert_eq!(IsoCatalog::enumerate(&cat, bounds).unwrap().len(), 1);

        let a2 = Quiver::new(&["1", "2"], &[("x", "1", "2")]).unwrap();
        let cat = ModCat::new(
            Arc::new(path_algebra(a2, vec![], f).unwrap()),
            Budget::default(),
        );
        assert_eq!(
            IsoCatalog::enumerate(&cat, CatalogBounds::default())
                .unwrap()
                .len(),
            3
        );

        // x y = 0 on linear A3 kills the length-3 indecomposable
        let a3 = Quiver::new(&["1", "2", "3"], &[("x", "1", "2"), ("y", "2", "3")]).unwrap();
        let rel = Relation::from_names(&a3, f, &[(1, vec!["x", "y"])]).unwrap();
        let cat = ModCat::new(
            Arc::new(path_algebra(a3, vec![rel], f).unwrap()),
            Budget::default(),
        );
        assert_eq!(
            IsoCatalog::enumerate(&cat, CatalogBounds::default())
                .unwrap()
                .len(),
            5
        );
    }
}
