use std::sync::Arc;

use crate::algebra::{Elem, Path, PresentedAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Mat};

/// A right module given as a representation of the quiver.
///
/// A path traversed left to right acts on the right, so an arrow `α: s -> t`
/// carries `M e_s` into `M e_t`; its action matrix is `dims[t] x dims[s]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QModule {
    field: FieldSpec,
    ends: Arc<[(usize, usize)]>,
    dims: Vec<usize>,
    actions: Vec<Mat>,
}

fn arrow_ends(alg: &PresentedAlgebra) -> Arc<[(usize, usize)]> {
    alg.quiver()
        .arrows()
        .iter()
        .map(|a| (a.source, a.target))
        .collect::<Vec<_>>()
        .into()
}

impl QModule {
    /// Validated constructor: shapes must match and every relation must act as zero.
    pub fn new(alg: &PresentedAlgebra, dims: Vec<usize>, actions: Vec<Mat>) -> Result<QModule> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() || actions.len() != q.arrows().len() {
            return Err(Error::InvalidModule(format!(
                "expected {} vertex dimensions and {} arrow matrices",
                q.vertex_count(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&actions) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] || m.field() != alg.field()
            {
                return Err(Error::InvalidModule(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let m = QModule::from_parts(alg, dims, actions);
        if !m.satisfies_relations(alg) {
            return Err(Error::InvalidModule(
                "a relation does not act as zero".into(),
            ));
        }
        Ok(m)
    }

    pub(crate) fn from_parts(
        alg: &PresentedAlgebra,
        dims: Vec<usize>,
        actions: Vec<Mat>,
    ) -> QModule {
        QModule {
            field: alg.field(),
            ends: arrow_ends(alg),
            dims,
            actions,
        }
    }

    /// Same arrow layout as `self`, new data.
    pub(crate) fn with_data(&self, dims: Vec<usize>, actions: Vec<Mat>) -> QModule {
        debug_assert_eq!(actions.len(), self.ends.len());
        QModule {
            field: self.field,
            ends: self.ends.clone(),
            dims,
            actions,
        }
    }

    pub fn zero(alg: &PresentedAlgebra) -> QModule {
        let f = alg.field();
        let actions = alg
            .quiver()
            .arrows()
            .iter()
            .map(|_| Mat::zeros(f, 0, 0))
            .collect();
        QModule::from_parts(alg, vec![0; alg.quiver().vertex_count()], actions)
    }

    pub fn simple(alg: &PresentedAlgebra, v: usize) -> QModule {
        let f = alg.field();
        let mut dims = vec![0; alg.quiver().vertex_count()];
        dims[v] = 1;
        let actions = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Mat::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        QModule::from_parts(alg, dims, actions)
    }

    /// The indecomposable projective `e_v Λ`.
    pub fn projective(alg: &PresentedAlgebra, v: usize) -> QModule {
        let f = alg.field();
        let q = alg.quiver();
        let n = q.vertex_count();
        let dims: Vec<usize> = (0..n).map(|w| alg.basis_between(v, w).len()).collect();
        let actions = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let src = alg.basis_between(v, a.source);
                let dst = alg.basis_between(v, a.target);
                let mut m = Mat::zeros(f, dst.len(), src.len());
                for (j, &pi) in src.iter().enumerate() {
                    let img = alg.reduce(&alg.basis()[pi].concat(&arrow_path(alg, k)).unwrap());
                    for (i, &qi) in dst.iter().enumerate() {
                        m.set(i, j, img[qi]);
                    }
                }
                m
            })
            .collect();
        QModule::from_parts(alg, dims, actions)
    }

    /// The indecomposable injective `D(Λ e_v)`.
    pub fn injective(alg: &PresentedAlgebra, v: usize) -> QModule {
        let f = alg.field();
        let q = alg.quiver();
        let n = q.vertex_count();
        let dims: Vec<usize> = (0..n).map(|w| alg.basis_between(w, v).len()).collect();
        let actions = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                // (φ·α)(x) = φ(αx) for x in e_t Λ e_v
                let src = alg.basis_between(a.source, v);
                let dst = alg.basis_between(a.target, v);
                let mut m = Mat::zeros(f, dst.len(), src.len());
                for (i, &xi) in dst.iter().enumerate() {
                    let img = alg.reduce(&arrow_path(alg, k).concat(&alg.basis()[xi]).unwrap());
                    for (j, &qj) in src.iter().enumerate() {
                        m.set(i, j, img[qj]);
                    }
                }
                m
            })
            .collect();
        QModule::from_parts(alg, dims, actions)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn actions(&self) -> &[Mat] {
        &self.actions
    }

    pub fn action(&self, arrow: usize) -> &Mat {
        &self.actions[arrow]
    }

    pub fn arrow_ends(&self) -> &[(usize, usize)] {
        &self.ends
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.len()
    }

    /// Action of a path: `dims[target] x dims[source]`.
    pub fn path_action(&self, path: &Path) -> Mat {
        let mut m = Mat::identity(self.field, self.dims[path.source]);
        for &a in &path.arrows {
            m = self.actions[a].mul(&m);
        }
        m
    }

    /// Action of an element supported on paths from `s` to `t`.
    pub fn elem_action(&self, alg: &PresentedAlgebra, x: &Elem, s: usize, t: usize) -> Mat {
        let mut m = Mat::zeros(self.field, self.dims[t], self.dims[s]);
        for &i in alg.basis_between(s, t) {
            if x[i] != 0 {
                m.add_scaled(x[i], &self.path_action(&alg.basis()[i]));
            }
        }
        m
    }

    pub fn satisfies_relations(&self, alg: &PresentedAlgebra) -> bool {
        alg.relations().iter().all(|r| {
            let mut m = Mat::zeros(self.field, self.dims[r.target()], self.dims[r.source()]);
            for (c, p) in r.terms() {
                m.add_scaled(*c, &self.path_action(p));
            }
            m.is_zero()
        })
    }

    /// Dimension vector as `(d1,d2,...)`.
    pub fn dim_string(&self) -> String {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

fn arrow_path(alg: &PresentedAlgebra, k: usize) -> Path {
    let a = &alg.quiver().arrows()[k];
    Path {
        source: a.source,
        target: a.target,
        arrows: vec![k],
    }
}

/// A module homomorphism: one matrix per vertex, `dims_target[v] x dims_source[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: QModule,
    target: QModule,
    comps: Vec<Mat>,
}

impl ModuleMap {
    pub fn new(source: QModule, target: QModule, comps: Vec<Mat>) -> Result<ModuleMap> {
        if comps.len() != source.vertex_count() || source.vertex_count() != target.vertex_count() {
            return Err(Error::InvalidModule("component count mismatch".into()));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.rows() != target.dims[v] || c.cols() != source.dims[v] {
                return Err(Error::InvalidModule(format!(
                    "component {v} has the wrong shape"
                )));
            }
        }
        let f = ModuleMap {
            source,
            target,
            comps,
        };
        if !f.is_intertwining() {
            return Err(Error::InvalidModule(
                "components do not commute with the arrows".into(),
            ));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: QModule, target: QModule, comps: Vec<Mat>) -> ModuleMap {
        let f = ModuleMap {
            source,
            target,
            comps,
        };
        debug_assert!(f.is_intertwining(), "constructed map is not a homomorphism");
        f
    }

    pub fn identity(m: &QModule) -> ModuleMap {
        let comps = m.dims.iter().map(|&d| Mat::identity(m.field, d)).collect();
        ModuleMap::from_parts(m.clone(), m.clone(), comps)
    }

    pub fn zero(source: &QModule, target: &QModule) -> ModuleMap {
        let comps = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Mat::zeros(source.field, t, s))
            .collect();
        ModuleMap::from_parts(source.clone(), target.clone(), comps)
    }

    pub fn source(&self) -> &QModule {
        &self.source
    }

    pub fn target(&self) -> &QModule {
        &self.target
    }

    pub fn comps(&self) -> &[Mat] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &Mat {
        &self.comps[v]
    }

    pub fn is_intertwining(&self) -> bool {
        self.source.ends.iter().enumerate().all(|(k, &(s, t))| {
            self.target.actions[k].mul(&self.comps[s]) == self.comps[t].mul(&self.source.actions[k])
        })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        assert_eq!(first.target.dims, self.source.dims, "maps do not compose");
        let comps = self
            .comps
            .iter()
            .zip(&first.comps)
            .map(|(g, f)| g.mul(f))
            .collect();
        ModuleMap {
            source: first.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// `Σ coeffs[i] * maps[i]`; `maps` must be nonempty and parallel.
    pub fn combination(maps: &[ModuleMap], coeffs: &[u32]) -> ModuleMap {
        let mut comps: Vec<Mat> = maps[0]
            .comps
            .iter()
            .map(|m| Mat::zeros(m.field(), m.rows(), m.cols()))
            .collect();
        for (f, &c) in maps.iter().zip(coeffs) {
            if c != 0 {
                for (acc, m) in comps.iter_mut().zip(&f.comps) {
                    acc.add_scaled(c, m);
                }
            }
        }
        ModuleMap {
            source: maps[0].source.clone(),
            target: maps[0].target.clone(),
            comps,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Mat::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(Mat::is_invertible)
    }

    pub fn rank(&self) -> Vec<usize> {
        self.comps.iter().map(Mat::rank).collect()
    }

    /// All components' entries concatenated.
    pub fn flatten(&self) -> Vec<u32> {
        self.comps
            .iter()
            .flat_map(|m| m.entries().iter().copied())
            .collect()
    }

    /// Endomorphism that is neither nilpotent nor invertible.
    pub fn is_proper_nonnilpotent(&self) -> bool {
        let singular = self.comps.iter().any(|m| !m.is_invertible());
        singular && self.comps.iter().any(|m| !m.is_nilpotent())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};

    fn a3() -> PresentedAlgebra {
        let q = Quiver::new(&["1", "2", "3"], &[("a", "2", "1"), ("b", "2", "3")]).unwrap();
        path_algebra(q, vec![], FieldSpec::new(2).unwrap()).unwrap()
    }

    #[test]
    fn projectives_and_injectives_of_example() {
        let alg = a3();
        assert_eq!(QModule::projective(&alg, 1).dims(), &[1, 1, 1]);
        assert_eq!(QModule::projective(&alg, 0).dims(), &[1, 0, 0]);
        assert_eq!(QModule::injective(&alg, 1).dims(), &[0, 1, 0]);
        assert_eq!(QModule::injective(&alg, 0).dims(), &[1, 1, 0]);
        for v in 0..3 {
            assert!(QModule::projective(&alg, v).satisfies_relations(&alg));
        }
    }

    #[test]
    fn validation() {
        let alg = a3();
        let f = alg.field();
        let bad = QModule::new(
            &alg,
            vec![1, 1, 0],
            vec![Mat::zeros(f, 1, 1), Mat::zeros(f, 1, 1)],
        );
        assert!(matches!(bad, Err(Error::InvalidModule(_))));
        let ok = QModule::new(
            &alg,
            vec![1, 1, 0],
            vec![Mat::identity(f, 1), Mat::zeros(f, 0, 1)],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn non_intertwining_rejected() {
        let alg = a3();
        let f = alg.field();
        let p2 = QModule::projective(&alg, 1);
        let s1 = QModule::simple(&alg, 0);
        // sending the top of P2 onto S1 is not a homomorphism
        let comps = vec![
            Mat::zeros(f, 1, 1),
            Mat::zeros(f, 0, 1),
            Mat::zeros(f, 0, 1),
        ];
        assert!(ModuleMap::new(p2.clone(), s1.clone(), comps).is_ok());
        let comps = vec![
            Mat::identity(f, 1),
            Mat::zeros(f, 0, 1),
            Mat::zeros(f, 0, 1),
        ];
        assert!(ModuleMap::new(p2, s1, comps).is_err());
    }
}
