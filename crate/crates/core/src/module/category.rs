use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::PresentedAlgebra;
use crate::error::{Budget, Result};
use crate::linalg::Mat;
use crate::module::{ModuleMap, QModule};

/// Order in which candidate homomorphisms are tried during witness searches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchOrder {
    #[default]
    Forward,
    Reverse,
}

const RANDOM_TRIES: usize = 48;

/// The category of finite-dimensional right modules over a presented algebra.
#[derive(Clone, Debug)]
pub struct ModCat {
    alg: Arc<PresentedAlgebra>,
    budget: Budget,
}

impl ModCat {
    pub fn new(alg: Arc<PresentedAlgebra>, budget: Budget) -> ModCat {
        ModCat { alg, budget }
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> &Arc<PresentedAlgebra> {
        &self.alg
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn zero(&self) -> QModule {
        QModule::zero(&self.alg)
    }

    pub fn simple(&self, v: usize) -> QModule {
        QModule::simple(&self.alg, v)
    }

    pub fn projective(&self, v: usize) -> QModule {
        QModule::projective(&self.alg, v)
    }

    pub fn injective(&self, v: usize) -> QModule {
        QModule::injective(&self.alg, v)
    }

    /// Basis of `Hom(m, n)`.
    pub fn hom_space(&self, m: &QModule, n: &QModule) -> Vec<ModuleMap> {
        let f = m.field();
        let nv = m.vertex_count();
        let mut offset = vec![0; nv + 1];
        for v in 0..nv {
            offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
        }
        let unknowns = offset[nv];
        if unknowns == 0 {
            return Vec::new();
        }
        let p = f.p();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        // N_k X_s - X_t M_k = 0 for every arrow k: s -> t
        for (k, &(s, t)) in m.arrow_ends().iter().enumerate() {
            let (ma, na) = (m.action(k), n.action(k));
            for i in 0..n.dim(t) {
                for j in 0..m.dim(s) {
                    let mut row = vec![0u32; unknowns];
                    for l in 0..n.dim(s) {
                        let c = na.get(i, l);
                        if c != 0 {
                            let idx = offset[s] + l * m.dim(s) + j;
                            row[idx] = (row[idx] + c) % p;
                        }
                    }
                    for l in 0..m.dim(t) {
                        let c = ma.get(l, j);
                        if c != 0 {
                            let idx = offset[t] + i * m.dim(t) + l;
                            row[idx] = (row[idx] + p - c) % p;
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let system = if rows.is_empty() {
            Mat::zeros(f, 0, unknowns)
        } else {
            let data = rows.concat();
            Mat::from_vec(f, rows.len(), unknowns, data).expect("consistent shape")
        };
        system
            .kernel_basis()
            .into_iter()
            .map(|x| {
                let comps = (0..nv)
                    .map(|v| {
                        Mat::from_vec(f, n.dim(v), m.dim(v), x[offset[v]..offset[v + 1]].to_vec())
                            .expect("consistent shape")
                    })
                    .collect();
                ModuleMap::from_parts(m.clone(), n.clone(), comps)
            })
            .collect()
    }

    /// Coordinates of `f` in a hom basis, if it lies in their span.
    pub fn coordinates(&self, basis: &[ModuleMap], f: &ModuleMap) -> Option<Vec<u32>> {
        let target = f.flatten();
        if basis.is_empty() {
            return target.iter().all(|&x| x == 0).then(Vec::new);
        }
        let cols: Vec<Vec<u32>> = basis.iter().map(ModuleMap::flatten).collect();
        Mat::from_columns(self.alg.field(), target.len(), &cols).solve(&target)
    }

    pub fn hom_dim(&self, m: &QModule, n: &QModule) -> usize {
        self.hom_space(m, n).len()
    }

    /// Submodule spanned at each vertex by the columns of `spans[v]`, which must be
    /// invariant. Returns the module on a basis of those spans and its inclusion.
    pub fn submodule(&self, m: &QModule, spans: &[Mat]) -> (QModule, ModuleMap) {
        let bases: Vec<Mat> = spans.iter().map(Mat::column_space).collect();
        let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
        let actions = m
            .arrow_ends()
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| {
                let moved = m.action(k).mul(&bases[s]);
                bases[t]
                    .solve_matrix(&moved)
                    .expect("span is not a submodule")
            })
            .collect();
        let sub = m.with_data(dims, actions);
        let inc = ModuleMap::from_parts(sub.clone(), m.clone(), bases);
        (sub, inc)
    }

    /// Quotient of `m` by the invariant spans, with its projection.
    pub fn quotient(&self, m: &QModule, spans: &[Mat]) -> (QModule, ModuleMap) {
        let projs: Vec<Mat> = spans.iter().map(Mat::cokernel_projection).collect();
        let sections: Vec<Mat> = projs
            .iter()
            .map(|p| p.right_inverse().expect("full row rank"))
            .collect();
        let dims: Vec<usize> = projs.iter().map(Mat::rows).collect();
        let actions = m
            .arrow_ends()
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| projs[t].mul(m.action(k)).mul(&sections[s]))
            .collect();
        let q = m.with_data(dims, actions);
        let proj = ModuleMap::from_parts(m.clone(), q.clone(), projs);
        (q, proj)
    }

    pub fn kernel(&self, f: &ModuleMap) -> (QModule, ModuleMap) {
        let spans: Vec<Mat> = f.comps().iter().map(Mat::kernel_matrix).collect();
        self.submodule(f.source(), &spans)
    }

    pub fn cokernel(&self, f: &ModuleMap) -> (QModule, ModuleMap) {
        self.quotient(f.target(), f.comps())
    }

    pub fn image(&self, f: &ModuleMap) -> (QModule, ModuleMap) {
        self.submodule(f.target(), f.comps())
    }

    pub fn direct_sum(&self, parts: &[QModule]) -> QModule {
        let f = self.alg.field();
        let nv = self.alg.quiver().vertex_count();
        if parts.is_empty() {
            return self.zero();
        }
        let dims: Vec<usize> = (0..nv)
            .map(|v| parts.iter().map(|m| m.dim(v)).sum())
            .collect();
        let actions = (0..self.alg.quiver().arrows().len())
            .map(|k| {
                let blocks: Vec<Mat> = parts.iter().map(|m| m.action(k).clone()).collect();
                Mat::block_diag(f, &blocks)
            })
            .collect();
        parts[0].with_data(dims, actions)
    }

    /// Direct sum with its canonical injections and projections.
    pub fn direct_sum_with_maps(
        &self,
        parts: &[QModule],
    ) -> (QModule, Vec<ModuleMap>, Vec<ModuleMap>) {
        let f = self.alg.field();
        let sum = self.direct_sum(parts);
        let nv = sum.vertex_count();
        let mut offsets = vec![0; nv];
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for m in parts {
            let mut inc = Vec::with_capacity(nv);
            let mut proj = Vec::with_capacity(nv);
            for (v, offset) in offsets.iter_mut().enumerate() {
                let mut i = Mat::zeros(f, sum.dim(v), m.dim(v));
                i.set_block(*offset, 0, &Mat::identity(f, m.dim(v)));
                proj.push(i.transpose());
                inc.push(i);
                *offset += m.dim(v);
            }
            injections.push(ModuleMap::from_parts(m.clone(), sum.clone(), inc));
            projections.push(ModuleMap::from_parts(sum.clone(), m.clone(), proj));
        }
        (sum, injections, projections)
    }

    /// Candidate combinations of `basis`: basis elements, seeded random mixes,
    /// then (budget permitting) every combination. Stops at the first `accept`.
    fn search<T>(
        &self,
        what: &str,
        basis: &[ModuleMap],
        order: SearchOrder,
        mut accept: impl FnMut(&ModuleMap) -> Option<T>,
    ) -> Result<Option<T>> {
        if basis.is_empty() {
            return Ok(None);
        }
        let f = self.alg.field();
        let d = basis.len();
        let idx = |i: usize| match order {
            SearchOrder::Forward => i,
            SearchOrder::Reverse => d - 1 - i,
        };
        for i in 0..d {
            if let Some(t) = accept(&basis[idx(i)]) {
                return Ok(Some(t));
            }
        }
        if d == 1 && f.p() == 2 {
            return Ok(None);
        }
        let seed = match order {
            SearchOrder::Forward => 0x5eed,
            SearchOrder::Reverse => 0xdeed,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ d as u64);
        for _ in 0..RANDOM_TRIES {
            let coeffs: Vec<u32> = (0..d).map(|_| rng.gen_range(0..f.p())).collect();
            if let Some(t) = accept(&ModuleMap::combination(basis, &coeffs)) {
                return Ok(Some(t));
            }
        }
        self.budget.admit(what, f.p(), d)?;
        for mut coeffs in f.all_vectors(d) {
            if order == SearchOrder::Reverse {
                coeffs.reverse();
            }
            if let Some(t) = accept(&ModuleMap::combination(basis, &coeffs)) {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    /// Every nonzero combination of `basis` up to a nonzero scalar, under the budget.
    pub fn for_each_map(
        &self,
        what: &str,
        basis: &[ModuleMap],
        mut visit: impl FnMut(&ModuleMap) -> Result<bool>,
    ) -> Result<()> {
        if basis.is_empty() {
            return Ok(());
        }
        let f = self.alg.field();
        self.budget.admit(what, f.p(), basis.len())?;
        for coeffs in f.all_vectors(basis.len()) {
            if coeffs.iter().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            if !visit(&ModuleMap::combination(basis, &coeffs))? {
                break;
            }
        }
        Ok(())
    }

    /// An isomorphism `m -> n`, if one exists.
    pub fn find_isomorphism(&self, m: &QModule, n: &QModule) -> Result<Option<ModuleMap>> {
        if m.dims() != n.dims() {
            return Ok(None);
        }
        if m.is_zero() {
            return Ok(Some(ModuleMap::zero(m, n)));
        }
        let basis = self.hom_space(m, n);
        self.search("isomorphism search", &basis, SearchOrder::Forward, |f| {
            f.is_iso().then(|| f.clone())
        })
    }

    pub fn is_isomorphic(&self, m: &QModule, n: &QModule) -> Result<bool> {
        Ok(self.find_isomorphism(m, n)?.is_some())
    }

    /// Exact isomorphism test when `n` is known to be indecomposable: `m ≅ n` iff
    /// some `g: n -> m`, `f: m -> n` from the hom bases have `f ∘ g` invertible.
    pub fn is_iso_to_indecomposable(&self, m: &QModule, n: &QModule) -> bool {
        if m.dims() != n.dims() {
            return false;
        }
        if m.is_zero() {
            return true;
        }
        let to = self.hom_space(m, n);
        if to.is_empty() {
            return false;
        }
        let from = self.hom_space(n, m);
        from.iter()
            .any(|g| to.iter().any(|f| f.compose(g).is_iso()))
    }

    /// An endomorphism that is neither nilpotent nor invertible, if one exists.
    pub fn find_splitting(&self, m: &QModule, order: SearchOrder) -> Result<Option<ModuleMap>> {
        if m.is_zero() {
            return Ok(None);
        }
        let basis = self.hom_space(m, m);
        self.search("endomorphism search", &basis, order, |f| {
            f.is_proper_nonnilpotent().then(|| f.clone())
        })
    }

    /// Fitting decomposition `m = ker φ^N ⊕ im φ^N`.
    pub fn fitting_split(&self, phi: &ModuleMap) -> (QModule, QModule) {
        let n = phi.source().total_dim().max(1) as u32;
        let comps: Vec<Mat> = phi.comps().iter().map(|c| c.pow(n)).collect();
        let power = ModuleMap::from_parts(phi.source().clone(), phi.source().clone(), comps);
        let (k, _) = self.kernel(&power);
        let (i, _) = self.image(&power);
        (k, i)
    }

    pub fn is_indecomposable(&self, m: &QModule) -> Result<bool> {
        if m.is_zero() {
            return Ok(false);
        }
        Ok(self.find_splitting(m, SearchOrder::Forward)?.is_none())
    }

    /// Radical layers: `layers[i][v]` is the multiplicity of `S_v` in `rad^i / rad^{i+1}`.
    pub fn radical_layers(&self, m: &QModule) -> Vec<Vec<usize>> {
        let f = m.field();
        let nv = m.vertex_count();
        let mut current: Vec<Mat> = (0..nv).map(|v| Mat::identity(f, m.dim(v))).collect();
        let mut layers = Vec::new();
        loop {
            let mut next: Vec<Mat> = (0..nv).map(|v| Mat::zeros(f, m.dim(v), 0)).collect();
            for (k, &(s, t)) in m.arrow_ends().iter().enumerate() {
                next[t] = next[t].hstack(&m.action(k).mul(&current[s]));
            }
            let next: Vec<Mat> = next.iter().map(Mat::column_space).collect();
            let layer: Vec<usize> = (0..nv)
                .map(|v| current[v].cols() - next[v].cols())
                .collect();
            if layer.iter().all(|&x| x == 0) {
                break;
            }
            layers.push(layer);
            current = next;
        }
        layers
    }

    /// Loewy-series label, top first, e.g. `2/13`.
    pub fn loewy_label(&self, m: &QModule) -> String {
        if m.is_zero() {
            return "0".into();
        }
        let names = self.alg.quiver().vertices();
        let sep = if names.iter().all(|n| n.chars().count() == 1) {
            ""
        } else {
            ","
        };
        self.radical_layers(m)
            .iter()
            .map(|layer| {
                let mut parts = Vec::new();
                for (v, &c) in layer.iter().enumerate() {
                    for _ in 0..c {
                        parts.push(names[v].as_str());
                    }
                }
                parts.join(sep)
            })
            .collect::<Vec<_>>()
            .join("/")
    }
}
