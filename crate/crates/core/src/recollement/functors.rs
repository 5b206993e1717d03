use std::sync::Arc;

use crate::algebra::{
    corner_algebra, quotient_by_idempotent_ideal, CornerAlgebra, Idem, Path, PresentedAlgebra,
    QuotientAlgebra,
};
use crate::error::{Budget, FunctorTag, Result};
use crate::linalg::Mat;
use crate::module::{CatalogBounds, IsoCatalog, ModCat, ModuleMap, QModule};

/// An algebra, an idempotent, the two derived algebras and their catalogs.
#[derive(Clone, Debug)]
pub struct RecollementCtx {
    e: Idem,
    quotient: QuotientAlgebra,
    corner: CornerAlgebra,
    /// Λ arrow -> Λ' arrow.
    quotient_arrow: Vec<Option<usize>>,
    big: IsoCatalog,
    small: IsoCatalog,
    local: IsoCatalog,
}

/// `N ⊗ eΛ` at each vertex: a generator space modulo relations.
struct Induced {
    module: QModule,
    offsets: Vec<Vec<usize>>,
    proj: Vec<Mat>,
    sect: Vec<Mat>,
}

/// `Hom(e_w Λ e, N)` at each vertex, as a solution space inside the unknowns.
struct Coinduced {
    module: QModule,
    offsets: Vec<Vec<usize>>,
    basis: Vec<Mat>,
}

fn arrow_path(alg: &PresentedAlgebra, k: usize) -> Path {
    let a = &alg.quiver().arrows()[k];
    Path {
        source: a.source,
        target: a.target,
        arrows: vec![k],
    }
}

fn stack_columns(field: crate::linalg::FieldSpec, rows: usize, blocks: &[Mat]) -> Mat {
    blocks
        .iter()
        .fold(Mat::zeros(field, rows, 0), |acc, b| acc.hstack(b))
}

impl RecollementCtx {
    pub fn new(
        alg: PresentedAlgebra,
        e: Idem,
        bounds: CatalogBounds,
        budget: Budget,
    ) -> Result<RecollementCtx> {
        let quotient = quotient_by_idempotent_ideal(&alg, &e)?;
        let corner = corner_algebra(&alg, &e)?;
        let mut quotient_arrow = vec![None; alg.quiver().arrows().len()];
        for (i, &k) in quotient.arrow_map.iter().enumerate() {
            quotient_arrow[k] = Some(i);
        }
        let big = ModCat::new(Arc::new(alg), budget);
        let small = ModCat::new(Arc::new(quotient.algebra.clone()), budget);
        let local = ModCat::new(Arc::new(corner.algebra.clone()), budget);
        let (big, (small, local)) = rayon::join(
            || IsoCatalog::enumerate(&big, bounds),
            || {
                rayon::join(
                    || IsoCatalog::enumerate(&small, bounds),
                    || IsoCatalog::enumerate(&local, bounds),
                )
            },
        );
        Ok(RecollementCtx {
            e,
            quotient,
            corner,
            quotient_arrow,
            big: big?,
            small: small?,
            local: local?,
        })
    }

    pub fn idempotent(&self) -> &Idem {
        &self.e
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        self.big.cat().algebra()
    }

    pub fn quotient(&self) -> &QuotientAlgebra {
        &self.quotient
    }

    pub fn corner(&self) -> &CornerAlgebra {
        &self.corner
    }

    /// Modules over `Λ`.
    pub fn big_cat(&self) -> &ModCat {
        self.big.cat()
    }

    /// Modules over `Λ/ΛeΛ`.
    pub fn small_cat(&self) -> &ModCat {
        self.small.cat()
    }

    /// Modules over `eΛe`.
    pub fn local_cat(&self) -> &ModCat {
        self.local.cat()
    }

    pub fn big_catalog(&self) -> &IsoCatalog {
        &self.big
    }

    pub fn small_catalog(&self) -> &IsoCatalog {
        &self.small
    }

    pub fn local_catalog(&self) -> &IsoCatalog {
        &self.local
    }

    fn lam(&self) -> &PresentedAlgebra {
        self.big.cat().algebra()
    }

    fn field(&self) -> crate::linalg::FieldSpec {
        self.lam().field()
    }

    /// Corner vertices as `Λ` vertices.
    fn e_vertices(&self) -> &[usize] {
        &self.corner.vertex_map
    }

    /// Restrict a `Λ`-module that vanishes on `e` to `Λ/ΛeΛ`.
    fn restrict_to_quotient(&self, m: &QModule) -> QModule {
        let dims = self.quotient.vertex_map.iter().map(|&v| m.dim(v)).collect();
        let actions = self
            .quotient
            .arrow_map
            .iter()
            .map(|&k| m.action(k).clone())
            .collect();
        QModule::from_parts(&self.quotient.algebra, dims, actions)
    }

    pub fn i_star(&self, m: &QModule) -> QModule {
        let lam = self.lam();
        let mut dims = vec![0; lam.quiver().vertex_count()];
        for (i, &v) in self.quotient.vertex_map.iter().enumerate() {
            dims[v] = m.dim(i);
        }
        let actions = lam
            .quiver()
            .arrows()
            .iter()
            .zip(&self.quotient_arrow)
            .map(|(a, q)| match q {
                Some(i) => m.action(*i).clone(),
                None => Mat::zeros(self.field(), dims[a.target], dims[a.source]),
            })
            .collect();
        QModule::from_parts(lam, dims, actions)
    }

    pub fn i_star_map(&self, f: &ModuleMap) -> ModuleMap {
        let source = self.i_star(f.source());
        let target = self.i_star(f.target());
        let mut comps: Vec<Mat> = (0..source.vertex_count())
            .map(|v| Mat::zeros(self.field(), target.dim(v), source.dim(v)))
            .collect();
        for (i, &v) in self.quotient.vertex_map.iter().enumerate() {
            comps[v] = f.comp(i).clone();
        }
        ModuleMap::from_parts(source, target, comps)
    }

    /// `M·ΛeΛ`, vertex by vertex, as column spans.
    fn ideal_part(&self, m: &QModule) -> Vec<Mat> {
        let lam = self.lam();
        let q = lam.quiver();
        let mut spans: Vec<Mat> = (0..q.vertex_count())
            .map(|v| Mat::zeros(self.field(), m.dim(v), 0))
            .collect();
        for &w in q.topological_order() {
            if self.e.contains(w) {
                spans[w] = Mat::identity(self.field(), m.dim(w));
                continue;
            }
            for (k, a) in q.arrows_into(w) {
                let moved = m.action(k).mul(&spans[a.source]);
                spans[w] = spans[w].hstack(&moved);
            }
            spans[w] = spans[w].column_space();
        }
        spans
    }

    /// The unit `M -> i_* i^* M`, a surjection.
    pub fn i_upper_unit(&self, m: &QModule) -> ModuleMap {
        let spans = self.ideal_part(m);
        self.big_cat().quotient(m, &spans).1
    }

    pub fn i_upper(&self, m: &QModule) -> QModule {
        self.restrict_to_quotient(self.i_upper_unit(m).target())
    }

    pub fn i_upper_map(&self, f: &ModuleMap) -> ModuleMap {
        let src = self.i_upper_unit(f.source());
        let dst = self.i_upper_unit(f.target());
        let comps = (0..f.comps().len())
            .map(|v| {
                let sect = src.comp(v).right_inverse().expect("surjective unit");
                dst.comp(v).mul(f.comp(v)).mul(&sect)
            })
            .collect();
        let lifted = ModuleMap::from_parts(src.target().clone(), dst.target().clone(), comps);
        self.restrict_map(&lifted)
    }

    /// Largest submodule killed by `ΛeΛ`, as column spans.
    fn annihilated_part(&self, m: &QModule) -> Vec<Mat> {
        let lam = self.lam();
        let q = lam.quiver();
        let f = self.field();
        let mut spans: Vec<Mat> = (0..q.vertex_count())
            .map(|v| Mat::zeros(f, m.dim(v), 0))
            .collect();
        for &w in q.topological_order().iter().rev() {
            if self.e.contains(w) {
                continue;
            }
            let mut conditions = Mat::zeros(f, 0, m.dim(w));
            for (k, a) in q.arrows_from(w) {
                let cut = spans[a.target].cokernel_projection();
                conditions = conditions.vstack(&cut.mul(m.action(k)));
            }
            spans[w] = conditions.kernel_matrix();
        }
        spans
    }

    /// The counit `i_* i^! M -> M`, an injection.
    pub fn i_shriek_counit(&self, m: &QModule) -> ModuleMap {
        let spans = self.annihilated_part(m);
        self.big_cat().submodule(m, &spans).1
    }

    pub fn i_shriek(&self, m: &QModule) -> QModule {
        self.restrict_to_quotient(self.i_shriek_counit(m).source())
    }

    pub fn i_shriek_map(&self, f: &ModuleMap) -> ModuleMap {
        let src = self.i_shriek_counit(f.source());
        let dst = self.i_shriek_counit(f.target());
        let comps = (0..f.comps().len())
            .map(|v| {
                let moved = f.comp(v).mul(src.comp(v));
                dst.comp(v)
                    .solve_matrix(&moved)
                    .expect("image stays annihilated")
            })
            .collect();
        let lifted = ModuleMap::from_parts(src.source().clone(), dst.source().clone(), comps);
        self.restrict_map(&lifted)
    }

    fn restrict_map(&self, f: &ModuleMap) -> ModuleMap {
        let comps = self
            .quotient
            .vertex_map
            .iter()
            .map(|&v| f.comp(v).clone())
            .collect();
        ModuleMap::from_parts(
            self.restrict_to_quotient(f.source()),
            self.restrict_to_quotient(f.target()),
            comps,
        )
    }

    pub fn j_upper(&self, m: &QModule) -> QModule {
        let ev = self.e_vertices();
        let dims = ev.iter().map(|&v| m.dim(v)).collect();
        let actions = self
            .corner
            .algebra
            .quiver()
            .arrows()
            .iter()
            .zip(&self.corner.arrow_elements)
            .map(|(a, x)| m.elem_action(self.lam(), x, ev[a.source], ev[a.target]))
            .collect();
        QModule::from_parts(&self.corner.algebra, dims, actions)
    }

    pub fn j_upper_map(&self, f: &ModuleMap) -> ModuleMap {
        let comps = self
            .e_vertices()
            .iter()
            .map(|&v| f.comp(v).clone())
            .collect();
        ModuleMap::from_parts(self.j_upper(f.source()), self.j_upper(f.target()), comps)
    }

    /// Block offsets: `offsets[w][i]` is where corner vertex `i` starts at vertex `w`,
    /// with `paths(w, i)` basis paths each carrying a copy of `N_i`.
    fn block_offsets(&self, n: &QModule, paths: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
        let nv = self.lam().quiver().vertex_count();
        (0..nv)
            .map(|w| {
                let mut off = vec![0];
                for i in 0..self.e_vertices().len() {
                    let last = *off.last().unwrap();
                    off.push(last + paths(w, i) * n.dim(i));
                }
                off
            })
            .collect()
    }

    fn induce(&self, n: &QModule) -> Induced {
        let lam = self.lam();
        let f = self.field();
        let ev = self.e_vertices();
        let nv = lam.quiver().vertex_count();
        let corner = &self.corner.algebra;
        let offsets = self.block_offsets(n, |w, i| lam.basis_between(ev[i], w).len());
        let gen_dim = |w: usize| *offsets[w].last().unwrap();

        let mut proj = Vec::with_capacity(nv);
        let mut sect = Vec::with_capacity(nv);
        for w in 0..nv {
            let mut relations: Vec<Vec<u32>> = Vec::new();
            for (ci, c) in corner.basis().iter().enumerate() {
                if c.is_trivial() {
                    continue;
                }
                let (i, j) = (c.source, c.target);
                let nc = n.path_action(c);
                let emb = &self.corner.embedding[ci];
                for (yi, &y) in lam.basis_between(ev[j], w).iter().enumerate() {
                    let moved = lam.multiply(emb, &lam.basis_elem(y));
                    for col in 0..n.dim(i) {
                        let mut r = vec![0u32; gen_dim(w)];
                        for row in 0..n.dim(j) {
                            r[offsets[w][j] + yi * n.dim(j) + row] = nc.get(row, col);
                        }
                        for (xi, &x) in lam.basis_between(ev[i], w).iter().enumerate() {
                            let idx = offsets[w][i] + xi * n.dim(i) + col;
                            r[idx] = f.sub(r[idx], moved[x]);
                        }
                        relations.push(r);
                    }
                }
            }
            let rel = Mat::from_columns(f, gen_dim(w), &relations);
            let p = rel.cokernel_projection();
            sect.push(p.right_inverse().expect("full row rank"));
            proj.push(p);
        }

        let dims: Vec<usize> = proj.iter().map(Mat::rows).collect();
        let actions = lam
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (s, t) = (a.source, a.target);
                let mut g = Mat::zeros(f, gen_dim(t), gen_dim(s));
                for i in 0..ev.len() {
                    for (xi, &x) in lam.basis_between(ev[i], s).iter().enumerate() {
                        let moved =
                            lam.reduce(&lam.basis()[x].concat(&arrow_path(lam, k)).unwrap());
                        for (yi, &y) in lam.basis_between(ev[i], t).iter().enumerate() {
                            if moved[y] == 0 {
                                continue;
                            }
                            for d in 0..n.dim(i) {
                                g.set(
                                    offsets[t][i] + yi * n.dim(i) + d,
                                    offsets[s][i] + xi * n.dim(i) + d,
                                    moved[y],
                                );
                            }
                        }
                    }
                }
                proj[t].mul(&g).mul(&sect[s])
            })
            .collect();
        Induced {
            module: QModule::from_parts(lam, dims, actions),
            offsets,
            proj,
            sect,
        }
    }

    pub fn j_shriek(&self, n: &QModule) -> QModule {
        self.induce(n).module
    }

    pub fn j_shriek_map(&self, g: &ModuleMap) -> ModuleMap {
        let lam = self.lam();
        let ev = self.e_vertices();
        let src = self.induce(g.source());
        let dst = self.induce(g.target());
        let comps = (0..lam.quiver().vertex_count())
            .map(|w| {
                let blocks: Vec<Mat> = (0..ev.len())
                    .map(|i| {
                        let copies = lam.basis_between(ev[i], w).len();
                        Mat::block_diag(self.field(), &vec![g.comp(i).clone(); copies])
                    })
                    .collect();
                let lifted = Mat::block_diag(self.field(), &blocks);
                dst.proj[w].mul(&lifted).mul(&src.sect[w])
            })
            .collect();
        ModuleMap::from_parts(src.module, dst.module, comps)
    }

    /// The counit `j_! j^* M -> M`, `n ⊗ x ↦ n·x`.
    pub fn j_shriek_counit(&self, m: &QModule) -> ModuleMap {
        let lam = self.lam();
        let ev = self.e_vertices();
        let restricted = self.j_upper(m);
        let ind = self.induce(&restricted);
        let comps = (0..lam.quiver().vertex_count())
            .map(|w| {
                let blocks: Vec<Mat> = (0..ev.len())
                    .flat_map(|i| {
                        lam.basis_between(ev[i], w)
                            .iter()
                            .map(|&x| m.path_action(&lam.basis()[x]))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                stack_columns(self.field(), m.dim(w), &blocks).mul(&ind.sect[w])
            })
            .collect();
        ModuleMap::from_parts(ind.module, m.clone(), comps)
    }

    /// The unit `N -> j^* j_! N`, `n ↦ n ⊗ e`.
    pub fn j_shriek_unit(&self, n: &QModule) -> ModuleMap {
        let lam = self.lam();
        let ev = self.e_vertices();
        let ind = self.induce(n);
        let comps = (0..ev.len())
            .map(|i| {
                let a = ev[i];
                let xi = lam
                    .basis_between(a, a)
                    .iter()
                    .position(|&x| lam.basis()[x].is_trivial())
                    .expect("idempotent is a basis path");
                let mut inc = Mat::zeros(self.field(), *ind.offsets[a].last().unwrap(), n.dim(i));
                inc.set_block(
                    ind.offsets[a][i] + xi * n.dim(i),
                    0,
                    &Mat::identity(self.field(), n.dim(i)),
                );
                ind.proj[a].mul(&inc)
            })
            .collect();
        ModuleMap::from_parts(n.clone(), self.j_upper(&ind.module), comps)
    }

    fn coinduce(&self, n: &QModule) -> Coinduced {
        let lam = self.lam();
        let f = self.field();
        let ev = self.e_vertices();
        let nv = lam.quiver().vertex_count();
        let corner = &self.corner.algebra;
        let offsets = self.block_offsets(n, |w, i| lam.basis_between(w, ev[i]).len());
        let unknowns = |w: usize| *offsets[w].last().unwrap();

        let mut basis = Vec::with_capacity(nv);
        for w in 0..nv {
            // f(x · c) = f(x) · c for every path x: w -> e and corner basis c
            let mut rows: Vec<Vec<u32>> = Vec::new();
            for (ci, c) in corner.basis().iter().enumerate() {
                if c.is_trivial() {
                    continue;
                }
                let (i, j) = (c.source, c.target);
                let nc = n.path_action(c);
                let emb = &self.corner.embedding[ci];
                for (xi, &x) in lam.basis_between(w, ev[i]).iter().enumerate() {
                    let moved = lam.multiply(&lam.basis_elem(x), emb);
                    for row in 0..n.dim(j) {
                        let mut r = vec![0u32; unknowns(w)];
                        for (yi, &y) in lam.basis_between(w, ev[j]).iter().enumerate() {
                            r[offsets[w][j] + yi * n.dim(j) + row] = moved[y];
                        }
                        for col in 0..n.dim(i) {
                            let idx = offsets[w][i] + xi * n.dim(i) + col;
                            r[idx] = f.sub(r[idx], nc.get(row, col));
                        }
                        rows.push(r);
                    }
                }
            }
            let system = Mat::from_columns(f, unknowns(w), &rows).transpose();
            basis.push(system.kernel_matrix());
        }

        let dims: Vec<usize> = basis.iter().map(Mat::cols).collect();
        let actions = lam
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (s, t) = (a.source, a.target);
                // (f·α)(x) = f(αx)
                let mut g = Mat::zeros(f, unknowns(t), unknowns(s));
                for i in 0..ev.len() {
                    for (xi, &x) in lam.basis_between(t, ev[i]).iter().enumerate() {
                        let moved =
                            lam.reduce(&arrow_path(lam, k).concat(&lam.basis()[x]).unwrap());
                        for (yi, &y) in lam.basis_between(s, ev[i]).iter().enumerate() {
                            if moved[y] == 0 {
                                continue;
                            }
                            for d in 0..n.dim(i) {
                                g.set(
                                    offsets[t][i] + xi * n.dim(i) + d,
                                    offsets[s][i] + yi * n.dim(i) + d,
                                    moved[y],
                                );
                            }
                        }
                    }
                }
                basis[t]
                    .solve_matrix(&g.mul(&basis[s]))
                    .expect("coinduced action is closed")
            })
            .collect();
        Coinduced {
            module: QModule::from_parts(lam, dims, actions),
            offsets,
            basis,
        }
    }

    pub fn j_lower(&self, n: &QModule) -> QModule {
        self.coinduce(n).module
    }

    pub fn j_lower_map(&self, g: &ModuleMap) -> ModuleMap {
        let lam = self.lam();
        let ev = self.e_vertices();
        let src = self.coinduce(g.source());
        let dst = self.coinduce(g.target());
        let comps = (0..lam.quiver().vertex_count())
            .map(|w| {
                let blocks: Vec<Mat> = (0..ev.len())
                    .map(|i| {
                        let copies = lam.basis_between(w, ev[i]).len();
                        Mat::block_diag(self.field(), &vec![g.comp(i).clone(); copies])
                    })
                    .collect();
                let lifted = Mat::block_diag(self.field(), &blocks);
                dst.basis[w]
                    .solve_matrix(&lifted.mul(&src.basis[w]))
                    .expect("composite is a module map")
            })
            .collect();
        ModuleMap::from_parts(src.module, dst.module, comps)
    }

    /// The unit `M -> j_* j^* M`, `m ↦ (x ↦ m·x)`.
    pub fn j_lower_unit(&self, m: &QModule) -> ModuleMap {
        let lam = self.lam();
        let ev = self.e_vertices();
        let co = self.coinduce(&self.j_upper(m));
        let comps = (0..lam.quiver().vertex_count())
            .map(|w| {
                let blocks: Vec<Mat> = (0..ev.len())
                    .flat_map(|i| {
                        lam.basis_between(w, ev[i])
                            .iter()
                            .map(|&x| m.path_action(&lam.basis()[x]))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                let eval = blocks
                    .iter()
                    .fold(Mat::zeros(self.field(), 0, m.dim(w)), |acc, b| {
                        acc.vstack(b)
                    });
                co.basis[w]
                    .solve_matrix(&eval)
                    .expect("evaluation is equivariant")
            })
            .collect();
        ModuleMap::from_parts(m.clone(), co.module, comps)
    }

    /// The counit `j^* j_* N -> N`, `f ↦ f(e)`.
    pub fn j_lower_counit(&self, n: &QModule) -> ModuleMap {
        let lam = self.lam();
        let ev = self.e_vertices();
        let co = self.coinduce(n);
        let comps = (0..ev.len())
            .map(|i| {
                let a = ev[i];
                let xi = lam
                    .basis_between(a, a)
                    .iter()
                    .position(|&x| lam.basis()[x].is_trivial())
                    .expect("idempotent is a basis path");
                let mut pick = Mat::zeros(self.field(), n.dim(i), *co.offsets[a].last().unwrap());
                pick.set_block(
                    0,
                    co.offsets[a][i] + xi * n.dim(i),
                    &Mat::identity(self.field(), n.dim(i)),
                );
                pick.mul(&co.basis[a])
            })
            .collect();
        ModuleMap::from_parts(self.j_upper(&co.module), n.clone(), comps)
    }

    /// The counit `i^* i_* M' -> M'`, an isomorphism.
    pub fn i_upper_counit(&self, m: &QModule) -> ModuleMap {
        let unit = self.i_upper_unit(&self.i_star(m));
        let comps = self
            .quotient
            .vertex_map
            .iter()
            .map(|&v| unit.comp(v).inverse().expect("nothing to kill"))
            .collect();
        ModuleMap::from_parts(self.restrict_to_quotient(unit.target()), m.clone(), comps)
    }

    /// The unit `M' -> i^! i_* M'`, an isomorphism.
    pub fn i_shriek_unit(&self, m: &QModule) -> ModuleMap {
        let counit = self.i_shriek_counit(&self.i_star(m));
        let comps = self
            .quotient
            .vertex_map
            .iter()
            .map(|&v| counit.comp(v).inverse().expect("everything is annihilated"))
            .collect();
        ModuleMap::from_parts(m.clone(), self.restrict_to_quotient(counit.source()), comps)
    }

    /// Apply a functor to a module over its source algebra.
    pub fn apply(&self, tag: FunctorTag, m: &QModule) -> QModule {
        match tag {
            FunctorTag::IStar => self.i_star(m),
            FunctorTag::IUpper => self.i_upper(m),
            FunctorTag::IShriek => self.i_shriek(m),
            FunctorTag::JUpper => self.j_upper(m),
            FunctorTag::JShriek => self.j_shriek(m),
            FunctorTag::JLower => self.j_lower(m),
        }
    }

    pub fn apply_map(&self, tag: FunctorTag, f: &ModuleMap) -> ModuleMap {
        match tag {
            FunctorTag::IStar => self.i_star_map(f),
            FunctorTag::IUpper => self.i_upper_map(f),
            FunctorTag::IShriek => self.i_shriek_map(f),
            FunctorTag::JUpper => self.j_upper_map(f),
            FunctorTag::JShriek => self.j_shriek_map(f),
            FunctorTag::JLower => self.j_lower_map(f),
        }
    }

    /// Module category a functor starts from.
    pub fn domain(&self, tag: FunctorTag) -> &ModCat {
        match tag {
            FunctorTag::IStar => self.small_cat(),
            FunctorTag::IUpper | FunctorTag::IShriek | FunctorTag::JUpper => self.big_cat(),
            FunctorTag::JShriek | FunctorTag::JLower => self.local_cat(),
        }
    }

    pub fn codomain(&self, tag: FunctorTag) -> &ModCat {
        match tag {
            FunctorTag::IStar | FunctorTag::JShriek | FunctorTag::JLower => self.big_cat(),
            FunctorTag::IUpper | FunctorTag::IShriek => self.small_cat(),
            FunctorTag::JUpper => self.local_cat(),
        }
    }

    pub fn domain_catalog(&self, tag: FunctorTag) -> &IsoCatalog {
        match tag {
            FunctorTag::IStar => &self.small,
            FunctorTag::IUpper | FunctorTag::IShriek | FunctorTag::JUpper => &self.big,
            FunctorTag::JShriek | FunctorTag::JLower => &self.local,
        }
    }

    pub fn codomain_catalog(&self, tag: FunctorTag) -> &IsoCatalog {
        match tag {
            FunctorTag::IStar | FunctorTag::JShriek | FunctorTag::JLower => &self.big,
            FunctorTag::IUpper | FunctorTag::IShriek => &self.small,
            FunctorTag::JUpper => &self.local,
        }
    }

    /// Ids of `Λ`-catalog entries of the form `i_*(M')`.
    pub fn i_star_image_ids(&self) -> Result<Vec<usize>> {
        let mut ids = Vec::new();
        for entry in self.small.entries() {
            ids.extend(self.big.decompose(&self.i_star(&entry.module))?);
        }
        ids.sort_unstable();
        ids.dedup();
        Ok(ids)
    }
}
