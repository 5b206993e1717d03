use rayon::prelude::*;

use crate::error::FunctorTag;
use crate::module::{IsoCatalog, ModCat, ModuleMap, QModule};
use crate::recollement::{Adjunction, RecollementCtx};
use crate::report::{CheckItem, CheckReport};

type Outcome = std::result::Result<(), String>;

fn pairs(n: usize, m: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect()
}

impl RecollementCtx {
    /// Adjunctions, full faithfulness, `Im i_* = Ker j^*`, and exactness of `i_*` and `j^*`.
    pub fn check_recollement(&self) -> CheckReport {
        let mut report = CheckReport::default();
        for pair in Adjunction::ALL {
            report.push(self.check_adjunction_on_catalogs(pair));
        }
        for tag in [FunctorTag::IStar, FunctorTag::JShriek, FunctorTag::JLower] {
            report.push(self.check_fully_faithful(tag));
        }
        report.push(self.check_image_is_kernel());
        for tag in [FunctorTag::IStar, FunctorTag::JUpper] {
            report.push(self.check_exact(tag));
        }
        report
    }

    /// Unit/counit isomorphisms and the two gluing sequences.
    pub fn check_gluing(&self) -> CheckReport {
        let mut report = CheckReport::default();
        let composites = [
            (FunctorTag::IStar, FunctorTag::IUpper),
            (FunctorTag::IStar, FunctorTag::IShriek),
            (FunctorTag::JShriek, FunctorTag::JUpper),
            (FunctorTag::JLower, FunctorTag::JUpper),
        ];
        for (inner, outer) in composites {
            let name = format!("{}{} ≅ id", outer.symbol(), inner.symbol());
            let catalog = self.domain_catalog(inner);
            let cat = self.domain(inner);
            let outcomes = catalog
                .entries()
                .par_iter()
                .map(|e| {
                    let back = self.apply(outer, &self.apply(inner, &e.module));
                    if cat.is_iso_to_indecomposable(&back, &e.module) {
                        Ok(())
                    } else {
                        Err(format!("fails on {}", e.label))
                    }
                })
                .collect();
            report.push(CheckItem::tally(name, outcomes));
        }
        let outcomes = self
            .big_catalog()
            .entries()
            .par_iter()
            .map(|e| {
                self.gluing_sequences(&e.module)
                    .map(|_| ())
                    .map_err(|err| format!("{}: {err}", e.label))
            })
            .collect();
        report.push(CheckItem::tally("gluing sequences exact", outcomes));
        report
    }

    fn check_adjunction_on_catalogs(&self, pair: Adjunction) -> CheckItem {
        let left_cat = self.domain(pair.left());
        let right_cat = self.codomain(pair.left());
        let sources = self.domain_catalog(pair.left()).entries();
        let targets = self.codomain_catalog(pair.left()).entries();
        let outcomes: Vec<Outcome> = pairs(sources.len(), targets.len())
            .into_par_iter()
            .map(|(i, j)| {
                let a = &sources[i].module;
                let b = &targets[j].module;
                // naturality sample: endomorphisms and maps from the next entry
                let neighbour = &sources[(i + 1) % sources.len()].module;
                let mut into_a = left_cat.hom_space(a, a);
                into_a.extend(left_cat.hom_space(neighbour, a));
                let out_of_b = right_cat.hom_space(b, b);
                self.verify_adjunction(pair, a, b, &into_a, &out_of_b)
            })
            .collect();
        CheckItem::tally(format!("adjunction {}", pair.label()), outcomes)
    }

    fn check_fully_faithful(&self, tag: FunctorTag) -> CheckItem {
        let src = self.domain(tag);
        let dst = self.codomain(tag);
        let entries = self.domain_catalog(tag).entries();
        let outcomes = pairs(entries.len(), entries.len())
            .into_par_iter()
            .map(|(i, j)| {
                let (x, y) = (&entries[i].module, &entries[j].module);
                let basis = src.hom_space(x, y);
                let (fx, fy) = (self.apply(tag, x), self.apply(tag, y));
                let image_basis = dst.hom_space(&fx, &fy);
                if basis.len() != image_basis.len() {
                    return Err(format!(
                        "Hom({}, {}) has dim {} but its image has {}",
                        entries[i].label,
                        entries[j].label,
                        basis.len(),
                        image_basis.len()
                    ));
                }
                let images: Vec<ModuleMap> = basis.iter().map(|f| self.apply_map(tag, f)).collect();
                if !linearly_independent(dst, &images) {
                    return Err(format!(
                        "not faithful on Hom({}, {})",
                        entries[i].label, entries[j].label
                    ));
                }
                Ok(())
            })
            .collect();
        CheckItem::tally(format!("{} fully faithful", tag.symbol()), outcomes)
    }

    fn check_image_is_kernel(&self) -> CheckItem {
        let name = "Im i_* = Ker j^*";
        let image_ids = match self.i_star_image_ids() {
            Ok(ids) => ids,
            Err(e) => return CheckItem::fail(name, e.to_string()),
        };
        let mut outcomes: Vec<Outcome> = self
            .small_catalog()
            .entries()
            .iter()
            .map(|e| {
                if self.j_upper(&self.i_star(&e.module)).is_zero() {
                    Ok(())
                } else {
                    Err(format!("j^*i_* does not vanish on {}", e.label))
                }
            })
            .collect();
        outcomes.extend(self.big_catalog().entries().iter().map(|e| {
            let killed = self.j_upper(&e.module).is_zero();
            let inflated = image_ids.binary_search(&e.id).is_ok();
            if killed == inflated {
                Ok(())
            } else {
                Err(format!("{} breaks Im i_* = Ker j^*", e.label))
            }
        }));
        CheckItem::tally(name, outcomes)
    }

    /// Kernels and cokernels of every hom-basis map between catalog entries are preserved.
    fn check_exact(&self, tag: FunctorTag) -> CheckItem {
        let src = self.domain(tag);
        let entries = self.domain_catalog(tag).entries();
        let outcomes: Vec<Vec<Outcome>> = pairs(entries.len(), entries.len())
            .into_par_iter()
            .map(|(i, j)| {
                src.hom_space(&entries[i].module, &entries[j].module)
                    .iter()
                    .map(|f| self.preserves_kernel_and_cokernel(tag, src, f))
                    .collect()
            })
            .collect();
        CheckItem::tally(
            format!("{} exact", tag.symbol()),
            outcomes.into_iter().flatten().collect(),
        )
    }

    fn preserves_kernel_and_cokernel(
        &self,
        tag: FunctorTag,
        src: &ModCat,
        f: &ModuleMap,
    ) -> Outcome {
        let ff = self.apply_map(tag, f);
        let (_, inc) = src.kernel(f);
        let finc = self.apply_map(tag, &inc);
        let (_, proj) = src.cokernel(f);
        let fproj = self.apply_map(tag, &proj);
        let rank = ff.rank();
        let fx = ff.source();
        let fy = ff.target();
        let ok_kernel = finc.is_injective()
            && ff.compose(&finc).is_zero()
            && (0..fx.vertex_count()).all(|v| finc.source().dim(v) + rank[v] == fx.dim(v));
        let ok_cokernel = fproj.is_surjective()
            && fproj.compose(&ff).is_zero()
            && (0..fy.vertex_count()).all(|v| fproj.target().dim(v) + rank[v] == fy.dim(v));
        if ok_kernel && ok_cokernel {
            Ok(())
        } else {
            Err(format!(
                "{} does not preserve the kernel or cokernel of a map {} -> {}",
                tag.symbol(),
                f.source().dim_string(),
                f.target().dim_string()
            ))
        }
    }
}

fn linearly_independent(cat: &ModCat, maps: &[ModuleMap]) -> bool {
    if maps.is_empty() {
        return true;
    }
    let cols: Vec<Vec<u32>> = maps.iter().map(ModuleMap::flatten).collect();
    crate::linalg::Mat::from_columns(cat.algebra().field(), cols[0].len(), &cols).rank()
        == maps.len()
}

/// Hom dimensions on both sides of every adjunction, over all catalog pairs.
pub fn adjunction_dimension_table(
    ctx: &RecollementCtx,
    pair: Adjunction,
) -> Vec<(usize, usize, usize, usize)> {
    let sources: &IsoCatalog = ctx.domain_catalog(pair.left());
    let targets: &IsoCatalog = ctx.codomain_catalog(pair.left());
    pairs(sources.len(), targets.len())
        .into_par_iter()
        .map(|(i, j)| {
            let a: &QModule = sources.module(i);
            let b: &QModule = targets.module(j);
            let lhs = ctx
                .codomain(pair.left())
                .hom_dim(&ctx.apply(pair.left(), a), b);
            let rhs = ctx
                .domain(pair.left())
                .hom_dim(a, &ctx.apply(pair.right(), b));
            (i, j, lhs, rhs)
        })
        .collect()
}
