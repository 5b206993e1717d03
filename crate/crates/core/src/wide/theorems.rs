use rayon::prelude::*;
use serde::Serialize;

use crate::error::{FunctorTag, Result};
use crate::module::{IsoCatalog, QModule};
use crate::recollement::{Adjunction, RecollementCtx};
use crate::report::{CheckItem, CheckReport};
use crate::wide::engine::WideEngine;
use crate::wide::subcat::{WideBounds, WideSubcat};

/// Wide subcategories of `Λ` containing the `i_*`-image, matched with their restrictions.
#[derive(Clone, Debug, Serialize)]
pub struct Bijection {
    /// `(C, j^*C)` for every wide `C` containing the `i_*`-image.
    pub rows: Vec<(WideSubcat, WideSubcat)>,
    /// Every wide subcategory over the corner algebra.
    pub local_wide: Vec<WideSubcat>,
    /// `C ↦ j^*C` lands in wide subcategories and the preimage gives `C` back.
    pub forward_ok: bool,
    /// `W ↦ {M : j^*M ∈ W}` lands in wide subcategories containing the base and restricts back to `W`.
    pub backward_ok: bool,
}

impl Bijection {
    pub fn passed(&self) -> bool {
        self.forward_ok && self.backward_ok && self.rows.len() == self.local_wide.len()
    }
}

/// Outcome of checking the images under `i^*` and `i^!`.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientImages {
    /// `None` when `i_*i^*(C) ⊂ C` fails for some member.
    pub upper: Option<(WideSubcat, bool)>,
    /// `None` when `i_*i^!(C) ⊂ C` fails for some member.
    pub shriek: Option<(WideSubcat, bool)>,
}

impl QuotientImages {
    pub fn passed(&self) -> bool {
        self.upper.as_ref().is_none_or(|x| x.1) && self.shriek.as_ref().is_none_or(|x| x.1)
    }
}

/// Wide engines over the three algebras of a recollement and the reduction checks between them.
pub struct ReductionChecker<'a> {
    ctx: &'a RecollementCtx,
    big: WideEngine<'a>,
    small: WideEngine<'a>,
    local: WideEngine<'a>,
    base: WideSubcat,
}

impl<'a> ReductionChecker<'a> {
    pub fn new(ctx: &'a RecollementCtx, bounds: WideBounds) -> Result<ReductionChecker<'a>> {
        let big = WideEngine::new(ctx.big_catalog(), bounds)?;
        let small = WideEngine::new(ctx.small_catalog(), bounds)?;
        let local = WideEngine::new(ctx.local_catalog(), bounds)?;
        let base = WideSubcat::new(ctx.i_star_image_ids()?);
        Ok(ReductionChecker {
            ctx,
            big,
            small,
            local,
            base,
        })
    }

    pub fn ctx(&self) -> &RecollementCtx {
        self.ctx
    }

    pub fn big(&self) -> &WideEngine<'a> {
        &self.big
    }

    pub fn small(&self) -> &WideEngine<'a> {
        &self.small
    }

    pub fn local(&self) -> &WideEngine<'a> {
        &self.local
    }

    /// Ids of the `i_*`-image.
    pub fn base(&self) -> &WideSubcat {
        &self.base
    }

    pub fn containing_base(&self) -> Result<Vec<WideSubcat>> {
        self.big.enumerate_wide_containing(&self.base)
    }

    fn members<'c>(
        catalog: &'c IsoCatalog,
        s: &'c WideSubcat,
    ) -> impl Iterator<Item = &'c QModule> + 'c {
        s.ids().iter().map(move |&i| catalog.module(i))
    }

    fn image(
        &self,
        catalog: &IsoCatalog,
        modules: impl Iterator<Item = QModule>,
    ) -> Result<WideSubcat> {
        let mut ids = Vec::new();
        for m in modules {
            ids.extend(catalog.decompose(&m)?);
        }
        Ok(WideSubcat::new(ids))
    }

    /// `C ↦ j^*(C)`.
    pub fn restrict(&self, s: &WideSubcat) -> Result<WideSubcat> {
        let big = self.ctx.big_catalog();
        self.image(
            self.ctx.local_catalog(),
            Self::members(big, s).map(|m| self.ctx.j_upper(m)),
        )
    }

    /// `W ↦ {M : j^*(M) ∈ W}`.
    pub fn preimage(&self, w: &WideSubcat) -> Result<WideSubcat> {
        let mut ids = Vec::new();
        for e in self.ctx.big_catalog().entries() {
            if w.contains(self.ctx.local_catalog(), &self.ctx.j_upper(&e.module))? {
                ids.push(e.id);
            }
        }
        Ok(WideSubcat::new(ids))
    }

    /// `j_*j^*(C) ⊂ C` and `j_!j^*(C) ⊂ C`.
    pub fn lifts_stay_inside(&self, s: &WideSubcat) -> Result<bool> {
        let big = self.ctx.big_catalog();
        for m in Self::members(big, s) {
            let n = self.ctx.j_upper(m);
            if !s.contains(big, &self.ctx.j_lower(&n))?
                || !s.contains(big, &self.ctx.j_shriek(&n))?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn bijection(&self) -> Result<Bijection> {
        let containing = self.containing_base()?;
        let local_wide = self.local.enumerate_wide()?;
        let mut rows = Vec::with_capacity(containing.len());
        let mut forward_ok = true;
        for s in &containing {
            let w = self.restrict(s)?;
            forward_ok &= self.local.is_wide(&w) && self.preimage(&w)? == *s;
            rows.push((s.clone(), w));
        }
        let mut backward_ok = true;
        for w in &local_wide {
            let s = self.preimage(w)?;
            backward_ok &=
                self.big.is_wide(&s) && self.base.is_subset_of(&s) && self.restrict(&s)? == *w;
        }
        Ok(Bijection {
            rows,
            local_wide,
            forward_ok,
            backward_ok,
        })
    }

    pub fn quotient_images(&self, s: &WideSubcat) -> Result<QuotientImages> {
        let big = self.ctx.big_catalog();
        let small = self.ctx.small_catalog();
        let side = |tag: FunctorTag| -> Result<Option<(WideSubcat, bool)>> {
            for m in Self::members(big, s) {
                if !s.contains(big, &self.ctx.i_star(&self.ctx.apply(tag, m)))? {
                    return Ok(None);
                }
            }
            let image = self.image(small, Self::members(big, s).map(|m| self.ctx.apply(tag, m)))?;
            let wide = self.small.is_wide(&image);
            Ok(Some((image, wide)))
        };
        Ok(QuotientImages {
            upper: side(FunctorTag::IUpper)?,
            shriek: side(FunctorTag::IShriek)?,
        })
    }

    /// The recollement axioms restricted to `C`, `j^*(C)` and the whole quotient category.
    pub fn glued_recollement(&self, s: &WideSubcat) -> CheckReport {
        let mut report = CheckReport::default();
        let ctx = self.ctx;
        let (big, small, local) = (ctx.big_catalog(), ctx.small_catalog(), ctx.local_catalog());
        let w = match self.restrict(s) {
            Ok(w) => w,
            Err(e) => {
                report.push(CheckItem::fail("restriction", e.to_string()));
                return report;
            }
        };
        let all_small = WideSubcat::whole(small);

        let lands = |name: &str,
                     from: &IsoCatalog,
                     src: &WideSubcat,
                     tag: FunctorTag,
                     to: &IsoCatalog,
                     dst: &WideSubcat| {
            let outcomes = src
                .ids()
                .iter()
                .map(
                    |&i| match dst.contains(to, &ctx.apply(tag, from.module(i))) {
                        Ok(true) => Ok(()),
                        Ok(false) => Err(format!(
                            "{} of {} leaves the subcategory",
                            tag.symbol(),
                            from.label(i)
                        )),
                        Err(e) => Err(e.to_string()),
                    },
                )
                .collect();
            CheckItem::tally(name, outcomes)
        };
        report.push(lands(
            "i_* lands in C",
            small,
            &all_small,
            FunctorTag::IStar,
            big,
            s,
        ));
        report.push(lands(
            "j^* lands in j^*C",
            big,
            s,
            FunctorTag::JUpper,
            local,
            &w,
        ));
        report.push(lands(
            "j_! lands in C",
            local,
            &w,
            FunctorTag::JShriek,
            big,
            s,
        ));
        report.push(lands(
            "j_* lands in C",
            local,
            &w,
            FunctorTag::JLower,
            big,
            s,
        ));

        for tag in [FunctorTag::IUpper, FunctorTag::IShriek] {
            let name = format!("{}(C) is the whole quotient category", tag.symbol());
            match self.image(small, Self::members(big, s).map(|m| ctx.apply(tag, m))) {
                Ok(image) if image == all_small => report.push(CheckItem::pass(name, s.len())),
                Ok(image) => report.push(CheckItem::fail(
                    name,
                    format!("image {}", image.describe(small)),
                )),
                Err(e) => report.push(CheckItem::fail(name, e.to_string())),
            }
        }

        let sub_of = |tag: FunctorTag, domain: bool| -> WideSubcat {
            let cat = if domain {
                ctx.domain_catalog(tag)
            } else {
                ctx.codomain_catalog(tag)
            };
            if std::ptr::eq(cat, big) {
                s.clone()
            } else if std::ptr::eq(cat, local) {
                w.clone()
            } else {
                all_small.clone()
            }
        };
        for pair in Adjunction::ALL {
            let left_cat = ctx.domain(pair.left());
            let right_cat = ctx.codomain(pair.left());
            let sources = sub_of(pair.left(), true);
            let targets = sub_of(pair.left(), false);
            let src_catalog = ctx.domain_catalog(pair.left());
            let dst_catalog = ctx.codomain_catalog(pair.left());
            let pairs: Vec<(usize, usize)> = sources
                .ids()
                .iter()
                .flat_map(|&i| targets.ids().iter().map(move |&j| (i, j)))
                .collect();
            let outcomes = pairs
                .into_par_iter()
                .map(|(i, j)| {
                    let a = src_catalog.module(i);
                    let b = dst_catalog.module(j);
                    ctx.verify_adjunction(
                        pair,
                        a,
                        b,
                        &left_cat.hom_space(a, a),
                        &right_cat.hom_space(b, b),
                    )
                })
                .collect();
            report.push(CheckItem::tally(
                format!("restricted adjunction {}", pair.label()),
                outcomes,
            ));
        }

        let chain = |name: &str, catalog: &IsoCatalog, sub: &WideSubcat, tags: &[FunctorTag]| {
            let cat = catalog.cat();
            let mut outcomes = Vec::new();
            for &i in sub.ids() {
                for &j in sub.ids() {
                    let (x, y) = (catalog.module(i), catalog.module(j));
                    let d = cat.hom_dim(x, y);
                    for &tag in tags {
                        let image = ctx
                            .codomain(tag)
                            .hom_dim(&ctx.apply(tag, x), &ctx.apply(tag, y));
                        outcomes.push(if image == d {
                            Ok(())
                        } else {
                            Err(format!(
                                "dim Hom({}, {}) = {d} but {} gives {image}",
                                catalog.label(i),
                                catalog.label(j),
                                tag.symbol()
                            ))
                        });
                    }
                }
            }
            CheckItem::tally(name, outcomes)
        };
        report.push(chain(
            "i_* fully faithful on the quotient category",
            small,
            &all_small,
            &[FunctorTag::IStar],
        ));
        report.push(chain(
            "j_! and j_* fully faithful on j^*C",
            local,
            &w,
            &[FunctorTag::JShriek, FunctorTag::JLower],
        ));

        let outcomes = s
            .ids()
            .iter()
            .map(|&i| {
                let killed = ctx.j_upper(big.module(i)).is_zero();
                if killed == self.base.has(i) {
                    Ok(())
                } else {
                    Err(format!("{} breaks Im i_* = Ker j^* inside C", big.label(i)))
                }
            })
            .collect();
        report.push(CheckItem::tally("Im i_* = Ker j^* inside C", outcomes));
        report
    }
}
