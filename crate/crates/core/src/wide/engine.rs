use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::module::{IsoCatalog, ModCat};
use crate::wide::rules::{Rule, RuleTable};
use crate::wide::subcat::{mask_of, sort_subcats, WideBounds, WideSubcat, MASK_BITS};

/// Nondecreasing id lists of length `1..=k` over `0..n`.
pub(crate) fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(m) = stack.pop() {
        if m.len() < k {
            for j in *m.last().unwrap()..n {
                let mut next = m.clone();
                next.push(j);
                stack.push(next);
            }
        }
        out.push(m);
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Nondecreasing id lists whose dimension vectors add up to `dims`.
fn multisets_with_dims(catalog: &IsoCatalog, dims: &[usize]) -> Vec<Vec<usize>> {
    fn go(
        catalog: &IsoCatalog,
        start: usize,
        rest: &mut Vec<usize>,
        acc: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest.iter().all(|&d| d == 0) {
            out.push(acc.clone());
            return;
        }
        for id in start..catalog.len() {
            let d = catalog.entries()[id].dims();
            if d.iter().zip(rest.iter()).all(|(a, b)| a <= b) {
                rest.iter_mut().zip(d).for_each(|(r, x)| *r -= x);
                acc.push(id);
                go(catalog, id, rest, acc, out);
                acc.pop();
                rest.iter_mut().zip(d).for_each(|(r, x)| *r += x);
            }
        }
    }
    let mut out = Vec::new();
    go(catalog, 0, &mut dims.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn check_size(catalog: &IsoCatalog, cap: usize) -> Result<()> {
    if catalog.len() > cap {
        return Err(Error::TooManyIndecomposables {
            count: catalog.len(),
            cap,
        });
    }
    Ok(())
}

/// Closure checks against precomputed probe tables, and subset enumeration.
#[derive(Clone, Debug)]
pub struct WideEngine<'a> {
    catalog: &'a IsoCatalog,
    bounds: WideBounds,
    kernels: RuleTable,
    cokernels: RuleTable,
    extensions: RuleTable,
    all: RuleTable,
    /// Extension pairs skipped because the middle term exceeded the cap.
    skipped_extensions: usize,
}

impl<'a> WideEngine<'a> {
    pub fn new(catalog: &'a IsoCatalog, bounds: WideBounds) -> Result<WideEngine<'a>> {
        bounds.validate()?;
        check_size(catalog, MASK_BITS)?;
        let cat = ModCat::new(catalog.cat().algebra_arc().clone(), bounds.budget());
        let kernels = kernel_rules(&cat, catalog, bounds)?;
        let cokernels = cokernel_rules(&cat, catalog, bounds)?;
        let (extensions, skipped_extensions) = extension_rules(&cat, catalog, bounds)?;
        let all = RuleTable::union(&[&kernels, &cokernels, &extensions]);
        Ok(WideEngine {
            catalog,
            bounds,
            kernels,
            cokernels,
            extensions,
            all,
            skipped_extensions,
        })
    }

    pub fn catalog(&self) -> &IsoCatalog {
        self.catalog
    }

    pub fn bounds(&self) -> WideBounds {
        self.bounds
    }

    pub fn skipped_extensions(&self) -> usize {
        self.skipped_extensions
    }

    pub fn rules(&self) -> &RuleTable {
        &self.all
    }

    pub fn closed_under_kernels(&self, s: &WideSubcat) -> bool {
        self.kernels.admits(s.mask())
    }

    pub fn closed_under_cokernels(&self, s: &WideSubcat) -> bool {
        self.cokernels.admits(s.mask())
    }

    pub fn closed_under_extensions(&self, s: &WideSubcat) -> bool {
        self.extensions.admits(s.mask())
    }

    pub fn is_wide(&self, s: &WideSubcat) -> bool {
        self.all.admits(s.mask())
    }

    pub fn enumerate_wide(&self) -> Result<Vec<WideSubcat>> {
        self.enumerate_wide_containing(&WideSubcat::zero())
    }

    /// Wide subcategories containing `base`, in report order.
    pub fn enumerate_wide_containing(&self, base: &WideSubcat) -> Result<Vec<WideSubcat>> {
        check_size(self.catalog, self.bounds.subset_cap)?;
        let n = self.catalog.len();
        let base = base.mask();
        let mut found: Vec<WideSubcat> = (0..1u64 << n)
            .into_par_iter()
            .filter(|&s| s & base == base && self.all.admits(s))
            .map(WideSubcat::from_mask)
            .collect();
        sort_subcats(&mut found);
        Ok(found)
    }
}

fn kernel_rules(cat: &ModCat, catalog: &IsoCatalog, bounds: WideBounds) -> Result<RuleTable> {
    let n = catalog.len();
    let probes: Vec<(Vec<usize>, usize)> = multisets(n, bounds.max_multiplicity)
        .into_iter()
        .flat_map(|src| (0..n).map(move |t| (src.clone(), t)))
        .collect();
    let rules: Vec<Vec<Rule>> = probes
        .par_iter()
        .map(|(src, t)| {
            let x = catalog.sum_of(src);
            let y = catalog.module(*t);
            let premise = mask_of(src) | 1 << t;
            let mut out = Vec::new();
            cat.for_each_map("kernel probe", &cat.hom_space(&x, y), |f| {
                let (k, _) = cat.kernel(f);
                out.push(Rule::new(premise, mask_of(&catalog.decompose(&k)?)));
                Ok(true)
            })?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(RuleTable::new(rules.into_iter().flatten()))
}

fn cokernel_rules(cat: &ModCat, catalog: &IsoCatalog, bounds: WideBounds) -> Result<RuleTable> {
    let n = catalog.len();
    let probes: Vec<(usize, Vec<usize>)> = (0..n)
        .flat_map(|s| {
            multisets(n, bounds.max_multiplicity)
                .into_iter()
                .map(move |dst| (s, dst))
        })
        .collect();
    let rules: Vec<Vec<Rule>> = probes
        .par_iter()
        .map(|(s, dst)| {
            let x = catalog.module(*s);
            let y = catalog.sum_of(dst);
            let premise = mask_of(dst) | 1 << s;
            let mut out = Vec::new();
            cat.for_each_map("cokernel probe", &cat.hom_space(x, &y), |f| {
                let (c, _) = cat.cokernel(f);
                out.push(Rule::new(premise, mask_of(&catalog.decompose(&c)?)));
                Ok(true)
            })?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(RuleTable::new(rules.into_iter().flatten()))
}

/// For indecomposable ends `A`, `C`: every catalog sum `B` admitting a
/// monomorphism `A -> B` with cokernel `C` must lie in the subcategory.
fn extension_rules(
    cat: &ModCat,
    catalog: &IsoCatalog,
    bounds: WideBounds,
) -> Result<(RuleTable, usize)> {
    let n = catalog.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |c| (a, c))).collect();
    let results: Vec<(Vec<Rule>, usize)> = pairs
        .par_iter()
        .map(|&(a, c)| {
            let am = catalog.module(a);
            let cm = catalog.module(c);
            if am.total_dim() + cm.total_dim() > bounds.ext_dim_cap {
                return Ok((Vec::new(), 1));
            }
            let dims: Vec<usize> = am
                .dims()
                .iter()
                .zip(cm.dims())
                .map(|(x, y)| x + y)
                .collect();
            let premise = 1 << a | 1 << c;
            let mut out = Vec::new();
            for middle in multisets_with_dims(catalog, &dims) {
                let conclusion = mask_of(&middle);
                if conclusion & !premise == 0 {
                    continue;
                }
                let b = catalog.sum_of(&middle);
                let mut realized = false;
                cat.for_each_map("extension probe", &cat.hom_space(am, &b), |f| {
                    if f.is_injective() {
                        let (q, _) = cat.cokernel(f);
                        realized = cat.is_iso_to_indecomposable(&q, cm);
                    }
                    Ok(!realized)
                })?;
                if realized {
                    out.push(Rule::new(premise, conclusion));
                }
            }
            Ok((out, 0))
        })
        .collect::<Result<_>>()?;
    let skipped = results.iter().map(|r| r.1).sum();
    Ok((
        RuleTable::new(results.into_iter().flat_map(|r| r.0)),
        skipped,
    ))
}
