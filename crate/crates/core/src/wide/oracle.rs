use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::module::{IsoCatalog, ModCat, QModule};
use crate::wide::engine::multisets;
use crate::wide::rules::{Rule, RuleTable};
use crate::wide::subcat::{mask_of, sort_subcats, WideBounds, WideSubcat, MASK_BITS};

/// Independent enumeration: close each subset under kernels, cokernels and
/// middle terms, and keep the subsets that were already closed.
///
/// Kernels and cokernels come from maps between sums on both sides; extensions
/// come from the cocycle description of `Ext¹(C, A)` rather than a hom search.
#[derive(Clone, Debug)]
pub struct FixpointOracle<'a> {
    catalog: &'a IsoCatalog,
    bounds: WideBounds,
    table: RuleTable,
}

impl<'a> FixpointOracle<'a> {
    pub fn new(catalog: &'a IsoCatalog, bounds: WideBounds) -> Result<FixpointOracle<'a>> {
        bounds.validate()?;
        if catalog.len() > MASK_BITS {
            return Err(Error::TooManyIndecomposables {
                count: catalog.len(),
                cap: MASK_BITS,
            });
        }
        let cat = ModCat::new(catalog.cat().algebra_arc().clone(), bounds.budget());
        let mut rules = exact_rules(&cat, catalog, bounds)?;
        rules.extend(cocycle_rules(&cat, catalog, bounds)?);
        Ok(FixpointOracle {
            catalog,
            bounds,
            table: RuleTable::new(rules),
        })
    }

    pub fn closure(&self, s: &WideSubcat) -> WideSubcat {
        WideSubcat::from_mask(self.table.closure(s.mask()))
    }

    pub fn enumerate_wide(&self) -> Result<Vec<WideSubcat>> {
        self.enumerate_wide_containing(&WideSubcat::zero())
    }

    pub fn enumerate_wide_containing(&self, base: &WideSubcat) -> Result<Vec<WideSubcat>> {
        let n = self.catalog.len();
        if n > self.bounds.subset_cap {
            return Err(Error::TooManyIndecomposables {
                count: n,
                cap: self.bounds.subset_cap,
            });
        }
        let base = base.mask();
        let mut found: Vec<WideSubcat> = (0..1u64 << n)
            .into_par_iter()
            .filter(|&s| s & base == base && self.table.closure(s) == s)
            .map(WideSubcat::from_mask)
            .collect();
        sort_subcats(&mut found);
        Ok(found)
    }
}

fn exact_rules(cat: &ModCat, catalog: &IsoCatalog, bounds: WideBounds) -> Result<Vec<Rule>> {
    let sums = multisets(catalog.len(), bounds.max_multiplicity);
    let pairs: Vec<(usize, usize)> = (0..sums.len())
        .flat_map(|i| (0..sums.len()).map(move |j| (i, j)))
        .collect();
    let rules: Vec<Vec<Rule>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let x = catalog.sum_of(&sums[i]);
            let y = catalog.sum_of(&sums[j]);
            let premise = mask_of(&sums[i]) | mask_of(&sums[j]);
            let mut out = Vec::new();
            cat.for_each_map("map probe", &cat.hom_space(&x, &y), |f| {
                let (k, _) = cat.kernel(f);
                let (c, _) = cat.cokernel(f);
                out.push(Rule::new(premise, mask_of(&catalog.decompose(&k)?)));
                out.push(Rule::new(premise, mask_of(&catalog.decompose(&c)?)));
                Ok(true)
            })?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(rules.into_iter().flatten().collect())
}

/// Middle terms of all extensions `0 -> A -> E -> C -> 0` between catalog entries.
fn cocycle_rules(cat: &ModCat, catalog: &IsoCatalog, bounds: WideBounds) -> Result<Vec<Rule>> {
    let n = catalog.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |c| (a, c))).collect();
    let rules: Vec<Vec<Rule>> = pairs
        .par_iter()
        .map(|&(a, c)| {
            let am = catalog.module(a);
            let cm = catalog.module(c);
            if am.total_dim() + cm.total_dim() > bounds.ext_dim_cap {
                return Ok(Vec::new());
            }
            let premise = 1 << a | 1 << c;
            let mut out = Vec::new();
            for e in middle_terms(cat, am, cm)? {
                out.push(Rule::new(premise, mask_of(&catalog.decompose(&e)?)));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(rules.into_iter().flatten().collect())
}

/// One middle term per nonzero class of `Ext¹(C, A)` up to scalars.
pub(crate) fn middle_terms(cat: &ModCat, a: &QModule, c: &QModule) -> Result<Vec<QModule>> {
    let alg = cat.algebra();
    let f = alg.field();
    let ends = a.arrow_ends().to_vec();
    let nv = a.vertex_count();

    // h_k : C_s -> A_t for every arrow k: s -> t
    let mut h_off = vec![0];
    for &(s, t) in &ends {
        h_off.push(h_off.last().unwrap() + a.dim(t) * c.dim(s));
    }
    let h_len = *h_off.last().unwrap();
    if h_len == 0 {
        return Ok(Vec::new());
    }
    let glue = |h: &[u32]| -> QModule {
        let dims: Vec<usize> = (0..nv).map(|v| a.dim(v) + c.dim(v)).collect();
        let actions = ends
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| {
                let mut m = Mat::zeros(f, dims[t], dims[s]);
                m.set_block(0, 0, a.action(k));
                m.set_block(a.dim(t), a.dim(s), c.action(k));
                let block =
                    Mat::from_vec(f, a.dim(t), c.dim(s), h[h_off[k]..h_off[k + 1]].to_vec())
                        .expect("consistent shape");
                m.set_block(0, a.dim(s), &block);
                m
            })
            .collect();
        QModule::from_parts(alg, dims, actions)
    };

    // cocycles: relations must act as zero on the glued module (linear in h)
    let unit = |i: usize| {
        let mut h = vec![0u32; h_len];
        h[i] = 1;
        h
    };
    let mut constraint_cols = Vec::with_capacity(h_len);
    for i in 0..h_len {
        let e = glue(&unit(i));
        let mut col = Vec::new();
        for r in alg.relations() {
            let mut m = Mat::zeros(f, e.dim(r.target()), e.dim(r.source()));
            for (coeff, p) in r.terms() {
                m.add_scaled(*coeff, &e.path_action(p));
            }
            col.extend_from_slice(
                m.block(0, a.dim(r.source()), a.dim(r.target()), c.dim(r.source()))
                    .entries(),
            );
        }
        constraint_cols.push(col);
    }
    let rows = constraint_cols[0].len();
    let cocycles = Mat::from_columns(f, rows, &constraint_cols).kernel_basis();

    // coboundaries: h_k = A_k φ_s - φ_t C_k
    let mut coboundaries = Vec::new();
    for v in 0..nv {
        for i in 0..a.dim(v) {
            for j in 0..c.dim(v) {
                let mut phi = Mat::zeros(f, a.dim(v), c.dim(v));
                phi.set(i, j, 1);
                let mut h = vec![0u32; h_len];
                for (k, &(s, t)) in ends.iter().enumerate() {
                    let mut block = Mat::zeros(f, a.dim(t), c.dim(s));
                    if s == v {
                        block = block.add(&a.action(k).mul(&phi));
                    }
                    if t == v {
                        block = block.sub(&phi.mul(c.action(k)));
                    }
                    h[h_off[k]..h_off[k + 1]].copy_from_slice(block.entries());
                }
                coboundaries.push(h);
            }
        }
    }

    // representatives of a complement of the coboundaries inside the cocycles
    let mut span = Mat::from_columns(f, h_len, &coboundaries)
        .column_space()
        .columns();
    let mut reps = Vec::new();
    for z in cocycles {
        let mut trial = span.clone();
        trial.push(z.clone());
        if Mat::from_columns(f, h_len, &trial).rank() > span.len() {
            span.push(z.clone());
            reps.push(z);
        }
    }
    let mut out = Vec::new();
    if reps.is_empty() {
        return Ok(out);
    }
    cat.budget().admit("extension classes", f.p(), reps.len())?;
    for coeffs in f.all_vectors(reps.len()) {
        if coeffs.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut h = vec![0u32; h_len];
        for (&k, z) in coeffs.iter().zip(&reps) {
            f.axpy(&mut h, k, z);
        }
        out.push(glue(&h));
    }
    Ok(out)
}
