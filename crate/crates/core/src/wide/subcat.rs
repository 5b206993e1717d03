use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::module::{IsoCatalog, QModule};

pub type Mask = u64;

/// Largest catalog a rule table can index.
pub const MASK_BITS: usize = 64;

/// Probe limits for closure checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WideBounds {
    /// Most indecomposable summands in a probe object.
    pub max_multiplicity: usize,
    /// Cap on hom-space combinations enumerated per probe.
    pub hom_budget: u64,
    /// Largest total dimension of an extension middle term.
    pub ext_dim_cap: usize,
    /// Largest catalog whose subsets are enumerated.
    pub subset_cap: usize,
}

impl Default for WideBounds {
    fn default() -> Self {
        WideBounds {
            max_multiplicity: 2,
            hom_budget: Budget::from_env().cap,
            ext_dim_cap: 12,
            subset_cap: 20,
        }
    }
}

impl WideBounds {
    pub fn validate(&self) -> Result<()> {
        if self.max_multiplicity == 0
            || self.hom_budget == 0
            || self.ext_dim_cap == 0
            || self.subset_cap == 0
        {
            return Err(Error::InvalidSpec(
                "wide-engine bounds must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn budget(&self) -> Budget {
        Budget::new(self.hom_budget)
    }

    pub fn doubled(&self) -> WideBounds {
        WideBounds {
            max_multiplicity: self.max_multiplicity * 2,
            hom_budget: self.hom_budget.saturating_mul(2),
            ext_dim_cap: self.ext_dim_cap * 2,
            subset_cap: self.subset_cap,
        }
    }
}

/// A full additive subcategory closed under summands, given by its indecomposables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WideSubcat {
    ids: Vec<usize>,
}

impl WideSubcat {
    pub fn new(mut ids: Vec<usize>) -> WideSubcat {
        ids.sort_unstable();
        ids.dedup();
        WideSubcat { ids }
    }

    pub fn zero() -> WideSubcat {
        WideSubcat::default()
    }

    pub fn whole(catalog: &IsoCatalog) -> WideSubcat {
        WideSubcat::new((0..catalog.len()).collect())
    }

    pub fn from_mask(mask: Mask) -> WideSubcat {
        WideSubcat {
            ids: (0..MASK_BITS).filter(|&i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn has(&self, id: usize) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn mask(&self) -> Mask {
        mask_of(&self.ids)
    }

    pub fn is_subset_of(&self, other: &WideSubcat) -> bool {
        self.ids.iter().all(|&i| other.has(i))
    }

    /// Whether every indecomposable summand of `m` belongs here.
    pub fn contains(&self, catalog: &IsoCatalog, m: &QModule) -> Result<bool> {
        Ok(catalog.decompose(m)?.iter().all(|&i| self.has(i)))
    }

    /// Labels in id order, e.g. `{1, 2/13}`.
    pub fn describe(&self, catalog: &IsoCatalog) -> String {
        let labels: Vec<&str> = self.ids.iter().map(|&i| catalog.label(i)).collect();
        format!("{{{}}}", labels.join(", "))
    }
}

pub fn mask_of(ids: &[usize]) -> Mask {
    ids.iter().fold(0, |m, &i| m | 1 << i)
}

/// Report order: by cardinality, then lexicographically by ids.
pub fn sort_subcats(list: &mut [WideSubcat]) {
    list.sort_by(|a, b| (a.len(), &a.ids).cmp(&(b.len(), &b.ids)));
}
