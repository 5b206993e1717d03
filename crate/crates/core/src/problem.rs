//! JSON problem descriptions: an algebra, an idempotent and search bounds.

use serde::{Deserialize, Serialize};

use crate::algebra::{path_algebra, Idem, PresentedAlgebra, Quiver, Relation};
use crate::error::{Budget, Error, Result};
use crate::linalg::FieldSpec;
use crate::module::CatalogBounds;
use crate::recollement::RecollementCtx;
use crate::wide::WideBounds;

const EXAMPLE: &str = include_str!("../data/example.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub p: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSection {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: i64,
    /// Arrow names in traversal order.
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub terms: Vec<TermSpec>,
}

/// Omitted fields fall back to library defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_multiplicity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom_budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_dim_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset_cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub field: FieldSection,
    pub quiver: QuiverSection,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
    pub idempotent: Vec<String>,
    #[serde(default)]
    pub bounds: BoundsSpec,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<ProblemSpec> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// The three-vertex quiver `1 <- 2 -> 3` over GF(2) with `e = e2 + e3`.
    pub fn example() -> ProblemSpec {
        ProblemSpec::from_json(EXAMPLE).expect("bundled example parses")
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.field.p)
    }

    pub fn quiver_spec(&self) -> Result<Quiver> {
        let arrows: Vec<(&str, &str, &str)> = self
            .quiver
            .arrows
            .iter()
            .map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str()))
            .collect();
        let vertices: Vec<&str> = self.quiver.vertices.iter().map(String::as_str).collect();
        Quiver::new(&vertices, &arrows)
    }

    pub fn algebra(&self) -> Result<PresentedAlgebra> {
        let field = self.field_spec()?;
        let quiver = self.quiver_spec()?;
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let terms: Vec<(i64, Vec<&str>)> = r
                    .terms
                    .iter()
                    .map(|t| (t.coeff, t.path.iter().map(String::as_str).collect()))
                    .collect();
                Relation::from_names(&quiver, field, &terms)
            })
            .collect::<Result<Vec<_>>>()?;
        path_algebra(quiver, relations, field)
    }

    pub fn catalog_bounds(&self) -> Result<CatalogBounds> {
        let d = CatalogBounds::default();
        let b = CatalogBounds {
            vertex_dim: self.bounds.vertex_dim.unwrap_or(d.vertex_dim),
            total_dim: self.bounds.total_dim.unwrap_or(d.total_dim),
        };
        if b.vertex_dim == 0 || b.total_dim == 0 {
            return Err(Error::InvalidSpec("catalog bounds must be positive".into()));
        }
        Ok(b)
    }

    /// `WIDEREC_BUDGET` takes precedence over `hom_budget`.
    pub fn budget(&self) -> Budget {
        match (
            std::env::var(Budget::ENV_VAR).is_ok(),
            self.bounds.hom_budget,
        ) {
            (false, Some(cap)) => Budget::new(cap),
            _ => Budget::from_env(),
        }
    }

    pub fn wide_bounds(&self) -> Result<WideBounds> {
        let d = WideBounds::default();
        let b = WideBounds {
            max_multiplicity: self.bounds.max_multiplicity.unwrap_or(d.max_multiplicity),
            hom_budget: self.budget().cap,
            ext_dim_cap: self.bounds.ext_dim_cap.unwrap_or(d.ext_dim_cap),
            subset_cap: self.bounds.subset_cap.unwrap_or(d.subset_cap),
        };
        b.validate()?;
        Ok(b)
    }

    pub fn context(&self) -> Result<RecollementCtx> {
        let alg = self.algebra()?;
        let e = Idem::new(alg.quiver(), &self.idempotent)?;
        RecollementCtx::new(alg, e, self.catalog_bounds()?, self.budget())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_round_trips() {
        let spec = ProblemSpec::example();
        assert_eq!(ProblemSpec::from_json(&spec.to_json()).unwrap(), spec);
        let alg = spec.algebra().unwrap();
        assert_eq!(alg.dim(), 5);
        assert_eq!(
            spec.catalog_bounds().unwrap(),
            CatalogBounds {
                vertex_dim: 1,
                total_dim: 4
            }
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            ProblemSpec::from_json("{"),
            Err(Error::InvalidSpec(_))
        ));
        let mut spec = ProblemSpec::example();
        spec.idempotent = vec!["9".into()];
        assert!(matches!(spec.context(), Err(Error::InvalidIdempotent(_))));
        let mut spec = ProblemSpec::example();
        spec.quiver.arrows.push(ArrowSpec {
            name: "c".into(),
            from: "1".into(),
            to: "2".into(),
        });
        assert!(matches!(spec.algebra(), Err(Error::CyclicQuiver(_))));
        let mut spec = ProblemSpec::example();
        spec.relations.push(RelationSpec {
            terms: vec![TermSpec {
                coeff: 1,
                path: vec!["a".into()],
            }],
        });
        assert!(matches!(
            spec.algebra(),
            Err(Error::NonAdmissibleRelations(_))
        ));
    }
}
