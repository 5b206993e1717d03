//! Seeded random instances: small acyclic quivers with zero relations and a proper idempotent.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::{
    ArrowSpec, BoundsSpec, FieldSection, ProblemSpec, QuiverSection, RelationSpec, TermSpec,
};
use crate::recollement::RecollementCtx;
use crate::report::{CheckItem, CheckReport};
use crate::suite::Suite;
use crate::wide::{FixpointOracle, ReductionChecker, WideBounds, WideEngine};

/// Redraws allowed per accepted instance before the battery gives up.
const MAX_REDRAWS: usize = 50;

/// Draws a quiver on 2 to 4 vertices with at most 4 arrows over GF(2) or GF(3).
pub fn random_spec(rng: &mut ChaCha8Rng) -> ProblemSpec {
    let n = rng.gen_range(2..=4);
    let names: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    // arrows follow a random vertex order, which keeps the quiver acyclic
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| (order[i], order[j]))
        .collect();
    pairs.shuffle(rng);
    let arrow_count = rng.gen_range(0..=pairs.len().min(4));
    let mut arrows: Vec<ArrowSpec> = pairs[..arrow_count]
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| ArrowSpec {
            name: format!("x{k}"),
            from: names[s].clone(),
            to: names[t].clone(),
        })
        .collect();
    arrows.sort_by(|a, b| a.name.cmp(&b.name));

    let mut relations = Vec::new();
    for a in &arrows {
        for b in &arrows {
            if a.to == b.from && rng.gen_bool(0.5) {
                relations.push(RelationSpec {
                    terms: vec![TermSpec {
                        coeff: 1,
                        path: vec![a.name.clone(), b.name.clone()],
                    }],
                });
            }
        }
    }

    let size = rng.gen_range(1..n);
    let mut vertices = names.clone();
    vertices.shuffle(rng);
    let mut idempotent: Vec<String> = vertices[..size].to_vec();
    idempotent.sort();

    ProblemSpec {
        field: FieldSection {
            p: *[2, 3].choose(rng).unwrap(),
        },
        quiver: QuiverSection {
            vertices: names,
            arrows,
        },
        relations,
        idempotent,
        bounds: BoundsSpec::default(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub index: usize,
    pub spec: ProblemSpec,
    pub catalog_sizes: [usize; 3],
    pub report: CheckReport,
}

impl Instance {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Rejection {
    pub spec: ProblemSpec,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub seed: u64,
    pub instances: Vec<Instance>,
    /// Draws skipped because a search cap or the catalog bounds were hit.
    pub rejected: Vec<Rejection>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(Instance::passed)
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| !i.passed())
    }
}

/// Subset filter and fixpoint oracle give the same wide subcategories.
pub fn oracle_agreement(ctx: &RecollementCtx, bounds: WideBounds) -> Result<CheckItem> {
    let mut outcomes = Vec::new();
    for (name, catalog) in [
        ("big", ctx.big_catalog()),
        ("quotient", ctx.small_catalog()),
        ("corner", ctx.local_catalog()),
    ] {
        let filter = WideEngine::new(catalog, bounds)?.enumerate_wide()?;
        let oracle = FixpointOracle::new(catalog, bounds)?.enumerate_wide()?;
        outcomes.push(if filter == oracle {
            Ok(())
        } else {
            Err(format!(
                "{name}: filter finds {}, oracle finds {}",
                filter.len(),
                oracle.len()
            ))
        });
    }
    Ok(CheckItem::tally(
        "subset filter agrees with fixpoint oracle",
        outcomes,
    ))
}

/// Builds the instance and runs the battery suites plus oracle agreement.
pub fn check_instance(spec: &ProblemSpec) -> Result<(RecollementCtx, CheckReport)> {
    let ctx = spec.context()?;
    let bounds = spec.wide_bounds()?;
    let mut report = CheckReport::default();
    {
        let checker = ReductionChecker::new(&ctx, bounds)?;
        for suite in Suite::BATTERY {
            report.extend(suite.run(&checker)?);
        }
    }
    report.push(oracle_agreement(&ctx, bounds)?);
    Ok((ctx, report))
}

/// Draws until `count` instances run within budget. Other errors abort.
pub fn run_battery(seed: u64, count: usize) -> Result<BatteryReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::with_capacity(count);
    let mut rejected = Vec::new();
    while instances.len() < count {
        if rejected.len() > MAX_REDRAWS * count.max(1) {
            return Err(Error::InvalidSpec(format!(
                "battery gave up after {} rejected draws",
                rejected.len()
            )));
        }
        let spec = random_spec(&mut rng);
        match check_instance(&spec) {
            Ok((ctx, report)) => instances.push(Instance {
                index: instances.len(),
                catalog_sizes: [
                    ctx.big_catalog().len(),
                    ctx.small_catalog().len(),
                    ctx.local_catalog().len(),
                ],
                spec,
                report,
            }),
            Err(e) if e.is_budget() => rejected.push(Rejection {
                spec,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(BatteryReport {
        seed,
        instances,
        rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_valid_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let spec = random_spec(&mut a);
            assert_eq!(spec, random_spec(&mut b));
            let alg = spec.algebra().unwrap();
            let q = alg.quiver();
            assert!((2..=4).contains(&q.vertex_count()));
            assert!(q.arrows().len() <= 4);
            assert!(spec.idempotent.len() < q.vertex_count());
        }
    }
}
