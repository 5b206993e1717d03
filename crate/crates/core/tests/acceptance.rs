//! One line per acceptance criterion; exits nonzero if any line failed.
//! Runs without the libtest harness so the lines are always printed.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use widerec::battery::oracle_agreement;
use widerec::linalg::{FieldSpec, Mat};
use widerec::problem::ProblemSpec;
use widerec::wide::{FixpointOracle, ReductionChecker, WideEngine, WideSubcat};

const EXAMPLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/example.json");

struct Verdict {
    passed: bool,
    detail: String,
}

fn cli(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_widerec"))
        .arg("--json")
        .args(args)
        .env_remove("WIDEREC_BUDGET")
        .output()
        .expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn labels(v: &Value) -> BTreeSet<String> {
    v["labels"]
        .as_array()
        .map(|a| {
            a.iter()
                .filter_map(|x| x.as_str().map(String::from))
                .collect()
        })
        .unwrap_or_default()
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn timed(limit: Duration, body: impl FnOnce() -> Result<String, String>) -> Verdict {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let within = elapsed < limit;
    match outcome {
        Ok(d) => Verdict {
            passed: within,
            detail: format!(
                "{d}; {:.2} s (limit {} s)",
                elapsed.as_secs_f64(),
                limit.as_secs()
            ),
        },
        Err(e) => Verdict {
            passed: false,
            detail: format!("{e}; {:.2} s", elapsed.as_secs_f64()),
        },
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// The five rows of the published correspondence table, as label sets.
fn table_rows() -> BTreeSet<(BTreeSet<String>, BTreeSet<String>)> {
    [
        (
            set(&["1", "2/3", "2/13", "2", "3", "2/1"]),
            set(&["2/3", "2", "3"]),
        ),
        (set(&["1", "2/3", "2/13"]), set(&["2/3"])),
        (set(&["1", "3"]), set(&["3"])),
        (set(&["1", "2", "2/1"]), set(&["2"])),
        (set(&["1"]), set(&[])),
    ]
    .into_iter()
    .collect()
}

fn table_reproduction() -> Verdict {
    timed(Duration::from_secs(60), || {
        let (code, wide) = cli(&["wide", EXAMPLE, "--containing-image"]);
        ensure(code == 0, format!("wide exited {code}"))?;
        let rows: BTreeSet<_> = wide["results"]["subcategories"]
            .as_array()
            .ok_or("no subcategories")?
            .iter()
            .map(|r| (labels(&r["subcategory"]), labels(&r["restriction"])))
            .collect();
        ensure(rows == table_rows(), format!("rows differ: {rows:?}"))?;

        let (code, bij) = cli(&["bijection", EXAMPLE]);
        ensure(code == 0, format!("bijection exited {code}"))?;
        let r = &bij["results"];
        ensure(
            r["forward_ok"] == true && r["backward_ok"] == true,
            "round trip broken",
        )?;
        let corner = r["corner_wide"].as_array().map_or(0, Vec::len);
        ensure(corner == 5, format!("{corner} corner wide subcategories"))?;
        Ok("5 rows match, 5 <-> 5 round trip".into())
    })
}

fn indecomposables() -> Verdict {
    timed(Duration::from_secs(10), || {
        let (code, out) = cli(&["indec", EXAMPLE]);
        ensure(code == 0, format!("indec exited {code}"))?;
        let r = &out["results"];
        let dims: BTreeSet<Vec<u64>> = r["algebra"]
            .as_array()
            .ok_or("no catalog")?
            .iter()
            .map(|e| {
                e["dims"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|d| d.as_u64().unwrap())
                    .collect()
            })
            .collect();
        let want: BTreeSet<Vec<u64>> = [
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [0, 1, 1],
            [1, 1, 1],
        ]
        .iter()
        .map(|d| d.to_vec())
        .collect();
        let sizes =
            [&r["algebra"], &r["quotient"], &r["corner"]].map(|c| c.as_array().map_or(0, Vec::len));
        ensure(sizes == [6, 1, 3], format!("sizes {sizes:?}"))?;
        ensure(dims == want, format!("dimension vectors {dims:?}"))?;

        // corner count against a direct enumeration of the A2 path algebra
        let a2 = r#"{"field":{"p":2},"quiver":{"vertices":["2","3"],"arrows":[{"name":"b","from":"2","to":"3"}]},
                     "relations":[],"idempotent":["2"],"bounds":{"vertex_dim":2,"total_dim":4}}"#;
        let ctx = ProblemSpec::from_json(a2)
            .unwrap()
            .context()
            .map_err(|e| e.to_string())?;
        ensure(
            ctx.big_catalog().len() == 3,
            "independent A2 enumeration disagrees",
        )?;
        Ok("6/1/3 indecomposables with the expected dimension vectors".into())
    })
}

fn recollement_axioms() -> Verdict {
    timed(Duration::from_secs(60), || {
        for theorem in ["2.4", "2.5"] {
            let (code, out) = cli(&["check", EXAMPLE, "--theorem", theorem]);
            ensure(
                code == 0 && out["passed"] == true,
                format!("check {theorem} exited {code}"),
            )?;
        }
        let spec = ProblemSpec::example();
        let ctx = spec.context().map_err(|e| e.to_string())?;
        let gluing = ctx.check_gluing();
        let sequences = gluing
            .items
            .iter()
            .find(|i| i.name.contains("sequences"))
            .ok_or("no sequence check")?;
        ensure(
            sequences.checked == 6,
            format!("sequences checked on {} objects", sequences.checked),
        )?;
        Ok("both suites pass; sequences exact on all 6 objects".into())
    })
}

fn glued_recollements() -> Verdict {
    timed(Duration::from_secs(120), || {
        let spec = ProblemSpec::example();
        let ctx = spec.context().map_err(|e| e.to_string())?;
        let checker =
            ReductionChecker::new(&ctx, spec.wide_bounds().unwrap()).map_err(|e| e.to_string())?;
        let rows = checker.containing_base().map_err(|e| e.to_string())?;
        ensure(rows.len() == 5, format!("{} rows", rows.len()))?;
        let mut items = 0;
        for s in &rows {
            let report = checker.glued_recollement(s);
            if let Some(f) = report.failures().next() {
                return Err(format!(
                    "{}: {} {:?}",
                    s.describe(ctx.big_catalog()),
                    f.name,
                    f.detail
                ));
            }
            ensure(
                report
                    .items
                    .iter()
                    .any(|i| i.name.contains("fully faithful")),
                "hom chains missing",
            )?;
            items += report.items.len();
        }
        let (code, _) = cli(&["check", EXAMPLE, "--theorem", "3.8"]);
        ensure(code == 0, format!("check 3.8 exited {code}"))?;
        Ok(format!("5 rows, {items} restricted checks"))
    })
}

fn battery() -> Verdict {
    timed(Duration::from_secs(15 * 60), || {
        let (code, out) = cli(&["fuzz", "--seed", "42", "--count", "25"]);
        let instances = out["results"]["instances"]
            .as_array()
            .ok_or("no instances")?;
        ensure(
            instances.len() == 25,
            format!("{} instances", instances.len()),
        )?;
        let bad: Vec<_> = instances
            .iter()
            .filter(|i| {
                i["report"]["items"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .any(|x| x["passed"] == false)
            })
            .collect();
        ensure(
            bad.is_empty() && code == 0,
            format!("{} counterexamples, exit {code}", bad.len()),
        )?;
        let rejected = out["results"]["rejected"].as_array().map_or(0, Vec::len);
        Ok(format!(
            "25 instances, 0 counterexamples, {rejected} rejected over budget"
        ))
    })
}

fn oracle_equivalence() -> Verdict {
    timed(Duration::from_secs(15 * 60), || {
        let spec = ProblemSpec::example();
        let bounds = spec.wide_bounds().unwrap();
        let ctx = spec.context().map_err(|e| e.to_string())?;
        let item = oracle_agreement(&ctx, bounds).map_err(|e| e.to_string())?;
        ensure(item.passed, format!("example: {:?}", item.detail))?;

        // whole-category count of the three-vertex example, against the oracle only
        let whole = WideEngine::new(ctx.big_catalog(), bounds)
            .and_then(|e| e.enumerate_wide())
            .map_err(|e| e.to_string())?;
        let oracle = FixpointOracle::new(ctx.big_catalog(), bounds)
            .and_then(|o| o.enumerate_wide())
            .map_err(|e| e.to_string())?;
        ensure(whole == oracle, "whole-category families differ")?;
        let closed = oracle.iter().all(|s| {
            FixpointOracle::new(ctx.big_catalog(), bounds)
                .unwrap()
                .closure(s)
                == *s
        });
        ensure(closed, "oracle family not closed")?;
        ensure(
            whole.contains(&WideSubcat::zero()),
            "zero subcategory missing",
        )?;

        // every accepted battery instance carries the same agreement check
        let (_, out) = cli(&["fuzz", "--seed", "42", "--count", "25"]);
        let instances = out["results"]["instances"]
            .as_array()
            .ok_or("no instances")?;
        for i in instances {
            let agree = i["report"]["items"]
                .as_array()
                .unwrap()
                .iter()
                .find(|x| x["name"].as_str().is_some_and(|n| n.contains("oracle")))
                .ok_or("battery instance without oracle check")?;
            ensure(
                agree["passed"] == true,
                format!("instance {} disagrees", i["index"]),
            )?;
        }
        Ok(format!(
            "example ({} wide) and {} battery instances agree",
            whole.len(),
            instances.len()
        ))
    })
}

fn random_matrix(rng: &mut ChaCha8Rng, f: FieldSpec) -> Mat {
    let rows = rng.gen_range(0..=8);
    let cols = rng.gen_range(0..=8);
    // low-rank products now and then, so rank deficiency is common
    if rows > 0 && cols > 0 && rng.gen_bool(0.3) {
        let k = rng.gen_range(1..=rows.min(cols));
        let a = Mat::from_vec(
            f,
            rows,
            k,
            (0..rows * k).map(|_| rng.gen_range(0..f.p())).collect(),
        )
        .unwrap();
        let b = Mat::from_vec(
            f,
            k,
            cols,
            (0..k * cols).map(|_| rng.gen_range(0..f.p())).collect(),
        )
        .unwrap();
        return a.mul(&b);
    }
    Mat::from_vec(
        f,
        rows,
        cols,
        (0..rows * cols).map(|_| rng.gen_range(0..f.p())).collect(),
    )
    .unwrap()
}

fn linear_algebra() -> Verdict {
    timed(Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut total = 0;
        for p in [2, 3, 5, 7] {
            let f = FieldSpec::new(p).unwrap();
            for _ in 0..10_000 {
                let m = random_matrix(&mut rng, f);
                let rank = m.rank();
                let kernel = m.kernel_basis();
                ensure(
                    rank + kernel.len() == m.cols(),
                    format!("rank-nullity fails over GF({p})"),
                )?;
                ensure(
                    kernel.iter().all(|v| m.mul_vec(v).iter().all(|&x| x == 0)),
                    "kernel vector not killed",
                )?;

                let x: Vec<u32> = (0..m.cols()).map(|_| rng.gen_range(0..p)).collect();
                let b = m.mul_vec(&x);
                let y = m.solve(&b).ok_or("consistent system reported unsolvable")?;
                ensure(
                    m.mul_vec(&y) == b,
                    "solution does not reproduce the right-hand side",
                )?;
                let c: Vec<u32> = (0..m.rows()).map(|_| rng.gen_range(0..p)).collect();
                let augmented = m.hstack(&Mat::from_columns(f, m.rows(), std::slice::from_ref(&c)));
                ensure(
                    m.solve(&c).is_some() == (augmented.rank() == rank),
                    "solvability disagrees with rank",
                )?;

                let (r, pivots) = m.rref();
                let (rr, pivots2) = r.rref();
                ensure(
                    rr == r && pivots == pivots2 && pivots.len() == rank,
                    "rref not idempotent",
                )?;
                total += 1;
            }
        }
        Ok(format!("{total} matrices over GF(2), GF(3), GF(5), GF(7)"))
    })
}

fn main() {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 7] = [
        ("table reproduction", table_reproduction),
        ("indecomposable catalogs", indecomposables),
        ("recollement axioms", recollement_axioms),
        ("glued recollements on the five rows", glued_recollements),
        ("random battery seed 42, 25 instances", battery),
        ("subset filter equals fixpoint oracle", oracle_equivalence),
        ("linear algebra suite", linear_algebra),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        println!(
            "[{}] criterion {}: {name}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            k + 1,
            v.detail
        );
        if !v.passed {
            failed.push(k + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
