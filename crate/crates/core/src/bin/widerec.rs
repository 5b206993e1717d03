use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use widerec::battery::run_battery;
use widerec::error::Error;
use widerec::module::IsoCatalog;
use widerec::problem::ProblemSpec;
use widerec::recollement::RecollementCtx;
use widerec::report::CheckReport;
use widerec::suite::Suite;
use widerec::wide::{Bijection, FixpointOracle, ReductionChecker, WideSubcat};

/// Wide subcategories and idempotent recollements of path algebras over GF(p).
#[derive(Parser)]
#[command(name = "widerec", version)]
struct Cli {
    /// Print a stable JSON report instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Print the correspondence as a DOT bipartite graph (wide, bijection, table1).
    #[arg(long, global = true, conflicts_with = "json")]
    dot: bool,
    /// Include wall-clock timings in the output.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Problem description in JSON; `-` reads standard input.
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// List the indecomposables of the algebra, its quotient and its corner.
    Indec(SpecArg),
    /// List wide subcategories with their restrictions to the corner.
    Wide {
        #[command(flatten)]
        input: SpecArg,
        /// Only those containing the image of the quotient category.
        #[arg(long)]
        containing_image: bool,
    },
    /// Match wide subcategories containing the quotient image with those of the corner.
    Bijection(SpecArg),
    /// Run verifier suites; exits 1 if any check fails.
    Check {
        #[command(flatten)]
        input: SpecArg,
        /// Suite number: 2.4, 2.5, 3.1, 3.4, 3.5, 3.8 or all.
        #[arg(long, default_value = "all")]
        theorem: String,
    },
    /// Reproduce the correspondence table for the bundled three-vertex example.
    Table1,
    /// Random battery over small acyclic quivers.
    Fuzz {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        count: usize,
    },
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<ProblemSpec>,
    passed: bool,
    results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

struct Outcome {
    command: &'static str,
    seed: Option<u64>,
    input: Option<ProblemSpec>,
    passed: bool,
    results: Value,
    text: String,
    dot: Option<String>,
}

enum Failure {
    Input(String),
    Budget(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else if matches!(
            e,
            Error::ExactnessFailure(_) | Error::NonInvertible | Error::DimensionMismatch(_)
        ) {
            Failure::Check(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn load(arg: &SpecArg) -> Result<ProblemSpec, Failure> {
    let text = if arg.spec.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(&arg.spec)
            .map_err(|e| Failure::Input(format!("{}: {e}", arg.spec.display())))?
    };
    Ok(ProblemSpec::from_json(&text)?)
}

fn catalog_json(catalog: &IsoCatalog) -> Value {
    catalog
        .entries()
        .iter()
        .map(|e| json!({"id": e.id, "dims": e.dims(), "label": e.label}))
        .collect()
}

fn subcat_json(catalog: &IsoCatalog, s: &WideSubcat) -> Value {
    json!({
        "ids": s.ids(),
        "labels": s.ids().iter().map(|&i| catalog.label(i)).collect::<Vec<_>>(),
    })
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out += &line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    );
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

fn report_text(report: &CheckReport) -> String {
    let mut out = String::new();
    for item in &report.items {
        let mark = if item.passed { "PASS" } else { "FAIL" };
        match &item.detail {
            Some(d) => {
                writeln!(out, "{mark}  {} ({} checked): {d}", item.name, item.checked).unwrap()
            }
            None => writeln!(out, "{mark}  {} ({} checked)", item.name, item.checked).unwrap(),
        }
    }
    out
}

fn bijection_dot(ctx: &RecollementCtx, b: &Bijection) -> String {
    let (big, local) = (ctx.big_catalog(), ctx.local_catalog());
    let mut out = String::from("digraph bijection {\n  rankdir=LR;\n");
    for (k, (s, _)) in b.rows.iter().enumerate() {
        writeln!(out, "  C{k} [shape=box, label=\"{}\"];", s.describe(big)).unwrap();
    }
    for (k, w) in b.local_wide.iter().enumerate() {
        writeln!(
            out,
            "  W{k} [shape=ellipse, label=\"{}\"];",
            w.describe(local)
        )
        .unwrap();
    }
    for (k, (_, w)) in b.rows.iter().enumerate() {
        if let Some(t) = b.local_wide.iter().position(|x| x == w) {
            writeln!(out, "  C{k} -> W{t};").unwrap();
        }
    }
    out + "}\n"
}

fn bijection_json(ctx: &RecollementCtx, b: &Bijection) -> Value {
    let (big, local) = (ctx.big_catalog(), ctx.local_catalog());
    json!({
        "rows": b.rows.iter().map(|(s, w)| json!({"subcategory": subcat_json(big, s), "restriction": subcat_json(local, w)})).collect::<Vec<_>>(),
        "corner_wide": b.local_wide.iter().map(|w| subcat_json(local, w)).collect::<Vec<_>>(),
        "forward_ok": b.forward_ok,
        "backward_ok": b.backward_ok,
    })
}

fn bijection_rows(ctx: &RecollementCtx, b: &Bijection) -> String {
    let (big, local) = (ctx.big_catalog(), ctx.local_catalog());
    let rows: Vec<Vec<String>> = b
        .rows
        .iter()
        .enumerate()
        .map(|(k, (s, w))| vec![k.to_string(), s.describe(big), w.describe(local)])
        .collect();
    table(&["#", "C", "j^*C"], &rows)
}

fn cmd_indec(spec: ProblemSpec) -> Result<Outcome, Failure> {
    let ctx = spec.context()?;
    let named = [
        ("algebra", ctx.big_catalog()),
        ("quotient", ctx.small_catalog()),
        ("corner", ctx.local_catalog()),
    ];
    let mut text = String::new();
    for (name, catalog) in named {
        let rows: Vec<Vec<String>> = catalog
            .entries()
            .iter()
            .map(|e| vec![e.id.to_string(), e.module.dim_string(), e.label.clone()])
            .collect();
        writeln!(text, "{name}: {} indecomposables", catalog.len()).unwrap();
        text += &table(&["id", "dims", "label"], &rows);
        text.push('\n');
    }
    let results = json!({
        "algebra": catalog_json(ctx.big_catalog()),
        "quotient": catalog_json(ctx.small_catalog()),
        "corner": catalog_json(ctx.local_catalog()),
    });
    Ok(Outcome {
        command: "indec",
        seed: None,
        input: Some(spec),
        passed: true,
        results,
        text,
        dot: None,
    })
}

fn cmd_wide(spec: ProblemSpec, containing_image: bool) -> Result<Outcome, Failure> {
    let ctx = spec.context()?;
    let checker = ReductionChecker::new(&ctx, spec.wide_bounds()?)?;
    let (big, local) = (ctx.big_catalog(), ctx.local_catalog());
    let list = if containing_image {
        checker.containing_base()?
    } else {
        checker.big().enumerate_wide()?
    };
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (k, s) in list.iter().enumerate() {
        let w = checker.restrict(s)?;
        rows.push(vec![k.to_string(), s.describe(big), w.describe(local)]);
        entries.push(
            json!({"subcategory": subcat_json(big, s), "restriction": subcat_json(local, &w)}),
        );
    }
    let mut text = format!("{} wide subcategories\n", list.len());
    text += &table(&["#", "C", "j^*C"], &rows);
    let dot = {
        let mut out = String::from("digraph wide {\n  rankdir=LR;\n");
        for (k, r) in rows.iter().enumerate() {
            writeln!(out, "  C{k} [shape=box, label=\"{}\"];\n  R{k} [shape=ellipse, label=\"{}\"];\n  C{k} -> R{k};", r[1], r[2]).unwrap();
        }
        out + "}\n"
    };
    Ok(Outcome {
        command: "wide",
        seed: None,
        input: Some(spec),
        passed: true,
        results: json!({"containing_image": containing_image, "count": list.len(), "subcategories": entries}),
        text,
        dot: Some(dot),
    })
}

fn cmd_bijection(spec: ProblemSpec) -> Result<Outcome, Failure> {
    let ctx = spec.context()?;
    let checker = ReductionChecker::new(&ctx, spec.wide_bounds()?)?;
    let b = checker.bijection()?;
    let mut text = bijection_rows(&ctx, &b);
    writeln!(
        text,
        "\n{} subcategories, {} over the corner; forward {}, backward {}",
        b.rows.len(),
        b.local_wide.len(),
        if b.forward_ok { "ok" } else { "BROKEN" },
        if b.backward_ok { "ok" } else { "BROKEN" }
    )
    .unwrap();
    Ok(Outcome {
        command: "bijection",
        seed: None,
        input: Some(spec),
        passed: b.passed(),
        results: bijection_json(&ctx, &b),
        text,
        dot: Some(bijection_dot(&ctx, &b)),
    })
}

fn cmd_check(spec: ProblemSpec, theorem: &str) -> Result<Outcome, Failure> {
    let suites: Vec<Suite> = if theorem == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_number(theorem)
            .ok_or_else(|| Failure::Input(format!("unknown theorem {theorem:?}")))?]
    };
    let ctx = spec.context()?;
    let checker = ReductionChecker::new(&ctx, spec.wide_bounds()?)?;
    let mut text = String::new();
    let mut sections = Vec::new();
    let mut passed = true;
    for suite in suites {
        let report = suite.run(&checker)?;
        passed &= report.passed();
        writeln!(text, "[{}]", suite.number()).unwrap();
        text += &report_text(&report);
        sections.push(
            json!({"theorem": suite.number(), "passed": report.passed(), "items": report.items}),
        );
    }
    Ok(Outcome {
        command: "check",
        seed: None,
        input: Some(spec),
        passed,
        results: Value::Array(sections),
        text,
        dot: None,
    })
}

fn cmd_table1() -> Result<Outcome, Failure> {
    let spec = ProblemSpec::example();
    let ctx = spec.context()?;
    let bounds = spec.wide_bounds()?;
    let checker = ReductionChecker::new(&ctx, bounds)?;
    let b = checker.bijection()?;
    let (big, local) = (ctx.big_catalog(), ctx.local_catalog());
    let oracle = FixpointOracle::new(big, bounds)?.enumerate_wide_containing(checker.base())?;
    let rows_from_filter: Vec<WideSubcat> = b.rows.iter().map(|r| r.0.clone()).collect();
    let oracle_ok = oracle == rows_from_filter;

    let mut header: Vec<String> = big.entries().iter().map(|e| e.label.clone()).collect();
    header.push("|".into());
    header.extend(local.entries().iter().map(|e| e.label.clone()));
    let rows: Vec<Vec<String>> = b
        .rows
        .iter()
        .map(|(s, w)| {
            let mut r: Vec<String> = (0..big.len())
                .map(|i| if s.has(i) { "*" } else { "." }.to_string())
                .collect();
            r.push("|".into());
            r.extend((0..local.len()).map(|i| if w.has(i) { "*" } else { "." }.to_string()));
            r
        })
        .collect();
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut text = String::from(
        "C (left) and j^*C (right), one row per wide subcategory containing the quotient image\n",
    );
    text += &table(&header_refs, &rows);
    writeln!(
        text,
        "\n{} rows; bijection {}; fixpoint oracle {}",
        b.rows.len(),
        if b.passed() { "verified" } else { "FAILED" },
        if oracle_ok { "agrees" } else { "DISAGREES" }
    )
    .unwrap();
    let mut results = bijection_json(&ctx, &b);
    results["oracle_agrees"] = json!(oracle_ok);
    Ok(Outcome {
        command: "table1",
        seed: None,
        input: Some(spec),
        passed: b.passed() && oracle_ok,
        results,
        text,
        dot: Some(bijection_dot(&ctx, &b)),
    })
}

fn cmd_fuzz(seed: u64, count: usize) -> Result<Outcome, Failure> {
    let battery = run_battery(seed, count)?;
    let rows: Vec<Vec<String>> = battery
        .instances
        .iter()
        .map(|i| {
            let arrows: Vec<String> = i
                .spec
                .quiver
                .arrows
                .iter()
                .map(|a| format!("{}->{}", a.from, a.to))
                .collect();
            vec![
                i.index.to_string(),
                i.spec.field.p.to_string(),
                i.spec.quiver.vertices.len().to_string(),
                arrows.join(" "),
                i.spec.relations.len().to_string(),
                i.spec.idempotent.join("+"),
                format!(
                    "{}/{}/{}",
                    i.catalog_sizes[0], i.catalog_sizes[1], i.catalog_sizes[2]
                ),
                if i.passed() { "pass" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let mut text = table(
        &["#", "p", "n", "arrows", "rels", "e", "indec", "verdict"],
        &rows,
    );
    for i in battery.counterexamples() {
        writeln!(
            text,
            "\ncounterexample #{}:\n{}\n{}",
            i.index,
            i.spec.to_json(),
            report_text(&i.report)
        )
        .unwrap();
    }
    writeln!(
        text,
        "\n{} instances, {} counterexamples, {} draws rejected over budget",
        battery.instances.len(),
        battery.counterexamples().count(),
        battery.rejected.len()
    )
    .unwrap();
    Ok(Outcome {
        command: "fuzz",
        seed: Some(seed),
        input: None,
        passed: battery.passed(),
        results: serde_json::to_value(&battery).expect("plain data serializes"),
        text,
        dot: None,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Indec(arg) => cmd_indec(load(arg)?),
        Command::Wide {
            input,
            containing_image,
        } => cmd_wide(load(input)?, *containing_image),
        Command::Bijection(arg) => cmd_bijection(load(arg)?),
        Command::Check { input, theorem } => cmd_check(load(input)?, theorem),
        Command::Table1 => cmd_table1(),
        Command::Fuzz { seed, count } => cmd_fuzz(*seed, *count),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(m) => (2, m),
                Failure::Budget(m) => (3, m),
                Failure::Check(m) => (1, m),
            };
            if cli.json {
                println!("{}", json!({"error": msg, "exit_code": code}));
            }
            eprintln!("widerec: {msg}");
            return ExitCode::from(code);
        }
    };
    let elapsed = cli.timings.then(|| start.elapsed().as_millis());
    if cli.json {
        let report = Report {
            command: outcome.command,
            version: env!("CARGO_PKG_VERSION"),
            seed: outcome.seed,
            input: outcome.input,
            passed: outcome.passed,
            results: outcome.results,
            elapsed_ms: elapsed,
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("plain data serializes")
        );
    } else if cli.dot {
        match outcome.dot {
            Some(d) => print!("{d}"),
            None => {
                eprintln!("widerec: --dot is not available for {}", outcome.command);
                return ExitCode::from(2);
            }
        }
    } else {
        print!("{}", outcome.text);
        if let Some(ms) = elapsed {
            println!("elapsed: {ms} ms");
        }
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
