mod args;
mod output;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use rayon::prelude::*;
use serde_json::{json, Value};

use frobenius_core::apery::{check_weight, AperySet};
use frobenius_core::verify::{self, Report, VerifyOptions};
use frobenius_core::{
    ArithTriple, BigInt, DenumerantTable, FrobError, Instance, Provenance, Quantity, Query,
};

use args::{Cli, Command, QueryArgs, TableArgs, TargetArgs, VerifyArgs};
use output::{OutputRecord, QueryEcho, Sink};

const EXIT_MISMATCH: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    }
    let sink = Sink::new(cli.json);
    match run(cli.command, sink) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(if e.is_internal() { EXIT_INTERNAL } else { EXIT_DOMAIN })
        }
    }
}

fn run(command: Command, sink: Sink) -> Result<ExitCode, FrobError> {
    match command {
        Command::Gp(q) => query(&q, Quantity::Gp, "gp", sink),
        Command::Np(q) => query(&q, Quantity::Np, "np", sink),
        Command::Sp(q) => query(&q, Quantity::Sp, "sp", sink),
        Command::Power { query: q, mu } => {
            if mu == 0 {
                return Err(FrobError::DomainError("--mu must be at least 1".into()));
            }
            query(&q, Quantity::Power { mu }, "power", sink)
        }
        Command::Weighted { query: q, lambda, mu } => {
            if mu == 0 {
                return Err(FrobError::DomainError("--mu must be at least 1".into()));
            }
            query(&q, Quantity::Weighted { lambda, mu }, "weighted", sink)
        }
        Command::Apery(q) => apery(&q, sink),
        Command::Gstar(t) => gstar(&t, sink),
        Command::Nonrep(t) => nonrep(&t, sink),
        Command::Table(t) => table(&t, sink),
        Command::Verify(v) => verify_cmd(&v, sink),
    }
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn echo(command: &'static str, instance: &Instance, p: u64, quantity: Option<Quantity>) -> QueryEcho {
    QueryEcho {
        command,
        generators: instance.generators().to_vec(),
        p,
        mu: quantity.and_then(|q| q.mu()),
        lambda: quantity.and_then(|q| q.lambda()),
    }
}

fn decimal(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn query(args: &QueryArgs, quantity: Quantity, command: &'static str, sink: Sink) -> Result<ExitCode, FrobError> {
    let instance = args.target.instance()?;
    let q = Query::new(instance.clone(), args.target.p, quantity);
    let start = Instant::now();
    let mut table = DenumerantTable::new(instance.clone());

    let primary = args.path.unwrap_or_else(|| q.default_path());
    let paths = if args.check {
        let mut paths = q.applicable_paths();
        if !paths.contains(&primary) {
            paths.insert(0, primary);
        }
        paths
    } else {
        vec![primary]
    };

    let mut results = BTreeMap::new();
    let mut values = Vec::new();
    for path in &paths {
        let r = q.evaluate_with(*path, &mut table)?;
        results.insert(path.as_str(), decimal(&r.value));
        values.push(r.value);
    }
    let agree = args.check.then(|| values.windows(2).all(|w| w[0] == w[1]));
    let record = OutputRecord {
        query: echo(command, &instance, args.target.p, Some(quantity)),
        value: decimal(&values[0]),
        provenance: primary.as_str(),
        agree,
        ms: millis(start),
        results: if args.check { results } else { BTreeMap::new() },
        coords: None,
    };
    sink.record(&record);
    Ok(if agree == Some(false) { ExitCode::from(EXIT_MISMATCH) } else { ExitCode::SUCCESS })
}

fn elements(set: &AperySet) -> Value {
    Value::Array(set.elements().iter().map(decimal).collect())
}

fn apery(args: &QueryArgs, sink: Sink) -> Result<ExitCode, FrobError> {
    let instance = args.target.instance()?;
    let p = args.target.p;
    let start = Instant::now();
    let triple = ArithTriple::from_instance(&instance).filter(|t| p <= t.max_p());
    let primary = args.path.unwrap_or(if triple.is_some() { Provenance::ClosedForm } else { Provenance::Apery });

    let closed = || -> Result<AperySet, FrobError> {
        match ArithTriple::from_instance(&instance) {
            Some(t) => t.apery_closed(p),
            None => Err(FrobError::DomainError(format!("{instance} is not an arithmetic triple"))),
        }
    };
    let scanned = || AperySet::scan(&mut DenumerantTable::new(instance.clone()), p);
    let primary_set = match primary {
        Provenance::ClosedForm => closed()?,
        Provenance::Apery => scanned(),
        Provenance::Oracle => {
            return Err(FrobError::DomainError("the Apéry set has no oracle path; use closed or apery".into()))
        }
    };

    let mut results = BTreeMap::new();
    let mut agree = None;
    if args.check {
        let other = match primary {
            Provenance::ClosedForm => Some(scanned()),
            _ if triple.is_some() => Some(closed()?),
            _ => None,
        };
        results.insert(primary.as_str(), elements(&primary_set));
        if let Some(other) = other {
            let other_path = if primary == Provenance::ClosedForm { Provenance::Apery } else { Provenance::ClosedForm };
            results.insert(other_path.as_str(), elements(&other));
            agree = Some(other.elements() == primary_set.elements());
        } else {
            agree = Some(true);
        }
    }
    let record = OutputRecord {
        query: echo("apery", &instance, p, None),
        value: elements(&primary_set),
        provenance: primary.as_str(),
        agree,
        ms: millis(start),
        results,
        coords: primary_set.coords().map(<[_]>::to_vec),
    };
    sink.record(&record);
    Ok(if agree == Some(false) { ExitCode::from(EXIT_MISMATCH) } else { ExitCode::SUCCESS })
}

fn gstar(args: &TargetArgs, sink: Sink) -> Result<ExitCode, FrobError> {
    let instance = args.instance()?;
    let start = Instant::now();
    let value = DenumerantTable::new(instance.clone()).g_star(args.p);
    sink.record(&OutputRecord {
        query: echo("gstar", &instance, args.p, None),
        value: match value {
            Some(v) => decimal(&v),
            None => Value::String("none".into()),
        },
        provenance: Provenance::Oracle.as_str(),
        agree: None,
        ms: millis(start),
        results: BTreeMap::new(),
        coords: None,
    });
    Ok(ExitCode::SUCCESS)
}

fn nonrep(args: &TargetArgs, sink: Sink) -> Result<ExitCode, FrobError> {
    let instance = args.instance()?;
    let start = Instant::now();
    let set = DenumerantTable::new(instance.clone()).nonrep_set(args.p);
    sink.record(&OutputRecord {
        query: echo("nonrep", &instance, args.p, None),
        value: Value::Array(set.iter().map(|n| Value::String(n.to_string())).collect()),
        provenance: Provenance::Oracle.as_str(),
        agree: None,
        ms: millis(start),
        results: BTreeMap::new(),
        coords: None,
    });
    Ok(ExitCode::SUCCESS)
}

struct Row {
    triple: ArithTriple,
    p: u64,
    cells: Vec<Option<BigInt>>,
    ms: f64,
}

fn table(args: &TableArgs, sink: Sink) -> Result<ExitCode, FrobError> {
    if let Some(lambda) = args.lambda {
        if lambda == 0 || lambda == 1 {
            check_weight(lambda, 1)?;
        }
    }
    if args.mu == Some(0) {
        return Err(FrobError::DomainError("--mu must be at least 1".into()));
    }
    let path = args.path.unwrap_or(Provenance::ClosedForm);
    let mut columns = vec!["gp", "np", "sp"];
    let mut quantities = vec![Quantity::Gp, Quantity::Np, Quantity::Sp];
    if let Some(mu) = args.mu {
        columns.push("power");
        quantities.push(Quantity::Power { mu });
        if let Some(lambda) = args.lambda {
            columns.push("weighted");
            quantities.push(Quantity::Weighted { lambda, mu });
        }
    }

    let triples: Vec<ArithTriple> = args
        .a
        .iter()
        .flat_map(|a| args.d.iter().filter_map(move |d| ArithTriple::new(a, d).ok()))
        .collect();

    let chunks: Vec<Result<Vec<Row>, FrobError>> = triples
        .par_iter()
        .map(|triple| {
            let mut table = DenumerantTable::new(triple.instance());
            let (lo, hi) = match args.p {
                Some(span) => (span.lo, span.hi.min(triple.max_p())),
                None => (0, triple.max_p()),
            };
            let mut rows = Vec::new();
            for p in lo..=hi {
                let start = Instant::now();
                let mut cells = Vec::new();
                for &quantity in &quantities {
                    let q = Query::new(triple.instance(), p, quantity);
                    match q.evaluate_with(path, &mut table) {
                        Ok(r) => cells.push(Some(r.value)),
                        Err(FrobError::InvalidWeight { .. }) => cells.push(None),
                        Err(e) => return Err(e),
                    }
                }
                rows.push(Row { triple: *triple, p, cells, ms: millis(start) });
            }
            Ok(rows)
        })
        .collect();

    if args.csv {
        sink.line(&format!("a,d,p,generators,{},provenance", columns.join(",")));
    }
    for chunk in chunks {
        for row in chunk? {
            let gens = row.triple.generators();
            if args.csv {
                let cells: Vec<String> = row
                    .cells
                    .iter()
                    .map(|c| c.as_ref().map(BigInt::to_string).unwrap_or_default())
                    .collect();
                sink.line(&format!(
                    "{},{},{},{} {} {},{},{}",
                    row.triple.a(),
                    row.triple.d(),
                    row.p,
                    gens[0],
                    gens[1],
                    gens[2],
                    cells.join(","),
                    path.as_str()
                ));
            } else {
                let mut obj = serde_json::Map::new();
                obj.insert("a".into(), json!(row.triple.a()));
                obj.insert("d".into(), json!(row.triple.d()));
                obj.insert("p".into(), json!(row.p));
                obj.insert("generators".into(), json!(gens));
                for (name, cell) in columns.iter().zip(&row.cells) {
                    obj.insert((*name).into(), cell.as_ref().map(decimal).unwrap_or(Value::Null));
                }
                if let Some(mu) = args.mu {
                    obj.insert("mu".into(), json!(mu));
                }
                if let Some(lambda) = args.lambda {
                    obj.insert("lambda".into(), json!(lambda));
                }
                obj.insert("provenance".into(), json!(path.as_str()));
                obj.insert("ms".into(), json!(row.ms));
                sink.json(&Value::Object(obj));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(args: &VerifyArgs, sink: Sink) -> Result<ExitCode, FrobError> {
    let start = Instant::now();
    if args.nonrep {
        return verify_nonrep(args, sink);
    }

    let mut jobs: Vec<(ArithTriple, VerifyOptions)> = verify::triples(args.a_max, args.d_max)
        .into_iter()
        .map(|t| (t, VerifyOptions::default()))
        .collect();
    if args.weighted {
        for (t, opts) in jobs.iter_mut() {
            if t.a() <= args.weighted_a_max && t.d() <= args.weighted_d_max {
                *opts = VerifyOptions::weighted();
            }
        }
    }
    let reports: Vec<Report> = jobs.par_iter().map(|(t, opts)| verify::verify_triple(t, opts)).collect();
    let mut report = Report::default();
    for r in reports {
        report.merge(r);
    }
    report.merge(verify::verify_two_var(20));

    for m in &report.mismatches {
        if sink.json {
            sink.json(&json!({
                "mismatch": {
                    "generators": m.generators,
                    "p": m.p,
                    "check": m.check,
                    "detail": m.detail,
                }
            }));
        } else {
            sink.line(&format!("MISMATCH {m}"));
        }
    }
    let summary = format!("{} mismatches", report.mismatches.len());
    if sink.json {
        sink.json(&json!({
            "triples": jobs.len(),
            "checked": report.checked,
            "mismatches": report.mismatches.len(),
            "summary": summary,
            "ms": millis(start),
        }));
    } else {
        sink.line(&format!("{} triples, {} checks: {summary}", jobs.len(), report.checked));
    }
    Ok(if report.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MISMATCH) })
}

fn verify_nonrep(args: &VerifyArgs, sink: Sink) -> Result<ExitCode, FrobError> {
    let start = Instant::now();
    let list = args.generators.as_deref().unwrap_or_default();
    let instance: Instance = list.parse()?;
    let mut table = DenumerantTable::new(instance.clone());
    let set = table.nonrep_set(args.p);
    let count = BigInt::from(set.len());

    let mut results = BTreeMap::new();
    results.insert("oracle", decimal(&count));
    let mut agree = true;
    for path in [Provenance::ClosedForm, Provenance::Apery] {
        let q = Query::new(instance.clone(), args.p, Quantity::Np);
        if !q.applicable_paths().contains(&path) {
            continue;
        }
        let value = match q.evaluate_with(path, &mut table) {
            Ok(r) => r.value,
            // an empty set has no genus on the Apéry path
            Err(FrobError::EmptySet { .. }) if set.is_empty() => count.clone(),
            Err(e) => return Err(e),
        };
        agree &= value == count;
        results.insert(path.as_str(), decimal(&value));
    }
    sink.record(&OutputRecord {
        query: echo("nonrep", &instance, args.p, None),
        value: Value::Array(set.iter().map(|n| Value::String(n.to_string())).collect()),
        provenance: Provenance::Oracle.as_str(),
        agree: Some(agree),
        ms: millis(start),
        results,
        coords: None,
    });
    Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MISMATCH) })
}
