//! Acceptance suite. Every criterion is an exact comparison; each prints one
//! PASS/FAIL line with its elapsed time against its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use frobenius_core::apery::AperySet;
use frobenius_core::arithmetic::{roberts_g, selmer_n, sylvester_two_var, ArithTriple};
use frobenius_core::numeric::{gcd, BigInt};
use frobenius_core::oracle::DenumerantTable;
use frobenius_core::Instance;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

const S11_W: &str = "4669129542047649756353852336451726355433630648909109181546522";
const S6_W: &str = "24083450837052351738334815453210";

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(label: &str, got: T, want: T) -> std::result::Result<(), String> {
    ensure(got == want, || format!("{label}: got {got:?}, want {want:?}"))
}

fn triples(a_max: u64, d_max: u64) -> Vec<ArithTriple> {
    (3..=a_max)
        .flat_map(|a| (1..=d_max).filter_map(move |d| ArithTriple::new(a, d).ok()))
        .collect()
}

fn s(v: Result<BigInt, frobenius_core::FrobError>) -> String {
    match v {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Five quantities along all three paths for one worked example.
fn golden(a: u64, d: u64, p: u64, want: [&str; 5]) -> Check {
    let triple = ArithTriple::new(a, d).map_err(|e| e.to_string())?;
    let mut table = DenumerantTable::new(triple.instance());
    let scanned = AperySet::scan(&mut table, p);
    let closed = [
        s(triple.gp_closed(p)),
        s(triple.np_closed(p)),
        s(triple.sp_closed(p)),
        s(triple.power_sum_closed(p, 3)),
        s(triple.weighted_sum_closed(p, 2, 3)),
    ];
    let apery = [
        scanned.gp().to_string(),
        s(scanned.np()),
        s(scanned.sp()),
        s(scanned.power_sum(3)),
        s(scanned.weighted_power_sum(2, 3)),
    ];
    let oracle = [
        s(table.gp(p)),
        s(table.np(p)),
        s(table.sp(p)),
        s(table.power_sum(p, 3)),
        s(table.weighted_sum(p, 2, 3)),
    ];
    let want = want.map(String::from);
    eq("closed form", &closed, &want)?;
    eq("apery", &apery, &want)?;
    eq("oracle", &oracle, &want)?;
    Ok("15/15 values exact".into())
}

fn criterion_1() -> Check {
    golden(11, 4, 5, ["179", "165", "13605", "189158535", S11_W])
}

fn criterion_2() -> Check {
    golden(6, 5, 3, ["85", "73", "2675", "7652009", S6_W])
}

fn criterion_3() -> Check {
    let mut want: Vec<u64> = vec![0];
    want.extend(1..=59);
    want.extend([61, 62, 63, 64, 65, 67, 68, 69, 73, 74, 75, 79, 85]);
    let inst = Instance::new(vec![6, 11, 16]).unwrap();
    let got = DenumerantTable::new(inst).nonrep_set(3);
    eq("nonrep set", &got, &want)?;
    Ok(format!("{} elements", got.len()))
}

fn criterion_4() -> Check {
    let mut table = DenumerantTable::new(Instance::new(vec![2, 5, 7]).unwrap());
    eq("g*_17", table.g_star(17), Some(BigInt::from(43)))?;
    eq("g*_18", table.g_star(18), Some(BigInt::from(42)))?;
    eq("g*_22", table.g_star(22), None)?;
    Ok("43 > 42, g*_22 absent".into())
}

fn criterion_5() -> Check {
    let mut compared = 0;
    for t in triples(25, 15) {
        let mut table = DenumerantTable::new(t.instance());
        for p in 0..=t.max_p() {
            let set = AperySet::scan(&mut table, p);
            let tag = format!("a={} d={} p={p}", t.a(), t.d());
            let g = [s(t.gp_closed(p)), set.gp().to_string(), s(table.gp(p))];
            let n = [s(t.np_closed(p)), s(set.np()), s(table.np(p))];
            let sum = [s(t.sp_closed(p)), s(set.sp()), s(table.sp(p))];
            for (name, vals) in [("g", g), ("n", n), ("s", sum)] {
                ensure(vals[0] == vals[1] && vals[1] == vals[2], || format!("{tag} {name}: {vals:?}"))?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} three-way comparisons, 0 mismatches"))
}

fn criterion_6() -> Check {
    let mut compared = 0;
    for t in triples(12, 7) {
        let mut table = DenumerantTable::new(t.instance());
        let mut lambdas = vec![-2i64, 2, 3];
        if t.a() % 2 == 1 {
            lambdas.push(-1);
        }
        for p in 0..=t.max_p() {
            let set = AperySet::scan(&mut table, p);
            for mu in 1..=3 {
                let tag = format!("a={} d={} p={p} mu={mu}", t.a(), t.d());
                let power = [s(t.power_sum_closed(p, mu)), s(set.power_sum(mu)), s(table.power_sum(p, mu))];
                ensure(power[0] == power[1] && power[1] == power[2], || format!("{tag} power: {power:?}"))?;
                compared += 1;
                for &lambda in &lambdas {
                    let w = [
                        s(t.weighted_sum_closed(p, lambda, mu)),
                        s(set.weighted_power_sum(lambda, mu)),
                        s(table.weighted_sum(p, lambda, mu)),
                    ];
                    ensure(w[0] == w[1] && w[1] == w[2], || format!("{tag} lambda={lambda}: {w:?}"))?;
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} three-way comparisons, 0 mismatches"))
}

fn criterion_7() -> Check {
    let mut sets = 0;
    for t in triples(25, 15) {
        let mut table = DenumerantTable::new(t.instance());
        let a = BigInt::from(t.a());
        let (ab, dd) = (BigInt::from(t.a()), BigInt::from(t.d()));
        for p in 0..=t.max_p() {
            let tag = format!("a={} d={} p={p}", t.a(), t.d());
            let cells = t.apery_cells(p).map_err(|e| e.to_string())?;
            eq(&format!("{tag} cell count"), cells.len() as u64, t.a())?;
            let set = t.apery_closed(p).map_err(|e| format!("{tag}: {e}"))?;
            let mut seen = vec![false; t.a() as usize];
            for (i, m) in set.elements().iter().enumerate() {
                let r: usize = (m % &a).try_into().unwrap();
                ensure(r == i && !seen[r], || format!("{tag}: residue {r} at slot {i}"))?;
                seen[r] = true;
                let n = u64::try_from(m).unwrap();
                ensure(*table.count(n) > BigInt::from(p), || format!("{tag}: {n} not in R_(p+1)"))?;
                if n >= t.a() {
                    ensure(*table.count(n - t.a()) <= BigInt::from(p), || format!("{tag}: {n} not minimal"))?;
                }
            }
            ensure(seen.iter().all(|&x| x), || format!("{tag}: residues incomplete"))?;
            // (a/4)((a+d)^2 - (d+1)^2 [+1] - 4p^2 + 4(2a+2d-1)p)
            let pp = BigInt::from(p);
            let parity = if t.a() % 2 == 0 { BigInt::from(1) } else { BigInt::from(0) };
            let inner = (&ab + &dd) * (&ab + &dd) - (&dd + 1) * (&dd + 1) + parity - 4 * &pp * &pp
                + 4 * (2 * &ab + 2 * &dd - 1) * &pp;
            let want = &ab * inner / 4;
            let total: BigInt = set.elements().iter().sum();
            eq(&format!("{tag} element sum"), total, want)?;
            sets += 1;
        }
    }
    Ok(format!("{sets} closed-form Apéry sets verified"))
}

fn criterion_8() -> Check {
    let mut sets = 0;
    for t in triples(25, 15) {
        let mut table = DenumerantTable::new(t.instance());
        for p in 0..=t.max_p() {
            let tag = format!("a={} d={} p={p}", t.a(), t.d());
            let set = AperySet::scan(&mut table, p);
            let lemma = set.power_sum(1).map_err(|e| format!("{tag}: {e}"))?;
            let sp = set.sp().map_err(|e| format!("{tag}: {e}"))?;
            eq(&tag, lemma, sp)?;
            for mu in 2..=3 {
                set.power_sum(mu).map_err(|e| format!("{tag} mu={mu}: {e}"))?;
            }
            sets += 1;
        }
    }
    Ok(format!("{sets} sets, integrality never violated"))
}

fn criterion_9() -> Check {
    let mut pairs = 0;
    for a in 2..=20u64 {
        for b in a + 1..=20 {
            if gcd(a, b) != 1 {
                continue;
            }
            let mut table = DenumerantTable::new(Instance::new(vec![a, b]).unwrap());
            let (g, n, sum) = sylvester_two_var(a, b).map_err(|e| e.to_string())?;
            let oracle = (table.gp(0).unwrap(), table.np(0).unwrap(), table.sp(0).unwrap());
            eq(&format!("({a},{b})"), (g, n, sum), oracle)?;
            pairs += 1;
        }
    }
    let mut triples_checked = 0;
    for t in triples(25, 15) {
        let (a, d) = (t.a(), t.d());
        let tag = format!("a={a} d={d}");
        eq(&format!("{tag} roberts"), s(roberts_g(a, d, 3)), s(t.gp_closed(0)))?;
        let oracle_n = DenumerantTable::new(t.instance()).np(0);
        eq(&format!("{tag} selmer/closed"), s(selmer_n(a, d, 3)), s(t.np_closed(0)))?;
        eq(&format!("{tag} closed/oracle"), s(t.np_closed(0)), s(oracle_n))?;
        triples_checked += 1;
    }
    Ok(format!("{pairs} pairs, {triples_checked} triples"))
}

fn naive(n: u64, gens: &[u64]) -> u64 {
    match gens {
        [] => (n == 0) as u64,
        [a] => n.is_multiple_of(*a) as u64,
        [a, rest @ ..] => (0..=n / a).map(|x| naive(n - x * a, rest)).sum(),
    }
}

fn criterion_10() -> Check {
    // fixed-seed LCG so the instance list is reproducible
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = move |bound: u64| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) % bound
    };
    let mut instances = Vec::new();
    while instances.len() < 20 {
        let k = 2 + next(3) as usize;
        let mut gens: Vec<u64> = (0..k).map(|_| 1 + next(25)).collect();
        gens.sort_unstable();
        gens.dedup();
        if let Ok(inst) = Instance::new(gens) {
            instances.push(inst);
        }
    }
    for inst in &instances {
        let mut table = DenumerantTable::new(inst.clone());
        for n in 0..=200 {
            eq(&format!("{inst} n={n}"), table.count(n).clone(), BigInt::from(naive(n, inst.generators())))?;
        }
    }
    let mut table = DenumerantTable::new(Instance::new(vec![2, 5, 7]).unwrap());
    eq("d(43)", table.count(43).clone(), BigInt::from(17))?;
    eq("d(42)", table.count(42).clone(), BigInt::from(18))?;
    Ok("20 instances x 201 values, d(43)=17, d(42)=18".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1  golden vector (11,15,19), p=5", criterion_1, Duration::from_secs(5)),
        ("2  golden vector (6,11,16), p=3", criterion_2, Duration::from_secs(2)),
        ("3  nonrepresentable listing (6,11,16), p=3", criterion_3, Duration::from_secs(1)),
        ("4  g* remark on (2,5,7)", criterion_4, Duration::from_secs(1)),
        ("5  three-way g/n/s sweep a<=25 d<=15", criterion_5, Duration::from_secs(120)),
        ("6  power/weighted sweep a<=12 d<=7", criterion_6, Duration::from_secs(180)),
        ("7  structural Apéry checks", criterion_7, Duration::from_secs(120)),
        ("8  lemma self-consistency", criterion_8, Duration::from_secs(120)),
        ("9  baselines", criterion_9, Duration::from_secs(120)),
        ("10 denumerant oracle", criterion_10, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS  criterion {name}: {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg} ({elapsed:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
