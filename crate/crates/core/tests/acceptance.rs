//! One PASS/FAIL line per acceptance criterion. Exits nonzero when any
//! criterion fails.

use std::collections::BTreeMap;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use mckay::ade::{match_graph, AdeGraph};
use mckay::characters::{CharacterTable, McKayMatrix};
use mckay::exact::CycloNum;
use mckay::klein::{BuildOptions, GroupType, KleinGroup};
use mckay::verify::{exponents_to_poly, reference_e8, verify_all, SuiteReport, VerificationReport};
use serde_json::Value;

/// Display tolerance for floating approximations.
const DISPLAY_TOLERANCE: f64 = 1e-12;
const POINCARE_BUDGET: Duration = Duration::from_secs(1);
const CHARTABLE_BUDGET: Duration = Duration::from_secs(5);
const SUITE_BUDGET: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn run(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_mckay"))
        .args(args)
        .output()
        .expect("binary runs");
    (out, start.elapsed())
}

fn report(suite: &SuiteReport, t: GroupType) -> &VerificationReport {
    suite.reports.iter().find(|r| r.gtype == t.label()).unwrap()
}

fn check_passes(r: &VerificationReport, name: &str) -> Option<bool> {
    r.checks.iter().find(|c| c.name == name).map(|c| c.passed())
}

/// `type:check` for every named check that is missing or fails.
fn failing(suite: &SuiteReport, types: &[GroupType], names: &[&str]) -> Vec<String> {
    let mut bad = Vec::new();
    for &t in types {
        let r = report(suite, t);
        for n in names {
            if check_passes(r, n) != Some(true) {
                bad.push(format!("{t}:{n}"));
            }
        }
    }
    bad
}

fn criterion_1() -> Outcome {
    let (out, elapsed) = run(&["poincare", "--type", "E8", "--format", "json"]);
    let v: Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => return Outcome::new(false, format!("unparsable output: {e}")),
    };
    let emitted: BTreeMap<String, Vec<i64>> = v["poincare"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|p| {
            let coeffs = p["coeffs"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect();
            (p["node"].as_str().unwrap().to_owned(), coeffs)
        })
        .collect();
    let r = reference_e8();
    let mut mismatched = Vec::new();
    for (node, exps) in &r.poincare {
        let want = exponents_to_poly(exps).to_i64_coeffs().unwrap();
        if emitted.get(node) != Some(&want) {
            mismatched.push(node.clone());
        }
    }
    let exact = mismatched.is_empty() && emitted.len() == 9 && out.status.success();
    Outcome::new(
        exact && elapsed < POINCARE_BUDGET,
        format!("{} of 9 polynomials exact, mismatched {mismatched:?}, {:.3}s", 9 - mismatched.len(), elapsed.as_secs_f64()),
    )
}

/// Printed entry -> exact value at position `j` of its column, or `None`
/// for a `+-1` entry, which alternates along the column.
fn printed_value(entry: &str, j: usize, n: u32) -> Option<CycloNum> {
    let root = |k: i64, m: u32| CycloNum::root_in(k, m, n).unwrap();
    Some(match entry {
        "tau" => &root(1, 10) + &root(-1, 10),
        "tau-" => &root(3, 10) + &root(-3, 10),
        "i" => root(1, 4),
        "(-1)^(n+1)" => CycloNum::from_int(if j.is_multiple_of(2) { 1 } else { -1 }, n),
        "+-1" => return None,
        s => CycloNum::from_int(s.parse().unwrap(), n),
    })
}

fn criterion_2() -> Outcome {
    let (out, elapsed) = run(&["chartable", "--type", "E8", "--format", "json"]);
    let v: Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => return Outcome::new(false, format!("unparsable output: {e}")),
    };
    let classes: Vec<&str> = v["classes"].as_array().unwrap().iter().map(|c| c["node"].as_str().unwrap()).collect();
    let n = v["characters"][0]["values"][0]["conductor"].as_u64().unwrap() as u32;
    let mut table: BTreeMap<(&str, &str), (&Value, &Value)> = BTreeMap::new();
    for ch in v["characters"].as_array().unwrap() {
        for (j, c) in classes.iter().enumerate() {
            table.insert((ch["node"].as_str().unwrap(), *c), (&ch["values"][j], &ch["approx"][j]));
        }
    }
    let tau = printed_value("tau", 0, n).unwrap();
    let tau_ok = &(&(&tau * &tau) - &tau) - &CycloNum::one(n) == CycloNum::zero(n)
        && tau.approx().re > 0.0
        && (tau.approx().re - (1.0 + 5f64.sqrt()) / 2.0).abs() <= DISPLAY_TOLERANCE;
    let r = reference_e8();
    let mut entries = 0;
    let mut mismatches = Vec::new();
    for (row, printed) in &r.table.rows {
        for (col, entry) in r.table.columns.iter().zip(printed) {
            entries += 1;
            let mut ok = true;
            let mut signs = Vec::new();
            for (j, node) in col.nodes.iter().enumerate() {
                let (exact, approx) = table[&(row.as_str(), node.as_str())];
                match printed_value(entry, j, n) {
                    Some(want) => {
                        let w = want.approx();
                        ok &= *exact == serde_json::to_value(&want).unwrap()
                            && (approx[0].as_f64().unwrap() - w.re).abs() <= DISPLAY_TOLERANCE
                            && (approx[1].as_f64().unwrap() - w.im).abs() <= DISPLAY_TOLERANCE;
                    }
                    None => signs.push(exact.clone()),
                }
            }
            if entry == "+-1" {
                let one = serde_json::to_value(CycloNum::one(n)).unwrap();
                let minus = serde_json::to_value(CycloNum::from_int(-1, n)).unwrap();
                ok &= signs.iter().all(|s| *s == one || *s == minus) && signs.windows(2).all(|w| w[0] != w[1]);
            }
            if !ok {
                mismatches.push(format!("{row}@{}={entry}", col.nodes.join("/")));
            }
        }
    }
    Outcome::new(
        tau_ok && mismatches.is_empty() && elapsed < CHARTABLE_BUDGET,
        format!(
            "{} of {entries} printed entries match, tau root {}, {:.3}s, mismatches {mismatches:?}",
            entries - mismatches.len(),
            if tau_ok { "ok" } else { "wrong" },
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut matched = 0;
    let mut unmatched = Vec::new();
    let mut mutations = 0;
    let mut surviving = 0;
    let types = GroupType::catalog();
    for &t in &types {
        let k = KleinGroup::build(t).unwrap();
        let table = CharacterTable::compute(k.group()).unwrap();
        let m = McKayMatrix::compute(&table).unwrap();
        let g = AdeGraph::build(t).unwrap();
        if match_graph(&m, &g, table.degrees(), table.trivial()).is_empty() {
            unmatched.push(t.to_string());
        } else {
            matched += 1;
        }
        // every single-entry mutation by +-1 must destroy all matchings
        for i in 0..m.len() {
            for j in 0..m.len() {
                for delta in [-1i64, 1] {
                    let v = m.get(i, j) as i64 + delta;
                    if v < 0 {
                        continue;
                    }
                    let mut rows = m.rows().to_vec();
                    rows[i][j] = v as u32;
                    mutations += 1;
                    if !match_graph(&McKayMatrix::from_rows(rows), &g, table.degrees(), table.trivial()).is_empty() {
                        surviving += 1;
                    }
                }
            }
        }
    }
    Outcome::new(
        unmatched.is_empty() && surviving == 0,
        format!(
            "{matched}/{} types matched, {mutations} mutations, {surviving} still matched, unmatched {unmatched:?}",
            types.len()
        ),
    )
}

fn criterion_4(suite: &SuiteReport) -> Outcome {
    let types = GroupType::default_suite();
    let mut failing = Vec::new();
    for &t in &types {
        let r = report(suite, t);
        let c = r.checks.iter().find(|c| c.name == "theorem").unwrap();
        if !c.passed() {
            let cells = c.witness["failures"].as_array().map_or(0, Vec::len);
            failing.push(format!("{t}({cells} cells)"));
        }
    }
    Outcome::new(
        failing.is_empty(),
        format!("{}/{} types hold on the full grid, failing {failing:?}", types.len() - failing.len(), types.len()),
    )
}

fn criterion_5(suite: &SuiteReport) -> Outcome {
    let types = [
        GroupType::Tetrahedral,
        GroupType::Dihedral(3),
        GroupType::Dihedral(5),
        GroupType::Dihedral(7),
    ];
    let mut failing = Vec::new();
    let mut ambiguous = 0;
    for t in types {
        let r = report(suite, t);
        let Some(c) = r.checks.iter().find(|c| c.name == "splitting") else {
            failing.push(format!("{t}:missing"));
            continue;
        };
        for p in c.witness["pairs"].as_array().into_iter().flatten() {
            if p.get("error").is_some() {
                ambiguous += 1;
            }
        }
        if !c.passed() {
            failing.push(t.to_string());
        }
    }
    Outcome::new(
        failing.is_empty() && ambiguous == 0,
        format!("{}/{} types split exactly, {ambiguous} ambiguous centers, failing {failing:?}", types.len() - failing.len(), types.len()),
    )
}

fn criterion_6(suite: &SuiteReport) -> Outcome {
    let all = GroupType::default_suite();
    let mut bad = failing(suite, &all, &["orthogonality", "dimensions", "poincare", "class_equation"]);
    let forms_types = [GroupType::Dihedral(2), GroupType::Tetrahedral, GroupType::Icosahedral];
    let bad_forms = failing(suite, &forms_types, &["forms"]);
    bad.extend(bad_forms);
    Outcome::new(bad.is_empty(), format!("failing checks {bad:?}"))
}

fn criterion_7(suite: &SuiteReport) -> Outcome {
    let all = GroupType::catalog();
    let bad = failing(suite, &all, &["degrees", "poincare"]);
    let e: Vec<String> = [GroupType::Icosahedral, GroupType::Octahedral, GroupType::Tetrahedral]
        .iter()
        .map(|&t| {
            let c = report(suite, t).checks.iter().find(|c| c.name == "degrees").unwrap();
            format!("{t}={}", c.witness["degrees"])
        })
        .collect();
    Outcome::new(bad.is_empty(), format!("exceptional degrees {e:?}, failing {bad:?}"))
}

fn criterion_8(suite: &SuiteReport) -> Outcome {
    let all = GroupType::default_suite();
    let bad = failing(suite, &all, &["restriction"]);
    Outcome::new(bad.is_empty(), format!("{}/{} types, failing {bad:?}", all.len() - bad.len(), all.len()))
}

fn criterion_9() -> Outcome {
    let (a, elapsed) = run(&["verify", "--type", "all", "--format", "json"]);
    let (b, _) = run(&["verify", "--type", "all", "--format", "json"]);
    let stable = a.stdout == b.stdout && a.status.code() == b.status.code();
    let code = a.status.code();
    let failed: Vec<String> = serde_json::from_slice::<Value>(&a.stdout)
        .ok()
        .and_then(|v| {
            v["reports"].as_array().map(|rs| {
                rs.iter()
                    .filter(|r| r["passed"] == false)
                    .map(|r| r["type"].as_str().unwrap_or("?").to_owned())
                    .collect()
            })
        })
        .unwrap_or_default();
    Outcome::new(
        code == Some(0) && elapsed < SUITE_BUDGET && stable,
        format!(
            "exit {code:?}, {:.2}s, byte-stable {stable}, failing types {failed:?}",
            elapsed.as_secs_f64()
        ),
    )
}

fn main() {
    let suite = verify_all(&GroupType::catalog(), &BuildOptions::default());
    let outcomes = [
        ("1 E8 Poincare polynomials", criterion_1()),
        ("2 E8 character table", criterion_2()),
        ("3 McKay matrices and negative controls", criterion_3()),
        ("4 specialization grid", criterion_4(&suite)),
        ("5 symmetric splitting", criterion_5(&suite)),
        ("6 structural invariants", criterion_6(&suite)),
        ("7 degrees", criterion_7(&suite)),
        ("8 restriction", criterion_8(&suite)),
        ("9 end-to-end verify", criterion_9()),
    ];
    let mut failures = 0;
    for (name, o) in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {name}: {}", o.detail);
        failures += usize::from(!o.pass);
    }
    println!("{} passed, {failures} failed", outcomes.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
