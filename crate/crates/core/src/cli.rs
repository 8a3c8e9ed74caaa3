//! Command-line front end: argument parsing, documents and output formats.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{CycloNum, UniPoly};
use crate::forms::FormsData;
use crate::klein::{BuildOptions, GroupType, DEFAULT_CLOSURE_BOUND};
use crate::poincare::HalfInt;
use crate::verify::{verify_analysis, Analysis, Check};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "mckay", version, about = "Exact McKay correspondence computations for finite subgroups of SU(2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Supported types with triples and orders.
    List(OutputArgs),
    /// Conjugacy classes, generators and the reflection extension.
    Group(TypeArgs),
    /// Exact irreducible characters with decimal approximations.
    Chartable(TypeArgs),
    /// Solutions P_i(t) of the Poincare system with centers and splits.
    Poincare(TypeArgs),
    /// All checks; exit status 1 if any fails.
    Verify(TypeArgs),
    /// Orbit forms, Jacobian factorization and absolute invariants.
    Forms(TypeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    All,
    One(GroupType),
}

impl Selector {
    pub fn types(&self) -> Vec<GroupType> {
        match self {
            Selector::All => GroupType::default_suite(),
            Selector::One(t) => vec![*t],
        }
    }
}

fn parse_selector(s: &str) -> std::result::Result<Selector, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Selector::All);
    }
    s.parse::<GroupType>().map(Selector::One).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct TypeArgs {
    /// E6/E7/E8, Dn, An, a triple such as 5,3,2, or "all".
    #[arg(long = "type", value_parser = parse_selector)]
    pub selector: Selector,
    /// Override the cyclotomic conductor of the construction.
    #[arg(long)]
    pub conductor: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_CLOSURE_BOUND)]
    pub closure_bound: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Resolved settings for one invocation.
#[derive(Clone, Debug)]
pub struct Config {
    pub types: Vec<GroupType>,
    pub all: bool,
    pub format: Format,
    pub build: BuildOptions,
}

impl TypeArgs {
    pub fn config(&self) -> Config {
        Config {
            types: self.selector.types(),
            all: self.selector == Selector::All,
            format: self.out.format,
            build: BuildOptions {
                conductor: self.conductor,
                closure_bound: self.closure_bound,
            },
        }
    }
}

/// Decimal approximation rounded half-to-even at 12 digits.
pub fn round12(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn approx_pair(z: &CycloNum) -> [f64; 2] {
    let a = z.approx();
    let parse = |x: f64| round12(x).parse::<f64>().expect("formatted float");
    [parse(a.re), parse(a.im)]
}

fn int_coeffs(p: &UniPoly) -> Option<Vec<i64>> {
    p.to_i64_coeffs()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub id: usize,
    pub size: usize,
    pub order: u32,
    pub node: Option<String>,
    pub rep_word: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterEntry {
    pub node: Option<String>,
    pub degree: u32,
    pub values: Vec<CycloNum>,
    pub approx: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PoincareEntry {
    pub node: String,
    pub coeffs: Vec<i64>,
    pub center: Option<HalfInt>,
    pub plus: Option<Vec<i64>>,
    pub minus: Option<Vec<i64>>,
}

/// One type's JSON document; absent sections are omitted.
#[derive(Clone, Debug, Serialize)]
pub struct Document {
    #[serde(rename = "type")]
    pub gtype: String,
    pub triple: Option<[u32; 3]>,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characters: Option<Vec<CharacterEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poincare: Option<Vec<PoincareEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forms: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
}

impl Document {
    fn bare(a: &Analysis) -> Self {
        Document {
            gtype: a.gtype().label(),
            triple: a.gtype().triple(),
            order: a.k.order(),
            group: None,
            classes: None,
            characters: None,
            poincare: None,
            forms: None,
            passed: None,
            checks: None,
        }
    }
}

pub fn classes(a: &Analysis) -> Vec<ClassEntry> {
    let nodes = a.node_of_class();
    a.k.classes()
        .iter()
        .enumerate()
        .map(|(i, c)| ClassEntry {
            id: i,
            size: c.size(),
            order: c.order,
            node: nodes.as_ref().map(|v| a.graph.nodes[v[i]].label()),
            rep_word: a.k.word(c.rep).to_string(),
        })
        .collect()
}

pub fn characters(a: &Analysis) -> Vec<CharacterEntry> {
    let nodes = a.node_of_character();
    (0..a.table.len())
        .map(|i| CharacterEntry {
            node: nodes.as_ref().map(|v| a.graph.nodes[v[i]].label()),
            degree: a.table.degrees()[i],
            values: a.table.row(i).to_vec(),
            approx: a.table.row(i).iter().map(approx_pair).collect(),
        })
        .collect()
}

pub fn poincare(a: &Analysis) -> Result<Vec<PoincareEntry>> {
    let sol = a.solution.as_ref().map_err(Clone::clone)?;
    let ints = |p: &UniPoly| int_coeffs(p).ok_or_else(|| Error::SystemInconsistency("non-integral coefficient".into()));
    a.graph
        .nodes
        .iter()
        .enumerate()
        .map(|(u, node)| {
            let split = sol.split(u).ok();
            Ok(PoincareEntry {
                node: node.label(),
                coeffs: ints(sol.poly(u))?,
                center: sol.center(u),
                plus: split.as_ref().map(|(p, _)| ints(p)).transpose()?,
                minus: split.as_ref().map(|(_, m)| ints(m)).transpose()?,
            })
        })
        .collect()
}

fn group_info(a: &Analysis) -> Value {
    let names = ["e_A", "e_B", "e_C"];
    let generators: Vec<Value> = a
        .k
        .generators()
        .iter()
        .enumerate()
        .map(|(i, &g)| json!({ "name": names.get(i).copied().unwrap_or("g"), "order": a.k.group().element_order(g), "trace": a.k.group().element(g).trace() }))
        .collect();
    let reflection = match &a.kp {
        Ok(kp) => json!({
            "order": kp.order(),
            "reflections": kp.reflections().len(),
            "degrees": [kp.degrees().0, kp.degrees().1],
            "source": kp.source(),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    json!({
        "conductor": a.k.conductor(),
        "generators": generators,
        "reflection_group": reflection,
    })
}

pub fn forms_value(a: &Analysis) -> Result<Value> {
    let d = FormsData::compute(&a.k)?;
    let orbits: Vec<Value> = d
        .singular
        .iter()
        .zip(&d.orbit_forms)
        .map(|(s, f)| {
            json!({
                "branch": s.branch,
                "p": s.p,
                "orbit_size": s.size,
                "stabilizer_order": s.stabilizer_order,
                "doubled": s.contains_minus,
                "degree": f.degree(),
                "mu": f.mu,
                "relative_invariant": f.relative_invariant,
                "form": f.form.coeffs(),
            })
        })
        .collect();
    Ok(json!({
        "orbits": orbits,
        "klein_identity": d.klein,
        "jacobian": {
            "generic_degrees": [d.jacobian.generic_degrees.0, d.jacobian.generic_degrees.1],
            "degree": d.jacobian.jacobian_degree,
            "exponents": d.jacobian.exponents,
            "constant": d.jacobian.constant,
        },
        "absolute_invariants": d.invariants.iter().map(|f| json!({
            "exponents": f.exponents,
            "degree": f.degree(),
            "invariant": f.invariant,
        })).collect::<Vec<_>>(),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Group,
    Chartable,
    Poincare,
    Verify,
    Forms,
}

pub fn document(a: &Analysis, kind: Kind) -> Result<Document> {
    let mut d = Document::bare(a);
    d.classes = Some(classes(a));
    match kind {
        Kind::Group => d.group = Some(group_info(a)),
        Kind::Chartable => d.characters = Some(characters(a)),
        Kind::Poincare => d.poincare = Some(poincare(a)?),
        Kind::Forms => d.forms = Some(forms_value(a)?),
        Kind::Verify => {
            d.characters = Some(characters(a));
            d.poincare = poincare(a).ok();
            let report = verify_analysis(a);
            d.passed = Some(report.passed);
            d.checks = Some(report.checks);
        }
    }
    Ok(d)
}

/// Builds each type on its own thread; results come back in input order.
pub fn documents(cfg: &Config, kind: Kind) -> Vec<(GroupType, Result<Document>)> {
    std::thread::scope(|s| {
        let handles: Vec<_> = cfg
            .types
            .iter()
            .map(|&t| {
                let opts = cfg.build.clone();
                s.spawn(move || (t, Analysis::build(t, &opts).and_then(|a| document(&a, kind))))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

fn failed_document(t: GroupType, e: &Error) -> Document {
    Document {
        gtype: t.label(),
        triple: t.triple(),
        order: 0,
        group: None,
        classes: None,
        characters: None,
        poincare: None,
        forms: None,
        passed: Some(false),
        checks: Some(vec![Check::new("build", false, json!({ "error": e.to_string() }))]),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn join_ints(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn render_list(format: Format) -> String {
    let cat = GroupType::catalog();
    match format {
        Format::Json => to_json(
            &cat.iter()
                .map(|t| json!({ "type": t.label(), "triple": t.triple(), "symbol": t.triple_label(), "order": t.predicted_order() }))
                .collect::<Vec<_>>(),
        ),
        Format::Csv => csv_string(
            &["type", "symbol", "order"],
            cat.iter()
                .map(|t| vec![t.label(), t.triple_label(), t.predicted_order().to_string()])
                .collect(),
        ),
        Format::Text => cat.iter().fold(String::new(), |mut s, t| {
            let _ = writeln!(s, "{:<4} {:<10} order {}", t.label(), t.triple_label(), t.predicted_order());
            s
        }),
    }
}

fn text_document(d: &Document, kind: Kind) -> String {
    let mut s = String::new();
    let triple = d.triple.map_or_else(String::new, |t| format!(" <{},{},{}>", t[0], t[1], t[2]));
    let _ = writeln!(s, "{}{} order {}", d.gtype, triple, d.order);
    let node = |n: &Option<String>| n.clone().unwrap_or_else(|| "?".into());
    match kind {
        Kind::Group => {
            if let Some(g) = &d.group {
                let _ = writeln!(s, "conductor {}", g["conductor"]);
                for gen in g["generators"].as_array().into_iter().flatten() {
                    let _ = writeln!(s, "{} order {}", gen["name"].as_str().unwrap_or(""), gen["order"]);
                }
                let r = &g["reflection_group"];
                let _ = writeln!(
                    s,
                    "reflection group order {} reflections {} degrees {}",
                    r["order"], r["reflections"], r["degrees"]
                );
            }
            let _ = writeln!(s, "{:>3} {:>5} {:>5} {:>4}  rep", "id", "size", "order", "node");
            for c in d.classes.iter().flatten() {
                let _ = writeln!(s, "{:>3} {:>5} {:>5} {:>4}  {}", c.id, c.size, c.order, node(&c.node), c.rep_word);
            }
        }
        Kind::Chartable => {
            let cols: Vec<String> = d.classes.iter().flatten().map(|c| node(&c.node)).collect();
            let _ = writeln!(s, "classes: {}", cols.join(" "));
            for ch in d.characters.iter().flatten() {
                let _ = writeln!(s, "chi_{} (degree {})", node(&ch.node), ch.degree);
                for ((col, v), ap) in cols.iter().zip(&ch.values).zip(&ch.approx) {
                    let _ = writeln!(s, "  {:>4}: {} ~ {} + {}i", col, v, round12(ap[0]), round12(ap[1]));
                }
            }
        }
        Kind::Poincare => {
            for p in d.poincare.iter().flatten() {
                let poly = UniPoly::from_ints(&p.coeffs);
                let center = p.center.map_or_else(|| "-".into(), |h| h.to_string());
                let _ = writeln!(s, "P_{}(t) = {}", p.node, poly);
                match (&p.plus, &p.minus) {
                    (Some(a), Some(b)) => {
                        let _ = writeln!(
                            s,
                            "  center {center}  plus {}  minus {}",
                            UniPoly::from_ints(a),
                            UniPoly::from_ints(b)
                        );
                    }
                    _ => {
                        let _ = writeln!(s, "  center {center}  split ambiguous");
                    }
                }
            }
        }
        Kind::Verify => {
            for c in d.checks.iter().flatten() {
                let _ = writeln!(s, "  {} {}", if c.passed() { "PASS" } else { "FAIL" }, c.name);
            }
            let _ = writeln!(s, "  {}", if d.passed == Some(true) { "passed" } else { "failed" });
        }
        Kind::Forms => {
            if let Some(f) = &d.forms {
                for o in f["orbits"].as_array().into_iter().flatten() {
                    let _ = writeln!(
                        s,
                        "f_{}: orbit size {}, degree {}, doubled {}, relative invariant {}",
                        o["branch"].as_str().unwrap_or(""),
                        o["orbit_size"],
                        o["degree"],
                        o["doubled"],
                        o["relative_invariant"]
                    );
                }
                let k = &f["klein_identity"];
                let _ = writeln!(s, "degree identity: lhs {} holds {}", k["lhs"], k["holds"]);
                let j = &f["jacobian"];
                let _ = writeln!(
                    s,
                    "jacobian degree {} factorizes: {}",
                    j["degree"],
                    !j["constant"].is_null()
                );
                for inv in f["absolute_invariants"].as_array().into_iter().flatten() {
                    let _ = writeln!(s, "absolute invariant exponents {} degree {}", inv["exponents"], inv["degree"]);
                }
            }
        }
    }
    s
}

fn csv_documents(docs: &[Document], kind: Kind) -> String {
    let node = |n: &Option<String>| n.clone().unwrap_or_default();
    match kind {
        Kind::Group => csv_string(
            &["type", "id", "size", "order", "node", "rep_word"],
            docs.iter()
                .flat_map(|d| {
                    d.classes.iter().flatten().map(move |c| {
                        vec![d.gtype.clone(), c.id.to_string(), c.size.to_string(), c.order.to_string(), node(&c.node), c.rep_word.clone()]
                    })
                })
                .collect(),
        ),
        Kind::Chartable => csv_string(
            &["type", "character", "degree", "class", "exact", "re", "im"],
            docs.iter()
                .flat_map(|d| {
                    let cols: Vec<String> = d.classes.iter().flatten().map(|c| node(&c.node)).collect();
                    d.characters.iter().flatten().flat_map(move |ch| {
                        let cols = cols.clone();
                        ch.values.iter().zip(&ch.approx).zip(cols).map(move |((v, ap), col)| {
                            vec![
                                d.gtype.clone(),
                                node(&ch.node),
                                ch.degree.to_string(),
                                col,
                                v.to_string(),
                                round12(ap[0]),
                                round12(ap[1]),
                            ]
                        })
                    })
                })
                .collect(),
        ),
        Kind::Poincare => csv_string(
            &["type", "node", "coeffs", "center", "plus", "minus"],
            docs.iter()
                .flat_map(|d| {
                    d.poincare.iter().flatten().map(move |p| {
                        vec![
                            d.gtype.clone(),
                            p.node.clone(),
                            join_ints(&p.coeffs),
                            p.center.map(|h| h.to_string()).unwrap_or_default(),
                            p.plus.as_deref().map(join_ints).unwrap_or_default(),
                            p.minus.as_deref().map(join_ints).unwrap_or_default(),
                        ]
                    })
                })
                .collect(),
        ),
        Kind::Verify => csv_string(
            &["type", "check", "status"],
            docs.iter()
                .flat_map(|d| {
                    d.checks.iter().flatten().map(move |c| {
                        vec![d.gtype.clone(), c.name.clone(), if c.passed() { "pass" } else { "fail" }.into()]
                    })
                })
                .collect(),
        ),
        Kind::Forms => csv_string(
            &["type", "branch", "orbit_size", "degree", "relative_invariant"],
            docs.iter()
                .flat_map(|d| {
                    d.forms
                        .iter()
                        .flat_map(|f| f["orbits"].as_array().cloned().unwrap_or_default())
                        .map(move |o| {
                            vec![
                                d.gtype.clone(),
                                o["branch"].as_str().unwrap_or("").to_string(),
                                o["orbit_size"].to_string(),
                                o["degree"].to_string(),
                                o["relative_invariant"].to_string(),
                            ]
                        })
                })
                .collect(),
        ),
    }
}

/// Output text and exit status for a type-selecting command.
pub fn render(cfg: &Config, kind: Kind) -> (String, i32) {
    let results = documents(cfg, kind);
    let mut status = EXIT_OK;
    let mut docs = Vec::new();
    let mut errors = String::new();
    for (t, r) in results {
        match r {
            Ok(d) => docs.push(d),
            Err(e) => {
                status = EXIT_FAILED;
                let _ = writeln!(errors, "{t}: {e}");
                if kind == Kind::Verify {
                    docs.push(failed_document(t, &e));
                }
            }
        }
    }
    let passed = docs.iter().all(|d| d.passed != Some(false));
    if kind == Kind::Verify && !passed {
        status = EXIT_FAILED;
    }
    let body = match cfg.format {
        Format::Json => match (kind, cfg.all) {
            (Kind::Verify, true) => to_json(&json!({ "passed": passed && status == EXIT_OK, "reports": docs })),
            (_, true) => to_json(&docs),
            (_, false) => docs.first().map(to_json).unwrap_or_default(),
        },
        Format::Csv => csv_documents(&docs, kind),
        Format::Text => docs.iter().map(|d| text_document(d, kind)).collect::<Vec<_>>().join("\n"),
    };
    if !errors.is_empty() {
        eprint!("{errors}");
    }
    (body, status)
}

fn emit(text: &str, out: &Option<PathBuf>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

/// Runs a parsed command and returns the process exit status.
pub fn run(cli: Cli) -> i32 {
    let (text, status, out) = match &cli.command {
        Command::List(o) => (render_list(o.format), EXIT_OK, o.output.clone()),
        Command::Group(a) => with(a, Kind::Group),
        Command::Chartable(a) => with(a, Kind::Chartable),
        Command::Poincare(a) => with(a, Kind::Poincare),
        Command::Verify(a) => with(a, Kind::Verify),
        Command::Forms(a) => with(a, Kind::Forms),
    };
    if let Err(e) = emit(&text, &out) {
        eprintln!("cannot write output: {e}");
        return EXIT_FAILED;
    }
    status
}

fn with(a: &TypeArgs, kind: Kind) -> (String, i32, Option<PathBuf>) {
    let (text, status) = render(&a.config(), kind);
    (text, status, a.out.output.clone())
}
