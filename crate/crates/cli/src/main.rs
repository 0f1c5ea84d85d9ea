//! `hhd`: decide homomorphism-homogeneity of finite reflexive digraphs.
//!
//! Exit status: 0 HH / true / all checks agree, 1 NOT_HH / false /
//! disagreement, 2 input or parse error, 3 size guard exceeded,
//! 4 `classify` needs the oracle (bidirectionally connected input).

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hh_core::census::{crossvalidate, tournaments_with_involution, CensusReport, WitnessMode};
use hh_core::classifier::{classify, classify_with_witness, Classification, Family, Tag, Verdict};
use hh_core::format::{parse_digraph, serialize_digraph, DigraphFile};
use hh_core::gadget::{all_graphs, build_gk, verify_equivalence, EquivalenceReport};
use hh_core::gen::{parse_expression, random_hh_instance, HhFamily};
use hh_core::involution::TwiClass;
use hh_core::oracle::{arrow_witness, is_hh_bruteforce, Witness};
use hh_core::posets::PosetHHReason;
use hh_core::structure::{quotient, theta_classes, twin_partition};
use hh_core::{Digraph, HhError, Partition};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "hhd",
    version,
    about = "Homomorphism-homogeneity of finite reflexive digraphs"
)]
struct Cli {
    /// Add a loop at every vertex of every input digraph.
    #[arg(long, global = true)]
    reflexive_closure: bool,
    /// Worker threads for the census.
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,
    /// Keep every NOT_HH witness in census reports, or only a sample.
    #[arg(long, global = true, value_enum, default_value_t = WitnessArg::Sample)]
    witness: WitnessArg,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessArg {
    Full,
    Sample,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Alpha,
    Zeta,
    C3One,
    Poset,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuotientBy {
    Twin,
    Theta,
}

#[derive(Subcommand)]
enum Command {
    /// Structural verdict for a reflexive digraph.
    Classify {
        file: Option<String>,
        /// Run the exhaustive oracle when the classifier cannot decide.
        #[arg(long)]
        oracle_fallback: bool,
    },
    /// Exhaustive verdict with a refutation for NOT_HH.
    Oracle { file: Option<String> },
    /// Whether every partial homomorphism from the first digraph into the
    /// second extends.
    Arrow { source: String, target: String },
    /// The independent-set gadget G_k.
    Gadget {
        #[command(subcommand)]
        action: GadgetAction,
    },
    /// Cross-check the classifier and cone criterion against the oracle
    /// on every reflexive digraph with `n` vertices.
    Census {
        #[arg(long)]
        n: usize,
        /// Enumerate tournaments with involution instead.
        #[arg(long)]
        twi: bool,
    },
    /// Collapse a reflexive digraph along its twin classes or θ-classes.
    Quotient {
        file: Option<String>,
        #[arg(long, value_enum, default_value_t = QuotientBy::Twin)]
        by: QuotientBy,
    },
    /// Emit a digraph: `alpha 3`, `zeta4`, `c3`, `one`, `k 4`, `chain 3`,
    /// sums `a + b`, multiples `2*c3`, `inflate(alpha 2; 2,1,1,2)`.
    Gen(GenArgs),
}

#[derive(Subcommand)]
enum GadgetAction {
    /// Write G_k for a loopless symmetric graph.
    Build {
        #[arg(long)]
        k: usize,
        file: Option<String>,
    },
    /// Compare "G has a k-independent set" with "G_k is NOT_HH".
    Verify {
        #[arg(long)]
        k: usize,
        /// Check every labeled graph on at most this many vertices.
        #[arg(long, value_name = "N", conflicts_with = "file")]
        sweep: Option<usize>,
        file: Option<String>,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Random HH instance of the given family instead of an expression.
    #[arg(long, value_enum, conflicts_with = "expr")]
    random: Option<FamilyArg>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    expr: Vec<String>,
}

enum Failure {
    Input(String),
    Capability(String),
}

impl From<HhError> for Failure {
    fn from(e: HhError) -> Self {
        match e {
            HhError::Capability(_) => Failure::Capability(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

/// Ordered key-value report; text mode prints one `key value` line each.
struct Report {
    format: FormatArg,
    fields: Vec<(&'static str, Value)>,
}

impl Report {
    fn new(format: FormatArg) -> Self {
        Report {
            format,
            fields: Vec::new(),
        }
    }

    fn put(&mut self, key: &'static str, value: impl Into<Value>) {
        self.fields.push((key, value.into()));
    }

    fn print(&self) {
        match self.format {
            FormatArg::Machine => {
                let map: serde_json::Map<String, Value> = self
                    .fields
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.clone()))
                    .collect();
                emit(&format!("{}\n", Value::Object(map)));
            }
            FormatArg::Text => {
                for (k, v) in &self.fields {
                    emit(&format!("{k} {}\n", text(v)));
                }
            }
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(|item| match item {
                Value::Array(inner) => inner.iter().map(text).collect::<Vec<_>>().join(","),
                other => text(other),
            })
            .collect::<Vec<_>>()
            .join(" "),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", text(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn read_input(path: Option<&str>) -> Result<String, Failure> {
    match path {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            Ok(s)
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{p}: {e}"))),
    }
}

fn load(path: Option<&str>, closure: bool) -> Result<DigraphFile, Failure> {
    Ok(parse_digraph(&read_input(path)?, closure)?)
}

fn witness_value(w: &Witness) -> Value {
    let map: Vec<Value> = w.hom.pairs().iter().map(|&(u, v)| json!([u, v])).collect();
    json!({ "map": map, "vertex": w.vertex })
}

fn witness_text(w: &Witness) -> String {
    let map: Vec<String> = w
        .hom
        .pairs()
        .iter()
        .map(|(u, v)| format!("{u}->{v}"))
        .collect();
    format!("{} | {}", map.join(","), w.vertex)
}

fn witness_field(format: FormatArg, w: &Witness) -> Value {
    match format {
        FormatArg::Machine => witness_value(w),
        FormatArg::Text => Value::String(witness_text(w)),
    }
}

fn blocks(p: &Partition) -> Vec<Value> {
    p.blocks()
        .iter()
        .map(|b| {
            Value::String(format!(
                "{{{}}}",
                b.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ))
        })
        .collect()
}

fn edges(d: &Digraph) -> Vec<Value> {
    d.edges().map(|(u, v)| json!([u, v])).collect()
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Hh => "HH",
        Verdict::NotHh => "NOT_HH",
        Verdict::OracleRequired => "ORACLE_REQUIRED",
    }
}

fn tag_name(t: Tag) -> &'static str {
    match t {
        Tag::Quasiorder => "QUASIORDER",
        Tag::C3OneInflation => "C3_ONE_INFLATION",
        Tag::DwiInflation => "DWI_INFLATION",
        Tag::None => "NONE",
    }
}

fn reason_name(r: PosetHHReason) -> &'static str {
    match r {
        PosetHHReason::ChainComponents => "CHAIN_COMPONENTS",
        PosetHHReason::Tree => "TREE",
        PosetHHReason::DualTree => "DUAL_TREE",
        PosetHHReason::Split => "SPLIT",
        PosetHHReason::Lattice => "LATTICE",
        PosetHHReason::None => "NONE",
    }
}

fn twi_name(c: &TwiClass) -> String {
    match c {
        TwiClass::Alpha(n) => format!("alpha{n}"),
        TwiClass::Zeta4 => "zeta4".into(),
        TwiClass::NotHh => "not_hh".into(),
    }
}

fn family_value(f: &Family) -> Value {
    match f {
        Family::Quasiorder(r) => json!(["quasiorder", reason_name(*r)]),
        Family::C3One { k, l } => json!(["c3_one", format!("k={k}"), format!("l={l}")]),
        Family::Dwi(classes) => {
            let mut v = vec![Value::String("dwi".into())];
            v.extend(classes.iter().map(|c| Value::String(twi_name(c))));
            Value::Array(v)
        }
    }
}

fn classification_report(format: FormatArg, c: &Classification) -> Report {
    let mut r = Report::new(format);
    r.put("verdict", verdict_name(c.verdict));
    r.put("tag", tag_name(c.tag));
    if let Some(cert) = &c.certificate {
        r.put("family", family_value(&cert.family));
        r.put("quotient_vertices", cert.quotient.vertex_count());
        r.put("quotient_edges", edges(&cert.quotient));
        r.put("partition", blocks(&cert.partition));
        r.put("retraction", cert.retraction.clone());
        r.put("injection", cert.injection.clone());
    }
    if let Some(w) = &c.witness {
        r.put("witness", witness_field(format, w));
    }
    r
}

fn verdict_code(hh: bool) -> u8 {
    if hh {
        0
    } else {
        1
    }
}

fn run_classify(cli: &Cli, file: Option<&str>, fallback: bool) -> Outcome {
    let d = load(file, cli.reflexive_closure)?.digraph;
    let c = classify_with_witness(&d)?;
    if c.verdict == Verdict::OracleRequired && fallback {
        let v = is_hh_bruteforce(&d)?;
        let mut r = classification_report(cli.format, &classify(&d)?);
        r.put("oracle", if v.is_hh() { "HH" } else { "NOT_HH" });
        if let Some(w) = &v.witness {
            r.put("witness", witness_field(cli.format, w));
        }
        r.print();
        return Ok(verdict_code(v.is_hh()));
    }
    classification_report(cli.format, &c).print();
    Ok(match c.verdict {
        Verdict::Hh => 0,
        Verdict::NotHh => 1,
        Verdict::OracleRequired => 4,
    })
}

fn run_oracle(cli: &Cli, file: Option<&str>) -> Outcome {
    let d = load(file, cli.reflexive_closure)?.digraph;
    let v = is_hh_bruteforce(&d)?;
    let mut r = Report::new(cli.format);
    r.put("verdict", if v.is_hh() { "HH" } else { "NOT_HH" });
    if let Some(w) = &v.witness {
        r.put("witness", witness_field(cli.format, w));
    }
    r.print();
    Ok(verdict_code(v.is_hh()))
}

fn run_arrow(cli: &Cli, source: &str, target: &str) -> Outcome {
    if source == "-" && target == "-" {
        return Err(Failure::Input(
            "only one of the two digraphs can come from stdin".into(),
        ));
    }
    let d1 = load(Some(source), cli.reflexive_closure)?.digraph;
    let d2 = load(Some(target), cli.reflexive_closure)?.digraph;
    let w = arrow_witness(&d1, &d2)?;
    let mut r = Report::new(cli.format);
    r.put("arrow", w.is_none());
    if let Some(w) = &w {
        r.put("witness", witness_field(cli.format, w));
    }
    r.print();
    Ok(verdict_code(w.is_none()))
}

fn equivalence_value(g: &Digraph, e: &EquivalenceReport) -> Value {
    json!({
        "graph_vertices": g.vertex_count(),
        "graph_edges": edges(g).into_iter().filter(|p| p[0].as_u64() < p[1].as_u64()).collect::<Vec<_>>(),
        "max_independent": e.max_independent,
        "has_k_independent": e.has_k_independent,
        "gadget_hh": e.gadget_hh,
        "forward_witness_ok": e.forward_witness_ok,
        "agree": e.agree,
    })
}

fn run_gadget(cli: &Cli, action: &GadgetAction) -> Outcome {
    match action {
        GadgetAction::Build { k, file } => {
            let g = load(file.as_deref(), false)?.digraph;
            let layout = build_gk(&g, *k)?;
            let mut out = DigraphFile::new(layout.digraph.clone());
            out.name = Some(format!("G_{k}"));
            out.ranges = vec![
                ("V".into(), layout.v.clone()),
                ("I".into(), layout.i.clone()),
                ("S".into(), layout.s.clone()),
            ];
            emit(&serialize_digraph(&out));
            Ok(0)
        }
        GadgetAction::Verify { k, sweep, file } => {
            let graphs = match sweep {
                Some(n) => (0..=*n).flat_map(all_graphs).collect(),
                None => vec![load(file.as_deref(), false)?.digraph],
            };
            let mut agree = 0;
            let mut rows = Vec::new();
            for g in &graphs {
                let e = verify_equivalence(g, *k)?;
                if e.agree {
                    agree += 1;
                }
                rows.push(equivalence_value(g, &e));
            }
            let mut r = Report::new(cli.format);
            r.put("k", *k);
            r.put("graphs", graphs.len());
            r.put("agree", agree);
            match cli.format {
                FormatArg::Machine => r.put("results", rows),
                FormatArg::Text => {
                    for row in rows {
                        r.put("result", row);
                    }
                }
            }
            r.print();
            Ok(verdict_code(agree == graphs.len()))
        }
    }
}

fn census_report(cli: &Cli, report: &CensusReport) -> Report {
    let mut r = Report::new(cli.format);
    let c = &report.counts;
    r.put("n", report.n);
    r.put("total", report.total);
    r.put("hh_quasiorder", c.hh_quasiorder);
    r.put("hh_c3_one", c.hh_c3_one);
    r.put("hh_dwi", c.hh_dwi);
    r.put("not_hh", c.not_hh);
    r.put("connected_improper_hh", c.connected_improper_hh);
    r.put("connected_improper_not_hh", c.connected_improper_not_hh);
    r.put("connected_other_hh", c.connected_other_hh);
    r.put("connected_other_not_hh", c.connected_other_not_hh);
    r.put("disagreements", report.disagreements.len());
    for d in &report.disagreements {
        r.put(
            "disagreement",
            json!({ "edges": edges(&d.digraph), "check": format!("{:?}", d.check), "oracle_hh": d.oracle_hh }),
        );
    }
    let ws: Vec<Value> = report
        .witnesses
        .iter()
        .map(|(d, w)| json!({ "n": d.vertex_count(), "edges": edges(d), "witness": witness_value(w) }))
        .collect();
    match cli.format {
        FormatArg::Machine => r.put("witnesses", ws),
        FormatArg::Text => {
            for (d, w) in &report.witnesses {
                let e: Vec<String> = d
                    .edges()
                    .filter(|(u, v)| u != v)
                    .map(|(u, v)| format!("{u}>{v}"))
                    .collect();
                r.put(
                    "witness",
                    format!(
                        "n={} edges={} | {}",
                        d.vertex_count(),
                        e.join(","),
                        witness_text(w)
                    ),
                );
            }
        }
    }
    r
}

fn run_census(cli: &Cli, n: usize, twi: bool) -> Outcome {
    if twi {
        let census = tournaments_with_involution(n)?;
        let mut r = Report::new(cli.format);
        r.put("n", n);
        r.put("labeled", census.labeled);
        r.put("classes", census.classes.len());
        for (d, class) in &census.classes {
            r.put(
                "class",
                json!({ "type": twi_name(class), "edges": edges(d) }),
            );
        }
        r.print();
        return Ok(0);
    }
    let mode = match cli.witness {
        WitnessArg::Full => WitnessMode::Full,
        WitnessArg::Sample => WitnessMode::Sample(5),
    };
    let report = crossvalidate(n, mode)?;
    census_report(cli, &report).print();
    Ok(verdict_code(report.disagreements.is_empty()))
}

fn run_quotient(cli: &Cli, file: Option<&str>, by: QuotientBy) -> Outcome {
    let d = load(file, cli.reflexive_closure)?.digraph;
    let partition = match by {
        QuotientBy::Twin => twin_partition(&d)?,
        QuotientBy::Theta => theta_classes(&d),
    };
    let q = quotient(&d, &partition)?;
    match cli.format {
        FormatArg::Text => {
            emit(&serialize_digraph(&DigraphFile::new(q.digraph.clone())));
            emit(&format!(
                "# partition {}\n",
                text(&Value::Array(blocks(&partition)))
            ));
            emit(&format!("# retraction {}\n", text(&json!(q.retraction))));
            emit(&format!("# injection {}\n", text(&json!(q.injection))));
        }
        FormatArg::Machine => {
            let mut r = Report::new(cli.format);
            r.put("n", q.digraph.vertex_count());
            r.put("edges", edges(&q.digraph));
            r.put("partition", blocks(&partition));
            r.put("retraction", q.retraction.clone());
            r.put("injection", q.injection.clone());
            r.print();
        }
    }
    Ok(0)
}

fn run_gen(cli: &Cli, args: &GenArgs) -> Outcome {
    let (d, name) = match args.random {
        Some(f) => {
            let family = match f {
                FamilyArg::Alpha => HhFamily::AlphaMix,
                FamilyArg::Zeta => HhFamily::ZetaMix,
                FamilyArg::C3One => HhFamily::C3OneMix,
                FamilyArg::Poset => HhFamily::Poset,
            };
            let mut rng = StdRng::seed_from_u64(args.seed);
            (random_hh_instance(&mut rng, family), None)
        }
        None => {
            let expr = args.expr.join(" ");
            if expr.trim().is_empty() {
                return Err(Failure::Input("gen needs an expression or --random".into()));
            }
            (parse_expression(&expr)?, Some(expr))
        }
    };
    let d = if cli.reflexive_closure {
        d.reflexive_closure()
    } else {
        d
    };
    let mut out = DigraphFile::new(d);
    out.name = name;
    emit(&serialize_digraph(&out));
    Ok(0)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify {
            file,
            oracle_fallback,
        } => run_classify(cli, file.as_deref(), *oracle_fallback),
        Command::Oracle { file } => run_oracle(cli, file.as_deref()),
        Command::Arrow { source, target } => run_arrow(cli, source, target),
        Command::Gadget { action } => run_gadget(cli, action),
        Command::Census { n, twi } => run_census(cli, *n, *twi),
        Command::Quotient { file, by } => run_quotient(cli, file.as_deref(), *by),
        Command::Gen(args) => run_gen(cli, args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(k) = cli.jobs {
        if k == 0 {
            eprintln!("error: --jobs needs at least one thread");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Capability(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
