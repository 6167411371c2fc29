//! `qhom`: quandle homology from the command line.
//!
//! Exit codes: 0 computed, 2 computed with an OBSTRUCTED/EXCLUDED finding,
//! 1 input error.

use std::collections::HashMap;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use quandle_homology::applications::{
    fmt_class, fmt_map, four_move_bound, periodicity_candidates, tangle_obstruction, Mode, PeriodStatus, Verdict,
};
use quandle_homology::coloring::{
    coloring_cycle, enumerate_boundary_mono, enumerate_colorings, shadow_colorings, shadow_cycle, tangle_class,
    tangle_shadow_class, ClassJson, ColoringRecord,
};
use quandle_homology::diagram::Diagram;
use quandle_homology::fixtures;
use quandle_homology::homology::{homology_group, Chain, HomologyPresentation, Theory};
use quandle_homology::quandle::{verify_axioms, Quandle, QuandleFile};
use quandle_homology::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "qhom", version, about = "Quandle homology of finite quandles and colored link diagrams")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct QuandleArg {
    /// Built-in dihedral quandle R2..R30, or a quandle JSON file.
    #[arg(long, short)]
    quandle: String,
}

#[derive(Args, Debug)]
struct ModeArg {
    /// plain (degree-2 classes) or shadow (degree-3 classes).
    #[arg(long, default_value = "plain")]
    mode: Mode,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the three quandle axioms on a table.
    QuandleVerify {
        #[command(flatten)]
        q: QuandleArg,
    },
    /// Rack, degenerate or quandle homology group; optionally reduce a chain.
    Homology {
        #[command(flatten)]
        q: QuandleArg,
        #[arg(long, default_value = "quandle")]
        theory: Theory,
        #[arg(long)]
        degree: usize,
        /// Chain file (one `<coeff> (x1,...,xn)` term per line) to reduce.
        #[arg(long)]
        chain: Option<String>,
    },
    /// Enumerate (shadow) colorings of a diagram with their homology classes.
    /// Tangles list their boundary-monochromatic colorings.
    Colorings {
        #[command(flatten)]
        q: QuandleArg,
        /// Diagram JSON file, or `@name` for a bundled fixture.
        #[arg(long, short)]
        diagram: String,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Homology class of a cycle given in the chain text format.
    Class {
        #[command(flatten)]
        q: QuandleArg,
        #[arg(long)]
        chain: String,
        #[arg(long, default_value = "quandle")]
        theory: Theory,
    },
    /// Can the tangle embed in the link?
    TangleObstruction {
        #[command(flatten)]
        q: QuandleArg,
        #[arg(long, short)]
        tangle: String,
        #[arg(long, short)]
        link: String,
        #[command(flatten)]
        mode: ModeArg,
    },
    /// Lower bound for the 4-move distance between two links (quandle R4).
    FourMoveBound {
        /// Exactly two link diagrams.
        #[arg(long, short, num_args = 1, required = true)]
        link: Vec<String>,
    },
    /// Primes excluded as periods of a link by coloring-class counts.
    Periodicity {
        #[command(flatten)]
        q: QuandleArg,
        #[arg(long, short)]
        diagram: String,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        mode: ModeArg,
    },
}

/// Exit status of a completed report.
#[derive(PartialEq, Eq)]
enum Outcome {
    Clean,
    Finding,
    Rejected,
}

struct Output {
    text: String,
    json: Value,
    outcome: Outcome,
}

impl Output {
    fn clean(text: String, json: Value) -> Self {
        Output { text, json, outcome: Outcome::Clean }
    }
}

fn load_quandle(arg: &str) -> Result<Quandle> {
    if let Some(n) = arg.strip_prefix('R').and_then(|s| s.parse::<usize>().ok()) {
        if !Path::new(arg).exists() {
            if !(2..=30).contains(&n) {
                return Err(Error::Parse(format!("built-in quandles are R2..R30, got {arg}")));
            }
            return Ok(Quandle::dihedral(n)?.with_name(arg));
        }
    }
    Quandle::from_json(&read(arg)?)
}

fn load_diagram(arg: &str) -> Result<Diagram> {
    if let Some(name) = arg.strip_prefix('@') {
        return fixtures::by_name(name).ok_or_else(|| Error::Parse(format!("no bundled diagram named {name}")));
    }
    Diagram::from_json(&read(arg)?)
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

/// Presentations computed in this invocation, keyed by quandle table, theory and degree.
#[derive(Default)]
struct Cache {
    groups: HashMap<(Vec<Vec<usize>>, Theory, usize), HomologyPresentation>,
}

impl Cache {
    fn get(&mut self, q: &Quandle, theory: Theory, degree: usize) -> Result<&HomologyPresentation> {
        let key = (q.table_rows(), theory, degree);
        if !self.groups.contains_key(&key) {
            let pres = homology_group(q, theory, degree)?;
            self.groups.insert(key.clone(), pres);
        }
        Ok(&self.groups[&key])
    }
}

fn class_json(c: &quandle_homology::homology::HomologyClass) -> Value {
    serde_json::to_value(ClassJson::from(c)).expect("class serializes")
}

fn order_text(c: &quandle_homology::homology::HomologyClass) -> String {
    c.order().map_or_else(|| "infinite".to_string(), |o| o.to_string())
}

fn run(cli: Cli) -> Result<Output> {
    let mut cache = Cache::default();
    match cli.command {
        Command::QuandleVerify { q } => {
            let (name, table) = match q.quandle.strip_prefix('R').and_then(|s| s.parse::<usize>().ok()) {
                Some(_) if !Path::new(&q.quandle).exists() => {
                    let quandle = load_quandle(&q.quandle)?;
                    (q.quandle.clone(), quandle.table_rows())
                }
                _ => {
                    let file = QuandleFile::parse(&read(&q.quandle)?)?;
                    (file.name, file.table)
                }
            };
            let report = verify_axioms(&table)?;
            let mut text = format!("quandle {name} (order {}): ", table.len());
            if report.passed {
                text.push_str("all three axioms hold\n");
            } else {
                text.push_str("NOT a quandle\n");
                for v in &report.violations {
                    text.push_str(&format!("  axiom {} fails at {:?}\n", v.axiom, v.witness));
                }
            }
            let json = json!({
                "name": name,
                "order": table.len(),
                "passed": report.passed,
                "violations": report.violations.iter().map(|v| json!({"axiom": v.axiom, "witness": v.witness})).collect::<Vec<_>>(),
            });
            if !report.passed {
                eprintln!("error: {name} violates the quandle axioms");
                return Ok(Output { text, json, outcome: Outcome::Rejected });
            }
            Ok(Output::clean(text, json))
        }
        Command::Homology { q, theory, degree, chain } => {
            let quandle = load_quandle(&q.quandle)?;
            let z = chain.map(|p| read(&p).and_then(|t| Chain::parse(&t))).transpose()?;
            let pres = cache.get(&quandle, theory, degree)?;
            let mut text = format!("{pres}\n");
            let mut json = json!({
                "quandle": quandle.name(),
                "theory": theory.to_string(),
                "degree": degree,
                "group": pres.to_string(),
                "free_rank": pres.free_rank(),
                "torsion": pres.torsion().iter().map(|d| d.to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::String(d.to_string()))).collect::<Vec<_>>(),
            });
            if let Some(z) = z {
                if z.degree() != degree {
                    return Err(Error::DegreeMismatch { expected: degree, found: z.degree() });
                }
                let c = pres.reduce_cycle(&z)?;
                text.push_str(&format!("class: {}\norder: {}\n", fmt_class(&ClassJson::from(&c)), order_text(&c)));
                json["class"] = class_json(&c);
                json["order"] = Value::String(order_text(&c));
            }
            Ok(Output::clean(text, json))
        }
        Command::Class { q, chain, theory } => {
            let quandle = load_quandle(&q.quandle)?;
            let z = Chain::parse(&read(&chain)?)?;
            let pres = cache.get(&quandle, theory, z.degree())?;
            let c = pres.reduce_cycle(&z)?;
            let text = format!(
                "group: {pres}\nclass: {}\norder: {}\nzero: {}\n",
                fmt_class(&ClassJson::from(&c)),
                order_text(&c),
                c.is_zero()
            );
            let json = json!({
                "group": pres.to_string(),
                "degree": z.degree(),
                "class": class_json(&c),
                "order": order_text(&c),
                "zero": c.is_zero(),
            });
            Ok(Output::clean(text, json))
        }
        Command::Colorings { q, diagram, mode } => {
            let quandle = load_quandle(&q.quandle)?;
            let d = load_diagram(&diagram)?;
            let mode = mode.mode;
            let pres = cache.get(&quandle, Theory::Quandle, mode.degree())?;
            let colorings = if d.is_tangle() { enumerate_boundary_mono(&d, &quandle)? } else { enumerate_colorings(&d, &quandle) };
            let mut records = Vec::new();
            for c in &colorings {
                match mode {
                    Mode::Plain => {
                        let class = if d.is_tangle() {
                            tangle_class(&d, &quandle, c, pres)?
                        } else {
                            pres.reduce_cycle(&coloring_cycle(&d, &quandle, c)?)?
                        };
                        records.push(ColoringRecord::plain(&d, c, Some(&class)));
                    }
                    Mode::Shadow => {
                        for s in shadow_colorings(&d, &quandle, c)? {
                            let class = if d.is_tangle() {
                                tangle_shadow_class(&d, &quandle, &s, pres)?
                            } else {
                                pres.reduce_cycle(&shadow_cycle(&d, &quandle, &s)?)?
                            };
                            records.push(ColoringRecord::shadow(&d, &s, Some(&class)));
                        }
                    }
                }
            }
            let what = match (d.is_tangle(), mode) {
                (false, Mode::Plain) => "colorings",
                (false, Mode::Shadow) => "shadow colorings",
                (true, Mode::Plain) => "boundary-monochromatic colorings",
                (true, Mode::Shadow) => "boundary-monochromatic shadow colorings",
            };
            let mut text = format!("quandle {} (order {}), homology {pres}\n{what}: {}\n", quandle.name(), quandle.order(), records.len());
            for r in &records {
                text.push_str(&format!("  arcs {}", fmt_map(&r.arcs)));
                if let Some(regions) = &r.regions {
                    text.push_str(&format!(" regions {}", fmt_map(regions)));
                }
                if let Some(c) = &r.class {
                    text.push_str(&format!(" class {}", fmt_class(c)));
                }
                text.push('\n');
            }
            let json = serde_json::to_value(&records)?;
            Ok(Output::clean(text, json))
        }
        Command::TangleObstruction { q, tangle, link, mode } => {
            let quandle = load_quandle(&q.quandle)?;
            let t = load_diagram(&tangle)?;
            let l = load_diagram(&link)?;
            if !t.is_tangle() {
                return Err(Error::InvalidDiagram(format!("{tangle} is not a tangle")));
            }
            if l.is_tangle() {
                return Err(Error::InvalidDiagram(format!("{link} is not a link")));
            }
            let report = tangle_obstruction(&t, &l, &quandle, mode.mode)?;
            let outcome = if report.verdict == Verdict::Obstructed { Outcome::Finding } else { Outcome::Clean };
            Ok(Output { text: report.to_string(), json: serde_json::to_value(&report)?, outcome })
        }
        Command::FourMoveBound { link } => {
            if link.len() != 2 {
                return Err(Error::Parse(format!("four-move-bound needs exactly two --link options, got {}", link.len())));
            }
            let l1 = load_diagram(&link[0])?;
            let l2 = load_diagram(&link[1])?;
            let report = four_move_bound(&l1, &l2)?;
            Ok(Output::clean(report.to_string(), serde_json::to_value(&report)?))
        }
        Command::Periodicity { q, diagram, primes, mode } => {
            let quandle = load_quandle(&q.quandle)?;
            let d = load_diagram(&diagram)?;
            let report = periodicity_candidates(&d, &quandle, mode.mode, &primes)?;
            let outcome = if report.primes.iter().any(|v| v.status == PeriodStatus::Excluded) { Outcome::Finding } else { Outcome::Clean };
            Ok(Output { text: report.to_string(), json: serde_json::to_value(&report)?, outcome })
        }
    }
}

fn print_output(out: &Output, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("report serializes"));
    } else {
        print!("{}", out.text);
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let as_json = cli.json;
    match run(cli) {
        Ok(out) => {
            print_output(&out, as_json);
            match out.outcome {
                Outcome::Clean => ExitCode::SUCCESS,
                Outcome::Finding => ExitCode::from(2),
                Outcome::Rejected => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
