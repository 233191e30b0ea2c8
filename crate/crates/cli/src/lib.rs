//! The `wss` command line: argument model, command execution and rendering.
//!
//! Every command produces a [`Rendered`] value holding both a JSON document
//! and a text rendering; `main` picks one, writes it and exits with the code
//! from [`exit_code`]. JSON objects come out with sorted keys and rationals
//! in lowest terms, so equal inputs give byte-identical output.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use wss_core::instances::{self, GeneratorSpec, Generated};
use wss_core::lefschetz::{threefold_suite, CheckRecord};
use wss_core::specseq::{
    build_e2, check_wmc, compare_monodromy_vs_weight, page_dump, render_grid, to_weight_complex,
    E2Page, WmcVerdict,
};
use wss_core::strata::{self, Axiom, SemistableDatum, ValidationReport};
use wss_core::Error;

/// Environment variable naming the default output directory.
pub const OUT_DIR_VAR: &str = "WSS_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "wss", version, about = "Weight spectral sequences of semistable degenerations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file; relative paths resolve against the default output
    /// directory when it is set.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Strict::CollectAll)]
    pub strict: Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strict {
    /// Stop reporting at the first failing check.
    FailFast,
    CollectAll,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the axioms of an instance.
    Validate {
        #[arg(long)]
        instance: PathBuf,
    },
    /// E1 grid with d1 and N, and the E2 dimensions.
    Pages {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        w: Vec<i64>,
    },
    /// `N^r : E2^{-r,w+r} -> E2^{r,w-r}` for all `r` and the selected `w`.
    CheckWmc {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        w: Vec<i64>,
    },
    /// Signature conditions, the intermediate claims, the key lemma and the
    /// middle-row cross-check for a threefold.
    CheckThreefold {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Write an instance file.
    Gen(GenArgs),
    /// Everything applicable, as one document.
    Report {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        w: Vec<i64>,
    },
}

#[derive(clap::Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: Option<GenKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub betti: Vec<usize>,
    /// Toy name.
    #[arg(long)]
    pub name: Option<String>,
    /// A generator specification in JSON.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Perturb the instance so that exactly this axiom fails.
    #[arg(long)]
    pub mutate: Option<u8>,
    /// Instance to mutate.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Smooth,
    Ngon,
    Chain,
    Toy,
}

/// Output of a command in both formats.
#[derive(Clone, Debug, PartialEq)]
pub struct Rendered {
    pub passed: bool,
    pub json: Value,
    pub text: String,
    /// Suggested file name under the default output directory.
    pub file_stem: String,
}

impl Rendered {
    pub fn body(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
        }
    }
}

/// `2` for unusable input, `3` when two computations that must agree do not.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) | Error::ConventionViolation { .. } => 3,
        _ => 2,
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into())
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn run(cli: &Cli) -> Result<Rendered, Error> {
    let fail_fast = cli.strict == Strict::FailFast;
    match &cli.command {
        Command::Validate { instance } => {
            let d = strata::load(instance)?;
            let report = strata::validate(&d)?;
            Ok(render_validation(&stem(instance), &report, fail_fast))
        }
        Command::Pages { instance, w } => {
            let d = strata::load(instance)?;
            pages(&stem(instance), &d, w)
        }
        Command::CheckWmc { instance, w } => {
            let d = strata::load(instance)?;
            let e2 = build_e2(&to_weight_complex(&d)?)?;
            Ok(render_wmc(&stem(instance), &check_wmc(&e2), w, fail_fast))
        }
        Command::CheckThreefold { instance } => {
            let d = strata::load(instance)?;
            threefold(&stem(instance), &d, fail_fast)
        }
        Command::Gen(args) => gen(args),
        Command::Report { instance, w } => {
            let d = strata::load(instance)?;
            report(&stem(instance), &d, w, fail_fast)
        }
    }
}

fn render_validation(name: &str, report: &ValidationReport, fail_fast: bool) -> Rendered {
    let mut axioms = report.axioms.clone();
    if fail_fast {
        if let Some(k) = axioms.iter().position(|a| !a.passed) {
            axioms.truncate(k + 1);
        }
    }
    let mut text = format!("instance {name}\n");
    for a in &axioms {
        let _ = writeln!(text, "axiom {} {:<28} {}", a.number, a.description, pass_word(a.passed));
        for f in &a.failures {
            let _ = writeln!(text, "    level {} degree {}: {}", f.level, f.degree, f.detail);
        }
    }
    let _ = writeln!(text, "rank duality {}", pass_word(report.rank_duality));
    let _ = writeln!(
        text,
        "ample class equals L(1): {}",
        if report.ample_class_matches { "yes" } else { "no" }
    );
    let failing: Vec<u8> = report.failing().iter().map(|a| a.number()).collect();
    let _ = writeln!(text, "result {}", pass_word(report.passed()));
    Rendered {
        passed: report.passed(),
        json: json!({
            "command": "validate",
            "instance": name,
            "passed": report.passed(),
            "failing": failing,
            "axioms": axioms,
            "rank_duality": report.rank_duality,
            "ample_class_matches": report.ample_class_matches,
        }),
        text,
        file_stem: format!("validate-{name}"),
    }
}

fn in_filter(w: &[i64], x: i64) -> bool {
    w.is_empty() || w.contains(&x)
}

fn pages(name: &str, d: &SemistableDatum, w: &[i64]) -> Result<Rendered, Error> {
    let page = to_weight_complex(d)?;
    let e2 = build_e2(&page)?;
    let mut dump = page_dump(&page, Some(&e2), None);
    dump.pages.retain(|t| in_filter(w, t.i + t.j));
    dump.d1.retain(|m| in_filter(w, m.i + m.j));
    dump.n_op.retain(|m| in_filter(w, m.i + m.j));
    dump.e2.retain(|t| in_filter(w, t.i + t.j));
    let mut text = format!("instance {name}\nE1\n{}", render_grid(&page));
    text.push_str("E2\n");
    for t in &dump.e2 {
        if t.dim > 0 {
            let _ = writeln!(text, "E2^{{{},{}}} = {}  (w = {})", t.i, t.j, t.dim, t.i + t.j);
        }
    }
    if dump.e2.iter().all(|t| t.dim == 0) {
        text.push_str("none\n");
    }
    Ok(Rendered {
        passed: true,
        json: json!({"command": "pages", "instance": name, "pages": dump}),
        text,
        file_stem: format!("pages-{name}"),
    })
}

fn wmc_entries(v: &WmcVerdict, w: &[i64], fail_fast: bool) -> (Vec<wss_core::specseq::WmcEntry>, bool) {
    let mut entries: Vec<_> = v.entries.iter().filter(|e| in_filter(w, e.w)).cloned().collect();
    let passed = entries.iter().all(|e| e.iso);
    if fail_fast {
        if let Some(k) = entries.iter().position(|e| !e.iso) {
            entries.truncate(k + 1);
        }
    }
    (entries, passed)
}

fn render_wmc(name: &str, v: &WmcVerdict, w: &[i64], fail_fast: bool) -> Rendered {
    let (entries, passed) = wmc_entries(v, w, fail_fast);
    let mut text = format!("instance {name}\n");
    for e in &entries {
        if e.source_dim == 0 && e.target_dim == 0 {
            continue;
        }
        let _ = writeln!(
            text,
            "w={} r={}: N^{} : Q^{} -> Q^{} rank {} {}",
            e.w,
            e.r,
            e.r,
            e.source_dim,
            e.target_dim,
            e.rank,
            pass_word(e.iso)
        );
    }
    let _ = writeln!(text, "result {}", pass_word(passed));
    Rendered {
        passed,
        json: json!({"command": "check-wmc", "instance": name, "passed": passed, "entries": entries}),
        text,
        file_stem: format!("check-wmc-{name}"),
    }
}

fn threefold_records(d: &SemistableDatum) -> Result<(Vec<CheckRecord>, WmcVerdict), Error> {
    let records = threefold_suite(d)?;
    let e2 = build_e2(&to_weight_complex(d)?)?;
    Ok((records, check_wmc(&e2)))
}

fn threefold(name: &str, d: &SemistableDatum, fail_fast: bool) -> Result<Rendered, Error> {
    let (mut records, verdict) = threefold_records(d)?;
    let passed = records.iter().all(|r| r.passed()) && verdict.overall;
    if fail_fast {
        if let Some(k) = records.iter().position(|r| !r.passed()) {
            records.truncate(k + 1);
        }
    }
    let mut text = format!("instance {name}\n");
    for r in &records {
        let _ = writeln!(text, "{:<26} {}", r.check, pass_word(r.passed()));
        if let Some(wv) = &r.witness {
            let _ = writeln!(text, "    witness ({})", wv.join(", "));
        }
    }
    let _ = writeln!(text, "{:<26} {}", "weight_monodromy", pass_word(verdict.overall));
    let _ = writeln!(text, "result {}", pass_word(passed));
    Ok(Rendered {
        passed,
        json: json!({
            "command": "check-threefold",
            "instance": name,
            "passed": passed,
            "checks": records,
            "weight_monodromy": verdict.overall,
        }),
        text,
        file_stem: format!("check-threefold-{name}"),
    })
}

fn gen(args: &GenArgs) -> Result<Rendered, Error> {
    let (label, datum) = if let Some(k) = args.mutate {
        let path = args
            .instance
            .as_ref()
            .ok_or_else(|| Error::Parameter("--mutate needs --instance".into()))?;
        let axiom = Axiom::from_number(k)
            .ok_or_else(|| Error::Parameter(format!("no axiom {k}; axioms are 1..=7")))?;
        let m = instances::mutate(&strata::load(path)?, axiom, args.seed)?;
        (format!("{}-mutated-{k}", stem(path)), m.datum)
    } else {
        let spec = match (&args.spec, args.kind) {
            (Some(p), _) => {
                let s = std::fs::read_to_string(p)?;
                serde_json::from_str::<GeneratorSpec>(&s).map_err(|e| Error::Parse {
                    field: "spec".into(),
                    message: e.to_string(),
                })?
            }
            (None, Some(kind)) => {
                let n = || args.n.ok_or_else(|| Error::Parameter("--n is required".into()));
                match kind {
                    GenKind::Smooth => GeneratorSpec::Smooth {
                        n: n()?,
                        betti: args.betti.clone(),
                    },
                    GenKind::Ngon => GeneratorSpec::Ngon { n: n()? },
                    GenKind::Chain => GeneratorSpec::Chain { n: n()? },
                    GenKind::Toy => GeneratorSpec::Toy {
                        name: args
                            .name
                            .clone()
                            .ok_or_else(|| Error::Parameter("--name is required".into()))?,
                    },
                }
            }
            (None, None) => return Err(Error::Parameter("give --kind, --spec or --mutate".into())),
        };
        let label = match &spec {
            GeneratorSpec::Smooth { n, .. } => format!("smooth{n}"),
            GeneratorSpec::Ngon { n } => format!("ngon{n}"),
            GeneratorSpec::Chain { n } => format!("chain{n}"),
            GeneratorSpec::Toy { name } => name.clone(),
            GeneratorSpec::Custom { path } => stem(Path::new(path)),
            GeneratorSpec::Tensor { .. } => "tensor".into(),
        };
        match instances::generate(&spec)? {
            Generated::Datum(d) => (label, *d),
            Generated::Complex(_) => {
                return Err(Error::Parameter(
                    "a tensor product is a page, not an instance; use it through the library".into(),
                ))
            }
        }
    };
    let text = strata::to_json_string(&datum);
    let json: Value = serde_json::from_str(&text).expect("instance json");
    Ok(Rendered {
        passed: true,
        json,
        text,
        file_stem: label,
    })
}

#[derive(Serialize)]
struct FiltrationAgreement {
    w: i64,
    weight_monodromy: bool,
    filtrations_agree: bool,
}

fn e2_dims(e2: &E2Page) -> Value {
    let dims: Vec<Value> = e2
        .terms
        .values()
        .filter(|t| t.dim > 0)
        .map(|t| json!({"i": t.i, "j": t.j, "dim": t.dim}))
        .collect();
    Value::Array(dims)
}

fn report(name: &str, d: &SemistableDatum, w: &[i64], fail_fast: bool) -> Result<Rendered, Error> {
    let validation = strata::validate(d)?;
    let mut doc = json!({
        "command": "report",
        "instance": name,
        "n": d.n,
        "validation": render_validation(name, &validation, fail_fast).json,
    });
    let mut text = render_validation(name, &validation, fail_fast).text;
    if !validation.passed() {
        doc["passed"] = json!(false);
        return Ok(Rendered {
            passed: false,
            json: doc,
            text,
            file_stem: format!("report-{name}"),
        });
    }

    let e2 = build_e2(&to_weight_complex(d)?)?;
    let verdict = check_wmc(&e2);
    let n2 = 2 * d.n as i64;
    let mut agreement = Vec::new();
    for wv in (0..=n2).filter(|&x| in_filter(w, x)) {
        let wmc = verdict.holds_at(wv);
        let filt = compare_monodromy_vs_weight(&e2, wv)?;
        if wmc != filt {
            return Err(Error::Consistency(format!(
                "at w = {wv} the E2 check gives {wmc} and the filtration comparison {filt}"
            )));
        }
        agreement.push(FiltrationAgreement {
            w: wv,
            weight_monodromy: wmc,
            filtrations_agree: filt,
        });
    }
    let wmc = render_wmc(name, &verdict, w, fail_fast);
    let mut passed = wmc.passed;
    doc["e2"] = e2_dims(&e2);
    doc["weight_monodromy"] = wmc.json["entries"].clone();
    doc["filtrations"] = serde_json::to_value(&agreement).expect("json");
    text.push_str(&wmc.text);

    if d.n == 3 && (passed || !fail_fast) {
        let t = threefold(name, d, fail_fast)?;
        passed &= t.passed;
        doc["threefold"] = t.json["checks"].clone();
        text.push_str(&t.text);
    }
    doc["passed"] = json!(passed);
    Ok(Rendered {
        passed,
        json: doc,
        text,
        file_stem: format!("report-{name}"),
    })
}

/// Where the output goes: `--out`, else the default directory, else stdout.
pub fn destination(cli: &Cli, rendered: &Rendered, out_dir: Option<&Path>) -> Option<PathBuf> {
    let ext = match (&cli.command, cli.format) {
        (Command::Gen(_), _) | (_, Format::Json) => "json",
        (_, Format::Text) => "txt",
    };
    match (&cli.out, out_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{}.{ext}", rendered.file_stem))),
        (None, None) => None,
    }
}

/// Axioms named in a JSON validation document, for tests and scripts.
pub fn failing_axioms(doc: &Value) -> BTreeSet<u64> {
    doc["failing"]
        .as_array()
        .map(|a| a.iter().filter_map(|x| x.as_u64()).collect())
        .unwrap_or_default()
}
