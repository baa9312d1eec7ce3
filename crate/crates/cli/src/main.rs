use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use pbtlab::class::{load_class, save_class, FiniteClass};
use pbtlab::dims::Budget;
use pbtlab::halfspaces::{
    decode_general_trace, decode_homogeneous, parse_examples, teach_general, teach_homogeneous, RationalHalfspace,
};
use pbtlab::linset_teach::{
    shift_teach, student_linset, student_nelinset, student_shifted_nelinset, teach_linset,
    teach_nelinset, teach_shifted_nelinset, window_class, Linset, LinsetSample,
};
use pbtlab::numsg::{
    enumerate_class, frobenius, is_special, parse_int_list, weak_spanning_floor, Family, GeneratorSet,
    LinearSetRep, ShiftMode,
};
use pbtlab::pbtd_one::{classify_singleton_extension, decide_pbtd_1, decide_pbtd_plus_1, SingletonExtension};
use pbtlab::rational::parse_rational_list;
use pbtlab::report::{report_from_json, report_to_json, verify_pbtd1_witness, verify_report, Measure};
use pbtlab::suite::{check_ids, run_check, DEFAULT_SEED};
use pbtlab::{gallery, Error, Result};

#[derive(Parser)]
#[command(name = "pbtlab", version, about = "Exact teaching dimensions and teaching protocols")]
struct Cli {
    /// Render results as an indented table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Refuse finite classes with more concepts than this.
    #[arg(long, global = true, default_value_t = 64)]
    max_concepts: usize,
    /// Refuse generator bounds and windows above this.
    #[arg(long, global = true, default_value_t = 64)]
    max_bound: u64,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Teaching dimensions of a finite class, each with a witness.
    Dims(DimsArgs),
    /// Decide PBTD ≤ 1 (or PBTD⁺ ≤ 1 with --plus).
    Pbtd1 {
        class: String,
        #[arg(long)]
        plus: bool,
    },
    /// Re-validate a report produced by `dims` or `pbtd1`.
    Verify { class: String, report: PathBuf },
    TeachLinset {
        #[arg(long, value_enum)]
        variant: LinsetVariant,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        generators: String,
        #[arg(long)]
        shift: Option<u64>,
    },
    DecodeLinset {
        #[arg(long, value_enum)]
        variant: LinsetVariant,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        examples: String,
    },
    /// Teach `⟨w, x⟩ + b ≥ 0`; homogeneous when --b is omitted.
    TeachHalfspace {
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    DecodeHalfspace {
        #[arg(long)]
        d: usize,
        /// JSON list of {"x": [...], "y": ±1} with rationals as "p/q".
        #[arg(long)]
        examples: String,
        #[arg(long)]
        homogeneous: bool,
    },
    Frobenius {
        #[arg(long)]
        gens: String,
    },
    /// Check whether N + ⟨P⟩ is a (k, N)-special set.
    Special {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: u64,
        #[arg(long)]
        gens: String,
    },
    EnumerateClass {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        bound: u64,
        /// Include every shift c + L with c ≤ this.
        #[arg(long, conflicts_with = "indexed")]
        shift_range: Option<u64>,
        /// Only the shifted members whose least element is exactly N.
        #[arg(long)]
        indexed: Option<u64>,
        /// Emit the restriction to {0, …, W} as a finite class file.
        #[arg(long)]
        window: Option<u64>,
    },
    /// Check that no SIZE-element subset of N + ⟨P⟩ weakly spans it within
    /// the non-erasing cofinite class indexed by N.
    FloorCheck {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: u64,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        size: usize,
        /// Generator bound for the enumerated class (default N).
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = 60)]
        window: u64,
    },
    /// Print a gallery class such as `powerset(3)` as a class file.
    Gallery { name: String },
    /// Run the built-in acceptance checks.
    VerifyPaper {
        /// `all` or a comma-separated list of check ids.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args)]
struct DimsArgs {
    /// Class file, `-` for stdin, or `gallery:NAME`.
    class: String,
    #[arg(long)]
    all: bool,
    #[arg(long)]
    td: bool,
    #[arg(long)]
    td_min: bool,
    #[arg(long)]
    rtd: bool,
    #[arg(long)]
    rtd_plus: bool,
    #[arg(long)]
    pbtd: bool,
    #[arg(long)]
    pbtd_plus: bool,
}

impl DimsArgs {
    fn measures(&self) -> Vec<Measure> {
        let picked: Vec<Measure> = [
            (self.td, Measure::Td),
            (self.td_min, Measure::TdMin),
            (self.rtd, Measure::Rtd),
            (self.rtd_plus, Measure::RtdPlus),
            (self.pbtd, Measure::Pbtd),
            (self.pbtd_plus, Measure::PbtdPlus),
        ]
        .into_iter()
        .filter_map(|(on, m)| on.then_some(m))
        .collect();
        if self.all || picked.is_empty() {
            Measure::ALL.to_vec()
        } else {
            picked
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LinsetVariant {
    Linset,
    Nelinset,
    Shifted,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Linset,
    Cflinset,
    Nelinset,
    Necflinset,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Linset => Family::Linset,
            FamilyArg::Cflinset => Family::Cflinset,
            FamilyArg::Nelinset => Family::Nelinset,
            FamilyArg::Necflinset => Family::Necflinset,
        }
    }
}

/// What a subcommand produced, before rendering.
struct Output {
    value: Value,
    /// Exit with status 1 even though the command itself ran.
    failed: bool,
}

impl From<Value> for Output {
    fn from(value: Value) -> Self {
        Output { value, failed: false }
    }
}

fn arg_err(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

fn read_input(path: &str) -> Result<Vec<u8>> {
    let res = if path == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf).map(|_| buf)
    } else {
        std::fs::read(path)
    };
    res.map_err(|e| arg_err(format!("cannot read {path}: {e}")))
}

fn generators(s: &str) -> Result<GeneratorSet> {
    GeneratorSet::new(parse_int_list(s)?)
}

fn rep_json(rep: &LinearSetRep) -> Value {
    serde_json::to_value(rep).expect("serializable")
}

/// The canonical primitive integer form of a halfspace.
fn canonical_json(h: &RationalHalfspace) -> Value {
    let (w, b) = h.canonical();
    json!({
        "w": w.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "b": b.to_string(),
    })
}

struct Ctx {
    budget: Budget,
    seed: u64,
    max_concepts: usize,
    max_bound: u64,
}

impl Ctx {
    fn load(&self, source: &str) -> Result<FiniteClass> {
        let class = match source.strip_prefix("gallery:") {
            Some(name) => gallery::by_name(name)?,
            None => load_class(&read_input(source)?)?,
        };
        self.check_concepts(class.len())?;
        Ok(class)
    }

    fn check_concepts(&self, n: usize) -> Result<()> {
        if n > self.max_concepts {
            return Err(Error::Resource(format!(
                "class has {n} concepts, above --max-concepts {}",
                self.max_concepts
            )));
        }
        Ok(())
    }

    fn check_bound(&self, what: &str, v: u64) -> Result<()> {
        if v > self.max_bound {
            return Err(Error::Resource(format!("{what} {v} is above --max-bound {}", self.max_bound)));
        }
        Ok(())
    }
}

fn class_summary(source: &str, class: &FiniteClass) -> Value {
    json!({"class": source, "universe_size": class.universe().size(), "concepts": class.len()})
}

fn envelope(command: &str, inputs: Value, results: Value) -> Value {
    json!({
        "tool": "pbtlab",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs": inputs,
        "results": results,
    })
}

fn dims(ctx: &Ctx, args: &DimsArgs) -> Result<Output> {
    let class = ctx.load(&args.class)?;
    let mut results = Map::new();
    for m in args.measures() {
        let r = m.compute(&class, &ctx.budget)?;
        results.insert(m.key().to_string(), report_to_json(&class, &r));
    }
    Ok(envelope("dims", class_summary(&args.class, &class), Value::Object(results)).into())
}

fn pbtd1(ctx: &Ctx, source: &str, plus: bool) -> Result<Output> {
    let class = ctx.load(source)?;
    let witness = if plus {
        decide_pbtd_plus_1(&class, &ctx.budget)?.map(|w| w.to_json(&class))
    } else {
        decide_pbtd_1(&class, &ctx.budget)?.map(|w| w.to_json(&class))
    };
    let mut results = json!({
        "measure": if plus { "pbtd_plus" } else { "pbtd" },
        "at_most_one": witness.is_some(),
        "witness": witness,
    });
    if !plus {
        let kind = match classify_singleton_extension(&class) {
            SingletonExtension::PureSingletons => json!("pure_singletons"),
            SingletonExtension::PlusEmpty => json!("singletons_plus_empty"),
            SingletonExtension::PlusPair(a, b) => {
                let u = class.universe();
                json!({"singletons_plus_pair": [u.label(a), u.label(b)]})
            }
            SingletonExtension::NotPbtd1 => json!("not_pbtd1"),
            SingletonExtension::NotApplicable => Value::Null,
        };
        results["singleton_extension"] = kind;
    }
    Ok(envelope("pbtd1", class_summary(source, &class), results).into())
}

fn verify(ctx: &Ctx, source: &str, report_path: &Path) -> Result<Output> {
    let class = ctx.load(source)?;
    let text = std::fs::read(report_path).map_err(|e| arg_err(format!("cannot read {}: {e}", report_path.display())))?;
    let doc: Value = serde_json::from_slice(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let results = doc.get("results").unwrap_or(&doc);
    let mut checks = Vec::new();
    let mut all_passed = true;
    if let Some(measure) = results.get("at_most_one").and(results.get("measure")).and_then(Value::as_str) {
        let ok = match &results["witness"] {
            Value::Null => {
                return Err(arg_err("a negative PBTD ≤ 1 answer carries no witness to verify"));
            }
            w => verify_pbtd1_witness(&class, w, measure == "pbtd_plus")?,
        };
        all_passed &= ok;
        checks.push(json!({"measure": measure, "claim": "at_most_one", "passed": ok}));
    } else {
        let obj = results.as_object().ok_or_else(|| Error::Parse("report results must be an object".into()))?;
        if obj.is_empty() {
            return Err(Error::Parse("report contains no results".into()));
        }
        for (key, entry) in obj {
            let m = Measure::from_key(key).ok_or_else(|| Error::Parse(format!("unknown measure {key:?}")))?;
            let r = report_from_json(&class, entry)?;
            let v = verify_report(&class, m, &r, &ctx.budget)?;
            all_passed &= v.passed();
            let mut j = serde_json::to_value(&v).expect("serializable");
            j["measure"] = json!(key);
            j["passed"] = json!(v.passed());
            checks.push(j);
        }
    }
    let out = envelope(
        "verify",
        json!({"class": source, "report": report_path.display().to_string()}),
        json!({"passed": all_passed, "checks": checks}),
    );
    Ok(Output { value: out, failed: !all_passed })
}

fn teach_linset_cmd(variant: LinsetVariant, k: usize, gens: &str, shift: Option<u64>) -> Result<Output> {
    let g = generators(gens)?;
    let (sample, concept) = match (variant, shift) {
        (LinsetVariant::Linset, None) => (teach_linset(&g, k)?, LinearSetRep::linear(&g)),
        (LinsetVariant::Linset, Some(c)) => {
            let l = LinearSetRep::linear(&g);
            (shift_teach(c, &Linset { k }, &l)?, l.shifted(c))
        }
        (LinsetVariant::Nelinset, None) => {
            if g.len() > k {
                return Err(arg_err(format!("{} generators exceed k = {k}", g.len())));
            }
            (teach_nelinset(&g), LinearSetRep::non_erasing(&g))
        }
        (LinsetVariant::Nelinset, Some(_)) => {
            return Err(arg_err("--shift applies to the linset and shifted variants"));
        }
        (LinsetVariant::Shifted, c) => {
            let c = c.unwrap_or(0);
            if g.len() > k {
                return Err(arg_err(format!("{} generators exceed k = {k}", g.len())));
            }
            (teach_shifted_nelinset(c, &g, k)?, LinearSetRep::non_erasing(&g).shifted(c))
        }
    };
    Ok(json!({
        "concept": rep_json(&concept),
        "display": concept.to_string(),
        "sample": sample.values(),
        "size": sample.len(),
    })
    .into())
}

fn decode_linset_cmd(variant: LinsetVariant, k: usize, examples: &str) -> Result<Output> {
    let s = LinsetSample::new(parse_int_list(examples)?);
    let rep = match variant {
        LinsetVariant::Linset => student_linset(&s, k)?,
        LinsetVariant::Nelinset => student_nelinset(&s, k)?,
        LinsetVariant::Shifted => student_shifted_nelinset(&s, k)?,
    };
    Ok(json!({"sample": s.values(), "concept": rep_json(&rep), "display": rep.to_string()}).into())
}

fn teach_halfspace_cmd(w: &str, b: Option<&str>) -> Result<Output> {
    let w = parse_rational_list(w)?;
    let (h, examples) = match b {
        None => {
            let h = RationalHalfspace::homogeneous(w.clone())?;
            (h, teach_homogeneous(&w)?)
        }
        Some(b) => {
            let [b] = <[_; 1]>::try_from(parse_rational_list(b)?).map_err(|_| arg_err("--b takes one rational"))?;
            let h = RationalHalfspace::new(w, b)?;
            let ex = teach_general(&h)?;
            (h, ex)
        }
    };
    Ok(json!({
        "halfspace": canonical_json(&h),
        "examples": examples,
        "size": examples.len(),
    })
    .into())
}

fn decode_halfspace_cmd(d: usize, examples: &str, homogeneous: bool) -> Result<Output> {
    let ex = parse_examples(examples)?;
    if homogeneous {
        let h = decode_homogeneous(&ex, d)?;
        return Ok(json!({"halfspace": canonical_json(&h), "decoded": h}).into());
    }
    let trace = decode_general_trace(&ex, d)?;
    Ok(json!({"halfspace": canonical_json(&trace.result), "trace": trace}).into())
}

fn enumerate_cmd(
    ctx: &Ctx,
    family: FamilyArg,
    k: usize,
    bound: u64,
    shift_range: Option<u64>,
    indexed: Option<u64>,
    window: Option<u64>,
) -> Result<Output> {
    ctx.check_bound("generator bound", bound)?;
    let shift = match (shift_range, indexed) {
        (Some(c), _) => ShiftMode::Range(c),
        (None, Some(n)) => ShiftMode::IndexedN(n),
        (None, None) => ShiftMode::None,
    };
    let reps = enumerate_class(family.into(), shift, k, bound, &ctx.budget)?;
    let Some(w) = window else {
        return Ok(json!({
            "count": reps.len(),
            "concepts": reps.iter().map(rep_json).collect::<Vec<_>>(),
            "display": reps.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
        .into());
    };
    ctx.check_bound("window", w)?;
    // distinct concepts may agree on the window; keep the first of each
    let mut seen = std::collections::BTreeSet::new();
    let kept: Vec<LinearSetRep> = reps.into_iter().filter(|r| seen.insert(r.members_upto(w))).collect();
    ctx.check_concepts(kept.len())?;
    let class = window_class(&kept, w)?;
    let doc: Value = serde_json::from_slice(&save_class(&class)).expect("class files are JSON");
    Ok(doc.into())
}

#[allow(clippy::too_many_arguments)]
fn floor_cmd(ctx: &Ctx, k: usize, n: u64, gens: &str, size: usize, bound: Option<u64>, window: u64) -> Result<Output> {
    let p = generators(gens)?;
    let bound = bound.unwrap_or(n);
    ctx.check_bound("generator bound", bound)?;
    if window < n {
        return Err(arg_err(format!("window {window} ends before N = {n}")));
    }
    let l = LinearSetRep::offset_span(n, &p);
    let class = enumerate_class(Family::Necflinset, ShiftMode::IndexedN(n), k, bound, &ctx.budget)?;
    let floor = weak_spanning_floor(&l, &class, size, window, &ctx.budget)?;
    Ok(json!({
        "concept": rep_json(&l),
        "display": l.to_string(),
        "class_size": class.len(),
        "size": size,
        "window": window,
        "holds": floor.holds,
        "weak_spanning_set": floor.weak_spanning_set,
        "subsets_checked": floor.subsets_checked,
    })
    .into())
}

fn verify_paper(ctx: &Ctx, suite: &str) -> Result<Output> {
    let ids: Vec<u8> = if suite == "all" {
        check_ids().collect()
    } else {
        let mut ids = parse_int_list(suite)?
            .into_iter()
            .map(|i| u8::try_from(i).ok().filter(|i| check_ids().any(|c| c == *i)))
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(|| arg_err(format!("unknown check id in {suite:?}")))?;
        ids.sort_unstable();
        ids.dedup();
        ids
    };
    let results: Vec<_> = ids.iter().filter_map(|&id| run_check(id, ctx.seed)).collect();
    let failed = results.iter().filter(|r| !r.passed).count();
    for r in &results {
        eprintln!("{}", r.line());
    }
    let items: Vec<Value> = results
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("serializable");
            v["elapsed_ms"] = json!(r.elapsed.as_millis() as u64);
            v["limit_s"] = json!(r.limit.as_secs());
            v
        })
        .collect();
    let out = envelope(
        "verify-paper",
        json!({"suite": suite, "seed": ctx.seed}),
        json!({"passed": results.len() - failed, "failed": failed, "items": items}),
    );
    Ok(Output { value: out, failed: failed > 0 })
}

fn run(cli: &Cli) -> Result<Output> {
    let ctx = Ctx {
        budget: Budget::from_env(),
        seed: cli.seed,
        max_concepts: cli.max_concepts,
        max_bound: cli.max_bound,
    };
    match &cli.command {
        Command::Dims(args) => dims(&ctx, args),
        Command::Pbtd1 { class, plus } => pbtd1(&ctx, class, *plus),
        Command::Verify { class, report } => verify(&ctx, class, report),
        Command::TeachLinset { variant, k, generators, shift } => teach_linset_cmd(*variant, *k, generators, *shift),
        Command::DecodeLinset { variant, k, examples } => decode_linset_cmd(*variant, *k, examples),
        Command::TeachHalfspace { w, b } => teach_halfspace_cmd(w, b.as_deref()),
        Command::DecodeHalfspace { d, examples, homogeneous } => decode_halfspace_cmd(*d, examples, *homogeneous),
        Command::Frobenius { gens } => Ok(json!({"frobenius": frobenius(&generators(gens)?)?}).into()),
        Command::Special { k, n, gens } => {
            let cert = is_special(*k, *n, &generators(gens)?);
            let mut v = serde_json::to_value(&cert).expect("serializable");
            v["special"] = json!(cert.is_special());
            Ok(v.into())
        }
        Command::EnumerateClass { family, k, bound, shift_range, indexed, window } => {
            enumerate_cmd(&ctx, *family, *k, *bound, *shift_range, *indexed, *window)
        }
        Command::FloorCheck { k, n, gens, size, bound, window } => {
            floor_cmd(&ctx, *k, *n, gens, *size, *bound, *window)
        }
        Command::Gallery { name } => {
            let class = gallery::by_name(name)?;
            ctx.check_concepts(class.len())?;
            Ok(serde_json::from_slice::<Value>(&save_class(&class)).expect("class files are JSON").into())
        }
        Command::VerifyPaper { suite } => verify_paper(&ctx, suite),
    }
}

/// One `path: value` line per leaf.
fn render_table(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                render_table(x, &p, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                render_table(x, &format!("{path}[{i}]"), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{path:<48} {s}\n")),
        _ => out.push_str(&format!("{path:<48} {v}\n")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut out) => {
            if cli.timing {
                if let Value::Object(m) = &mut out.value {
                    m.insert("timing".into(), json!({"elapsed_ms": start.elapsed().as_secs_f64() * 1e3}));
                }
            }
            if cli.pretty {
                let mut s = String::new();
                render_table(&out.value, "", &mut s);
                print!("{s}");
            } else {
                println!("{}", out.value);
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
