use std::fmt::Display;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rzw_core::assemblies::{
    check_applicative_morphism, identity_relation, is_modest, is_partitioned, product, trackers, ApplicativeMorphism,
    Assembly, AsmError, TrackedMorphism,
};
use rzw_core::classical::{
    cr_entails, find_interpretation, induce_aks, orthogonal, FiniteAks, MachineLaw, Pole, SyntacticAks,
};
use rzw_core::k1::{k1_apply_detailed, K1Code};
use rzw_core::opca::{
    check_completeness, check_phi_closure, load_opca, parse_sets, ElemSet, FiniteOpca, Mode, OpcaError,
};
use rzw_core::reduction::{normalize, reduce_whnf_traced, Normalization, ReductionStatus, DEFAULT_FUEL};
use rzw_core::rtripos::{
    eval_formula, is_valid, parse_formula, random_instances, realizers, schema_instance, tuples, Model, SchemaData,
    SchemaKind,
};
use rzw_core::suite::{criterion_id, run_all, run_criterion, CRITERIA};
use rzw_core::terms::{compile_lambda, parse_term, CompileOptions, Term};

/// Realizability workbench: combinatory terms, finite order partial
/// combinatory algebras, realizability logic, assemblies and classical
/// realizability.
#[derive(Debug, Parser)]
#[command(name = "rzw", version)]
struct Cli {
    /// Step budget for reductions.
    #[arg(long, global = true, env = "RZW_FUEL", default_value_t = DEFAULT_FUEL)]
    fuel: usize,
    /// Print reduction chains.
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Combinatory terms.
    #[command(subcommand)]
    Term(TermCmd),
    /// Finite structures in the OPCA file format (or `builtin:NAME`).
    #[command(subcommand)]
    Opca(OpcaCmd),
    /// Kleene's first model on coded closed terms.
    #[command(subcommand)]
    K1(K1Cmd),
    /// Realizability logic over model files.
    #[command(subcommand)]
    Logic(LogicCmd),
    /// Assemblies declared in model files.
    #[command(subcommand)]
    Asm(AsmCmd),
    /// Applicative morphisms between finite structures.
    #[command(subcommand)]
    Appmorph(AppmorphCmd),
    /// Classical realizability.
    #[command(subcommand)]
    Cr(CrCmd),
    /// Acceptance suites.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Debug, Subcommand)]
enum TermCmd {
    Parse { term: String },
    /// Head-reduce; with `--normal`, normalize leftmost-outermost.
    Reduce {
        term: String,
        #[arg(long)]
        normal: bool,
    },
    /// Eliminate lambdas by bracket abstraction.
    Compile {
        term: String,
        /// Use the stack abstraction `λ•` for every binder.
        #[arg(long)]
        stack: bool,
        /// Reject results with free variables.
        #[arg(long)]
        closed: bool,
    },
}

#[derive(Debug, Subcommand)]
enum OpcaCmd {
    Validate { file: String },
    /// Combinatory completeness of the external filter.
    Complete { file: String },
}

#[derive(Debug, Subcommand)]
enum K1Cmd {
    /// `e·n`: normal form of the juxtaposition of the decoded terms.
    Apply { e: String, n: String },
}

#[derive(Debug, Subcommand)]
enum LogicCmd {
    /// Realizers of a formula for every assignment of its free variables.
    Eval {
        model: String,
        formula: String,
        /// Free variable with its sort, `x:S`; repeatable.
        #[arg(long = "free")]
        free: Vec<String>,
    },
    Valid { model: String, sentence: String },
    /// Generate and check schema instances.
    Schema {
        opca: String,
        #[arg(long, value_enum)]
        kind: SchemaArg,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemaArg {
    Mct,
    Up,
    Intersection,
}

#[derive(Debug, Subcommand)]
enum AsmCmd {
    /// Trackers of a `map` between two assemblies.
    Trackers { model: String, map: String },
    /// Partitioned and modest checks.
    Check { model: String, asm: String },
    Product { model: String, x: String, y: String },
}

#[derive(Debug, Subcommand)]
enum AppmorphCmd {
    /// Check a relation file (`a {b c}` per line) or `identity`.
    Check {
        source: String,
        target: String,
        relation: String,
    },
}

#[derive(Debug, Subcommand)]
enum CrCmd {
    /// `f ⊩ g` for stack predicates written `{..} {..}`, one set per index.
    Entails {
        opca: String,
        /// Pole file, or its text inline (`from-downset {e}`).
        #[arg(long)]
        pole: String,
        f: String,
        g: String,
    },
    /// A machine law instance on the syntactic structure, with its chain.
    Trace {
        #[arg(value_enum)]
        law: LawArg,
        m: String,
        n: String,
        pi: String,
        /// Bound variable for `abstraction`.
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// Terms orthogonal to a set of stacks.
    Orthogonal {
        opca: String,
        #[arg(long)]
        pole: String,
        stacks: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LawArg {
    Bullet,
    Abstraction,
    Continuation,
    Callcc,
}

#[derive(Debug, Subcommand)]
enum SuiteCmd {
    /// Run one criterion (number or name) or `all`.
    Run { name: String },
    List,
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn report(ok: bool, text: impl Into<String>, json: Value) -> Result<Report, String> {
    Ok(Report {
        text: text.into(),
        json,
        ok,
    })
}

fn input(e: impl Display) -> String {
    e.to_string()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match run(&cli) {
        Ok(r) => {
            match cli.format {
                Format::Text => println!("{}", r.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("json values serialize")),
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report, String> {
    match &cli.cmd {
        Cmd::Term(c) => term(cli, c),
        Cmd::Opca(c) => opca(c),
        Cmd::K1(K1Cmd::Apply { e, n }) => k1(cli, e, n),
        Cmd::Logic(c) => logic(cli, c),
        Cmd::Asm(c) => asm(c),
        Cmd::Appmorph(AppmorphCmd::Check {
            source,
            target,
            relation,
        }) => appmorph(source, target, relation),
        Cmd::Cr(c) => cr(cli, c),
        Cmd::Suite(c) => suite(cli, c),
    }
}

fn parse(text: &str) -> Result<Term, String> {
    parse_term(text).map_err(input)
}

fn term(cli: &Cli, c: &TermCmd) -> Result<Report, String> {
    match c {
        TermCmd::Parse { term } => {
            let t = parse(term)?;
            let closed = t.is_basic_closed();
            let text = format!("{t}\nsize {} depth {} closed {}", t.size(), t.depth(), yes(closed));
            report(true, text, json!({"term": t, "size": t.size(), "depth": t.depth(), "closed": closed}))
        }
        TermCmd::Reduce { term, normal: false } => {
            let t = parse(term)?;
            let out = reduce_whnf_traced(&t, cli.fuel);
            let done = out.status == ReductionStatus::HeadNormal;
            let chain = out.trace.unwrap_or_default();
            let mut text = if cli.trace {
                chain.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("\n")
            } else {
                out.final_term.to_string()
            };
            if !done {
                text.push_str(&format!("\nfuel exhausted after {} steps", out.steps));
            }
            let mut j = json!({"term": out.final_term, "steps": out.steps, "status": out.status});
            if cli.trace {
                j["trace"] = json!(chain);
            }
            report(done, text, j)
        }
        TermCmd::Reduce { term, normal: true } => {
            let t = parse(term)?;
            match normalize(&t, cli.fuel) {
                Normalization::Normal { term, steps } => {
                    report(true, term.to_string(), json!({"status": "normal", "term": term, "steps": steps}))
                }
                Normalization::Cycle { steps } => report(
                    false,
                    format!("diverges: the chain revisits a term after {steps} steps"),
                    json!({"status": "cycle", "steps": steps}),
                ),
                Normalization::FuelExhausted => report(
                    false,
                    format!("fuel exhausted after {} steps", cli.fuel),
                    json!({"status": "fuel-exhausted", "steps": cli.fuel}),
                ),
            }
        }
        TermCmd::Compile { term, stack, closed } => {
            let t = parse(term)?;
            let opts = CompileOptions {
                stack: *stack,
                require_closed: *closed,
            };
            let out = compile_lambda(&t, opts).map_err(input)?;
            report(true, out.to_string(), json!({"term": out}))
        }
    }
}

fn load(spec: &str) -> Result<FiniteOpca, String> {
    load_opca(spec).map_err(input)
}

fn set_text(a: &FiniteOpca, s: ElemSet) -> String {
    s.display(a.names()).to_string()
}

fn set_json(a: &FiniteOpca, s: ElemSet) -> Value {
    json!(s.iter().map(|x| a.name(x)).collect::<Vec<_>>())
}

fn opca(c: &OpcaCmd) -> Result<Report, String> {
    match c {
        OpcaCmd::Validate { file } => {
            let a = match load_opca(file) {
                Ok(a) => a,
                Err(e @ (OpcaError::NotPreorder(_) | OpcaError::Monotonicity(_))) => {
                    return report(false, format!("invalid: {e}"), json!({"valid": false, "reason": e.to_string()}))
                }
                Err(e) => return Err(input(e)),
            };
            let closure = check_phi_closure(&a, a.phi());
            let j = json!({
                "valid": closure.is_ok(),
                "elements": a.names(),
                "mode": match a.mode() { Mode::Standard => "standard", Mode::Lazy => "lazy" },
                "filter": set_json(&a, a.filter()),
                "phi": a.phi().describe(a.names()),
            });
            match closure {
                Ok(()) => report(true, "valid (preorder closed, monotone, filter ok)", j),
                Err((u, v)) => report(
                    false,
                    format!(
                        "invalid: external filter not closed under application at {} {}",
                        set_text(&a, u),
                        set_text(&a, v)
                    ),
                    j,
                ),
            }
        }
        OpcaCmd::Complete { file } => {
            let a = load(file)?;
            let r = check_completeness(&a, a.phi());
            let mut text = format!(
                "⟦k⟧ = {} ({}in φ)\n⟦s⟧ = {} ({}in φ)\ncomplete: {}",
                set_text(&a, r.k),
                if r.k_in_phi { "" } else { "not " },
                set_text(&a, r.s),
                if r.s_in_phi { "" } else { "not " },
                yes(r.complete)
            );
            if r.degenerate {
                text.push_str("\nnote: φ contains ∅, so every sentence is valid");
            }
            if a.mode() == Mode::Lazy {
                text.push_str("\nnote: lazy mode; the laws are checked but completeness of the filter is not certified");
            }
            report(r.complete, text, serde_json::to_value(&r).expect("serializable"))
        }
    }
}

fn k1(cli: &Cli, e: &str, n: &str) -> Result<Report, String> {
    let e: K1Code = e.parse().map_err(input)?;
    let n: K1Code = n.parse().map_err(input)?;
    let r = k1_apply_detailed(&e, &n, cli.fuel);
    let text = match (&r.result, r.diverges) {
        (Some(c), _) => c.to_string(),
        (None, true) => "undefined (diverges)".into(),
        (None, false) => format!("undefined within fuel {}", cli.fuel),
    };
    report(r.result.is_some(), text, serde_json::to_value(&r).expect("serializable"))
}

fn load_model(path: &str) -> Result<Model, String> {
    Model::load(path).map_err(input)
}

fn logic(cli: &Cli, c: &LogicCmd) -> Result<Report, String> {
    match c {
        LogicCmd::Eval { model, formula, free } => {
            let m = load_model(model)?;
            let f = parse_formula(formula).map_err(input)?;
            let free: Vec<(&str, &str)> = free
                .iter()
                .map(|s| s.split_once(':').map(|(v, t)| (v.trim(), t.trim())))
                .collect::<Option<_>>()
                .ok_or("free variables are written `x:SORT`")?;
            let fam = eval_formula(&m, &f, &free).map_err(input)?;
            let sorts = free
                .iter()
                .map(|(_, s)| m.sort_id(s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(input)?;
            let sizes: Vec<usize> = sorts.iter().map(|&s| m.sort_size(s)).collect();
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for (tuple, u) in tuples(&sizes).into_iter().zip(fam.iter()) {
                let names: Vec<&str> = tuple
                    .iter()
                    .zip(&sorts)
                    .map(|(&v, &s)| m.sorts[s].elems[v].as_str())
                    .collect();
                lines.push(format!("({}) {}", names.join(", "), set_text(&m.opca, u)));
                rows.push(json!({"assignment": names, "realizers": set_json(&m.opca, u), "in_phi": m.phi.contains(u)}));
            }
            report(true, lines.join("\n"), json!({ "rows": rows }))
        }
        LogicCmd::Valid { model, sentence } => {
            let m = load_model(model)?;
            let f = parse_formula(sentence).map_err(input)?;
            let valid = is_valid(&m, &f).map_err(input)?;
            let r = realizers(&m, &f).map_err(input)?;
            report(
                valid,
                format!("{valid}\nrealizers {}", set_text(&m.opca, r)),
                json!({"valid": valid, "realizers": set_json(&m.opca, r)}),
            )
        }
        LogicCmd::Schema { opca, kind, count } => {
            let a = load(opca)?;
            let phi = a.phi().clone();
            let instances: Vec<(SchemaData, bool)> = match kind {
                SchemaArg::Mct | SchemaArg::Up => {
                    let k = if matches!(kind, SchemaArg::Mct) { SchemaKind::Mct } else { SchemaKind::Up };
                    random_instances(k, &a, *count, cli.seed).into_iter().map(|d| (d, true)).collect()
                }
                SchemaArg::Intersection => a
                    .downsets()
                    .into_iter()
                    .map(|u| (SchemaData::Intersection { u }, phi.contains(u)))
                    .collect(),
            };
            let mut agree = 0;
            let mut failures = Vec::new();
            for (data, expected) in &instances {
                let (m, f) = schema_instance(&a, &phi, data).map_err(input)?;
                let valid = is_valid(&m, &f).map_err(input)?;
                if valid == *expected {
                    agree += 1;
                } else {
                    failures.push(format!("{data:?}: valid = {valid}"));
                }
            }
            let mut text = format!("{agree}/{} instances as expected", instances.len());
            for f in &failures {
                text.push_str(&format!("\n  {f}"));
            }
            report(
                failures.is_empty(),
                text,
                json!({"instances": instances.len(), "as_expected": agree, "failures": failures}),
            )
        }
    }
}

fn assembly<'m>(m: &'m Model, name: &str) -> Result<&'m Assembly, String> {
    m.assemblies.get(name).ok_or_else(|| format!("no assembly `{name}` in the model"))
}

fn realizer_lines(a: &FiniteOpca, x: &Assembly) -> (String, Value) {
    let text = x
        .names()
        .iter()
        .zip(x.realizers())
        .map(|(n, &e)| format!("  {n} {}", set_text(a, e)))
        .collect::<Vec<_>>()
        .join("\n");
    let j = x
        .names()
        .iter()
        .zip(x.realizers())
        .map(|(n, &e)| json!({"element": n, "realizers": set_json(a, e)}))
        .collect::<Vec<_>>();
    (text, json!(j))
}

fn asm(c: &AsmCmd) -> Result<Report, String> {
    match c {
        AsmCmd::Trackers { model, map } => {
            let m = load_model(model)?;
            let f = m.fun(map).ok_or_else(|| format!("no map `{map}` in the model"))?;
            let [dom] = f.domain[..] else {
                return Err(format!("`{map}` must be unary"));
            };
            let x = assembly(&m, &m.sorts[dom].name)?;
            let y = assembly(&m, &m.sorts[f.codomain].name)?;
            let table: Vec<usize> = f
                .table
                .iter()
                .copied()
                .collect::<Option<_>>()
                .ok_or_else(|| format!("`{map}` is not total"))?;
            let t = trackers(&m.opca, &table, x, y);
            let tracked = match TrackedMorphism::new(&m.opca, &m.phi, x.clone(), y.clone(), table) {
                Ok(_) => true,
                Err(AsmError::NotTracked { .. }) => false,
                Err(e) => return Err(input(e)),
            };
            report(
                tracked,
                format!("trackers {}\ntracked: {}", set_text(&m.opca, t), yes(tracked)),
                json!({"trackers": set_json(&m.opca, t), "tracked": tracked}),
            )
        }
        AsmCmd::Check { model, asm } => {
            let m = load_model(model)?;
            let x = assembly(&m, asm)?;
            let (p, md) = (is_partitioned(&m.opca, x), is_modest(x));
            let (lines, elems) = realizer_lines(&m.opca, x);
            report(
                true,
                format!("{asm}: {} elements\n{lines}\npartitioned: {}\nmodest: {}", x.len(), yes(p), yes(md)),
                json!({"elements": elems, "partitioned": p, "modest": md}),
            )
        }
        AsmCmd::Product { model, x, y } => {
            let m = load_model(model)?;
            let p = product(&m.opca, &m.phi, assembly(&m, x)?, assembly(&m, y)?).map_err(input)?;
            let (lines, elems) = realizer_lines(&m.opca, &p.object);
            report(
                true,
                format!(
                    "{x} × {y}\n{lines}\nπ₁ trackers {}\nπ₂ trackers {}",
                    set_text(&m.opca, p.fst.trackers),
                    set_text(&m.opca, p.snd.trackers)
                ),
                json!({
                    "elements": elems,
                    "fst_trackers": set_json(&m.opca, p.fst.trackers),
                    "snd_trackers": set_json(&m.opca, p.snd.trackers),
                }),
            )
        }
    }
}

fn read_relation(src: &FiniteOpca, tgt: &FiniteOpca, path: &str) -> Result<ApplicativeMorphism, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let mut related = vec![ElemSet::EMPTY; src.len()];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (a, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let a = src
            .index(a)
            .ok_or_else(|| format!("line {}: unknown source element `{a}`", i + 1))?;
        for s in parse_sets(rest, tgt, i + 1).map_err(input)? {
            related[a] = related[a].union(s);
        }
    }
    Ok(ApplicativeMorphism { related })
}

fn appmorph(source: &str, target: &str, relation: &str) -> Result<Report, String> {
    let src = load(source)?;
    let tgt = load(target)?;
    let c = if relation == "identity" {
        if src != tgt {
            return Err("`identity` needs the same structure on both sides".into());
        }
        identity_relation(&src)
    } else {
        read_relation(&src, &tgt, relation)?
    };
    let r = check_applicative_morphism(&src, src.phi(), &tgt, tgt.phi(), &c);
    let mut text = String::new();
    for (name, cond) in [
        ("downward closed", &r.downward_closed),
        ("realized monotonicity", &r.realized_monotonicity),
        ("realized application", &r.realized_application),
        ("filter preserving", &r.filter_preserving),
    ] {
        text.push_str(&format!("{name}: {}", yes(cond.holds)));
        if let Some(w) = cond.witness {
            text.push_str(&format!(" (witness {})", set_text(&tgt, w)));
        }
        if let Some(f) = &cond.failure {
            text.push_str(&format!(" — {f}"));
        }
        text.push('\n');
    }
    text.push_str(&format!("valid: {}", yes(r.valid)));
    report(r.valid, text, serde_json::to_value(&r).expect("serializable"))
}

fn machine(opca: &str) -> Result<FiniteAks, String> {
    let a = load(opca)?;
    let f = find_interpretation(&a).ok_or("no interpretation of b, c, k, w into the filter satisfies the laws")?;
    induce_aks(&a, f).map_err(input)
}

fn load_pole(aks: &FiniteAks, spec: &str) -> Result<Pole, String> {
    let text = if Path::new(spec).is_file() {
        std::fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?
    } else {
        spec.to_string()
    };
    Pole::parse(aks, &text).map_err(input)
}

fn cr(cli: &Cli, c: &CrCmd) -> Result<Report, String> {
    match c {
        CrCmd::Entails { opca, pole, f, g } => {
            let aks = machine(opca)?;
            let a = aks.opca();
            let pole = load_pole(&aks, pole)?;
            let f = parse_sets(f, a, 1).map_err(input)?;
            let g = parse_sets(g, a, 1).map_err(input)?;
            let r = cr_entails(&aks, &pole, &f, &g).map_err(input)?;
            let witness = r.witness.map(|w| a.name(w).to_string());
            report(
                r.holds,
                format!(
                    "{}\nrealizers {}\nwitness {}",
                    r.holds,
                    set_text(a, r.realizers),
                    witness.as_deref().unwrap_or("none")
                ),
                json!({"holds": r.holds, "realizers": set_json(a, r.realizers), "witness": witness}),
            )
        }
        CrCmd::Trace { law, m, n, pi, var } => {
            let law = match law {
                LawArg::Bullet => MachineLaw::Bullet,
                LawArg::Abstraction => MachineLaw::Abstraction,
                LawArg::Continuation => MachineLaw::Continuation,
                LawArg::Callcc => MachineLaw::CallCc,
            };
            let r = SyntacticAks::new(cli.fuel).check(law, var, &parse(m)?, &parse(n)?, &parse(pi)?, true);
            let mut text = match &r.trace {
                Some(chain) => chain.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("\n"),
                None => format!("{}\ndoes not reach\n{}", r.lhs, r.rhs),
            };
            if let Some(k) = r.steps {
                text.push_str(&format!("\nreached in {k} steps"));
            }
            report(r.holds, text, serde_json::to_value(&r).expect("serializable"))
        }
        CrCmd::Orthogonal { opca, pole, stacks } => {
            let aks = machine(opca)?;
            let a = aks.opca();
            let pole = load_pole(&aks, pole)?;
            let s = parse_sets(stacks, a, 1)
                .map_err(input)?
                .into_iter()
                .fold(ElemSet::EMPTY, ElemSet::union);
            let t = orthogonal(&pole, s);
            report(true, set_text(a, t), json!({"terms": set_json(a, t)}))
        }
    }
}

fn suite(cli: &Cli, c: &SuiteCmd) -> Result<Report, String> {
    let reports = match c {
        SuiteCmd::List => {
            let text = CRITERIA.iter().map(|(id, n)| format!("{id} {n}")).collect::<Vec<_>>().join("\n");
            let j = CRITERIA.iter().map(|(id, n)| json!({"id": id, "name": n})).collect::<Vec<_>>();
            return report(true, text, json!(j));
        }
        SuiteCmd::Run { name } if name == "all" => run_all(cli.seed),
        SuiteCmd::Run { name } => {
            let id = criterion_id(name).ok_or_else(|| {
                let known: Vec<&str> = CRITERIA.iter().map(|(_, n)| *n).collect();
                format!("unknown suite `{name}` (have: all, {})", known.join(", "))
            })?;
            vec![run_criterion(id, cli.seed).expect("resolved id")]
        }
    };
    let ok = reports.iter().all(|r| r.passed);
    let text = reports.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n");
    report(ok, text, serde_json::to_value(&reports).expect("serializable"))
}
