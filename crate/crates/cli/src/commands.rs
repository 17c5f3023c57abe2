use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use dlmeta_core::conformance::{run_suite, GenConfig, GenMode};
use dlmeta_core::defaults::{df, render_default_theory, DefaultTheoryA};
use dlmeta_core::engine::justify_all;
use dlmeta_core::graph::{completeness_from, dependency_graph, unknowable};
use dlmeta_core::parse::parse_atom;
use dlmeta_core::semantics::{brute_force_stable_models, brute_force_width, kunen_trace, stable_models, AtomSet};
use dlmeta_core::theory::is_identifier;
use dlmeta_core::translate::{to_default_theory, translate};
use dlmeta_core::{
    parse_program, parse_theory, render_program, render_theory, DefeasibleTheory, GroundProgram, Literal, Reasoner,
    Tag, TaggedLiteral,
};

use crate::Command;

pub const AFFIRMED: u8 = 0;
pub const NOT_AFFIRMED: u8 = 10;
pub const INPUT_ERROR: u8 = 2;
pub const CHECK_FAILED: u8 = 3;

struct Outcome {
    command: &'static str,
    input: Value,
    result: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn new(command: &'static str, input: Value, result: impl Serialize, text: String, code: u8) -> Self {
        Outcome {
            command,
            input,
            result: serde_json::to_value(result).expect("results serialize"),
            text,
            code,
        }
    }
}

pub fn run(cmd: Command, json: bool) -> u8 {
    match dispatch(cmd) {
        Ok(o) => {
            if json {
                let env = json!({"command": o.command, "input": o.input, "result": o.result});
                println!("{}", serde_json::to_string_pretty(&env).unwrap());
            } else {
                print!("{}", o.text);
            }
            o.code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            INPUT_ERROR
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn diagnostics(path: &Path, ds: &[dlmeta_core::SourceDiagnostic]) -> anyhow::Error {
    let lines: Vec<String> = ds.iter().map(|d| format!("{}:{d}", path.display())).collect();
    anyhow!("{}", lines.join("\n"))
}

fn load_theory(path: &Path) -> Result<DefeasibleTheory> {
    parse_theory(&read(path)?).map_err(|ds| diagnostics(path, &ds))
}

fn load_program(path: &Path) -> Result<GroundProgram> {
    parse_program(&read(path)?).map_err(|ds| diagnostics(path, &ds))
}

fn parse_literal(s: &str) -> Result<Literal> {
    let (atom, positive) = match s.strip_prefix('~') {
        Some(a) => (a, false),
        None => (s, true),
    };
    if !is_identifier(atom) {
        bail!("`{s}` is not a literal");
    }
    Ok(Literal::new(atom, positive))
}

fn parse_tag(s: &str) -> Result<Tag> {
    Tag::from_ascii(s).ok_or_else(|| anyhow!("unknown tag `{s}`; expected +D, -D, +d or -d"))
}

fn is_dfl(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "dfl")
}

fn show_set(m: &AtomSet) -> String {
    if m.is_empty() {
        return "{}".into();
    }
    m.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|i| i.to_string() + "\n").collect()
}

fn file_input(path: &Path) -> Value {
    json!({ "file": path.display().to_string() })
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Conclude { file, tag, literal } => conclude(&file, tag.as_deref(), literal.as_deref()),
        Command::Explain { file, tag, literal } => explain(&file, &tag, &literal),
        Command::Translate { file, output, defaults } => translate_cmd(&file, output.as_deref(), defaults),
        Command::Parse { file } => parse_cmd(&file),
        Command::Stable {
            file,
            all,
            max,
            brute_force,
        } => stable(&file, all, max, brute_force),
        Command::Kunen { file, query, trace } => kunen(&file, query.as_deref(), trace),
        Command::Defaults { file, extensions } => defaults(&file, extensions),
        Command::Graph { file, dot } => graph(&file, dot),
        Command::Verify {
            trials,
            seed,
            atoms,
            rules,
            max_body,
            decisive,
        } => verify(trials, seed, atoms, rules, max_body, decisive),
    }
}

fn conclude(file: &Path, tag: Option<&str>, literal: Option<&str>) -> Result<Outcome> {
    let d = load_theory(file)?;
    let r = Reasoner::new(&d);
    let mut input = file_input(file);
    if let (Some(tag), Some(lit)) = (tag, literal) {
        let q = TaggedLiteral::new(parse_tag(tag)?, parse_literal(lit)?);
        input["query"] = json!(q);
        let holds = r.holds(&q);
        let text = if holds { "yes\n" } else { "no\n" };
        let code = if holds { AFFIRMED } else { NOT_AFFIRMED };
        return Ok(Outcome::new(
            "conclude",
            input,
            json!({"query": q, "holds": holds}),
            text.into(),
            code,
        ));
    }
    let e = r.extension();
    let text = lines(Tag::ALL.iter().map(|&t| {
        let ls: Vec<String> = e.component(t).iter().map(ToString::to_string).collect();
        if ls.is_empty() {
            format!("{t}: (none)")
        } else {
            format!("{t}: {}", ls.join(", "))
        }
    }));
    let result = json!({"extension": e, "iterations": r.iterations()});
    Ok(Outcome::new("conclude", input, result, text, AFFIRMED))
}

fn explain(file: &Path, tag: &str, literal: &str) -> Result<Outcome> {
    let d = load_theory(file)?;
    let q = TaggedLiteral::new(parse_tag(tag)?, parse_literal(literal)?);
    let mut input = file_input(file);
    input["query"] = json!(q);
    let Some(der) = Reasoner::new(&d).derive(&q) else {
        return Ok(Outcome::new(
            "explain",
            input,
            json!({"provable": false}),
            "not provable\n".into(),
            NOT_AFFIRMED,
        ));
    };
    let just = justify_all(&d, &der.lines).map_err(|i| anyhow!("internal error: derivation breaks at line {i}"))?;
    let rows: Vec<Value> = der
        .lines
        .iter()
        .zip(&just)
        .map(|(l, j)| json!({"line": l, "text": format!("{l} {j}"), "justification": j}))
        .collect();
    let text = lines(der.lines.iter().zip(&just).map(|(l, j)| format!("{l} {j}")));
    Ok(Outcome::new(
        "explain",
        input,
        json!({"provable": true, "lines": rows}),
        text,
        AFFIRMED,
    ))
}

fn translate_cmd(file: &Path, output: Option<&Path>, defaults: bool) -> Result<Outcome> {
    let d = load_theory(file)?;
    let rendered = if defaults {
        render_default_theory(&to_default_theory(&d))
    } else {
        render_program(&translate(&d))
    };
    let mut input = file_input(file);
    input["defaults"] = json!(defaults);
    let text = match output {
        Some(out) => {
            fs::write(out, &rendered).with_context(|| format!("cannot write {}", out.display()))?;
            input["output"] = json!(out.display().to_string());
            String::new()
        }
        None => rendered.clone(),
    };
    let kind = if defaults { "default_theory" } else { "program" };
    Ok(Outcome::new(
        "translate",
        input,
        json!({"kind": kind, "text": rendered}),
        text,
        AFFIRMED,
    ))
}

fn parse_cmd(file: &Path) -> Result<Outcome> {
    let (kind, text, size) = if is_dfl(file) {
        let d = load_theory(file)?;
        ("theory", render_theory(&d), d.rules.len() + d.facts.len() + d.sup.len())
    } else {
        let p = load_program(file)?;
        ("program", render_program(&p), p.len())
    };
    Ok(Outcome::new(
        "parse",
        file_input(file),
        json!({"kind": kind, "statements": size, "text": text}),
        text.clone(),
        AFFIRMED,
    ))
}

fn stable(file: &Path, all: bool, max: Option<usize>, brute: bool) -> Result<Outcome> {
    let p = load_program(file)?;
    let limit = if all { None } else { Some(max.unwrap_or(1)) };
    let mut models = if brute {
        brute_force_stable_models(&p).ok_or_else(|| {
            anyhow!(
                "brute force needs {} guess atoms, more than the limit of {}",
                brute_force_width(&p),
                dlmeta_core::semantics::BRUTE_FORCE_LIMIT
            )
        })?
    } else {
        stable_models(&p, None)
    };
    if let Some(n) = limit {
        models.truncate(n);
    }
    let mut input = file_input(file);
    input["all"] = json!(all);
    input["max"] = json!(max);
    input["brute_force"] = json!(brute);
    let code = if models.is_empty() { NOT_AFFIRMED } else { AFFIRMED };
    let text = lines(models.iter().map(show_set));
    Ok(Outcome::new("stable", input, json!({"models": models}), text, code))
}

fn kunen(file: &Path, query: Option<&str>, trace: bool) -> Result<Outcome> {
    let p = load_program(file)?;
    let states = kunen_trace(&p);
    let fix = states.last().unwrap();
    let steps = states.len() - 1;
    let mut input = file_input(file);
    input["trace"] = json!(trace);
    let mut text = String::new();
    let mut result = json!({"steps": steps});
    if trace {
        let mut deltas = Vec::new();
        for (n, w) in states.windows(2).enumerate() {
            let changed: BTreeMap<String, String> = w[1]
                .values
                .iter()
                .filter(|(a, v)| w[0].get(a) != **v)
                .map(|(a, v)| (a.to_string(), v.to_string()))
                .collect();
            let shown: Vec<String> = changed.iter().map(|(a, v)| format!("{a}={v}")).collect();
            text += &format!("I{}: {}\n", n + 1, if shown.is_empty() { "(no change)".into() } else { shown.join(" ") });
            deltas.push(changed);
        }
        result["trace"] = json!(deltas);
    }
    if let Some(q) = query {
        input["query"] = json!(q);
        let (negated, atom) = match q.trim().strip_prefix("not ") {
            Some(a) => (true, a.trim()),
            None => (false, q.trim()),
        };
        let atom = parse_atom(atom).map_err(|d| anyhow!("query: {d}"))?;
        let v = if negated { fix.get(&atom).negate() } else { fix.get(&atom) };
        result["value"] = json!(v);
        text += &format!("{v}\n");
        let code = if v == dlmeta_core::semantics::Truth::T { AFFIRMED } else { NOT_AFFIRMED };
        return Ok(Outcome::new("kunen", input, result, text, code));
    }
    result["values"] = json!(fix.values.iter().map(|(a, v)| (a.to_string(), *v)).collect::<BTreeMap<_, _>>());
    text += &lines(fix.values.iter().map(|(a, v)| format!("{a} {v}")));
    Ok(Outcome::new("kunen", input, result, text, AFFIRMED))
}

fn defaults(file: &Path, extensions: bool) -> Result<Outcome> {
    let t: DefaultTheoryA = if is_dfl(file) {
        to_default_theory(&load_theory(file)?)
    } else {
        df(&load_program(file)?)
    };
    let mut input = file_input(file);
    input["extensions"] = json!(extensions);
    if !extensions {
        let text = render_default_theory(&t);
        return Ok(Outcome::new("defaults", input, json!({"theory": t}), text, AFFIRMED));
    }
    let exts: Vec<AtomSet> = t.extensions().into_iter().collect();
    let code = if exts.is_empty() { NOT_AFFIRMED } else { AFFIRMED };
    let text = lines(exts.iter().map(show_set));
    Ok(Outcome::new("defaults", input, json!({"extensions": exts}), text, code))
}

fn graph(file: &Path, dot: bool) -> Result<Outcome> {
    let d = load_theory(file)?;
    let g = dependency_graph(&d);
    let r = Reasoner::new(&d);
    let u = unknowable(&d, r.extension());
    let cycle = g.find_cycle();
    let complete = completeness_from(&d, r.extension()).complete;
    let yn = |b: bool| if b { "yes" } else { "no" };
    let list = |s: &std::collections::BTreeSet<Literal>| {
        if s.is_empty() {
            "(none)".to_string()
        } else {
            s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        }
    };
    let mut report = vec![
        format!("decisive: {}", yn(cycle.is_none())),
        format!("complete: {}", yn(complete)),
    ];
    if let Some(c) = &cycle {
        report.push(format!("cycle: {} -> {}", c.join(" -> "), c[0]));
    }
    report.push(format!("strictly unknowable: {}", list(&u.strict)));
    report.push(format!("defeasibly unknowable: {}", list(&u.defeasible)));
    let text = if dot {
        // Keep the output valid DOT.
        lines(report.iter().map(|l| format!("// {l}"))) + &g.to_dot("dg")
    } else {
        lines(&report)
    };
    let mut input = file_input(file);
    input["dot"] = json!(dot);
    let result = json!({
        "decisive": cycle.is_none(),
        "complete": complete,
        "cycle": cycle,
        "graph": g,
        "unknowable": u,
    });
    Ok(Outcome::new("graph", input, result, text, AFFIRMED))
}

fn verify(trials: usize, seed: u64, atoms: usize, rules: usize, max_body: usize, decisive: bool) -> Result<Outcome> {
    let cfg = GenConfig {
        atoms,
        rules,
        max_body,
        seed,
        mode: if decisive { GenMode::Decisive } else { GenMode::Any },
        ..GenConfig::default()
    };
    cfg.validate().map_err(|e| anyhow!(e))?;
    let report = run_suite(&cfg, trials);
    let mut text = format!(
        "{} trials ({} decisive mode), seed {seed}\n",
        report.summary.trials, report.summary.decisive_mode_trials
    );
    for (name, t) in &report.summary.by_check {
        text += &format!("{name}: {} pass, {} fail, {} vacuous\n", t.pass, t.fail, t.vacuous);
    }
    let failures: Vec<_> = report.failures().collect();
    for (t, c) in &failures {
        text += &format!(
            "FAIL {} [{}]: {}\n{}",
            c.name,
            c.digest,
            c.witness.as_deref().unwrap_or(""),
            t.theory_dfl
        );
    }
    text += &format!("{} failures\n", failures.len());
    let code = if failures.is_empty() { AFFIRMED } else { CHECK_FAILED };
    let input = json!({
        "trials": trials, "seed": seed, "atoms": atoms, "rules": rules,
        "max_body": max_body, "decisive": decisive,
    });
    Ok(Outcome::new("verify", input, &report, text, code))
}
