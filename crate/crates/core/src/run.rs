//! One run of the `rgk` front end: configuration, dispatch by mode, and the
//! report in text or JSON form.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::automaton::GuaranteeMode;
use crate::error::{Error, Result};
use crate::lang::Bound;
use crate::outline::parse_outline;
use crate::program::denote;
use crate::report::{overall, Check, Verdict};
use crate::soundness::{parallel_symmetry, rule_soundness, RULES};
use crate::state::{StateSpace, DEFAULT_STATE_CEILING};
use crate::sweep::{language_laws, model_axioms, SweepConfig};
use crate::syntax::{parse_pred, parse_program, parse_spec};
use crate::verifier::{check_bruteforce, check_outline, NodeReport};
use crate::worked::{findp_default_domain, findp_scaled, Findp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Laws,
    Axioms,
    Verify,
    Findp,
    Dump,
}

/// Everything a run needs. File contents are passed as text; `None`
/// fields fall back to per-mode defaults.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub domain: Option<u32>,
    pub vars: Vec<String>,
    pub bound: Option<usize>,
    pub seed: u64,
    pub instances: Option<usize>,
    #[serde(skip)]
    pub program: Option<String>,
    #[serde(skip)]
    pub spec: Option<String>,
    #[serde(skip)]
    pub outline: Option<String>,
    pub guarantee: GuaranteeChoice,
    pub array: Option<Vec<u32>>,
    pub pred: Option<String>,
    pub dump: bool,
    pub ceiling: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GuaranteeChoice {
    Contextual,
    Literal,
}

impl From<GuaranteeChoice> for GuaranteeMode {
    fn from(g: GuaranteeChoice) -> Self {
        match g {
            GuaranteeChoice::Contextual => GuaranteeMode::Contextual,
            GuaranteeChoice::Literal => GuaranteeMode::Literal,
        }
    }
}

impl RunConfig {
    pub fn new(mode: Mode) -> Self {
        RunConfig {
            mode,
            domain: None,
            vars: Vec::new(),
            bound: None,
            seed: 0,
            instances: None,
            program: None,
            spec: None,
            outline: None,
            guarantee: GuaranteeChoice::Contextual,
            array: None,
            pred: None,
            dump: false,
            ceiling: DEFAULT_STATE_CEILING,
        }
    }

    fn bound_or(&self, default: usize) -> Result<Bound> {
        Bound::new(self.bound.unwrap_or(default))
    }

    fn space(&self) -> Result<StateSpace> {
        if self.vars.is_empty() {
            return Err(Error::Config("--vars is required in this mode".into()));
        }
        let n = self.domain.unwrap_or(4);
        if n < 2 {
            return Err(Error::DomainTooSmall(n));
        }
        StateSpace::with_ceiling(&self.vars, n, self.ceiling)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub nodes: Vec<NodeReport>,
    /// Valuations of the states named in witnesses.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub states: BTreeMap<u32, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dump: Option<String>,
    pub elapsed_ms: u128,
}

impl RunReport {
    /// 0 pass, 1 fail, 3 bound insufficient. Errors (2) never produce a
    /// report.
    pub fn exit_code(&self) -> i32 {
        exit_code(self.verdict)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = write!(out, "rgk {:?} seed={}", c.mode, c.seed);
        if let Some(n) = c.domain {
            let _ = write!(out, " domain={n}");
        }
        if let Some(l) = c.bound {
            let _ = write!(out, " bound={l}");
        }
        if !c.vars.is_empty() {
            let _ = write!(out, " vars={}", c.vars.join(","));
        }
        out.push('\n');
        for check in &self.checks {
            let _ = writeln!(out, "{check}");
        }
        for node in &self.nodes {
            let _ = writeln!(out, "{} {} {}", node.path, node.rule, node.verdict);
            for check in &node.checks {
                let _ = writeln!(out, "  {check}");
            }
        }
        if !self.states.is_empty() {
            out.push_str("states:\n");
            for (id, v) in &self.states {
                let _ = writeln!(out, "  {id} = {v}");
            }
        }
        if let Some(d) = &self.dump {
            out.push_str("denotation:\n");
            out.push_str(d);
            if !d.ends_with('\n') {
                out.push('\n');
            }
        }
        let _ = writeln!(out, "verdict: {} ({} ms)", self.verdict, self.elapsed_ms);
        out
    }
}

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::BoundInsufficient => 3,
    }
}

/// Collects the states mentioned by witness letters like `(3,5)`.
fn legend<'a>(space: &StateSpace, checks: impl Iterator<Item = &'a Check>) -> BTreeMap<u32, String> {
    let mut out = BTreeMap::new();
    for c in checks {
        for letter in c.witness.iter().flatten() {
            let inner = letter.trim_start_matches('(').trim_end_matches(')');
            for id in inner.split(',').filter_map(|s| s.trim().parse::<u32>().ok()) {
                if (id as usize) < space.size() {
                    out.entry(id).or_insert_with(|| space.describe(id));
                }
            }
        }
    }
    out
}

pub fn run(config: RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport {
        config: config.clone(),
        verdict: Verdict::Pass,
        checks: Vec::new(),
        nodes: Vec::new(),
        states: BTreeMap::new(),
        dump: None,
        elapsed_ms: 0,
    };
    match config.mode {
        Mode::Laws => {
            let cfg = sweep_config(&config, 1000)?;
            report.checks = language_laws(&cfg)?;
        }
        Mode::Axioms => {
            let cfg = sweep_config(&config, 200)?;
            report.checks = model_axioms(&cfg)?;
            for rule in RULES {
                report.checks.push(rule_soundness(rule, config.seed, 50)?);
            }
            report.checks.push(parallel_symmetry(config.seed, 50)?);
        }
        Mode::Verify => verify(&config, &mut report)?,
        Mode::Findp => findp(&config, &mut report)?,
        Mode::Dump => {
            let space = config.space()?;
            let text = config
                .program
                .as_deref()
                .ok_or_else(|| Error::Config("--program is required to dump".into()))?;
            let prog = parse_program(text)?;
            prog.validate(&space)?;
            report.dump = Some(denote(&space, &prog, config.bound_or(3)?)?.dump());
        }
    }
    report.verdict = overall(&report.checks).and(report.nodes.iter().fold(Verdict::Pass, |a, n| a.and(n.verdict)));
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

fn sweep_config(config: &RunConfig, instances: usize) -> Result<SweepConfig> {
    let states = config.domain.unwrap_or(3) as usize;
    let bound = config.bound_or(4)?.get();
    if states == 0 {
        return Err(Error::DomainTooSmall(0));
    }
    Ok(SweepConfig::new(config.seed, states, bound, config.instances.unwrap_or(instances)))
}

fn verify(config: &RunConfig, report: &mut RunReport) -> Result<()> {
    let space = config.space()?;
    let bound = config.bound_or(6)?;
    let mode = config.guarantee.into();
    if let Some(text) = &config.outline {
        let root = parse_outline(text)?.resolve(&space)?;
        if let (Some(p), Some(s)) = (&config.program, &config.spec) {
            let given = parse_spec(s)?.quintuple(&space, parse_program(p)?)?;
            let c = &root.conclusion;
            let same = given.prog == c.prog
                && given.rely == c.rely
                && given.guar == c.guar
                && given.pre == c.pre
                && given.post == c.post;
            if !same {
                return Err(Error::Outline("the outline's root does not prove the given spec and program".into()));
            }
        }
        let out = check_outline(&space, &root, bound, mode)?;
        report.states = legend(&space, out.nodes.iter().flat_map(|n| n.checks.iter()));
        report.nodes = out.nodes;
        if config.dump {
            report.dump = Some(denote(&space, &root.conclusion.prog, bound)?.dump());
        }
        return Ok(());
    }
    let (Some(p), Some(s)) = (&config.program, &config.spec) else {
        return Err(Error::Config("verify needs --program and --spec, or --outline".into()));
    };
    let q = parse_spec(s)?.quintuple(&space, parse_program(p)?)?;
    let leaf = check_bruteforce(&space, &q, bound, mode)?;
    report.checks = leaf.checks();
    report.states = legend(&space, report.checks.iter());
    if config.dump {
        report.dump = Some(denote(&space, &q.prog, bound)?.dump());
    }
    Ok(())
}

fn findp(config: &RunConfig, report: &mut RunReport) -> Result<()> {
    let bound = config.bound_or(8)?;
    if let Some(array) = &config.array {
        let pred = parse_pred(config.pred.as_deref().unwrap_or("v = 1"))?;
        let out = findp_scaled(array, &pred, bound, config.domain)?;
        report.nodes = out.nodes;
        return Ok(());
    }
    // every hit pattern of every array of length at most two
    let patterns: Vec<Vec<bool>> = (0..=2usize)
        .flat_map(|len| (0..1u32 << len).map(move |m| (0..len).map(|k| m >> k & 1 == 1).collect()))
        .collect();
    for hits in patterns {
        let n = config.domain.unwrap_or_else(|| findp_default_domain(hits.len()));
        let fp = Findp::new(hits.clone(), n)?;
        let out = fp.check(bound)?;
        let name = format!("FINDP hits={}", pattern(&hits));
        let failed: Vec<&NodeReport> = out.nodes.iter().filter(|n| !n.verdict.is_pass()).collect();
        let mut check = Check {
            name,
            verdict: out.verdict,
            witness: None,
            detail: Some(format!("{} nodes, domain {n}", out.nodes.len())),
        };
        if let Some(node) = failed.first() {
            check.detail = Some(format!("first failing node {}", node.path));
            check.witness = node.checks.iter().find_map(|c| c.witness.clone());
        }
        report.checks.push(check);
    }
    Ok(())
}

fn pattern(hits: &[bool]) -> String {
    if hits.is_empty() {
        return "[]".into();
    }
    hits.iter().map(|h| if *h { 'T' } else { 'F' }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const PROG: &str = include_str!("../fixtures/par_assign.prog");
    const SPEC: &str = include_str!("../fixtures/par_assign.spec");
    const WRONG: &str = include_str!("../fixtures/par_assign_wrong.spec");

    fn verify_cfg(spec: &str) -> RunConfig {
        let mut c = RunConfig::new(Mode::Verify);
        c.vars = vec!["x".into(), "y".into(), "z".into()];
        c.domain = Some(8);
        c.bound = Some(6);
        c.program = Some(PROG.into());
        c.spec = Some(spec.into());
        c
    }

    #[test]
    fn verify_parallel_assignment() {
        let ok = run(verify_cfg(SPEC)).unwrap();
        assert_eq!(ok.exit_code(), 0, "{}", ok.to_text());
        let bad = run(verify_cfg(WRONG)).unwrap();
        assert_eq!(bad.exit_code(), 1);
        assert!(bad.checks.iter().any(|c| c.witness.is_some()));
        assert!(!bad.states.is_empty());
    }

    #[test]
    fn structured_report_echoes_config() {
        let r = run(verify_cfg(SPEC)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["config"]["domain"], 8);
        assert_eq!(v["verdict"], "pass");
        assert!(v["elapsed_ms"].is_number());
    }

    #[test]
    fn missing_inputs_are_config_errors() {
        let mut c = verify_cfg(SPEC);
        c.spec = None;
        assert!(matches!(run(c), Err(Error::Config(_))));
        let mut c = verify_cfg(SPEC);
        c.vars.clear();
        assert!(matches!(run(c), Err(Error::Config(_))));
    }

    #[test]
    fn dump_prints_one_word_per_line() {
        let mut c = RunConfig::new(Mode::Dump);
        c.vars = vec!["x".into()];
        c.domain = Some(2);
        c.bound = Some(1);
        c.program = Some("x := 1".into());
        let r = run(c).unwrap();
        let d = r.dump.unwrap();
        assert!(d.lines().all(|l| l.starts_with('(') || l.is_empty()), "{d}");
    }
}
