use std::fmt;
use std::io;

use serde::Deserialize;
use serde_json::json;
use sobolev_widths::ellipsoid::EllipsoidSpec;
use sobolev_widths::spectra::{equivalence_diagnostic, geometric_grid, sandwich_check, spectrum};
use sobolev_widths::tractability::{
    bridge_app_to_i, bridge_i_to_app, classify, classify_b_only, complexity_app, complexity_i, empirical_probe,
    NotionVerdict, PROBE_LABEL,
};
use sobolev_widths::{Comparison, Error, Family, Lattice, LatticeConfig, Mode, SequencePair, SequenceSpec};

use crate::args::{Cli, Cmp, Command, Direction, ModeArg, Problem, SeqArgs};
use crate::output::{write_json, Cell, Report};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Lib(Error),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::Capacity(_)) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) => f.write_str(s),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// A finished run: the report, and whether a checked identity failed.
pub struct Outcome {
    pub report: Report,
    pub violated: bool,
    /// Printed on standard error.
    pub notice: Option<&'static str>,
}

fn ok(report: Report) -> Outcome {
    Outcome { report, violated: false, notice: None }
}

/// Inline JSON when the argument looks like an object, a file path otherwise.
fn read_json_arg(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("cannot read {arg}: {e}")))
    }
}

/// Loads the sequences. `default_d` fills in a missing dimension when both
/// sides are closed forms.
fn load_seq(args: &SeqArgs, default_d: Option<usize>) -> Result<SequencePair> {
    match (&args.seq, &args.a, &args.b) {
        (Some(s), _, _) => {
            let mut spec: SequenceSpec = serde_json::from_str(&read_json_arg(s)?)
                .map_err(|e| CliError::Input(format!("bad sequence spec: {e}")))?;
            let both_closed = matches!((&spec.a, &spec.b), (Family::Closed(_), Family::Closed(_)));
            if spec.d.is_none() && both_closed {
                spec.d = default_d;
            }
            Ok(SequencePair::try_from(spec)?)
        }
        (None, Some(a), Some(b)) => Ok(SequencePair::explicit(a, b)?),
        _ => Err(CliError::Input("either --seq or both --a and --b are required".into())),
    }
}

fn lattice(seq: &SequencePair, mode: ModeArg) -> Result<Lattice> {
    let mode = match mode {
        ModeArg::Float => Mode::Float,
        ModeArg::Exact => Mode::Exact,
    };
    Ok(Lattice::with_config(seq, mode, LatticeConfig::default())?)
}

fn to_json<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn parse_st(s: &str) -> Result<Vec<(f64, f64)>> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let parts: Vec<&str> = p.split(',').map(str::trim).collect();
            match parts.as_slice() {
                [s, t] => match (s.parse(), t.parse()) {
                    (Ok(s), Ok(t)) => Ok((s, t)),
                    _ => Err(CliError::Input(format!("bad (s,t) pair '{p}'"))),
                },
                _ => Err(CliError::Input(format!("bad (s,t) pair '{p}', expected s,t"))),
            }
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyPair {
    a: Family,
    b: Family,
    #[serde(default)]
    #[allow(dead_code)]
    d: Option<usize>,
}

fn verdict_rows(group: &str, vs: &[NotionVerdict]) -> Vec<Vec<Cell>> {
    vs.iter()
        .map(|v| {
            let mut ev = Vec::new();
            write_json(&mut ev, &v.evidence).expect("in-memory write");
            let ev = String::from_utf8(ev).expect("utf-8").trim_end().to_string();
            let holds = match v.holds {
                Some(h) => h.to_string(),
                None => "unknown".into(),
            };
            vec![group.into(), v.notion.clone().into(), holds.into(), v.rule.clone().into(), ev.into()]
        })
        .collect()
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mode = cli.mode;
    match &cli.command {
        Command::Volume { seq, t, doubled } => {
            let seq = load_seq(seq, None)?;
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for &t in t {
                let spec =
                    if *doubled { EllipsoidSpec::doubled(&seq, t)? } else { EllipsoidSpec::from_seq(&seq, t)? };
                let log_v = spec.log_volume()?;
                let v = spec.volume().ok();
                rows.push(vec![t.into(), log_v.into(), v.into()]);
                items.push(json!({"t": t, "log_volume": log_v, "volume": v}));
            }
            Ok(ok(Report { columns: vec!["t", "log_volume", "volume"], rows, json: json!(items) }))
        }
        Command::Count { seq, t, cmp } => {
            let seq = load_seq(seq, None)?;
            let l = lattice(&seq, mode)?;
            let (c, name) = match cmp {
                Cmp::Strict => (Comparison::Strict, "strict"),
                Cmp::NonStrict => (Comparison::NonStrict, "non_strict"),
            };
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for &t in t {
                let n = l.count_f64(t, c)?;
                rows.push(vec![t.into(), name.into(), n.into()]);
                items.push(json!({"t": t, "comparison": name, "count": n}));
            }
            Ok(ok(Report { columns: vec!["t", "comparison", "count"], rows, json: json!(items) }))
        }
        Command::Widths { seq, n } => {
            let l = lattice(&load_seq(seq, None)?, mode)?;
            let res = spectrum(&l, n, None)?;
            let rows = res.iter().map(|r| vec![r.n.into(), r.weight.into(), r.a_n.into()]).collect();
            Ok(ok(Report { columns: vec!["n", "weight", "a_n"], rows, json: to_json(&res) }))
        }
        Command::Eigs { seq, n, omega } => {
            let l = lattice(&load_seq(seq, None)?, mode)?;
            let res = spectrum(&l, n, Some(*omega))?;
            let rows = res.iter().map(|r| vec![r.n.into(), r.weight.into(), r.lambda_n.into()]).collect();
            Ok(ok(Report { columns: vec!["n", "weight", "lambda_n"], rows, json: to_json(&res) }))
        }
        Command::Equiv { seq, n, n_max } => {
            let l = lattice(&load_seq(seq, None)?, mode)?;
            let grid = n.clone().unwrap_or_else(|| geometric_grid(*n_max));
            let diag = equivalence_diagnostic(&l, &grid)?;
            let rows = diag
                .rows
                .iter()
                .map(|r| vec![r.n.into(), r.a_n.into(), r.ratio.into(), diag.g_d.into(), diag.log_constant.into()])
                .collect();
            Ok(ok(Report { columns: vec!["n", "a_n", "ratio", "g_d", "log_constant"], rows, json: to_json(&diag) }))
        }
        Command::Sandwich { seq, m } => {
            let l = lattice(&load_seq(seq, None)?, mode)?;
            let rep = sandwich_check(&l, m)?;
            let rows = rep
                .rows
                .iter()
                .map(|r| vec![r.m.into(), r.lower.into(), r.count.into(), r.upper.into(), r.holds.into()])
                .collect();
            let violated = rep.violations > 0;
            Ok(Outcome {
                report: Report { columns: vec!["m", "lower", "count", "upper", "holds"], rows, json: to_json(&rep) },
                violated,
                notice: None,
            })
        }
        Command::Complexity { seq, eps, problem, omega } => {
            let l = lattice(&load_seq(seq, None)?, mode)?;
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for &e in eps {
                let (name, n) = match problem {
                    Problem::I => ("I", complexity_i(&l, e)?),
                    Problem::App => ("APP", complexity_app(&l, omega.expect("required by clap"), e)?),
                };
                rows.push(vec![name.into(), e.into(), (*omega).into(), n.into()]);
                items.push(json!({"problem": name, "epsilon": e, "omega": omega, "n": n}));
            }
            Ok(ok(Report { columns: vec!["problem", "epsilon", "omega", "n"], rows, json: json!(items) }))
        }
        Command::Bridge { seq, omega, eps, direction } => {
            let l = lattice(&load_seq(seq, None)?, mode)?;
            let mut reports = Vec::new();
            for &e in eps {
                if matches!(direction, Direction::AppToI | Direction::Both) {
                    reports.push(bridge_app_to_i(&l, *omega, e)?);
                }
                if matches!(direction, Direction::IToApp | Direction::Both) {
                    reports.push(bridge_i_to_app(&l, *omega, e)?);
                }
            }
            let json = to_json(&reports);
            let rows = reports
                .iter()
                .map(|r| {
                    let dir = json!(r.direction).as_str().unwrap_or_default().to_string();
                    vec![
                        dir.into(),
                        r.omega.into(),
                        r.epsilon.into(),
                        r.epsilon_mapped.into(),
                        r.ln_epsilon_mapped.into(),
                        r.n_source.into(),
                        r.n_target.into(),
                        r.equal_counts.into(),
                    ]
                })
                .collect();
            let violated = reports.iter().any(|r| !r.equal_counts);
            let columns = vec![
                "direction",
                "omega",
                "epsilon",
                "epsilon_mapped",
                "ln_epsilon_mapped",
                "n_source",
                "n_target",
                "equal_counts",
            ];
            Ok(Outcome { report: Report { columns, rows, json }, violated, notice: None })
        }
        Command::Classify { seq, b_family, st } => {
            let st = parse_st(st)?;
            let verdict = match (seq, b_family) {
                (Some(s), _) => {
                    let p: FamilyPair = serde_json::from_str(&read_json_arg(s)?)
                        .map_err(|e| CliError::Input(format!("bad family pair: {e}")))?;
                    classify(&p.a, &p.b, &st)?
                }
                (None, Some(b)) => {
                    let b: Family = serde_json::from_str(&read_json_arg(b)?)
                        .map_err(|e| CliError::Input(format!("bad family: {e}")))?;
                    classify_b_only(&b, &st)?
                }
                (None, None) => return Err(CliError::Input("--seq or --b-family is required".into())),
            };
            let mut rows = verdict_rows("I", &verdict.notions);
            rows.extend(verdict_rows("APP", &verdict.ec_notions));
            Ok(ok(Report {
                columns: vec!["problem", "notion", "holds", "rule", "evidence"],
                rows,
                json: to_json(&verdict),
            }))
        }
        Command::Probe { seq, s, t, eps, d } => {
            let seq = load_seq(seq, d.iter().copied().max())?;
            let m = match mode {
                ModeArg::Float => Mode::Float,
                ModeArg::Exact => Mode::Exact,
            };
            let cells = empirical_probe(&seq, *s, *t, eps, d, m, &LatticeConfig::default())?;
            let rows = cells
                .iter()
                .map(|c| vec![c.d.into(), c.epsilon.into(), c.n.into(), c.ratio.into(), c.note.clone().into()])
                .collect();
            let json = json!({"label": PROBE_LABEL, "s": s, "t": t, "cells": to_json(&cells)});
            Ok(Outcome {
                report: Report { columns: vec!["d", "epsilon", "n", "ratio", "note"], rows, json },
                violated: false,
                notice: Some(PROBE_LABEL),
            })
        }
    }
}
