//! Structured (JSON) and plain-text renderings of an expansion report.
//!
//! Rationals are `"p/q"` strings, a finite value is an array of rationals
//! and an infinite one is the string `"inf"`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::problem::ProblemSpec;
use crate::expansion::{DeadReason, Diagnostic, ExpandReport, OmegaSet, SeriesSolution, SeriesTerm, TraceStep};
use crate::numeric::{fmt_rat, parse_rat, ExpVec, Rat, Val};
use crate::poly::{write_term, EtaVec, Monomial};

#[derive(Serialize, Deserialize)]
struct ProblemDto {
    x_vars: Vec<String>,
    y_vars: Vec<String>,
    weight: Vec<Vec<String>>,
    generators: Vec<String>,
    options: OptionsDto,
}

#[derive(Serialize, Deserialize)]
struct OptionsDto {
    max_terms: usize,
    max_branches: usize,
    positive_only: bool,
}

#[derive(Serialize, Deserialize)]
struct TermDto {
    coeff: String,
    exp: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CoordDto {
    var: String,
    terms: Vec<TermDto>,
}

#[derive(Serialize, Deserialize)]
struct StepDto {
    eta: Vec<Value>,
    gamma: Vec<Option<Vec<String>>>,
    c: Vec<String>,
    d_gamma: u64,
}

#[derive(Serialize, Deserialize)]
struct SolutionDto {
    ramification: u64,
    exact: bool,
    residual_order: Value,
    coordinates: Vec<CoordDto>,
    trace: Vec<StepDto>,
}

#[derive(Serialize, Deserialize)]
struct DiagnosticDto {
    step: usize,
    path: Vec<Vec<Value>>,
    reason: DeadReason,
    candidates: usize,
    underdetermined: usize,
    irrational_roots: bool,
    nonzero_dimensional: bool,
}

#[derive(Serialize, Deserialize)]
struct ReportDto {
    problem: ProblemDto,
    solutions: Vec<SolutionDto>,
    diagnostics: Vec<DiagnosticDto>,
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

fn val_json(v: &Val) -> Value {
    match v {
        Val::Infinite => Value::String("inf".into()),
        Val::Finite(r) => Value::Array(r.iter().map(|x| Value::String(fmt_rat(x))).collect()),
    }
}

fn eta_json(e: &EtaVec) -> Vec<Value> {
    e.0.iter().map(val_json).collect()
}

fn parse_rats(v: &[String]) -> Result<Vec<Rat>, String> {
    v.iter()
        .map(|s| parse_rat(s).ok_or_else(|| format!("invalid rational '{s}'")))
        .collect()
}

fn parse_val(v: &Value) -> Result<Val, String> {
    match v {
        Value::String(s) if s == "inf" => Ok(Val::Infinite),
        Value::Array(items) => items
            .iter()
            .map(|x| match x {
                Value::String(s) => parse_rat(s).ok_or_else(|| format!("invalid rational '{s}'")),
                other => Err(format!("expected a rational string, found {other}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Val::Finite),
        other => Err(format!("expected a value, found {other}")),
    }
}

fn solution_dto(s: &SeriesSolution, y_names: &[String]) -> SolutionDto {
    SolutionDto {
        ramification: s.ramification,
        exact: s.exact,
        residual_order: val_json(&s.residual_order),
        coordinates: s
            .coords
            .iter()
            .zip(y_names)
            .map(|(terms, var)| CoordDto {
                var: var.clone(),
                terms: terms
                    .iter()
                    .map(|t| TermDto {
                        coeff: fmt_rat(&t.coeff),
                        exp: rats(&t.exp),
                    })
                    .collect(),
            })
            .collect(),
        trace: s
            .trace
            .iter()
            .map(|st| StepDto {
                eta: eta_json(&st.set.eta),
                gamma: st.set.gamma.iter().map(|g| g.as_deref().map(rats)).collect(),
                c: rats(&st.set.c),
                d_gamma: st.d_gamma,
            })
            .collect(),
    }
}

fn solution_from_dto(d: SolutionDto) -> Result<SeriesSolution, String> {
    let coords = d
        .coordinates
        .into_iter()
        .map(|c| {
            c.terms
                .into_iter()
                .map(|t| {
                    Ok(SeriesTerm {
                        coeff: parse_rat(&t.coeff).ok_or_else(|| format!("invalid rational '{}'", t.coeff))?,
                        exp: parse_rats(&t.exp)?,
                    })
                })
                .collect::<Result<Vec<_>, String>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let trace = d
        .trace
        .into_iter()
        .map(|st| {
            let eta = st.eta.iter().map(parse_val).collect::<Result<Vec<_>, _>>()?;
            let gamma = st
                .gamma
                .iter()
                .map(|g| g.as_deref().map(parse_rats).transpose())
                .collect::<Result<Vec<Option<ExpVec>>, _>>()?;
            Ok(TraceStep {
                set: OmegaSet {
                    eta: EtaVec(eta),
                    gamma,
                    c: parse_rats(&st.c)?,
                },
                d_gamma: st.d_gamma,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(SeriesSolution {
        coords,
        ramification: d.ramification,
        exact: d.exact,
        residual_order: parse_val(&d.residual_order)?,
        trace,
    })
}

fn diagnostic_dto(d: &Diagnostic) -> DiagnosticDto {
    DiagnosticDto {
        step: d.step,
        path: d.path.iter().map(eta_json).collect(),
        reason: d.reason,
        candidates: d.candidates,
        underdetermined: d.underdetermined,
        irrational_roots: d.irrational_roots,
        nonzero_dimensional: d.nonzero_dimensional,
    }
}

/// The full report as pretty-printed JSON, newline terminated.
pub fn to_json(spec: &ProblemSpec, report: &ExpandReport) -> String {
    let dto = ReportDto {
        problem: ProblemDto {
            x_vars: spec.names.x.clone(),
            y_vars: spec.names.y.clone(),
            weight: spec.weight.rows().iter().map(|r| rats(r)).collect(),
            generators: spec.gens.iter().map(|g| g.display_with(&spec.names).to_string()).collect(),
            options: OptionsDto {
                max_terms: spec.options.max_terms,
                max_branches: spec.options.max_branches,
                positive_only: spec.options.positive_only,
            },
        },
        solutions: report.solutions.iter().map(|s| solution_dto(s, &spec.names.y)).collect(),
        diagnostics: report.diagnostics.iter().map(diagnostic_dto).collect(),
    };
    let mut s = serde_json::to_string_pretty(&dto).expect("report serializes");
    s.push('\n');
    s
}

/// Solutions as a standalone JSON document, in the same shape as the
/// `solutions` field of a full report.
pub fn solutions_to_json(solutions: &[SeriesSolution], y_names: &[String]) -> String {
    let dtos: Vec<SolutionDto> = solutions.iter().map(|s| solution_dto(s, y_names)).collect();
    let mut s = serde_json::to_string_pretty(&serde_json::json!({ "solutions": dtos })).expect("solutions serialize");
    s.push('\n');
    s
}

/// Reads the `solutions` field of any JSON document written by this tool.
pub fn parse_solutions(text: &str) -> Result<Vec<SeriesSolution>, String> {
    let mut doc: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let sols = doc
        .get_mut("solutions")
        .map(Value::take)
        .ok_or("missing 'solutions' field")?;
    let dtos: Vec<SolutionDto> = serde_json::from_value(sols).map_err(|e| format!("malformed solution: {e}"))?;
    dtos.into_iter().map(solution_from_dto).collect()
}

fn fmt_val(v: &Val) -> String {
    match v {
        Val::Infinite => "infinity".into(),
        Val::Finite(_) => v.to_string(),
    }
}

fn fmt_eta(e: &EtaVec) -> String {
    let parts: Vec<String> = e.0.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// One coordinate of a solution, terms in the order they were computed.
pub fn fmt_series(terms: &[SeriesTerm], spec: &ProblemSpec) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        let m = Monomial {
            x: t.exp.clone(),
            y: vec![0; spec.ny()],
        };
        write_term(&mut s, i == 0, &m, &t.coeff, &spec.names).expect("writing to a String");
    }
    s
}

fn reason_text(r: DeadReason) -> &'static str {
    match r {
        DeadReason::NoPrevarietyCandidate => "no prevariety candidate",
        DeadReason::StrictIncreaseViolated => "strict increase violated",
        DeadReason::NoRationalTorusSolution => "no rational torus solution",
        DeadReason::SolutionsSkipped => "some torus solutions not followed",
    }
}

pub fn to_plain(spec: &ProblemSpec, report: &ExpandReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} solution(s), {} diagnostic(s)",
        report.solutions.len(),
        report.diagnostics.len()
    );
    for (i, sol) in report.solutions.iter().enumerate() {
        let _ = writeln!(
            s,
            "\nsolution {}: ramification {}, {}, residual order {}",
            i + 1,
            sol.ramification,
            if sol.exact { "exact" } else { "truncated" },
            fmt_val(&sol.residual_order)
        );
        for (name, terms) in spec.names.y.iter().zip(&sol.coords) {
            let _ = writeln!(s, "  {name} = {}", fmt_series(terms, spec));
        }
        for (k, st) in sol.trace.iter().enumerate() {
            let c: Vec<String> = rats(&st.set.c);
            let _ = writeln!(
                s,
                "  step {}: eta {}, c [{}], dGamma {}",
                k + 1,
                fmt_eta(&st.set.eta),
                c.join(", "),
                st.d_gamma
            );
        }
    }
    if !report.diagnostics.is_empty() {
        let _ = writeln!(s, "\ndiagnostics:");
        for d in &report.diagnostics {
            let path: Vec<String> = d.path.iter().map(fmt_eta).collect();
            let mut notes = Vec::new();
            if d.underdetermined > 0 {
                notes.push(format!("{} underdetermined tie system(s)", d.underdetermined));
            }
            if d.irrational_roots {
                notes.push("irrational roots skipped".to_string());
            }
            if d.nonzero_dimensional {
                notes.push("positive-dimensional initial system".to_string());
            }
            let _ = writeln!(
                s,
                "  step {} after [{}]: {} ({} candidate(s){}{})",
                d.step,
                path.join(" -> "),
                reason_text(d.reason),
                d.candidates,
                if notes.is_empty() { "" } else { "; " },
                notes.join("; ")
            );
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::problem::parse_problem;
    use crate::expansion::expand;

    #[test]
    fn round_trip_on_node() {
        let spec = parse_problem("vars x y\ngen y^2 - x^2 - x^3").unwrap();
        let report = expand(&spec.gens, &spec.weight, &spec.options).unwrap();
        let text = to_json(&spec, &report);
        let back = parse_solutions(&text).unwrap();
        assert_eq!(back, report.solutions);
        assert_eq!(solutions_to_json(&back, &spec.names.y), solutions_to_json(&report.solutions, &spec.names.y));
    }

    #[test]
    fn inf_and_arrays() {
        assert_eq!(val_json(&Val::Infinite), Value::String("inf".into()));
        let v = Val::Finite(vec![Rat::new(3.into(), 2.into())]);
        assert_eq!(parse_val(&val_json(&v)).unwrap(), v);
        assert!(parse_val(&Value::String("infinity".into())).is_err());
    }

    #[test]
    fn plain_lists_series() {
        let spec = parse_problem("vars x1 x2 y1\ngen y1^2 - x1*x2").unwrap();
        let report = expand(&spec.gens, &spec.weight, &spec.options).unwrap();
        let text = to_plain(&spec, &report);
        assert!(text.starts_with("2 solution(s)"), "{text}");
        assert!(text.contains("y1 = x1^(1/2)*x2^(1/2)"), "{text}");
        assert!(text.contains("y1 = -x1^(1/2)*x2^(1/2)"), "{text}");
    }
}
