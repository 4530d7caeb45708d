//! Rendering of results as aligned tables, CSV, or JSON. Output is
//! byte-deterministic: collections are iterated in canonical order and
//! floats printed with Rust's shortest round-trip formatting.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::json;

use crate::maxent::{Constraint, MaxEntProblem, MaxEntSolution};
use crate::stats::CountResult;
use crate::system::{CoarseRelation, ParticleSystem, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?} (table, csv, json)")),
        }
    }
}

pub fn render_verdicts(verdicts: &[Verdict], format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut out = String::new();
            for v in verdicts {
                match &v.witness {
                    Some(w) => writeln!(out, "{:<4} FAIL  {}", v.axiom.code(), w),
                    None => writeln!(out, "{:<4} pass  {}", v.axiom.code(), v.axiom.summary()),
                }
                .expect("string write");
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("axiom,passed,witness\n");
            for v in verdicts {
                writeln!(
                    out,
                    "{},{},{}",
                    v.axiom.code(),
                    v.passed,
                    v.witness.as_deref().unwrap_or("")
                )
                .expect("string write");
            }
            out
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(verdicts).expect("serializable");
            s.push('\n');
            s
        }
    }
}

pub fn render_count(count: &CountResult, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => format!("{count}\n"),
        OutputFormat::Csv => format!("count\n{count}\n"),
        OutputFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(&json!({ "count": count.to_string(), "formula": count.formula }))
                    .expect("serializable");
            s.push('\n');
            s
        }
    }
}

/// Writes enumeration rows in canonical order with a trailing summary,
/// streaming so huge enumerations never materialize. The CSV header names
/// the states `s1..sk`.
pub fn write_enumeration(
    out: &mut dyn std::io::Write,
    states: u64,
    vectors: impl Iterator<Item = Vec<u64>>,
    format: OutputFormat,
) -> std::io::Result<u64> {
    let mut total: u64 = 0;
    match format {
        OutputFormat::Table => {
            for v in vectors {
                let row = v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                writeln!(out, "{row}")?;
                total += 1;
            }
            writeln!(out, "total {total}")?;
        }
        OutputFormat::Csv => {
            let header = (1..=states)
                .map(|i| format!("s{i}"))
                .collect::<Vec<_>>()
                .join(",");
            writeln!(out, "{header}")?;
            for v in vectors {
                let row = v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                writeln!(out, "{row}")?;
                total += 1;
            }
            writeln!(out, "total,{total}")?;
        }
        OutputFormat::Json => {
            writeln!(out, "{{")?;
            writeln!(out, "  \"vectors\": [")?;
            let mut first = true;
            for v in vectors {
                if !first {
                    writeln!(out, ",")?;
                }
                first = false;
                let row = v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                write!(out, "    [{row}]")?;
                total += 1;
            }
            if !first {
                writeln!(out)?;
            }
            writeln!(out, "  ],")?;
            writeln!(out, "  \"total\": {total}")?;
            writeln!(out, "}}")?;
        }
    }
    Ok(total)
}

pub fn render_solution(
    problem: &MaxEntProblem,
    solution: &MaxEntSolution,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Table => {
            let mut out = String::new();
            writeln!(out, "kind       {}", problem.kind()).expect("string write");
            writeln!(out, "alpha      {}", solution.alpha).expect("string write");
            writeln!(out, "beta       {}", solution.beta).expect("string write");
            writeln!(out, "bin  states energy occupation occupancy").expect("string write");
            for (i, bin) in problem.bins().iter().enumerate() {
                writeln!(
                    out,
                    "{:<4} {:<6} {:<6} {:<10} {}",
                    i, bin.states, bin.energy, solution.occupations[i], solution.occupancies[i]
                )
                .expect("string write");
            }
            writeln!(out, "total particles {}", solution.total_particles())
                .expect("string write");
            writeln!(out, "total energy    {}", solution.total_energy(problem))
                .expect("string write");
            writeln!(out, "residual n      {}", solution.residual_n).expect("string write");
            writeln!(out, "residual e      {}", solution.residual_e).expect("string write");
            writeln!(out, "iterations      {}", solution.iterations).expect("string write");
            writeln!(out, "converged       {}", solution.converged).expect("string write");
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("bin,states,energy,occupation,occupancy\n");
            for (i, bin) in problem.bins().iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    i, bin.states, bin.energy, solution.occupations[i], solution.occupancies[i]
                )
                .expect("string write");
            }
            writeln!(out, "alpha,{}", solution.alpha).expect("string write");
            writeln!(out, "beta,{}", solution.beta).expect("string write");
            writeln!(out, "residual_n,{}", solution.residual_n).expect("string write");
            writeln!(out, "residual_e,{}", solution.residual_e).expect("string write");
            writeln!(out, "iterations,{}", solution.iterations).expect("string write");
            writeln!(out, "converged,{}", solution.converged).expect("string write");
            out
        }
        OutputFormat::Json => {
            let bins: Vec<_> = problem
                .bins()
                .iter()
                .enumerate()
                .map(|(i, bin)| {
                    json!({
                        "bin": i,
                        "states": bin.states,
                        "energy": bin.energy,
                        "occupation": solution.occupations[i],
                        "occupancy": solution.occupancies[i],
                    })
                })
                .collect();
            let constraint = match problem.constraint() {
                Constraint::Beta(beta) => json!({ "beta": beta }),
                Constraint::TotalEnergy(e) => json!({ "energy": e }),
            };
            let mut s = serde_json::to_string_pretty(&json!({
                "kind": problem.kind(),
                "n_target": problem.n_target(),
                "constraint": constraint,
                "alpha": solution.alpha,
                "beta": solution.beta,
                "bins": bins,
                "residual_n": solution.residual_n,
                "residual_e": solution.residual_e,
                "iterations": solution.iterations,
                "converged": solution.converged,
            }))
            .expect("serializable");
            s.push('\n');
            s
        }
    }
}

pub fn render_atom(
    system: &ParticleSystem,
    coarse: Option<&CoarseRelation>,
    format: OutputFormat,
) -> String {
    let verdicts = system.validate();
    match format {
        OutputFormat::Json => {
            let states: Vec<_> = system
                .states()
                .iter()
                .map(|s| json!({ "state": s.id, "rank": s.rank }))
                .collect();
            let occupations = system.occupations();
            let coarse_json = coarse.map(|c| {
                c.pairs()
                    .iter()
                    .map(|p| {
                        json!({
                            "bin": p.label,
                            "energy": p.energy,
                            "states": p.states,
                            "occupation": p.occupation(),
                        })
                    })
                    .collect::<Vec<_>>()
            });
            let mut s = serde_json::to_string_pretty(&json!({
                "particles": system.particles(),
                "qc": system.particles().qc(),
                "states": states,
                "occupations": occupations,
                "coarse": coarse_json,
                "verdicts": verdicts,
            }))
            .expect("serializable");
            s.push('\n');
            s
        }
        _ => {
            let mut out = String::new();
            writeln!(out, "particles {} (qc {})", system.particles(), system.particles().qc())
                .expect("string write");
            for (state, occ) in system.states().iter().zip(system.occupations()) {
                writeln!(out, "state {:<4} rank {:<3} occupation {}", state.id, state.rank, occ)
                    .expect("string write");
            }
            if let Some(coarse) = coarse {
                for pair in coarse.pairs() {
                    writeln!(
                        out,
                        "bin {:<3} energy {:<4} states {:<2} occupation {}",
                        pair.label,
                        pair.energy,
                        pair.states,
                        pair.occupation()
                    )
                    .expect("string write");
                }
                let occs = coarse
                    .occupations()
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                writeln!(out, "coarse occupations {occs}").expect("string write");
            }
            out.push_str(&render_verdicts(&verdicts, OutputFormat::Table));
            out
        }
    }
}
