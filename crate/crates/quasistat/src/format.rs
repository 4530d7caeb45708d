//! Line-oriented text formats for particle systems and occupation problems.
//!
//! Both formats share the conventions: a versioned header line first,
//! whitespace-separated tokens, `#` comments and blank lines ignored.
//!
//! System files:
//!
//! ```text
//! quasistat system v1
//! species <id> <fermion|boson> <count>
//! label <id>                     # optional M-atom declaration
//! state <id> <rank>
//! occ <state> <descriptor>       # <n>, or <species>:<n>[,<species>:<n>...]
//! bin <label> <energy> <state> [<state>...]
//! ```
//!
//! Problem files:
//!
//! ```text
//! quasistat problem v1
//! kind <fermion|boson>
//! bin <states> <energy>
//! n <target>
//! beta <value> | energy <target>
//! ```
//!
//! Writing is canonical: species sorted by id, states in rank order, one
//! explicit occupation line per state (zeros included), bins in energy
//! order. A parsed system re-serializes to the same bytes.

use std::fmt::Write as _;

use thiserror::Error;

use crate::maxent::{Bin, Constraint, MaxEntProblem};
use crate::qset::{Kind, Qset, SpeciesId, Universe};
use crate::system::{
    EnergyBin, EnergyBinning, ParticleSystem, QuasiRelation, RelationPair, State, StateSet,
};

pub const SYSTEM_HEADER: &str = "quasistat system v1";
pub const PROBLEM_HEADER: &str = "quasistat problem v1";

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    /// The file parsed but does not assemble into a valid structure.
    #[error("invalid description: {0}")]
    Invalid(String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines().enumerate(),
        }
    }

    /// Next significant line: comments and blanks skipped, 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.iter.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn expect_header(lines: &mut Lines, header: &str) -> Result<(), FormatError> {
    match lines.next() {
        Some((_, line)) if line == header => Ok(()),
        Some((n, line)) => Err(syntax(
            n,
            format!("expected header {header:?}, found {line:?}"),
        )),
        None => Err(syntax(1, format!("empty input, expected {header:?}"))),
    }
}

fn parse_count(token: &str, line: usize) -> Result<u64, FormatError> {
    token
        .parse::<u64>()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, found {token:?}")))
}

fn parse_f64(token: &str, line: usize) -> Result<f64, FormatError> {
    token
        .parse::<f64>()
        .map_err(|_| syntax(line, format!("expected a number, found {token:?}")))
}

fn parse_kind(token: &str, line: usize) -> Result<Kind, FormatError> {
    token.parse::<Kind>().map_err(|e| syntax(line, e))
}

/// Parses an occupation descriptor: a bare count (single-species universes
/// only, zero always allowed) or comma-separated `species:count` pairs.
fn parse_descriptor(
    token: &str,
    line: usize,
    species: &[(SpeciesId, Kind, u64)],
) -> Result<Qset, FormatError> {
    if let Ok(n) = token.parse::<u64>() {
        if n == 0 {
            return Ok(Qset::empty());
        }
        if species.len() != 1 {
            return Err(syntax(
                line,
                "bare occupation counts are ambiguous with several species; \
                 use species:count",
            ));
        }
        return Qset::builder()
            .particles(species[0].0.clone(), n)
            .build()
            .map_err(|e| syntax(line, e.to_string()));
    }
    let mut builder = Qset::builder();
    for part in token.split(',') {
        let Some((id, count)) = part.split_once(':') else {
            return Err(syntax(
                line,
                format!("expected species:count, found {part:?}"),
            ));
        };
        builder = builder.particles(id, parse_count(count, line)?);
    }
    builder.build().map_err(|e| syntax(line, e.to_string()))
}

/// Parses a system description, with its energy binning when bin lines are
/// present.
pub fn parse_system(
    text: &str,
) -> Result<(ParticleSystem, Option<EnergyBinning>), FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, SYSTEM_HEADER)?;

    let mut species: Vec<(SpeciesId, Kind, u64)> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut states: Vec<State> = Vec::new();
    let mut occupations: Vec<(usize, String, Qset)> = Vec::new();
    let mut bins: Vec<EnergyBin> = Vec::new();

    while let Some((n, line)) = lines.next() {
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().expect("non-empty line");
        let rest: Vec<&str> = tokens.collect();
        match keyword {
            "species" => {
                let [id, kind, count] = rest.as_slice() else {
                    return Err(syntax(n, "usage: species <id> <fermion|boson> <count>"));
                };
                species.push((
                    SpeciesId::from(*id),
                    parse_kind(kind, n)?,
                    parse_count(count, n)?,
                ));
            }
            "label" => {
                let [id] = rest.as_slice() else {
                    return Err(syntax(n, "usage: label <id>"));
                };
                labels.push((*id).to_string());
            }
            "state" => {
                let [id, rank] = rest.as_slice() else {
                    return Err(syntax(n, "usage: state <id> <rank>"));
                };
                let rank = rank
                    .parse::<u32>()
                    .map_err(|_| syntax(n, format!("expected a rank, found {rank:?}")))?;
                states.push(State::new(*id, rank));
            }
            "occ" => {
                let [state, descriptor] = rest.as_slice() else {
                    return Err(syntax(n, "usage: occ <state> <descriptor>"));
                };
                let family = parse_descriptor(descriptor, n, &species)?;
                occupations.push((n, (*state).to_string(), family));
            }
            "bin" => {
                if rest.len() < 3 {
                    return Err(syntax(n, "usage: bin <label> <energy> <state>..."));
                }
                let energy = parse_f64(rest[1], n)?;
                bins.push(EnergyBin::new(
                    rest[0],
                    energy,
                    rest[2..].iter().map(|s| (*s).into()).collect(),
                ));
            }
            other => return Err(syntax(n, format!("unknown keyword {other:?}"))),
        }
    }

    let mut universe = Universe::builder();
    for (id, kind, count) in &species {
        universe = universe.species(id.clone(), *kind, *count);
    }
    for label in &labels {
        universe = universe.label(label.as_str());
    }
    let universe = universe
        .build()
        .map_err(|e| FormatError::Invalid(e.to_string()))?;

    let state_set = StateSet::new(states).map_err(|e| FormatError::Invalid(e.to_string()))?;
    let mut pairs = Vec::with_capacity(occupations.len());
    for (line, state, family) in occupations {
        if !state_set.contains(&state.as_str().into()) {
            return Err(syntax(line, format!("unknown state {state:?}")));
        }
        pairs.push(RelationPair::new(family, state));
    }
    let particles = universe.population();
    let system = ParticleSystem::new(universe, particles, state_set, QuasiRelation::new(pairs))
        .map_err(|e| FormatError::Invalid(e.to_string()))?;

    let binning = if bins.is_empty() {
        None
    } else {
        Some(EnergyBinning::new(bins).map_err(|e| FormatError::Invalid(e.to_string()))?)
    };
    Ok((system, binning))
}

/// Canonical text form of a system (with binning when given). Parsing the
/// output reproduces the system exactly.
pub fn write_system(system: &ParticleSystem, bins: Option<&EnergyBinning>) -> String {
    let mut out = String::new();
    out.push_str(SYSTEM_HEADER);
    out.push('\n');
    let universe = system.universe();
    for id in universe.species_ids() {
        let kind = universe.kind_of(id).expect("declared");
        let count = universe.species_count(id).expect("declared");
        writeln!(out, "species {id} {kind} {count}").expect("string write");
    }
    for label in universe.labels() {
        writeln!(out, "label {label}").expect("string write");
    }
    for state in system.states().iter() {
        writeln!(out, "state {} {}", state.id, state.rank).expect("string write");
    }
    let single_species = universe.species_ids().count() == 1;
    for pair in system.relation().pairs() {
        let descriptor = if pair.family.is_empty() {
            "0".to_string()
        } else if single_species {
            pair.family.qc().to_string()
        } else {
            pair.family
                .species_counts()
                .map(|(id, count)| format!("{id}:{count}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(out, "occ {} {}", pair.state, descriptor).expect("string write");
    }
    if let Some(binning) = bins {
        for bin in binning.bins() {
            let states = bin
                .states
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(out, "bin {} {} {}", bin.label, bin.energy, states).expect("string write");
        }
    }
    out
}

/// Parses an occupation problem description.
pub fn parse_problem(text: &str) -> Result<MaxEntProblem, FormatError> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, PROBLEM_HEADER)?;

    let mut kind: Option<Kind> = None;
    let mut bins: Vec<Bin> = Vec::new();
    let mut n_target: Option<f64> = None;
    let mut constraint: Option<Constraint> = None;

    while let Some((n, line)) = lines.next() {
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().expect("non-empty line");
        let rest: Vec<&str> = tokens.collect();
        match keyword {
            "kind" => {
                let [k] = rest.as_slice() else {
                    return Err(syntax(n, "usage: kind <fermion|boson>"));
                };
                if kind.replace(parse_kind(k, n)?).is_some() {
                    return Err(syntax(n, "kind declared twice"));
                }
            }
            "bin" => {
                let [states, energy] = rest.as_slice() else {
                    return Err(syntax(n, "usage: bin <states> <energy>"));
                };
                bins.push(Bin::new(parse_count(states, n)?, parse_f64(energy, n)?));
            }
            "n" => {
                let [v] = rest.as_slice() else {
                    return Err(syntax(n, "usage: n <target>"));
                };
                if n_target.replace(parse_f64(v, n)?).is_some() {
                    return Err(syntax(n, "particle target declared twice"));
                }
            }
            "beta" => {
                let [v] = rest.as_slice() else {
                    return Err(syntax(n, "usage: beta <value>"));
                };
                if constraint.replace(Constraint::Beta(parse_f64(v, n)?)).is_some() {
                    return Err(syntax(n, "constraint declared twice"));
                }
            }
            "energy" => {
                let [v] = rest.as_slice() else {
                    return Err(syntax(n, "usage: energy <target>"));
                };
                if constraint
                    .replace(Constraint::TotalEnergy(parse_f64(v, n)?))
                    .is_some()
                {
                    return Err(syntax(n, "constraint declared twice"));
                }
            }
            other => return Err(syntax(n, format!("unknown keyword {other:?}"))),
        }
    }

    let kind = kind.ok_or_else(|| FormatError::Invalid("missing kind line".into()))?;
    let n_target =
        n_target.ok_or_else(|| FormatError::Invalid("missing particle target (n line)".into()))?;
    let constraint = constraint
        .ok_or_else(|| FormatError::Invalid("missing constraint (beta or energy line)".into()))?;
    MaxEntProblem::new(kind, bins, n_target, constraint)
        .map_err(|e| FormatError::Invalid(e.to_string()))
}

/// Canonical text form of a problem (bins in the problem's sorted order).
pub fn write_problem(problem: &MaxEntProblem) -> String {
    let mut out = String::new();
    out.push_str(PROBLEM_HEADER);
    out.push('\n');
    writeln!(out, "kind {}", problem.kind()).expect("string write");
    for bin in problem.bins() {
        writeln!(out, "bin {} {}", bin.states, bin.energy).expect("string write");
    }
    writeln!(out, "n {}", problem.n_target()).expect("string write");
    match problem.constraint() {
        Constraint::Beta(beta) => writeln!(out, "beta {beta}").expect("string write"),
        Constraint::TotalEnergy(e) => writeln!(out, "energy {e}").expect("string write"),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::preset_sodium;

    #[test]
    fn sodium_roundtrip_is_lossless_and_canonical() {
        let (system, bins) = preset_sodium();
        let text = write_system(&system, Some(&bins));
        let (parsed, parsed_bins) = parse_system(&text).unwrap();
        assert_eq!(parsed, system);
        assert_eq!(parsed_bins.as_ref(), Some(&bins));
        assert_eq!(write_system(&parsed, parsed_bins.as_ref()), text);
    }

    #[test]
    fn empty_input_is_a_header_error() {
        let err = parse_system("").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, .. }));
    }

    #[test]
    fn wrong_header_is_rejected_with_location() {
        let err = parse_system("something else\n").unwrap_err();
        assert_eq!(
            err,
            FormatError::Syntax {
                line: 1,
                message: "expected header \"quasistat system v1\", found \"something else\""
                    .into()
            }
        );
    }

    #[test]
    fn unknown_keyword_reports_its_line() {
        let text = "quasistat system v1\nspecies e fermion 1\nstate s1 1\nwhatever x\n";
        let err = parse_system(text).unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 4, .. }));
    }

    #[test]
    fn multi_species_descriptors() {
        let text = "quasistat system v1\n\
                    species e fermion 1\n\
                    species gamma boson 2\n\
                    state s1 1\n\
                    state s2 2\n\
                    occ s1 e:1,gamma:1\n\
                    occ s2 gamma:1\n";
        let (system, _) = parse_system(text).unwrap();
        assert_eq!(system.occupations(), vec![2, 1]);
        let text2 = write_system(&system, None);
        let (again, _) = parse_system(&text2).unwrap();
        assert_eq!(again, system);
    }

    #[test]
    fn bare_count_needs_single_species() {
        let text = "quasistat system v1\n\
                    species e fermion 1\n\
                    species mu fermion 1\n\
                    state s1 1\n\
                    occ s1 2\n";
        let err = parse_system(text).unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 5, .. }));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# system\nquasistat system v1\n\n# the electron\nspecies e fermion 1 # one\nstate s1 1\nocc s1 1\n";
        assert!(parse_system(text).is_ok());
    }

    #[test]
    fn problem_roundtrip() {
        let text = "quasistat problem v1\n\
                    kind fermion\n\
                    bin 2 0\n\
                    bin 2 1\n\
                    n 2\n\
                    energy 0.5\n";
        let problem = parse_problem(text).unwrap();
        assert_eq!(problem.bins().len(), 2);
        let rewritten = write_problem(&problem);
        assert_eq!(parse_problem(&rewritten).unwrap(), problem);
    }

    #[test]
    fn problem_requires_all_sections() {
        let err = parse_problem("quasistat problem v1\nkind boson\nbin 2 0\n").unwrap_err();
        assert!(matches!(err, FormatError::Invalid(_)));
        let err =
            parse_problem("quasistat problem v1\nkind boson\nbin 2 0\nn 1\nbeta 0\nenergy 1\n")
                .unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 6, .. }));
    }
}
