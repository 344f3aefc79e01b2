//! Line-oriented text formats for codes, partitions and witness sets.
//!
//! ```text
//! # five-qubit code
//! dim = 2
//! n = 5
//! stabilizer ZZXIX
//! stabilizer XZZXI
//! stabilizer IXZZX
//! stabilizer XIXZZ
//! logical X XXXXX
//! logical Z ZZZZZ
//! partition 0 | 1 | 2 | 3 | 4
//! ```
//!
//! Witness files hold declared c-disjoint sets, each introduced by a
//! `class <a-vector> c <c>` line and followed by one Pauli string per line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::code::{CodeError, StabilizerCode};
use crate::partition::Partition;
use crate::pauli::PauliOperator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// A parsed code file.
#[derive(Debug, Clone)]
pub struct CodeFile {
    pub code: StabilizerCode,
    /// Single-qudit parts unless the file declares a partition.
    pub partition: Partition,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn key_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(key)?.trim_start();
    rest.strip_prefix('=').map(str::trim)
}

pub fn parse_code_file(text: &str) -> Result<CodeFile, ParseError> {
    let mut dim: Option<u32> = None;
    let mut n: Option<usize> = None;
    let mut stabilizers: Vec<(usize, String)> = Vec::new();
    let mut logical_x: Vec<(usize, String)> = Vec::new();
    let mut logical_z: Vec<(usize, String)> = Vec::new();
    let mut partition: Option<(usize, String)> = None;

    for (line_no, line) in content_lines(text) {
        if let Some(v) = key_value(line, "dim") {
            let m = v
                .parse::<u32>()
                .map_err(|_| err(line_no, format!("invalid dimension {v:?}")))?;
            dim = Some(m);
        } else if let Some(v) = key_value(line, "n") {
            let value = v
                .parse::<usize>()
                .map_err(|_| err(line_no, format!("invalid qudit count {v:?}")))?;
            n = Some(value);
        } else if let Some(rest) = line.strip_prefix("stabilizer ") {
            stabilizers.push((line_no, rest.trim().to_string()));
        } else if let Some(rest) = line.strip_prefix("logical ") {
            let rest = rest.trim_start();
            if let Some(p) = rest.strip_prefix("X ") {
                logical_x.push((line_no, p.trim().to_string()));
            } else if let Some(p) = rest.strip_prefix("Z ") {
                logical_z.push((line_no, p.trim().to_string()));
            } else {
                return Err(err(line_no, "expected `logical X <pauli>` or `logical Z <pauli>`"));
            }
        } else if let Some(rest) = line.strip_prefix("partition") {
            if partition.is_some() {
                return Err(err(line_no, "duplicate partition line"));
            }
            partition = Some((line_no, rest.trim().to_string()));
        } else {
            return Err(err(line_no, format!("unrecognised line {line:?}")));
        }
    }

    let m = dim.unwrap_or(2);
    let parse_all = |items: &[(usize, String)]| -> Result<Vec<PauliOperator>, ParseError> {
        items
            .iter()
            .map(|(line_no, s)| {
                let p = PauliOperator::parse(s, m).map_err(|e| err(*line_no, e.to_string()))?;
                if let Some(n) = n {
                    if p.num_qudits() != n {
                        return Err(err(
                            *line_no,
                            format!("operator acts on {} qudits, expected {n}", p.num_qudits()),
                        ));
                    }
                }
                Ok(p)
            })
            .collect()
    };
    let generators = parse_all(&stabilizers)?;
    let xs = parse_all(&logical_x)?;
    let zs = parse_all(&logical_z)?;
    let first_line = stabilizers.first().map_or(1, |s| s.0);
    let code = if xs.is_empty() && zs.is_empty() {
        StabilizerCode::build(generators, m)
    } else {
        StabilizerCode::with_logicals(generators, m, xs, zs)
    }
    .map_err(|e| code_error_line(e, &stabilizers, first_line))?;

    let n = code.num_qudits();
    let partition = match partition {
        None => Partition::single_qudits(n),
        Some((line_no, spec)) => parse_partition_spec(&spec, n).map_err(|m| err(line_no, m))?,
    };
    Ok(CodeFile { code, partition })
}

fn code_error_line(e: CodeError, stabilizers: &[(usize, String)], fallback: usize) -> ParseError {
    let line = match &e {
        CodeError::NonCommuting { j, .. } => stabilizers.get(*j).map(|s| s.0),
        CodeError::Dependent { index, .. } => stabilizers.get(*index).map(|s| s.0),
        _ => None,
    };
    err(line.unwrap_or(fallback), e.to_string())
}

/// `0 1 | 2 3 | 4`.
pub fn parse_partition_spec(spec: &str, n: usize) -> Result<Partition, String> {
    let mut parts = Vec::new();
    for chunk in spec.split('|') {
        let part = chunk
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| format!("invalid qudit index {t:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        parts.push(part);
    }
    Partition::new(parts, n).map_err(|e| e.to_string())
}

/// A partition file: one `partition ...` line or a bare `0 1 | 2 3` spec.
pub fn parse_partition_file(text: &str, n: usize) -> Result<Partition, ParseError> {
    let mut found = None;
    for (line_no, line) in content_lines(text) {
        if found.is_some() {
            return Err(err(line_no, "more than one partition given"));
        }
        let spec = line.strip_prefix("partition").unwrap_or(line).trim();
        found = Some(parse_partition_spec(spec, n).map_err(|m| err(line_no, m))?);
    }
    found.ok_or_else(|| err(1, "no partition found"))
}

pub fn write_code_file(code: &StabilizerCode, partition: &Partition, comment: &str) -> String {
    let mut out = String::new();
    for line in comment.lines() {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "dim = {}", code.dim());
    let _ = writeln!(out, "n = {}", code.num_qudits());
    for g in code.generators() {
        let _ = writeln!(out, "stabilizer {g}");
    }
    for (x, z) in code.logical_x().iter().zip(code.logical_z()) {
        let _ = writeln!(out, "logical X {x}");
        let _ = writeln!(out, "logical Z {z}");
    }
    if !partition.is_single_qudit() {
        let _ = writeln!(out, "partition {partition}");
    }
    out
}

/// A declared c-disjoint set for one logical class, not yet verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSet {
    pub label: Vec<u8>,
    pub c: u64,
    pub members: Vec<PauliOperator>,
}

pub fn parse_witness_file(text: &str, m: u32) -> Result<Vec<WitnessSet>, ParseError> {
    let mut sets: Vec<WitnessSet> = Vec::new();
    for (line_no, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("class ") {
            let mut tokens = rest.split_whitespace();
            let label_text = tokens.next().ok_or_else(|| err(line_no, "missing class label"))?;
            let label = label_text
                .split(',')
                .map(|t| t.trim().parse::<u8>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| err(line_no, format!("invalid class label {label_text:?}")))?;
            if tokens.next() != Some("c") {
                return Err(err(line_no, "expected `class <a-vector> c <c>`"));
            }
            let c = tokens
                .next()
                .and_then(|t| t.parse::<u64>().ok())
                .filter(|&c| c >= 1)
                .ok_or_else(|| err(line_no, "invalid c"))?;
            if tokens.next().is_some() {
                return Err(err(line_no, "trailing tokens after c"));
            }
            sets.push(WitnessSet {
                label,
                c,
                members: Vec::new(),
            });
        } else {
            let set = sets
                .last_mut()
                .ok_or_else(|| err(line_no, "Pauli string before any `class` line"))?;
            let p = PauliOperator::parse(line, m).map_err(|e| err(line_no, e.to_string()))?;
            set.members.push(p);
        }
    }
    Ok(sets)
}

pub fn write_witness_file(sets: &[WitnessSet]) -> String {
    let mut out = String::new();
    for set in sets {
        let label: Vec<String> = set.label.iter().map(u8::to_string).collect();
        let _ = writeln!(out, "class {} c {}", label.join(","), set.c);
        for p in &set.members {
            let _ = writeln!(out, "{}", p.unphased());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIVE: &str = "\
# five-qubit code
dim = 2
n = 5
stabilizer ZZXIX
stabilizer XZZXI   # second
stabilizer IXZZX
stabilizer XIXZZ
logical X XXXXX
logical Z ZZZZZ
";

    #[test]
    fn parses_and_round_trips() {
        let file = parse_code_file(FIVE).unwrap();
        assert_eq!(file.code.num_qudits(), 5);
        assert_eq!(file.code.num_logical(), 1);
        assert!(file.partition.is_single_qudit());
        let text = write_code_file(&file.code, &file.partition, "again");
        let again = parse_code_file(&text).unwrap();
        assert_eq!(again.code, file.code);
    }

    #[test]
    fn reports_line_numbers() {
        let bad = "dim = 2\nstabilizer XX\nstabilizer ZI\n";
        let e = parse_code_file(bad).unwrap_err();
        assert_eq!(e.line, 3);
        let bad = "dim = 2\nn = 3\nstabilizer XX\n";
        assert_eq!(parse_code_file(bad).unwrap_err().line, 3);
        let bad = "dim = 2\nstabilizer XQ\n";
        assert_eq!(parse_code_file(bad).unwrap_err().line, 2);
        let bad = "dim = 2\nfoo\n";
        assert_eq!(parse_code_file(bad).unwrap_err().line, 2);
    }

    #[test]
    fn partition_line() {
        let text = "stabilizer XXXX\nstabilizer ZZZZ\npartition 0 1 | 2 3\n";
        let file = parse_code_file(text).unwrap();
        assert_eq!(file.partition.num_parts(), 2);
        let p = parse_partition_file("# halves\n2 3 | 0 1\n", 4).unwrap();
        assert_eq!(p.part(0), &[2, 3]);
        assert!(parse_partition_file("0 1 | 1 2 3", 4).is_err());
    }

    #[test]
    fn witness_round_trip() {
        let text = "class 1,0 c 1\nXXIIIIIII\nIIIXXIIII\nclass 0,1 c 2\nZIIZIIIII\n";
        let sets = parse_witness_file(text, 2).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[0].label, vec![1, 0]);
        assert_eq!(sets[0].members.len(), 2);
        assert_eq!(sets[1].c, 2);
        assert_eq!(parse_witness_file(&write_witness_file(&sets), 2).unwrap(), sets);
        assert!(parse_witness_file("XX\n", 2).is_err());
        assert!(parse_witness_file("class 1,0 k 2\n", 2).is_err());
    }
}
