//! Dense circuits over the parts of a partition, and their text format.
//!
//! ```text
//! # one layer per line, gates separated by `;`
//! gate * H
//! gate 0,1 CZ ; gate 2 T
//! gate 3 [[1, 0], [0, e(1/8)]]
//! ```
//!
//! `*` applies a one-part gate to every part. A named single-qudit gate on
//! a multi-qudit part acts on each of its qudits. Matrix entries are sums of
//! products of decimals, `i`, `sqrt(x)` and `e(p/q) = exp(2 pi i p/q)`.

use std::fmt;

use thiserror::Error;

use crate::code::CircuitShape;
use crate::oracle::dense::{apply_gate, root_of_unity, single_pauli, Matrix, C64};
use crate::partition::Partition;
use crate::pauli::PauliOperator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct CircuitParseError {
    pub line: usize,
    pub message: String,
}

/// One matrix on an ordered list of qudits.
#[derive(Debug, Clone)]
pub struct Factor {
    pub qudits: Vec<usize>,
    pub matrix: Matrix,
}

/// A gate on a set of parts, stored as commuting factors on disjoint qudits.
#[derive(Debug, Clone)]
pub struct Gate {
    pub parts: Vec<usize>,
    pub label: String,
    pub factors: Vec<Factor>,
}

impl Gate {
    fn adjoint(&self) -> Gate {
        Gate {
            parts: self.parts.clone(),
            label: format!("{}^dag", self.label),
            factors: self
                .factors
                .iter()
                .map(|f| Factor {
                    qudits: f.qudits.clone(),
                    matrix: f.matrix.adjoint(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DenseCircuit {
    m: u32,
    n: usize,
    layers: Vec<Vec<Gate>>,
    shape: CircuitShape,
    pauli: bool,
}

impl DenseCircuit {
    /// Checks that gates within a layer touch disjoint parts and records the
    /// shape: `q` is the largest part count of a gate, `h` the layer count.
    pub fn new(layers: Vec<Vec<Gate>>, m: u32, n: usize) -> Result<Self, String> {
        let mut q = 1;
        for (li, layer) in layers.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for g in layer {
                q = q.max(g.parts.len() as u32);
                for &p in &g.parts {
                    if !seen.insert(p) {
                        return Err(format!("layer {} uses part {p} twice", li + 1));
                    }
                }
                for f in &g.factors {
                    if f.qudits.iter().any(|&x| x >= n) {
                        return Err(format!("gate {} addresses a qudit outside 0..{n}", g.label));
                    }
                }
            }
        }
        let shape = CircuitShape::new(q, (layers.len() as u32).max(1)).expect("q, h >= 1");
        Ok(DenseCircuit {
            m,
            n,
            layers,
            shape,
            pauli: false,
        })
    }

    /// A depth-one transversal circuit for a Pauli operator.
    pub fn from_pauli(p: &PauliOperator, partition: &Partition) -> Self {
        let m = p.dim().get() as u32;
        let layer = (0..partition.num_parts())
            .filter(|&i| partition.part(i).iter().any(|&q| p.acts_on(q)))
            .map(|i| Gate {
                parts: vec![i],
                label: "pauli".into(),
                factors: partition
                    .part(i)
                    .iter()
                    .filter(|&&q| p.acts_on(q))
                    .map(|&q| Factor {
                        qudits: vec![q],
                        matrix: single_pauli(m, p.x(q), p.z(q)),
                    })
                    .collect(),
            })
            .collect();
        let mut c = DenseCircuit::new(vec![layer], m, p.num_qudits()).expect("disjoint parts");
        c.pauli = true;
        c
    }

    /// One transversal layer: `gates[i]` (a single-qudit matrix) on every
    /// qudit of part `i`; `None` leaves the part alone.
    pub fn transversal(gates: &[Option<(String, Matrix)>], partition: &Partition, m: u32) -> Self {
        let layer = gates
            .iter()
            .enumerate()
            .filter_map(|(i, g)| {
                let (label, matrix) = g.as_ref()?;
                Some(Gate {
                    parts: vec![i],
                    label: label.clone(),
                    factors: partition
                        .part(i)
                        .iter()
                        .map(|&q| Factor {
                            qudits: vec![q],
                            matrix: matrix.clone(),
                        })
                        .collect(),
                })
            })
            .collect();
        DenseCircuit::new(vec![layer], m, partition.num_qudits()).expect("disjoint parts")
    }

    pub fn dim(&self) -> u32 {
        self.m
    }

    pub fn num_qudits(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[Vec<Gate>] {
        &self.layers
    }

    /// Declared shape; for commutators this is the bookkeeping bound rather
    /// than the literal layer count.
    pub fn shape(&self) -> CircuitShape {
        self.shape
    }

    pub fn is_pauli(&self) -> bool {
        self.pauli
    }

    /// Parts touched by some gate.
    pub fn touched_parts(&self) -> Vec<usize> {
        let mut parts: Vec<usize> = self.layers.iter().flatten().flat_map(|g| g.parts.clone()).collect();
        parts.sort_unstable();
        parts.dedup();
        parts
    }

    pub fn apply(&self, state: &mut [C64]) {
        for layer in &self.layers {
            for g in layer {
                for f in &g.factors {
                    apply_gate(state, self.m as usize, self.n, &f.qudits, &f.matrix);
                }
            }
        }
    }

    pub fn adjoint(&self) -> DenseCircuit {
        DenseCircuit {
            m: self.m,
            n: self.n,
            layers: self
                .layers
                .iter()
                .rev()
                .map(|l| l.iter().map(Gate::adjoint).collect())
                .collect(),
            shape: self.shape,
            pauli: self.pauli,
        }
    }

    /// Full unitary, column by column.
    pub fn dense_matrix(&self) -> Matrix {
        let d = (self.m as usize).pow(self.n as u32);
        let mut out = Matrix::zeros(d);
        for j in 0..d {
            let mut e = vec![C64::new(0.0, 0.0); d];
            e[j] = C64::new(1.0, 0.0);
            self.apply(&mut e);
            for (i, v) in e.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }
}

/// `U V U^dag V^dag` as a circuit.
///
/// Depth bookkeeping: a Pauli `V` is absorbed into neighbouring layers, so
/// the commutator of a depth-`h` circuit with a Pauli has depth at most `2h`;
/// otherwise the depths add up.
pub fn group_commutator(u: &DenseCircuit, v: &DenseCircuit) -> DenseCircuit {
    assert_eq!((u.m, u.n), (v.m, v.n), "circuit shapes differ");
    let mut layers = u.layers.clone();
    layers.extend(v.layers.iter().cloned());
    layers.extend(u.adjoint().layers);
    layers.extend(v.adjoint().layers);
    let h = if v.pauli {
        2 * u.shape.h()
    } else if u.pauli {
        2 * v.shape.h()
    } else {
        2 * (u.shape.h() + v.shape.h())
    };
    let q = u.shape.q().max(v.shape.q());
    DenseCircuit {
        m: u.m,
        n: u.n,
        layers,
        shape: CircuitShape::new(q, h).expect("positive"),
        pauli: u.pauli && v.pauli,
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Named single-qudit gates; `S`, `T` only for qubits.
pub fn named_single(name: &str, m: u32) -> Option<Matrix> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match (name, m) {
        ("I", _) => Some(Matrix::identity(m as usize)),
        ("X", _) => Some(single_pauli(m, 1, 0)),
        ("Z", _) => Some(single_pauli(m, 0, 1)),
        ("H", 2) => Matrix::from_rows(vec![vec![c(r, 0.0), c(r, 0.0)], vec![c(r, 0.0), c(-r, 0.0)]]),
        ("H", _) => {
            // discrete Fourier transform
            let s = 1.0 / (m as f64).sqrt();
            Matrix::from_rows(
                (0..m)
                    .map(|j| (0..m).map(|k| root_of_unity((j * k) as i64, m) * s).collect())
                    .collect(),
            )
        }
        ("S", 2) => Some(Matrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0)])),
        ("Sdg", 2) => Some(Matrix::diagonal(&[c(1.0, 0.0), c(0.0, -1.0)])),
        ("T", 2) => Some(Matrix::diagonal(&[c(1.0, 0.0), root_of_unity(1, 8)])),
        ("Tdg", 2) => Some(Matrix::diagonal(&[c(1.0, 0.0), root_of_unity(-1, 8)])),
        _ => None,
    }
}

fn named_two(name: &str, m: u32) -> Option<Matrix> {
    if m != 2 {
        return None;
    }
    let mut g = Matrix::identity(4);
    match name {
        "CZ" => g.set(3, 3, c(-1.0, 0.0)),
        "CX" => {
            g.set(2, 2, c(0.0, 0.0));
            g.set(3, 3, c(0.0, 0.0));
            g.set(2, 3, c(1.0, 0.0));
            g.set(3, 2, c(1.0, 0.0));
        }
        _ => return None,
    }
    Some(g)
}

/// Splits at `sep` outside brackets and parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ if ch == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_factor(f: &str) -> Result<C64, String> {
    let f = f.trim();
    if f == "i" {
        return Ok(c(0.0, 1.0));
    }
    if let Some(inner) = f.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let v: f64 = inner.trim().parse().map_err(|_| format!("invalid sqrt argument {inner:?}"))?;
        if v < 0.0 {
            return Err(format!("sqrt of negative {v}"));
        }
        return Ok(c(v.sqrt(), 0.0));
    }
    if let Some(inner) = f.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
        let (p, q) = inner.split_once('/').unwrap_or((inner, "1"));
        let p: i64 = p.trim().parse().map_err(|_| format!("invalid phase {inner:?}"))?;
        let q: i64 = q.trim().parse().map_err(|_| format!("invalid phase {inner:?}"))?;
        if q <= 0 {
            return Err(format!("invalid phase denominator in {inner:?}"));
        }
        return Ok(C64::from_polar(1.0, 2.0 * std::f64::consts::PI * p as f64 / q as f64));
    }
    if let Some(num) = f.strip_suffix('i') {
        let v: f64 = num.trim().parse().map_err(|_| format!("invalid number {f:?}"))?;
        return Ok(c(0.0, v));
    }
    let v: f64 = f.parse().map_err(|_| format!("invalid number {f:?}"))?;
    Ok(c(v, 0.0))
}

fn parse_product(t: &str) -> Result<C64, String> {
    let mut acc = c(1.0, 0.0);
    let mut rest = t.trim();
    let mut divide = false;
    loop {
        let cut = split_top(rest, '*')[0];
        let cut = split_top(cut, '/')[0];
        let factor = parse_factor(cut)?;
        acc = if divide { acc / factor } else { acc * factor };
        rest = rest[cut.len()..].trim_start();
        match rest.chars().next() {
            None => return Ok(acc),
            Some('*') => divide = false,
            Some('/') => divide = true,
            Some(other) => return Err(format!("unexpected {other:?} in {t:?}")),
        }
        rest = rest[1..].trim_start();
    }
}

/// Sum of signed products.
fn parse_entry(s: &str) -> Result<C64, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty matrix entry".into());
    }
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes: Vec<char> = s.chars().collect();
    for (i, &ch) in bytes.iter().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 && !matches!(bytes[i - 1], 'e' | 'E' | '*' | '/') => {
                terms.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    terms.push(&s[start..]);
    let mut total = c(0.0, 0.0);
    for t in terms {
        let t = t.trim();
        let (sign, body) = if let Some(b) = t.strip_prefix('-') {
            (-1.0, b)
        } else {
            (1.0, t.strip_prefix('+').unwrap_or(t))
        };
        total += parse_product(body)? * sign;
    }
    Ok(total)
}

pub fn parse_matrix(s: &str) -> Result<Matrix, String> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or("matrix literal must look like [[a, b], [c, d]]")?;
    let rows = split_top(inner, ',')
        .into_iter()
        .map(|row| {
            let row = row.trim();
            let body = row
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| format!("invalid matrix row {row:?}"))?;
            split_top(body, ',').into_iter().map(parse_entry).collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(rows).ok_or_else(|| "matrix literal is not square".into())
}

const UNITARY_TOLERANCE: f64 = 1e-9;

fn build_gate(parts: Vec<usize>, spec: &str, partition: &Partition, m: u32) -> Result<Gate, String> {
    let qudits: Vec<usize> = parts.iter().flat_map(|&p| partition.part(p).iter().copied()).collect();
    let spec = spec.trim();
    let factors = if spec.starts_with('[') {
        let matrix = parse_matrix(spec)?;
        let want = (m as usize).pow(qudits.len() as u32);
        if matrix.dim() != want {
            return Err(format!(
                "matrix has dimension {}, but the parts hold {} qudits (dimension {want})",
                matrix.dim(),
                qudits.len()
            ));
        }
        vec![Factor { qudits, matrix }]
    } else if let Some(matrix) = named_single(spec, m) {
        qudits
            .into_iter()
            .map(|q| Factor {
                qudits: vec![q],
                matrix: matrix.clone(),
            })
            .collect()
    } else if let Some(matrix) = named_two(spec, m) {
        if qudits.len() != 2 {
            return Err(format!("{spec} needs exactly two qudits, the parts hold {}", qudits.len()));
        }
        vec![Factor { qudits, matrix }]
    } else {
        return Err(format!("unknown gate {spec:?} for dimension {m}"));
    };
    for f in &factors {
        let defect = f.matrix.unitarity_defect();
        if defect > UNITARY_TOLERANCE {
            return Err(format!("gate {spec} is not unitary (defect {defect:.3e})"));
        }
    }
    Ok(Gate {
        parts,
        label: if spec.starts_with('[') { "matrix".into() } else { spec.to_string() },
        factors,
    })
}

pub fn parse_circuit(text: &str, partition: &Partition, m: u32) -> Result<DenseCircuit, CircuitParseError> {
    let mut layers = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| CircuitParseError { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut layer = Vec::new();
        for clause in split_top(line, ';') {
            let clause = clause.trim();
            let rest = clause
                .strip_prefix("gate")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| err(format!("expected `gate <parts> <gate>`, got {clause:?}")))?
                .trim_start();
            let (parts_text, spec) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| err("missing gate after the part list".into()))?;
            if parts_text == "*" {
                for p in 0..partition.num_parts() {
                    layer.push(build_gate(vec![p], spec, partition, m).map_err(err)?);
                }
                continue;
            }
            let parts = parts_text
                .split(',')
                .map(|t| {
                    let p: usize = t.trim().parse().map_err(|_| format!("invalid part index {t:?}"))?;
                    if p >= partition.num_parts() {
                        return Err(format!("part {p} does not exist (N = {})", partition.num_parts()));
                    }
                    Ok(p)
                })
                .collect::<Result<Vec<_>, String>>()
                .map_err(err)?;
            layer.push(build_gate(parts, spec, partition, m).map_err(err)?);
        }
        layers.push(layer);
    }
    let line = text.lines().count().max(1);
    DenseCircuit::new(layers, m, partition.num_qudits()).map_err(|message| CircuitParseError { line, message })
}

impl fmt::Display for DenseCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, layer) in self.layers.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let gates: Vec<String> = layer
                .iter()
                .map(|g| {
                    let parts: Vec<String> = g.parts.iter().map(usize::to_string).collect();
                    format!("gate {} {}", parts.join(","), g.label)
                })
                .collect();
            write!(f, "{}", gates.join(" ; "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_layers() {
        let p = Partition::single_qudits(3);
        let circ = parse_circuit("# test\ngate * H\ngate 0,1 CZ ; gate 2 T\n", &p, 2).unwrap();
        assert_eq!(circ.layers().len(), 2);
        assert_eq!(circ.layers()[0].len(), 3);
        assert_eq!((circ.shape().q(), circ.shape().h()), (2, 2));
        assert!(parse_circuit("gate 0,0 CZ", &p, 2).is_err());
        assert!(parse_circuit("gate 0 Q", &p, 2).is_err());
        assert_eq!(parse_circuit("gate 0 T\ngate 5 X\n", &p, 2).unwrap_err().line, 2);
        assert!(parse_circuit("gate 0 T ; gate 0 X", &p, 2).is_err());
        assert!(parse_circuit("gate 0 T", &p, 3).is_err());
    }

    #[test]
    fn matrix_literals() {
        let h = parse_matrix("[[1/sqrt(2), 1/sqrt(2)], [1/sqrt(2), -1/sqrt(2)]]").unwrap();
        assert!(h.max_diff(&named_single("H", 2).unwrap()) < 1e-12);
        let t = parse_matrix("[[1, 0], [0, e(1/8)]]").unwrap();
        assert!(t.max_diff(&named_single("T", 2).unwrap()) < 1e-12);
        let y = parse_matrix("[[0, -i], [i, 0]]").unwrap();
        assert!((y.get(0, 1) - c(0.0, -1.0)).norm() < 1e-12);
        let z = parse_matrix("[[0.5+0.5i, 0.5-0.5i], [0.5-0.5i, 0.5+0.5i]]").unwrap();
        assert!(z.unitarity_defect() < 1e-12);
        assert!(parse_matrix("[[1, 0], [0]]").is_err());
        let p = Partition::single_qudits(1);
        assert!(parse_circuit("gate 0 [[1, 1], [0, 1]]", &p, 2).is_err());
    }

    #[test]
    fn commutator_with_identity_is_trivial() {
        let p = Partition::single_qudits(2);
        let u = parse_circuit("gate 0,1 CX\ngate * T", &p, 2).unwrap();
        let id = parse_circuit("gate * I", &p, 2).unwrap();
        let k = group_commutator(&u, &id);
        assert!(k.dense_matrix().max_diff(&Matrix::identity(4)) < 1e-12);
        assert_eq!(k.shape().h(), 2 * (2 + 1));
        let x = DenseCircuit::from_pauli(&PauliOperator::parse("XI", 2).unwrap(), &p);
        assert_eq!(group_commutator(&u, &x).shape().h(), 4);
    }
}
