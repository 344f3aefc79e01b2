//! Random transversal circuits and the level-versus-bound cross-check.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::StabilizerCode;
use crate::oracle::circuit::{named_single, DenseCircuit, Factor, Gate};
use crate::oracle::dense::{single_pauli, Matrix, C64};
use crate::oracle::{CodeOracle, LevelClassifier, LogicalAction, OracleError};
use crate::partition::Partition;
use crate::pauli::PauliOperator;

/// How a random transversal layer is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// One random word applied to every qudit.
    Uniform,
    /// An independent word per qudit.
    Independent,
    /// Only the normalizer Pauli.
    PauliOnly,
}

const MODES: [SampleMode; 3] = [SampleMode::Uniform, SampleMode::Independent, SampleMode::PauliOnly];

fn alphabet(m: u32) -> Vec<(&'static str, Matrix)> {
    let names: &[&str] = if m == 2 { &["H", "S", "T"] } else { &["H", "Z"] };
    names.iter().map(|&s| (s, named_single(s, m).expect("known gate"))).collect()
}

fn random_word(rng: &mut ChaCha8Rng, gates: &[(&'static str, Matrix)], max_len: usize) -> (String, Matrix) {
    let len = rng.random_range(0..=max_len);
    let d = gates[0].1.dim();
    let mut mat = Matrix::identity(d);
    let mut label = String::new();
    for _ in 0..len {
        let (name, g) = gates.choose(rng).expect("non-empty alphabet");
        mat = g.mul(&mat);
        label.push_str(name);
    }
    if label.is_empty() {
        label.push('I');
    }
    (label, mat)
}

/// A uniformly random element of the normalizer, modulo phase.
pub fn random_normalizer_pauli(code: &StabilizerCode, rng: &mut ChaCha8Rng) -> PauliOperator {
    let m = code.dim().get();
    let mut p = PauliOperator::identity(code.num_qudits(), code.dim());
    for g in code
        .generators()
        .iter()
        .chain(code.logical_x())
        .chain(code.logical_z())
    {
        let t = rng.random_range(0..m) as u32;
        if t > 0 {
            p = p.multiply(&g.pow(t)).expect("same shape");
        }
    }
    p.unphased()
}

/// A single-qudit layer, `word_q * pauli_q` on every qudit `q`.
pub fn sample_transversal(
    code: &StabilizerCode,
    partition: &Partition,
    mode: SampleMode,
    max_word: usize,
    rng: &mut ChaCha8Rng,
) -> DenseCircuit {
    let m = code.dim().get() as u32;
    let n = code.num_qudits();
    let gates = alphabet(m);
    let shared = random_word(rng, &gates, max_word);
    let words: Vec<(String, Matrix)> = (0..n)
        .map(|_| match mode {
            SampleMode::Uniform => shared.clone(),
            SampleMode::Independent => random_word(rng, &gates, max_word),
            SampleMode::PauliOnly => ("I".into(), Matrix::identity(m as usize)),
        })
        .collect();
    let pauli = random_normalizer_pauli(code, rng);
    let layer = (0..partition.num_parts())
        .map(|i| {
            let part = partition.part(i);
            let label = part.iter().map(|&q| words[q].0.as_str()).collect::<Vec<_>>().join(".");
            Gate {
                parts: vec![i],
                label,
                factors: part
                    .iter()
                    .map(|&q| Factor {
                        qudits: vec![q],
                        matrix: words[q].1.mul(&single_pauli(m, pauli.x(q), pauli.z(q))),
                    })
                    .collect(),
            }
        })
        .collect();
    DenseCircuit::new(vec![layer], m, n).expect("one gate per part")
}

/// Tally of a sampling run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub attempts: u64,
    pub preserving: u64,
    /// Count of preserving samples per level; index 0 counts levels above the cap.
    pub levels: Vec<u64>,
    /// Samples whose level exceeded the bound.
    pub violations: u64,
}

impl ConsistencyReport {
    pub fn max_level(&self) -> Option<u32> {
        (1..self.levels.len()).rev().find(|&l| self.levels[l] > 0).map(|l| l as u32)
    }
}

/// Samples transversal layers until `target` of them preserve the codespace
/// (or `max_attempts` is reached) and compares each level with `bound`.
///
/// Levels are classified up to `bound + 1`, so anything above the bound is
/// counted as a violation.
pub fn transversal_consistency(
    code: &StabilizerCode,
    partition: &Partition,
    bound: u32,
    target: u64,
    max_attempts: u64,
    seed: u64,
) -> Result<ConsistencyReport, OracleError> {
    let oracle = CodeOracle::new(code)?;
    let mut cls: LevelClassifier = oracle.classifier();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = bound + 1;
    let mut report = ConsistencyReport {
        levels: vec![0; cap as usize + 1],
        ..Default::default()
    };
    while report.preserving < target && report.attempts < max_attempts {
        let mode = MODES[(report.attempts % MODES.len() as u64) as usize];
        report.attempts += 1;
        let circ = sample_transversal(code, partition, mode, 4, &mut rng);
        let LogicalAction::Logical { matrix, .. } = oracle.logical_action(&circ)? else {
            continue;
        };
        report.preserving += 1;
        match cls.level(&matrix, cap)? {
            Some(l) => {
                report.levels[l as usize] += 1;
                if l > bound {
                    report.violations += 1;
                }
            }
            None => {
                report.levels[0] += 1;
                report.violations += 1;
            }
        }
    }
    Ok(report)
}

/// A diagonal layer `diag(1, e^(i pi k_q / 4))` on every qubit that preserves
/// the codespace and acts outside the Clifford group.
#[derive(Debug, Clone)]
pub struct DiagonalGate {
    pub exponents: Vec<u8>,
    pub circuit: DenseCircuit,
    pub level: Option<u32>,
}

fn diagonal_layer(exponents: &[u8], partition: &Partition) -> DenseCircuit {
    let layer = (0..partition.num_parts())
        .map(|i| Gate {
            parts: vec![i],
            label: "diag".into(),
            factors: partition
                .part(i)
                .iter()
                .map(|&q| Factor {
                    qudits: vec![q],
                    matrix: Matrix::diagonal(&[
                        C64::new(1.0, 0.0),
                        crate::oracle::dense::root_of_unity(exponents[q] as i64, 8),
                    ]),
                })
                .collect(),
        })
        .collect();
    DenseCircuit::new(vec![layer], 2, partition.num_qudits()).expect("one gate per part")
}

/// Searches qubit diagonal layers: uniform odd exponents first, then
/// `T`/`T^dag` sign patterns in lexicographic order, up to `max_patterns`.
pub fn find_diagonal_non_clifford(
    code: &StabilizerCode,
    partition: &Partition,
    max_level: u32,
    max_patterns: u64,
) -> Result<Option<DiagonalGate>, OracleError> {
    let n = code.num_qudits();
    let oracle = CodeOracle::new(code)?;
    let mut cls = oracle.classifier();
    let mut try_pattern = |exponents: Vec<u8>| -> Result<Option<DiagonalGate>, OracleError> {
        let circuit = diagonal_layer(&exponents, partition);
        let LogicalAction::Logical { matrix, .. } = oracle.logical_action(&circuit)? else {
            return Ok(None);
        };
        let level = cls.level(&matrix, max_level)?;
        if level.is_some_and(|l| l <= 2) {
            return Ok(None);
        }
        Ok(Some(DiagonalGate {
            exponents,
            circuit,
            level,
        }))
    };
    for k in [1u8, 3, 5, 7] {
        if let Some(g) = try_pattern(vec![k; n])? {
            return Ok(Some(g));
        }
    }
    let patterns = if n >= 64 { max_patterns } else { (1u64 << n).min(max_patterns) };
    for mask in 0..patterns {
        let exps = (0..n).map(|q| if mask >> q & 1 == 1 { 7 } else { 1 }).collect();
        if let Some(g) = try_pattern(exps)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn samples_are_deterministic() {
        let f = families::five_qubit();
        let a = transversal_consistency(&f.code, &f.partition, 2, 20, 5000, 11).unwrap();
        let b = transversal_consistency(&f.code, &f.partition, 2, 20, 5000, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.preserving, 20);
        assert_eq!(a.violations, 0);
    }

    #[test]
    fn reed_muller_15_has_a_level_three_diagonal() {
        let f = families::reed_muller(3).unwrap();
        let g = find_diagonal_non_clifford(&f.code, &f.partition, 5, 1000).unwrap().unwrap();
        assert_eq!(g.exponents, vec![1; 15]);
        assert_eq!(g.level, Some(3));
        // and the Steane code has none among uniform layers
        let s = families::reed_muller(2).unwrap();
        assert!(find_diagonal_non_clifford(&s.code, &s.partition, 4, 0).unwrap().is_none());
    }

    #[test]
    fn normalizer_paulis_preserve() {
        let f = families::four_two_two();
        let o = CodeOracle::new(&f.code).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let c = sample_transversal(&f.code, &f.partition, SampleMode::PauliOnly, 4, &mut rng);
            assert!(matches!(o.logical_action(&c).unwrap(), LogicalAction::Logical { .. }));
        }
    }
}
