//! Clifford-hierarchy level of a logical unitary by commutator recursion.
//!
//! `L` is in level 1 if it is a Pauli up to phase, and in level `M` if
//! `L P L^dag P^dag` is in level `M - 1` for every one of the `m^(2k)`
//! Paulis `P`. Generators are not enough beyond the Clifford group.

use std::collections::HashMap;

use crate::oracle::dense::{single_pauli, Matrix, C64};
use crate::oracle::OracleError;

/// Relative tolerance of the trace test.
const MATCH_TOLERANCE: f64 = 1e-9;
/// Deviations between the two tolerances are reported as ambiguous.
const AMBIGUOUS_TOLERANCE: f64 = 1e-6;
const KEY_SCALE: f64 = 1e6;

/// Canonical form with the global phase removed: the first entry of
/// magnitude above `1e-6` is made real and positive.
pub fn strip_phase(l: &Matrix) -> Matrix {
    let pivot = l.entries().iter().find(|v| v.norm() > 1e-6).copied();
    match pivot {
        Some(v) => l.scale(v.conj() / v.norm()),
        None => l.clone(),
    }
}

fn memo_key(l: &Matrix) -> Vec<(i64, i64)> {
    strip_phase(l)
        .entries()
        .iter()
        .map(|v| ((v.re * KEY_SCALE).round() as i64, (v.im * KEY_SCALE).round() as i64))
        .collect()
}

/// Level classifier for `k` logical qudits of dimension `m`.
pub struct LevelClassifier {
    dim: usize,
    /// Non-identity Paulis `X^a Z^b` with their labels `(a, b)`.
    paulis: Vec<(Vec<u8>, Matrix)>,
    memo: HashMap<(Vec<(i64, i64)>, u32), bool>,
}

impl LevelClassifier {
    pub fn new(m: u32, k: usize) -> Self {
        let dim = (m as usize).pow(k as u32);
        let mut paulis = Vec::new();
        let total = (m as usize).pow(2 * k as u32);
        for idx in 1..total {
            let mut label = vec![0u8; 2 * k];
            let mut rest = idx;
            for e in label.iter_mut() {
                *e = (rest % m as usize) as u8;
                rest /= m as usize;
            }
            let mut mat = Matrix::identity(1);
            for j in 0..k {
                mat = mat.kron(&single_pauli(m, label[j], label[k + j]));
            }
            paulis.push((label, mat));
        }
        LevelClassifier {
            dim,
            paulis,
            memo: HashMap::new(),
        }
    }

    pub fn logical_dim(&self) -> usize {
        self.dim
    }

    /// The `(a, b)` label of the Pauli `L` is proportional to; the all-zero
    /// label stands for the identity.
    pub fn pauli_label(&self, l: &Matrix) -> Result<Option<Vec<u8>>, OracleError> {
        if l.dim() != self.dim {
            return Err(OracleError::DimensionMismatch {
                expected: self.dim,
                got: l.dim(),
            });
        }
        let d = self.dim as f64;
        let k2 = self.paulis.first().map_or(0, |p| p.0.len());
        let identity = (vec![0u8; k2], Matrix::identity(self.dim));
        for (label, p) in std::iter::once(&identity).chain(&self.paulis) {
            // tr(P^dag L)
            let overlap: C64 = (0..self.dim)
                .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
                .map(|(i, j)| p.get(i, j).conj() * l.get(i, j))
                .sum();
            let gap = (d - overlap.norm()).abs() / d;
            if gap < MATCH_TOLERANCE {
                return Ok(Some(label.clone()));
            }
            if gap < AMBIGUOUS_TOLERANCE {
                return Err(OracleError::NumericallyAmbiguous {
                    what: "Pauli trace test".into(),
                    residual: gap,
                });
            }
        }
        Ok(None)
    }

    /// Whether `L` lies in level `level`.
    pub fn in_level(&mut self, l: &Matrix, level: u32) -> Result<bool, OracleError> {
        if level == 0 {
            return Ok(false);
        }
        let key = (memo_key(l), level);
        if let Some(&hit) = self.memo.get(&key) {
            return Ok(hit);
        }
        let answer = if self.pauli_label(l)?.is_some() {
            true
        } else if level == 1 {
            false
        } else {
            let mut all = true;
            for i in 0..self.paulis.len() {
                let comm = l.group_commutator(&self.paulis[i].1);
                if !self.in_level(&comm, level - 1)? {
                    all = false;
                    break;
                }
            }
            all
        };
        self.memo.insert(key, answer);
        Ok(answer)
    }

    /// Smallest level up to `max_level` containing `L`, or `None` beyond it.
    pub fn level(&mut self, l: &Matrix, max_level: u32) -> Result<Option<u32>, OracleError> {
        for level in 1..=max_level {
            if self.in_level(l, level)? {
                return Ok(Some(level));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::circuit::named_single;
    use crate::oracle::dense::root_of_unity;

    #[test]
    fn single_qubit_levels() {
        let mut cls = LevelClassifier::new(2, 1);
        let x = named_single("X", 2).unwrap();
        let h = named_single("H", 2).unwrap();
        let s = named_single("S", 2).unwrap();
        let t = named_single("T", 2).unwrap();
        assert_eq!(cls.level(&x, 5).unwrap(), Some(1));
        assert_eq!(cls.level(&x.scale(root_of_unity(3, 8)), 5).unwrap(), Some(1));
        assert_eq!(cls.level(&h, 5).unwrap(), Some(2));
        assert_eq!(cls.level(&s, 5).unwrap(), Some(2));
        assert_eq!(cls.level(&t, 5).unwrap(), Some(3));
        // sqrt(T) sits in level 4
        let rt = Matrix::diagonal(&[C64::new(1.0, 0.0), root_of_unity(1, 16)]);
        assert_eq!(cls.level(&rt, 5).unwrap(), Some(4));
        assert_eq!(cls.level(&rt, 3).unwrap(), None);
        assert_eq!(cls.pauli_label(&s.mul(&s)).unwrap(), Some(vec![0, 1]));
    }

    #[test]
    fn two_qubit_levels() {
        let mut cls = LevelClassifier::new(2, 2);
        let mut cz = Matrix::identity(4);
        cz.set(3, 3, C64::new(-1.0, 0.0));
        assert_eq!(cls.level(&cz, 4).unwrap(), Some(2));
        let mut ccz_like = Matrix::identity(4);
        ccz_like.set(3, 3, C64::new(0.0, 1.0));
        // controlled-S is third level
        assert_eq!(cls.level(&ccz_like, 4).unwrap(), Some(3));
        let t = named_single("T", 2).unwrap();
        let t_id = t.kron(&Matrix::identity(2));
        assert_eq!(cls.level(&t_id, 4).unwrap(), Some(3));
    }

    #[test]
    fn qutrit_clifford() {
        let mut cls = LevelClassifier::new(3, 1);
        let f = named_single("H", 3).unwrap();
        assert_eq!(cls.level(&f, 4).unwrap(), Some(2));
        assert_eq!(cls.level(&named_single("Z", 3).unwrap(), 4).unwrap(), Some(1));
    }
}
