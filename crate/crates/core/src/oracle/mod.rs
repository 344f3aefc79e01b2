//! Dense state-vector ground truth for small codes.
//!
//! Everything here is independent of the symplectic machinery in `metrics`
//! and `bounds`: codespaces come from projectors, logical actions from inner
//! products and levels from explicit commutators.

pub mod circuit;
pub mod dense;
pub mod hierarchy;
pub mod sampling;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::code::{CodeError, LogicalClass, StabilizerCode};
use crate::metrics::{class_distance, scrub, MetricsConfig, MetricsError};
use crate::partition::Partition;
use crate::pauli::{PauliError, PauliOperator};

pub use circuit::{group_commutator, parse_circuit, CircuitParseError, DenseCircuit};
use dense::{apply_pauli, inner, norm, Matrix, C64};
pub use hierarchy::LevelClassifier;

/// Largest state dimension `m^n` handled (15 qubits, 9 qutrits).
pub const MAX_STATE_DIM: usize = 1 << 15;
/// Largest dimension for which full operator matrices are formed.
pub const MAX_OPERATOR_DIM: usize = 1 << 10;
/// Below this residual a circuit preserves the codespace.
pub const LOGICAL_TOLERANCE: f64 = 1e-9;
/// Above this residual it does not; in between is ambiguous.
pub const AMBIGUOUS_TOLERANCE: f64 = 1e-6;

const BASIS_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("dimension {m}^{n} exceeds the dense limit {limit}")]
    TooLarge { m: u32, n: usize, limit: usize },
    #[error("{what} is numerically ambiguous (residual {residual:.3e})")]
    NumericallyAmbiguous { what: String, residual: f64 },
    #[error("the circuit does not preserve the codespace (residual {0:.3e})")]
    NotLogical(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the codespace projection vanished; the stabilizer group contains a nontrivial phase")]
    EmptyCodespace,
    #[error("class {0} has no representative available")]
    NoRepresentative(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

fn check_size(m: u32, n: usize, limit: usize) -> Result<usize, OracleError> {
    (m as usize)
        .checked_pow(n as u32)
        .filter(|&d| d <= limit)
        .ok_or(OracleError::TooLarge { m, n, limit })
}

/// Sets the phase so that `p^m = I`, keeping it when it already does.
fn order_m(p: &PauliOperator) -> PauliOperator {
    let m = p.dim().get() as u32;
    // p^m is a phase tau^e with e in {0, m}
    let e = p.pow(m).phase_exponent() as u32;
    if e == 0 {
        p.clone()
    } else {
        p.clone().with_phase_exponent(p.phase_exponent() + 1)
    }
}

/// `(1/m) sum_t p^t` applied to `v`.
fn project(v: &[C64], p: &PauliOperator) -> Vec<C64> {
    let m = p.dim().get() as usize;
    let mut acc = v.to_vec();
    let mut term = v.to_vec();
    for _ in 1..m {
        term = apply_pauli(&term, p);
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += t;
        }
    }
    let s = 1.0 / m as f64;
    acc.iter_mut().for_each(|a| *a *= s);
    acc
}

fn classify_residual(what: &str, residual: f64) -> Result<bool, OracleError> {
    if residual < LOGICAL_TOLERANCE {
        Ok(true)
    } else if residual > AMBIGUOUS_TOLERANCE {
        Ok(false)
    } else {
        Err(OracleError::NumericallyAmbiguous {
            what: what.into(),
            residual,
        })
    }
}

/// Outcome of restricting a circuit to the codespace.
#[derive(Debug, Clone)]
pub enum LogicalAction {
    /// Matrix in the logical basis `|a> = X^a |0>`, and the leakage residual.
    Logical { matrix: Matrix, residual: f64 },
    NotLogical { residual: f64 },
}

/// Dense codespace of one code.
#[derive(Debug, Clone)]
pub struct CodeOracle {
    m: u32,
    n: usize,
    k: usize,
    stabilizers: Vec<PauliOperator>,
    basis: Vec<Vec<C64>>,
}

impl CodeOracle {
    pub fn new(code: &StabilizerCode) -> Result<Self, OracleError> {
        let m = code.dim().get() as u32;
        let n = code.num_qudits();
        let k = code.num_logical();
        let dim = check_size(m, n, MAX_STATE_DIM)?;
        let stabilizers: Vec<PauliOperator> = code.generators().iter().map(order_m).collect();
        let logical_z: Vec<PauliOperator> = code.logical_z().iter().map(order_m).collect();
        let logical_x: Vec<PauliOperator> = code.logical_x().iter().map(order_m).collect();

        let mut rng = ChaCha8Rng::seed_from_u64(BASIS_SEED);
        let mut zero: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        for p in stabilizers.iter().chain(&logical_z) {
            zero = project(&zero, p);
        }
        let len = norm(&zero);
        if len < 1e-6 {
            return Err(OracleError::EmptyCodespace);
        }
        zero.iter_mut().for_each(|a| *a /= len);

        let logical_dim = (m as usize).pow(k as u32);
        let mut basis = Vec::with_capacity(logical_dim);
        for idx in 0..logical_dim {
            // digits of idx, logical qudit 0 most significant
            let mut v = zero.clone();
            let mut rest = idx;
            for j in (0..k).rev() {
                let a = rest % m as usize;
                rest /= m as usize;
                for _ in 0..a {
                    v = apply_pauli(&v, &logical_x[j]);
                }
            }
            basis.push(v);
        }
        Ok(CodeOracle {
            m,
            n,
            k,
            stabilizers,
            basis,
        })
    }

    pub fn dim(&self) -> u32 {
        self.m
    }

    pub fn num_qudits(&self) -> usize {
        self.n
    }

    pub fn num_logical(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    /// Largest `|s v - v|` over stabilizer generators and basis vectors.
    pub fn stabilizer_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for v in &self.basis {
            for s in &self.stabilizers {
                let w = apply_pauli(v, s);
                let diff: Vec<C64> = w.iter().zip(v).map(|(a, b)| a - b).collect();
                worst = worst.max(norm(&diff));
            }
        }
        worst
    }

    /// Largest `|<b_i|b_j> - delta_ij|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((inner(a, b) - C64::new(want, 0.0)).norm());
            }
        }
        worst
    }

    fn check_circuit(&self, circuit: &DenseCircuit) -> Result<(), OracleError> {
        if circuit.dim() != self.m || circuit.num_qudits() != self.n {
            return Err(OracleError::DimensionMismatch {
                expected: self.n,
                got: circuit.num_qudits(),
            });
        }
        Ok(())
    }

    pub fn logical_action(&self, circuit: &DenseCircuit) -> Result<LogicalAction, OracleError> {
        self.check_circuit(circuit)?;
        let d = self.basis.len();
        let mut matrix = Matrix::zeros(d);
        let mut residual: f64 = 0.0;
        for j in 0..d {
            let mut v = self.basis[j].clone();
            circuit.apply(&mut v);
            let mut rest = v.clone();
            for (i, b) in self.basis.iter().enumerate() {
                let c = inner(b, &v);
                matrix.set(i, j, c);
                for (r, bv) in rest.iter_mut().zip(b) {
                    *r -= c * bv;
                }
            }
            residual = residual.max(norm(&rest));
        }
        Ok(if classify_residual("codespace preservation", residual)? {
            LogicalAction::Logical { matrix, residual }
        } else {
            LogicalAction::NotLogical { residual }
        })
    }

    /// Logical matrix, or `NotLogical` as an error.
    pub fn logical_matrix(&self, circuit: &DenseCircuit) -> Result<Matrix, OracleError> {
        match self.logical_action(circuit)? {
            LogicalAction::Logical { matrix, .. } => Ok(matrix),
            LogicalAction::NotLogical { residual } => Err(OracleError::NotLogical(residual)),
        }
    }

    pub fn classifier(&self) -> LevelClassifier {
        LevelClassifier::new(self.m, self.k)
    }

    /// Hierarchy level of the circuit's logical action, `None` above `max_level`.
    pub fn hierarchy_level(
        &self,
        circuit: &DenseCircuit,
        max_level: u32,
        classifier: &mut LevelClassifier,
    ) -> Result<Option<u32>, OracleError> {
        let l = self.logical_matrix(circuit)?;
        classifier.level(&l, max_level)
    }

    /// Whether the circuit acts on the codespace as a multiple of the identity.
    pub fn is_trivial_logical(&self, circuit: &DenseCircuit) -> Result<bool, OracleError> {
        let l = self.logical_matrix(circuit)?;
        let cls = LevelClassifier::new(self.m, self.k);
        Ok(cls
            .pauli_label(&l)?
            .is_some_and(|label| label.iter().all(|&a| a == 0)))
    }
}

/// `max |P K P^dag - K|` for the single-qudit Pauli `X_q^a Z_q^b`.
fn pauli_conjugation_defect(k: &Matrix, m: usize, n: usize, q: usize, a: usize, b: usize) -> f64 {
    let d = k.dim();
    let stride = m.pow((n - 1 - q) as u32);
    let digit = |i: usize| i / stride % m;
    // P|j> = omega^(b * digit(j)) |j + a e_q>, so (P K P^dag)_{ij} = phase * K_{i', j'}
    let shift_back = |i: usize| i - digit(i) * stride + ((digit(i) + m - a) % m) * stride;
    let omegas: Vec<C64> = (0..m).map(|t| dense::root_of_unity(t as i64, m as u32)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        let si = shift_back(i);
        let pi = omegas[b * digit(si) % m];
        for j in 0..d {
            let sj = shift_back(j);
            let pj = omegas[b * digit(sj) % m];
            let v = pi * pj.conj() * k.get(si, sj);
            worst = worst.max((v - k.get(i, j)).norm());
        }
    }
    worst
}

/// Parts on which `k` acts non-trivially: a part is outside the support iff
/// `k` commutes with `X_q` and `Z_q` for each of its qudits.
pub fn operator_support(k: &Matrix, m: u32, partition: &Partition) -> Result<Vec<usize>, OracleError> {
    let n = partition.num_qudits();
    let d = check_size(m, n, MAX_OPERATOR_DIM)?;
    if k.dim() != d {
        return Err(OracleError::DimensionMismatch {
            expected: d,
            got: k.dim(),
        });
    }
    let mut out = Vec::new();
    for (i, part) in partition.parts().iter().enumerate() {
        let defect = part
            .iter()
            .flat_map(|&q| [(q, 1, 0), (q, 0, 1)])
            .map(|(q, a, b)| pauli_conjugation_defect(k, m as usize, n, q, a, b))
            .fold(0.0, f64::max);
        if !classify_residual("part triviality", defect)? {
            out.push(i);
        }
    }
    Ok(out)
}

pub fn circuit_support(circuit: &DenseCircuit, partition: &Partition) -> Result<Vec<usize>, OracleError> {
    check_size(circuit.dim(), circuit.num_qudits(), MAX_OPERATOR_DIM)?;
    operator_support(&circuit.dense_matrix(), circuit.dim(), partition)
}

/// One evaluation of the support-growth lemma for `[U, a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportGrowth {
    /// `|supp [U, a]|`, measured densely.
    pub lhs: u64,
    /// `q^h |supp U ∩ supp a|`, with `supp U` the parts the circuit touches.
    pub rhs: u64,
    /// For transversal `U`: whether `supp [U, a] ⊆ supp U ∩ supp a`.
    pub subset: Option<bool>,
    pub ok: bool,
}

pub fn support_growth_check(
    circuit: &DenseCircuit,
    a: &PauliOperator,
    partition: &Partition,
) -> Result<SupportGrowth, OracleError> {
    let comm = group_commutator(circuit, &DenseCircuit::from_pauli(a, partition));
    let lhs_parts = circuit_support(&comm, partition)?;
    let a_parts = a.support(partition)?;
    let overlap: Vec<usize> = circuit
        .touched_parts()
        .into_iter()
        .filter(|p| a_parts.contains(p))
        .collect();
    let shape = circuit.shape();
    let rhs = (shape.q() as u64)
        .checked_pow(shape.h())
        .and_then(|f| f.checked_mul(overlap.len() as u64))
        .unwrap_or(u64::MAX);
    let lhs = lhs_parts.len() as u64;
    let subset = shape
        .is_transversal()
        .then(|| lhs_parts.iter().all(|p| overlap.contains(p)));
    Ok(SupportGrowth {
        lhs,
        rhs,
        subset,
        ok: lhs <= rhs && subset != Some(false),
    })
}

/// One step `K_j = [K_(j-1), g_j]` of the descent.
#[derive(Debug, Clone)]
pub struct DescentStep {
    pub class: LogicalClass,
    /// `c_j`; `None` for the first step, which uses a minimum-weight representative.
    pub c: Option<u64>,
    pub representative: PauliOperator,
    /// `|supp K_(j-1) ∩ supp g_j|`.
    pub overlap: u64,
    /// `|supp K_j|`, measured densely.
    pub support: u64,
    /// `q^(h_(j-1)) * overlap`.
    pub overlap_bound: BigRational,
    /// `q^(h_(j-1)) |supp K_(j-1)| / Delta_(c_j)(G_j)`, for `j >= 2`.
    pub scrub_bound: Option<BigRational>,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct DescentTrace {
    pub initial_support: u64,
    pub steps: Vec<DescentStep>,
    /// The last iterate touches fewer than `d_min` parts.
    pub below_min_distance: bool,
    /// The last iterate acts on the codespace as a phase.
    pub trivial: bool,
}

impl DescentTrace {
    pub fn supports(&self) -> Vec<u64> {
        std::iter::once(self.initial_support)
            .chain(self.steps.iter().map(|s| s.support))
            .collect()
    }

    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Runs the support descent of the level-bound argument on a concrete circuit.
///
/// `classes[0]` supplies a minimum-weight `g_1`; each later `g_j` is scrubbed
/// against `supp K_(j-1)` using a `c_choices[j - 1]`-disjoint set.
pub fn commutator_descent(
    code: &StabilizerCode,
    oracle: &CodeOracle,
    circuit: &DenseCircuit,
    classes: &[LogicalClass],
    c_choices: &[u64],
    partition: &Partition,
    cfg: &MetricsConfig,
) -> Result<DescentTrace, OracleError> {
    let mut current = circuit.clone();
    let mut support = circuit_support(&current, partition)?;
    let initial_support = support.len() as u64;
    let q = circuit.shape().q() as u64;
    let mut h = circuit.shape().h();
    let mut steps = Vec::new();
    for (j, class) in classes.iter().enumerate() {
        let factor = int(q.checked_pow(h).unwrap_or(u64::MAX));
        let (rep, c, scrub_bound) = if j == 0 {
            let dist = class_distance(code, class, partition, cfg)?;
            let rep = dist
                .witness
                .ok_or_else(|| OracleError::NoRepresentative(class.name(code.dim())))?;
            (rep, None, None)
        } else {
            let c = c_choices.get(j - 1).copied().unwrap_or(1);
            let s = scrub(code, class, &support, c, partition, cfg)?;
            let bound = &factor * int(support.len() as u64) / &s.certificate;
            (s.representative, Some(c), Some(bound))
        };
        let rep_parts = rep.support(partition)?;
        let overlap = support.iter().filter(|p| rep_parts.contains(p)).count() as u64;
        current = group_commutator(&current, &DenseCircuit::from_pauli(&rep, partition));
        h = current.shape().h();
        support = circuit_support(&current, partition)?;
        let measured = support.len() as u64;
        let overlap_bound = &factor * int(overlap);
        let holds = int(measured) <= overlap_bound
            && scrub_bound.as_ref().is_none_or(|b| int(measured) <= *b);
        steps.push(DescentStep {
            class: class.clone(),
            c,
            representative: rep,
            overlap,
            support: measured,
            overlap_bound,
            scrub_bound,
            holds,
        });
    }
    let d_min = crate::metrics::min_max_distance(code, partition, cfg)?.0.lo;
    let below_min_distance = (support.len() as u64) < d_min;
    let trivial = oracle.is_trivial_logical(&current)?;
    Ok(DescentTrace {
        initial_support,
        steps,
        below_min_distance,
        trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::oracle::dense::pauli_matrix;

    fn steane() -> (StabilizerCode, Partition) {
        let f = families::reed_muller(2).unwrap();
        (f.code, f.partition)
    }

    #[test]
    fn codespace_dimensions() {
        for (f, dim) in [
            (families::five_qubit(), 2),
            (families::four_two_two(), 4),
            (families::reed_muller(2).unwrap(), 2),
        ] {
            let o = CodeOracle::new(&f.code).unwrap();
            assert_eq!(o.basis().len(), dim);
            assert!(o.stabilizer_residual() < 1e-12);
            assert!(o.orthonormality_residual() < 1e-12);
        }
    }

    #[test]
    fn logical_paulis_and_leakage() {
        let f = families::five_qubit();
        let o = CodeOracle::new(&f.code).unwrap();
        let xbar = DenseCircuit::from_pauli(&f.code.logical_x()[0], &f.partition);
        let l = o.logical_matrix(&xbar).unwrap();
        let cls = o.classifier();
        assert_eq!(cls.pauli_label(&l).unwrap(), Some(vec![1, 0]));
        let zbar = DenseCircuit::from_pauli(&f.code.logical_z()[0], &f.partition);
        assert_eq!(cls.pauli_label(&o.logical_matrix(&zbar).unwrap()).unwrap(), Some(vec![0, 1]));
        let stray = DenseCircuit::from_pauli(&PauliOperator::parse("XIIII", 2).unwrap(), &f.partition);
        assert!(matches!(o.logical_action(&stray).unwrap(), LogicalAction::NotLogical { .. }));
    }

    #[test]
    fn steane_transversal_hadamard() {
        let (code, partition) = steane();
        let o = CodeOracle::new(&code).unwrap();
        let h = parse_circuit("gate * H", &partition, 2).unwrap();
        let l = o.logical_matrix(&h).unwrap();
        let want = circuit::named_single("H", 2).unwrap();
        let phased = hierarchy::strip_phase(&l);
        assert!(phased.max_diff(&hierarchy::strip_phase(&want)) < 1e-9);
        let mut cls = o.classifier();
        assert_eq!(o.hierarchy_level(&h, 5, &mut cls).unwrap(), Some(2));
        let t0 = parse_circuit("gate 0 T", &partition, 2).unwrap();
        assert!(matches!(o.logical_action(&t0).unwrap(), LogicalAction::NotLogical { .. }));
        // [H, X] acts as a logical Pauli
        let x = DenseCircuit::from_pauli(&code.logical_x()[0], &partition);
        let comm = group_commutator(&h, &x);
        assert_eq!(o.hierarchy_level(&comm, 5, &mut cls).unwrap(), Some(1));
    }

    #[test]
    fn dense_commutator_phase_matches_symplectic_product() {
        for m in [2u32, 3] {
            let labels: Vec<String> = if m == 2 {
                vec!["XZ".into(), "ZY".into(), "YY".into(), "XI".into()]
            } else {
                vec!["XZ".into(), "ZX".into(), "X".into()]
            };
            for a in &labels {
                for b in &labels {
                    if a.len() != b.len() {
                        continue;
                    }
                    let p = PauliOperator::parse(a, m).unwrap();
                    let q = PauliOperator::parse(b, m).unwrap();
                    let comm = pauli_matrix(&p).group_commutator(&pauli_matrix(&q));
                    let lambda = p.symplectic_product(&q).unwrap();
                    let d = comm.dim();
                    let want = Matrix::identity(d).scale(dense::root_of_unity(lambda as i64, m));
                    assert!(comm.max_diff(&want) < 1e-12, "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn support_growth_on_transversal_and_disjoint() {
        let p = Partition::single_qudits(4);
        let u = parse_circuit("gate 0 H ; gate 1 T ; gate 2 S", &p, 2).unwrap();
        let a = PauliOperator::parse("XXIZ", 2).unwrap();
        let r = support_growth_check(&u, &a, &p).unwrap();
        assert!(r.ok);
        assert_eq!(r.subset, Some(true));
        assert_eq!((r.lhs, r.rhs), (2, 2));
        let far = PauliOperator::parse("IIIX", 2).unwrap();
        assert_eq!(support_growth_check(&u, &far, &p).unwrap().lhs, 0);
        let cx = parse_circuit("gate 0,1 CX", &p, 2).unwrap();
        let r = support_growth_check(&cx, &PauliOperator::parse("XIII", 2).unwrap(), &p).unwrap();
        assert_eq!((r.lhs, r.rhs), (1, 2));
        assert!(r.ok);
    }

    #[test]
    fn steane_descent_reaches_trivial() {
        let (code, partition) = steane();
        let o = CodeOracle::new(&code).unwrap();
        let h = parse_circuit("gate * H", &partition, 2).unwrap();
        let x = code.class(vec![1, 0]).unwrap();
        let z = code.class(vec![0, 1]).unwrap();
        let cfg = MetricsConfig::default();
        let trace = commutator_descent(&code, &o, &h, &[x, z], &[3], &partition, &cfg).unwrap();
        assert_eq!(trace.initial_support, 7);
        assert_eq!(trace.steps[0].support, 3);
        assert!(trace.all_hold());
        assert!(trace.below_min_distance);
        assert!(trace.trivial);
    }

    #[test]
    fn size_limit() {
        let f = families::reed_muller(4).unwrap();
        assert!(matches!(CodeOracle::new(&f.code), Err(OracleError::TooLarge { .. })));
    }
}
