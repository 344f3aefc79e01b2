//! Deterministic code families with their partitions and, where exhaustive
//! search is out of reach, declared distances and c-disjoint witness sets.
//!
//! Declared values are never trusted blindly: witnesses are re-verified by
//! the metrics engine, and declared distances are re-derived whenever the
//! cosets fit the enumeration budget.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::bounds::FamilyExponents;
use crate::code::{CodeError, LogicalClass, StabilizerCode};
use crate::metrics::{compute_metrics, DeclaredMetrics, DisjointWitness, MetricsConfig, MetricsError, MetricsReport};
use crate::partition::{Partition, PartitionError};
use crate::pauli::{PauliOperator, QuditDim};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// A code, its partition and whatever is known about it in advance.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    /// Short identifier, e.g. `surface-3`.
    pub name: String,
    pub description: String,
    pub code: StabilizerCode,
    pub partition: Partition,
    pub declared: Option<DeclaredMetrics>,
    /// The lower end of `Delta` the declared witnesses certify.
    pub declared_delta: Option<BigRational>,
    pub exponents: Option<FamilyExponents>,
}

impl FamilyInstance {
    pub fn analyze(&self, cfg: &MetricsConfig) -> Result<MetricsReport, MetricsError> {
        compute_metrics(&self.code, &self.partition, cfg, self.declared.as_ref())
    }

    /// Declared distance of a class, if any.
    pub fn declared_distance(&self, class: &LogicalClass) -> Option<u64> {
        self.declared
            .as_ref()?
            .distances
            .iter()
            .find(|(c, _)| c == class)
            .map(|(_, d)| *d)
    }
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Qubit Pauli with X on `xs` and Z on `zs`.
fn qubit_pauli(n: usize, xs: &[usize], zs: &[usize]) -> PauliOperator {
    let mut x = vec![0u8; n];
    let mut z = vec![0u8; n];
    for &q in xs {
        x[q] ^= 1;
    }
    for &q in zs {
        z[q] ^= 1;
    }
    PauliOperator::from_xz(&x, &z, QuditDim::QUBIT).expect("entries are bits")
}

fn paulis(strs: &[&str]) -> Vec<PauliOperator> {
    strs.iter()
        .map(|s| PauliOperator::parse(s, 2).expect("valid literal"))
        .collect()
}

fn witness(code: &StabilizerCode, label: &[u8], c: u64, members: Vec<PauliOperator>) -> DisjointWitness {
    DisjointWitness {
        class: code.class(label.to_vec()).expect("valid label"),
        c,
        members,
    }
}

/// The single-logical-qubit classes `X`, `Z`, `Y` with their distances.
fn declared_xzy(code: &StabilizerCode, dx: u64, dz: u64, dy: u64) -> Vec<(LogicalClass, u64)> {
    [([1u8, 0], dx), ([0, 1], dz), ([1, 1], dy)]
        .into_iter()
        .map(|(label, d)| (code.class(label.to_vec()).expect("k = 1"), d))
        .collect()
}

/// `[[4,2]]` with stabilizers `XXXX`, `ZZZZ` and logical `X1 = X1X2`.
pub fn four_two_two() -> FamilyInstance {
    let code = StabilizerCode::with_logicals(
        paulis(&["XXXX", "ZZZZ"]),
        2,
        paulis(&["XXII", "XIXI"]),
        paulis(&["ZIZI", "ZZII"]),
    )
    .expect("valid code");
    FamilyInstance {
        name: "c422".into(),
        description: "[[4,2]] code with stabilizers XXXX and ZZZZ".into(),
        partition: Partition::single_qudits(4),
        code,
        declared: None,
        declared_delta: None,
        exponents: None,
    }
}

/// The `[[5,1]]` perfect code.
pub fn five_qubit() -> FamilyInstance {
    let code = StabilizerCode::with_logicals(
        paulis(&["ZZXIX", "XZZXI", "IXZZX", "XIXZZ"]),
        2,
        paulis(&["XXXXX"]),
        paulis(&["ZZZZZ"]),
    )
    .expect("valid code");
    FamilyInstance {
        name: "five-qubit".into(),
        description: "[[5,1]] perfect code".into(),
        partition: Partition::single_qudits(5),
        code,
        declared: None,
        declared_delta: None,
        exponents: None,
    }
}

/// Supports of the monomials of `vars` evaluated on the nonzero points of
/// `F_2^m`; point `v` is qubit `v - 1`.
fn monomial_support(m: u32, vars: u32) -> Vec<usize> {
    (1..1usize << m).filter(|&v| v as u32 & vars == vars).map(|v| v - 1).collect()
}

/// Nonzero points where the linear form `l` vanishes.
fn hyperplane_complement(m: u32, l: usize) -> Vec<usize> {
    (1..1usize << m)
        .filter(|&v| (v & l).count_ones() % 2 == 0)
        .map(|v| v - 1)
        .collect()
}

/// Stabilizers of the punctured Reed-Muller code on `2^(D+1) - 1` qubits.
///
/// Qubits are the nonzero points of `F_2^(D+1)`. X checks are the linear
/// coordinate functions; Z checks are monomials of degree `1..=D-1`.
fn reed_muller_code(d: u32) -> StabilizerCode {
    let m = d + 1;
    let n = (1usize << m) - 1;
    let mut gens = Vec::new();
    for i in 0..m {
        gens.push(qubit_pauli(n, &monomial_support(m, 1 << i), &[]));
    }
    for vars in 1u32..(1 << m) {
        let deg = vars.count_ones();
        if deg < d {
            gens.push(qubit_pauli(n, &[], &monomial_support(m, vars)));
        }
    }
    let all: Vec<usize> = (0..n).collect();
    StabilizerCode::with_logicals(gens, 2, vec![qubit_pauli(n, &all, &[])], vec![qubit_pauli(n, &[], &all)])
        .expect("valid code")
}

/// The `[[2^(D+1) - 1, 1]]` punctured Reed-Muller code; `D = 2` is the
/// Steane code.
///
/// Declared: `d(X) = d(Y) = 2^D - 1`, `d(Z) = 3`. The `2^(D+1) - 1`
/// hyperplane complements are the minimal X representatives and form a
/// `(2^D - 1)`-disjoint set, and the same supports carry Z and Y
/// representatives, so `Delta = n / d_max`.
pub fn reed_muller(d: u32) -> Result<FamilyInstance, FamilyError> {
    if !(2..=10).contains(&d) {
        return Err(FamilyError::InvalidParameter(format!(
            "Reed-Muller order D = {d} must be between 2 and 10"
        )));
    }
    let code = reed_muller_code(d);
    let m = d + 1;
    let n = (1usize << m) - 1;
    let d_max = (1u64 << d) - 1;
    let planes: Vec<Vec<usize>> = (1..=n).map(|l| hyperplane_complement(m, l)).collect();
    let witnesses = [[1u8, 0], [0, 1], [1, 1]]
        .iter()
        .map(|label| {
            let members = planes
                .iter()
                .map(|s| {
                    let xs: &[usize] = if label[0] == 1 { s } else { &[] };
                    let zs: &[usize] = if label[1] == 1 { s } else { &[] };
                    qubit_pauli(n, xs, zs)
                })
                .collect();
            witness(&code, label, d_max, members)
        })
        .collect();
    let declared = DeclaredMetrics {
        distances: declared_xzy(&code, d_max, 3, d_max),
        witnesses,
    };
    Ok(FamilyInstance {
        name: format!("reed-muller-{d}"),
        description: format!("[[{n},1]] punctured Reed-Muller code, D = {d}"),
        partition: Partition::single_qudits(n),
        code,
        declared: Some(declared),
        declared_delta: Some(ratio(n as u64, d_max)),
        exponents: None,
    })
}

/// Planar surface code with distance `l`.
///
/// Qubits sit on the sites `(a, b)` of a `(2l-1) x (2l-1)` grid with `a + b`
/// even, numbered row-major. Even rows hold the horizontal edges of the
/// `l x l` lattice and odd rows the vertical ones. X checks sit at odd `a`,
/// even `b`; Z checks at even `a`, odd `b`; each acts on its grid neighbours.
/// Logical X runs along row 0 and logical Z down column 0.
pub fn surface_code(l: usize) -> Result<FamilyInstance, FamilyError> {
    if !(2..=64).contains(&l) {
        return Err(FamilyError::InvalidParameter(format!(
            "surface code size l = {l} must be between 2 and 64"
        )));
    }
    let w = 2 * l - 1;
    let mut index = vec![usize::MAX; w * w];
    let mut n = 0;
    for a in 0..w {
        for b in 0..w {
            if (a + b) % 2 == 0 {
                index[a * w + b] = n;
                n += 1;
            }
        }
    }
    let site = |a: usize, b: usize| index[a * w + b];
    let neighbours = |a: usize, b: usize| {
        let mut out = Vec::new();
        if a > 0 {
            out.push(site(a - 1, b));
        }
        if a + 1 < w {
            out.push(site(a + 1, b));
        }
        if b > 0 {
            out.push(site(a, b - 1));
        }
        if b + 1 < w {
            out.push(site(a, b + 1));
        }
        out
    };
    let mut gens = Vec::new();
    for a in 0..w {
        for b in 0..w {
            if a % 2 == 1 && b % 2 == 0 {
                gens.push(qubit_pauli(n, &neighbours(a, b), &[]));
            } else if a % 2 == 0 && b % 2 == 1 {
                gens.push(qubit_pauli(n, &[], &neighbours(a, b)));
            }
        }
    }
    let row = |i: usize| (0..l).map(|j| site(2 * i, 2 * j)).collect::<Vec<_>>();
    let col = |j: usize| (0..l).map(|i| site(2 * i, 2 * j)).collect::<Vec<_>>();
    let code = StabilizerCode::with_logicals(
        gens,
        2,
        vec![qubit_pauli(n, &row(0), &[])],
        vec![qubit_pauli(n, &[], &col(0))],
    )?;

    let rows: Vec<PauliOperator> = (0..l).map(|i| qubit_pauli(n, &row(i), &[])).collect();
    let cols: Vec<PauliOperator> = (0..l).map(|j| qubit_pauli(n, &[], &col(j))).collect();
    let crosses: Vec<PauliOperator> = (0..l).map(|i| qubit_pauli(n, &row(i), &col(i))).collect();
    let witnesses = vec![
        witness(&code, &[1, 0], 1, rows.clone()),
        witness(&code, &[0, 1], 1, cols.clone()),
        witness(&code, &[1, 0], 2, rows),
        witness(&code, &[0, 1], 2, cols),
        witness(&code, &[1, 1], 2, crosses),
    ];
    let declared = DeclaredMetrics {
        distances: declared_xzy(&code, l as u64, l as u64, 2 * l as u64 - 1),
        witnesses,
    };
    Ok(FamilyInstance {
        name: format!("surface-{l}"),
        description: format!("[[{n},1]] planar surface code, l = {l}"),
        partition: Partition::single_qudits(n),
        code,
        declared: Some(declared),
        declared_delta: Some(ratio(l as u64, 2)),
        exponents: Some(FamilyExponents::integers(1, 1, 1)),
    })
}

/// `l^a` when it is an integer.
fn integer_power(l: u64, a: &BigRational) -> Option<u64> {
    let (p, q) = (a.numer().to_u32()?, a.denom().to_u32()?);
    let base = num_traits::pow(BigInt::from(l), p as usize);
    let root = base.nth_root(q);
    (num_traits::pow(root.clone(), q as usize) == base).then(|| root.to_u64()).flatten()
}

/// Bacon-Shor code on an `l x l^a` grid, fixed to the Z gauge.
///
/// Qubit `(i, j)` in row `i < l`, column `j < l^a` has index `i * l^a + j`.
/// Stabilizers are the horizontal pairs `Z(i,j) Z(i,j+1)` and X on each
/// pair of adjacent full rows. Logical X is X on row 0 (weight `l^a`) and
/// logical Z is Z on column 0 (weight `l`).
pub fn bacon_shor_z(l: u64, a: &BigRational) -> Result<FamilyInstance, FamilyError> {
    if l < 2 {
        return Err(FamilyError::InvalidParameter(format!("lattice size l = {l} must be at least 2")));
    }
    if a < &BigRational::one() {
        return Err(FamilyError::InvalidParameter(format!("exponent a = {a} must be at least 1")));
    }
    let cols = integer_power(l, a)
        .filter(|&c| c.checked_mul(l).is_some_and(|n| n <= 1 << 16))
        .ok_or_else(|| FamilyError::InvalidParameter(format!("l^a = {l}^{a} is not a usable integer width")))?;
    let (rows, cols) = (l as usize, cols as usize);
    let n = rows * cols;
    let at = |i: usize, j: usize| i * cols + j;
    let mut gens = Vec::new();
    for i in 0..rows {
        for j in 0..cols - 1 {
            gens.push(qubit_pauli(n, &[], &[at(i, j), at(i, j + 1)]));
        }
    }
    let row = |i: usize| (0..cols).map(|j| at(i, j)).collect::<Vec<_>>();
    let col = |j: usize| (0..rows).map(|i| at(i, j)).collect::<Vec<_>>();
    for i in 0..rows - 1 {
        let mut both = row(i);
        both.extend(row(i + 1));
        gens.push(qubit_pauli(n, &both, &[]));
    }
    let code = StabilizerCode::with_logicals(
        gens,
        2,
        vec![qubit_pauli(n, &row(0), &[])],
        vec![qubit_pauli(n, &[], &col(0))],
    )?;
    let xs: Vec<PauliOperator> = (0..rows).map(|i| qubit_pauli(n, &row(i), &[])).collect();
    let zs: Vec<PauliOperator> = (0..cols).map(|j| qubit_pauli(n, &[], &col(j))).collect();
    let crosses: Vec<PauliOperator> = (0..rows).map(|i| qubit_pauli(n, &row(i), &col(i))).collect();
    let witnesses = vec![
        witness(&code, &[1, 0], 1, xs.clone()),
        witness(&code, &[0, 1], 1, zs.clone()),
        witness(&code, &[1, 0], 2, xs),
        witness(&code, &[0, 1], 2, zs),
        witness(&code, &[1, 1], 2, crosses),
    ];
    let declared = DeclaredMetrics {
        distances: declared_xzy(&code, cols as u64, rows as u64, (rows + cols - 1) as u64),
        witnesses,
    };
    Ok(FamilyInstance {
        name: format!("bacon-shor-{l}-{a}"),
        description: format!("[[{n},1]] Bacon-Shor code on a {rows} x {cols} grid, Z gauge"),
        partition: Partition::single_qudits(n),
        code,
        declared: Some(declared),
        declared_delta: Some(ratio(l, 2)),
        exponents: Some(FamilyExponents::new(
            BigRational::one(),
            a.clone(),
            BigRational::one(),
        )),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrayPartition {
    /// 15 parts, one per column of 7 qubits.
    Columns,
    /// 7 parts, one per row of 15 qubits.
    Rows,
}

impl std::str::FromStr for ArrayPartition {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "columns" => Ok(ArrayPartition::Columns),
            "rows" => Ok(ArrayPartition::Rows),
            other => Err(FamilyError::InvalidParameter(format!(
                "unknown partition {other:?}, expected `columns` or `rows`"
            ))),
        }
    }
}

/// The `[[105,1]]` code: seven 15-qubit Reed-Muller blocks, one per row of a
/// `7 x 15` array, joined by the Steane code at the logical level.
///
/// Qubit `(i, j)` has index `15 i + j`. Both constituent codes have
/// transversal all-X and all-Z logicals, so the outer Steane checks are
/// all-X or all-Z on the union of their rows and the logicals are `X^105`
/// and `Z^105`.
pub fn concatenated_105(choice: ArrayPartition) -> FamilyInstance {
    const ROWS: usize = 7;
    const COLS: usize = 15;
    let n = ROWS * COLS;
    let inner = reed_muller_code(3);
    let outer = reed_muller_code(2);
    let mut gens = Vec::new();
    for i in 0..ROWS {
        for g in inner.generators() {
            let xs: Vec<usize> = (0..COLS).filter(|&j| g.x(j) == 1).map(|j| i * COLS + j).collect();
            let zs: Vec<usize> = (0..COLS).filter(|&j| g.z(j) == 1).map(|j| i * COLS + j).collect();
            gens.push(qubit_pauli(n, &xs, &zs));
        }
    }
    let lift = |rows: &[usize]| -> Vec<usize> { rows.iter().flat_map(|&i| (0..COLS).map(move |j| i * COLS + j)).collect() };
    for g in outer.generators() {
        let xr: Vec<usize> = (0..ROWS).filter(|&i| g.x(i) == 1).collect();
        let zr: Vec<usize> = (0..ROWS).filter(|&i| g.z(i) == 1).collect();
        gens.push(qubit_pauli(n, &lift(&xr), &lift(&zr)));
    }
    let all: Vec<usize> = (0..n).collect();
    let code = StabilizerCode::with_logicals(gens, 2, vec![qubit_pauli(n, &all, &[])], vec![qubit_pauli(n, &[], &all)])
        .expect("valid code");

    let grid = |rows: &[usize], cols: &[usize]| -> Vec<usize> {
        rows.iter()
            .flat_map(|&i| cols.iter().map(move |&j| i * COLS + j))
            .collect()
    };
    let build = |label: [u8; 2], rows: &[usize], cols: &[usize]| {
        let s = grid(rows, cols);
        let xs: &[usize] = if label[0] == 1 { &s } else { &[] };
        let zs: &[usize] = if label[1] == 1 { &s } else { &[] };
        qubit_pauli(n, xs, zs)
    };
    let labels = [[1u8, 0], [0, 1], [1, 1]];
    let (partition, witnesses, distances, delta, description) = match choice {
        ArrayPartition::Columns => {
            // a weight-3 Steane logical across rows, one Reed-Muller plane per member
            let steane_rows = hyperplane_complement(3, 1);
            let witnesses = labels
                .iter()
                .map(|&label| {
                    let members = (1..=COLS)
                        .map(|l| build(label, &steane_rows, &hyperplane_complement(4, l)))
                        .collect();
                    witness(&code, &label, 7, members)
                })
                .collect();
            let parts: Vec<Vec<usize>> = (0..COLS).map(|j| (0..ROWS).map(|i| i * COLS + j).collect()).collect();
            (
                Partition::new(parts, n).expect("columns partition"),
                witnesses,
                declared_xzy(&code, 7, 3, 7),
                ratio(15, 7),
                "columns partition: 15 parts of 7 qubits",
            )
        }
        ArrayPartition::Rows => {
            let all_cols: Vec<usize> = (0..COLS).collect();
            let witnesses = labels
                .iter()
                .map(|&label| {
                    let members = (1..=ROWS)
                        .map(|l| build(label, &hyperplane_complement(3, l), &all_cols))
                        .collect();
                    witness(&code, &label, 3, members)
                })
                .collect();
            let parts: Vec<Vec<usize>> = (0..ROWS).map(|i| (0..COLS).map(|j| i * COLS + j).collect()).collect();
            (
                Partition::new(parts, n).expect("rows partition"),
                witnesses,
                declared_xzy(&code, 3, 3, 3),
                ratio(7, 3),
                "rows partition: 7 parts of 15 qubits",
            )
        }
    };
    FamilyInstance {
        name: match choice {
            ArrayPartition::Columns => "c105-columns".into(),
            ArrayPartition::Rows => "c105-rows".into(),
        },
        description: format!("[[105,1]] concatenated Steane and Reed-Muller code, {description}"),
        code,
        partition,
        declared: Some(DeclaredMetrics { distances, witnesses }),
        declared_delta: Some(delta),
        exponents: None,
    }
}

/// Exponents of a `D`-dimensional toric-like family whose logical Z and X
/// have dimensions `s` and `D - s`: `(s, D - s, s)`.
pub fn toric_family_exponents(d: u32, s: u32) -> Result<FamilyExponents, FamilyError> {
    if d < 2 || s < 1 || s > d / 2 {
        return Err(FamilyError::InvalidParameter(format!(
            "need D >= 2 and 1 <= s <= D/2, got D = {d}, s = {s}"
        )));
    }
    Ok(FamilyExponents::integers(s as i64, (d - s) as i64, s as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::ClassOf;

    fn check_witnesses(inst: &FamilyInstance) {
        for w in &inst.declared.as_ref().unwrap().witnesses {
            w.verify(&inst.code, &inst.partition).unwrap();
        }
    }

    #[test]
    fn steane_shape() {
        let inst = reed_muller(2).unwrap();
        assert_eq!(inst.code.num_qudits(), 7);
        assert_eq!(inst.code.num_logical(), 1);
        check_witnesses(&inst);
    }

    #[test]
    fn reed_muller_minimal_x_count() {
        for d in [2, 3] {
            let inst = reed_muller(d).unwrap();
            let x = inst.code.class(vec![1, 0]).unwrap();
            let min = (1u64 << d) - 1;
            let minimal: Vec<PauliOperator> = inst
                .code
                .enumerate_class(&x, 1 << 16)
                .unwrap()
                .filter(|p| p.qudit_weight() as u64 == min)
                .collect();
            // Y-type members may share a minimal support, so count X-type
            // members and distinct supports
            let x_type = minimal.iter().filter(|p| p.z_vec().iter().all(|&z| z == 0)).count();
            let supports: std::collections::HashSet<Vec<usize>> =
                minimal.iter().map(|p| p.qudit_support()).collect();
            assert_eq!(x_type, (1 << (d + 1)) - 1);
            assert_eq!(supports.len(), (1 << (d + 1)) - 1);
        }
    }

    #[test]
    fn surface_and_bacon_shor_witnesses() {
        for l in 2..=4 {
            let inst = surface_code(l).unwrap();
            assert_eq!(inst.code.num_qudits(), l * l + (l - 1) * (l - 1));
            check_witnesses(&inst);
        }
        let inst = bacon_shor_z(2, &BigRational::from_integer(2.into())).unwrap();
        assert_eq!(inst.code.num_qudits(), 8);
        check_witnesses(&inst);
        assert!(bacon_shor_z(2, &ratio(3, 2)).is_err());
        assert_eq!(bacon_shor_z(4, &ratio(3, 2)).unwrap().code.num_qudits(), 32);
    }

    #[test]
    fn c105_structure() {
        for choice in [ArrayPartition::Columns, ArrayPartition::Rows] {
            let inst = concatenated_105(choice);
            assert_eq!(inst.code.num_qudits(), 105);
            assert_eq!(inst.code.num_logical(), 1);
            check_witnesses(&inst);
        }
        let inst = concatenated_105(ArrayPartition::Columns);
        assert_eq!(inst.partition.num_parts(), 15);
        let g = &inst.code.generators()[0];
        assert_eq!(inst.code.class_of(g).unwrap(), ClassOf::Trivial);
    }

    #[test]
    fn toric_ranges() {
        assert!(toric_family_exponents(2, 1).is_ok());
        assert!(toric_family_exponents(5, 3).is_err());
        assert!(toric_family_exponents(1, 1).is_err());
    }
}
