//! Stabilizer codes, logical cosets and multi-block effective codes.

use std::fmt;

use thiserror::Error;

use crate::linalg::{self, Echelon};
use crate::partition::{Partition, PartitionError};
use crate::pauli::{PauliError, PauliOperator, QuditDim};

/// Default cap on the number of coset elements enumerated explicitly.
pub const DEFAULT_BUDGET: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("no stabilizer generators given")]
    NoGenerators,
    #[error("generators {i} and {j} do not commute (symplectic product {lambda})")]
    NonCommuting { i: usize, j: usize, lambda: u8 },
    #[error("generator {index} is dependent on earlier generators: {}", format_dependency(.combination))]
    Dependent {
        index: usize,
        combination: Vec<(usize, u8)>,
    },
    #[error("invalid logical operators: {0}")]
    InvalidLogicals(String),
    #[error("logical label must be non-zero")]
    ZeroLabel,
    #[error("logical label has length {got}, expected {expected}")]
    LabelLength { got: usize, expected: usize },
    #[error("label entry {0} is not below the qudit dimension")]
    LabelEntry(u8),
    #[error("coset has {size} elements, above the enumeration budget {budget}")]
    BudgetExceeded { size: String, budget: u64 },
    #[error("block {block}: {reason}")]
    InvalidPermutation { block: usize, reason: String },
    #[error("code has no logical qudits")]
    NoLogicalQudits,
}

fn format_dependency(combination: &[(usize, u8)]) -> String {
    if combination.is_empty() {
        return "it is the identity".into();
    }
    combination
        .iter()
        .map(|(i, c)| {
            if *c == 1 {
                format!("g{i}")
            } else {
                format!("g{i}^{c}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// A non-trivial logical coset, named by `a` in `X1^a1 ... Xk^ak Z1^a(k+1) ... Zk^a(2k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogicalClass {
    label: Vec<u8>,
}

impl LogicalClass {
    pub fn new(label: Vec<u8>, dim: QuditDim) -> Result<Self, CodeError> {
        if let Some(&a) = label.iter().find(|&&a| a >= dim.get()) {
            return Err(CodeError::LabelEntry(a));
        }
        if label.iter().all(|&a| a == 0) {
            return Err(CodeError::ZeroLabel);
        }
        if label.len() % 2 != 0 {
            return Err(CodeError::LabelLength {
                got: label.len(),
                expected: label.len() + 1,
            });
        }
        Ok(LogicalClass { label })
    }

    pub fn label(&self) -> &[u8] {
        &self.label
    }

    pub fn num_logical(&self) -> usize {
        self.label.len() / 2
    }

    /// Symplectic product of the logical Paulis named by two labels.
    pub fn symplectic_with(&self, other: &LogicalClass, dim: QuditDim) -> u8 {
        let k = self.num_logical();
        let (a, b) = self.label.split_at(k);
        let (c, d) = other.label.split_at(k);
        let mut acc = 0u8;
        for j in 0..k {
            acc = dim.add(acc, dim.mul(b[j], c[j]));
            acc = dim.add(acc, dim.neg(dim.mul(a[j], d[j])));
        }
        acc
    }

    /// Readable form such as `X1`, `Z2`, `Y1` or `X1^2 Z1`.
    pub fn name(&self, dim: QuditDim) -> String {
        let k = self.num_logical();
        let mut parts = Vec::new();
        for j in 0..k {
            let (a, b) = (self.label[j], self.label[j + k]);
            let power = |e: u8| if e == 1 { String::new() } else { format!("^{e}") };
            match (a, b) {
                (0, 0) => {}
                (1, 1) if dim.is_qubit() => parts.push(format!("Y{}", j + 1)),
                (a, 0) => parts.push(format!("X{}{}", j + 1, power(a))),
                (0, b) => parts.push(format!("Z{}{}", j + 1, power(b))),
                (a, b) => parts.push(format!("X{}{} Z{}{}", j + 1, power(a), j + 1, power(b))),
            }
        }
        parts.join(" ")
    }
}

/// Comma-separated label, the form used in witness files.
impl fmt::Display for LogicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.label.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Result of locating an operator in the coset decomposition of `N(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassOf {
    Logical(LogicalClass),
    /// In the stabilizer group up to phase.
    Trivial,
    /// Fails to commute with some stabilizer.
    NotLogical,
}

/// Locality `q` and depth `h` of a circuit; `(1, 1)` is transversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CircuitShape {
    q: u32,
    h: u32,
}

impl CircuitShape {
    pub const TRANSVERSAL: CircuitShape = CircuitShape { q: 1, h: 1 };

    pub fn new(q: u32, h: u32) -> Option<Self> {
        (q >= 1 && h >= 1).then_some(CircuitShape { q, h })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn is_transversal(&self) -> bool {
        self.q == 1 && self.h == 1
    }
}

/// `r` identical codeblocks whose parts are fused as `Q_i = U_b Q^(b)_{sigma_b(i)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiblockSpec {
    r: usize,
    permutations: Vec<Vec<usize>>,
}

impl MultiblockSpec {
    /// `r` blocks, every `sigma_b` the identity.
    pub fn identity(r: usize) -> Self {
        MultiblockSpec {
            r: r.max(1),
            permutations: Vec::new(),
        }
    }

    /// One permutation of the part indices per block.
    pub fn with_permutations(permutations: Vec<Vec<usize>>) -> Self {
        MultiblockSpec {
            r: permutations.len().max(1),
            permutations,
        }
    }

    pub fn blocks(&self) -> usize {
        self.r
    }

    fn sigma(&self, block: usize, part: usize) -> usize {
        self.permutations.get(block).map_or(part, |p| p[part])
    }

    fn validate(&self, num_parts: usize) -> Result<(), CodeError> {
        for (block, perm) in self.permutations.iter().enumerate() {
            if perm.len() != num_parts {
                return Err(CodeError::InvalidPermutation {
                    block,
                    reason: format!("has length {}, expected {num_parts}", perm.len()),
                });
            }
            let mut seen = vec![false; num_parts];
            for &p in perm {
                if p >= num_parts || seen[p] {
                    return Err(CodeError::InvalidPermutation {
                        block,
                        reason: format!("entry {p} is out of range or repeated"),
                    });
                }
                seen[p] = true;
            }
        }
        Ok(())
    }
}

/// An `[[n, k]]` stabilizer code over prime qudit dimension `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    dim: QuditDim,
    n: usize,
    generators: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
}

fn symp(dim: QuditDim, u: &[u8], v: &[u8]) -> u8 {
    // lambda(u, v) = z_u . x_v - x_u . z_v
    let n = u.len() / 2;
    let mut acc = 0u8;
    for i in 0..n {
        acc = dim.add(acc, dim.mul(u[n + i], v[i]));
        acc = dim.add(acc, dim.neg(dim.mul(u[i], v[n + i])));
    }
    acc
}

fn axpy(dim: QuditDim, y: &mut [u8], a: u8, x: &[u8]) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = dim.add(*yi, dim.mul(a, xi));
    }
}

impl StabilizerCode {
    /// Validates the generators and derives a logical basis.
    pub fn build(generators: Vec<PauliOperator>, m: u32) -> Result<Self, CodeError> {
        let dim = QuditDim::new(m)?;
        let (n, generators, echelon) = Self::validate_generators(generators, dim)?;
        let normalizer = Self::normalizer_basis(&generators, dim, n);
        let (logical_x, logical_z) = symplectic_gram_schmidt(dim, n, echelon, normalizer);
        Ok(StabilizerCode {
            dim,
            n,
            generators,
            logical_x,
            logical_z,
        })
    }

    /// Like [`StabilizerCode::build`] but with caller-supplied logical
    /// operators, which are checked rather than trusted.
    pub fn with_logicals(
        generators: Vec<PauliOperator>,
        m: u32,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Result<Self, CodeError> {
        let dim = QuditDim::new(m)?;
        let (n, generators, _) = Self::validate_generators(generators, dim)?;
        let k = n - generators.len();
        if logical_x.len() != k || logical_z.len() != k {
            return Err(CodeError::InvalidLogicals(format!(
                "expected {k} X and {k} Z operators, got {} and {}",
                logical_x.len(),
                logical_z.len()
            )));
        }
        for (name, l) in logical_x.iter().map(|l| ("X", l)).chain(logical_z.iter().map(|l| ("Z", l))) {
            if l.dim() != dim || l.num_qudits() != n {
                return Err(CodeError::InvalidLogicals(format!(
                    "logical {name} {l} does not match the code shape"
                )));
            }
            if let Some(i) = generators.iter().position(|g| g.symplectic_unchecked(l) != 0) {
                return Err(CodeError::InvalidLogicals(format!(
                    "logical {name} {l} does not commute with generator {i}"
                )));
            }
        }
        for i in 0..k {
            for j in 0..k {
                let want = if i == j { dim.neg(1) } else { 0 };
                let checks = [
                    ("X", "Z", logical_x[i].symplectic_unchecked(&logical_z[j]), want),
                    ("X", "X", logical_x[i].symplectic_unchecked(&logical_x[j]), 0),
                    ("Z", "Z", logical_z[i].symplectic_unchecked(&logical_z[j]), 0),
                ];
                for (a, b, got, want) in checks {
                    if got != want {
                        return Err(CodeError::InvalidLogicals(format!(
                            "symplectic product of logical {a}{i} and {b}{j} is {got}, expected {want}"
                        )));
                    }
                }
            }
        }
        Ok(StabilizerCode {
            dim,
            n,
            generators,
            logical_x: logical_x.into_iter().map(|p| p.unphased()).collect(),
            logical_z: logical_z.into_iter().map(|p| p.unphased()).collect(),
        })
    }

    fn validate_generators(
        generators: Vec<PauliOperator>,
        dim: QuditDim,
    ) -> Result<(usize, Vec<PauliOperator>, Echelon), CodeError> {
        let first = generators.first().ok_or(CodeError::NoGenerators)?;
        let n = first.num_qudits();
        for g in &generators {
            if g.dim() != dim {
                return Err(PauliError::DimensionMismatch {
                    left: dim.get(),
                    right: g.dim().get(),
                }
                .into());
            }
            if g.num_qudits() != n {
                return Err(PauliError::LengthMismatch {
                    left: n,
                    right: g.num_qudits(),
                }
                .into());
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                let lambda = generators[i].symplectic_unchecked(&generators[j]);
                if lambda != 0 {
                    return Err(CodeError::NonCommuting { i, j, lambda });
                }
            }
        }
        let mut echelon = Echelon::new(dim, 2 * n);
        for (index, g) in generators.iter().enumerate() {
            if let Err(coeffs) = echelon.insert(&g.symplectic_vector()) {
                let combination = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect();
                return Err(CodeError::Dependent { index, combination });
            }
        }
        Ok((n, generators, echelon))
    }

    /// Basis of the symplectic complement of the stabilizer span.
    fn normalizer_basis(generators: &[PauliOperator], dim: QuditDim, n: usize) -> Vec<Vec<u8>> {
        // lambda(v, s) = z_v . x_s - x_v . z_s, linear in v = (x_v | z_v)
        let rows: Vec<Vec<u8>> = generators
            .iter()
            .map(|s| {
                let mut row: Vec<u8> = s.z_vec().into_iter().map(|a| dim.neg(a)).collect();
                row.extend(s.x_vec());
                row
            })
            .collect();
        linalg::kernel(dim, &rows, 2 * n)
    }

    #[inline]
    pub fn dim(&self) -> QuditDim {
        self.dim
    }

    #[inline]
    pub fn num_qudits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_logical(&self) -> usize {
        self.logical_x.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    /// `m^(n-k)`, the size of every coset, when it fits in `u128`.
    pub fn coset_size(&self) -> Option<u128> {
        (self.dim.get() as u128).checked_pow(self.generators.len() as u32)
    }

    /// Number of non-trivial logical classes, `m^(2k) - 1`.
    pub fn num_classes(&self) -> Option<u128> {
        (self.dim.get() as u128)
            .checked_pow(2 * self.num_logical() as u32)
            .map(|v| v - 1)
    }

    /// Every non-trivial class, the first label entry varying fastest.
    pub fn logical_classes(&self) -> Vec<LogicalClass> {
        let len = 2 * self.num_logical();
        if len == 0 {
            return Vec::new();
        }
        let m = self.dim.get();
        let mut label = vec![0u8; len];
        let mut out = Vec::new();
        loop {
            let mut i = 0;
            while i < len {
                label[i] += 1;
                if label[i] < m {
                    break;
                }
                label[i] = 0;
                i += 1;
            }
            if i == len {
                return out;
            }
            out.push(LogicalClass {
                label: label.clone(),
            });
        }
    }

    pub fn class(&self, label: Vec<u8>) -> Result<LogicalClass, CodeError> {
        if label.len() != 2 * self.num_logical() {
            return Err(CodeError::LabelLength {
                got: label.len(),
                expected: 2 * self.num_logical(),
            });
        }
        LogicalClass::new(label, self.dim)
    }

    fn check_class(&self, class: &LogicalClass) -> Result<(), CodeError> {
        if class.label.len() != 2 * self.num_logical() {
            return Err(CodeError::LabelLength {
                got: class.label.len(),
                expected: 2 * self.num_logical(),
            });
        }
        Ok(())
    }

    /// `prod_i X_i^a_i Z_i^a_(i+k)` with phase 0.
    pub fn logical_representative(&self, class: &LogicalClass) -> Result<PauliOperator, CodeError> {
        self.check_class(class)?;
        let k = self.num_logical();
        let mut p = PauliOperator::identity(self.n, self.dim);
        for j in 0..k {
            p = p.multiply(&self.logical_x[j].pow(class.label[j] as u32))?;
        }
        for j in 0..k {
            p = p.multiply(&self.logical_z[j].pow(class.label[k + j] as u32))?;
        }
        Ok(p.unphased())
    }

    pub fn class_of(&self, p: &PauliOperator) -> Result<ClassOf, CodeError> {
        if p.dim() != self.dim || p.num_qudits() != self.n {
            return Err(PauliError::LengthMismatch {
                left: self.n,
                right: p.num_qudits(),
            }
            .into());
        }
        if self.generators.iter().any(|g| g.symplectic_unchecked(p) != 0) {
            return Ok(ClassOf::NotLogical);
        }
        let k = self.num_logical();
        let mut label = vec![0u8; 2 * k];
        for j in 0..k {
            label[j] = self.dim.neg(p.symplectic_unchecked(&self.logical_z[j]));
            label[k + j] = p.symplectic_unchecked(&self.logical_x[j]);
        }
        if label.iter().all(|&a| a == 0) {
            Ok(ClassOf::Trivial)
        } else {
            Ok(ClassOf::Logical(LogicalClass { label }))
        }
    }

    /// All `m^(n-k)` elements of the coset, modulo phase.
    pub fn enumerate_class(
        &self,
        class: &LogicalClass,
        budget: u64,
    ) -> Result<CosetIter<'_>, CodeError> {
        let size = self.coset_size();
        match size {
            Some(s) if s <= budget as u128 => {}
            _ => {
                return Err(CodeError::BudgetExceeded {
                    size: size.map_or_else(
                        || format!("{}^{}", self.dim, self.generators.len()),
                        |s| s.to_string(),
                    ),
                    budget,
                })
            }
        }
        let start = self.logical_representative(class)?;
        Ok(CosetIter {
            generators: &self.generators,
            m: self.dim.get(),
            digits: vec![0; self.generators.len()],
            current: Some(start),
        })
    }

    /// The `[[rn, rk]]` code of `r` identical blocks with fused parts.
    pub fn effective_multiblock(
        &self,
        partition: &Partition,
        spec: &MultiblockSpec,
    ) -> Result<(StabilizerCode, Partition), CodeError> {
        if partition.num_qudits() != self.n {
            return Err(PauliError::PartitionSize {
                partition: partition.num_qudits(),
                operator: self.n,
            }
            .into());
        }
        spec.validate(partition.num_parts())?;
        let r = spec.blocks();
        if r == 1 && spec.permutations.iter().all(|p| p.iter().enumerate().all(|(i, &s)| i == s)) {
            return Ok((self.clone(), partition.clone()));
        }
        let big_n = self.n * r;
        let lift = |p: &PauliOperator, block: usize| -> PauliOperator {
            let mut x = vec![0u8; big_n];
            let mut z = vec![0u8; big_n];
            for q in 0..self.n {
                x[block * self.n + q] = p.x(q);
                z[block * self.n + q] = p.z(q);
            }
            PauliOperator::from_xz(&x, &z, self.dim).expect("valid lift")
        };
        let mut generators = Vec::new();
        let mut lx = Vec::new();
        let mut lz = Vec::new();
        for b in 0..r {
            generators.extend(self.generators.iter().map(|g| lift(g, b)));
            lx.extend(self.logical_x.iter().map(|l| lift(l, b)));
            lz.extend(self.logical_z.iter().map(|l| lift(l, b)));
        }
        let parts: Vec<Vec<usize>> = (0..partition.num_parts())
            .map(|i| {
                (0..r)
                    .flat_map(|b| {
                        partition
                            .part(spec.sigma(b, i))
                            .iter()
                            .map(move |&q| b * self.n + q)
                    })
                    .collect()
            })
            .collect();
        let code = StabilizerCode {
            dim: self.dim,
            n: big_n,
            generators,
            logical_x: lx,
            logical_z: lz,
        };
        Ok((code, Partition::new(parts, big_n)?))
    }
}

fn symplectic_gram_schmidt(
    dim: QuditDim,
    n: usize,
    mut span: Echelon,
    normalizer: Vec<Vec<u8>>,
) -> (Vec<PauliOperator>, Vec<PauliOperator>) {
    let mut pool: Vec<Vec<u8>> = Vec::new();
    for v in normalizer {
        if span.insert(&v).is_ok() {
            pool.push(v);
        }
    }
    let mut xs = Vec::new();
    let mut zs = Vec::new();
    while !pool.is_empty() {
        let u = pool.remove(0);
        let j = pool
            .iter()
            .position(|w| symp(dim, &u, w) != 0)
            .expect("symplectic form is non-degenerate modulo the stabilizer");
        let mut w = pool.remove(j);
        // scale so that lambda(u, w) = -1
        let s = dim.mul(dim.neg(1), dim.inv(symp(dim, &u, &w)));
        for a in &mut w {
            *a = dim.mul(*a, s);
        }
        for v in &mut pool {
            let alpha = symp(dim, v, &w);
            let beta = dim.neg(symp(dim, v, &u));
            axpy(dim, v, alpha, &u);
            axpy(dim, v, beta, &w);
        }
        xs.push(PauliOperator::from_symplectic(&u, dim));
        zs.push(PauliOperator::from_symplectic(&w, dim));
    }
    debug_assert!(xs.iter().all(|x| x.num_qudits() == n));
    (xs, zs)
}

/// Mixed-radix walk over `S`: bumping digit `i` multiplies by generator `i`.
pub struct CosetIter<'a> {
    generators: &'a [PauliOperator],
    m: u8,
    digits: Vec<u8>,
    current: Option<PauliOperator>,
}

impl Iterator for CosetIter<'_> {
    type Item = PauliOperator;

    fn next(&mut self) -> Option<PauliOperator> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                return Some(out);
            }
            next = next.multiply(&self.generators[i]).expect("same shape");
            self.digits[i] += 1;
            if self.digits[i] < self.m {
                break;
            }
            // g_i^m is a phase, so `next` is back where digit i started
            self.digits[i] = 0;
            i += 1;
        }
        self.current = Some(next.unphased());
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn paulis(strs: &[&str], m: u32) -> Vec<PauliOperator> {
        strs.iter().map(|s| PauliOperator::parse(s, m).unwrap()).collect()
    }

    fn five_qubit() -> StabilizerCode {
        StabilizerCode::build(paulis(&["ZZXIX", "XZZXI", "IXZZX", "XIXZZ"], 2), 2).unwrap()
    }

    fn check_logical_relations(code: &StabilizerCode) {
        let dim = code.dim();
        let k = code.num_logical();
        for g in code.generators() {
            for l in code.logical_x().iter().chain(code.logical_z()) {
                assert_eq!(g.symplectic_product(l).unwrap(), 0);
            }
        }
        for i in 0..k {
            for j in 0..k {
                let xz = code.logical_x()[i].symplectic_product(&code.logical_z()[j]).unwrap();
                assert_eq!(xz, if i == j { dim.neg(1) } else { 0 });
                assert_eq!(code.logical_x()[i].symplectic_product(&code.logical_x()[j]).unwrap(), 0);
                assert_eq!(code.logical_z()[i].symplectic_product(&code.logical_z()[j]).unwrap(), 0);
            }
        }
    }

    #[test]
    fn five_qubit_code() {
        let code = five_qubit();
        assert_eq!(code.num_logical(), 1);
        check_logical_relations(&code);
        let declared = StabilizerCode::with_logicals(
            paulis(&["ZZXIX", "XZZXI", "IXZZX", "XIXZZ"], 2),
            2,
            paulis(&["XXXXX"], 2),
            paulis(&["ZZZZZ"], 2),
        )
        .unwrap();
        let x = declared.class(vec![1, 0]).unwrap();
        assert_eq!(declared.logical_representative(&x).unwrap().to_string(), "XXXXX");
        assert_eq!(declared.enumerate_class(&x, DEFAULT_BUDGET).unwrap().count(), 16);
    }

    #[test]
    fn four_two_two_coset() {
        let code = StabilizerCode::with_logicals(
            paulis(&["XXXX", "ZZZZ"], 2),
            2,
            paulis(&["XXII", "XIXI"], 2),
            paulis(&["ZIZI", "ZZII"], 2),
        )
        .unwrap();
        assert_eq!(code.num_logical(), 2);
        let x1 = code.class(vec![1, 0, 0, 0]).unwrap();
        let rep = code.logical_representative(&x1).unwrap();
        assert_eq!(rep.to_string(), "XXII");
        let got: HashSet<String> = code
            .enumerate_class(&x1, 16)
            .unwrap()
            .map(|p| p.unphased().to_string())
            .map(|s| s.trim_start_matches(['-', 'i']).to_string())
            .collect();
        let want: HashSet<String> = ["XXII", "IIXX", "YYZZ", "ZZYY"].iter().map(|s| s.to_string()).collect();
        assert_eq!(got, want);
        let x3x4 = PauliOperator::parse("IIXX", 2).unwrap();
        assert_eq!(code.class_of(&x3x4).unwrap(), ClassOf::Logical(x1));
        let z1 = PauliOperator::parse("ZIII", 2).unwrap();
        assert_eq!(code.class_of(&z1).unwrap(), ClassOf::NotLogical);
        assert_eq!(code.class_of(&code.generators()[0]).unwrap(), ClassOf::Trivial);
        assert_eq!(code.logical_classes().len(), 15);
    }

    #[test]
    fn stabilizer_state_has_no_logicals() {
        let code = StabilizerCode::build(paulis(&["XX", "ZZ"], 2), 2).unwrap();
        assert_eq!(code.num_logical(), 0);
        assert!(code.logical_classes().is_empty());
    }

    #[test]
    fn rejects_bad_generators() {
        let err = StabilizerCode::build(paulis(&["XI", "ZI"], 2), 2).unwrap_err();
        assert_eq!(err, CodeError::NonCommuting { i: 0, j: 1, lambda: 1 });
        let err = StabilizerCode::build(paulis(&["XX", "ZZ", "YY"], 2), 2).unwrap_err();
        assert_eq!(
            err,
            CodeError::Dependent {
                index: 2,
                combination: vec![(0, 1), (1, 1)]
            }
        );
        assert!(matches!(
            StabilizerCode::build(paulis(&["XX"], 2), 4),
            Err(CodeError::Pauli(PauliError::CompositeDimension(4)))
        ));
        let bad = StabilizerCode::with_logicals(
            paulis(&["XXXX", "ZZZZ"], 2),
            2,
            paulis(&["XXII", "XIXI"], 2),
            paulis(&["ZZII", "ZIZI"], 2),
        );
        assert!(matches!(bad, Err(CodeError::InvalidLogicals(_))));
    }

    #[test]
    fn qutrit_code_logicals() {
        // qutrit [[3,1]]: X X X and Z Z Z (x+y+z=0)
        let code = StabilizerCode::build(paulis(&["X1 X1 X1", "Z1 Z1 Z1"], 3), 3).unwrap();
        assert_eq!(code.num_logical(), 1);
        check_logical_relations(&code);
        assert_eq!(code.logical_classes().len(), 8);
        for class in code.logical_classes() {
            let elems: Vec<_> = code.enumerate_class(&class, 100).unwrap().collect();
            assert_eq!(elems.len(), 9);
            let distinct: HashSet<_> = elems.iter().map(|p| p.unphased()).collect();
            assert_eq!(distinct.len(), 9);
            for e in &elems {
                assert_eq!(code.class_of(e).unwrap(), ClassOf::Logical(class.clone()));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let code = five_qubit();
        let class = code.class(vec![1, 0]).unwrap();
        assert!(matches!(
            code.enumerate_class(&class, 15),
            Err(CodeError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn classes_independent_of_basis_order() {
        let code = five_qubit();
        let dim = code.dim();
        let mut normalizer = StabilizerCode::normalizer_basis(code.generators(), dim, 5);
        normalizer.reverse();
        let mut span = Echelon::new(dim, 10);
        for g in code.generators() {
            span.insert(&g.symplectic_vector()).unwrap();
        }
        let (xs, zs) = symplectic_gram_schmidt(dim, 5, span, normalizer);
        let other = StabilizerCode {
            logical_x: xs,
            logical_z: zs,
            ..code.clone()
        };
        check_logical_relations(&other);
        // each coset under one basis is a single coset under the other
        for class in other.logical_classes() {
            let labels: HashSet<_> = other
                .enumerate_class(&class, 64)
                .unwrap()
                .map(|p| format!("{:?}", code.class_of(&p).unwrap()))
                .collect();
            assert_eq!(labels.len(), 1);
        }
    }

    #[test]
    fn multiblock_effective_code() {
        let code = five_qubit();
        let partition = Partition::single_qudits(5);
        let (same, p1) = code
            .effective_multiblock(&partition, &MultiblockSpec::identity(1))
            .unwrap();
        assert_eq!(same, code);
        assert_eq!(p1, partition);
        let (eff, p2) = code
            .effective_multiblock(&partition, &MultiblockSpec::identity(2))
            .unwrap();
        assert_eq!((eff.num_qudits(), eff.num_logical()), (10, 2));
        assert_eq!(p2.num_parts(), 5);
        assert_eq!(p2.part(1), &[1, 6]);
        check_logical_relations(&eff);
        let bad = MultiblockSpec::with_permutations(vec![vec![0, 1, 2, 3, 4], vec![0, 0, 1, 2, 3]]);
        assert!(code.effective_multiblock(&partition, &bad).is_err());
    }
}
